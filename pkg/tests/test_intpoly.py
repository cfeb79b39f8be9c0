import random

import pytest

from ordroots.errors import DegreeCapExceeded
from ordroots.intlinalg import IntMatrix, bareiss_det
from ordroots.intpoly import (
    IntPolynomial, discriminant, factor_mod_p, factor_over_Z,
    galois_parity_cubic, monic_part, multiplicity_split_mod_p, poly_gcd,
    resultant, squarefree_part, translates_equivalent, triple_root_mod,
)
from ordroots.numth import factorint, is_prime, is_square


def P(*coeffs_desc):
    return IntPolynomial(list(reversed(coeffs_desc)))


def sylvester_resultant(f, g):
    # independent oracle: determinant of the Sylvester matrix
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return bareiss_det(IntMatrix(rows))


def test_numth_basics():
    assert is_prime(2) and is_prime(3) and is_prime(97) and is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(91)
    assert is_square(0) and is_square(49) and not is_square(-4) and not is_square(50)
    assert factorint(2 * 2 * 3 * 49) == {2: 2, 3: 1, 7: 2}
    assert factorint(1) == {}
    n = 1000003 * 1000033
    assert factorint(n) == {1000003: 1, 1000033: 1}


def test_poly_arith():
    f = P(1, 0, -2)  # X^2 - 2
    g = P(1, 1)      # X + 1
    assert (f * g).coeffs == (-2, -2, 1, 1)
    assert (f + g).coeffs == (-1, 1, 1)
    assert f.evaluate(3) == 7
    assert f.compose_linear(1, 1) == P(1, 2, -1)
    assert P(2, 4).primitive() == (2, P(1, 2))
    assert P(-2, -4).primitive() == (-2, P(1, 2))


@pytest.mark.parametrize("seed", range(40))
def test_resultant_matches_sylvester(seed):
    rng = random.Random(seed)
    f = IntPolynomial([rng.randint(-6, 6) for _ in range(rng.randint(2, 6))])
    g = IntPolynomial([rng.randint(-6, 6) for _ in range(rng.randint(2, 6))])
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_resultant(f, g)


def test_discriminant_pinned_values():
    assert discriminant(P(1, 0, 0, -3)) == -243
    assert discriminant(P(1, 0, -9, 9)) == 729
    assert discriminant(P(1, 1, 1)) == -3
    assert discriminant(P(1, 0, -3, 1)) == 81
    assert discriminant(P(1, 6, -1, -5)) == 65 * 65


@pytest.mark.parametrize("seed", range(30))
def test_discriminant_zero_iff_gcd_nontrivial(seed):
    rng = random.Random(100 + seed)
    f = IntPolynomial([rng.randint(-4, 4) for _ in range(rng.randint(3, 7))])
    if f.degree < 1:
        return
    d = discriminant(f)
    g = poly_gcd(f, f.derivative())
    assert (d == 0) == (g.degree > 0)


def test_factor_mod_p_examples():
    unit, facs = factor_mod_p(P(1, 6, -1, -5), 5)
    assert unit == 1
    assert [(f.coeffs, m) for f, m in facs] == [((0, 1), 1), ((3, 1), 2)]
    unit, facs = factor_mod_p(P(1, 0, -3, 1), 3)
    assert [(f.coeffs, m) for f, m in facs] == [((1, 1), 3)]
    unit, facs = factor_mod_p(P(1, 0, 1), 2)
    assert [(f.coeffs, m) for f, m in facs] == [((1, 1), 2)]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
@pytest.mark.parametrize("seed", range(6))
def test_factor_mod_p_product_roundtrip(p, seed):
    rng = random.Random(seed * 31 + p)
    f = IntPolynomial([rng.randint(0, p - 1) for _ in range(6)] + [1])
    unit, facs = factor_mod_p(f, p)
    prod = IntPolynomial([unit])
    for poly, m in facs:
        prod = prod * poly ** m
    assert tuple(c % p for c in prod.coeffs) == tuple(c % p for c in f.coeffs)
    # factors irreducible: no roots for deg 2-3 pieces, here just sanity-check
    for poly, _ in facs:
        if poly.degree in (2, 3):
            assert all(poly.evaluate(a) % p for a in range(p))


def test_factor_over_Z_examples():
    content, facs = factor_over_Z(P(1, 0, -1))
    assert content == 1
    assert [f.coeffs for f, _ in facs] == [(-1, 1), (1, 1)]
    content, facs = factor_over_Z(P(1, 0, 0, -3))
    assert content == 1 and len(facs) == 1 and facs[0][1] == 1
    content, facs = factor_over_Z(P(2, 0, 2))
    assert content == 2
    assert [f.coeffs for f, _ in facs] == [(1, 0, 1)]


def test_factor_over_Z_multiplicities_and_cap():
    f = P(1, -1) ** 3 * P(1, 0, 1) ** 2
    content, facs = factor_over_Z(f)
    assert content == 1
    assert {(fa.coeffs, m) for fa, m in facs} == {((-1, 1), 3), ((1, 0, 1), 2)}
    with pytest.raises(DegreeCapExceeded):
        factor_over_Z(P(*([1] + [0] * 8 + [1])))
    # explicit cap override allows it
    content, facs = factor_over_Z(P(*([1] + [0] * 8 + [1])), degree_cap=16)
    prod = IntPolynomial([content])
    for poly, m in facs:
        prod = prod * poly ** m
    assert prod == P(*([1] + [0] * 8 + [1]))


@pytest.mark.parametrize("seed", range(25))
def test_factor_over_Z_random_roundtrip(seed):
    rng = random.Random(777 + seed)
    polys = []
    deg_total = 0
    while deg_total < 6:
        d = rng.randint(1, 3)
        f = IntPolynomial([rng.randint(-5, 5) for _ in range(d)] + [rng.choice([1, 1, 2, -1])])
        if f.degree < 1:
            continue
        polys.append(f)
        deg_total += f.degree
    f = IntPolynomial([rng.choice([1, 2, -3])])
    for g in polys:
        f = f * g
    content, facs = factor_over_Z(f, degree_cap=12)
    prod = IntPolynomial([content])
    for poly, m in facs:
        prod = prod * poly ** m
    assert prod == f
    # irreducibility certificate: factors of degree 2-3 have no rational roots
    for poly, _ in facs:
        if 2 <= poly.degree <= 3:
            c0 = poly.coeffs[0]
            divisors = {d for d in range(1, abs(c0) + 1) if c0 % d == 0} if c0 else {0}
            for d in divisors | {-d for d in divisors}:
                num = poly.evaluate(d)
                assert num != 0


def test_monic_part():
    f = P(1, 0, -3, 1)
    assert monic_part(f) == f
    assert monic_part(P(2, 1)) == IntPolynomial([1])
    assert monic_part(P(2, 1) * P(1, 0, 1)) == P(1, 0, 1)


def test_squarefree_part():
    f = P(1, -1) ** 2 * P(1, 1)
    assert squarefree_part(f) == P(1, -1) * P(1, 1)


def test_translates_equivalent():
    f = P(1, 0, -3, 1)
    g = f.compose_linear(1, 1)
    w = translates_equivalent(f, g, 5)
    assert w is not None and w["k"] == 1 and w["x_sign"] == 1
    assert translates_equivalent(f, f, 3) == {"x_sign": 1, "k": 0, "out_sign": 1}
    assert translates_equivalent(P(1, 0, 1), P(1, 0, 2), 50) is None


def test_reflection_witness():
    f = P(1, 0, 0, 3)   # X^3 + 3
    g = P(1, 0, 0, -3)  # X^3 - 3 = -f(-X)
    w = translates_equivalent(f, g, 3)
    assert w is not None and w["x_sign"] == -1 and w["out_sign"] == -1


def test_galois_parity():
    assert galois_parity_cubic(P(1, 0, -3, 1)) == "A3"
    assert galois_parity_cubic(P(1, 0, 0, -3)) == "S3"
    assert galois_parity_cubic(P(1, 6, -1, -5)) == "A3"


def test_triple_root_mod():
    assert triple_root_mod(P(1, 0, 0, -3), 3) == 0
    assert triple_root_mod(P(1, 0, -9, 9), 9) == 0
    assert triple_root_mod(P(1, 0, -9, 9), 27) is None
    assert triple_root_mod(P(1, 0, -3, 1), 3) == 2  # (X-2)^3 = X^3-6X^2+12X-8 = X^3-3X+1 mod 3


def test_multiplicity_split():
    assert multiplicity_split_mod_p(P(1, 6, -1, -5), 5) == [(0, 1), (2, 2)]
