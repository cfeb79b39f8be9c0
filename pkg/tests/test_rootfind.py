import itertools
import random

import numpy as np
import pytest

from ordroots.errors import NotReduced, NotSupported
from ordroots.intlinalg import IntMatrix, Lattice, bareiss_det
from ordroots.intpoly import IntPolynomial
from ordroots.orders import (
    Order, is_reduced, order_from_subring_lattice, trace_matrix, validate_order,
)
from ordroots.rootfind import (
    decompose, verify_certificate, zero_coord_bound, zeros_in_order,
)
from ordroots.tower import splitting_tower


def P(*coeffs_desc):
    return IntPolynomial(list(reversed(coeffs_desc)))


GAUSS = Order.companion(P(1, 0, 1))
ZZ = Order.integers()


def brute_force_zeros(a, f, height):
    """Independent oracle: test every coordinate vector up to the height."""
    out = []
    for coords in itertools.product(range(-height, height + 1), repeat=a.rank):
        if a.eval_poly(f, coords) == a.zero():
            out.append(tuple(coords))
    return sorted(out)


def test_decompose_gaussian():
    dec = decompose(GAUSS)
    assert dec.spectrum_size == 1
    assert dec.minpolys[0] == P(1, 0, 1)


def test_decompose_split_product():
    zz = Order.product([ZZ, ZZ])
    dec = decompose(zz)
    assert dec.spectrum_size == 2
    assert all(g.degree == 1 for g in dec.minpolys)


def test_decompose_rejects_nonreduced():
    dual = Order.companion(P(1, 0, 0))
    with pytest.raises(NotReduced):
        decompose(dual)


def test_decompose_tower_of_cubic():
    top = splitting_tower(P(1, 0, 0, -3), 2).top
    dec = decompose(top)
    assert sum(g.degree for g in dec.minpolys) == 6
    # S3 cubic: the rank-6 ring is an order in the Galois closure, one field
    assert dec.spectrum_size == 1


def test_zeros_gaussian():
    res = zeros_in_order(GAUSS, P(1, 0, 1))
    assert res.nonempty
    assert [z.coords for z in res.zeros] == [(0, -1), (0, 1)]


def test_zeros_in_Z_empty():
    res = zeros_in_order(ZZ, P(1, 0, 1))
    assert not res.nonempty and res.zeros == []


def test_zeros_trivial_cases():
    assert zeros_in_order(GAUSS, IntPolynomial([5])).nonempty is False
    r = zeros_in_order(GAUSS, IntPolynomial([]))
    assert r.nonempty and r.zeros is None
    zero_ring = Order(0, [], [])
    assert zeros_in_order(zero_ring, P(1, 0, 1)).nonempty


def test_zeros_rank6_tower_counts():
    # a rank-6 root tower of an irreducible cubic carries exactly 3 zeros
    for f in [P(1, 0, 0, -3), P(1, 0, 0, 9)]:
        top = splitting_tower(f, 2).top
        res = zeros_in_order(top, f, engine="etale")
        assert len(res.zeros) == 3
        for z in res.zeros:
            assert verify_certificate(top, f, z)
        assert res.meta["candidates"] <= f.degree ** res.meta["spectrum"]


def test_zeros_nonreduced_separable():
    dual = Order.companion(P(1, 0, 0))  # Z[eps]
    res = zeros_in_order(dual, P(1, 0, -1))  # X^2 - 1: zeros +-1
    assert sorted(z.coords for z in res.zeros) == [(-1, 0), (1, 0)]
    with pytest.raises(NotSupported):
        zeros_in_order(dual, P(1, 0, 0))  # X^2 over a non-reduced ring


def test_zeros_nonreduced_shifted():
    dual = Order.companion(P(1, 0, 0))
    # (X - 1)(X - 2): isolated zeros lift uniquely through the nilpotents
    res = zeros_in_order(dual, P(1, -3, 2))
    assert sorted(z.coords for z in res.zeros) == [(1, 0), (2, 0)]


def test_verify_certificate():
    assert verify_certificate(GAUSS, P(1, 0, 1), (0, 1))
    assert not verify_certificate(GAUSS, P(1, 0, 1), (1, 1))


def _random_reduced_order(rng, max_rank=4):
    polys = [P(1, 0, 1), P(1, 0, -2), P(1, 1, -1), P(1, -1), P(1, 1), P(1, 0, -3)]
    factors = []
    rank = 0
    while rank < max_rank:
        g = rng.choice(polys)
        if rank + g.degree > max_rank:
            break
        factors.append(Order.companion(g))
        rank += g.degree
    if not factors:
        factors = [ZZ]
    A = Order.product(factors)
    # scramble by a random small unimodular basis change
    n = A.rank
    U = IntMatrix.identity(n)
    for _ in range(n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.choice([-1, 1])
            for k in range(n):
                U.data[i][k] += c * U.data[j][k]
    Ui = _int_inverse(U)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prod = A.mul(tuple(U.data[i]), tuple(U.data[j]))
            table[i][j] = Ui.apply(prod)
    unit = Ui.apply(A.unit)
    B = Order(n, table, unit)
    validate_order(B)
    return B


def _int_inverse(U):
    from ordroots.intlinalg import inv_unimodular
    # rows of U are the new basis; coordinates transform through U^-T
    return inv_unimodular(U.transpose())


@pytest.mark.parametrize("seed", range(15))
def test_engines_agree_random(seed):
    rng = random.Random(900 + seed)
    A = _random_reduced_order(rng)
    fs = [P(1, 0, 1), P(1, 0, -2), P(1, -1), P(1, 1, -1),
          P(1, 0, -1), P(1, 0, 0, -3)]
    f = rng.choice(fs)
    r1 = zeros_in_order(A, f, engine="etale")
    r2 = zeros_in_order(A, f, engine="hensel")
    assert [z.coords for z in r1.zeros] == [z.coords for z in r2.zeros]


@pytest.mark.parametrize("seed", range(10))
def test_completeness_vs_bruteforce(seed):
    rng = random.Random(1000 + seed)
    A = _random_reduced_order(rng, max_rank=3)
    f = rng.choice([P(1, 0, -1), P(1, 0, 1), P(1, -1), P(1, 1, -1), P(1, 0, -2)])
    res = zeros_in_order(A, f)
    T = trace_matrix(A)
    bound = zero_coord_bound(A, f, T, bareiss_det(T))
    height = min(bound, 8)
    brute = brute_force_zeros(A, f, height)
    found = sorted(z.coords for z in res.zeros)
    assert [z for z in found if max(map(abs, z), default=0) <= height] == brute


def test_bound_is_rigorous_for_gaussian():
    f = P(1, 0, 1)
    T = trace_matrix(GAUSS)
    b = zero_coord_bound(GAUSS, f, T, bareiss_det(T))
    assert b >= 1  # the zeros +-i have coordinate height 1


def test_hensel_on_rank12_product():
    # product of two rank-6 towers exercises the large-rank path
    top = splitting_tower(P(1, 0, 0, -3), 2).top
    big = Order.power(top, 2)
    res = zeros_in_order(big, P(1, 0, 0, -3), engine="hensel")
    assert len(res.zeros) == 9  # 3 zeros in each component
    for z in res.zeros:
        assert verify_certificate(big, P(1, 0, 0, -3), z)
