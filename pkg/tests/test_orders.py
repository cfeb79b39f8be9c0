import random

import pytest

from ordroots.errors import (
    InfiniteIndex, NotASubring, NotAssociative, NotCommutative,
)
from ordroots.intlinalg import Lattice
from ordroots.intpoly import IntPolynomial
from ordroots.orders import (
    FiniteRing, Order, RingHom, finite_ring_from_json, finite_ring_to_json,
    is_reduced, is_subring_lattice, order_from_json, order_from_subring_lattice,
    order_to_json, preimage_order, quotient_ring, subring_generated,
    trace_matrix, validate_finite_ring, validate_order,
)


def P(*coeffs_desc):
    return IntPolynomial(list(reversed(coeffs_desc)))


GAUSS = Order.companion(P(1, 0, 1))        # Z[i]
CBRT3 = Order.companion(P(1, 0, 0, -3))    # Z[X]/(X^3 - 3)
DUAL = Order.companion(P(1, 0, 0))         # Z[X]/(X^2), not reduced


def test_validate_gaussian_integers():
    validate_order(GAUSS)
    assert GAUSS.mul((0, 1), (0, 1)) == (-1, 0)


def test_validate_rejects_noncommutative():
    table = [[[1, 0], [0, 1]], [[0, 0], [0, 0]]]
    with pytest.raises(NotCommutative):
        validate_order(Order(2, table, [1, 0]))


def test_validate_rejects_nonassociative():
    # (e2 e2) e3 = e3 e3 = 0 but e2 (e2 e3) = e2 e1 = e2
    table = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
        [[0, 0, 1], [1, 0, 0], [0, 0, 0]],
    ]
    with pytest.raises(NotAssociative):
        validate_order(Order(3, table, [1, 0, 0]))


def test_companion_cubic_table():
    validate_order(CBRT3)
    # e2 = x, x^2 = e3, x^3 = 3
    assert CBRT3.mul((0, 1, 0), (0, 1, 0)) == (0, 0, 1)
    x2 = CBRT3.mul((0, 1, 0), (0, 0, 1))
    assert x2 == (3, 0, 0)


def test_element_ops():
    i = GAUSS.element((0, 1))
    assert (i * i).coords == (-1, 0)
    assert (i + i).coords == (0, 2)
    assert (3 * i).coords == (0, 3)
    assert (i ** 4).coords == (1, 0)
    e2 = CBRT3.element((0, 1, 0))
    assert (e2 ** 3).coords == (3, 0, 0)


def test_eval_poly():
    f = P(1, 0, 1)
    assert GAUSS.eval_poly(f, (0, 1)) == (0, 0)
    one = Order.integers()
    assert one.eval_poly(f, (1,)) == (2,)
    g = P(1, 0, 0, -3)
    assert CBRT3.eval_poly(g, (0, 1, 0)) == (0, 0, 0)


def test_product_order():
    assert Order.power(GAUSS, 1) is GAUSS
    zz = Order.product([Order.integers(), Order.integers()])
    validate_order(zz)
    assert zz.mul((1, 0), (0, 1)) == (0, 0)
    assert Order.power(GAUSS, 3).rank == 6


def test_quotient_gaussian_mod2():
    B, hom = quotient_ring(GAUSS, [], [2])
    assert sorted(B.components) == [2, 2]
    assert B.cardinality() == 4
    hom.validate()
    # surjectivity: image lattice plus relations is everything
    img = Lattice.from_rows(B.rank, [list(hom.apply(b)) for b in
                                     [(1, 0), (0, 1)]]
                            + [[d if i == j else 0 for j in range(B.rank)]
                               for i, d in enumerate(B.components)])
    assert img.index() == 1


def test_quotient_infinite_index():
    with pytest.raises(InfiniteIndex):
        quotient_ring(GAUSS, [], [])


def test_quotient_paper_style_cubic():
    # Z[a], a^3 - 9a + 9 = 0; ideal (9, 3a^2) gives cardinality 3^5
    A = Order.companion(P(1, 0, -9, 9))
    B, hom = quotient_ring(A, [A.element((0, 0, 3))], [9])
    assert B.cardinality() == 3 ** 5
    assert sorted(B.components) == [3, 9, 9]


def test_quotient_totally_ramified_alpha4():
    # Z[a], a^3 - 3a^2 + 3 = 0; ideal (a^4) has index 3^4
    A = Order.companion(P(1, -3, 0, 3))
    a = A.element((0, 1, 0))
    B, hom = quotient_ring(A, [a ** 4], [])
    assert B.cardinality() == 3 ** 4


def test_subring_generated_trivial_and_full():
    B, _ = quotient_ring(GAUSS, [], [2])
    lat = subring_generated(B, [])
    assert lat.contains(B.unit)
    full = subring_generated(B, [tuple(1 if i == j else 0 for i in range(B.rank))
                                 for j in range(B.rank)])
    assert full.index() == 1


def test_preimage_order_diagonal():
    # {(x, y) in Z[i]^2 : x = y mod 2}: rank 4, index 4 in Z[i]^2
    B, hom = quotient_ring(GAUSS, [], [2])
    big = RingHom(hom.compose_power(2), Order.power(GAUSS, 2),
                  _finite_power(B, 2))
    diag = subring_generated(_finite_power(B, 2),
                             [tuple(list(b) + list(b)) for b in
                              [(1, 0), (0, 1)]])
    AH, emb = preimage_order(GAUSS, 2, big, diag)
    validate_order(AH)
    assert AH.rank == 4
    assert Lattice.from_rows(4, emb.data).index() == 4


def test_preimage_order_full_target():
    B, hom = quotient_ring(GAUSS, [], [2])
    big = RingHom(hom.compose_power(2), Order.power(GAUSS, 2), _finite_power(B, 2))
    full = Lattice.from_rows(4, [[1 if i == j else 0 for j in range(4)]
                                 for i in range(4)])
    AH, emb = preimage_order(GAUSS, 2, big, full)
    assert AH.rank == 4
    assert Lattice.from_rows(4, emb.data).index() == 1
    # multiplication is reproduced exactly through the embedding
    amb = Order.power(GAUSS, 2)
    for _ in range(10):
        rng = random.Random(_)
        x = tuple(rng.randint(-3, 3) for _ in range(4))
        y = tuple(rng.randint(-3, 3) for _ in range(4))
        lhs = [sum(AH.mul(x, y)[i] * emb.data[i][j] for i in range(4))
               for j in range(4)]
        ex = [sum(x[i] * emb.data[i][j] for i in range(4)) for j in range(4)]
        ey = [sum(y[i] * emb.data[i][j] for i in range(4)) for j in range(4)]
        assert tuple(lhs) == amb.mul(tuple(ex), tuple(ey))


def test_preimage_order_rejects_non_subring():
    B, hom = quotient_ring(GAUSS, [], [2])
    # the lattice spanned by sqrt(-1) alone misses the unit
    bad = Lattice.from_rows(2, [[0, 1], [2, 0], [0, 2]])
    with pytest.raises(NotASubring):
        preimage_order(GAUSS, 1, RingHom(hom.matrix, GAUSS, B), bad)


def _finite_power(B, t):
    from ordroots.orders import finite_power
    return finite_power(B, t)


def test_is_reduced():
    assert is_reduced(GAUSS) == (True, None)
    ok, witness = is_reduced(DUAL)
    assert not ok
    w = DUAL.element(witness)
    assert not (w * w).coords == witness  # nilpotent, not idempotent
    assert (w ** DUAL.rank).is_zero()
    assert is_reduced(CBRT3)[0]
    # trace form determinant is the discriminant for a companion order
    from ordroots.intlinalg import bareiss_det
    assert bareiss_det(trace_matrix(CBRT3)) == -243


def test_json_roundtrip():
    s = order_to_json(CBRT3)
    back = order_from_json(s)
    assert back == CBRT3
    B, _ = quotient_ring(GAUSS, [], [3])
    s2 = finite_ring_to_json(B)
    assert finite_ring_from_json(s2) == B


@pytest.mark.parametrize("seed", range(12))
def test_validate_accepts_constructed_orders(seed):
    rng = random.Random(seed)
    polys = [P(1, 0, 1), P(1, 0, -2), P(1, 1, 1), P(1, 0, 0, -3), P(1, -2)]
    factors = [Order.companion(rng.choice(polys)) for _ in range(rng.randint(1, 2))]
    A = Order.product(factors)
    validate_order(A)
    # a random finite-index subring Z*1 + m*A stays a valid order
    m = rng.choice([2, 3])
    n = A.rank
    rows = [list(A.unit)] + [[m if i == j else 0 for j in range(n)] for i in range(n)]
    lat = Lattice.from_rows(n, rows)
    sub, emb = order_from_subring_lattice(A, lat)
    validate_order(sub)
    assert sub.rank == n
