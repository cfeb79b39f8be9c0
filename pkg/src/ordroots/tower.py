"""Universal root towers: adjoin roots of a monic polynomial one at a time.

Level i+1 is A_i[X]/(f_i) where f_i is the running quotient of f by the
linear factors already split off, so rank grows by the factorial ratio
n! / (n-i)!. The tower is the standard carrier for "an order containing
several roots of f" in the reduction builders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, RankCapExceeded
from .intpoly import IntPolynomial
from .numberfield import roots_in_number_field
from .orders import Order, OrderElement

RANK_CAP = 24


@dataclass
class TowerLevel:
    order: Order
    alpha: tuple          # the root adjoined at this level (coords in order)
    f_next: list          # remaining factor, coefficients are coord tuples


@dataclass
class SplittingTower:
    f: IntPolynomial
    levels: list  # TowerLevel per adjoined root; levels[0] is A_1

    @property
    def top(self) -> Order:
        return self.levels[-1].order if self.levels else Order.integers()

    def roots_at_top(self):
        """Coordinates of every adjoined root inside the top order."""
        if not self.levels:
            return []
        top = self.top
        out = []
        for i, lvl in enumerate(self.levels):
            coords = lvl.alpha
            # inclusion A_{i+1} -> top: basis index scales by later degrees
            for later in self.levels[i + 1:]:
                stretch = later.order.rank // len(coords)
                newc = [0] * later.order.rank
                for idx, c in enumerate(coords):
                    newc[idx] = c
                coords = tuple(newc)
            out.append(top.element(coords))
        return out


def _poly_quotient_order(base: Order, f_coeffs):
    """base[X]/(f) for monic f with coefficients given as base coordinates."""
    d = len(f_coeffs) - 1
    n = base.rank
    rank = n * d
    # reduction table for x^i, i < 2d-1, as vectors of base-coordinate coeffs
    red = []
    for i in range(d):
        row = [base.zero()] * d
        row[i] = base.unit
        red.append(row)
    top = f_coeffs[:-1]
    for i in range(d, 2 * d - 1):
        prev = red[i - 1]
        carry = prev[d - 1]
        row = [base.zero()] + list(prev[:-1])
        row = [base.add(row[j], base.smul(-1, base.mul(carry, top[j])))
               for j in range(d)]
        red.append(row)
    table = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    basis = [tuple(1 if z == b else 0 for z in range(n)) for b in range(n)]
    for i1 in range(d):
        for b1 in range(n):
            for i2 in range(d):
                for b2 in range(n):
                    prod = base.mul(basis[b1], basis[b2])
                    cell = table[i1 * n + b1][i2 * n + b2]
                    for xi in range(d):
                        cv = red[i1 + i2][xi]
                        if any(cv):
                            scaled = base.mul(prod, cv)
                            for bk in range(n):
                                cell[xi * n + bk] += scaled[bk]
    unit = [0] * rank
    for bk in range(n):
        unit[bk] = base.unit[bk]
    return Order(rank, table, unit)


def splitting_tower(f: IntPolynomial, depth: int, rank_cap: int | None = None):
    """Adjoin depth roots of monic f; rank of level i is n!/(n-i)!."""
    cap = RANK_CAP if rank_cap is None else rank_cap
    if not f.is_monic or f.degree < 1:
        raise PreconditionError("tower needs a monic nonconstant polynomial")
    if depth > f.degree:
        raise PreconditionError("depth exceeds the degree")
    base = Order.integers()
    fcur = [(c,) for c in f.coeffs]  # coefficients as base coordinates
    levels = []
    for _ in range(depth):
        d = len(fcur) - 1
        newrank = base.rank * d
        if newrank > cap:
            raise RankCapExceeded(f"tower rank {newrank} > cap {cap}")
        nxt = _poly_quotient_order(base, fcur)
        n = base.rank
        if d == 1:
            # f linear: x = -c0 and the quotient is base itself
            alpha = tuple(-c for c in fcur[0])
        else:
            # alpha = class of X: the unit sitting in coordinate block 1
            alpha = [0] * newrank
            for bk in range(n):
                alpha[n + bk] = base.unit[bk]
            alpha = tuple(alpha)
        # lift coefficients into the quotient and divide off (X - alpha)
        lifted = []
        for cv in fcur:
            vec = [0] * newrank
            for bk in range(n):
                vec[bk] = cv[bk]
            lifted.append(tuple(vec))
        fnext = _synthetic_divide(nxt, lifted, alpha)
        levels.append(TowerLevel(order=nxt, alpha=alpha, f_next=fnext))
        base = nxt
        fcur = fnext
    return SplittingTower(f=f, levels=levels)


def _synthetic_divide(ring: Order, coeffs, root):
    """coeffs / (X - root) in ring[X]; the remainder must vanish."""
    out = []
    acc = ring.zero()
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, root), c)
        out.append(acc)
    rem = out.pop()
    if any(rem):
        raise PreconditionError("root does not divide the polynomial")
    return list(reversed(out))


def z_rank(f: IntPolynomial) -> int:
    """3 when a second root of the cubic lies in Z[X]/(f), else 6.

    The second root, when it exists, has integer coordinates in the power
    basis; roots are found exactly in the fraction field and filtered.
    """
    if f.degree != 3 or not f.is_monic:
        raise PreconditionError("z_rank is defined for monic cubics")
    roots = roots_in_number_field(f, f)
    integral = [r for r in roots if all(c.denominator == 1 for c in r)]
    return 3 if len(integral) >= 3 else 6


def roots_in_companion_order(f: IntPolynomial, g: IntPolynomial):
    """Roots of f lying in Z[X]/(g) (integer power-basis coordinates)."""
    roots = roots_in_number_field(f, g)
    return [tuple(int(c) for c in r) for r in roots
            if all(c.denominator == 1 for c in r)]
