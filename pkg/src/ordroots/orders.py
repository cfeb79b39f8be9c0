"""Rings that are free Z-modules of finite rank, given by structure constants.

An Order multiplies basis vectors through an n*n*n integer table:
e_i * e_j = sum_k table[i][j][k] e_k. A FiniteRing is the same thing with
each coordinate taken modulo an additive order d_k; quotients are stored in
cyclic (Smith) coordinates so element enumeration is uniform.

Validation is mandatory at construction sites that matter: commutativity,
associativity and the unit law are checked through the table, with a numpy
int64 path when entries are small enough for it to be exact and a plain
Python path otherwise.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import (
    DimensionMismatch, InfiniteIndex, NoUnit, NotASubring, NotAssociative,
    NotCommutative,
)
from .intlinalg import IntMatrix, Lattice, bareiss_det, kernel, lattice_mod_quotient

_NP_SAFE_ENTRY = 10**7  # n * entry^2 stays far below 2**63 for n <= 64


def _as_int_table(table):
    return tuple(tuple(tuple(int(c) for c in cell) for cell in row) for row in table)


class Order:
    __slots__ = ("rank", "table", "unit", "_np_table", "_pairs")

    def __init__(self, rank, table, unit):
        self.rank = rank
        self.table = _as_int_table(table)
        self.unit = tuple(int(c) for c in unit)
        if len(self.unit) != rank or len(self.table) != rank:
            raise DimensionMismatch("table/unit size vs rank")
        self._np_table = None
        self._pairs = None

    # -- representation caches ------------------------------------------------

    def np_table(self):
        """int64 table when all entries are small enough to be exact."""
        if self._np_table is None:
            flat = [c for row in self.table for cell in row for c in cell]
            if not flat or max(map(abs, flat)) <= _NP_SAFE_ENTRY:
                self._np_table = np.array(self.table, dtype=np.int64).reshape(
                    self.rank, self.rank, self.rank)
            else:
                self._np_table = False
        return None if self._np_table is False else self._np_table

    def pairs(self):
        if self._pairs is None:
            self._pairs = [
                [[(k, a) for k, a in enumerate(cell) if a] for cell in row]
                for row in self.table
            ]
        return self._pairs

    # -- arithmetic on raw coordinate tuples ----------------------------------

    def mul(self, x, y):
        n = self.rank
        out = [0] * n
        pairs = self.pairs()
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            prow = pairs[i]
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                c = xi * yj
                for k, a in prow[j]:
                    out[k] += c * a
        return tuple(out)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def smul(self, c, x):
        return tuple(c * a for a in x)

    def pow_element(self, x, e):
        out = self.unit
        while e:
            if e & 1:
                out = self.mul(out, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return out

    def eval_poly(self, coeffs, x):
        """Horner evaluation of an integer polynomial at a ring element."""
        cs = getattr(coeffs, "coeffs", coeffs)
        if not cs:
            return tuple([0] * self.rank)
        out = self.smul(cs[-1], self.unit)
        for c in reversed(cs[:-1]):
            out = self.add(self.mul(out, x), self.smul(c, self.unit))
        return out

    def zero(self):
        return tuple([0] * self.rank)

    def element(self, coords):
        return OrderElement(self, coords)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def integers(cls):
        return cls(1, [[[1]]], [1])

    @classmethod
    def companion(cls, f):
        """Z[X]/(f) for monic f, basis 1, x, ..., x^(deg-1)."""
        n = f.degree
        if n < 1 or not f.is_monic:
            raise DimensionMismatch("companion ring needs a monic nonconstant poly")
        red = [[0] * n for _ in range(2 * n - 1)]
        for i in range(n):
            red[i][i] = 1
        for i in range(n, 2 * n - 1):
            # x^i = x * x^(i-1) reduced
            prev = red[i - 1]
            carry = prev[n - 1]
            row = [0] * n
            for j in range(n - 1, 0, -1):
                row[j] = prev[j - 1]
            for j in range(n):
                row[j] -= carry * f.coeffs[j]
            red[i] = row
        table = [[red[i + j] for j in range(n)] for i in range(n)]
        unit = [1] + [0] * (n - 1)
        return cls(n, table, unit)

    @classmethod
    def product(cls, factors):
        """Direct product with componentwise multiplication."""
        rank = sum(a.rank for a in factors)
        table = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
        unit = []
        off = 0
        for a in factors:
            for i in range(a.rank):
                for j in range(a.rank):
                    cell = table[off + i][off + j]
                    for k, c in enumerate(a.table[i][j]):
                        cell[off + k] = c
            unit.extend(a.unit)
            off += a.rank
        return cls(rank, table, unit)

    @classmethod
    def power(cls, a, t):
        return cls.product([a] * t) if t != 1 else a

    def __repr__(self):
        return f"Order(rank={self.rank})"

    def __eq__(self, other):
        return (isinstance(other, Order) and self.rank == other.rank
                and self.table == other.table and self.unit == other.unit)

    def __hash__(self):
        return hash((self.rank, self.unit, self.table))


class OrderElement:
    """Coordinate vector bound to its parent ring (Order or FiniteRing)."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        coords = tuple(int(c) for c in coords)
        n = parent.rank if isinstance(parent, Order) else len(parent.components)
        if len(coords) != n:
            raise DimensionMismatch("coordinate length vs parent rank")
        if isinstance(parent, FiniteRing):
            coords = parent.reduce(coords)
        self.parent = parent
        self.coords = coords

    def _check(self, other):
        if self.parent is not other.parent and self.parent != other.parent:
            raise DimensionMismatch("elements of different rings")

    def __add__(self, other):
        self._check(other)
        return OrderElement(self.parent,
                            [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return OrderElement(self.parent,
                            [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return OrderElement(self.parent, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, int):
            return OrderElement(self.parent, [other * a for a in self.coords])
        self._check(other)
        return OrderElement(self.parent, self.parent.mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, e):
        return OrderElement(self.parent, self.parent.pow_element(self.coords, e))

    def __eq__(self, other):
        return (isinstance(other, OrderElement) and self.parent == other.parent
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __repr__(self):
        return f"OrderElement{self.coords}"


class FiniteRing:
    """Quotient ring in cyclic coordinates: additive group prod Z/d_k."""

    __slots__ = ("components", "table", "unit", "_pairs")

    def __init__(self, components, table, unit):
        self.components = tuple(int(d) for d in components)
        if any(d < 1 for d in self.components):
            raise DimensionMismatch("component orders must be >= 1")
        n = len(self.components)
        t = _as_int_table(table)
        self.table = tuple(
            tuple(tuple(c % self.components[k] for k, c in enumerate(cell))
                  for cell in row) for row in t)
        self.unit = self.reduce(tuple(int(c) for c in unit))
        if len(self.unit) != n or len(self.table) != n:
            raise DimensionMismatch("table/unit size vs components")
        self._pairs = None

    @property
    def rank(self):
        return len(self.components)

    def cardinality(self):
        out = 1
        for d in self.components:
            out *= d
        return out

    def reduce(self, coords):
        return tuple(c % d for c, d in zip(coords, self.components))

    def pairs(self):
        if self._pairs is None:
            self._pairs = [
                [[(k, a) for k, a in enumerate(cell) if a] for cell in row]
                for row in self.table
            ]
        return self._pairs

    def mul(self, x, y):
        n = len(self.components)
        out = [0] * n
        pairs = self.pairs()
        x = self.reduce(x)
        y = self.reduce(y)
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            prow = pairs[i]
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                c = xi * yj
                for k, a in prow[j]:
                    out[k] += c * a
        return self.reduce(out)

    def add(self, x, y):
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def smul(self, c, x):
        return self.reduce(tuple(c * a for a in x))

    def pow_element(self, x, e):
        out = self.unit
        while e:
            if e & 1:
                out = self.mul(out, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return out

    def eval_poly(self, coeffs, x):
        cs = getattr(coeffs, "coeffs", coeffs)
        if not cs:
            return self.reduce(tuple([0] * self.rank))
        out = self.smul(cs[-1], self.unit)
        for c in reversed(cs[:-1]):
            out = self.add(self.mul(out, x), self.smul(c, self.unit))
        return out

    def zero(self):
        return tuple([0] * self.rank)

    def element(self, coords):
        return OrderElement(self, coords)

    def elements(self):
        """All elements in lexicographic order (use only for small rings)."""
        import itertools
        return (tuple(t) for t in itertools.product(
            *[range(d) for d in self.components]))

    def __eq__(self, other):
        return (isinstance(other, FiniteRing) and self.components == other.components
                and self.table == other.table and self.unit == other.unit)

    def __hash__(self):
        return hash((self.components, self.unit))

    def __repr__(self):
        return f"FiniteRing(components={self.components})"


def finite_power(b: FiniteRing, t: int) -> FiniteRing:
    """Direct product b^t with componentwise multiplication."""
    if t == 1:
        return b
    r = b.rank
    rank = r * t
    comps = list(b.components) * t
    table = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    for blk in range(t):
        off = blk * r
        for i in range(r):
            for j in range(r):
                cell = table[off + i][off + j]
                for k, c in enumerate(b.table[i][j]):
                    cell[off + k] = c
    unit = list(b.unit) * t
    return FiniteRing(comps, table, unit)


# ---------------------------------------------------------------------------
# validation

def _validate_np(table, unit, moduli=None):
    n = table.shape[0]
    if moduli is not None:
        m = np.array(moduli, dtype=np.int64)
    sw = table.swapaxes(0, 1)
    diff = table - sw
    if moduli is not None:
        diff = diff % m
    bad = np.argwhere(diff != 0)
    if bad.size:
        i, j, _ = bad[0]
        raise NotCommutative(int(i), int(j))
    left = np.einsum("ijm,mkl->ijkl", table, table)
    right = np.einsum("jkm,iml->ijkl", table, table)
    diff = left - right
    if moduli is not None:
        diff = diff % m
    bad = np.argwhere((diff != 0).any(axis=3))
    if bad.size:
        i, j, k = bad[0]
        raise NotAssociative(int(i), int(j), int(k))
    u = np.array(unit, dtype=np.int64)
    prod = np.einsum("i,ijk->jk", u, table)
    eye = np.eye(n, dtype=np.int64)
    diff = prod - eye
    if moduli is not None:
        diff = diff % m
    if (diff != 0).any():
        raise NoUnit("unit law fails")


def _validate_py(ring):
    n = ring.rank
    idx = range(n)
    basis = [tuple(1 if i == j else 0 for j in idx) for i in idx]
    for i in idx:
        for j in range(i, n):
            a = ring.mul(basis[i], basis[j])
            b = ring.mul(basis[j], basis[i])
            if a != b:
                raise NotCommutative(i, j)
    for i in idx:
        for j in idx:
            for k in idx:
                lhs = ring.mul(ring.mul(basis[i], basis[j]), basis[k])
                rhs = ring.mul(basis[i], ring.mul(basis[j], basis[k]))
                if lhs != rhs:
                    raise NotAssociative(i, j, k)
    for i in idx:
        if ring.mul(ring.unit, basis[i]) != basis[i]:
            raise NoUnit(f"unit * e_{i} != e_{i}")


def validate_order(candidate: Order) -> Order:
    """Check commutativity, associativity and the unit law; return the order."""
    t = candidate.np_table()
    if t is not None:
        _validate_np(t, candidate.unit)
    else:
        _validate_py(candidate)
    return candidate


def validate_finite_ring(candidate: FiniteRing) -> FiniteRing:
    flat = [c for row in candidate.table for cell in row for c in cell]
    if not flat or max(map(abs, flat)) <= _NP_SAFE_ENTRY:
        t = np.array(candidate.table, dtype=np.int64).reshape(
            candidate.rank, candidate.rank, candidate.rank)
        _validate_np(t, candidate.unit, candidate.components)
    else:
        _validate_py(candidate)
    return candidate


class RingHom:
    """Additive map given by a matrix on column coordinates, checked to be
    multiplicative and unit-preserving by validate()."""

    __slots__ = ("matrix", "source", "target")

    def __init__(self, matrix: IntMatrix, source, target):
        self.matrix = matrix
        self.source = source
        self.target = target

    def apply(self, coords):
        out = self.matrix.apply(list(coords))
        if isinstance(self.target, FiniteRing):
            return self.target.reduce(out)
        return tuple(out)

    def validate(self):
        src, tgt = self.source, self.target
        n = src.rank
        basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        images = [self.apply(b) for b in basis]
        for i in range(n):
            for j in range(i, n):
                lhs = tgt.mul(images[i], images[j])
                rhs = self.apply(src.mul(basis[i], basis[j]))
                if tuple(lhs) != tuple(rhs):
                    raise NotASubring(
                        f"map is not multiplicative on basis pair ({i},{j})")
        if tuple(self.apply(src.unit)) != tuple(tgt.unit):
            raise NoUnit("map does not preserve the unit")
        return self

    def compose_power(self, t):
        """Blockwise application on the t-fold product of source and target."""
        m = self.matrix
        rows, cols = m.rows, m.cols
        big = IntMatrix.zeros(rows * t, cols * t)
        for b in range(t):
            for i in range(rows):
                for j in range(cols):
                    big.data[b * rows + i][b * cols + j] = m.data[i][j]
        return big


# ---------------------------------------------------------------------------
# quotients and subrings

def quotient_ring(a: Order, ideal_gens, extra_integers=()):
    """A / (ideal generated by the elements and the integer multiples of 1).

    Closes the generators under multiplication by basis vectors to an ideal
    lattice (the ascending chain in Z^n terminates), then reads the quotient
    off the Smith normal form. Returns (FiniteRing, projection RingHom).
    """
    n = a.rank
    rows = []
    for m in extra_integers:
        for i in range(n):
            rows.append([m if j == i else 0 for j in range(n)])
    for g in ideal_gens:
        coords = g.coords if isinstance(g, OrderElement) else tuple(g)
        rows.append(list(coords))
    lat = Lattice.from_rows(n, rows)
    basis_vecs = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    while True:
        new_rows = []
        for b in lat.basis.data:
            for e in basis_vecs:
                prod = a.mul(tuple(b), e)
                if not lat.contains(prod):
                    new_rows.append(list(prod))
        if not new_rows:
            break
        lat = Lattice.from_rows(n, lat.basis.data + new_rows)
    if lat.rank != n:
        raise InfiniteIndex("ideal lattice is not of full rank")
    orders, proj, lifts = lattice_mod_quotient(lat.basis)
    r = len(orders)
    table = []
    for i in range(r):
        row = []
        for j in range(r):
            prod = a.mul(tuple(lifts.data[i]), tuple(lifts.data[j]))
            img = proj.apply(prod)
            row.append([img[k] % orders[k] for k in range(r)])
        table.append(row)
    unit = proj.apply(a.unit)
    ring = FiniteRing(orders, table, unit)
    validate_finite_ring(ring)
    hom = RingHom(proj, a, ring).validate()
    return ring, hom


def subring_generated(b: FiniteRing, gens) -> Lattice:
    """Additive lattice of the smallest unital subring of b containing gens.

    Fixed point of span-then-multiply closure; the lattice always contains
    diag(components) so it represents a subgroup of the finite ring.
    """
    r = b.rank
    rows = [list(b.unit)]
    for g in gens:
        coords = g.coords if isinstance(g, OrderElement) else tuple(g)
        rows.append(list(b.reduce(coords)))
    for i in range(r):
        rows.append([b.components[i] if j == i else 0 for j in range(r)])
    lat = Lattice.from_rows(r, rows)
    while True:
        new_rows = []
        basis = lat.basis.data
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                prod = b.mul(tuple(basis[i]), tuple(basis[j]))
                if not lat.contains(prod):
                    new_rows.append(list(prod))
        if not new_rows:
            break
        lat = Lattice.from_rows(r, lat.basis.data + new_rows)
    return lat


def is_subring_lattice(b: FiniteRing, lat: Lattice) -> bool:
    if not lat.contains(b.unit):
        return False
    basis = lat.basis.data
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            if not lat.contains(b.mul(tuple(basis[i]), tuple(basis[j]))):
                return False
    return True


def order_from_subring_lattice(ambient: Order, lat: Lattice):
    """Realize a full-rank multiplicatively closed sublattice as an Order.

    Returns (Order, embedding matrix) where the embedding's rows are the new
    basis written in ambient coordinates. Raises NotASubring when the
    lattice misses the unit or is not closed.
    """
    n = ambient.rank
    if lat.rank != n:
        raise NotASubring("sublattice is not of full rank")
    basis = [tuple(r) for r in lat.basis.data]
    unit_coords = lat.coordinates(ambient.unit)
    if unit_coords is None:
        raise NotASubring("unit is outside the lattice")

    npt = ambient.np_table()
    emb = np.array(lat.basis.data, dtype=np.int64)
    if npt is not None and abs(emb).max(initial=0) <= 10**6:
        prods = np.einsum("ia,jb,abk->ijk", emb, emb, npt)
        coords = _batch_coords_np(lat.basis.data, prods.reshape(n * n, n))
        if coords is None:
            raise NotASubring("a basis product falls outside the lattice")
        table = coords.reshape(n, n, n).tolist()
    else:
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                c = lat.coordinates(ambient.mul(basis[i], basis[j]))
                if c is None:
                    raise NotASubring("a basis product falls outside the lattice")
                row.append(c)
            table.append(row)
    new = Order(n, table, unit_coords)
    validate_order(new)
    return new, IntMatrix(lat.basis.data, cols=n)


def _batch_coords_np(basis_rows, rhs):
    """Vectorized c @ B == v solve for HNF B with pivots on the diagonal."""
    n = len(basis_rows)
    B = np.array(basis_rows, dtype=np.int64)
    out = np.zeros_like(rhs)
    v = rhs.astype(np.int64).copy()
    for j in range(n):
        q, r = np.divmod(v[:, j], B[j, j])
        if r.any():
            return None
        out[:, j] = q
        v -= q[:, None] * B[j][None, :]
    if v.any():
        return None
    return out


def preimage_order(a: Order, t: int, hom: RingHom, target_subring: Lattice):
    """Inverse image in a^t of a subring of the finite target.

    hom maps a^t onto the finite ring; the result is a full-rank suborder
    with its embedding into a^t. NotASubring flags a misused builder.
    """
    amb = Order.power(a, t)
    c = hom.target
    if not isinstance(c, FiniteRing):
        raise DimensionMismatch("preimage_order needs a finite target")
    if hom.matrix.cols != amb.rank:
        raise DimensionMismatch("hom source rank mismatch")
    # normalize: the subgroup lattice always contains the relation lattice
    rel = Lattice.from_rows(c.rank, [[c.components[i] if j == i else 0
                                      for j in range(c.rank)]
                                     for i in range(c.rank)])
    target = target_subring.sum(rel)
    if not is_subring_lattice(c, target):
        raise NotASubring("target lattice is not a unital subring")
    pre = preimage_lattice_from_hom(hom, target)
    return order_from_subring_lattice(amb, pre)


def preimage_lattice_from_hom(hom: RingHom, target: Lattice) -> Lattice:
    from .intlinalg import preimage_lattice
    return preimage_lattice(hom.matrix, target, list(hom.target.components))


# ---------------------------------------------------------------------------
# reducedness via the rational trace form

def trace_vector(a: Order):
    return [sum(a.table[k][m][m] for m in range(a.rank)) for k in range(a.rank)]


def trace_matrix(a: Order) -> IntMatrix:
    """T[i][j] = trace of multiplication by e_i * e_j."""
    tr = trace_vector(a)
    n = a.rank
    npt = a.np_table()
    if npt is not None and max(map(abs, tr), default=0) <= _NP_SAFE_ENTRY:
        T = np.einsum("ijk,k->ij", npt.astype(object), np.array(tr, dtype=object))
        return IntMatrix([[int(T[i, j]) for j in range(n)] for i in range(n)])
    return IntMatrix([[sum(a.table[i][j][k] * tr[k] for k in range(n))
                       for j in range(n)] for i in range(n)])


def is_reduced(a: Order):
    """(True, None) when the trace form is nondegenerate over Q, else
    (False, witness) with an integer vector spanning part of the radical."""
    if a.rank == 0:
        return True, None
    T = trace_matrix(a)
    if bareiss_det(T) != 0:
        return True, None
    K = kernel(T)
    witness = next(tuple(row) for row in K.data if any(row))
    return False, witness


# ---------------------------------------------------------------------------
# JSON serialization (decimal strings throughout)

def order_to_json(a: Order) -> str:
    return json.dumps({
        "rank": a.rank,
        "unit": [str(c) for c in a.unit],
        "mul": [[[str(c) for c in cell] for cell in row] for row in a.table],
    }, sort_keys=True)


def order_from_json(text: str) -> Order:
    obj = json.loads(text)
    a = Order(int(obj["rank"]),
              [[[int(c) for c in cell] for cell in row] for row in obj["mul"]],
              [int(c) for c in obj["unit"]])
    return validate_order(a)


def finite_ring_to_json(b: FiniteRing) -> str:
    return json.dumps({
        "components": [str(d) for d in b.components],
        "unit": [str(c) for c in b.unit],
        "mul": [[[str(c) for c in cell] for cell in row] for row in b.table],
    }, sort_keys=True)


def finite_ring_from_json(text: str) -> FiniteRing:
    obj = json.loads(text)
    b = FiniteRing([int(d) for d in obj["components"]],
                   [[[int(c) for c in cell] for cell in row] for row in obj["mul"]],
                   [int(c) for c in obj["unit"]])
    return validate_finite_ring(b)
