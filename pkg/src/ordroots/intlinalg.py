"""Exact integer matrix and lattice algebra.

Conventions used across the package:

* lattices are ROW spans: a basis is stored as the rows of a matrix, kept
  in row Hermite normal form (pivots positive, entries above a pivot
  reduced into [0, pivot), zero rows stripped);
* homomorphism matrices act on COLUMN coordinate vectors: y = M @ x.

Everything is arbitrary-precision Python int; nothing here may go through
numpy int64.
"""

from __future__ import annotations

from math import gcd

from .errors import DimensionMismatch


class IntMatrix:
    """Dense integer matrix; data is a list of row lists."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        self.data = [list(map(int, row)) for row in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
            if any(len(r) != self.cols for r in self.data):
                raise DimensionMismatch("ragged rows")
        else:
            self.cols = 0 if cols is None else cols

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def copy(self):
        m = IntMatrix.__new__(IntMatrix)
        m.data = [row[:] for row in self.data]
        m.rows, m.cols = self.rows, self.cols
        return m

    def transpose(self):
        return IntMatrix([[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"IntMatrix({self.data!r})"

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch("matmul shapes")
            ot = other.transpose().data
            return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                              for row in self.data], cols=other.cols)
        raise TypeError

    def apply(self, vec):
        """Column action: self @ vec for a coordinate vector."""
        if len(vec) != self.cols:
            raise DimensionMismatch("matrix-vector shapes")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _addmul_row(m, dst, src, q):
    if q:
        rd, rs = m[dst], m[src]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def hnf(M: IntMatrix):
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, U @ M == H, pivots positive, entries
    above each pivot reduced into [0, pivot). Zero rows of H sit at the
    bottom. H's nonzero rows are the canonical basis of M's row span.
    """
    W = [row[:] for row in M.data]
    n, cols = M.rows, M.cols
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(cols):
        # gcd-eliminate column c below row r
        while True:
            piv = -1
            best = 0
            for i in range(r, n):
                v = W[i][c]
                if v and (piv < 0 or abs(v) < best):
                    piv, best = i, abs(v)
            if piv < 0:
                break
            if piv != r:
                _swap_rows(W, r, piv)
                _swap_rows(U, r, piv)
            a = W[r][c]
            done = True
            for i in range(r + 1, n):
                v = W[i][c]
                if v:
                    q = -(v // a)  # floor division keeps remainders small
                    _addmul_row(W, i, r, q)
                    _addmul_row(U, i, r, q)
                    if W[i][c]:
                        done = False
            if done:
                break
        if piv < 0:
            continue
        if W[r][c] < 0:
            W[r] = [-v for v in W[r]]
            U[r] = [-v for v in U[r]]
        a = W[r][c]
        for i in range(r):
            q = -(W[i][c] // a)
            _addmul_row(W, i, r, q)
            _addmul_row(U, i, r, q)
        r += 1
        if r == n:
            break
    # zero rows already sank to the bottom by construction
    return IntMatrix(W, cols=cols), IntMatrix(U, cols=n)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def snf(M: IntMatrix):
    """Smith normal form: (D, U, V) with U @ M @ V == D, d_i | d_{i+1}."""
    W = [row[:] for row in M.data]
    rows, cols = M.rows, M.cols
    U = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    V = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def col_addmul(dst, src, q):
        if q:
            for i in range(rows):
                W[i][dst] += q * W[i][src]
            for i in range(cols):
                V[i][dst] += q * V[i][src]

    def col_swap(i, j):
        for row in W:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < rows and t < cols:
        # find a nonzero entry to pivot on
        piv = None
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                v = W[i][j]
                if v and (piv is None or abs(v) < best):
                    piv, best = (i, j), abs(v)
        if piv is None:
            break
        i, j = piv
        if i != t:
            _swap_rows(W, t, i)
            _swap_rows(U, t, i)
        if j != t:
            col_swap(t, j)
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if W[i][t]:
                    a, b = W[t][t], W[i][t]
                    if b % a == 0:
                        q = -(b // a)
                        _addmul_row(W, i, t, q)
                        _addmul_row(U, i, t, q)
                    else:
                        g, x, y = _xgcd(a, b)
                        ag, bg = a // g, b // g
                        rt, ri = W[t], W[i]
                        for k in range(cols):
                            vt, vi = rt[k], ri[k]
                            rt[k] = x * vt + y * vi
                            ri[k] = -bg * vt + ag * vi
                        ut, ui = U[t], U[i]
                        for k in range(rows):
                            vt, vi = ut[k], ui[k]
                            ut[k] = x * vt + y * vi
                            ui[k] = -bg * vt + ag * vi
                        dirty = True
            # clear row t
            for j in range(t + 1, cols):
                if W[t][j]:
                    a, b = W[t][t], W[t][j]
                    if b % a == 0:
                        col_addmul(j, t, -(b // a))
                    else:
                        g, x, y = _xgcd(a, b)
                        ag, bg = a // g, b // g
                        for i in range(rows):
                            vt, vj = W[i][t], W[i][j]
                            W[i][t] = x * vt + y * vj
                            W[i][j] = -bg * vt + ag * vj
                        for i in range(cols):
                            vt, vj = V[i][t], V[i][j]
                            V[i][t] = x * vt + y * vj
                            V[i][j] = -bg * vt + ag * vj
                        dirty = True
            if not dirty and all(W[i][t] == 0 for i in range(t + 1, rows)):
                break
        # divisibility: fold in any entry the pivot does not divide
        a = W[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if W[i][j] % a:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _addmul_row(W, t, offender, 1)
            _addmul_row(U, t, offender, 1)
            continue
        t += 1
    for i in range(min(rows, cols)):
        if W[i][i] < 0:
            for k in range(cols):
                W[i][k] = -W[i][k]
            for k in range(rows):
                U[i][k] = -U[i][k]
    return IntMatrix(W, cols=cols), IntMatrix(U, cols=rows), IntMatrix(V, cols=cols)


def kernel(M: IntMatrix) -> IntMatrix:
    """Basis (rows) of the saturated lattice {x : M @ x == 0}."""
    H, U = hnf(M.transpose())
    rows = [U.data[i] for i in range(H.rows) if not any(H.data[i])]
    K, _ = hnf(IntMatrix(rows, cols=M.cols))
    return IntMatrix([r for r in K.data if any(r)], cols=M.cols)


def bareiss_det(M: IntMatrix) -> int:
    """Determinant by fraction-free elimination; exact for any size."""
    if M.rows != M.cols:
        raise DimensionMismatch("det of non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = [row[:] for row in M.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pk - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def inv_unimodular(V: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix (HNF of V is the identity)."""
    H, U = hnf(V)
    if H != IntMatrix.identity(V.rows):
        raise DimensionMismatch("matrix is not unimodular")
    return U


class Lattice:
    """Subgroup of Z^ambient_rank given by a canonical HNF row basis."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank, basis: IntMatrix):
        self.ambient_rank = ambient_rank
        self.basis = basis

    @classmethod
    def from_rows(cls, ambient_rank, rows):
        M = IntMatrix(list(rows), cols=ambient_rank)
        H, _ = hnf(M)
        nz = [r for r in H.data if any(r)]
        return cls(ambient_rank, IntMatrix(nz, cols=ambient_rank))

    @property
    def rank(self):
        return self.basis.rows

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.ambient_rank == other.ambient_rank
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Lattice(ambient={self.ambient_rank}, basis={self.basis.data!r})"

    def contains(self, vec):
        """Membership by back-substitution against the HNF basis."""
        return self.coordinates(vec) is not None

    def coordinates(self, vec):
        """c with c @ basis == vec, or None if vec is outside the lattice.

        No later row can change a pivot column once its row is processed, so
        a failed divisibility there is final; non-pivot columns are settled
        by the trailing all-zero check.
        """
        v = list(map(int, vec))
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length")
        coeffs = []
        for row in self.basis.data:
            c = next(j for j, x in enumerate(row) if x)
            if v[c] % row[c]:
                return None
            q = v[c] // row[c]
            coeffs.append(q)
            if q:
                for k in range(c, self.ambient_rank):
                    v[k] -= q * row[k]
        return coeffs if not any(v) else None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.basis.data)

    def index(self):
        """Index in Z^n for a full-rank lattice (0 when rank-deficient)."""
        if self.rank != self.ambient_rank:
            return 0
        out = 1
        for i, row in enumerate(self.basis.data):
            out *= row[i]  # full-rank HNF has its pivots on the diagonal
        return abs(out)

    def sum(self, other: "Lattice") -> "Lattice":
        return Lattice.from_rows(self.ambient_rank,
                                 self.basis.data + other.basis.data)

    def intersection(self, other: "Lattice") -> "Lattice":
        """Rows x lying in both row spans, via the kernel of [B1^T | -B2^T]."""
        if self.ambient_rank != other.ambient_rank:
            raise DimensionMismatch("ambient ranks differ")
        n = self.ambient_rank
        r1, r2 = self.rank, other.rank
        block = IntMatrix(
            [[self.basis.data[j][i] for j in range(r1)]
             + [-other.basis.data[j][i] for j in range(r2)] for i in range(n)],
            cols=r1 + r2)
        K = kernel(block)
        rows = []
        for krow in K.data:
            a = krow[:r1]
            vec = [sum(a[j] * self.basis.data[j][i] for j in range(r1)) for i in range(n)]
            rows.append(vec)
        return Lattice.from_rows(n, rows)


def preimage_lattice(f: IntMatrix, L: Lattice, moduli) -> Lattice:
    """{x in Z^m : (f @ x) mod moduli lies in L}.

    ``moduli`` are the additive orders of the target's coordinates, so the
    preimage always contains prod(moduli) * Z^m and is full rank whenever L
    contains 0 (it always does).
    """
    k, m = f.rows, f.cols
    if L.ambient_rank != k or len(moduli) != k:
        raise DimensionMismatch("target dimensions")
    r = L.rank
    cols = m + r + k
    block = IntMatrix(
        [[f.data[i][j] for j in range(m)]
         + [-L.basis.data[j][i] for j in range(r)]
         + [-(moduli[i] if i == j else 0) for j in range(k)]
         for i in range(k)],
        cols=cols)
    K = kernel(block)
    rows = [krow[:m] for krow in K.data]
    return Lattice.from_rows(m, rows)


def lattice_mod_quotient(basis: IntMatrix):
    """Cyclic decomposition of Z^n / rowspan(basis) for full-rank basis.

    Returns (orders, proj, lifts): coordinate k of the quotient is
    (proj @ x)[k] mod orders[k]; lifts' row k maps a quotient basis vector
    back to Z^n. Trivial (order 1) coordinates are dropped.
    """
    n = basis.cols
    D, U, V = snf(basis)
    Vinv = inv_unimodular(V)
    orders = [D.data[i][i] for i in range(n)]
    keep = [i for i in range(n) if orders[i] != 1]
    # quotient coords of x are (x @ V) restricted to kept columns; as a
    # column-acting matrix that is rows of V^T
    proj = IntMatrix([[V.data[j][i] for j in range(n)] for i in keep], cols=n)
    lifts = IntMatrix([Vinv.data[i] for i in keep], cols=n)
    return [orders[i] for i in keep], proj, lifts
