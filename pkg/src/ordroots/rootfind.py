"""Deciding and enumerating Z_A(f): the zeros of an integer polynomial in
a ring free of finite rank over Z.

Two interchangeable complete engines sit behind zeros_in_order:

* "etale": split A (x) Q into number fields by factoring minimal
  polynomials of ring elements, find the roots of f in each field by the
  resultant method, then test each candidate tuple for integrality. This
  is the reference path and the default at small rank.

* "hensel": pick a prime p dividing neither disc(f) nor the trace-form
  determinant, split A/pA into finite fields by Frobenius linear algebra,
  read off the zeros of f mod p, Newton-lift every candidate to a modulus
  exceeding twice a rigorous bound on zero coordinates, and keep the exact
  zeros. Word-sized moduli make the inner loops numba-friendly, which is
  what the reduction-verification sweeps need at rank 12+.

Both engines return the complete zero set; they are cross-checked against
each other and against brute force in the test suite.

For non-reduced A and separable f, the radical (trace-form kernel) is
factored out, the reduced quotient is solved, and each zero is lifted
through the nilpotents by a Newton iteration that terminates exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from . import _kernels
from .errors import (
    EnumerationCapExceeded, NotReduced, NotSupported, PreconditionError,
)
from .intlinalg import IntMatrix, bareiss_det, inv_unimodular, kernel, snf
from .intpoly import IntPolynomial, discriminant, factor_mod_p, squarefree_part
from .numberfield import roots_in_number_field
from .numth import is_prime, next_prime
from .orders import Order, OrderElement, is_reduced, trace_matrix, validate_order

CANDIDATE_CAP = 200_000


@dataclass
class EtaleDecomposition:
    """Product-of-fields form of A (x) Q.

    minpolys are monic integer irreducible; iso_num / denominator give the
    rational matrix sending product-ring coordinates (per component, the
    power basis of its generator) to A (x) Q coordinates.
    """
    minpolys: list
    iso_num: IntMatrix
    denominator: int

    @property
    def spectrum_size(self):
        return len(self.minpolys)


@dataclass
class ZerosResult:
    nonempty: bool
    zeros: list | None          # complete, lexicographically sorted, or None
    engine: str = ""
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# rational linear algebra helpers (Fractions, small sizes)

def _frac_solve(mat_cols, rhs):
    """Solve sum_j c_j * col_j = rhs over Q; None if inconsistent."""
    rows = len(rhs)
    cols = len(mat_cols)
    a = [[Fraction(mat_cols[j][i]) for j in range(cols)] + [Fraction(rhs[i])]
         for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols]:
            return None
    out = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        out[c] = a[i][cols]
    return out


def _frac_mat_solve(mat, rhs_vec):
    cols = [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]
    return _frac_solve(cols, rhs_vec)


# ---------------------------------------------------------------------------
# etale decomposition

class _Component:
    __slots__ = ("basis", "unit")

    def __init__(self, basis, unit):
        self.basis = basis  # list of Fraction vectors spanning the component
        self.unit = unit    # its idempotent


def _emul(a, x, y):
    """Multiplication in A (x) Q on Fraction vectors via the integer table."""
    n = a.rank
    out = [Fraction(0)] * n
    pairs = a.pairs()
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
            for k, cc in prow[j]:
                out[k] += c * cc
    return out


def _coords_in_span(basis, vec):
    return _frac_solve(basis, vec)


def _minpoly_of(a, comp, x):
    """Monic minimal polynomial of x inside the component (unit = comp.unit)."""
    powers = [list(map(Fraction, comp.unit))]
    cur = powers[0]
    while True:
        cur = _emul(a, cur, x)
        sol = _frac_solve(powers, cur)
        if sol is not None:
            coeffs = [-c for c in sol] + [Fraction(1)]
            return coeffs
        powers.append(cur)


def _scale_to_integer_minpoly(coeffs):
    """Given monic rational minpoly of x, return (c, integer minpoly of c*x)."""
    deg = len(coeffs) - 1
    den = 1
    for cc in coeffs[:-1]:
        den = den * cc.denominator // gcd(den, cc.denominator)
    c = den
    out = []
    for i, cc in enumerate(coeffs[:-1]):
        v = cc * c ** (deg - i)
        assert v.denominator == 1
        out.append(int(v))
    out.append(1)
    return c, IntPolynomial(out)


def _eval_poly_component(a, comp, coeffs, x):
    """Polynomial evaluation where the constant acts on the component unit."""
    out = [c * coeffs[-1] for c in map(Fraction, comp.unit)]
    for cc in reversed(coeffs[:-1]):
        out = _emul(a, out, x)
        for i, u in enumerate(comp.unit):
            out[i] += cc * u
    return out


def decompose(a: Order, seed: int = 0) -> EtaleDecomposition:
    """Split A (x) Q into fields by factoring minimal polynomials.

    Raises NotReduced (with a nilpotent witness) for degenerate trace form.
    The returned isomorphism is validated multiplicatively on basis pairs.
    """
    red, witness = is_reduced(a)
    if not red:
        raise NotReduced(witness)
    n = a.rank
    if n == 0:
        return EtaleDecomposition([], IntMatrix([], cols=0), 1)
    rng = random.Random(seed)
    std = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    queue = [_Component(basis=[list(map(Fraction, b)) for b in _span_basis(std)],
                        unit=list(map(Fraction, a.unit)))]
    fields = []
    while queue:
        comp = queue.pop()
        m = len(comp.basis)
        split_done = False
        for x in _candidate_elements(comp, rng, n):
            coeffs = _minpoly_of(a, comp, x)
            c, g = _scale_to_integer_minpoly(coeffs)
            from .intpoly import factor_over_Z
            _, facs = factor_over_Z(g, degree_cap=max(8, g.degree))
            assert all(mult == 1 for _, mult in facs), "minpoly not squarefree"
            if len(facs) == 1:
                if g.degree == m:
                    theta = [cc * c for cc in x]
                    fields.append((g, theta, comp))
                    split_done = True
                    break
                continue
            # split off the factor through a Bezout idempotent
            u = facs[0][0]
            v = _poly_quotient(g, u)
            s, t = _bezout_q(u, v)
            y = [cc * c for cc in x]
            e1 = _eval_poly_component(a, comp, [Fraction(q) for q in _mul_frac(s, u)],
                                      y)
            e2 = [ue - e for ue, e in zip(comp.unit, e1)]
            for eid in (e1, e2):
                sub_basis = _span_basis([_emul(a, eid, b) for b in comp.basis])
                queue.append(_Component(basis=sub_basis, unit=eid))
            split_done = True
            break
        if not split_done:
            raise PreconditionError("no primitive element found; is A reduced?")
    fields.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    minpolys = []
    columns = []
    for g, theta, comp in fields:
        minpolys.append(g)
        cur = list(map(Fraction, comp.unit))
        columns.append(cur)
        for _ in range(g.degree - 1):
            cur = _emul(a, cur, theta)
            columns.append(cur)
    assert sum(g.degree for g in minpolys) == n
    den = 1
    for col in columns:
        for cc in col:
            den = den * cc.denominator // gcd(den, cc.denominator)
    iso = IntMatrix([[int(columns[j][i] * den) for j in range(n)]
                     for i in range(n)])
    dec = EtaleDecomposition(minpolys, iso, den)
    _validate_decomposition(a, dec)
    return dec


def _span_basis(vectors):
    """Row-reduce Fraction vectors to an independent spanning subset."""
    basis = []
    reduced = []
    for v in vectors:
        w = list(v)
        for rv in reduced:
            piv = next(i for i, x in enumerate(rv) if x)
            if w[piv]:
                f = w[piv] / rv[piv]
                w = [x - f * y for x, y in zip(w, rv)]
        if any(w):
            basis.append(list(v))
            reduced.append(w)
    return basis


def _candidate_elements(comp, rng, n):
    for b in comp.basis:
        yield b
    for _ in range(16 + 8 * len(comp.basis)):
        coeffs = [rng.randint(-3, 3) for _ in comp.basis]
        vec = [Fraction(0)] * n
        for c, b in zip(coeffs, comp.basis):
            if c:
                for i in range(n):
                    vec[i] += c * b[i]
        if any(vec):
            yield vec


def _poly_quotient(g, u):
    from .intpoly import _div_exact_q
    return _div_exact_q(g, u)


def _bezout_q(u, v):
    """s, t over Q with s*u + t*v = 1 for coprime u, v."""
    r0 = [Fraction(c) for c in u.coeffs]
    r1 = [Fraction(c) for c in v.coeffs]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def pdiv(a, b):
        a = a[:]
        q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
        while len(a) >= len(b) and any(a):
            while a and not a[-1]:
                a.pop()
            if len(a) < len(b):
                break
            c = a[-1] / b[-1]
            off = len(a) - len(b)
            q[off] += c
            for j in range(len(b)):
                a[off + j] -= c * b[j]
            while a and not a[-1]:
                a.pop()
        return q, a

    def pmul(a, b):
        if not a or not b:
            return []
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out

    def psub(a, b):
        out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        while out and not out[-1]:
            out.pop()
        return out

    while r1:
        q, r2 = pdiv(r0, r1)
        s2 = psub(s0, pmul(q, s1))
        t2 = psub(t0, pmul(q, t1))
        r0, r1, s0, s1, t0, t1 = r1, r2, s1, s2, t1, t2
    c = r0[0]
    return [x / c for x in s0], [x / c for x in t0]


def _mul_frac(s, u):
    out = [Fraction(0)] * (len(s) + u.degree)
    for i, x in enumerate(s):
        if x:
            for j, y in enumerate(u.coeffs):
                out[i + j] += x * y
    return out


def _validate_decomposition(a: Order, dec: EtaleDecomposition):
    n = a.rank
    if n == 0:
        return
    det = bareiss_det(dec.iso_num)
    assert det != 0, "decomposition map is singular"
    # multiplicativity on product-ring basis pairs
    offsets = []
    off = 0
    for g in dec.minpolys:
        offsets.append(off)
        off += g.degree
    den = Fraction(dec.denominator)
    cols = [[Fraction(dec.iso_num.data[i][j], dec.denominator) for i in range(n)]
            for j in range(n)]

    def basis_image(ci, power):
        return cols[offsets[ci] + power]

    for ci, g in enumerate(dec.minpolys):
        d = g.degree
        for p1 in range(d):
            for p2 in range(d):
                prod = _emul(a, basis_image(ci, p1), basis_image(ci, p2))
                # reduce theta^(p1+p2) through the minimal polynomial
                e = p1 + p2
                rep = [Fraction(0)] * (2 * d)
                rep[e] = Fraction(1)
                for i in range(2 * d - 1, d - 1, -1):
                    if rep[i]:
                        c = rep[i]
                        rep[i] = Fraction(0)
                        for j, cc in enumerate(g.coeffs[:-1]):
                            rep[i - d + j] -= c * cc
                expect = [Fraction(0)] * n
                for j in range(d):
                    if rep[j]:
                        col = basis_image(ci, j)
                        for i in range(n):
                            expect[i] += rep[j] * col[i]
                assert prod == expect, "decomposition not multiplicative"
    # cross-component products vanish
    for c1 in range(len(dec.minpolys)):
        for c2 in range(c1 + 1, len(dec.minpolys)):
            prod = _emul(a, basis_image(c1, 0), basis_image(c2, 0))
            assert not any(prod), "component idempotents not orthogonal"


# ---------------------------------------------------------------------------
# etale engine

def _etale_zeros(a: Order, f: IntPolynomial, dec=None):
    if dec is None:
        dec = decompose(a)
    n = a.rank
    per_component = []
    for g in dec.minpolys:
        roots = roots_in_number_field(f, g)
        per_component.append(roots)
    total = 1
    for r in per_component:
        total *= len(r)
        if total == 0:
            break
    meta = {"spectrum": dec.spectrum_size, "candidates": total}
    if total == 0:
        return [], meta
    if total > CANDIDATE_CAP:
        raise EnumerationCapExceeded(f"{total} candidate tuples")
    zeros = []
    import itertools
    den = dec.denominator
    for combo in itertools.product(*per_component):
        vec = []
        for root in combo:
            vec.extend(root)
        coords = []
        ok = True
        for i in range(n):
            acc = Fraction(0)
            row = dec.iso_num.data[i]
            for j in range(n):
                if vec[j]:
                    acc += vec[j] * row[j]
            acc /= den
            if acc.denominator != 1:
                ok = False
                break
            coords.append(int(acc))
        if ok:
            assert a.eval_poly(f, tuple(coords)) == a.zero()
            zeros.append(tuple(coords))
    return sorted(zeros), meta


# ---------------------------------------------------------------------------
# rigorous coordinate bound for zeros

def _frobenius_norm_sq(a: Order, j):
    # multiplication-by-e_j matrix has columns e_j * e_m
    return sum(c * c for m in range(a.rank) for c in a.table[j][m])


def zero_coord_bound(a: Order, f: IntPolynomial, T: IntMatrix, detT: int) -> int:
    """B with |coords(x)| <= B for every zero x of f in A.

    Eigenvalues of multiplication by a zero are roots of f, so Cauchy's
    bound controls all embeddings; traces against basis elements are then
    bounded through Frobenius norms (Schur), and the trace form is inverted
    either by a rigorously certified float inverse or a Cramer/Hadamard
    estimate. Everything rounds outward in exact arithmetic.
    """
    n = a.rank
    lc = abs(f.lc)
    rho = 1 + max(abs(c) // lc + 1 for c in f.coeffs)
    tb = 0
    for j in range(n):
        fn = isqrt(_frobenius_norm_sq(a, j)) + 1
        b = rho * (isqrt(n) + 1) * fn
        tb = max(tb, b)
    # certified float inverse
    try:
        Tf = np.array(T.data, dtype=np.float64)
        X = np.linalg.inv(Tf)
        Xfr = [[Fraction(float(X[i, j])) for j in range(n)] for i in range(n)]
        R_max = Fraction(0)
        for i in range(n):
            s = Fraction(0)
            for j in range(n):
                acc = Fraction(0)
                for k in range(n):
                    acc += Xfr[i][k] * T.data[k][j]
                if i == j:
                    acc -= 1
                s += abs(acc)
            R_max = max(R_max, s)
        if R_max < 1:
            xnorm = max(sum(abs(x) for x in row) for row in Xfr)
            bound = xnorm / (1 - R_max) * tb
            return int(bound) + 1
    except (OverflowError, np.linalg.LinAlgError, ValueError):
        pass
    # Cramer + Hadamard fallback
    colnorm = []
    for j in range(n):
        colnorm.append(isqrt(sum(T.data[i][j] ** 2 for i in range(n))) + 1)
    tnorm = (isqrt(n) + 1) * tb
    best = 0
    for i in range(n):
        prod = tnorm
        for j in range(n):
            if j != i:
                prod *= colnorm[j]
        best = max(best, prod // abs(detT) + 1)
    return best


# ---------------------------------------------------------------------------
# small finite field toolkit: F_q = F_p[x]/(h), elements are int tuples

class _Fq:
    __slots__ = ("p", "h", "d")

    def __init__(self, p, h):
        self.p = p
        self.h = [c % p for c in h]  # monic, ascending, length d+1
        self.d = len(h) - 1

    def zero(self):
        return (0,) * self.d

    def one(self):
        return (1,) + (0,) * (self.d - 1)

    def scalar(self, c):
        return (c % self.p,) + (0,) * (self.d - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        p, d, h = self.p, self.d, self.h
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d):
                    prod[i - d + j] = (prod[i - d + j] - c * h[j]) % p
        return tuple(prod[:d])

    def inv(self, a):
        # extended Euclid in F_p[x]
        p = self.p
        r0, r1 = list(self.h), [c for c in a]
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [1]
        while r1:
            q, r2 = self._pdiv(r0, r1)
            s2 = self._psub(s0, self._pmul(q, s1))
            r0, r1, s0, s1 = r1, r2, s1, s2
        inv = pow(r0[0], p - 2, p)
        out = [c * inv % p for c in s0]
        out += [0] * (self.d - len(out))
        return tuple(out[: self.d])

    def _pmul(self, a, b):
        if not a or not b:
            return []
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
        while out and not out[-1]:
            out.pop()
        return out

    def _psub(self, a, b):
        p = self.p
        out = [0] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = (out[i] - c) % p
        while out and not out[-1]:
            out.pop()
        return out

    def _pdiv(self, a, b):
        p = self.p
        a = a[:]
        inv = pow(b[-1], p - 2, p)
        q = [0] * max(len(a) - len(b) + 1, 1)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            off = len(a) - len(b)
            q[off] = c
            for j in range(len(b)):
                a[off + j] = (a[off + j] - c * b[j]) % p
            a.pop()
            while a and not a[-1]:
                a.pop()
        return q, a

    def pow(self, a, e):
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return out


def _fq_poly_roots(fq: _Fq, poly, rng):
    """All roots in F_q of a polynomial with F_q coefficients (CZ descent)."""
    # strip to monic
    poly = [c for c in poly]
    while poly and poly[-1] == fq.zero():
        poly.pop()
    if len(poly) <= 1:
        return []
    inv = fq.inv(poly[-1])
    poly = [fq.mul(c, inv) for c in poly]
    q = fq.p ** fq.d

    def pmod(a, b):
        # both lists of fq elements, b monic
        a = a[:]
        while len(a) >= len(b):
            c = a[-1]
            off = len(a) - len(b)
            if any(cc for cc in c):
                for j in range(len(b)):
                    a[off + j] = fq.sub(a[off + j], fq.mul(c, b[j]))
            a.pop()
        while a and not any(a[-1]):
            a.pop()
        return a

    def pgcd(a, b):
        a, b = a[:], b[:]
        while b:
            a, b = b, pmod(a, b)
        if a:
            inv = fq.inv(a[-1])
            a = [fq.mul(c, inv) for c in a]
        return a

    def ppowmod(base, e, mod):
        out = [fq.one()]
        base = pmod(base, mod)
        while e:
            if e & 1:
                out = pmod(_pmul_fq(out, base), mod)
            e >>= 1
            if e:
                base = pmod(_pmul_fq(base, base), mod)
        return out

    def _pmul_fq(a, b):
        out = [fq.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if any(x):
                for j, y in enumerate(b):
                    if any(y):
                        out[i + j] = fq.add(out[i + j], fq.mul(x, y))
        return out

    def norm(lst):
        while lst and not any(lst[-1]):
            lst.pop()
        return lst

    # keep only the part splitting into linear factors over F_q
    xq = ppowmod([fq.zero(), fq.one()], q, poly)
    xq_minus_x = norm([fq.sub(c, fq.one() if i == 1 else fq.zero())
                       for i, c in enumerate(xq + [fq.zero()] * (2 - len(xq)))])
    lin = pgcd(poly, xq_minus_x)
    roots = []

    def split(g):
        deg = len(g) - 1
        if deg == 0:
            return
        if deg == 1:
            roots.append(fq.sub(fq.zero(), g[0]))
            return
        while True:
            aconst = tuple(rng.randrange(fq.p) for _ in range(fq.d))
            base = [aconst, fq.one()]  # Y + a
            if fq.p == 2:
                t = base
                acc = base
                for _ in range(fq.d - 1):
                    t = ppowmod(t, 2, g)
                    acc = norm([fq.add(x, y) for x, y in
                                zip(acc + [fq.zero()] * max(0, len(t) - len(acc)),
                                    t + [fq.zero()] * max(0, len(acc) - len(t)))])
                h = pgcd(g, acc)
            else:
                t = ppowmod(base, (q - 1) // 2, g)
                t = norm([fq.sub(c, fq.one() if i == 0 else fq.zero())
                          for i, c in enumerate(t + [fq.zero()] * (1 - len(t)))])
                h = pgcd(g, t)
            if 0 < len(h) - 1 < deg:
                rest = _pdiv_fq(g, h)
                split(h)
                split(rest)
                return

    def _pdiv_fq(a, b):
        a = a[:]
        q_ = [fq.zero()] * max(len(a) - len(b) + 1, 1)
        while len(a) >= len(b):
            c = a[-1]
            off = len(a) - len(b)
            q_[off] = c
            for j in range(len(b)):
                a[off + j] = fq.sub(a[off + j], fq.mul(c, b[j]))
            a.pop()
            while a and not any(a[-1]):
                a.pop()
        return q_

    if len(lin) > 1:
        split(lin)
    return roots


# ---------------------------------------------------------------------------
# mod-p linear algebra on int64 arrays

def _gauss_kernel_mod_p(M, p):
    """Basis of the kernel of M (column action) over F_p; list of vectors."""
    m = (M % p).astype(np.int64)
    rows, cols = m.shape
    aug = m.copy()
    piv_of_col = [-1] * cols
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if aug[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[[r, piv]] = aug[[piv, r]]
        inv = pow(int(aug[r, c]), p - 2, p)
        aug[r] = aug[r] * inv % p
        for i in range(rows):
            if i != r and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[r]) % p
        piv_of_col[c] = r
        r += 1
    free = [c for c in range(cols) if piv_of_col[c] < 0]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for c in range(cols):
            pr = piv_of_col[c]
            if pr >= 0:
                v[c] = (-int(aug[pr, fc])) % p
        basis.append(v)
    return basis


def _gauss_solve_mod_p(M, rhs, p):
    rows, cols = M.shape
    aug = np.concatenate([M % p, (rhs % p).reshape(rows, 1)], axis=1)
    r = 0
    piv_cols = []
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if aug[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[[r, piv]] = aug[[piv, r]]
        inv = pow(int(aug[r, c]), p - 2, p)
        aug[r] = aug[r] * inv % p
        for i in range(rows):
            if i != r and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[r]) % p
        piv_cols.append(c)
        r += 1
    for i in range(r, rows):
        if aug[i, cols] % p:
            return None
    out = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv_cols):
        out[c] = aug[i, cols]
    return out


# ---------------------------------------------------------------------------
# hensel engine

class _ModPAlgebra:
    """A/pA with enough structure to enumerate and lift zeros of f."""

    def __init__(self, a: Order, p: int):
        self.a = a
        self.p = p
        n = a.rank
        self.n = n
        self.table_mod = np.array(
            [[[c % p for c in cell] for cell in row] for row in a.table],
            dtype=np.int64)
        self.unit_mod = np.array([c % p for c in a.unit], dtype=np.int64)

    def mul(self, x, y):
        return _kernels.mul_mod(self.table_mod, x, y, self.p)

    def frobenius_matrix(self):
        return _kernels.frobenius_matrix(self.table_mod, self.p, self.p)


def _split_idempotents(alg: _ModPAlgebra):
    """Primitive idempotents of the etale algebra A/pA."""
    p, n = alg.p, alg.n
    F = alg.frobenius_matrix()
    eye = np.eye(n, dtype=np.int64)
    berle = _gauss_kernel_mod_p((F - eye) % p, p)
    s = len(berle)
    comps = [alg.unit_mod.copy()]
    if s == 1:
        return comps
    for b in berle:
        if len(comps) == s:
            break
        new_comps = []
        for e in comps:
            x = alg.mul(e, b)
            # minimal polynomial of x in the subalgebra with unit e; its
            # roots are Frobenius-fixed, hence all in F_p, and distinct
            powers = [e.copy()]
            cur = e.copy()
            coeffs = None
            while True:
                cur = alg.mul(cur, x)
                sol = _gauss_solve_mod_p(np.stack(powers, axis=1), cur, p)
                if sol is not None:
                    coeffs = [int(c) for c in sol]
                    break
                powers.append(cur.copy())
            mp = IntPolynomial([-c for c in coeffs] + [1])
            if mp.degree <= 1:
                new_comps.append(e)
                continue
            _, facs = factor_mod_p(mp, p)
            roots = [(-poly.coeffs[0]) % p for poly, _ in facs if poly.degree == 1]
            if len(roots) <= 1:
                new_comps.append(e)
                continue
            for c0 in roots:
                proj = e.copy()
                denom = 1
                for c1 in roots:
                    if c1 != c0:
                        term = (x - c1 * e) % p
                        proj = alg.mul(proj, term)
                        denom = denom * (c0 - c1) % p
                proj = proj * pow(denom, p - 2, p) % p
                new_comps.append(proj.astype(np.int64))
        comps = new_comps
    assert len(comps) == s, "Berlekamp basis failed to separate the factors"
    return comps


class _Factor:
    __slots__ = ("idem", "basis", "dim", "fq", "embed", "gen")

    def __init__(self, idem, basis, dim, fq, embed, gen):
        self.idem = idem      # idempotent in A/pA coordinates
        self.basis = basis    # columns spanning e*(A/pA)
        self.dim = dim
        self.fq = fq          # _Fq representation
        self.embed = embed    # (n, dim) int64: fq power basis -> algebra coords
        self.gen = gen        # generator coords in algebra


def _factor_structure(alg: _ModPAlgebra, idem):
    """Field representation F_p[x]/(h) of one factor e*(A/pA)."""
    p, n = alg.p, alg.n
    cols = [alg.mul(idem, np.eye(n, dtype=np.int64)[j]) for j in range(n)]
    M = np.stack(cols, axis=1) % p
    # column space basis
    basis = []
    reduced = []
    for j in range(n):
        v = M[:, j].copy()
        w = v.copy()
        for rv in reduced:
            piv = int(np.nonzero(rv)[0][0])
            if w[piv]:
                w = (w - int(w[piv]) * pow(int(rv[piv]), p - 2, p) % p * rv) % p
        if w.any():
            basis.append(v)
            reduced.append(w)
    dim = len(basis)
    # find a generator with degree-dim minimal polynomial
    rng = random.Random(0xFACADE ^ alg.p)
    candidates = list(basis) + [
        sum(rng.randint(0, p - 1) * b for b in basis) % p for _ in range(24)]
    for gen in candidates:
        gen = np.asarray(gen, dtype=np.int64) % p
        powers = [idem.copy()]
        cur = idem.copy()
        h = None
        for _ in range(dim):
            cur = alg.mul(cur, gen)
            sol = _gauss_solve_mod_p(np.stack(powers, axis=1), cur, p)
            if sol is not None:
                if len(powers) == dim:
                    h = [(-int(c)) % p for c in sol] + [1]
                break
            powers.append(cur.copy())
        if h is not None:
            fq = _Fq(p, h)
            embed = np.stack(powers, axis=1) % p  # columns: gen^0..gen^(dim-1)
            return _Factor(idem, basis, dim, fq, embed, gen)
    raise PreconditionError("no generator found for a mod-p factor")


def _zeros_mod_p(alg: _ModPAlgebra, f: IntPolynomial, cap: int):
    """Per-factor zero lists of f in A/pA; None when past the cap."""
    comps = _split_idempotents(alg)
    factors = [_factor_structure(alg, e) for e in comps]
    rng = random.Random(0xBEEF ^ alg.p)
    per_factor = []
    total = 1
    for fac in factors:
        poly = [fac.fq.scalar(c) for c in f.coeffs]
        roots = _fq_poly_roots(fac.fq, poly, rng)
        zs = []
        for r in roots:
            coords = fac.embed @ np.array(r, dtype=np.int64) % alg.p
            zs.append(coords.astype(np.int64))
        zs.sort(key=lambda v: tuple(int(c) for c in v))
        per_factor.append(zs)
        total *= len(zs)
    if total > cap:
        return None, factors, total
    return per_factor, factors, total


def _hensel_zeros(a: Order, f: IntPolynomial, T, detT, prime_hint=None,
                  cand_cap=CANDIDATE_CAP):
    n = a.rank
    fsf = squarefree_part(f)
    disc = discriminant(fsf)
    bad = abs(disc * detT * fsf.lc)

    def prime_ok(p):
        return p > 2 and is_prime(p) and bad % p != 0

    tried = []
    best = None
    candidates = []
    if prime_hint:
        candidates.extend([p for p in prime_hint if prime_ok(p)])
    p = 1289
    while len(candidates) < 6:
        p = next_prime(p)
        if prime_ok(p):
            candidates.append(p)
    for p in candidates:
        alg = _ModPAlgebra(a, p)
        per_factor, factors, total = _zeros_mod_p(alg, fsf, cand_cap)
        tried.append((p, total))
        if per_factor is None:
            continue
        if best is None or total < best[3]:
            best = (p, alg, (per_factor, factors), total)
        if total <= 128:
            break
    if best is None:
        raise EnumerationCapExceeded(f"candidate counts {tried}")
    p, alg, (per_factor, factors), total = best

    bound = zero_coord_bound(a, fsf, T, detT)
    # modulus: largest p-power within the word-safe kernel range
    K = 1
    while p ** (K + 1) < _kernels.MAX_MODULUS:
        K += 1
    m_word = p ** K

    lifted_roots, lifted_idems, modulus = _lift_factor_roots(
        a, fsf, alg, factors, per_factor, m_word, p, 2 * bound + 1)

    # assemble candidate tuples and keep the exact zeros
    import itertools
    combos = itertools.product(*[range(len(z)) for z in per_factor])
    zeros = []
    seen = set()
    half = modulus // 2
    for combo in combos:
        acc = [0] * n
        for fi, ri in enumerate(combo):
            z = lifted_roots[fi][ri]
            for i in range(n):
                acc[i] += int(z[i])
        cand = tuple((c % modulus) - modulus if (c % modulus) > half
                     else c % modulus for c in acc)
        if max(map(abs, cand), default=0) > bound:
            continue
        if cand in seen:
            continue
        seen.add(cand)
        if a.eval_poly(f, cand) == a.zero():
            zeros.append(cand)
    meta = {"prime": p, "modulus_bits": modulus.bit_length(),
            "bound_bits": bound.bit_length(), "candidates": total,
            "factors": len(factors)}
    return sorted(zeros), meta


def _lift_factor_roots(a, fsf, alg, factors, per_factor, m_word, p, need):
    """Newton-lift factor roots and idempotents from mod p past ``need``.

    Word-sized levels run through the numba kernel; any remaining levels
    run the same iteration in exact Python integers. After every step the
    root and its relative inverse are projected back onto the factor by the
    freshly lifted idempotent, which is what keeps the off-factor
    coordinates converging to zero as the precision doubles.
    """
    fprime = fsf.derivative()
    table_cache = {}

    def table_mod(m):
        if m not in table_cache:
            table_cache[m] = np.array(
                [[[c % m for c in cell] for cell in row] for row in a.table],
                dtype=np.int64)
        return table_cache[m]

    state = []  # per factor: (e, [roots], [invs]) as int64 arrays mod p
    for fi, fac in enumerate(factors):
        e = fac.idem.astype(np.int64)
        roots = [z.copy() for z in per_factor[fi]]
        invs = []
        for z in roots:
            rcoords = _gauss_solve_mod_p(fac.embed, z, p)
            fq = fac.fq
            relem = tuple(int(c) for c in rcoords)
            val = fq.zero()
            for c in reversed(fprime.coeffs):
                val = fq.add(fq.mul(val, relem), fq.scalar(c))
            uinv = fq.inv(val)
            ucoords = fac.embed @ np.array(uinv, dtype=np.int64) % p
            invs.append(ucoords.astype(np.int64))
        state.append((e, roots, invs))

    m = p
    while m < m_word:
        target = min(m * m, m_word)
        t64 = table_mod(target)
        new_state = []
        for e, roots, invs in state:
            e2 = _kernels.mul_mod(t64, e, e, target)
            e3 = _kernels.mul_mod(t64, e2, e, target)
            e_new = (3 * e2 - 2 * e3) % target
            nr, ni = [], []
            for z, u in zip(roots, invs):
                fz = _eval_mod(t64, a, fsf, z, target)
                zu = _kernels.mul_mod(t64, fz, u, target)
                z2 = (z - zu) % target
                z2 = _kernels.mul_mod(t64, e_new, z2, target)
                fpz = _eval_mod(t64, a, fprime, z2, target)
                fu = _kernels.mul_mod(t64, fpz, u, target)
                corr = (2 * e_new - fu) % target
                u2 = _kernels.mul_mod(t64, u, corr, target)
                u2 = _kernels.mul_mod(t64, e_new, u2, target)
                nr.append(z2)
                ni.append(u2)
            new_state.append((e_new, nr, ni))
        state = new_state
        m = target

    # exact tail for bounds beyond the word modulus (same iteration)
    if m < need:
        big = [(tuple(int(c) for c in e),
                [tuple(int(c) for c in z) for z in roots],
                [tuple(int(c) for c in u) for u in invs])
               for e, roots, invs in state]
        while m < need:
            target = m * m
            new_big = []
            for e, roots, invs in big:
                e2 = _mulm(a, e, e, target)
                e3 = _mulm(a, e2, e, target)
                e_new = tuple((3 * x - 2 * y) % target for x, y in zip(e2, e3))
                nr, ni = [], []
                for z, u in zip(roots, invs):
                    fz = tuple(c % target for c in a.eval_poly(fsf, z))
                    z2 = tuple((zi - c) % target
                               for zi, c in zip(z, a.mul(fz, u)))
                    z2 = _mulm(a, e_new, z2, target)
                    fpz = tuple(c % target for c in a.eval_poly(fprime, z2))
                    fu = _mulm(a, fpz, u, target)
                    corr = tuple((2 * x - y) % target for x, y in zip(e_new, fu))
                    u2 = _mulm(a, _mulm(a, u, corr, target), e_new, target)
                    nr.append(z2)
                    ni.append(u2)
                new_big.append((e_new, nr, ni))
            big = new_big
            m = target
        roots_out = [[np.array(z, dtype=object) for z in roots]
                     for _, roots, _ in big]
        idems_out = [np.array(e, dtype=object) for e, _, _ in big]
        return roots_out, idems_out, m

    return [roots for _, roots, _ in state], [e for e, _, _ in state], m


def _mulm(a, x, y, m):
    return tuple(c % m for c in a.mul(x, y))


def _eval_mod(t64, a, poly, x, m):
    cs = poly.coeffs
    unit = np.array([c % m for c in a.unit], dtype=np.int64)
    acc = (cs[-1] % m) * unit % m
    for c in reversed(cs[:-1]):
        acc = _kernels.mul_mod(t64, acc, x, m)
        acc = (acc + (c % m) * unit) % m
    return acc


# ---------------------------------------------------------------------------
# radical splitting for non-reduced A with separable f

def _radical_quotient(a: Order):
    """(reduced order, projection IntMatrix, section IntMatrix)."""
    T = trace_matrix(a)
    N = kernel(T)  # saturated radical lattice, rows
    r = N.rows
    n = a.rank
    D, U, V = snf(IntMatrix([row[:] for row in N.data], cols=n))
    Vinv = inv_unimodular(V)
    # in y = x@V coordinates the radical is the first r axes
    proj = IntMatrix([[V.data[i][r + j] for i in range(n)] for j in range(n - r)],
                     cols=n)
    sect = IntMatrix([Vinv.data[r + j] for j in range(n - r)], cols=n)
    m = n - r
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            prod = a.mul(tuple(sect.data[i]), tuple(sect.data[j]))
            row.append(proj.apply(prod))
        table.append(row)
    unit = proj.apply(a.unit)
    quo = Order(m, table, unit)
    validate_order(quo)
    return quo, proj, sect


def _lift_through_radical(a: Order, f: IntPolynomial, x0):
    """Unique zero of f above x0 in A (x) Q, or None if f'(x0) not a unit."""
    n = a.rank
    x = [Fraction(c) for c in x0]
    fp = f.derivative()
    for _ in range(n.bit_length() + 2):
        fx = _eval_frac(a, f, x)
        if not any(fx):
            return x
        fpx = _eval_frac(a, fp, x)
        # solve fpx * u = f(x)
        cols = []
        for j in range(n):
            ej = [Fraction(1 if i == j else 0) for i in range(n)]
            cols.append(_emul(a, fpx, ej))
        u = _frac_solve(cols, fx)
        if u is None:
            return None
        x = [xi - ui for xi, ui in zip(x, u)]
    fx = _eval_frac(a, f, x)
    return x if not any(fx) else None


def _eval_frac(a, f, x):
    unit = [Fraction(c) for c in a.unit]
    out = [f.coeffs[-1] * c for c in unit]
    for c in reversed(f.coeffs[:-1]):
        out = _emul(a, out, x)
        out = [o + c * u for o, u in zip(out, unit)]
    return out


# ---------------------------------------------------------------------------
# public operations

def zeros_in_order(a: Order, f: IntPolynomial, engine: str = "auto",
                   prime_hint=None) -> ZerosResult:
    """Complete zero set of f in a, with the emptiness decision.

    Preconditions per the contract: f nonconstant requires f separable or a
    reduced (otherwise NotSupported); constant and zero polynomials are
    handled directly. zeros is None only for the zero polynomial on a ring
    of positive rank, where the zero set is everything.
    """
    if a.rank == 0:
        return ZerosResult(True, [a.element(())], "trivial", {"zero_ring": True})
    if f.is_zero:
        return ZerosResult(True, None, "trivial", {"everything": True})
    if f.degree == 0:
        return ZerosResult(False, [], "trivial", {})
    red, witness = is_reduced(a)
    if not red:
        if discriminant(f) == 0:
            raise NotSupported(
                "inseparable polynomial over a non-reduced ring")
        return _zeros_nonreduced(a, f)
    if engine == "auto":
        engine = "etale" if a.rank <= 8 else "hensel"
    if engine == "etale":
        zeros, meta = _etale_zeros(a, f)
    elif engine == "hensel":
        T = trace_matrix(a)
        detT = bareiss_det(T)
        zeros, meta = _hensel_zeros(a, f, T, detT, prime_hint=prime_hint)
    else:
        raise PreconditionError(f"unknown engine {engine!r}")
    elems = [a.element(z) for z in zeros]
    return ZerosResult(bool(elems), elems, engine, meta)


def _zeros_nonreduced(a: Order, f: IntPolynomial):
    quo, proj, sect = _radical_quotient(a)
    inner = zeros_in_order(quo, f)
    zeros = []
    for zbar in inner.zeros:
        x0 = sect.transpose().apply(list(zbar.coords))
        x = _lift_through_radical(a, f, x0)
        if x is None:
            continue
        if all(c.denominator == 1 for c in x):
            cand = tuple(int(c) for c in x)
            assert a.eval_poly(f, cand) == a.zero()
            zeros.append(cand)
    zeros.sort()
    return ZerosResult(bool(zeros), [a.element(z) for z in zeros],
                       "radical+" + inner.engine, {"reduced_rank": quo.rank})


def verify_certificate(a: Order, f: IntPolynomial, c) -> bool:
    """True exactly when f(c) is the zero vector of a."""
    coords = c.coords if isinstance(c, OrderElement) else tuple(c)
    if len(coords) != a.rank:
        raise PreconditionError("certificate has the wrong rank")
    return a.eval_poly(f, coords) == a.zero()
