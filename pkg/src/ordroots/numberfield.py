"""Root-finding for integer polynomials inside Q[X]/(g), g monic irreducible.

The engine is resultant-based: for a shift s making the norm polynomial
N(X) = Res_Y(g(Y), f(X - sY)) squarefree, the linear factors of f over the
field correspond to linear gcds gcd(f(Y), N_i(Y + s*theta)) taken against
the irreducible integer factors N_i of N. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import PreconditionError
from .intpoly import IntPolynomial, factor_over_Z, resultant, squarefree_part

# -- arithmetic in K = Q[X]/(g): elements are Fraction tuples of length deg g


def kelt(n, const=0):
    return (Fraction(const),) + (Fraction(0),) * (n - 1)


def kadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def ksub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def ksmul(c, a):
    return tuple(c * x for x in a)


def kmul(a, b, g):
    n = len(a)
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    # reduce modulo monic g
    gc = g.coeffs
    for i in range(2 * n - 2, n - 1, -1):
        c = prod[i]
        if c:
            for j in range(n):
                prod[i - n + j] -= c * gc[j]
            prod[i] = 0
    return tuple(prod[:n])


def kinv(a, g):
    """Inverse in K by extended Euclid over Q[X]."""
    n = len(a)
    r0 = [Fraction(c) for c in g.coeffs]
    r1 = list(a)
    while r1 and not r1[-1]:
        r1.pop()
    if not r1:
        raise ZeroDivisionError("inverse of zero field element")
    s0, s1 = [], [Fraction(1)]

    def polydiv(u, v):
        u = u[:]
        q = [Fraction(0)] * max(len(u) - len(v) + 1, 1)
        while len(u) >= len(v):
            c = u[-1] / v[-1]
            off = len(u) - len(v)
            q[off] = c
            for j in range(len(v)):
                u[off + j] -= c * v[j]
            u.pop()
            while u and not u[-1]:
                u.pop()
        return q, u

    def polysub(u, v):
        out = list(u) + [Fraction(0)] * max(0, len(v) - len(u))
        for i, c in enumerate(v):
            out[i] -= c
        while out and not out[-1]:
            out.pop()
        return out

    def polymul(u, v):
        if not u or not v:
            return []
        out = [Fraction(0)] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    out[i + j] += x * y
        return out

    while r1:
        q, r2 = polydiv(r0, r1)
        s2 = polysub(s0, polymul(q, s1))
        r0, r1, s0, s1 = r1, r2, s1, s2
    if len(r0) != 1:
        raise PreconditionError("modulus is not irreducible over Q")
    c = r0[0]
    out = [x / c for x in s0]
    out += [Fraction(0)] * (n - len(out))
    return tuple(out[:n])


# -- polynomials over K: lists of K-elements, ascending, trailing nonzero


def _kpnorm(poly):
    while poly and not any(poly[-1]):
        poly.pop()
    return poly


def _kpgcd_monic(u, v, g):
    """Monic gcd in K[Y] by the Euclidean algorithm."""
    u, v = _kpnorm(list(u)), _kpnorm(list(v))
    while v:
        inv = kinv(v[-1], g)
        vm = [kmul(c, inv, g) for c in v]
        r = [c for c in u]
        while len(r) >= len(vm):
            lead = r[-1]
            off = len(r) - len(vm)
            for j in range(len(vm)):
                r[off + j] = ksub(r[off + j], kmul(lead, vm[j], g))
            r.pop()
            _kpnorm(r)
            if len(r) < len(vm):
                break
        u, v = vm, _kpnorm(r)
    if u:
        inv = kinv(u[-1], g)
        u = [kmul(c, inv, g) for c in u]
    return u


def roots_in_number_field(f: IntPolynomial, g: IntPolynomial):
    """All roots of f in K = Q[X]/(g) as Fraction coordinate tuples.

    g must be monic irreducible over Z; there are at most deg f roots and
    each returned root is re-verified by direct evaluation before return.
    Results are sorted by coordinates for determinism.
    """
    if not g.is_monic or g.degree < 1:
        raise PreconditionError("modulus must be monic of positive degree")
    if f.degree < 1:
        return []
    n = g.degree
    f0 = squarefree_part(f)
    if n == 1:
        # K = Q: rational roots from the linear factors
        _, facs = factor_over_Z(f0, degree_cap=max(8, f0.degree))
        roots = []
        for poly, _ in facs:
            if poly.degree == 1:
                roots.append((Fraction(-poly.coeffs[0], poly.coeffs[1]),))
        return sorted(roots)

    d = f0.degree
    target = d * n
    shift = None
    for cand in _shift_candidates():
        N = _norm_resultant(g, f0, cand, target)
        if N.degree == target and _is_squarefree(N):
            shift = cand
            break
    assert shift is not None, "no squarefree shift found"
    _, facs = factor_over_Z(N, degree_cap=target)
    roots = []
    theta = tuple(Fraction(1 if i == 1 else 0) for i in range(n))
    fK = [kelt(n, c) for c in f0.coeffs]
    for Ni, _ in facs:
        if Ni.degree != n:
            # factor degrees are n * (degree over K); only n gives linear parts
            continue
        NiK = _compose_shift_theta(Ni, shift, n, g)
        h = _kpgcd_monic(fK, NiK, g)
        if len(h) == 2:
            root = tuple(-c for c in h[0])
            roots.append(root)
    # soundness: evaluate f at each root inside K
    for r in roots:
        acc = kelt(n)
        for c in reversed(f.coeffs):
            acc = kadd(kmul(acc, r, g), kelt(n, c))
        assert not any(acc), "root verification failed"
    assert len(roots) <= f0.degree
    return sorted(roots)


def _shift_candidates():
    yield 1
    yield -1
    k = 2
    while True:
        yield k
        yield -k
        k += 1


def _is_squarefree(N):
    from .intpoly import poly_gcd
    return poly_gcd(N, N.derivative()).degree == 0


def _norm_resultant(g, f0, s, target):
    """Res_Y(g(Y), f0(X - sY)) by evaluation at target+1 points."""
    xs = []
    vals = []
    x = 0
    while len(xs) <= target:
        fy = _eval_x_poly(f0, x, s)
        vals.append(resultant(g, fy) if fy.degree >= 1 else
                    g.lc ** 0 * (fy.coeffs[0] ** g.degree if fy.coeffs else 0))
        xs.append(x)
        x = -x + (0 if x > 0 else 1)  # 0, 1, -1, 2, -2, ...
    return _interpolate_int(xs, vals)


def _eval_x_poly(f0, x, s):
    # f0(x - sY) as a polynomial in Y
    out = IntPolynomial(())
    lin = IntPolynomial([x, -s])
    for c in reversed(f0.coeffs):
        out = out * lin + IntPolynomial([c])
    return out


def _interpolate_int(xs, vals):
    """Lagrange interpolation with an integrality check."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        # basis polynomial prod (X - xj) / (xi - xj)
        num = [Fraction(1)]
        den = 1
        for j in range(m):
            if j == i:
                continue
            new = [Fraction(0)] * (len(num) + 1)
            for k, c in enumerate(num):
                new[k] -= c * xs[j]
                new[k + 1] += c
            num = new
            den *= xs[i] - xs[j]
        scale = Fraction(vals[i], den)
        for k, c in enumerate(num):
            coeffs[k] += c * scale
    assert all(c.denominator == 1 for c in coeffs)
    return IntPolynomial([int(c) for c in coeffs])


def _compose_shift_theta(Ni, s, n, g):
    """N_i(Y + s*theta) as a polynomial over K."""
    theta_s = tuple(Fraction(s if i == 1 else 0) for i in range(n))
    out = []
    lin0 = theta_s          # constant term of (Y + s*theta)
    for c in reversed(Ni.coeffs):
        # out = out * (Y + s theta) + c
        new = [kelt(n) for _ in range(len(out) + 1)]
        for k, ce in enumerate(out):
            new[k + 1] = kadd(new[k + 1], ce)
            new[k] = kadd(new[k], kmul(ce, lin0, g))
        new[0] = kadd(new[0], kelt(n, c))
        out = _kpnorm(new)
    return out
