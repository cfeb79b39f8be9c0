"""Univariate integer polynomials: arithmetic, discriminants, factoring.

Coefficients are stored ascending (coeffs[i] is the X**i coefficient) with
no trailing zeros; () is the zero polynomial. Factoring over Z is
Zassenhaus: factor modulo a good prime, Hensel lift, recombine; the degree
cap keeps recombination at desk scale and is overridable per call.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt

from .errors import DegreeCapExceeded, PreconditionError
from .numth import is_prime, is_square

DEGREE_CAP = 8


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_string_coeffs(cls, strs):
        return cls([int(s) for s in strs])

    @classmethod
    def x_power(cls, n, c=1):
        return cls([0] * n + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c:+d}")
            else:
                xs = "X" if i == 1 else f"X^{i}"
                if c == 1:
                    terms.append(f"+{xs}")
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{c:+d}*{xs}")
        s = "".join(terms)
        return f"IntPolynomial({s.lstrip('+')})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = IntPolynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def evaluate_fraction(self, x: Fraction) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod_exact(self, d):
        """(q, r) over Q but demanding integer results; d.lc must divide."""
        r = list(self.coeffs)
        dc = d.coeffs
        dd = d.degree
        if dd < 0:
            raise ZeroDivisionError
        q = [0] * max(len(r) - dd, 1)
        for i in range(len(r) - 1 - dd, -1, -1):
            if r[i + dd] % dc[-1]:
                raise PreconditionError("non-exact polynomial division")
            c = r[i + dd] // dc[-1]
            q[i] = c
            if c:
                for j, dj in enumerate(dc):
                    r[i + j] -= c * dj
        return IntPolynomial(q), IntPolynomial(r)

    def divides(self, other) -> bool:
        """Exact divisibility in Q[X] (integer quotient when both primitive)."""
        if self.is_zero:
            return other.is_zero
        if other.is_zero:
            return True
        if other.degree < self.degree:
            return False
        r = [Fraction(c) for c in other.coeffs]
        dc = self.coeffs
        dd = self.degree
        for i in range(len(r) - 1 - dd, -1, -1):
            c = r[i + dd] / dc[-1]
            if c:
                for j, dj in enumerate(dc):
                    r[i + j] -= c * dj
        return not any(r)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self):
        """(content-with-sign, primitive part with positive lc)."""
        if self.is_zero:
            return 0, self
        g = self.content()
        if self.lc < 0:
            g = -g
        return g, IntPolynomial([c // g for c in self.coeffs])

    def compose_linear(self, s: int, k: int):
        """f(s*X + k) by Horner on the outer coefficients."""
        out = IntPolynomial(())
        lin = IntPolynomial([k, s])
        for c in reversed(self.coeffs):
            out = out * lin + IntPolynomial([c])
        return out

    def reciprocal_negated(self):
        """-f(-X); composes with the reflection used to canonicalize cubics."""
        return -self.compose_linear(-1, 0)


X = IntPolynomial([0, 1])
ONE = IntPolynomial([1])


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z via rational remainders, positive leading coeff."""
    if f.is_zero:
        return g.primitive()[1] if not g.is_zero else g
    if g.is_zero:
        return f.primitive()[1]
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]

    def rem(u, v):
        u = u[:]
        while len(u) >= len(v) and any(u):
            while u and not u[-1]:
                u.pop()
            if len(u) < len(v):
                break
            c = u[-1] / v[-1]
            off = len(u) - len(v)
            for j in range(len(v)):
                u[off + j] -= c * v[j]
            u.pop()
        while u and not u[-1]:
            u.pop()
        return u

    while b:
        a, b = b, rem(a, b)
    # clear denominators and strip content
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    return IntPolynomial(ints).primitive()[1]


def _div_exact_q(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """f / g when g divides f in Q[X] and the quotient is integral."""
    a = [Fraction(c) for c in f.coeffs]
    b = g.coeffs
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j in range(len(b)):
                a[i + j] -= c * b[j]
    assert not any(a), "non-exact polynomial division"
    assert all(c.denominator == 1 for c in q), "non-integral quotient"
    return IntPolynomial([int(c) for c in q])


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """f / gcd(f, f'), primitive with positive leading coefficient."""
    if f.degree <= 0:
        return f
    fp = f.primitive()[1]
    g = poly_gcd(fp, fp.derivative())
    return _div_exact_q(fp, g).primitive()[1]


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) by the subresultant pseudo-remainder sequence."""
    if f.is_zero or g.is_zero:
        return 0
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    s = 1
    A, B = f, g
    if A.degree < B.degree:
        if A.degree % 2 and B.degree % 2:
            s = -s
        A, B = B, A
    gg, h = 1, 1
    while True:
        dA, dB = A.degree, B.degree
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        # pseudo-remainder lc(B)^(delta+1) A mod B
        R = _prem(A, B)
        if R.is_zero:
            return 0
        A = B
        denom = gg * h ** delta
        B = IntPolynomial([c // denom for c in R.coeffs])
        gg = A.lc
        if delta == 0:
            h = h
        else:
            h = gg ** delta // h ** (delta - 1)
        if B.degree <= 0:
            break
    if A.degree == 0:
        raise AssertionError("unreachable")
    res = B.coeffs[0] ** A.degree // h ** (A.degree - 1)
    return s * res


def _prem(A, B):
    r = list(A.coeffs)
    dB = B.degree
    lB = B.lc
    for i in range(len(r) - 1 - dB, -1, -1):
        for j in range(len(r)):
            r[j] *= lB
        c = r[i + dB] // lB
        if c:
            for j, bj in enumerate(B.coeffs):
                r[i + dB - B.degree + j] -= c * bj
        r[i + dB] = 0
    return IntPolynomial(r[:dB])


def discriminant(f: IntPolynomial) -> int:
    """Disc(f); zero exactly when f is inseparable. Requires deg >= 1."""
    n = f.degree
    if n < 1:
        raise PreconditionError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    c = f.coeffs
    if n == 2:
        return c[1] * c[1] - 4 * c[2] * c[0]
    if n == 3:
        a, b, cc, d = c[3], c[2], c[1], c[0]
        return (18 * a * b * cc * d - 4 * b ** 3 * d + b * b * cc * cc
                - 4 * a * cc ** 3 - 27 * a * a * d * d)
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert r % f.lc == 0
    return sign * (r // f.lc)


# ---------------------------------------------------------------------------
# arithmetic mod p (dense coefficient lists, ascending)

def _pnorm(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pnorm(out, p)


def _pdivmod(a, b, p):
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
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _pgcd(a, b, p):
    a, b = _pnorm(a, p), _pnorm(b, p)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(a, e, mod, p):
    out = [1]
    a = _pdivmod(a, mod, p)[1] if len(a) >= len(mod) else a[:]
    while e:
        if e & 1:
            out = _pdivmod(_pmul(out, a, p), mod, p)[1]
        e >>= 1
        if e:
            a = _pdivmod(_pmul(a, a, p), mod, p)[1]
    return out


def _pderiv(a, p):
    return _pnorm([i * c for i, c in enumerate(a)][1:], p)


def _sqf_mod(a, p):
    """Squarefree decomposition mod p as [(factor, multiplicity)]."""
    out = []
    d = _pderiv(a, p)
    if not d:
        # a = b(X^p); p-th root by exponent division
        b = [a[i] for i in range(0, len(a), p)]
        for g, m in _sqf_mod(b, p):
            out.append((g, m * p))
        return out
    w = _pgcd(a, d, p)
    v = _pdivmod(a, w, p)[0]
    m = 1
    while len(v) > 1:
        s = _pgcd(v, w, p)
        part = _pdivmod(v, s, p)[0]
        if len(part) > 1:
            out.append((part, m))
        v = s
        w = _pdivmod(w, s, p)[0]
        m += 1
    if len(w) > 1:
        # the residual is a p-th power; take the root before recursing
        assert all(c == 0 for i, c in enumerate(w) if i % p)
        b = [w[i] for i in range(0, len(w), p)]
        for g, mm in _sqf_mod(b, p):
            out.append((g, mm * p))
    return out


def _padd(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _pnorm(out, p)


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _pnorm(out, p)


def _equal_degree_split(a, d, p, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    n = len(a) - 1
    if n == d:
        return [a]
    while True:
        b = _pnorm([rng.randrange(p) for _ in range(n)], p)
        if len(b) - 1 < 1:
            continue
        g0 = _pgcd(b, a, p)
        if 0 < len(g0) - 1 < n:
            g = g0
        elif p == 2:
            t = b[:]
            acc = b[:]
            for _ in range(d - 1):
                t = _ppowmod(t, 2, a, p)
                acc = _padd(acc, t, p)
            g = _pgcd(acc, a, p)
        else:
            e = (p ** d - 1) // 2
            t = _ppowmod(b, e, a, p)
            g = _pgcd(_psub(t, [1], p), a, p)
        if 0 < len(g) - 1 < n:
            rest = _pdivmod(a, g, p)[0]
            return _equal_degree_split(g, d, p, rng) + _equal_degree_split(rest, d, p, rng)


def factor_mod_p(f: IntPolynomial, p: int):
    """Complete factorization of f mod p: (leading unit, [(factor, mult)]).

    Factors are monic IntPolynomials with coefficients in [0, p), sorted for
    determinism. Degree drop (p | lc) is handled by factoring the image.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    a = _pnorm(list(f.coeffs), p)
    if not a:
        raise PreconditionError("polynomial vanishes mod p")
    unit = a[-1]
    inv = pow(unit, p - 2, p)
    a = [c * inv % p for c in a]
    rng = random.Random(0xC0FFEE ^ p)
    out = []
    for sq, mult in _sqf_mod(a, p):
        # distinct degree on the squarefree part
        h = [0, 1]
        v = sq[:]
        d = 0
        while len(v) - 1 > 0:
            d += 1
            if 2 * d > len(v) - 1:
                out.append((v, mult))
                break
            h = _ppowmod(h, p, v, p)
            g = _pgcd(_psub(h, [0, 1], p), v, p)
            if len(g) - 1 > 0:
                for piece in _equal_degree_split(g, d, p, rng):
                    out.append((piece, mult))
                v = _pdivmod(v, g, p)[0]
                if len(h) >= len(v):
                    h = _pdivmod(h, v, p)[1]
    factors = [(IntPolynomial(c), m) for c, m in out]
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return unit, factors


# ---------------------------------------------------------------------------
# factorization over Z (Zassenhaus)

def _yun_squarefree(f: IntPolynomial):
    """Yun's algorithm on a primitive f: [(g_i, i)] with f = +-prod g_i^i."""
    f = f.primitive()[1]
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return [(f, 1)]
    out = []
    c = _div_exact_q(f, g)
    d = _div_exact_q(f.derivative(), g) - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = _div_exact_q(c, a)
        d = _div_exact_q(d, a) - c.derivative()
        i += 1
    return out


def _mignotte_bound(f: IntPolynomial) -> int:
    n = f.degree
    norm = isqrt(sum(c * c for c in f.coeffs)) + 1
    return (1 << n) * norm * abs(f.lc)


def _pinv_mod(a, m, p):
    """s with s*a = 1 mod (m, p); extended Euclid over F_p[X]."""
    r0, r1 = _pnorm(m, p), _pdivmod(_pnorm(a, p), _pnorm(m, p), p)[1]
    s0, s1 = [], [1]
    while r1:
        q, r2 = _pdivmod(r0, r1, p)
        s2 = _psub(s0, _pmul(q, s1, p), p)
        r0, r1, s0, s1 = r1, r2, s1, s2
    assert len(r0) == 1, "inputs were not coprime"
    inv = pow(r0[0], p - 2, p)
    return _pnorm([c * inv for c in s0], p)


def _mulz(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _hensel_lift_multi(f, facs, p, bound):
    """Linear multifactor Hensel: f = lc * prod(cur) mod p^K, p^K > 2*bound.

    Modular factors are monic; the leading coefficient rides along as an
    explicit unit. Bezout data mod p drives every step.
    """
    r = len(facs)
    lc = f.lc
    sis = []
    for i in range(r):
        prod_others = [lc % p]
        for j in range(r):
            if j != i:
                prod_others = _pmul(prod_others, list(facs[j].coeffs), p)
        sis.append(_pinv_mod(prod_others, list(facs[i].coeffs), p))
    cur = [[c % p for c in g.coeffs] for g in facs]
    pk = p
    while pk <= 2 * bound:
        # e = (f - lc * prod cur) / pk  mod p
        prod = [lc]
        for g in cur:
            prod = _mulz(prod, g)
        diff = list(f.coeffs) + [0] * max(0, len(prod) - len(f.coeffs))
        for i, c in enumerate(prod):
            diff[i] -= c
        assert all(c % pk == 0 for c in diff)
        e = [c // pk % p for c in diff]
        target = pk * p
        for i in range(r):
            fi_mod_p = [c % p for c in cur[i]]
            di = _pdivmod(_pmul(e, sis[i], p), fi_mod_p, p)[1]
            for j, c in enumerate(di):
                cur[i][j] = (cur[i][j] + pk * c) % target
        pk = target
    return [IntPolynomial(g) for g in cur], pk


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def factor_over_Z(f: IntPolynomial, degree_cap: int | None = None):
    """(content, [(irreducible primitive factor, multiplicity)]).

    content carries the sign; the product of content and factor powers
    reproduces f exactly. Raises DegreeCapExceeded past the cap.
    """
    cap = DEGREE_CAP if degree_cap is None else degree_cap
    if f.is_zero:
        return 0, []
    if f.degree > cap:
        raise DegreeCapExceeded(f"degree {f.degree} > cap {cap}")
    content, g = f.primitive()
    if g.degree <= 0:
        return content, []
    out = []
    for sqf, mult in _yun_squarefree(g):
        for irr in _factor_squarefree(sqf):
            out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return content, out


def _factor_squarefree(g: IntPolynomial):
    if g.degree == 1:
        return [g]
    # choose the prime with the fewest modular factors among candidates
    best = None
    p = 2
    tried = 0
    while tried < 5:
        if g.lc % p and len(_pgcd(list(g.coeffs), _pderiv(list(g.coeffs), p), p)) == 1:
            unit, facs = factor_mod_p(g, p)
            if len(facs) == 1:
                return [g]
            if best is None or len(facs) < len(best[1]):
                best = (p, [fc for fc, _ in facs])
            tried += 1
        p = _next_prime_for_factor(p)
    p, modular = best
    bound = _mignotte_bound(g)
    lifted, pk = _hensel_lift_multi(g, modular, p, bound)
    return _recombine(g, lifted, pk)


def _next_prime_for_factor(p):
    from .numth import next_prime
    return next_prime(p)


def _recombine(g, lifted, pk):
    """Search factor subsets of the lifted modular factorization."""
    import itertools

    factors = []
    remaining = list(range(len(lifted)))
    current = g
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for combo in itertools.combinations(remaining, size):
            prod = [current.lc % pk]
            for i in combo:
                prod = _pmulz_mod(prod, list(lifted[i].coeffs), pk)
            cand = IntPolynomial([_sym(c, pk) for c in prod]).primitive()[1]
            if cand.degree >= 1 and cand.divides(current):
                q = _div_exact_q(current, cand).primitive()[1]
                factors.append(cand)
                current = q
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if current.degree >= 1:
        factors.append(current.primitive()[1])
    return factors


def _pmulz_mod(a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return out


def monic_part(f: IntPolynomial, degree_cap: int | None = None) -> IntPolynomial:
    """Product of the monic irreducible factors of f, with multiplicity.

    Zero sets in any ring free over Z agree between f and its monic part,
    which is why classification may restrict to monic inputs.
    """
    if f.is_zero:
        raise PreconditionError("monic part of the zero polynomial")
    if f.is_monic:
        return f
    _, facs = factor_over_Z(f, degree_cap)
    out = IntPolynomial([1])
    for poly, mult in facs:
        if poly.is_monic:
            out = out * poly ** mult
    return out


def translates_equivalent(f: IntPolynomial, g: IntPolynomial, bound: int):
    """Witness (x_sign, k, out_sign) with g == out_sign * f(x_sign*X + k).

    Searches |k| <= bound; discriminant equality is a cheap translation
    invariant used to refute early. None means no witness in range.
    """
    if f.degree != g.degree or f.degree < 1:
        return None
    if discriminant(f) != discriminant(g):
        return None
    for s in (1, -1):
        for k in range(-bound, bound + 1):
            cand = f.compose_linear(s, k)
            if cand == g:
                return {"x_sign": s, "k": k, "out_sign": 1}
            if -cand == g:
                return {"x_sign": s, "k": k, "out_sign": -1}
    return None


def galois_parity_cubic(f: IntPolynomial) -> str:
    """'A3' when Disc(f) is a perfect square, else 'S3' (monic irreducible)."""
    d = discriminant(f)
    return "A3" if is_square(d) else "S3"


def triple_root_mod(f: IntPolynomial, m: int):
    """a in [0, m) with f = (X - a)^3 mod m, or None. For monic cubics."""
    for a in range(m):
        shifted = f.compose_linear(1, a)
        cs = shifted.coeffs
        if all(c % m == 0 for c in cs[:3]):
            return a
    return None


def multiplicity_split_mod_p(f: IntPolynomial, p: int):
    """[(root a, multiplicity)] for all roots of monic f mod p."""
    _, facs = factor_mod_p(f, p)
    out = []
    for poly, mult in facs:
        if poly.degree == 1:
            out.append(((-poly.coeffs[0]) % p, mult))
    return out
