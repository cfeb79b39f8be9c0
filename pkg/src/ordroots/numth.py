"""Elementary number theory: primality, factoring, perfect squares."""

from __future__ import annotations

from math import gcd, isqrt

from .errors import NeedsFactorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = []


def _sieve(limit=10**4):
    global _SMALL_PRIMES
    if _SMALL_PRIMES:
        return _SMALL_PRIMES
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i:: i] = b"\x00" * len(range(i * i, limit + 1, i))
    _SMALL_PRIMES = [i for i, f in enumerate(flags) if f]
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set is exact below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def valuation(n: int, p: int):
    """(v, n / p**v); v is None-like infinite only for n == 0 (returns (0, 0))."""
    if n == 0:
        return 0, 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _pollard_rho(n: int, seed: int) -> int:
    # Brent's cycle variant; returns a nontrivial factor or 0
    if n % 2 == 0:
        return 2
    c = 1 + seed
    x = y = 2 + seed
    d = 1
    count = 0
    while d == 1:
        x = (x * x + c) % n
        y = (y * y + c) % n
        y = (y * y + c) % n
        d = gcd(abs(x - y), n)
        count += 1
        if count > 2_000_000:
            return 0
    return 0 if d == n else d


def factorint(n: int) -> dict:
    """Prime factorization of |n| as {p: e}.

    Trial division by a fixed sieve, then Pollard rho on the cofactor.
    Raises NeedsFactorization when a composite cofactor resists rho, so a
    classifier never bases a verdict on an incomplete factorization.
    """
    n = abs(n)
    if n <= 1:
        return {}
    out = {}
    for p in _sieve():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        for seed in range(8):
            d = _pollard_rho(m, seed)
            if d:
                stack.append(d)
                stack.append(m // d)
                break
        else:
            raise NeedsFactorization(m)
    return out


def prime_factors(n: int) -> list:
    return sorted(factorint(n))


def crt_pair(r1: int, m1: int, r2: int, m2: int):
    """x mod m1*m2 with x = r1 (m1), x = r2 (m2); moduli must be coprime."""
    g, s, _ = _xgcd(m1, m2)
    assert g == 1
    x = (r1 + (r2 - r1) * s % m2 * m1) % (m1 * m2)
    return x


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0
