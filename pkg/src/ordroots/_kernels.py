"""Hot numeric kernels: numba @njit with a pure-numpy fallback.

Every kernel works on int64 arrays with an explicit modulus small enough
(< 2**31) that no intermediate product overflows int64. Arbitrary-precision
work never comes through here; callers split large moduli across several
word-sized prime powers and CRT the results back together.

Set ORDROOTS_NO_NUMBA=1 to force the fallback path (used by the benchmark
and as a safety hatch on platforms where numba is unavailable).
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("ORDROOTS_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

MAX_MODULUS = 1 << 31  # guarantees x*y and v*t stay below 2**63


def _mul_mod_py(table, x, y, m, out):
    n = x.shape[0]
    for k in range(n):
        acc = 0
        for i in range(n):
            xi = x[i]
            if xi == 0:
                continue
            for j in range(n):
                t = table[i, j, k]
                if t == 0:
                    continue
                acc = (acc + xi * y[j] % m * t) % m
        out[k] = acc
    return out


def _frobenius_cols_py(table, m, p, out):
    n = table.shape[0]
    tmp = np.zeros(n, dtype=np.int64)
    for col in range(n):
        z = np.zeros(n, dtype=np.int64)
        z[col] = 1
        acc = None
        e = p
        while e > 0:
            if e & 1:
                if acc is None:
                    acc = z.copy()
                else:
                    _mul_mod_py(table, acc, z, m, tmp)
                    acc[:] = tmp
            e >>= 1
            if e:
                _mul_mod_py(table, z, z, m, tmp)
                z[:] = tmp
        out[:, col] = acc
    return out


def _mordell_scan_py(a, xlo, xhi):
    xs, ys = [], []
    for x in range(xlo, xhi + 1):
        v = x * x * x + a
        if v < 0:
            continue
        s = int(np.sqrt(float(v)))
        for c in (s - 1, s, s + 1):
            if c >= 0 and c * c == v:
                xs.append(x)
                ys.append(c)
                break
    return np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64)


def _eval_poly_batch_py(table, coeffs, unit, pts, m, out):
    b, n = pts.shape
    deg = coeffs.shape[0] - 1
    tmp = np.zeros(n, dtype=np.int64)
    for r in range(b):
        x = pts[r] % m
        acc = coeffs[deg] * (unit % m) % m
        for d in range(deg - 1, -1, -1):
            _mul_mod_py(table, acc, x, m, tmp)
            acc = (tmp + coeffs[d] * unit) % m
        out[r] = acc
    return out


def _closure_py(dims, gens, cap):
    nel = 1
    for d in dims:
        nel *= d
    if nel > cap:
        return None
    seen = np.zeros(nel, dtype=np.bool_)
    seen[0] = True
    stack = [0]
    r = len(dims)
    while stack:
        cur = stack.pop()
        # decode
        digs = np.zeros(r, dtype=np.int64)
        c = cur
        for i in range(r - 1, -1, -1):
            digs[i] = c % dims[i]
            c //= dims[i]
        for g in range(gens.shape[0]):
            code = 0
            for i in range(r):
                code = code * dims[i] + (digs[i] + gens[g, i]) % dims[i]
            if not seen[code]:
                seen[code] = True
                stack.append(code)
    return np.nonzero(seen)[0]


if USE_NUMBA:
    _mul_mod = njit(cache=True)(_mul_mod_py)

    @njit(cache=True)
    def _frobenius_cols(table, m, p, out):
        n = table.shape[0]
        tmp = np.zeros(n, dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        z = np.zeros(n, dtype=np.int64)
        for col in range(n):
            for i in range(n):
                z[i] = 0
                acc[i] = 0
            z[col] = 1
            started = False
            e = p
            while e > 0:
                if e & 1:
                    if not started:
                        for i in range(n):
                            acc[i] = z[i]
                        started = True
                    else:
                        _mul_mod(table, acc, z, m, tmp)
                        for i in range(n):
                            acc[i] = tmp[i]
                e >>= 1
                if e:
                    _mul_mod(table, z, z, m, tmp)
                    for i in range(n):
                        z[i] = tmp[i]
            for i in range(n):
                out[i, col] = acc[i]
        return out

    @njit(cache=True)
    def _mordell_scan(a, xlo, xhi):
        cnt = 0
        xs = np.empty(64, dtype=np.int64)
        ys = np.empty(64, dtype=np.int64)
        for x in range(xlo, xhi + 1):
            v = x * x * x + a
            if v < 0:
                continue
            s = np.int64(np.sqrt(np.float64(v)))
            for c in (s - 1, s, s + 1):
                if c >= 0 and c * c == v:
                    if cnt >= xs.shape[0]:
                        nxs = np.empty(xs.shape[0] * 2, dtype=np.int64)
                        nys = np.empty(xs.shape[0] * 2, dtype=np.int64)
                        nxs[:cnt] = xs[:cnt]
                        nys[:cnt] = ys[:cnt]
                        xs, ys = nxs, nys
                    xs[cnt] = x
                    ys[cnt] = c
                    cnt += 1
                    break
        return xs[:cnt].copy(), ys[:cnt].copy()

    @njit(cache=True)
    def _eval_poly_batch(table, coeffs, unit, pts, m, out):
        b, n = pts.shape
        deg = coeffs.shape[0] - 1
        tmp = np.zeros(n, dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        x = np.zeros(n, dtype=np.int64)
        for r in range(b):
            for i in range(n):
                x[i] = pts[r, i] % m
                acc[i] = coeffs[deg] * (unit[i] % m) % m
            for d in range(deg - 1, -1, -1):
                _mul_mod(table, acc, x, m, tmp)
                for i in range(n):
                    acc[i] = (tmp[i] + coeffs[d] * unit[i]) % m
            for i in range(n):
                out[r, i] = acc[i]
        return out

    @njit(cache=True)
    def _closure_nb(dims, gens, cap):
        nel = 1
        for d in dims:
            nel *= d
        if nel > cap:
            return np.empty(0, dtype=np.int64), False
        seen = np.zeros(nel, dtype=np.bool_)
        seen[0] = True
        stack = np.empty(nel, dtype=np.int64)
        stack[0] = 0
        top = 1
        r = dims.shape[0]
        digs = np.zeros(r, dtype=np.int64)
        while top > 0:
            top -= 1
            cur = stack[top]
            c = cur
            for i in range(r - 1, -1, -1):
                digs[i] = c % dims[i]
                c //= dims[i]
            for g in range(gens.shape[0]):
                code = 0
                for i in range(r):
                    code = code * dims[i] + (digs[i] + gens[g, i]) % dims[i]
                if not seen[code]:
                    seen[code] = True
                    stack[top] = code
                    top += 1
        out = np.nonzero(seen)[0]
        return out, True
else:
    _mul_mod = _mul_mod_py
    _frobenius_cols = _frobenius_cols_py
    _mordell_scan = _mordell_scan_py
    _eval_poly_batch = _eval_poly_batch_py


def mul_mod(table, x, y, m):
    """(x * y) mod m in the algebra described by int64 ``table``; m < 2**31."""
    assert 1 < m < MAX_MODULUS
    out = np.zeros(x.shape[0], dtype=np.int64)
    _mul_mod(table, x % m, y % m, m, out)
    return out


def frobenius_matrix(table, m, p):
    """Columns e_j**p mod m; linear over Z/p when m == p is prime."""
    n = table.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    _frobenius_cols(table, m, p, out)
    return out


def mordell_scan(a, xlo, xhi):
    """Integral points (x, y>=0) with y*y == x**3 + a, xlo <= x <= xhi.

    Values must satisfy |x**3 + a| < 2**52 so the float sqrt seed is exact
    enough for the +-1 correction; callers keep xhi <= ~150000.
    """
    return _mordell_scan(np.int64(a), np.int64(xlo), np.int64(xhi))


def eval_poly_batch(table, coeffs, unit, pts, m):
    """Evaluate one integer polynomial at many ring points, all mod m."""
    out = np.zeros(pts.shape, dtype=np.int64)
    _eval_poly_batch(table, coeffs % m, unit % m, pts, m, out)
    return out


def closure(dims, gens, cap):
    """All sums of generators inside the group prod Z/dims[i]; None past cap."""
    dims = np.asarray(dims, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, dims.shape[0])
    if USE_NUMBA:
        out, ok = _closure_nb(dims, gens % dims, cap)
        return out if ok else None
    return _closure_py(dims, gens % dims, cap)
