"""Modular arithmetic kernels on int64 arrays.

Every kernel exists twice: a numba ``@njit`` version and a vectorised numpy
version.  The numba path is used when numba imports and the environment
variable ``QFALG_DISABLE_NUMBA`` is unset (or ``0``).  Moduli must satisfy
``p < 2**31`` so that a product of two residues fits in an int64.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is declared, but stay importable
    numba = None

_flag = os.environ.get("QFALG_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = numba is not None and _flag in ("", "0", "false", "no")

MAX_MODULUS = 2**31


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _powmod_vec(base, exp, p):
    base = base % p
    result = np.ones_like(base)
    while exp:
        if exp & 1:
            result = result * base % p
        base = base * base % p
        exp >>= 1
    return result


def rref_modp_numpy(a, p):
    """Reduced row echelon form of ``a`` mod ``p``.

    Returns ``(r, rank, pivots)``; ``a`` is not modified.
    """
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            a[idx] = (a[idx] - np.outer(col[idx], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, r, np.array(pivots, dtype=np.int64)


def matmul_modp_numpy(a, b, p):
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        col = a[:, k]
        if col.any():
            out = (out + np.outer(col, b[k]) % p) % p
    return out


def batch_det_modp_numpy(mats, p):
    """Determinants mod ``p`` of a stack of square matrices, shape (N, m, m)."""
    m = np.array(mats, dtype=np.int64) % p
    count, size = m.shape[0], m.shape[1]
    det = np.ones(count, dtype=np.int64)
    idx = np.arange(count)
    for c in range(size):
        sub = m[:, c:, c] != 0
        has = sub.any(axis=1)
        det[~has] = 0
        k = c + np.argmax(sub, axis=1)
        swap = k != c
        if swap.any():
            rows_c = m[idx, c].copy()
            rows_k = m[idx, k].copy()
            m[idx, c] = rows_k
            m[idx, k] = rows_c
            det = np.where(swap, (p - det) % p, det)
        piv = m[:, c, c]
        det = det * piv % p
        if c + 1 < size:
            inv = _powmod_vec(piv, p - 2, p)
            f = m[:, c + 1:, c] * inv[:, None] % p
            m[:, c + 1:, :] = (m[:, c + 1:, :] - f[:, :, None] * m[:, c, None, :] % p) % p
    return det


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True)
    def _powmod_jit(b, e, p):
        b %= p
        r = 1
        while e > 0:
            if e & 1:
                r = r * b % p
            b = b * b % p
            e >>= 1
        return r

    @numba.njit(cache=True)
    def _rref_modp_jit(a, p):
        rows, cols = a.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = r
            while k < rows and a[k, c] == 0:
                k += 1
            if k == rows:
                continue
            if k != r:
                for j in range(c, cols):
                    t = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = t
            inv = _powmod_jit(a[r, c], p - 2, p)
            for j in range(c, cols):
                a[r, j] = a[r, j] * inv % p
            for i in range(rows):
                if i != r:
                    f = a[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            v = a[r, j]
                            if v != 0:
                                a[i, j] = (a[i, j] - f * v) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r]

    @numba.njit(cache=True)
    def _matmul_modp_jit(a, b, p):
        n, kk = a.shape
        m = b.shape[1]
        out = np.zeros((n, m), dtype=np.int64)
        for i in range(n):
            for k in range(kk):
                x = a[i, k]
                if x != 0:
                    for j in range(m):
                        out[i, j] = (out[i, j] + x * b[k, j]) % p
        return out

    @numba.njit(cache=True)
    def _det_modp_one(m, p):
        size = m.shape[0]
        det = 1
        for c in range(size):
            k = c
            while k < size and m[k, c] == 0:
                k += 1
            if k == size:
                return 0
            if k != c:
                for j in range(size):
                    t = m[c, j]
                    m[c, j] = m[k, j]
                    m[k, j] = t
                det = (p - det) % p
            piv = m[c, c]
            det = det * piv % p
            inv = _powmod_jit(piv, p - 2, p)
            for i in range(c + 1, size):
                f = m[i, c] * inv % p
                if f != 0:
                    for j in range(c, size):
                        m[i, j] = (m[i, j] - f * m[c, j]) % p
        return det

    @numba.njit(cache=True)
    def _batch_det_modp_jit(mats, p):
        count = mats.shape[0]
        out = np.empty(count, dtype=np.int64)
        for t in range(count):
            out[t] = _det_modp_one(mats[t].copy(), p)
        return out


def rref_modp_numba(a, p):
    a = np.array(a, dtype=np.int64) % p
    rank, pivots = _rref_modp_jit(a, np.int64(p))
    return a, int(rank), pivots


def matmul_modp_numba(a, b, p):
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    b = np.ascontiguousarray(np.asarray(b, dtype=np.int64) % p)
    return _matmul_modp_jit(a, b, np.int64(p))


def batch_det_modp_numba(mats, p):
    mats = np.ascontiguousarray(np.asarray(mats, dtype=np.int64) % p)
    return _batch_det_modp_jit(mats, np.int64(p))


if USE_NUMBA:
    rref_modp = rref_modp_numba
    matmul_modp = matmul_modp_numba
    batch_det_modp = batch_det_modp_numba
else:
    rref_modp = rref_modp_numpy
    matmul_modp = matmul_modp_numpy
    batch_det_modp = batch_det_modp_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
