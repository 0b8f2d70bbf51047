"""Hot numeric kernels with a numba path and a pure-numpy path.

Both paths compute identical integers; the numba one is used unless
``CRYSTAL_KTHEORY_DISABLE_JIT=1`` is set or numba cannot be imported.
Every kernel works on int64 residues below a small modulus, so the exact
results never depend on floating point.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLE_ENV = "CRYSTAL_KTHEORY_DISABLE_JIT"

# residues must multiply without overflowing int64
MAX_MODULUS = 1 << 30


def jit_enabled():
    if numba is None:
        return False
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")


def _resolve(backend):
    if backend is None:
        return "numba" if jit_enabled() else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    return backend


# ---------------------------------------------------------------------------
# local Smith form over Z/p^e


def _local_smith_numpy(a, p, e):
    q = p**e
    a = np.mod(a, q)
    rows, cols = a.shape
    size = min(rows, cols)
    vals = np.full(size, e, dtype=np.int64)
    powers = [p**v for v in range(e + 1)]
    for t in range(size):
        sub = a[t:, t:]
        found = None
        for v in range(e):
            hit = np.mod(sub, powers[v + 1]) != 0
            if hit.any():
                flat = int(np.argmax(hit))
                found = (v, t + flat // sub.shape[1], t + flat % sub.shape[1])
                break
        if found is None:
            break
        v, bi, bj = found
        if bi != t:
            a[[t, bi], :] = a[[bi, t], :]
        if bj != t:
            a[:, [t, bj]] = a[:, [bj, t]]
        unit = int(a[t, t]) // powers[v]
        inv = pow(unit, -1, q)
        col = a[t + 1:, t]
        nz = np.nonzero(col)[0]
        if nz.size:
            f = np.mod((col[nz] // powers[v]) * inv, q)
            rows_idx = nz + t + 1
            a[rows_idx, t:] = np.mod(a[rows_idx, t:] - np.outer(f, a[t, t:]), q)
        vals[t] = v
    return vals


if numba is not None:

    @numba.njit(cache=True)
    def _modinv(x, q):
        r0, r1 = q, x % q
        s0, s1 = 0, 1
        while r1 != 0:
            k = r0 // r1
            r0, r1 = r1, r0 - k * r1
            s0, s1 = s1, s0 - k * s1
        return s0 % q

    @numba.njit(cache=True)
    def _local_smith_numba(a, p, e):
        q = 1
        for _ in range(e):
            q *= p
        rows, cols = a.shape
        size = min(rows, cols)
        for i in range(rows):
            for j in range(cols):
                a[i, j] = a[i, j] % q
        vals = np.full(size, e, dtype=np.int64)
        for t in range(size):
            best = e
            bi = -1
            bj = -1
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i, j]
                    if x != 0:
                        v = 0
                        while x % p == 0:
                            x //= p
                            v += 1
                        if v < best:
                            best = v
                            bi = i
                            bj = j
                            if v == 0:
                                break
                if best == 0:
                    break
            if bi < 0:
                break
            if bi != t:
                for j in range(cols):
                    tmp = a[t, j]
                    a[t, j] = a[bi, j]
                    a[bi, j] = tmp
            if bj != t:
                for i in range(rows):
                    tmp = a[i, t]
                    a[i, t] = a[i, bj]
                    a[i, bj] = tmp
            pv = 1
            for _ in range(best):
                pv *= p
            inv = _modinv(a[t, t] // pv, q)
            for i in range(t + 1, rows):
                x = a[i, t]
                if x != 0:
                    f = ((x // pv) * inv) % q
                    for j in range(t, cols):
                        a[i, j] = (a[i, j] - f * a[t, j]) % q
            vals[t] = best
        return vals

    @numba.njit(cache=True)
    def _count_cycles_numba(perm):
        n = perm.shape[0]
        seen = np.zeros(n, dtype=np.bool_)
        cycles = 0
        for i in range(n):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return cycles


def local_smith_valuations(a, p, e, backend=None):
    """p-adic valuations of the Smith diagonal of ``a`` over Z/p^e.

    Returns ``min(rows, cols)`` values in ascending order; the value ``e``
    stands for a diagonal entry that vanishes modulo p^e (zero or highly
    divisible over the integers).
    """
    q = p**e
    if q >= MAX_MODULUS:
        raise ValueError(f"modulus {p}^{e} too large for int64 residues")
    a = np.array(a, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    if 0 in a.shape:
        return np.zeros(0, dtype=np.int64)
    if _resolve(backend) == "numba":
        return _local_smith_numba(np.ascontiguousarray(a), p, e)
    return _local_smith_numpy(a, p, e)


# ---------------------------------------------------------------------------
# cycle counting for orbit enumeration


def _count_cycles_numpy(perm):
    n = perm.shape[0]
    label = np.arange(n, dtype=np.int64)
    jump = perm.astype(np.int64, copy=True)
    steps = max(1, int(n).bit_length())
    for _ in range(steps + 1):
        label = np.minimum(label, label[jump])
        jump = jump[jump]
    return int(np.count_nonzero(label == np.arange(n)))


def count_cycles(perm, backend=None):
    """Number of cycles of a permutation given as an index array."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.size == 0:
        return 0
    if _resolve(backend) == "numba":
        return int(_count_cycles_numba(np.ascontiguousarray(perm)))
    return _count_cycles_numpy(perm)


# ---------------------------------------------------------------------------
# modular matrix products (BLAS in float64 when the sums stay exact)


def matmul_mod(a, b, q):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[1]
    if inner * (q - 1) ** 2 < 2**52:
        prod = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.mod(prod.astype(np.int64), q)
    if inner * (q - 1) ** 2 < 2**62:
        return np.mod(a @ b, q)
    prod = a.astype(object) @ b.astype(object)
    return np.mod(prod, q).astype(np.int64)


def matpow_mod(a, k, q):
    a = np.mod(np.asarray(a, dtype=np.int64), q)
    result = np.mod(np.eye(a.shape[0], dtype=np.int64), q)
    while k:
        if k & 1:
            result = matmul_mod(result, a, q)
        k >>= 1
        if k:
            a = matmul_mod(a, a, q)
    return result
