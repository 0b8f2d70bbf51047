"""Exact integer linear algebra.

Matrices are tuples of row tuples holding Python ints, so every entry is
arbitrary precision and every value is hashable.  Nothing in this module
touches floating point.
"""

from bisect import bisect_left
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence

from .errors import DimensionOverflow

Matrix = tuple  # tuple[tuple[int, ...], ...]

DEFAULT_EXTERIOR_CAP = 200_000


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(a):
    return len(a), (len(a[0]) if a else 0)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows, cols):
    return tuple((0,) * cols for _ in range(rows))


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matadd(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def matsub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def matpow(a, k):
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def transpose(a):
    return tuple(zip(*a))


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * offset + tuple(r) + (0,) * (n - offset - len(b)))
        offset += len(b)
    return tuple(rows)


# ---------------------------------------------------------------------------
# fraction-free elimination


def _bareiss(a):
    """Fraction-free row reduction; returns (rank, signed last pivot)."""
    m = [list(r) for r in a]
    rows, cols = shape(a)
    rank = 0
    prev = 1
    sign = 1
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            sign = -sign
        p = m[rank][c]
        prow = m[rank]
        for i in range(rank + 1, rows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, cols):
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank, sign * prev


def rational_rank(a) -> int:
    """Rank over Q by Bareiss elimination."""
    if not a or not a[0]:
        return 0
    return _bareiss(a)[0]


def determinant(a) -> int:
    n = len(a)
    if n == 0:
        return 1
    rank, last = _bareiss(a)
    return last if rank == n else 0


# ---------------------------------------------------------------------------
# Smith normal form


class SmithDecomposition(NamedTuple):
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self):
        r, c = shape(self.S)
        return tuple(self.S[i][i] for i in range(min(r, c)))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def _snf(a, track):
    """Smallest-pivot Smith reduction.

    With ``track`` also returns U, U^-1, V, V^-1 (U·A·V = S).
    """
    rows, cols = shape(a)
    m = [list(r) for r in a]
    if track:
        U = [[int(i == j) for j in range(rows)] for i in range(rows)]
        Ui = [[int(i == j) for j in range(rows)] for i in range(rows)]
        V = [[int(i == j) for j in range(cols)] for i in range(cols)]
        Vi = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(dst, src, f):
        # row_dst += f * row_src
        rd, rs = m[dst], m[src]
        for j in range(cols):
            if rs[j]:
                rd[j] += f * rs[j]
        if track:
            ud, us = U[dst], U[src]
            for j in range(rows):
                if us[j]:
                    ud[j] += f * us[j]
            for r in Ui:
                if r[dst]:
                    r[src] -= f * r[dst]

    def col_op(dst, src, f):
        # col_dst += f * col_src
        for r in m:
            if r[src]:
                r[dst] += f * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += f * r[src]
            vd, vs = Vi[dst], Vi[src]
            for j in range(cols):
                if vd[j]:
                    vs[j] -= f * vd[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if track:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        if track:
            U[i] = [-x for x in U[i]]
            for r in Ui:
                r[i] = -r[i]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = m[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                x = m[i][t]
                if x:
                    row_op(i, t, -(x // p))
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                x = m[t][j]
                if x:
                    col_op(j, t, -(x // p))
                    if m[t][j]:
                        dirty = True
            if dirty:
                # a remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t, rows):
                    x = m[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, cols):
                    x = m[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, bi, bj = best
                if bi != t:
                    swap_rows(t, bi)
                if bj != t:
                    swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, 1)
        if m[t][t] < 0:
            negate_row(t)

    S = tuple(tuple(r) for r in m)
    if not track:
        return S
    freeze = lambda x: tuple(tuple(r) for r in x)  # noqa: E731
    return freeze(U), freeze(Ui), S, freeze(V), freeze(Vi)


def smith_normal_form(a) -> SmithDecomposition:
    """Unimodular U, V and diagonal S with U·A·V = S and d_i | d_{i+1}."""
    U, _, S, V, _ = _snf(as_matrix(a), track=True)
    return SmithDecomposition(U, S, V)


def smith_with_inverses(a):
    """(U, U^-1, S, V, V^-1) for callers that need to change bases."""
    return _snf(as_matrix(a), track=True)


def invariant_factors(a):
    """Smith diagonal of ``a`` (zeros included), without transforms."""
    S = _snf(as_matrix(a), track=False)
    r, c = shape(S)
    return tuple(S[i][i] for i in range(min(r, c)))


def cokernel_torsion(a):
    """Invariant factors >= 2 of the torsion subgroup of Z^rows / im(a)."""
    return tuple(d for d in invariant_factors(a) if d > 1)


# ---------------------------------------------------------------------------
# exterior powers and characteristic polynomials


def exterior_power(a, l, cap=DEFAULT_EXTERIOR_CAP) -> Matrix:
    """Matrix of Λ^l A in the lexicographic basis of l-subsets.

    Entry (S, R) is the minor det A[S, R] with both index sets ascending.
    Columns are built as wedge products of the sparse columns of A; the
    partial wedges are shared between columns with a common prefix.
    """
    a = as_matrix(a)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("exterior_power needs a square matrix")
    if not 0 <= l <= n:
        raise ValueError(f"degree {l} outside 0..{n}")
    size = comb(n, l)
    if size > cap:
        raise DimensionOverflow(size, cap)
    if l == 0:
        return ((1,),)
    subsets = list(combinations(range(n), l))
    index = {s: i for i, s in enumerate(subsets)}
    columns = [[(i, a[i][j]) for i in range(n) if a[i][j]] for j in range(n)]

    cache = {(): {(): 1}}

    def wedge(prefix):
        got = cache.get(prefix)
        if got is not None:
            return got
        head = wedge(prefix[:-1])
        out = {}
        for s, coef in head.items():
            for i, x in columns[prefix[-1]]:
                pos = bisect_left(s, i)
                if pos < len(s) and s[pos] == i:
                    continue
                sign = -1 if (len(s) - pos) % 2 else 1
                key = s[:pos] + (i,) + s[pos:]
                val = out.get(key, 0) + sign * coef * x
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        if len(prefix) < l:
            cache[prefix] = out
        return out

    rows = [[0] * size for _ in range(size)]
    for col, r in enumerate(subsets):
        for s, coef in wedge(r).items():
            rows[index[s]][col] = coef
    return tuple(tuple(r) for r in rows)


def characteristic_polynomial(a):
    """Coefficients of det(xI - A), leading coefficient first.

    Index l holds the coefficient of x^(n-l), which is (-1)^l e_l of the
    eigenvalues.  Faddeev-LeVerrier; every division is exact.
    """
    a = as_matrix(a)
    n = len(a)
    coeffs = [1]
    mk = zeros(n, n)
    for k in range(1, n + 1):
        mk = matmul(a, mk)
        c_prev = coeffs[-1]
        mk = tuple(tuple(x + (c_prev if i == j else 0) for j, x in enumerate(r)) for i, r in enumerate(mk))
        t = trace(matmul(a, mk))
        if t % k:
            raise ArithmeticError("non-exact Faddeev-LeVerrier step")
        coeffs.append(-t // k)
    return tuple(coeffs)


def elementary_symmetric(a):
    """e_l(eigenvalues of A) for l = 0..n, i.e. trace of Λ^l A."""
    return tuple(c if l % 2 == 0 else -c for l, c in enumerate(characteristic_polynomial(a)))
