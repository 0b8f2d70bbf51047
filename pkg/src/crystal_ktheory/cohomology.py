"""Cohomology of cyclic subgroups with lattice coefficients.

Two objects live here: the finite G-set H¹(C; L) = cok(t^k - 1), which drives
the subgroup census, and the Tate groups of C acting on exterior powers of L,
which fill the cohomology tables.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, prod

import numpy as np
from sympy import factorint

from . import _kernels, linalg
from .burnside import BurnsideElement, MarkVector, from_marks
from .errors import CrossCheckMismatch, DimensionOverflow, NotADivisor
from .lattice import CyclicLattice, subgroup_generator

DEFAULT_ENUMERATION_THRESHOLD = 10**6


# ---------------------------------------------------------------------------
# H¹(C; L) as a finite G-set


@dataclass(frozen=True)
class FiniteAbelianGroupWithAction:
    """Z/d_1 ⊕ ... ⊕ Z/d_s with an automorphism u.

    Row i of ``action`` is reduced modulo d_i; applying u to a vector x gives
    (u x)_i mod d_i.
    """

    invariant_factors: tuple
    action: tuple
    order_of_action: int

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def rank(self):
        return len(self.invariant_factors)

    def apply(self, x):
        return tuple(
            sum(a * b for a, b in zip(row, x)) % d for row, d in zip(self.action, self.invariant_factors)
        )

    def power(self, e):
        """Matrix of u^e, rows reduced modulo their factor."""
        s = self.rank
        result = tuple(tuple(int(i == j) % self.invariant_factors[i] for j in range(s)) for i in range(s))
        base = self.action
        while e:
            if e & 1:
                result = _reduce_rows(linalg.matmul(result, base), self.invariant_factors)
            e >>= 1
            if e:
                base = _reduce_rows(linalg.matmul(base, base), self.invariant_factors)
        return result


def _reduce_rows(a, factors):
    return tuple(tuple(x % d for x in row) for row, d in zip(a, factors))


def _action_order(action, factors, bound):
    s = len(factors)
    eye = tuple(tuple(int(i == j) % factors[i] for j in range(s)) for i in range(s))
    power = eye
    for e in range(1, bound + 1):
        power = _reduce_rows(linalg.matmul(power, action), factors)
        if power == eye:
            return e
    raise ArithmeticError("induced action does not have finite order dividing the group order")


def cokernel_with_action(a, T, bound):
    """cok(a) together with the automorphism induced by T, which must
    commute with a."""
    U, Ui, S, _, _ = linalg.smith_with_inverses(a)
    diag = [S[i][i] for i in range(len(S))]
    if any(d == 0 for d in diag):
        raise ValueError("cokernel is infinite")
    keep = [i for i, d in enumerate(diag) if d > 1]
    factors = tuple(diag[i] for i in keep)
    conj = linalg.matmul(linalg.matmul(U, T), Ui)
    action = tuple(tuple(conj[i][j] % diag[i] for j in keep) for i in keep)
    order = _action_order(action, factors, bound) if factors else 1
    return FiniteAbelianGroupWithAction(factors, action, order)


def h1_as_gset(L: CyclicLattice, d: int) -> FiniteAbelianGroupWithAction:
    """H¹(G_d; L) ≅ cok(T^{m/d} - I) with the action of the generator t."""
    if d < 2 or L.m % d:
        raise NotADivisor(d, L.m)
    gen = subgroup_generator(L, d)
    return cokernel_with_action(linalg.matsub(gen, linalg.identity(L.n)), L.action, L.m)


def fixed_point_count(A: FiniteAbelianGroupWithAction, e: int) -> int:
    """|ker(u^e - 1)|, read off the Smith form of [u^e - 1 | diag(d_i)]."""
    s = A.rank
    if s == 0:
        return 1
    ue = A.power(e)
    block = [
        [ue[i][j] - (1 if i == j else 0) for j in range(s)] + [A.invariant_factors[i] if i == j else 0 for j in range(s)]
        for i in range(s)
    ]
    return prod(linalg.invariant_factors(block))


def orbit_count_burnside(A: FiniteAbelianGroupWithAction) -> int:
    o = A.order_of_action
    total = sum(fixed_point_count(A, e) for e in range(o))
    if total % o:
        raise ArithmeticError("orbit count is not an integer")
    return total // o


def _permutation(A: FiniteAbelianGroupWithAction):
    """u as a permutation of the elements, indexed in mixed radix."""
    factors = np.array(A.invariant_factors, dtype=np.int64)
    size = int(np.prod(factors))
    idx = np.arange(size, dtype=np.int64)
    coords = np.empty((A.rank, size), dtype=np.int64)
    rest = idx.copy()
    for i in range(A.rank - 1, -1, -1):
        coords[i] = rest % factors[i]
        rest //= factors[i]
    u = np.array(A.action, dtype=np.int64)
    image = np.mod(u @ coords, factors[:, None])
    out = np.zeros(size, dtype=np.int64)
    for i in range(A.rank):
        out = out * factors[i] + image[i]
    return out


def orbit_count_enumeration(A: FiniteAbelianGroupWithAction, backend=None) -> int:
    if A.rank == 0:
        return 1
    return _kernels.count_cycles(_permutation(A), backend=backend)


def orbit_count(A: FiniteAbelianGroupWithAction, enumeration_threshold=DEFAULT_ENUMERATION_THRESHOLD) -> int:
    """Orbits of ⟨u⟩ by Burnside's lemma, cross-checked by enumerating the
    group when it is small enough."""
    counted = orbit_count_burnside(A)
    if A.order <= enumeration_threshold:
        listed = orbit_count_enumeration(A)
        if listed != counted:
            raise CrossCheckMismatch("orbit count", counted, listed)
    return counted


def burnside_class_of_h1(L: CyclicLattice, d: int, A=None) -> BurnsideElement:
    """[H¹(G_d; L)] in A(G) from its marks: G_e is generated by t^{m/e}."""
    A = A if A is not None else h1_as_gset(L, d)
    marks = {e: fixed_point_count(A, L.m // e) for e in L.divisors}
    return from_marks(MarkVector(L.m, marks))


def enumerate_fixed_points(A: FiniteAbelianGroupWithAction, e: int) -> int:
    """Literal count of u^e-fixed elements; test oracle for small groups."""
    ue = A.power(e)
    B = FiniteAbelianGroupWithAction(A.invariant_factors, ue, 1)
    return sum(1 for x in product(*(range(d) for d in A.invariant_factors)) if B.apply(x) == x)


# ---------------------------------------------------------------------------
# Tate cohomology of C = G_d with coefficients in Λ^l L


@dataclass(frozen=True)
class TateGroup:
    parity: str
    invariant_factors: tuple

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def is_trivial(self):
        return not self.invariant_factors


PARITIES = ("even", "odd")


def normalize_factors(factors):
    """Rewrite a direct sum of cyclic groups as a single divisibility chain."""
    powers = {}
    for f in factors:
        for p, e in factorint(f).items():
            powers.setdefault(p, []).append(p**e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for p, v in powers.items():
        v.sort(reverse=True)
        for i, q in enumerate(v):
            chain[length - 1 - i] *= q
    return tuple(chain)


@lru_cache(maxsize=64)
def _exterior_action(action, l, cap):
    return linalg.exterior_power(action, l, cap)


def fixed_rank(L: CyclicLattice, d: int, l: int) -> int:
    """rank of (Λ^l L)^{G_d} by the character formula."""
    step = L.m // d
    total = sum(linalg.elementary_symmetric(L.powers[(j * step) % L.m])[l] for j in range(d))
    r = Fraction(total, d)
    if r.denominator != 1:
        raise ArithmeticError("non-integral fixed rank")
    return int(r)


def _tate_matrices_exact(L, d, l, cap):
    sigma = linalg.matpow(_exterior_action(L.action, l, cap), L.m // d)
    size = len(sigma)
    eye = linalg.identity(size)
    norm = linalg.zeros(size, size)
    power = eye
    for _ in range(d):
        norm = linalg.matadd(norm, power)
        power = linalg.matmul(power, sigma)
    return linalg.matsub(sigma, eye), norm


def _kernel_mod_image(kernel_of, image_of):
    """Invariant factors of ker(kernel_of) / im(image_of); the quotient must
    be finite."""
    U, _, S, V, Vi = linalg.smith_with_inverses(kernel_of)
    n = len(V)
    r = sum(1 for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i])
    if r == n:
        return ()
    # coordinates of each image generator in the kernel basis V[:, r:]
    coords = linalg.matmul(Vi, image_of)
    if any(any(row) for row in coords[:r]):
        raise ArithmeticError("image is not contained in the kernel")
    sub = coords[r:]
    factors = linalg.invariant_factors(sub)
    if len(factors) < len(sub) or any(f == 0 for f in factors):
        raise ArithmeticError("kernel modulo image is infinite")
    return tuple(f for f in factors if f > 1)


def tate_exact(L, d, l, parity, cap=linalg.DEFAULT_EXTERIOR_CAP):
    """Literal ker/im computation over the integers."""
    delta, norm = _tate_matrices_exact(L, d, l, cap)
    if parity == "even":
        return _kernel_mod_image(delta, norm)
    return _kernel_mod_image(norm, delta)


def tate_local(L, d, l, parity, cap=linalg.DEFAULT_EXTERIOR_CAP, backend=None):
    """Torsion of cok(N) (even) or cok(σ - I) (odd), one prime at a time.

    The kernel of σ - I (resp. N) is the saturation of im N (resp.
    im(σ - I)), so the Tate group is the torsion of that cokernel.  It is
    killed by d, hence its p-part is visible modulo p^{v_p(d)+1}: Smith
    entries that vanish there must be genuine zeros, and their number is
    certified against the corank predicted by the fixed-point rank.
    """
    if d == 1:
        return ()
    ext = _exterior_action(L.action, l, cap)
    size = len(ext)
    fixed = fixed_rank(L, d, l)
    corank = fixed if parity == "odd" else size - fixed
    factors = []
    for p, v in sorted(factorint(d).items()):
        e = v + 1
        q = p**e
        base = np.mod(np.array(ext, dtype=np.int64), q)
        sigma = _kernels.matpow_mod(base, L.m // d, q)
        if parity == "odd":
            mat = np.mod(sigma - np.eye(size, dtype=np.int64), q)
        else:
            mat = np.eye(size, dtype=np.int64) % q
            power = mat.copy()
            for _ in range(d - 1):
                power = _kernels.matmul_mod(power, sigma, q)
                mat = np.mod(mat + power, q)
        vals = _kernels.local_smith_valuations(mat, p, e, backend=backend)
        zeros = int(np.count_nonzero(vals == e))
        if zeros != corank:
            raise CrossCheckMismatch(f"corank of Tate presentation at p={p}", corank, zeros)
        factors.extend(p ** int(x) for x in vals if 0 < x < e)
    return normalize_factors(factors)


EXACT_SIZE_LIMIT = 70

# Tate presentations are dense square matrices of side C(n, l); beyond this
# side length the memory, not the exterior-power cap, is the binding limit.
DENSE_TATE_LIMIT = 6000


def tate_size_limit(cap):
    return min(cap, DENSE_TATE_LIMIT)


def tate(L: CyclicLattice, d: int, l: int, parity: str, method="auto", cap=linalg.DEFAULT_EXTERIOR_CAP) -> TateGroup:
    """Ĥ^parity(G_d; Λ^l L) as a list of invariant factors."""
    if d < 1 or L.m % d:
        raise NotADivisor(d, L.m)
    if parity not in PARITIES:
        raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")
    if not 0 <= l <= L.n:
        raise ValueError(f"exterior degree {l} outside 0..{L.n}")
    size = comb(L.n, l)
    if size > tate_size_limit(cap):
        raise DimensionOverflow(size, tate_size_limit(cap))
    if method == "auto":
        method = "exact" if size <= EXACT_SIZE_LIMIT else "local"
    if method == "exact":
        factors = normalize_factors(tate_exact(L, d, l, parity, cap))
    elif method == "local":
        factors = tate_local(L, d, l, parity, cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    return TateGroup(parity, factors)


def norm_matrix(L: CyclicLattice, d: int):
    """N = Σ_{j<d} σ^j for σ = T^{m/d} acting on L itself."""
    return _tate_matrices_exact(L, d, 1, linalg.DEFAULT_EXTERIOR_CAP)[1]
