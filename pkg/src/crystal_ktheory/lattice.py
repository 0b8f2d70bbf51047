"""The input datum: a generator of Z/m acting on Z^n, free outside the origin."""

from dataclasses import dataclass
from functools import cached_property

from sympy import divisors, factorint

from . import linalg
from .errors import NonIntegralMultiplicity, NotADivisor, NotFreeOutsideOrigin, WrongOrder


@dataclass(frozen=True)
class CyclicLattice:
    """Z^n with the action of a fixed generator t of G = Z/m.

    The group Γ = Z^n ⋊ Z/m is determined by this pair; build instances
    through :func:`validate` or :func:`cyclotomic_lattice`.
    """

    m: int
    action: tuple

    @property
    def n(self):
        return len(self.action)

    @cached_property
    def divisors(self):
        return tuple(divisors(self.m))

    @cached_property
    def powers(self):
        """T^0, ..., T^(m-1)."""
        out = [linalg.identity(self.n)]
        for _ in range(1, self.m):
            out.append(linalg.matmul(out[-1], self.action))
        return tuple(out)

    def to_json(self):
        return {"m": self.m, "matrix": [list(r) for r in self.action]}


@dataclass(frozen=True)
class SylowData:
    factorization: tuple  # ((p, r), ...) ascending in p
    k: int
    k_per_prime: tuple

    @property
    def primes(self):
        return tuple(p for p, _ in self.factorization)


def validate(m, T) -> CyclicLattice:
    """Check that T has exact order m and that no T^j (0 < j < m) fixes a
    nonzero vector."""
    T = linalg.as_matrix(T)
    n = len(T)
    if m < 1:
        raise ValueError("group order must be positive")
    if any(len(r) != n for r in T):
        raise ValueError("action matrix must be square")
    eye = linalg.identity(n)
    power = eye
    powers = [eye]
    for j in range(1, m):
        power = linalg.matmul(power, T)
        if power == eye:
            raise WrongOrder(j)
        powers.append(power)
    if linalg.matmul(power, T) != eye:
        raise WrongOrder(m)
    for j in range(1, m):
        if linalg.determinant(linalg.matsub(powers[j], eye)) == 0:
            raise NotFreeOutsideOrigin(j)
    return CyclicLattice(m, T)


def cyclotomic_polynomial(m):
    """Integer coefficients of Φ_m, constant term first."""
    # x^m - 1 divided by Φ_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, x in enumerate(den):
            num[i + j] -= c * x
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def companion_matrix(coeffs):
    """Companion matrix of the monic polynomial with the given coefficients
    (constant term first): ones on the subdiagonal, -coefficients in the
    last column."""
    deg = len(coeffs) - 1
    rows = [[0] * deg for _ in range(deg)]
    for i in range(1, deg):
        rows[i][i - 1] = 1
    for i in range(deg):
        rows[i][deg - 1] = -coeffs[i]
    return linalg.as_matrix(rows)


def cyclotomic_lattice(m, k) -> CyclicLattice:
    """Z[ζ_m]^k: k diagonal copies of the companion matrix of Φ_m."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    block = companion_matrix(cyclotomic_polynomial(m))
    return validate(m, linalg.block_diagonal([block] * k))


def sylow_data(L: CyclicLattice) -> SylowData:
    fact = tuple(sorted(factorint(L.m).items()))
    if not fact:
        return SylowData((), L.n, ())
    phi = 1
    for p, r in fact:
        phi *= (p - 1) * p ** (r - 1)
    if L.n % phi:
        raise NonIntegralMultiplicity(f"n = {L.n} is not a multiple of φ({L.m}) = {phi}")
    per_prime = []
    for p, r in fact:
        local = (p - 1) * p ** (r - 1)
        per_prime.append(L.n // local)
    return SylowData(fact, L.n // phi, tuple(per_prime))


def subgroup_generator(L: CyclicLattice, d):
    """Action of t^(m/d), the canonical generator of the subgroup of order d."""
    if d < 1 or L.m % d:
        raise NotADivisor(d, L.m)
    return L.powers[L.m // d] if d > 1 else linalg.identity(L.n)
