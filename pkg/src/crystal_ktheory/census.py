"""Counting conjugacy classes of finite subgroups of Γ = L ⋊ G, two ways.

For every nontrivial subgroup G_d ⊆ G we want |C(G_d)|, the number of
conjugacy classes of finite subgroups of Γ projecting onto G_d, and |M(G_d)|,
how many of those are maximal finite.  The brute-force route counts orbits on
H¹(G_d; L) and applies inclusion-exclusion; the closed-form route evaluates
the prime-power and general-case formulas.  ``cross_check`` insists they agree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod

from sympy import factorint

from . import burnside
from .burnside import BurnsideElement
from .cohomology import (
    DEFAULT_ENUMERATION_THRESHOLD,
    burnside_class_of_h1,
    h1_as_gset,
    orbit_count,
)
from .errors import CrossCheckMismatch, NonIntegralFormula
from .lattice import CyclicLattice, sylow_data


@dataclass(frozen=True)
class DivisorCount:
    classes: int
    maximal: int


@dataclass(frozen=True)
class SubgroupCensus:
    m: int
    per_divisor: dict = field(default_factory=dict)  # d -> DivisorCount, d > 1

    @property
    def total_maximal(self):
        return sum(c.maximal for c in self.per_divisor.values())

    @property
    def sum_order_minus_one(self):
        return sum(c.maximal * (d - 1) for d, c in self.per_divisor.items())

    @property
    def sum_reciprocal(self):
        return sum((Fraction(c.maximal, d) for d, c in self.per_divisor.items()), Fraction(0))

    @property
    def sum_alt(self):
        """Σ (|M| - 1)/|M|."""
        return sum((Fraction(c.maximal * (d - 1), d) for d, c in self.per_divisor.items()), Fraction(0))

    @property
    def sum_sq(self):
        """Σ (|M|² - 1)/|M|."""
        return sum((Fraction(c.maximal * (d * d - 1), d) for d, c in self.per_divisor.items()), Fraction(0))

    def maximal(self, d):
        return self.per_divisor[d].maximal

    def classes(self, d):
        return self.per_divisor[d].classes

    def as_pairs(self):
        return {d: (c.classes, c.maximal) for d, c in sorted(self.per_divisor.items())}

    def to_json(self):
        return {
            "per_divisor": {str(d): {"classes": c.classes, "maximal": c.maximal} for d, c in sorted(self.per_divisor.items())},
            "total_maximal": self.total_maximal,
            "sum_order_minus_one": self.sum_order_minus_one,
            "sum_reciprocal": _frac(self.sum_reciprocal),
            "sum_alt": _frac(self.sum_alt),
            "sum_sq": _frac(self.sum_sq),
        }


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _prime_divisors(x):
    return sorted(factorint(x))


def maximal_from_classes(m, classes):
    """|M(C)| = Σ_{I} (-1)^{|I|} |C(D_I)|, I running over sets of primes
    dividing [G:C] and D_I the overgroup of index ∏_{p∈I} p in D_I/C."""
    out = {}
    for d in classes:
        primes = _prime_divisors(m // d)
        total = 0
        for size in range(len(primes) + 1):
            for subset in combinations(primes, size):
                total += (-1) ** size * classes[d * prod(subset)]
        out[d] = total
    return out


def census_bruteforce(L: CyclicLattice, enumeration_threshold=DEFAULT_ENUMERATION_THRESHOLD) -> SubgroupCensus:
    if L.m == 1:
        return SubgroupCensus(1, {})
    classes = {d: orbit_count(h1_as_gset(L, d), enumeration_threshold) for d in L.divisors if d > 1}
    maximal = maximal_from_classes(L.m, classes)
    return SubgroupCensus(L.m, {d: DivisorCount(classes[d], maximal[d]) for d in sorted(classes)})


def _exact(num, den, what):
    q, r = divmod(num, den)
    if r:
        raise NonIntegralFormula(f"{what}: {num}/{den} is not an integer")
    return q


def _prime_power_part(m, d):
    """(p, c) if d = p^c for a single prime p, else None."""
    f = factorint(d)
    if len(f) != 1:
        return None
    (p, c), = f.items()
    return p, c


def h1_class_closed_form(L: CyclicLattice, d: int) -> BurnsideElement:
    """[H¹(G_d; L)] in A(G) from the printed formulas.

    When G_d is a p-group, inside the p-Sylow G[i] of order p^r with
    multiplicity k[i]:
        [G/G] + (p^k - 1) p^r / m · [G/G[i]]
              + Σ_{l=0}^{r-c-1} (p^{k p^{r-c-l} + c + l} - p^{k p^{r-c-l-1} + c + l}) / m · [G/G_{p^{c+l}}].
    Otherwise the class is [G/G].
    """
    m = L.m
    if d < 2 or m % d:
        raise ValueError(f"{d} is not a nontrivial divisor of {m}")
    pp = _prime_power_part(m, d)
    if pp is None:
        return BurnsideElement.one(m)
    p, c = pp
    sd = sylow_data(L)
    i = sd.primes.index(p)
    r = sd.factorization[i][1]
    k = sd.k_per_prime[i]
    coeffs = {m: 1}
    top = p**r
    coeffs[top] = coeffs.get(top, 0) + _exact((p**k - 1) * top, m, f"coefficient of [G/G_{top}]")
    for l in range(r - c):
        h = p ** (c + l)
        num = p ** (k * p ** (r - c - l) + c + l) - p ** (k * p ** (r - c - l - 1) + c + l)
        coeffs[h] = coeffs.get(h, 0) + _exact(num, m, f"coefficient of [G/G_{h}]")
    return BurnsideElement(m, coeffs)


def h1_class_prime_power(L: CyclicLattice, j: int) -> BurnsideElement:
    """Prime-power formula for [H¹(G_{p^j}; L)] when m = p^r:
    p^k [G/G] + Σ_{i=0}^{r-j-1} (p^{k p^{r-j-i} - r + j + i} - p^{k p^{r-j-1-i} - r + j + i}) [G/G_{p^{i+j}}]."""
    sd = sylow_data(L)
    if len(sd.factorization) != 1:
        raise ValueError("group order is not a prime power")
    (p, r), = sd.factorization
    k = sd.k
    coeffs = {p**r: p**k}
    for i in range(r - j):
        hi = k * p ** (r - j - i) - r + j + i
        lo = k * p ** (r - j - 1 - i) - r + j + i
        coeffs[p ** (i + j)] = _pow_frac(p, hi) - _pow_frac(p, lo)
    return BurnsideElement(p**r, coeffs)


def _pow_frac(p, e):
    if e >= 0:
        return p**e
    raise NonIntegralFormula(f"negative exponent {e} for prime {p}")


def maximal_closed_form(L: CyclicLattice) -> dict:
    m = L.m
    sd = sylow_data(L)
    s = len(sd.factorization)
    out = {}
    for d in L.divisors:
        if d == 1:
            continue
        if d == m:
            out[d] = sd.factorization[0][0] ** sd.k if s == 1 else 1
            continue
        pp = _prime_power_part(m, d)
        if pp is None:
            out[d] = 0
            continue
        p, j = pp
        i = sd.primes.index(p)
        r = sd.factorization[i][1]
        k = sd.k_per_prime[i]
        if j == r:
            out[d] = _exact((p**k - 1) * p**r, m, f"|M(G_{d})|")
        else:
            out[d] = _exact(p ** (k * p ** (r - j) + j) - p ** (k * p ** (r - j - 1) + j), m, f"|M(G_{d})|")
    return out


def census_closed_form(L: CyclicLattice) -> SubgroupCensus:
    if L.m == 1:
        return SubgroupCensus(1, {})
    maximal = maximal_closed_form(L)
    classes = {d: burnside.quot(h1_class_closed_form(L, d)) for d in L.divisors if d > 1}
    return SubgroupCensus(L.m, {d: DivisorCount(classes[d], maximal[d]) for d in sorted(classes)})


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    left: object
    right: object

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "left": _jsonable(self.left), "right": _jsonable(self.right)}


def _jsonable(x):
    if isinstance(x, Fraction):
        return _frac(x)
    if isinstance(x, BurnsideElement):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class CensusCrossCheck:
    bruteforce: SubgroupCensus
    closed_form: SubgroupCensus
    oracle_classes: dict
    closed_classes: dict
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def raise_on_failure(self):
        for c in self.checks:
            if not c.passed:
                raise CrossCheckMismatch(c.name, c.left, c.right)


def cross_check(L: CyclicLattice, enumeration_threshold=DEFAULT_ENUMERATION_THRESHOLD, strict=False) -> CensusCrossCheck:
    """Compare the two census routes and the two [H¹] routes divisor by divisor."""
    brute = census_bruteforce(L, enumeration_threshold)
    closed = census_closed_form(L)
    oracle_classes = {}
    closed_classes = {}
    checks = []
    for d in L.divisors:
        if d == 1:
            continue
        b, c = brute.per_divisor[d], closed.per_divisor[d]
        checks.append(Check(f"classes[{d}]", b.classes == c.classes, b.classes, c.classes))
        checks.append(Check(f"maximal[{d}]", b.maximal == c.maximal, b.maximal, c.maximal))
        oracle_classes[d] = burnside_class_of_h1(L, d)
        closed_classes[d] = h1_class_closed_form(L, d)
        checks.append(Check(f"h1_class[{d}]", oracle_classes[d] == closed_classes[d], oracle_classes[d], closed_classes[d]))
        if len(factorint(L.m)) == 1:
            j = factorint(d)[_prime_divisors(d)[0]]
            pp = h1_class_prime_power(L, j)
            checks.append(Check(f"h1_class_prime_power[{d}]", pp == oracle_classes[d], oracle_classes[d], pp))
    result = CensusCrossCheck(brute, closed, oracle_classes, closed_classes, tuple(checks))
    if strict:
        result.raise_on_failure()
    return result
