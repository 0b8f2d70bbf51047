"""Headline outputs assembled from the census and the Tate groups.

The K-theory ranks s0 and s1 come from the exterior-power ranks plus the
census.  The equivariant Euler characteristic is checked against the ranks
through several independent identities.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from sympy import factorint

from . import burnside, linalg
from .burnside import BurnsideElement
from .census import Check, SubgroupCensus, cross_check
from .cohomology import DEFAULT_ENUMERATION_THRESHOLD, PARITIES, normalize_factors, tate
from .errors import NonIntegralEulerClass, NonIntegralRank
from .lattice import CyclicLattice, sylow_data

# ---------------------------------------------------------------------------
# ranks of invariants in exterior powers


@dataclass(frozen=True)
class LambdaRanks:
    ranks: tuple
    sum_all: int
    sum_alt: int
    closed: dict = field(default_factory=dict)  # quantity -> closed-form value
    provenance: dict = field(default_factory=dict)

    @property
    def even(self):
        return sum(self.ranks[0::2])

    @property
    def odd(self):
        return sum(self.ranks[1::2])

    def r(self, i):
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0


def _average(values, m, what):
    total = sum(values)
    if total % m:
        raise NonIntegralRank(f"{what}: {total}/{m} is not an integer")
    return total // m


def character_ranks(L: CyclicLattice):
    """r_l = (1/m) Σ_j e_l(T^j): the dimension of the invariants of Λ^l."""
    sym = [linalg.elementary_symmetric(P) for P in L.powers]
    ranks = tuple(_average((s[l] for s in sym), L.m, f"rank of invariants in degree {l}") for l in range(L.n + 1))
    if any(r < 0 for r in ranks):
        raise NonIntegralRank(f"negative rank in {ranks}")
    return ranks


def sum_all_closed_form(L: CyclicLattice):
    """Σ_l r_l for m = p^r, or None if no closed form applies."""
    f = factorint(L.m)
    if len(f) != 1:
        return None
    (p, r), = f.items()
    k = sylow_data(L).k
    if p != 2:
        return 1 + Fraction(2**L.n - 1, p**r)
    if r == 1:
        return Fraction(2 ** (k - 1))
    if r == 2:
        return Fraction(2 ** (2 * k - 2) + 2 ** (k - 1))
    total = Fraction(2 ** (k - 1)) + Fraction(2) ** (k * 2 ** (r - 2) - r + 1) + Fraction(2) ** (k * 2 ** (r - 1) - r)
    for i in range(3, r):
        total += Fraction(2) ** (k * 2 ** (r - i) - r + i - 1)
    return total


def lambda_ranks(L: CyclicLattice, census: SubgroupCensus = None) -> LambdaRanks:
    ranks = character_ranks(L)
    n, m = L.n, L.m
    eye = linalg.identity(n)
    sum_all = _average((linalg.determinant(linalg.matadd(eye, P)) for P in L.powers), m, "sum of ranks")
    sum_alt = _average((linalg.determinant(linalg.matsub(eye, P)) for P in L.powers), m, "alternating sum of ranks")
    if sum_all != sum(ranks) or sum_alt != sum((-1) ** l * r for l, r in enumerate(ranks)):
        raise NonIntegralRank("determinant sums disagree with the per-degree ranks")
    closed = {}
    provenance = {"ranks": "oracle", "sum_all": "oracle", "sum_alt": "oracle"}
    value = sum_all_closed_form(L) if m > 1 else None
    if value is not None:
        closed["sum_all"] = value
        provenance["sum_all"] = "both-agree" if value == sum_all else "disagree"
    if m % 2 == 0:
        closed["odd_ranks"] = 0
        provenance["ranks"] = "both-agree" if sum(ranks[1::2]) == 0 else "disagree"
    if census is not None and m > 1:
        closed["sum_alt"] = census.sum_alt
        provenance["sum_alt"] = "both-agree" if census.sum_alt == sum_alt else "disagree"
    return LambdaRanks(ranks, sum_all, sum_alt, closed, provenance)


def s_values(census: SubgroupCensus, ranks: LambdaRanks):
    """Free ranks of K_0 and K_1 of the reduced group C*-algebra."""
    return census.sum_order_minus_one + ranks.even, ranks.odd


def s_values_closed_form(L: CyclicLattice):
    """The worked closed forms: m prime, m = 4, m = 9, m square-free and
    even.  Returns None for any other m."""
    m, n = L.m, L.n
    if m == 1:
        return None
    f = factorint(m)
    k = sylow_data(L).k
    if len(f) == 1 and m in f:
        p = m
        if p == 2:
            return Fraction(3 * 2 ** (k - 1)), Fraction(0)
        even = p**k * (p - 1) + Fraction(2**n + p - 1, 2 * p) + Fraction(p ** (k - 1) * (p - 1), 2)
        odd = Fraction(2**n + p - 1, 2 * p) - Fraction(p ** (k - 1) * (p - 1), 2)
        return even, odd
    if m == 4:
        return Fraction(3 * 2 ** (2 * k - 2) + 3 * 2**k), Fraction(0)
    if m == 9:
        base = Fraction(64**k + 8, 18)
        return base + 23 * Fraction(3) ** (k - 1) + 7 * Fraction(3) ** (3 * k - 2), base - Fraction(3) ** (k - 1) - Fraction(3) ** (3 * k - 2)
    if m % 2 == 0 and all(e == 1 for e in f.values()):
        total = Fraction(-1)
        for p in f:
            total += (p * p - 1) * (p ** (n // (p - 1)) - 1)
        return m + total / m, Fraction(0)
    return None


# ---------------------------------------------------------------------------
# equivariant Euler characteristic


@dataclass(frozen=True)
class EulerClass:
    a: Fraction
    element: BurnsideElement


def euler_class(L: CyclicLattice, census: SubgroupCensus) -> EulerClass:
    """χ^G = a·[G] + Σ_d |M(G_d)|·[G/G_d] with a = -Σ |M(G_d)|/d."""
    a = -census.sum_reciprocal
    if a.denominator != 1:
        raise NonIntegralEulerClass(f"coefficient of [G] is {a}")
    coeffs = {1: int(a)}
    for d, c in census.per_divisor.items():
        coeffs[d] = coeffs.get(d, 0) + c.maximal
    return EulerClass(a, BurnsideElement(L.m, coeffs))


def alternating_fixed_dimension(L: CyclicLattice, d: int):
    """Σ_l (-1)^l dim (Λ^l L ⊗ Q)^{G_d} = (1/d) Σ_{g ∈ G_d} det(I - g)."""
    eye = linalg.identity(L.n)
    step = L.m // d
    total = sum(linalg.determinant(linalg.matsub(eye, L.powers[j * step])) for j in range(d))
    return Fraction(total, d)


def euler_identities(L, census, ranks, chi: EulerClass, s0, s1):
    checks = []
    for d in L.divisors:
        left = burnside.perm_dim_fixed(chi.element, d)
        right = alternating_fixed_dimension(L, d)
        checks.append(Check(f"euler_rq_mark[{d}]", left == right, left, right))
    checks.append(Check("euler_sum_alt", census.sum_alt == ranks.sum_alt, census.sum_alt, ranks.sum_alt))
    checks.append(Check("euler_sum_sq", census.sum_sq == s0 - s1, census.sum_sq, s0 - s1))
    q = burnside.quot(chi.element)
    checks.append(Check("euler_quot_orbifold", q == ranks.sum_alt, q, ranks.sum_alt))
    card = burnside.cardinality(chi.element)
    checks.append(Check("euler_cardinality_zero", card == 0, card, 0))
    kgv = burnside.kg(chi.element)
    checks.append(Check("euler_kg", kgv == s0 - s1, kgv, s0 - s1))
    return checks


# ---------------------------------------------------------------------------
# cohomology tables


@dataclass(frozen=True)
class GradedGroup:
    degree: int
    free_rank: int
    torsion: tuple  # concatenated summands, one chunk per Tate group

    @property
    def normalized_torsion(self):
        return normalize_factors(self.torsion)

    @property
    def torsion_order(self):
        return prod(self.torsion)

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"degree": self.degree, "free_rank": self.free_rank, "torsion": list(self.torsion)}


class TateTable:
    """Ĥ^parity(G; Λ^l L) for the whole group, computed once per (l, parity)."""

    def __init__(self, L: CyclicLattice, cap=linalg.DEFAULT_EXTERIOR_CAP, method="auto"):
        self.L = L
        self.cap = cap
        self.method = method
        self._cache = {}

    def __call__(self, l, parity):
        key = (l, parity)
        if key not in self._cache:
            self._cache[key] = tate(self.L, self.L.m, l, parity, method=self.method, cap=self.cap)
        return self._cache[key]

    def all(self):
        return {(l, p): self(l, p) for l in range(self.L.n + 1) for p in PARITIES}


def _parity(i):
    return "even" if i % 2 == 0 else "odd"


def gamma_cohomology(L, max_degree, ranks: LambdaRanks = None, table: TateTable = None):
    """H^i(Γ): Z^{r_i} plus, in even degrees, ⊕_{l<i} Ĥ^{i-l}(G; Λ^l L)."""
    ranks = ranks or lambda_ranks(L)
    table = table or TateTable(L)
    out = []
    for i in range(max_degree + 1):
        if i == 1:
            out.append(GradedGroup(1, 0, ()))
            continue
        torsion = ()
        if i % 2 == 0:
            for l in range(min(i - 1, L.n) + 1):
                torsion += table(l, _parity(i - l)).invariant_factors
        out.append(GradedGroup(i, ranks.r(i), torsion))
    return out


def orbifold_cohomology(L, max_degree, ranks: LambdaRanks = None, table: TateTable = None):
    """H^i of the orbifold quotient: Z^{r_i} plus, in odd degrees i >= 3,
    ⊕_{i<=l<=n} Ĥ^l(G; Λ^l L)."""
    ranks = ranks or lambda_ranks(L)
    table = table or TateTable(L)
    out = []
    for i in range(max_degree + 1):
        if i == 1:
            out.append(GradedGroup(1, 0, ()))
            continue
        torsion = ()
        if i % 2 == 1:
            for l in range(i, L.n + 1):
                torsion += table(l, _parity(l)).invariant_factors
        out.append(GradedGroup(i, ranks.r(i), torsion))
    return out


def restriction_checks(L, census, gamma):
    """In even degrees above n the torsion of H^i(Γ) has order ∏_d d^{|M(G_d)|}."""
    expected = prod(d**c.maximal for d, c in census.per_divisor.items())
    return [
        Check(f"restriction[{g.degree}]", g.torsion_order == expected, g.torsion_order, expected)
        for g in gamma
        if g.degree % 2 == 0 and g.degree > L.n
    ]


def tate_vanishing_checks(table: TateTable):
    bad = [
        (l, p) for (l, p), grp in table.all().items() if (l + (p == "odd")) % 2 == 1 and not grp.is_trivial
    ]
    return [Check("tate_vanishing", not bad, bad, [])]


# ---------------------------------------------------------------------------
# the full report


@dataclass(frozen=True)
class Options:
    max_degree: int = None  # defaults to 2n + 2
    enumeration_threshold: int = DEFAULT_ENUMERATION_THRESHOLD
    exterior_cap: int = linalg.DEFAULT_EXTERIOR_CAP


@dataclass(frozen=True)
class KTheoryReport:
    lattice: CyclicLattice
    k: int
    k_per_prime: tuple
    ranks: LambdaRanks
    census: SubgroupCensus
    s0: int
    s1: int
    s_closed: tuple
    gamma_cohomology: list
    orbifold_cohomology: list
    euler: EulerClass
    checks: list
    provenance: dict

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]


def build_report(L: CyclicLattice, options: Options = Options()) -> KTheoryReport:
    sd = sylow_data(L)
    max_degree = options.max_degree if options.max_degree is not None else 2 * L.n + 2
    checks = []
    provenance = {}
    if L.m > 1:
        cc = cross_check(L, options.enumeration_threshold)
        census = cc.bruteforce
        checks += list(cc.checks)
        provenance["census"] = "both-agree" if cc.passed else "disagree"
    else:
        census = SubgroupCensus(1, {})
        provenance["census"] = "trivial"
    ranks = lambda_ranks(L, census)
    provenance.update({f"lambda_{k}": v for k, v in ranks.provenance.items()})
    for name, value in ranks.closed.items():
        if name == "odd_ranks":
            checks.append(Check("odd_ranks_vanish", ranks.odd == 0, ranks.odd, 0))
        else:
            oracle = getattr(ranks, name)
            checks.append(Check(f"lambda_{name}", value == oracle, oracle, value))
    s0, s1 = s_values(census, ranks)
    closed = s_values_closed_form(L)
    if closed is not None:
        checks.append(Check("s0_closed_form", closed[0] == s0, s0, closed[0]))
        checks.append(Check("s1_closed_form", closed[1] == s1, s1, closed[1]))
        provenance["s"] = "both-agree" if closed == (s0, s1) else "disagree"
    else:
        provenance["s"] = "oracle"
    if L.m % 2 == 0:
        checks.append(Check("s1_vanishes_for_even_m", s1 == 0, s1, 0))
    table = TateTable(L, options.exterior_cap)
    gamma = gamma_cohomology(L, max_degree, ranks, table)
    orbi = orbifold_cohomology(L, max_degree, ranks, table)
    checks.append(Check("gamma_h1_zero", gamma[1].is_zero if len(gamma) > 1 else True, str(gamma[1]) if len(gamma) > 1 else "0", "0"))
    checks += tate_vanishing_checks(table)
    checks += restriction_checks(L, census, gamma)
    provenance["cohomology"] = "oracle"
    chi = euler_class(L, census)
    checks += euler_identities(L, census, ranks, chi, s0, s1)
    return KTheoryReport(L, sd.k, sd.k_per_prime, ranks, census, s0, s1, closed, gamma, orbi, chi, checks, provenance)
