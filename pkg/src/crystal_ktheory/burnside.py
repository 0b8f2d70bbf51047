"""Burnside ring A(Z/m), identified with R_Q(Z/m) through permutation modules.

Basis classes [G/G_h] are indexed by the order h of the stabilizer G_h, the
unique subgroup of order h.  Marks are indexed the same way: the mark at d
counts points fixed by G_d.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from sympy import divisors

from .errors import NotIntegral, NotSylow


def _clean(coeffs):
    return {h: a for h, a in sorted(coeffs.items()) if a}


@dataclass(frozen=True)
class BurnsideElement:
    m: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        for h in self.coeffs:
            if self.m % h:
                raise ValueError(f"{h} is not a divisor of {self.m}")
        object.__setattr__(self, "coeffs", _clean({h: int(a) for h, a in self.coeffs.items()}))

    @classmethod
    def basis(cls, m, h):
        """The class [G/G_h]."""
        return cls(m, {h: 1})

    @classmethod
    def one(cls, m):
        return cls.basis(m, m)

    @classmethod
    def from_counts(cls, m, counts):
        return cls(m, dict(counts))

    def coeff(self, h):
        return self.coeffs.get(h, 0)

    def _check(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("elements of different Burnside rings")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for h, a in other.coeffs.items():
            out[h] = out.get(h, 0) + a
        return BurnsideElement(self.m, out)

    def __neg__(self):
        return BurnsideElement(self.m, {h: -a for h, a in self.coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.m, {h: other * a for h, a in self.coeffs.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = BurnsideElement.one(self.m)
        for _ in range(k):
            result = result * self
        return result

    def __hash__(self):
        return hash((self.m, tuple(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for h, a in sorted(self.coeffs.items(), reverse=True):
            name = "[G/G]" if h == self.m else ("[G]" if h == 1 else f"[G/G_{h}]")
            sign = "-" if a < 0 else "+"
            mag = "" if abs(a) == 1 else f"{abs(a)}"
            parts.append((sign, f"{mag}{name}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    def to_json(self):
        return {str(h): a for h, a in self.coeffs.items()}


@dataclass(frozen=True)
class MarkVector:
    m: int
    marks: dict

    def __getitem__(self, d):
        return self.marks[d]


def marks_of(x: BurnsideElement) -> MarkVector:
    """|X^{G_d}| for every divisor d; [G/G_h] has m/h fixed points under G_d
    when d | h and none otherwise."""
    m = x.m
    return MarkVector(m, {d: sum(a * (m // h) for h, a in x.coeffs.items() if h % d == 0) for d in divisors(m)})


def from_marks(v) -> BurnsideElement:
    """Invert the triangular table of marks by back-substitution, largest
    divisor first."""
    if isinstance(v, MarkVector):
        m, marks = v.m, v.marks
    else:
        m, marks = v
    divs = divisors(m)
    coeffs = {}
    for d in reversed(divs):
        rest = marks.get(d, 0) - sum(a * (m // h) for h, a in coeffs.items() if h % d == 0)
        q, r = divmod(rest, m // d)
        if r:
            raise NotIntegral(f"marks {dict(marks)} are not realized by an integral class (at d={d})")
        coeffs[d] = q
    return BurnsideElement(m, coeffs)


def multiply(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    mx, my = marks_of(x).marks, marks_of(y).marks
    return from_marks(MarkVector(x.m, {d: mx[d] * my[d] for d in mx}))


def induce_from_sylow(x: BurnsideElement, m: int) -> BurnsideElement:
    """Induction A(G[i]) -> A(G) along the inclusion of a Sylow subgroup.

    G ×_{G[i]} (G[i]/H) = G/H, so basis classes keep their stabilizer order.
    """
    q = x.m
    if m % q or q == 1:
        raise NotSylow(f"{q} is not a Sylow order of {m}")
    p = min(pf for pf in range(2, q + 1) if q % pf == 0)
    rest = q
    while rest % p == 0:
        rest //= p
    if rest != 1 or (m // q) % p == 0:
        raise NotSylow(f"{q} is not a Sylow order of {m}")
    return BurnsideElement(m, dict(x.coeffs))


def restrict(x: BurnsideElement, d: int) -> BurnsideElement:
    """Restriction to the subgroup of order d (marks at divisors of d)."""
    mk = marks_of(x).marks
    return from_marks(MarkVector(d, {e: mk[e] for e in divisors(d)}))


def quot(x: BurnsideElement) -> int:
    """Number of orbits: each basis class is one orbit."""
    return sum(x.coeffs.values())


def cardinality(x: BurnsideElement) -> int:
    return marks_of(x).marks[1]


def kg(x: BurnsideElement) -> int:
    """[G/H] ↦ |H|."""
    return sum(a * h for h, a in x.coeffs.items())


def perm_dim_fixed(x: BurnsideElement, d: int):
    """dim of the G_d-invariants of the permutation module Q[X].

    G_d has m·gcd(h, d)/(h·d) orbits on G/G_h.  Rational coefficients are
    accepted so the unnormalized Euler class can be evaluated too.
    """
    m = x.m if isinstance(x, BurnsideElement) else x[0]
    items = x.coeffs.items() if isinstance(x, BurnsideElement) else x[1].items()
    total = Fraction(0)
    for h, a in items:
        total += a * Fraction(m * gcd(h, d), h * d)
    return int(total) if total.denominator == 1 else total


# ---------------------------------------------------------------------------
# literal finite G-sets, used to test the formulas above


def class_of_gset(m, elements, act):
    """Class of a finite Z/m-set given by its elements and the action
    ``act(x)`` of the generator."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    image = [index[act(x)] for x in elements]
    marks = {}
    for d in divisors(m):
        step = m // d
        fixed = 0
        for i in range(len(elements)):
            j = i
            for _ in range(step):
                j = image[j]
            fixed += j == i
        marks[d] = fixed
    return from_marks(MarkVector(m, marks))


def orbit_gset(m, h):
    """The transitive set G/G_h as residues modulo m/h."""
    size = m // h
    return list(range(size)), lambda x: (x + 1) % size


def realize(x: BurnsideElement):
    """A literal G-set with class x; x must have non-negative coefficients."""
    if any(a < 0 for a in x.coeffs.values()):
        raise ValueError("only genuine G-sets can be realized")
    elements = []
    for h, a in x.coeffs.items():
        for copy in range(a):
            elements += [(h, copy, r) for r in range(x.m // h)]

    def act(e):
        h, copy, r = e
        return (h, copy, (r + 1) % (x.m // h))

    return elements, act


def induce_literal(x: BurnsideElement, m: int) -> BurnsideElement:
    """G ×_{G[i]} X built as a set; the subgroup of order q = x.m is
    generated by m/q ∈ Z/m, which acts on X as its generator."""
    q = x.m
    reps = m // q
    xs, act = realize(x)

    def g_act(e):
        g, y = e
        return (0, act(y)) if g + 1 == reps else (g + 1, y)

    return class_of_gset(m, [(g, y) for g in range(reps) for y in xs], g_act)


def map_gset(p, r):
    """map(H, P) for H = Z/p^r and P = {0, ..., p-1}, H acting by
    translation of the argument."""
    size = p**r
    elements = list(product(range(p), repeat=size))

    def act(f):
        return f[-1:] + f[:-1]

    return elements, act


def map_parity_classes(p, r):
    """[map(H, P)_ev] and [map(H, P)_odd]: functions split by the parity of
    Σ f(h)."""
    elements, act = map_gset(p, r)
    ev = [f for f in elements if sum(f) % 2 == 0]
    od = [f for f in elements if sum(f) % 2 == 1]
    return class_of_gset(p**r, ev, act), class_of_gset(p**r, od, act)
