import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisors

from crystal_ktheory.burnside import (
    BurnsideElement,
    MarkVector,
    cardinality,
    class_of_gset,
    from_marks,
    induce_from_sylow,
    induce_literal,
    kg,
    map_gset,
    map_parity_classes,
    marks_of,
    multiply,
    perm_dim_fixed,
    quot,
)
from crystal_ktheory.errors import NotIntegral, NotSylow

B = BurnsideElement


@st.composite
def elements(draw, m=None, lo=-10, hi=10):
    m = m or draw(st.integers(1, 36))
    coeffs = {d: draw(st.integers(lo, hi)) for d in divisors(m)}
    return B(m, coeffs)


@st.composite
def pairs(draw):
    m = draw(st.integers(1, 36))
    return draw(elements(m)), draw(elements(m))


def test_marks_examples():
    assert marks_of(B(4, {4: 1})).marks == {1: 1, 2: 1, 4: 1}
    assert marks_of(B(4, {1: 1})).marks == {1: 4, 2: 0, 4: 0}
    assert marks_of(B(4, {4: 2, 2: 1})).marks == {1: 4, 2: 4, 4: 2}


def test_from_marks_examples():
    assert from_marks(MarkVector(4, {1: 4, 2: 4, 4: 2})) == B(4, {4: 2, 2: 1})
    assert from_marks(MarkVector(6, {d: 1 for d in (1, 2, 3, 6)})) == B.one(6)
    assert from_marks(MarkVector(3, {1: 3, 3: 0})) == B(3, {1: 1})


def test_from_marks_rejects_unrealizable():
    with pytest.raises(NotIntegral):
        from_marks(MarkVector(4, {1: 4, 2: 2, 4: 2}))


@settings(max_examples=150, deadline=None)
@given(elements())
def test_marks_round_trip(x):
    assert from_marks(marks_of(x)) == x


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_marks_are_multiplicative(xy):
    x, y = xy
    mx, my, mxy = marks_of(x).marks, marks_of(y).marks, marks_of(x * y).marks
    assert all(mxy[d] == mx[d] * my[d] for d in mx)


@settings(max_examples=100, deadline=None)
@given(pairs())
def test_quot_and_kg_are_additive(xy):
    x, y = xy
    assert quot(x + y) == quot(x) + quot(y)
    assert kg(x + y) == kg(x) + kg(y)


def test_multiply_examples():
    x = B(6, {1: 2, 3: -1, 6: 4})
    assert x * B.one(6) == x
    assert B(3, {1: 1}) * B(3, {1: 1}) == B(3, {1: 3})


def test_quot_kg_examples():
    assert quot(B.one(5)) == 1
    assert quot(B(2, {1: 3, 2: -2})) == 1
    assert kg(B.one(6)) == 6
    assert kg(B(6, {1: 1})) == 1
    assert kg(B(3, {1: -1, 3: 3})) == 8


def test_perm_dim_fixed_examples():
    for m in (4, 6, 12):
        for h in divisors(m):
            assert perm_dim_fixed(B.basis(m, h), 1) == m // h
        for d in divisors(m):
            assert perm_dim_fixed(B.one(m), d) == 1
    assert perm_dim_fixed(B(4, {1: 1}), 4) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24), st.data())
def test_perm_dim_fixed_counts_orbits(m, data):
    h = data.draw(st.sampled_from(divisors(m)))
    d = data.draw(st.sampled_from(divisors(m)))
    size = m // h
    seen, orbits = set(), 0
    step = m // d
    for x in range(size):
        if x not in seen:
            orbits += 1
            y = x
            while y not in seen:
                seen.add(y)
                y = (y + step) % size
    assert perm_dim_fixed(B.basis(m, h), d) == orbits


def test_string_form():
    assert str(B(4, {4: 2, 2: 1})) == "2[G/G] + [G/G_2]"
    assert str(B(3, {1: -1, 3: 3})) == "3[G/G] - [G]"
    assert str(B(5, {})) == "0"


# --- induction from Sylow subgroups -----------------------------------------


def test_induce_examples():
    assert induce_from_sylow(B.one(3), 6) == B(6, {3: 1})
    assert induce_from_sylow(B(2, {1: 1}), 6) == B(6, {1: 1})


def test_induce_rejects_non_sylow():
    with pytest.raises(NotSylow):
        induce_from_sylow(B.one(2), 12)
    with pytest.raises(NotSylow):
        induce_from_sylow(B.one(6), 12)


@pytest.mark.parametrize("m, q", [(6, 2), (6, 3), (12, 4), (12, 3), (18, 9), (20, 5), (10, 2)])
def test_induce_matches_literal_construction(m, q):
    for h in divisors(q):
        for a in (1, 2):
            x = B(q, {h: a, q: 1})
            assert induce_from_sylow(x, m) == induce_literal(x, m)


# --- map(H, P) identities ----------------------------------------------------


def map_power_closed_form(p, r, k):
    coeffs = {p**r: p**k}
    for i in range(r):
        coeffs[p**i] = p ** (k * p ** (r - i) - r + i) - p ** (k * p ** (r - i - 1) - r + i)
    return B(p**r, coeffs)


def literal_power(p, r, k):
    elements, act = map_gset(p, r)
    if len(elements) ** k <= 50_000:
        from itertools import product

        tuples = list(product(elements, repeat=k))
        return class_of_gset(p**r, tuples, lambda t: tuple(act(f) for f in t))
    return class_of_gset(p**r, elements, act) ** k


@pytest.mark.parametrize("p, r, k", [(p, r, k) for p in (2, 3) for r in (1, 2) for k in (1, 2)])
def test_map_power_class(p, r, k):
    x = literal_power(p, r, k)
    assert x == map_power_closed_form(p, r, k)
    assert quot(x) == sum(map_power_closed_form(p, r, k).coeffs.values())


def test_parity_difference_odd_prime():
    ev, od = map_parity_classes(3, 1)
    assert cardinality(ev) == (27 + 1) // 2 and cardinality(od) == (27 - 1) // 2
    assert multiply(ev - od, ev - od) == B.one(3)


@pytest.mark.parametrize("r, k", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_parity_difference_two(r, k):
    ev, od = map_parity_classes(2, r)
    left = (ev - od) ** k
    coeffs = {2**r: 2**k, 1: -(2 ** (k * 2 ** (r - 1) - r))}
    for i in range(1, r):
        coeffs[2**i] = 2 ** (k * 2 ** (r - i) - r + i) - 2 ** (k * 2 ** (r - i - 1) - r + i)
    assert marks_of(left) == marks_of(B(2**r, coeffs))
