from fractions import Fraction

import pytest

from conftest import grid
from crystal_ktheory.burnside import BurnsideElement as B
from crystal_ktheory.burnside import induce_from_sylow
from crystal_ktheory.census import (
    census_bruteforce,
    census_closed_form,
    cross_check,
    h1_class_closed_form,
    maximal_from_classes,
)
from crystal_ktheory.cohomology import burnside_class_of_h1
from crystal_ktheory.errors import CrossCheckMismatch
from crystal_ktheory.lattice import cyclotomic_lattice


@pytest.mark.parametrize(
    "m, k, expected",
    [
        (4, 1, {2: (3, 1), 4: (2, 2)}),
        (3, 1, {3: (3, 3)}),
        (6, 1, {2: (2, 1), 3: (2, 1), 6: (1, 1)}),
        (2, 1, {2: (2, 2)}),
        (9, 1, {3: (11, 8), 9: (3, 3)}),
    ],
)
def test_bruteforce_examples(m, k, expected):
    assert census_bruteforce(cyclotomic_lattice(m, k)).as_pairs() == expected


def test_closed_form_maximal_examples():
    assert census_closed_form(cyclotomic_lattice(9, 1)).maximal(3) == 8
    assert census_closed_form(cyclotomic_lattice(9, 1)).maximal(9) == 3
    c6 = census_closed_form(cyclotomic_lattice(6, 1))
    assert (c6.maximal(2), c6.maximal(3), c6.maximal(6)) == (1, 1, 1)
    c4 = census_closed_form(cyclotomic_lattice(4, 1))
    assert (c4.maximal(2), c4.maximal(4)) == (1, 2)


def test_h1_closed_form_examples():
    assert h1_class_closed_form(cyclotomic_lattice(6, 1), 6) == B.one(6)
    assert h1_class_closed_form(cyclotomic_lattice(6, 1), 3) == B(6, {6: 1, 3: 1})
    assert h1_class_closed_form(cyclotomic_lattice(4, 1), 2) == B(4, {4: 2, 2: 1})


@pytest.mark.parametrize("m, k", grid())
def test_routes_agree(m, k):
    result = cross_check(cyclotomic_lattice(m, k))
    assert result.passed, [c for c in result.checks if not c.passed]


@pytest.mark.parametrize("m, k", grid())
def test_census_structure(m, k):
    L = cyclotomic_lattice(m, k)
    c = census_bruteforce(L)
    for d, cnt in c.per_divisor.items():
        assert 0 <= cnt.maximal <= cnt.classes
        for e in c.per_divisor:
            if e % d == 0:
                assert c.classes(d) >= c.classes(e)
    assert c.maximal(m) == c.classes(m) >= 1
    assert c.total_maximal == sum(x.maximal for x in c.per_divisor.values())
    assert c.sum_reciprocal == sum(Fraction(x.maximal, d) for d, x in c.per_divisor.items())


def test_inclusion_exclusion_square_free():
    classes = {2: 5, 3: 4, 6: 1}
    assert maximal_from_classes(6, classes) == {2: 4, 3: 3, 6: 1}


def test_strict_mode_raises(monkeypatch):
    import crystal_ktheory.census as census

    monkeypatch.setattr(census, "maximal_closed_form", lambda L: {2: 99, 4: 2})
    with pytest.raises(CrossCheckMismatch):
        cross_check(cyclotomic_lattice(4, 1), strict=True)


def test_trivial_group_census_is_empty():
    L = cyclotomic_lattice(1, 3)
    assert census_bruteforce(L).per_divisor == {}
    assert census_closed_form(L).per_divisor == {}


def test_sylow_induction_identity_m6():
    # ind_{G[2]}^G([H¹(G[2]; L)] - [G[2]/G[2]]) = 2 ([H¹(G_3; L)] - [G/G]) for L = Z[ζ_6]
    L6 = cyclotomic_lattice(6, 1)
    L3 = cyclotomic_lattice(3, 1)
    local = burnside_class_of_h1(L3, 3) - B.one(3)
    left = induce_from_sylow(local, 6)
    right = 2 * (burnside_class_of_h1(L6, 3) - B.one(6))
    assert left == right
