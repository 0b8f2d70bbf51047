from math import comb

import pytest

from conftest import small_grid
from crystal_ktheory import linalg
from crystal_ktheory.burnside import BurnsideElement as B
from crystal_ktheory.cohomology import (
    PARITIES,
    FiniteAbelianGroupWithAction,
    burnside_class_of_h1,
    enumerate_fixed_points,
    fixed_point_count,
    h1_as_gset,
    norm_matrix,
    normalize_factors,
    orbit_count,
    orbit_count_burnside,
    orbit_count_enumeration,
    tate,
)
from crystal_ktheory.errors import DimensionOverflow
from crystal_ktheory.lattice import cyclotomic_lattice

SWAP = FiniteAbelianGroupWithAction((2, 2), ((0, 1), (1, 0)), 2)
ORDER3 = FiniteAbelianGroupWithAction((2, 2), ((0, 1), (1, 1)), 3)
TRIVIAL3 = FiniteAbelianGroupWithAction((3,), ((1,),), 1)


def test_h1_examples():
    A = h1_as_gset(cyclotomic_lattice(3, 1), 3)
    assert A.invariant_factors == (3,) and A.order_of_action == 1
    A = h1_as_gset(cyclotomic_lattice(4, 1), 2)
    assert A.invariant_factors == (2, 2) and A.order_of_action == 2
    assert fixed_point_count(A, 1) == 2
    A = h1_as_gset(cyclotomic_lattice(6, 1), 2)
    assert A.invariant_factors == (2, 2) and A.order_of_action == 3


def test_fixed_points_examples():
    assert fixed_point_count(TRIVIAL3, 5) == 3
    assert fixed_point_count(SWAP, 1) == 2
    assert fixed_point_count(ORDER3, 1) == 1


def test_orbit_examples():
    assert orbit_count(SWAP) == 3
    assert orbit_count(TRIVIAL3) == 3
    assert orbit_count(ORDER3) == 2


@pytest.mark.parametrize("m, k", small_grid(8))
def test_fixed_points_against_enumeration(m, k):
    L = cyclotomic_lattice(m, k)
    for d in L.divisors[1:]:
        A = h1_as_gset(L, d)
        if A.order > 5000:
            continue
        for e in range(m):
            assert fixed_point_count(A, e) == enumerate_fixed_points(A, e)


@pytest.mark.parametrize("m, k", small_grid(12))
def test_orbit_routes_agree(m, k):
    L = cyclotomic_lattice(m, k)
    for d in L.divisors[1:]:
        A = h1_as_gset(L, d)
        assert orbit_count_burnside(A) == orbit_count_enumeration(A, backend="numba")
        assert orbit_count_enumeration(A, backend="numpy") == orbit_count_enumeration(A, backend="numba")


@pytest.mark.parametrize("m, k", small_grid(12))
def test_action_is_well_defined(m, k):
    L = cyclotomic_lattice(m, k)
    for d in L.divisors[1:]:
        A = h1_as_gset(L, d)
        assert m % A.order_of_action == 0
        eye = tuple(tuple(int(i == j) % A.invariant_factors[i] for j in range(A.rank)) for i in range(A.rank))
        assert A.power(A.order_of_action) == eye
        # the subgroup itself acts trivially on its own H¹
        assert A.power(m // d) == eye
        # H¹ of a group of order d is killed by d
        assert all(d % f == 0 for f in A.invariant_factors)


def test_burnside_class_examples():
    assert burnside_class_of_h1(cyclotomic_lattice(4, 1), 2) == B(4, {4: 2, 2: 1})
    assert burnside_class_of_h1(cyclotomic_lattice(3, 1), 3) == B(3, {3: 3})
    assert burnside_class_of_h1(cyclotomic_lattice(6, 1), 3) == B(6, {6: 1, 3: 1})


# --- Tate cohomology ---------------------------------------------------------


def test_tate_examples():
    L = cyclotomic_lattice(3, 1)
    assert tate(L, 3, 0, "even").invariant_factors == (3,)
    assert tate(L, 3, 1, "odd").invariant_factors == (3,)
    assert tate(L, 3, 1, "even").is_trivial


@pytest.mark.parametrize("m, k", small_grid(8))
def test_tate_routes_agree(m, k):
    L = cyclotomic_lattice(m, k)
    for d in L.divisors:
        for l in range(L.n + 1):
            if comb(L.n, l) > 70:
                continue
            for parity in PARITIES:
                exact = tate(L, d, l, parity, method="exact")
                local = tate(L, d, l, parity, method="local")
                assert exact == local


@pytest.mark.parametrize("m, k", small_grid(8))
def test_tate_factors_divide_group_order(m, k):
    L = cyclotomic_lattice(m, k)
    for d in L.divisors:
        for l in range(L.n + 1):
            for parity in PARITIES:
                assert all(d % f == 0 for f in tate(L, d, l, parity).invariant_factors)


@pytest.mark.parametrize("m, k", small_grid(8))
def test_norm_vanishes_on_lattice(m, k):
    L = cyclotomic_lattice(m, k)
    for d in L.divisors[1:]:
        N = norm_matrix(L, d)
        assert all(x == 0 for row in N for x in row)
        odd = tate(L, d, 1, "odd")
        gen = L.powers[m // d]
        assert odd.order == abs(linalg.determinant(linalg.matsub(gen, linalg.identity(L.n))))


def test_tate_trivial_subgroup():
    L = cyclotomic_lattice(5, 1)
    for l in range(5):
        assert tate(L, 1, l, "even").is_trivial and tate(L, 1, l, "odd").is_trivial


def test_tate_dimension_guard():
    L = cyclotomic_lattice(7, 2)
    with pytest.raises(DimensionOverflow):
        tate(L, 7, 6, "even", cap=100)


def test_normalize_factors():
    assert normalize_factors((2, 3)) == (6,)
    assert normalize_factors((2, 4, 3)) == (2, 12)
    assert normalize_factors(()) == ()
