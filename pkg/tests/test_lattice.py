import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystal_ktheory import linalg
from crystal_ktheory.errors import NotADivisor, NotFreeOutsideOrigin, WrongOrder
from crystal_ktheory.lattice import (
    cyclotomic_lattice,
    cyclotomic_polynomial,
    subgroup_generator,
    sylow_data,
    validate,
)
from sympy import totient


def test_validate_accepts_order_three_rotation():
    L = validate(3, [[0, -1], [1, -1]])
    assert L.n == 2
    assert linalg.determinant(linalg.matsub(L.action, linalg.identity(2))) == 3


def test_validate_rejects_swap():
    with pytest.raises(NotFreeOutsideOrigin) as exc:
        validate(2, [[0, 1], [1, 0]])
    assert exc.value.j == 1


def test_validate_rejects_wrong_order():
    with pytest.raises(WrongOrder) as exc:
        validate(4, [[-1, 0], [0, -1]])
    assert exc.value.j == 2


def test_validate_rejects_non_periodic():
    with pytest.raises(WrongOrder):
        validate(2, [[1, 1], [0, 1]])


@pytest.mark.parametrize(
    "m, k, T",
    [
        (2, 3, [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]),
        (4, 1, [[0, -1], [1, 0]]),
        (3, 1, [[0, -1], [1, -1]]),
    ],
)
def test_cyclotomic_examples(m, k, T):
    assert cyclotomic_lattice(m, k).action == linalg.as_matrix(T)


def test_cyclotomic_polynomial_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_charpoly_of_cyclotomic_block():
    L = cyclotomic_lattice(3, 1)
    assert linalg.characteristic_polynomial(L.action) == (1, 1, 1)


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_always_valid(m):
    for k in (1, 2, 3):
        if k * int(totient(m)) > 24:
            continue
        L = cyclotomic_lattice(m, k)
        assert sylow_data(L).k == k
        det = linalg.determinant(L.action)
        assert det in (1, -1)
        if int(totient(m)) % 2 == 0:
            assert det == 1
        for j in range(1, m):
            assert linalg.rational_rank(linalg.matsub(L.powers[j], linalg.identity(L.n))) == L.n


def test_sylow_examples():
    sd = sylow_data(cyclotomic_lattice(9, 1))
    assert (sd.k, sd.k_per_prime, sd.factorization) == (1, (1,), ((3, 2),))
    sd = sylow_data(cyclotomic_lattice(6, 1))
    assert sd.k == 1 and sd.k_per_prime == (2, 1)
    assert sylow_data(cyclotomic_lattice(2, 5)).k == 5
    assert sylow_data(cyclotomic_lattice(1, 3)).k == 3


def test_subgroup_generator():
    L = cyclotomic_lattice(4, 1)
    assert subgroup_generator(L, 2) == ((-1, 0), (0, -1))
    assert subgroup_generator(L, 1) == linalg.identity(2)
    assert subgroup_generator(L, 4) == L.action
    with pytest.raises(NotADivisor):
        subgroup_generator(L, 3)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6, 8, 10, 12]), st.integers(1, 2))
def test_json_round_trip(m, k):
    L = cyclotomic_lattice(m, k)
    doc = L.to_json()
    assert validate(doc["m"], doc["matrix"]) == L
