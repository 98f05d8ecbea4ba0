import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphqfi.counting import (
    CountingError,
    census,
    empirical_census,
    metrology_bound,
    stabilizer_state_count,
    threshold_k,
    useful_construction,
)
from graphqfi.graph import make_family
from graphqfi.oracle import qfi_pure, stabilizer_state_vector
from graphqfi.pauli import StabilizerGroup, classify_x_forms, generators_from_graph
from graphqfi.qfi import qfi_stabilizer


def test_counts():
    assert [stabilizer_state_count(n) for n in range(5)] == [1, 6, 60, 1080, 36720]
    assert isinstance(stabilizer_state_count(200), int)
    with pytest.raises(CountingError):
        stabilizer_state_count(-1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_totals(n):
    assert len(census(n)) == stabilizer_state_count(n)
    assert empirical_census(n, 0) == stabilizer_state_count(n)


def test_census_threshold_examples():
    assert empirical_census(1, 2) == 0
    assert empirical_census(3, 3) >= metrology_bound(3, 1).full


def test_census_guard():
    with pytest.raises(CountingError):
        census(4)


def test_metrology_bound_example():
    b = metrology_bound(3, 1)
    assert (b.k, b.full, b.simple) == (2, 56, 48)


@given(st.integers(2, 20), st.floats(0.01, 2.0))
def test_metrology_bound_ordering(n, eps):
    b = metrology_bound(n, eps)
    assert b.simple <= b.full <= stabilizer_state_count(n)
    assert b.k == threshold_k(n, eps)


def test_epsilon_two_sums_every_term():
    n = 6
    b = metrology_bound(n, 2)
    assert b.k == 1
    assert b.full == sum(
        math.comb(n - 1, j - 1) * 2**j * stabilizer_state_count(n - j) for j in range(1, n + 1)
    )


def test_threshold_rounds_up_but_not_at_exact_powers():
    assert threshold_k(16, 1) == 4
    assert threshold_k(10, 1) == 4
    assert threshold_k(9, 1) == 3


def test_bound_guards():
    with pytest.raises(CountingError):
        metrology_bound(1, 1)
    with pytest.raises(CountingError):
        metrology_bound(5, 0)
    with pytest.raises(CountingError):
        metrology_bound(5, 2.5)


@pytest.mark.parametrize(
    "n, k, p, rest",
    [
        (3, 3, "YYY", None),
        (4, 2, "YZ", make_family("star", 2)),
        (5, 3, "ZYZ", make_family("path", 2)),
        (6, 4, "YYZY", make_family("star", 2)),
        (6, 2, "ZZ", make_family("cycle", 4)),
        (5, 5, "YZZYY", None),
    ],
)
def test_useful_construction(n, k, p, rest):
    s = useful_construction(n, k, p, generators_from_graph(rest) if rest else None)
    rep = classify_x_forms(s)
    assert not rep.has_bad_form
    q = qfi_stabilizer(s).value
    assert q >= k * k
    assert qfi_pure(stabilizer_state_vector(s)) == pytest.approx(q)


def test_useful_construction_errors():
    with pytest.raises(CountingError):
        useful_construction(3, 2, "YX", StabilizerGroup.from_strings("X"))
    with pytest.raises(CountingError):
        useful_construction(3, 2, "YY", None)
    with pytest.raises(CountingError):
        useful_construction(3, 4, "YYYY")
