import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from chorded_cycles.bounds import (
    BoundsRow,
    bounds_row,
    bounds_table,
    counting_lower,
    log_lower,
    root_ratio,
    table_csv,
    table_json,
    theorem2_upper,
)
from chorded_cycles.construction import PreconditionError, construct


@pytest.mark.parametrize("n,v", [(17, 4), (6, 3), (10**6, 20), (2, 0), (3, 1), (5, 2)])
def test_log_lower(n, v):
    assert log_lower(n) == v


@given(st.integers(2, 10**9))
def test_log_lower_is_ceiling(n):
    e = log_lower(n)
    assert 2**e >= n - 1 and (e == 0 or 2 ** (e - 1) < n - 1)


def test_counting_lower_examples():
    assert counting_lower(17, 2) == 2
    c = counting_lower(10**6, 2)
    assert comb(c, 2) * 16 >= 10**6 - 2 > comb(c - 1, 2) * 16
    assert c == 355


@given(st.integers(2, 5), st.integers(6, 10**6))
def test_counting_lower_monotone(k, n):
    assert counting_lower(n, k) <= counting_lower(n + 1, k)


def test_counting_lower_bounded_by_exact_values():
    for n, exact in {6: 3, 7: 3, 8: 4}.items():
        assert counting_lower(n, 2) <= exact


def test_theorem2_upper():
    assert theorem2_upper(16, 2) == 12
    assert theorem2_upper(256, 2) == 36
    for k in (2, 3, 4):
        assert theorem2_upper((k + 2) ** k, k) == k * (k + 2) + k * k
    with pytest.raises(PreconditionError):
        theorem2_upper(15, 2)


def test_root_ratio():
    assert root_ratio(9, 16, 2) == "2.250000"
    assert root_ratio(1, 2, 2) == "0.707106"
    assert root_ratio(3, 27, 3) == "1.000000"


def test_row_16_2_sandwich():
    row = bounds_row(16, 2)
    assert (row.log_lower, row.constructed_count, row.theorem2_upper) == (4, 9, 12)
    assert row.flags == []


def test_row_with_exact_value():
    row = bounds_row(6, 2, exact=3)
    assert row.exact >= row.log_lower == 3
    assert row.theorem2_upper is None and row.constructed_count is None
    assert row.flags == []


def test_row_flags_bad_exact():
    assert "exact<lower" in bounds_row(6, 2, exact=2).flags
    assert "exact>constructed" in bounds_row(16, 2, exact=10).flags


def test_empty_table():
    assert bounds_table([]) == []
    assert table_csv([]).strip() == "n,k,log_lower,counting_lower,theorem2_upper,constructed_count,exact,ratio,flags"


def test_table_emitters():
    rows = bounds_table([(16, 2), (6, 2, 3)])
    text = table_csv(rows).splitlines()
    assert text[1] == "16,2,4,2,12,9,,2.250000,"
    assert text[2] == "6,2,3,2,,,3,,"
    doc = json.loads(table_json(rows))
    assert doc["counting_lower"] == "surrogate"
    assert list(doc["rows"][0]) == ["n", "k", "log_lower", "counting_lower", "theorem2_upper",
                                    "constructed_count", "exact", "ratio", "flags"]


@pytest.mark.parametrize("k", [2, 3])
def test_sandwich_and_budget_identity(k):
    for n in range((k + 2) ** k, (k + 2) ** k + 50):
        full = construct(n, k)
        b = full.plan.b
        c = full.chord_count
        assert log_lower(n) <= c and counting_lower(n, k) <= c <= theorem2_upper(n, k) + 1
        assert Fraction(c, b) <= k + Fraction(k * k, b) + 1
