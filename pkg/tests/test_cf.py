import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mkbs.engine import cf_all, cf_any, cf_parallel, cf_rule

cfs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
cf_lists = st.lists(cfs, min_size=1, max_size=8)


def test_rule_combination_basic_numbers():
    assert cf_rule(0.8, 0.5) == 0.4
    assert cf_rule(0.0, 0.9) == 0.0


@given(cfs)
def test_rule_identity(x):
    assert cf_rule(1.0, x) == x


def test_conjunction_and_disjunction():
    assert cf_all([0.9, 0.8]) == 0.8
    assert cf_all([0.7]) == 0.7
    assert cf_all([0.5, 0.0, 1.0]) == 0.0
    assert cf_any([0.8, 0.4]) == 0.8
    assert cf_any([0.0, 0.0]) == 0.0
    assert cf_any([0.3]) == 0.3


def test_empty_combination_rejected():
    with pytest.raises(ValueError):
        cf_all([])
    with pytest.raises(ValueError):
        cf_any([])


def test_parallel_example():
    assert abs(cf_parallel(0.56, 0.3) - 0.692) < 1e-12


@given(cfs)
def test_parallel_identity_and_absorber_exact(x):
    assert cf_parallel(x, 0.0) == x
    assert cf_parallel(0.0, x) == x
    assert cf_parallel(1.0, x) == 1.0
    assert cf_parallel(x, 1.0) == 1.0


@given(cfs, cfs)
def test_parallel_bounds_and_commutativity(a, b):
    r = cf_parallel(a, b)
    assert max(a, b) - 1e-12 <= r <= 1.0
    assert abs(r - cf_parallel(b, a)) < 1e-12


@given(cfs, cfs, cfs)
def test_parallel_associativity(a, b, c):
    left = cf_parallel(cf_parallel(a, b), c)
    right = cf_parallel(a, cf_parallel(b, c))
    assert abs(left - right) < 1e-12


@given(cf_lists, st.data())
def test_monotone_in_every_argument(values, data):
    i = data.draw(st.integers(min_value=0, max_value=len(values) - 1))
    bumped = list(values)
    bumped[i] = data.draw(st.floats(min_value=values[i], max_value=1.0, allow_nan=False))
    assert cf_all(bumped) >= cf_all(values)
    assert cf_any(bumped) >= cf_any(values)


@given(cfs, cfs)
def test_rule_product_stays_in_range(a, b):
    r = cf_rule(a, b)
    assert 0.0 <= r <= 1.0 and math.isfinite(r)
