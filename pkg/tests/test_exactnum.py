from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmlevels.exactnum import INF, ext, ext_add, ext_compare, format_ext, parse_ext, parse_unit, unit

finite = st.fractions(min_value=0, max_value=1000, max_denominator=50)
extended = st.one_of(finite, st.just(INF))


def test_add_examples():
    assert ext_add(Fr(3, 2), Fr(3, 2)) == 3
    assert ext_add(Fr(2), INF) is INF
    assert ext_add(Fr(1, 3), Fr(1, 6)) == Fr(1, 2)


def test_compare_examples():
    assert ext_compare(Fr(5), INF) == -1
    assert ext_compare(Fr(1, 2), Fr(2, 4)) == 0
    assert ext_compare(INF, INF) == 0


@given(extended, extended, extended)
def test_add_laws(a, b, c):
    assert ext_add(a, b) == ext_add(b, a)
    assert ext_add(ext_add(a, b), c) == ext_add(a, ext_add(b, c))
    if ext_compare(a, b) <= 0:
        assert ext_compare(ext_add(a, c), ext_add(b, c)) <= 0


@given(extended, extended, extended)
def test_compare_total_order(a, b, c):
    assert ext_compare(a, b) == -ext_compare(b, a)
    if ext_compare(a, b) <= 0 and ext_compare(b, c) <= 0:
        assert ext_compare(a, c) <= 0
    if a is not INF and b is not INF:
        diff = a - b
        assert ext_compare(a, b) == (diff > 0) - (diff < 0)


@given(finite)
def test_inf_is_top(a):
    assert a < INF and INF > a and not INF < a
    assert ext_compare(a, INF) == -1


@given(extended)
def test_text_roundtrip(a):
    assert parse_ext(format_ext(a)) == a


def test_text_forms():
    assert format_ext(Fr(6, 4)) == "3/2"
    assert format_ext(Fr(4)) == "4"
    assert format_ext(INF) == "inf"
    assert parse_ext("10/4") == Fr(5, 2)


@pytest.mark.parametrize("bad", ["-1", "1/0", "abc", "1.5", "", "1/-2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_ext(bad)


def test_unit_range():
    assert parse_unit("1") == 1
    with pytest.raises(ValueError):
        parse_unit("3/2")
    with pytest.raises(ValueError):
        unit("inf")


def test_no_floats():
    with pytest.raises(TypeError):
        ext(0.5)
    with pytest.raises(TypeError):
        ext(True)
