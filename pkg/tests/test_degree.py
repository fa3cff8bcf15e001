import pytest
from hypothesis import given
from hypothesis import strategies as st

from c4mackey.degree import C2Degree, RODegree, parse_degree, window


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", RODegree(0, 0, 0)),
        ("-2+2sigma", RODegree(-2, 2, 0)),
        ("rho", RODegree(1, 1, 1)),
        ("3-σ-λ", RODegree(3, -1, -1)),
        ("1+2*lambda", RODegree(1, 0, 2)),
        ("2sigma", RODegree(0, 2, 0)),
        ("-rho+sigma", RODegree(-1, 0, -1)),
    ],
)
def test_parse(text, expected):
    assert parse_degree(text) == expected


@pytest.mark.parametrize("text", ["", "sigma sigma", "2+", "tau", "1++2"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_degree(text)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_format_round_trip(a, n, m):
    d = RODegree(a, n, m)
    assert parse_degree(str(d)) == d
    assert parse_degree(d.format(unicode=False)) == d


def test_dimension_and_restriction():
    d = RODegree(1, 2, 3)
    assert d.dim == 1 + 2 + 6
    assert d.to_c2() == C2Degree(3, 6)


def test_window_size():
    assert len(list(window(6, 3, 3))) == 637
