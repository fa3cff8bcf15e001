import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4mackey.checks import green_suite, monomial_window
from c4mackey.degree import RODegree, parse_degree
from c4mackey.green import (
    LEVELS,
    GreenElement,
    GreenError,
    NotInRing,
    OutsideClosure,
    ParseError,
    bockstein,
    degree_of,
    localize,
    mul,
    parse,
    res,
    tr,
    weyl,
)


def el(level, e):
    return GreenElement(LEVELS[level], frozenset([e]))


class TestParse:
    def test_gold_relation(self):
        assert parse("as^2*ul").is_zero()

    def test_cancellation(self):
        assert str(parse("us*(ul/us^3)")) == "ul/us^2"

    def test_x01_degree(self):
        assert degree_of(parse("x[0,1]")) == degree_of(parse("as^2")) + degree_of(parse("th/al"))

    def test_sums_cancel_mod_two(self):
        assert parse("us+us").is_zero()
        assert str(parse("us+ul")) == "ul + us"

    def test_syntax_error_has_position(self):
        with pytest.raises(ParseError) as err:
            parse("as^")
        assert err.value.pos == 3

    def test_unknown_symbol(self):
        with pytest.raises(ParseError):
            parse("zz")

    def test_not_in_ring(self):
        with pytest.raises(NotInRing):
            parse("us^-1")

    def test_levels_cannot_mix(self):
        with pytest.raises(ParseError):
            parse("bus*us")


class TestMul:
    def test_theta_times_x(self):
        assert mul(parse("th"), parse("x[0,1]")).is_zero()

    def test_torsion_relation(self):
        assert mul(parse("ul/us"), parse("as^2/al")).is_zero()

    def test_theta_is_as_torsion_but_theta_over_al_is_not(self):
        assert mul(parse("as"), parse("th")).is_zero()
        assert not mul(parse("as"), parse("th/al")).is_zero()

    def test_us_kills_x01_but_not_x02(self):
        assert mul(parse("us"), parse("x[0,1]")).is_zero()
        assert not mul(parse("us"), parse("x[0,2]")).is_zero()

    def test_level_mismatch(self):
        with pytest.raises(GreenError):
            mul(parse("us"), parse("bus", "mid"))

    @settings(max_examples=200)
    @given(st.sampled_from(monomial_window("top", 3)), st.sampled_from(monomial_window("top", 3)))
    def test_commutative(self, a, b):
        assert mul(el("top", a), el("top", b)) == mul(el("top", b), el("top", a))

    @settings(max_examples=200)
    @given(st.sampled_from(monomial_window("top", 3)), st.sampled_from(monomial_window("top", 3)))
    def test_degree_additive(self, a, b):
        x, y = el("top", a), el("top", b)
        xy = mul(x, y)
        if not xy.is_zero():
            assert degree_of(xy) == degree_of(x) + degree_of(y)


class TestRestriction:
    def test_us(self):
        assert str(res(parse("us"))) == "bus"

    def test_as_dies(self):
        assert res(parse("as")).is_zero()

    def test_s(self):
        assert res(parse("s")) == parse("v/sq", "mid")

    def test_as2_over_al(self):
        assert res(parse("as^2/al")) == parse("v*bus^2", "mid")

    def test_middle_to_bottom(self):
        assert str(res(parse("bus", "mid"))) == "bbs"
        for text in ("sq", "v", "bal"):
            assert res(parse(text, "mid")).is_zero()

    def test_bottom_has_no_restriction(self):
        with pytest.raises(GreenError):
            res(parse("bbs", "bot"))

    @settings(max_examples=200)
    @given(st.sampled_from(monomial_window("top", 3)), st.sampled_from(monomial_window("top", 3)))
    def test_multiplicative(self, a, b):
        x, y = el("top", a), el("top", b)
        assert res(mul(x, y)) == mul(res(x), res(y))


class TestTransfer:
    def test_v(self):
        assert tr(parse("v", "mid")) == parse("x[0,1]")

    def test_sq(self):
        assert tr(parse("sq", "mid")) == parse("as*ul/us")

    def test_theta(self):
        assert tr(parse("bus^-2", "mid")) == parse("th")

    def test_frobenius_sample(self):
        assert tr(mul(res(parse("ul")), parse("v", "mid"))) == mul(parse("ul"), parse("x[0,1]"))

    def test_top_has_no_transfer(self):
        with pytest.raises(GreenError):
            tr(parse("us"))

    @pytest.mark.parametrize("text", ["v", "sq", "bus^-2", "v/bus", "bul/bus"])
    def test_res_after_tr_vanishes(self, text):
        # Weyl acts trivially on the named middle monomials, so res o tr = 1 + weyl = 0
        x = parse(text, "mid")
        assert weyl(x) == x
        try:
            assert res(tr(x)).is_zero()
        except OutsideClosure:
            pytest.skip("transfer not determined by the stated formulas")


class TestDegrees:
    def test_as(self):
        assert degree_of(parse("as")) == parse_degree("-sigma")

    def test_ul(self):
        assert degree_of(parse("ul")) == parse_degree("2-lambda")

    def test_theta(self):
        assert degree_of(parse("th")) == degree_of(tr(parse("bus^-2", "mid"))) == parse_degree("-2+2sigma")


class TestLocalize:
    def test_as_squared_dies_in_h(self):
        assert localize(parse("as^2"), "h").is_zero()

    def test_units_survive_in_h(self):
        assert str(localize(parse("ul/us^2"), "h")) == "ul/us^2"

    def test_tilde(self):
        assert localize(parse("x[0,1]"), "tilde").is_zero()
        assert not localize(parse("th*al"), "tilde").is_zero()

    def test_theta_dies_in_h(self):
        assert localize(parse("th"), "h").is_zero()


class TestBockstein:
    def test_us(self):
        assert bockstein(parse("us")) == parse("as")

    def test_al(self):
        assert bockstein(parse("al")).is_zero()

    def test_us_squared(self):
        assert bockstein(parse("us^2")).is_zero()

    def test_leibniz(self):
        assert bockstein(parse("us*al")) == parse("as*al")
        assert bockstein(parse("us^3")) == parse("as*us^2")


class TestC2Ring:
    def test_a_kills_theta(self):
        assert mul(parse("a2"), parse("th2")).is_zero()

    def test_u_cancels(self):
        assert mul(parse("u2"), parse("th2/u2")) == parse("th2")

    def test_theta_is_a_transfer(self):
        assert tr(parse("bu2^-2")) == parse("th2")

    def test_sq_sits_in_the_degree_of_a2_u2(self):
        d = degree_of(parse("sq", "mid")).to_c2()
        e = degree_of(parse("a2*u2"))
        assert (d.a, d.s) == (e.a, e.s)


def test_ring_identities_on_the_window():
    failures = green_suite(bound=3, degree_window=(3, 2, 2))
    assert {k: v for k, v in failures.items() if v} == {}
