import pytest

from c4mackey.bc4sigma2 import (
    E1_ANCHORS,
    C2_DICTIONARY,
    FIGURES,
    OracleUnstable,
    bockstein_epsilons,
    bottom_oracle,
    build_complex,
    c2_presentation_dims,
    cell_spec,
    check_anchor,
    cohomology_at,
    d1_apply,
    d1_matrices,
    d2_total,
    e1_entry,
    e1_page,
    e2_totals,
    e_rho_image,
    figure_degree,
    guard_band,
    localization_image,
    middle_oracle,
    nonflat_ingredients,
    oracle_dims,
    presentation,
    printed_middle_relations,
    quotient_generator_checks,
    verify_degree,
)
from c4mackey.cellchain import homology_dims
from c4mackey.degree import C2Degree, RODegree, parse_degree
from c4mackey.mackey import decompose, validate


class TestCellSpec:
    def test_first_period(self):
        cells = cell_spec(3)
        assert [(c.filtration, c.orbit, str(c.rep)) for c in cells] == [
            (0, "C4", "0"),
            (1, "C4", "σ"),
            (2, "C2", "λ"),
            (3, "C2", "1+λ"),
        ]

    def test_point_only(self):
        assert [c.orbit for c in cell_spec(0)] == ["C4"]

    def test_second_period_shifts_by_rho(self):
        cells = cell_spec(7)
        rho = parse_degree("rho")
        for low, high in zip(cells[:4], cells[4:]):
            assert high.orbit == low.orbit
            assert high.rep == low.rep + rho

    def test_negative(self):
        with pytest.raises(ValueError):
            cell_spec(-1)


class TestBuildComplex:
    def test_underlying_space_is_rp_infinity(self):
        C = build_complex(8)
        for d in range(0, 8):
            assert homology_dims(C, d)[2] == 1

    def test_boundaries_square_to_zero(self):
        build_complex(6).check()

    def test_guard_band(self):
        assert guard_band(RODegree(0, 0, 0)) == 16
        assert guard_band(RODegree(-3, 1, 2)) == 32


class TestCohomology:
    def test_two_sigma(self):
        M, stable = cohomology_at(parse_degree("2sigma"))
        assert stable and M.dims[0] == 1

    def test_zero(self):
        M, stable = cohomology_at(RODegree(0, 0, 0))
        assert stable and decompose(M) == ["k"]

    def test_rho(self):
        M, stable = cohomology_at(parse_degree("rho"))
        assert stable and M.dims == oracle_dims(parse_degree("rho"))
        assert validate(M) == []

    def test_short_skeleton_is_flagged(self):
        _, stable = cohomology_at(parse_degree("3+2sigma+lambda"), F=1)
        assert not stable


class TestE1:
    def test_x01_over_us2(self):
        ok, label = check_anchor(E1_ANCHORS[0])
        assert ok and E1_ANCHORS[0].expected == "x[0,1]/us^2"

    def test_two_two_triple(self):
        e = e1_entry(figure_degree("integer", 2), 2)
        assert e.doubled
        assert e.labels() == ("v", "v k^2", "1/bbl k^2")

    @pytest.mark.parametrize("anchor", E1_ANCHORS, ids=lambda a: f"{a.figure}-{a.x}-{a.y}-{a.level}")
    def test_printed_entries(self, anchor):
        ok, label = check_anchor(anchor)
        assert ok, label

    def test_figure_offsets(self):
        for name, (base, shift) in FIGURES.items():
            assert figure_degree(name, shift) == base

    def test_render_has_three_levels(self):
        base = figure_degree("integer", 0)
        table = e1_page([base + RODegree(x) for x in range(0, 7)], 6)
        text = table.render(base)
        for level in ("top", "mid", "bot"):
            assert level in text
        assert "\\begin{tikzpicture}" in table.render(base, "tex")


class TestDifferentials:
    def test_d1_row_one_to_two(self):
        top, mid, bot = d1_matrices(parse_degree("sigma"), 1)
        assert top.to_dense() == [[1]]
        assert mid.to_dense() == [[1], [1]]

    def test_e2_at_two_sigma(self):
        star = parse_degree("2sigma")
        assert e2_totals(star) == (2, 0, 1)
        assert d2_total(star) == 1
        assert oracle_dims(star) == (1, 0, 1)

    def test_d1_apply_matches_totals(self):
        star = parse_degree("2sigma")
        table = e1_page([star + RODegree(x) for x in range(-2, 3)], 8)
        assert d1_apply(table).totals(star) == e2_totals(star)


class TestOracle:
    def test_two_sigma(self):
        assert oracle_dims(parse_degree("2sigma"))[0] == 1

    def test_sigma_middle(self):
        assert oracle_dims(parse_degree("sigma"))[1] == 0

    @pytest.mark.parametrize("n", range(0, 8))
    def test_bottom_is_one_in_integer_degrees(self, n):
        assert oracle_dims(RODegree(n, 0, 0))[2] == 1
        assert bottom_oracle(RODegree(n, 0, 0)) == 1

    def test_negative_dimension_has_empty_bottom(self):
        assert bottom_oracle(RODegree(-1, 0, 0)) == 0

    def test_cutoff_too_small(self):
        with pytest.raises(OracleUnstable):
            oracle_dims(parse_degree("2sigma"), cutoff=0)

    def test_middle_via_c2(self):
        for star in ("0", "sigma", "lambda", "2+lambda", "-1+2sigma-lambda"):
            d = parse_degree(star)
            assert middle_oracle(d) == oracle_dims(d)[1]


class TestC2Model:
    def test_degree_zero(self):
        assert c2_presentation_dims(C2Degree(0, 0)) == 1

    def test_degree_sigma2(self):
        # the unit times a2 and the class c
        assert c2_presentation_dims(C2Degree(0, 1)) == 2

    def test_dictionary_covers_middle_generators(self):
        assert set(presentation().middle_generators) <= set(C2_DICTIONARY)


class TestPresentation:
    def test_named_relations_exist(self):
        P = presentation()
        names = {r.name for r in P.relations(1)}
        assert {"a_s^2 kills e^u", "e^u e^u", "e^a e^a"} <= names

    def test_every_relation_is_homogeneous(self):
        assert presentation().homogeneity_failures(4) == []

    def test_localization(self):
        assert presentation().localization_failures(4) == []

    def test_generator_images(self):
        assert localization_image(("e^u", 0)) == frozenset({(0, 1, 0, 1, 1)})
        assert localization_image(("e^l", 0)) == frozenset({(0, 0, 0, 1, 2)})
        assert localization_image(("e^a", 0)) == frozenset({(0, 1, 0, 1, 3), (0, 1, 1, 0, 1)})

    def test_bockstein_forces_both_epsilons(self):
        assert bockstein_epsilons() == [(1, 1)]
        assert len(e_rho_image()) == 4

    def test_middle_and_bottom(self):
        P = presentation()
        assert P.middle_failures(4) == []
        assert P.bottom_failures() == []

    def test_printed_middle_relation_for_e_u(self):
        rels = printed_middle_relations(1)
        assert any(r.name == "v/bal^i kills E^u" for r in rels)

    def test_quotient_generators(self):
        assert all(quotient_generator_checks().values())

    def test_report(self):
        assert presentation().report(bound=2)["ok"]


def test_nonflat_ingredients():
    ings = nonflat_ingredients()
    assert len(ings) == 3
    assert all(i.ok for i in ings), [i.detail for i in ings if not i.ok]


@pytest.mark.parametrize("star", ["2sigma", "sigma", "0", "3", "-1+lambda", "1-sigma+lambda"])
def test_verify_degree(star):
    row = verify_degree(parse_degree(star))
    assert row["stable"] and row["match"], row["checks"]
