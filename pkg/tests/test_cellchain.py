import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4mackey.cellchain import (
    dualize,
    homology,
    homology_dims,
    minimize,
    orbit_product,
    smash,
    sphere_complex,
    truncate,
)
from c4mackey.degree import RODegree, parse_degree
from c4mackey.mackey import catalog, decompose, is_isomorphic, validate


def homology_tags(C):
    return {d: decompose(homology(C, d)) for d in C.degrees if any(homology_dims(C, d))}


small = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).map(lambda t: RODegree(0, *t))


class TestOrbitProduct:
    def test_fixed_times_free_c2(self):
        assert orbit_product("C4", "C2") == ["C2"]

    def test_c2_times_c2(self):
        assert orbit_product("C2", "C2") == ["C2", "C2"]

    def test_free_times_free(self):
        assert orbit_product("e", "e") == ["e"] * 4

    @pytest.mark.parametrize("H", ["C4", "C2", "e"])
    @pytest.mark.parametrize("K", ["C4", "C2", "e"])
    def test_cardinality(self, H, K):
        size = {"C4": 1, "C2": 2, "e": 4}
        assert sum(size[o] for o in orbit_product(H, K)) == size[H] * size[K]


class TestSphereComplex:
    def test_point(self):
        C = sphere_complex(RODegree(0, 0, 0))
        assert C.degrees == [0] and C.cells(0) == ["C4"]
        assert decompose(homology(C, 0)) == ["k"]

    def test_two_sigma(self):
        assert homology_tags(sphere_complex(parse_degree("2sigma"))) == {0: ["box_k"], 1: ["box_k"], 2: ["k"]}

    def test_minus_two_sigma(self):
        assert homology_tags(sphere_complex(parse_degree("-2sigma"))) == {-2: ["pstar_L"]}

    @settings(max_examples=15, deadline=None)
    @given(small)
    def test_boundaries_square_to_zero(self, V):
        sphere_complex(V).check()

    @settings(max_examples=15, deadline=None)
    @given(small, st.integers(-6, 6))
    def test_homology_satisfies_axioms(self, V, d):
        assert validate(homology(sphere_complex(V), d)) == []


class TestSmash:
    def test_unit(self):
        C = sphere_complex(parse_degree("sigma+lambda"))
        assert homology_tags(smash(C, sphere_complex(RODegree(0, 0, 0)))) == homology_tags(C)

    def test_sigma_twice(self):
        S = sphere_complex(parse_degree("sigma"))
        assert homology_tags(smash(S, S)) == homology_tags(sphere_complex(parse_degree("2sigma")))

    def test_sigma_lambda_top(self):
        C = smash(sphere_complex(parse_degree("sigma")), sphere_complex(parse_degree("lambda")))
        assert decompose(homology(C, 3)) == ["k"]

    @settings(max_examples=10, deadline=None)
    @given(small, small)
    def test_matches_sphere_of_sum(self, V, W):
        if (V.n < 0) != (W.n < 0) and V.n and W.n or (V.m < 0) != (W.m < 0) and V.m and W.m:
            return
        lhs = smash(sphere_complex(V), sphere_complex(W))
        rhs = sphere_complex(V + W)
        for d in range(-8, 9):
            assert is_isomorphic(homology(lhs, d), homology(rhs, d))

    def test_degree_window_is_exact_inside(self):
        S = sphere_complex(parse_degree("2sigma"))
        L = sphere_complex(parse_degree("lambda"))
        full = smash(S, L)
        part = smash(S, L, degrees=(1, 4))
        for d in (2, 3):
            assert is_isomorphic(homology(part, d), homology(full, d))


class TestDualize:
    def test_sigma(self):
        assert homology_tags(dualize(sphere_complex(parse_degree("sigma")))) == {-1: ["k_minus"]}

    def test_lambda(self):
        assert decompose(homology(dualize(sphere_complex(parse_degree("lambda"))), -2)) == ["L"]

    @pytest.mark.parametrize("V", ["sigma", "lambda", "2sigma+lambda", "-sigma+lambda"])
    def test_involution(self, V):
        C = sphere_complex(parse_degree(V))
        assert homology_tags(dualize(dualize(C))) == homology_tags(C)


class TestHomology:
    def test_point(self):
        assert is_isomorphic(homology(sphere_complex(RODegree(0, 0, 0)), 0), catalog("k"))

    def test_rho_minus_one_middle(self):
        assert decompose(homology(sphere_complex(parse_degree("sigma+lambda")), 2)) == ["Q"]

    def test_rho_minus_one_bottom(self):
        assert decompose(homology(sphere_complex(parse_degree("sigma+lambda")), 0)) == ["box_k"]


class TestTruncate:
    def test_reversed_bounds(self):
        with pytest.raises(ValueError):
            truncate(sphere_complex(parse_degree("sigma")), 2, 1)

    def test_full_range(self):
        C = sphere_complex(parse_degree("2sigma+lambda"))
        T = truncate(C, min(C.degrees), max(C.degrees))
        assert homology_tags(T) == homology_tags(C)

    @pytest.mark.parametrize("d", range(0, 5))
    def test_single_degree(self, d):
        C = sphere_complex(parse_degree("2sigma+lambda"))
        assert is_isomorphic(homology(truncate(C, d, d), d), homology(C, d))


@pytest.mark.parametrize("V", ["2sigma+lambda", "-sigma+2lambda", "sigma-lambda"])
def test_minimize_preserves_homology(V):
    C = sphere_complex(parse_degree(V))
    M = minimize(smash(C, sphere_complex(parse_degree("sigma"))))
    assert M.total_size() <= smash(C, sphere_complex(parse_degree("sigma"))).total_size()
    for d in range(-6, 7):
        assert is_isomorphic(homology(M, d), homology(smash(C, sphere_complex(parse_degree("sigma"))), d))
