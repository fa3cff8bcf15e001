import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from c4mackey.cellchain import homology, sphere_complex
from c4mackey.degree import RODegree
from c4mackey.mackey import (
    TAGS,
    MackeyF2,
    catalog,
    decompose,
    direct_sum,
    direct_sum_all,
    fingerprint,
    is_isomorphic,
    restrict_to_C2,
    validate,
)


def entries(M, name):
    return getattr(M, name).to_dense()


class TestCatalog:
    @pytest.mark.parametrize("tag", TAGS)
    def test_every_tag_validates(self, tag):
        assert validate(catalog(tag)) == []

    def test_constant(self):
        k = catalog("k")
        assert k.dims == (1, 1, 1)
        assert entries(k, "res42") == [[1]] and entries(k, "res21") == [[1]]
        assert entries(k, "tr24") == [[0]] and entries(k, "tr12") == [[0]]

    def test_pstar_L(self):
        M = catalog("pstar_L")
        assert M.dims == (1, 1, 1)
        assert entries(M, "tr24") == [[1]] and entries(M, "res42") == [[0]]
        assert entries(M, "res21") == [[1]] and entries(M, "tr12") == [[0]]

    def test_box_k(self):
        assert catalog("box_k").dims == (1, 0, 0)

    def test_unknown_tag(self):
        with pytest.raises(KeyError):
            catalog("nope")


class TestValidate:
    def test_both_composites_one_violates(self):
        bad = MackeyF2.build(1, 1, 0, res42=[[1]], tr24=[[1]])
        assert "res42 o tr24 = 1 + weyl_mid" in validate(bad)

    def test_weyl_on_mid_must_square_to_one(self):
        bad = MackeyF2.build(0, 2, 0, weyl_mid=[[0, 1], [0, 0]])
        assert "weyl_mid^2 = id" in validate(bad)

    def test_weyl_bot_order_four(self):
        cyc = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
        bad = MackeyF2.build(0, 0, 3, weyl_bot=cyc)
        assert "weyl_bot^4 = id" in validate(bad)


class TestDirectSum:
    def test_zero_is_neutral(self):
        k = catalog("k")
        assert direct_sum(k, MackeyF2.zero()) == k

    def test_dims_add(self):
        assert direct_sum(catalog("k"), catalog("box_k")).dims == (2, 1, 1)

    @given(st.lists(st.sampled_from(TAGS), min_size=1, max_size=4))
    def test_sums_stay_valid(self, tags):
        assert validate(direct_sum_all(catalog(t) for t in tags)) == []


class TestRestriction:
    def test_constant(self):
        C = restrict_to_C2(catalog("k"))
        assert (C.top_dim, C.bot_dim) == (1, 1)
        assert C.res.to_dense() == [[1]] and C.tr.to_dense() == [[0]]

    def test_box_k_vanishes(self):
        C = restrict_to_C2(catalog("box_k"))
        assert (C.top_dim, C.bot_dim) == (0, 0)

    def test_L(self):
        C = restrict_to_C2(catalog("L"))
        assert C.res.to_dense() == [[0]] and C.tr.to_dense() == [[1]]

    @pytest.mark.parametrize("tag", TAGS)
    def test_restriction_validates(self, tag):
        assert restrict_to_C2(catalog(tag)).validate() == []


class TestDecompose:
    def test_single(self):
        assert decompose(catalog("L")) == ["L"]

    def test_sum(self):
        assert decompose(direct_sum(catalog("box_k"), catalog("k"))) == ["k", "box_k"]

    def test_sphere_homology_spot(self):
        C = sphere_complex(RODegree(0, 1, -2))
        assert decompose(homology(C, -3)) == ["L"]

    def test_unidentified(self):
        M = MackeyF2.build(1, 0, 1)
        assert decompose(M) == "unidentified"

    def test_zero(self):
        assert decompose(MackeyF2.zero()) == []

    @given(st.lists(st.sampled_from(TAGS), min_size=1, max_size=5))
    def test_recovers_summands(self, tags):
        order = {t: i for i, t in enumerate(TAGS)}
        M = direct_sum_all(catalog(t) for t in tags)
        assert decompose(M) == sorted(tags, key=order.__getitem__)


def test_fingerprint_separates_small_sums():
    """Distinct multisets of catalog functors of total dimension at most 8 never collide."""
    seen = {}
    sizes = {t: sum(catalog(t).dims) for t in TAGS}
    for r in range(0, 5):
        for combo in itertools.combinations_with_replacement(TAGS, r):
            if sum(sizes[t] for t in combo) > 8:
                continue
            fp = fingerprint(direct_sum_all(catalog(t) for t in combo) if combo else MackeyF2.zero())
            assert seen.setdefault(fp, combo) == combo


class TestIsomorphism:
    @pytest.mark.parametrize("tag", TAGS)
    def test_reflexive(self, tag):
        assert is_isomorphic(catalog(tag), catalog(tag))

    def test_k_versus_L(self):
        assert not is_isomorphic(catalog("k"), catalog("L"))

    def test_Q_versus_Q_sharp(self):
        assert not is_isomorphic(catalog("Q"), catalog("Q_sharp"))

    def test_summand_order_irrelevant(self):
        a = direct_sum(catalog("k"), catalog("L"))
        b = direct_sum(catalog("L"), catalog("k"))
        assert is_isomorphic(a, b)


def test_json_round_trip():
    M = direct_sum(catalog("Q"), catalog("k_minus"))
    data = json.loads(M.to_json(tags=decompose(M)))
    assert data["tags"] == decompose(M)
    del data["tags"]
    assert MackeyF2.from_dict(data) == M
