import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4mackey.gf2 import (
    GF2Matrix,
    Quotient,
    bits_to_int,
    image_basis,
    int_to_bits,
    kernel_basis,
    quotient_map,
    rank,
    solve,
)


def dense(rows):
    return GF2Matrix.from_dense(rows)


def brute_rank(rows):
    """Textbook row reduction over lists, independent of the bitset echelon."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


class TestRank:
    def test_identity(self):
        assert rank(GF2Matrix.identity(2)) == 2

    def test_all_ones(self):
        assert rank(dense([[1, 1], [1, 1]])) == 1

    def test_zero(self):
        assert rank(GF2Matrix.zeros(3, 4)) == 0

    @given(matrices)
    def test_matches_row_reduction(self, rows):
        assert rank(dense(rows)) == brute_rank(rows)

    @given(matrices)
    def test_transpose_invariant(self, rows):
        M = dense(rows)
        assert rank(M) == rank(M.transpose())


class TestKernelImage:
    def test_identity_kernel_empty(self):
        assert kernel_basis(GF2Matrix.identity(3)) == []

    def test_zero_kernel_full(self):
        assert len(kernel_basis(GF2Matrix.zeros(3, 3))) == 3

    def test_rank_one_kernel(self):
        ker = kernel_basis(dense([[1, 1], [0, 0]]))
        assert [int_to_bits(v, 2) for v in ker] == [(1, 1)]

    def test_identity_image(self):
        assert sorted(int_to_bits(v, 2) for v in image_basis(GF2Matrix.identity(2))) == [(0, 1), (1, 0)]

    def test_zero_image(self):
        assert image_basis(GF2Matrix.zeros(2, 2)) == []

    def test_all_ones_image(self):
        assert [int_to_bits(v, 2) for v in image_basis(dense([[1, 1], [1, 1]]))] == [(1, 1)]

    @given(matrices)
    def test_rank_nullity(self, rows):
        M = dense(rows)
        assert rank(M) + len(kernel_basis(M)) == M.ncols

    @given(matrices)
    def test_kernel_vectors_are_killed(self, rows):
        M = dense(rows)
        for v in kernel_basis(M):
            assert M.apply(v) == 0

    @given(matrices)
    def test_image_dimension_is_rank(self, rows):
        M = dense(rows)
        assert len(image_basis(M)) == rank(M)


class TestSolve:
    def test_identity(self):
        assert int_to_bits(solve(GF2Matrix.identity(2), (1, 0)), 2) == (1, 0)

    def test_zero_matrix_has_no_solution(self):
        assert solve(GF2Matrix.zeros(2, 2), (1, 0)) is None

    def test_rhs_too_long(self):
        with pytest.raises(ValueError):
            solve(GF2Matrix.identity(2), 0b100)

    @given(matrices, st.integers(0, 2**7 - 1))
    def test_round_trip(self, rows, x):
        M = dense(rows)
        x &= (1 << M.ncols) - 1
        b = M.apply(x)
        y = solve(M, b)
        assert y is not None and M.apply(y) == b

    @given(matrices, st.integers(0, 2**7 - 1))
    def test_none_only_off_the_image(self, rows, b):
        M = dense(rows)
        b &= (1 << M.nrows) - 1
        solvable = brute_rank(rows) == brute_rank([r + [int_to_bits(b, M.nrows)[i]] for i, r in enumerate(rows)])
        assert (solve(M, b) is not None) == solvable


class TestQuotient:
    def test_nothing_divided_out(self):
        P, d = quotient_map([(1, 0), (0, 1)], [])
        assert d == 2 and P.is_identity()

    def test_equal_subspaces(self):
        _, d = quotient_map([(1, 0), (0, 1)], [(1, 0), (0, 1)])
        assert d == 0

    def test_line_in_three_space(self):
        P, d = quotient_map([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1, 1, 0)])
        assert d == 2
        assert P.apply(bits_to_int((1, 1, 0))) == 0
        assert rank(P) == 2

    def test_subspace_must_be_contained(self):
        with pytest.raises(ValueError):
            quotient_map([(1, 0, 0)], [(0, 1, 0)])

    def test_coords_reject_vectors_outside(self):
        Q = Quotient([0b001], [])
        with pytest.raises(ValueError):
            Q.coords(0b010)

    @settings(max_examples=50)
    @given(st.lists(st.integers(0, 63), max_size=6), st.lists(st.integers(0, 63), max_size=6))
    def test_quotient_dimension(self, W, extra):
        V = W + extra
        Q = Quotient(V, W)
        assert Q.dim == len(image_basis(GF2Matrix.from_columns(V, 6))) - len(
            image_basis(GF2Matrix.from_columns(W, 6))
        )
        for w in W:
            assert Q.coords(w) == 0


class TestMatrixOps:
    @given(matrices)
    def test_dense_round_trip(self, rows):
        assert dense(rows).to_dense() == rows

    @given(matrices)
    def test_numpy_round_trip(self, rows):
        M = dense(rows)
        assert GF2Matrix.from_numpy(M.to_numpy()) == M

    def test_product_and_power(self):
        J = dense([[0, 1], [1, 0]])
        assert (J @ J).is_identity()
        assert J.power(3) == J
