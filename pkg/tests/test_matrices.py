"""Exact matrices, minors, and positivity checks."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from tnncells.errors import DomainError
from tnncells.matrices import (
    Matrix,
    MinorFamily,
    MinorIndex,
    all_minors,
    determinant,
    initial_minor_index,
    initial_minors,
    is_tnn_bruteforce,
    is_tp,
    iter_minor_indices,
    load_matrix_text,
    matrix_from_csv,
    matrix_from_json,
    matrix_to_json,
    minor,
    minor_count,
)


def rational_matrix(m, p, lo=-5, hi=5):
    entry = st.integers(lo, hi).map(Fraction)
    return st.lists(
        st.lists(entry, min_size=p, max_size=p), min_size=m, max_size=m
    ).map(Matrix.from_rows)


square_matrices = st.integers(2, 4).flatmap(lambda n: rational_matrix(n, n))
any_matrices = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda mp: rational_matrix(*mp)
)


class TestMinorIndex:
    def test_roundtrip_through_str(self):
        ix = MinorIndex((1, 3), (2, 4))
        assert MinorIndex.parse(str(ix)) == ix
        assert str(ix) == "[1,3|2,4]"

    def test_roundtrip_through_json(self):
        ix = MinorIndex((2,), (5,))
        assert MinorIndex.from_json(ix.to_json()) == ix

    def test_rows_must_increase(self):
        with pytest.raises(DomainError):
            MinorIndex((3, 1), (1, 2))

    def test_sizes_must_match(self):
        with pytest.raises(DomainError):
            MinorIndex((1,), (1, 2))

    def test_canonical_order(self):
        seq = list(iter_minor_indices(2, 2))
        assert [str(ix) for ix in seq] == [
            "[1|1]", "[1|2]", "[2|1]", "[2|2]", "[1,2|1,2]",
        ]


def test_minor_count_closed_form():
    assert minor_count(4, 4) == 69
    assert minor_count(3, 3) == 19
    assert minor_count(2, 3) == 9
    assert all(
        minor_count(m, p) == sum(1 for _ in iter_minor_indices(m, p))
        for m in range(1, 5)
        for p in range(1, 5)
    )


@given(square_matrices)
def test_determinant_matches_leibniz(M):
    assert determinant(M) == oracles.leibniz_det(M.rows)


@given(any_matrices)
def test_every_minor_matches_leibniz(M):
    for ix in iter_minor_indices(M.m, M.p):
        assert minor(M, ix) == oracles.leibniz_minor(M.rows, ix.rows, ix.cols)


@given(any_matrices)
def test_minors_respect_transposition(M):
    T = M.transpose()
    for ix in iter_minor_indices(M.m, M.p):
        assert minor(M, ix) == minor(T, ix.transposed())


def test_initial_minor_layout():
    ix = initial_minor_index(3, 2)
    assert ix == MinorIndex((2, 3), (1, 2))
    M = Matrix.from_rows([[1, 2], [3, 4]])
    labels = [ix for ix, _ in initial_minors(M)]
    assert labels[0] == MinorIndex((1,), (1,))
    assert len(labels) == 4


@given(square_matrices)
def test_is_tp_agrees_with_all_minors_oracle(M):
    oracle = all(v > 0 for _, v in all_minors(M))
    assert is_tp(M) == oracle


def test_is_tp_examples():
    assert is_tp(Matrix.from_rows([[1, 1], [1, 2]]))
    assert not is_tp(Matrix.from_rows([[1, 1], [1, 1]]))


def test_is_tp_rejects_rectangles():
    with pytest.raises(DomainError):
        is_tp(Matrix.from_rows([[1, 2, 3], [4, 5, 6]]))


@given(any_matrices)
def test_tnn_bruteforce_witness_is_negative(M):
    ok, witness = is_tnn_bruteforce(M)
    if ok:
        assert witness is None
        assert all(v >= 0 for _, v in all_minors(M))
    else:
        assert minor(M, witness) < 0


def test_tnn_zero_matrix():
    assert is_tnn_bruteforce(Matrix.from_rows([[0, 0], [0, 0]])) == (True, None)


class TestSerialization:
    def test_json_roundtrip(self):
        M = Matrix.from_rows([[Fraction(1, 2), 3], [0, -2]])
        assert matrix_from_json(matrix_to_json(M)).equals(M)

    def test_csv(self):
        M = matrix_from_csv("1, 2\n3/2, 4\n")
        assert M.entry(2, 1) == Fraction(3, 2)

    def test_load_dispatches_on_shape(self):
        as_json = load_matrix_text('{"m": 1, "p": 2, "entries": [["1", "2"]]}')
        as_csv = load_matrix_text("1,2")
        assert as_json.equals(as_csv)

    def test_bare_array_gets_format_hint(self):
        with pytest.raises(DomainError, match="not a bare array"):
            load_matrix_text("[[1, 2], [3, 4]]")

    def test_family_json_roundtrip(self):
        fam = MinorFamily(
            2, 2, frozenset({MinorIndex((1,), (2,)), MinorIndex((1, 2), (1, 2))})
        )
        assert MinorFamily.from_json(fam.to_json()) == fam

    def test_bad_json_rejected(self):
        with pytest.raises(DomainError):
            matrix_from_json({"m": 1})
