"""Entrywise deletion and restoration sweeps, the TNN test, and T_C."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tnncells.cauchon import (
    build_TC,
    delete_step,
    deleting_derivations,
    ones_TC,
    restoration,
    restoration_stages,
    restore_step,
    sampled_vanishing_family,
    seed_matrix,
    step_indices,
    symbolic_TC,
    tnn_test,
    vanishing_family,
    white_variable,
    zero_pattern,
)
from tnncells.diagrams import CauchonDiagram, enumerate_diagrams
from tnncells.errors import DomainError
from tnncells.matrices import (
    Matrix,
    MinorIndex,
    all_minors,
    is_tnn_bruteforce,
    iter_minor_indices,
    minor,
)
from tnncells.scalars import QQ, RationalFunctionDomain


DEMO = CauchonDiagram.from_ascii(".#.\n##.\n...")


def rational_matrix(m, p, lo=-4, hi=4):
    entry = st.integers(lo, hi).map(Fraction)
    return st.lists(
        st.lists(entry, min_size=p, max_size=p), min_size=m, max_size=m
    ).map(Matrix.from_rows)


any_matrices = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda mp: rational_matrix(*mp)
)


def test_step_order_is_lexicographic():
    assert step_indices(2, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_single_step_touches_strict_northwest_only():
    M = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    out = delete_step(M, 3, 3)
    assert out.rows[2] == M.rows[2]
    assert all(out.entry(i, 3) == M.entry(i, 3) for i in (1, 2))
    assert out.entry(1, 1) == Fraction(1) - Fraction(3, 9) * 7


def test_zero_pivot_step_is_identity():
    M = Matrix.from_rows([[1, 2], [3, 0]])
    assert delete_step(M, 2, 2).equals(M)
    assert restore_step(M, 2, 2).equals(M)


def test_restoration_worked_example_stage_by_stage():
    seed = Matrix.from_rows([[1, -1, 1], [0, 2, 1], [1, 1, 1]])
    after = {ix: stage for ix, stage in restoration_stages(seed)}
    expect = {
        (2, 3): [[1, 1, 1], [0, 2, 1], [1, 1, 1]],
        (3, 2): [[2, 1, 1], [2, 2, 1], [1, 1, 1]],
        (3, 3): [[3, 2, 1], [3, 3, 1], [1, 1, 1]],
    }
    for ix, rows in expect.items():
        assert after[ix].equals(Matrix.from_rows(rows)), ix
    # steps before (2,3) leave this seed alone
    assert after[(2, 2)].equals(seed)


def test_deleting_worked_example():
    M = Matrix.from_rows([[2, 1, 1], [1, 1, 1], [1, 1, 1]])
    out = deleting_derivations(M)
    assert out.equals(Matrix.from_rows([[1, 0, 1], [0, 0, 1], [1, 1, 1]]))


def test_deletion_inverts_restoration_on_worked_example():
    M = Matrix.from_rows([[3, 2, 1], [3, 3, 1], [1, 1, 1]])
    assert deleting_derivations(M).equals(
        Matrix.from_rows([[1, -1, 1], [0, 2, 1], [1, 1, 1]])
    )


@given(any_matrices)
def test_sweeps_are_mutually_inverse(M):
    assert restoration(deleting_derivations(M)).equals(M)
    assert deleting_derivations(restoration(M)).equals(M)


@given(rational_matrix(3, 3, lo=0, hi=3))
@settings(max_examples=40)
def test_tnn_test_agrees_with_bruteforce(M):
    verdict = tnn_test(M)
    brute, _ = is_tnn_bruteforce(M)
    assert verdict.is_tnn == brute


def test_tnn_test_returns_the_zero_diagram():
    M = Matrix.from_rows([[2, 1, 1], [1, 1, 1], [1, 1, 1]])
    verdict = tnn_test(M)
    assert verdict.is_tnn
    assert verdict.diagram == DEMO


def test_tnn_test_rejects_with_bad_zero_pattern():
    # entrywise nonnegative output whose zeros fail the diagram rule
    M = Matrix.from_rows([[0, 1], [1, 1]])
    verdict = tnn_test(M)
    assert not verdict.is_tnn


class TestSeeding:
    def test_seed_requires_every_white(self):
        with pytest.raises(DomainError):
            seed_matrix(DEMO, QQ, {})

    def test_seed_rejects_zero_whites(self):
        assignment = {c: Fraction(1) for c in DEMO.white_cells()}
        assignment[(3, 3)] = Fraction(0)
        with pytest.raises(DomainError):
            seed_matrix(DEMO, QQ, assignment)

    def test_black_cells_pinned_to_zero(self):
        assignment = {c: Fraction(2) for c in DEMO.white_cells()}
        T = seed_matrix(DEMO, QQ, assignment)
        assert T.entry(1, 2) == 0
        assert T.entry(3, 3) == 2


def test_ones_TC_demo():
    assert ones_TC(DEMO).equals(
        Matrix.from_rows([[2, 1, 1], [1, 1, 1], [1, 1, 1]])
    )


def test_symbolic_TC_demo_matches_hand_computation():
    T = symbolic_TC(DEMO)
    dom = T.domain
    assert isinstance(dom, RationalFunctionDomain)

    def v(cell):
        return dom.var(white_variable(cell))

    t11, t13 = v((1, 1)), v((1, 3))
    t23 = v((2, 3))
    t31, t32, t33 = v((3, 1)), v((3, 2)), v((3, 3))
    expect = [
        [t11 + t13 / t33 * t31, t13 / t33 * t32, t13],
        [t23 / t33 * t31, t23 / t33 * t32, t23],
        [t31, t32, t33],
    ]
    for i in range(3):
        for a in range(3):
            assert dom.eq(T.rows[i][a], expect[i][a]), (i, a)


@given(st.data())
@settings(max_examples=30)
def test_TC_zero_pattern_round_trip(data):
    diagrams = list(enumerate_diagrams(2, 3))
    d = data.draw(st.sampled_from(diagrams))
    whites = sorted(d.white_cells())
    values = data.draw(
        st.lists(
            st.integers(1, 9),
            min_size=len(whites),
            max_size=len(whites),
        )
    )
    assignment = {c: Fraction(v) for c, v in zip(whites, values)}
    T = build_TC(d, QQ, assignment)
    assert zero_pattern(deleting_derivations(T)) == d.black


def test_TC_matrices_are_tnn():
    for d in enumerate_diagrams(2, 2):
        ok, _ = is_tnn_bruteforce(ones_TC(d))
        assert ok, d.to_ascii()


class TestVanishingFamily:
    def test_demo_family(self):
        fam = vanishing_family(DEMO)
        assert {str(ix) for ix in fam} == {
            "[1,2|2,3]", "[1,3|2,3]", "[2,3|2,3]",
            "[2,3|1,3]", "[2,3|1,2]", "[1,2,3|1,2,3]",
        }

    def test_all_white_has_no_vanishing_minors(self):
        fam = vanishing_family(CauchonDiagram.all_white(2, 2))
        assert not set(fam)

    def test_all_black_vanishes_everywhere(self):
        fam = vanishing_family(CauchonDiagram.all_black(2, 2))
        assert set(fam) == set(iter_minor_indices(2, 2))

    def test_prefilter_agrees_with_exact(self):
        for d in enumerate_diagrams(2, 2):
            exact = vanishing_family(d, prefilter=False)
            fast = vanishing_family(d, prefilter=True)
            assert set(exact) == set(fast)

    def test_sampled_family_contains_exact(self):
        # sampling can only overreport zeros, never drop one
        for d in enumerate_diagrams(2, 2):
            sampled = set(sampled_vanishing_family(d, samples=8))
            assert sampled >= set(vanishing_family(d))

    def test_family_matches_symbolic_minors(self):
        T = symbolic_TC(DEMO)
        fam = set(vanishing_family(DEMO))
        for ix in iter_minor_indices(3, 3):
            value = minor(T, ix)
            assert (ix in fam) == T.domain.is_zero(value), ix
