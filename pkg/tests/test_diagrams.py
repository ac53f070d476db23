"""Grid diagrams with the left-or-above blackness rule."""

from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles
from tnncells.diagrams import (
    CauchonDiagram,
    count_diagrams,
    enumerate_diagrams,
    is_cauchon,
    non_le_fillings,
)
from tnncells.errors import DomainError, ResourceGuardError


DEMO = CauchonDiagram.from_ascii(".#.\n##.\n...")


def test_counts_small():
    assert count_diagrams(1, 1) == 2
    assert count_diagrams(2, 2) == 14
    assert count_diagrams(3, 3) == 230


def test_count_4x4():
    assert count_diagrams(4, 4) == 6902


@given(st.integers(1, 3), st.integers(1, 3))
def test_enumeration_agrees_with_quantifier_scan(m, p):
    cells = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    valid = set()
    for bits in product((0, 1), repeat=m * p):
        black = frozenset(c for c, b in zip(cells, bits) if b)
        if not oracles.has_bad_black_cell(m, p, black):
            valid.add(black)
    enumerated = {d.black for d in enumerate_diagrams(m, p)}
    assert enumerated == valid


def test_enumeration_order_is_ascending_bitmask():
    def mask(d):
        cells = [(i, a) for i in range(1, d.m + 1) for a in range(1, d.p + 1)]
        return sum(1 << (len(cells) - 1 - k)
                   for k, c in enumerate(cells) if c in d.black)

    masks = [mask(d) for d in enumerate_diagrams(2, 2)]
    assert masks == sorted(masks)
    assert masks[0] == 0


def test_is_cauchon_examples():
    assert is_cauchon(2, 2, {(1, 2), (2, 2)})
    assert is_cauchon(2, 2, {(2, 1), (2, 2)})
    assert not is_cauchon(2, 2, {(2, 2)})
    assert is_cauchon(1, 5, {(1, 3)})


def test_bounds_checked():
    with pytest.raises(DomainError):
        is_cauchon(2, 2, {(3, 1)})


def test_non_le_fillings_2x2():
    assert non_le_fillings(2, 2) == [[[1, 1], [1, 0]], [[0, 1], [1, 0]]]


def test_non_le_fillings_trivial_shapes():
    assert non_le_fillings(1, 4) == []
    assert non_le_fillings(2, 1) == []


def test_non_le_fillings_guard(monkeypatch):
    monkeypatch.setenv("CAUCHON_GUARD", "2")
    with pytest.raises(ResourceGuardError):
        non_le_fillings(2, 2)


class TestDiagramType:
    def test_ascii_roundtrip(self):
        assert CauchonDiagram.from_ascii(DEMO.to_ascii()) == DEMO

    def test_slash_separator(self):
        assert CauchonDiagram.from_ascii(".#./##./...") == DEMO

    def test_le_grid_roundtrip(self):
        grid = DEMO.to_le_grid()
        assert grid[0] == [1, 0, 1]
        assert CauchonDiagram.from_le_grid(grid) == DEMO

    def test_json_roundtrip(self):
        assert CauchonDiagram.from_json(DEMO.to_json()) == DEMO

    def test_invalid_rejected(self):
        with pytest.raises(DomainError):
            CauchonDiagram(2, 2, frozenset({(2, 2)}))

    def test_transpose_is_valid_and_involutive(self):
        for d in enumerate_diagrams(2, 3):
            t = d.transpose()
            assert (t.m, t.p) == (3, 2)
            assert t.transpose() == d

    def test_white_cells_complement_black(self):
        whites = set(DEMO.white_cells())
        assert whites.isdisjoint(DEMO.black)
        assert len(whites) + len(DEMO.black) == 9

    def test_all_white_all_black(self):
        assert CauchonDiagram.all_white(2, 2).black == frozenset()
        assert len(CauchonDiagram.all_black(2, 2).black) == 4
