"""Cauchon diagrams: validation, enumeration and text formats.

A diagram colors the cells of an m x p grid black or white, subject to one
rule: a black cell must have all cells strictly to its left black, or all
cells strictly above it black. The same objects appear elsewhere as
Le-diagrams, written as 0/1 grids in which 0 marks a black cell; both
notations are accepted on input and the dot/hash grid is the canonical
output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Any, Iterator

from . import guards
from .errors import DomainError

Cell = tuple[int, int]

WHITE_CHAR = "."
BLACK_CHAR = "#"


def _first_violation(m: int, p: int, black: frozenset[Cell]) -> Cell | None:
    for (i, alpha) in black:
        if not (1 <= i <= m and 1 <= alpha <= p):
            raise DomainError(f"cell ({i},{alpha}) outside {m}x{p} grid")
    for (i, alpha) in sorted(black):
        left_black = all((i, beta) in black for beta in range(1, alpha))
        if left_black:
            continue
        above_black = all((j, alpha) in black for j in range(1, i))
        if not above_black:
            return (i, alpha)
    return None


def is_cauchon(m: int, p: int, black: Any) -> bool:
    """Does the coloring satisfy the all-left-black or all-above-black rule?"""
    if m < 1 or p < 1:
        raise DomainError("grid sizes must be at least 1")
    cells = frozenset((int(i), int(a)) for i, a in black)
    return _first_violation(m, p, cells) is None


@dataclass(frozen=True)
class CauchonDiagram:
    """A valid black/white coloring of the m x p grid."""

    m: int
    p: int
    black: frozenset[Cell]

    def __post_init__(self) -> None:
        if self.m < 1 or self.p < 1:
            raise DomainError("grid sizes must be at least 1")
        cells = frozenset((int(i), int(a)) for i, a in self.black)
        object.__setattr__(self, "black", cells)
        offender = _first_violation(self.m, self.p, cells)
        if offender is not None:
            raise DomainError(
                f"cell {offender} is black with a white cell to its left "
                "and a white cell above"
            )

    # -- basic queries --------------------------------------------------------

    def is_black(self, i: int, alpha: int) -> bool:
        if not (1 <= i <= self.m and 1 <= alpha <= self.p):
            raise DomainError(f"cell ({i},{alpha}) outside {self.m}x{self.p}")
        return (i, alpha) in self.black

    def white_cells(self) -> list[Cell]:
        """All white cells in row-major order."""
        return [
            (i, a)
            for i in range(1, self.m + 1)
            for a in range(1, self.p + 1)
            if (i, a) not in self.black
        ]

    def black_sorted(self) -> list[Cell]:
        return sorted(self.black)

    def transpose(self) -> "CauchonDiagram":
        return CauchonDiagram(
            self.p, self.m, frozenset((a, i) for (i, a) in self.black)
        )

    @classmethod
    def all_white(cls, m: int, p: int) -> "CauchonDiagram":
        return cls(m, p, frozenset())

    @classmethod
    def all_black(cls, m: int, p: int) -> "CauchonDiagram":
        return cls(m, p, frozenset(
            (i, a) for i in range(1, m + 1) for a in range(1, p + 1)
        ))

    # -- text formats ----------------------------------------------------------

    def to_ascii(self) -> str:
        return "\n".join(
            "".join(
                BLACK_CHAR if (i, a) in self.black else WHITE_CHAR
                for a in range(1, self.p + 1)
            )
            for i in range(1, self.m + 1)
        )

    @classmethod
    def from_ascii(cls, text: str) -> "CauchonDiagram":
        """Parse a dot/hash grid or a 0/1 Le grid; `/` may separate rows."""
        body = text.strip().replace("/", "\n")
        lines = [line.strip() for line in body.splitlines() if line.strip()]
        if not lines:
            raise DomainError("empty diagram text")
        width = len(lines[0])
        if any(len(line) != width for line in lines):
            raise DomainError("diagram rows differ in length")
        charset = set("".join(lines))
        if charset <= {WHITE_CHAR, BLACK_CHAR}:
            black_chars = {BLACK_CHAR}
        elif charset <= {"0", "1"}:
            black_chars = {"0"}
        else:
            raise DomainError(
                f"diagram text must use {WHITE_CHAR}{BLACK_CHAR} or 01, "
                f"got {''.join(sorted(charset))!r}"
            )
        black = frozenset(
            (i + 1, a + 1)
            for i, line in enumerate(lines)
            for a, ch in enumerate(line)
            if ch in black_chars
        )
        return cls(len(lines), width, black)

    def to_le_grid(self) -> list[list[int]]:
        """0/1 rows with 0 on black cells."""
        return [
            [0 if (i, a) in self.black else 1 for a in range(1, self.p + 1)]
            for i in range(1, self.m + 1)
        ]

    @classmethod
    def from_le_grid(cls, grid: Any) -> "CauchonDiagram":
        rows = [list(row) for row in grid]
        if not rows or not rows[0]:
            raise DomainError("empty Le grid")
        if any(len(row) != len(rows[0]) for row in rows):
            raise DomainError("Le grid rows differ in length")
        black = frozenset(
            (i + 1, a + 1)
            for i, row in enumerate(rows)
            for a, value in enumerate(row)
            if value == 0
        )
        return cls(len(rows), len(rows[0]), black)

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "p": self.p,
            "black": [list(cell) for cell in self.black_sorted()],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "CauchonDiagram":
        if not isinstance(obj, dict) or not {"m", "p", "black"} <= set(obj):
            raise DomainError("diagram JSON needs m, p and black")
        black = frozenset((int(i), int(a)) for i, a in obj["black"])
        return cls(int(obj["m"]), int(obj["p"]), black)

    @classmethod
    def load_text(cls, text: str) -> "CauchonDiagram":
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise DomainError(f"bad diagram JSON: {exc}") from exc
            return cls.from_json(obj)
        return cls.from_ascii(text)

    def __str__(self) -> str:
        return self.to_ascii()


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_diagrams(m: int, p: int) -> Iterator[CauchonDiagram]:
    """Stream every diagram of the grid once, in ascending bitmask order.

    Cells are read row-major with the first cell most significant and black
    as 1, so the all-white diagram comes first and the all-black one last.
    Backtracking checks each black placement as it is made: everything to
    the left of and above the current cell is already decided, so the check
    is exact and no completed coloring is ever rejected.
    """
    if m < 1 or p < 1:
        raise DomainError("grid sizes must be at least 1")
    cells = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    black: set[Cell] = set()

    def may_blacken(i: int, alpha: int) -> bool:
        return all((i, b) in black for b in range(1, alpha)) or all(
            (j, alpha) in black for j in range(1, i)
        )

    def walk(k: int) -> Iterator[CauchonDiagram]:
        if k == len(cells):
            yield CauchonDiagram(m, p, frozenset(black))
            return
        i, alpha = cells[k]
        yield from walk(k + 1)
        if may_blacken(i, alpha):
            black.add((i, alpha))
            yield from walk(k + 1)
            black.discard((i, alpha))

    yield from walk(0)


def count_diagrams(m: int, p: int) -> int:
    return sum(1 for _ in enumerate_diagrams(m, p))


def non_le_fillings(m: int, p: int) -> list[list[list[int]]]:
    """All 0/1 grids that are not Le-diagrams, in ascending bitmask order.

    Output uses Le notation (0 = black). The full 2^(m*p) search space is
    scanned, so sizes are capped by the enumeration guard.
    """
    if m < 1 or p < 1:
        raise DomainError("grid sizes must be at least 1")
    guards.ensure_enumerable(m, p, what="filling enumeration")
    bad = []
    cells = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    for bits in product((0, 1), repeat=m * p):
        black = frozenset(c for c, bit in zip(cells, bits) if bit)
        if _first_violation(m, p, black) is not None:
            grid = [
                [0 if (i, a) in black else 1 for a in range(1, p + 1)]
                for i in range(1, m + 1)
            ]
            bad.append(grid)
    return bad
