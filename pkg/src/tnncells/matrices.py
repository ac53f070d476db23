"""Exact matrices over a scalar domain, minors and positivity predicates.

The matrix type is deliberately small: immutable row-major storage plus a
:class:`~tnncells.scalars.ScalarDomain` that supplies the arithmetic. All
indices in the public API are 1-based; row sets and column sets are strictly
increasing tuples, and composite minors print as ``[1,2|2,3]``.

Determinants over the rationals clear denominators and run fraction-free
Bareiss elimination on integers, which keeps intermediate growth polynomial.
Every other domain (prime fields, rational functions) is a field here, so
ordinary Gaussian elimination with exact division applies.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Any, Iterable, Iterator, Sequence

from .errors import DomainError
from .scalars import QQ, RationalDomain, ScalarDomain

# ---------------------------------------------------------------------------
# Minor indexing
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class MinorIndex:
    """Row and column sets of one minor, sorted ascending and 1-based."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols) or not rows:
            raise DomainError(f"need equally many rows and columns, got {self}")
        for seq, kind in ((rows, "row"), (cols, "column")):
            if any(x < 1 for x in seq):
                raise DomainError(f"{kind} indices must be positive in {self}")
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise DomainError(f"{kind} indices must increase strictly in {self}")

    @property
    def size(self) -> int:
        return len(self.rows)

    def fits(self, m: int, p: int) -> bool:
        return self.rows[-1] <= m and self.cols[-1] <= p

    def transposed(self) -> "MinorIndex":
        return MinorIndex(self.cols, self.rows)

    def sort_key(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        return (self.size, self.rows, self.cols)

    def __str__(self) -> str:
        return "[{}|{}]".format(
            ",".join(map(str, self.rows)), ",".join(map(str, self.cols))
        )

    _PATTERN = re.compile(r"^\s*\[\s*([0-9,\s]+)\|\s*([0-9,\s]+)\]\s*$")

    @classmethod
    def parse(cls, text: str) -> "MinorIndex":
        match = cls._PATTERN.match(text)
        if not match:
            raise DomainError(f"cannot parse minor index {text!r}")
        rows = tuple(int(x) for x in match.group(1).split(","))
        cols = tuple(int(x) for x in match.group(2).split(","))
        return cls(rows, cols)

    def to_json(self) -> dict[str, list[int]]:
        return {"rows": list(self.rows), "cols": list(self.cols)}

    @classmethod
    def from_json(cls, obj: Any) -> "MinorIndex":
        if not isinstance(obj, dict) or set(obj) != {"rows", "cols"}:
            raise DomainError(f"minor index JSON needs rows and cols, got {obj!r}")
        return cls(tuple(obj["rows"]), tuple(obj["cols"]))


@dataclass(frozen=True)
class MinorFamily:
    """A set of minors inside a fixed ambient size."""

    m: int
    p: int
    members: frozenset[MinorIndex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        for ix in self.members:
            if not ix.fits(self.m, self.p):
                raise DomainError(f"{ix} does not fit in {self.m}x{self.p}")

    def __contains__(self, ix: MinorIndex) -> bool:
        return ix in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[MinorIndex]:
        return iter(sorted(self.members, key=MinorIndex.sort_key))

    def __str__(self) -> str:
        return "{" + ", ".join(str(ix) for ix in self) + "}"

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "p": self.p,
            "members": [ix.to_json() for ix in self],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "MinorFamily":
        if not isinstance(obj, dict) or not {"m", "p", "members"} <= set(obj):
            raise DomainError("minor family JSON needs m, p and members")
        members = frozenset(MinorIndex.from_json(x) for x in obj["members"])
        return cls(int(obj["m"]), int(obj["p"]), members)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class Matrix:
    """An immutable m x p matrix over a scalar domain."""

    __slots__ = ("domain", "m", "p", "rows")

    def __init__(self, domain: ScalarDomain, rows: Sequence[Sequence[Any]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DomainError("matrices need at least one row and one column")
        p = len(rows[0])
        if any(len(r) != p for r in rows):
            raise DomainError("ragged rows")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "m", len(rows))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Any]], domain: ScalarDomain = QQ
    ) -> "Matrix":
        """Build a matrix, coercing plain ints through the domain."""
        coerced = [
            [domain.from_int(x) if isinstance(x, int) else x for x in row]
            for row in rows
        ]
        return cls(domain, coerced)

    def entry(self, i: int, alpha: int) -> Any:
        """Entry in row i, column alpha (1-based)."""
        if not (1 <= i <= self.m and 1 <= alpha <= self.p):
            raise DomainError(f"entry ({i},{alpha}) outside {self.m}x{self.p}")
        return self.rows[i - 1][alpha - 1]

    def with_entry(self, i: int, alpha: int, value: Any) -> "Matrix":
        if not (1 <= i <= self.m and 1 <= alpha <= self.p):
            raise DomainError(f"entry ({i},{alpha}) outside {self.m}x{self.p}")
        rows = [list(r) for r in self.rows]
        rows[i - 1][alpha - 1] = value
        return Matrix(self.domain, rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.domain, list(zip(*self.rows)))

    def map(self, fn: Any, domain: ScalarDomain | None = None) -> "Matrix":
        return Matrix(domain or self.domain,
                      [[fn(x) for x in row] for row in self.rows])

    def equals(self, other: "Matrix") -> bool:
        if (self.m, self.p) != (other.m, other.p):
            return False
        return all(
            self.domain.eq(a, b)
            for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def __str__(self) -> str:
        cells = [[self.domain.to_str(x) for x in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(
            "[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells
        )

    def __repr__(self) -> str:
        return f"Matrix({self.m}x{self.p} over {self.domain.name})"


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------


def _det_bareiss_int(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss)."""
    n = len(rows)
    a = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def _det_rational(rows: list[list[Fraction]]) -> Fraction:
    scale = lcm(*(x.denominator for row in rows for x in row)) if rows else 1
    ints = [[int(x * scale) for x in row] for row in rows]
    return Fraction(_det_bareiss_int(ints), scale ** len(rows))


def _det_field(domain: ScalarDomain, rows: list[list[Any]]) -> Any:
    a = [row[:] for row in rows]
    n = len(a)
    det = domain.one()
    for k in range(n):
        pivot_row = next(
            (r for r in range(k, n) if not domain.is_zero(a[r][k])), None
        )
        if pivot_row is None:
            return domain.zero()
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = domain.neg(det)
        pivot = a[k][k]
        det = domain.mul(det, pivot)
        for r in range(k + 1, n):
            if domain.is_zero(a[r][k]):
                continue
            factor = domain.div(a[r][k], pivot)
            for c in range(k + 1, n):
                a[r][c] = domain.sub(a[r][c], domain.mul(factor, a[k][c]))
            a[r][k] = domain.zero()
    return det


def determinant(matrix: Matrix) -> Any:
    if matrix.m != matrix.p:
        raise DomainError(f"determinant of non-square {matrix.m}x{matrix.p}")
    rows = [list(r) for r in matrix.rows]
    if isinstance(matrix.domain, RationalDomain):
        return _det_rational(rows)
    return _det_field(matrix.domain, rows)


def minor(matrix: Matrix, ix: MinorIndex) -> Any:
    """The exact value of one minor of the matrix."""
    if not ix.fits(matrix.m, matrix.p):
        raise DomainError(f"{ix} does not fit in {matrix.m}x{matrix.p}")
    sub = [
        [matrix.rows[i - 1][a - 1] for a in ix.cols]
        for i in ix.rows
    ]
    if isinstance(matrix.domain, RationalDomain):
        return _det_rational(sub)
    return _det_field(matrix.domain, sub)


def minor_count(m: int, p: int) -> int:
    """How many minors an m x p matrix has in total."""
    if m < 1 or p < 1:
        raise DomainError("sizes must be at least 1")
    return comb(m + p, m) - 1


def iter_minor_indices(m: int, p: int) -> Iterator[MinorIndex]:
    """All minor indices of an m x p matrix, ordered by size then rows, columns."""
    for k in range(1, min(m, p) + 1):
        for rows in combinations(range(1, m + 1), k):
            for cols in combinations(range(1, p + 1), k):
                yield MinorIndex(rows, cols)


def all_minors(matrix: Matrix) -> list[tuple[MinorIndex, Any]]:
    return [(ix, minor(matrix, ix)) for ix in iter_minor_indices(matrix.m, matrix.p)]


def initial_minor_index(i: int, alpha: int) -> MinorIndex:
    """The initial minor whose bottom-right entry sits at (i, alpha).

    It uses min(i, alpha) consecutive rows and columns ending at row i and
    column alpha, so the block touches row 1 or column 1.
    """
    k = min(i, alpha)
    return MinorIndex(
        tuple(range(i - k + 1, i + 1)), tuple(range(alpha - k + 1, alpha + 1))
    )


def initial_minors(matrix: Matrix) -> list[tuple[MinorIndex, Any]]:
    """The n^2 initial minors of a square matrix, row-major by corner entry."""
    if matrix.m != matrix.p:
        raise DomainError("initial minors are defined for square matrices")
    out = []
    for i in range(1, matrix.m + 1):
        for alpha in range(1, matrix.p + 1):
            ix = initial_minor_index(i, alpha)
            out.append((ix, minor(matrix, ix)))
    return out


def _require_rational(matrix: Matrix, what: str) -> None:
    if not isinstance(matrix.domain, RationalDomain):
        raise DomainError(f"{what} needs rational entries, not {matrix.domain.name}")


def is_tp(matrix: Matrix) -> bool:
    """Total positivity of a square rational matrix via its initial minors."""
    _require_rational(matrix, "total positivity")
    if matrix.m != matrix.p:
        raise DomainError("total positivity test is for square matrices")
    return all(value > 0 for _, value in initial_minors(matrix))


def is_tnn_bruteforce(matrix: Matrix) -> tuple[bool, MinorIndex | None]:
    """Check every minor for nonnegativity; on failure report a witness.

    The witness is the most negative minor of the smallest failing size,
    so it names the worst violation rather than an accident of scan order.
    """
    _require_rational(matrix, "total nonnegativity")
    worst: tuple[Fraction, MinorIndex] | None = None
    size = 0
    for ix in iter_minor_indices(matrix.m, matrix.p):
        if worst is not None and ix.size > size:
            break
        value = minor(matrix, ix)
        if value < 0 and (worst is None or value < worst[0]):
            worst = (value, ix)
            size = ix.size
    if worst is None:
        return True, None
    return False, worst[1]


# ---------------------------------------------------------------------------
# Interchange formats
# ---------------------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational literal {text!r}") from exc


def matrix_from_json(obj: Any) -> Matrix:
    """Read ``{"m": ..., "p": ..., "entries": [[...], ...]}`` matrices."""
    if not isinstance(obj, dict) or not {"m", "p", "entries"} <= set(obj):
        raise DomainError("matrix JSON needs m, p and entries")
    m, p = int(obj["m"]), int(obj["p"])
    entries = obj["entries"]
    if len(entries) != m or any(len(row) != p for row in entries):
        raise DomainError(f"entries do not form an {m}x{p} grid")
    rows = [[parse_rational(x) for x in row] for row in entries]
    return Matrix(QQ, rows)


def matrix_to_json(matrix: Matrix) -> dict[str, Any]:
    _require_rational(matrix, "JSON export")
    return {
        "m": matrix.m,
        "p": matrix.p,
        "entries": [[str(x) for x in row] for row in matrix.rows],
    }


def matrix_from_csv(text: str) -> Matrix:
    """Read one matrix row per line, entries comma-separated rationals."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([parse_rational(cell) for cell in line.split(",")])
    if not rows:
        raise DomainError("no rows in CSV input")
    return Matrix(QQ, rows)


def load_matrix_text(text: str) -> Matrix:
    """Accept either the JSON or the CSV matrix format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"bad matrix JSON: {exc}") from exc
        return matrix_from_json(obj)
    if stripped.startswith("["):
        raise DomainError(
            'matrix JSON is an object {"m", "p", "entries"}, not a bare array'
        )
    return matrix_from_csv(text)
