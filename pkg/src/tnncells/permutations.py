"""Restricted permutations, pipe dreams, Bruhat order and minor families.

Permutations act on the left: ``(w @ u)(i) = w(u(i))``. The restricted set
S(m, p) consists of the w in the symmetric group on m + p letters with
-p <= w(i) - i <= m for every i.

A diagram turns into a permutation by reading it as a pipe dream. Black
cells are crossings (the pipe keeps its heading), white cells are elbows
joining the cell's top side to its right side and its left side to its
bottom side, so every pipe travels up and to the left. Pipes enter at the
bottom edge (column a carries label a) and the right edge (row i carries
label m + p + 1 - i); they leave at the left edge (row i is sink m + 1 - i)
or the top edge (column a is sink m + a). Tracing label s to its sink gives
w(s). The all-black grid maps to the permutation with maximal displacement
and the all-white grid to the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations as iter_permutations
from typing import Any, Iterator

from . import guards
from .diagrams import CauchonDiagram
from .errors import DomainError
from .matrices import MinorFamily, MinorIndex, iter_minor_indices


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of [1..n] in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise DomainError(f"{images} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise DomainError(f"{i} outside 1..{self.n}")
        return self.images[i - 1]

    def __matmul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise DomainError("cannot compose permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for i, w in enumerate(self.images, start=1):
            images[w - 1] = i
        return Permutation(tuple(images))

    def apply_set(self, xs: Any) -> tuple[int, ...]:
        """Elementwise image of an index set, sorted ascending."""
        return tuple(sorted(self(x) for x in xs))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Any) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            cycle = [int(x) for x in cycle]
            if len(set(cycle)) != len(cycle):
                raise DomainError(f"repeated element in cycle {cycle}")
            for x in cycle:
                if not 1 <= x <= n:
                    raise DomainError(f"cycle element {x} outside 1..{n}")
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def one_line(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.one_line()

    def length(self) -> int:
        """Coxeter length: the number of inversions."""
        return sum(
            1
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.images[i] > self.images[j]
        )


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Read one-line (``135246`` or ``1,3,5,2,4,6``) or cycle (``(2 3 5 4)``) form."""
    text = text.strip()
    if not text:
        raise DomainError("empty permutation text")
    if text.startswith("("):
        chunks = re.findall(r"\(([^()]*)\)", text)
        if "".join(chunks).strip() == "" and text != "()":
            raise DomainError(f"cannot parse cycles from {text!r}")
        cycles = [
            [int(x) for x in re.split(r"[,\s]+", chunk.strip()) if x]
            for chunk in chunks
            if chunk.strip()
        ]
        size = n if n is not None else max((x for c in cycles for x in c), default=1)
        return Permutation.from_cycles(size, cycles)
    if "," in text or " " in text:
        try:
            parts = [int(x) for x in re.split(r"[,\s]+", text) if x]
        except ValueError as exc:
            raise DomainError(f"cannot parse permutation {text!r}") from exc
    else:
        if not text.isdigit():
            raise DomainError(f"cannot parse permutation {text!r}")
        parts = [int(ch) for ch in text]
    w = Permutation(tuple(parts))
    if n is not None and w.n != n:
        raise DomainError(f"expected a permutation of 1..{n}, got {w.n} entries")
    return w


def longest_element(r: int) -> Permutation:
    """The order-reversing permutation i -> r + 1 - i."""
    if r < 1:
        raise DomainError("rank must be at least 1")
    return Permutation(tuple(r + 1 - i for i in range(1, r + 1)))


def is_restricted(w: Permutation, m: int, p: int) -> bool:
    """Does w satisfy the window condition -p <= w(i) - i <= m?"""
    if w.n != m + p:
        return False
    return all(-p <= w(i) - i <= m for i in range(1, w.n + 1))


def enumerate_restricted(m: int, p: int) -> Iterator[Permutation]:
    """All of S(m, p) in lexicographic one-line order."""
    if m < 1 or p < 1:
        raise DomainError("sizes must be at least 1")
    n = m + p
    for images in iter_permutations(range(1, n + 1)):
        if all(-p <= w - i <= m for i, w in enumerate(images, start=1)):
            yield Permutation(images)


def count_restricted(m: int, p: int) -> int:
    return sum(1 for _ in enumerate_restricted(m, p))


# ---------------------------------------------------------------------------
# Pipe dreams
# ---------------------------------------------------------------------------


def pipe_dream(diagram: CauchonDiagram) -> Permutation:
    """Trace every pipe through the diagram and read off the permutation."""
    m, p = diagram.m, diagram.p
    n = m + p
    images = [0] * n
    for label in range(1, n + 1):
        if label <= p:
            i, a, heading = m, label, "up"
        else:
            i, a, heading = n + 1 - label, p, "left"
        while True:
            if (i, a) not in diagram.black:
                heading = "left" if heading == "up" else "up"
            if heading == "up":
                i -= 1
                if i < 1:
                    images[label - 1] = m + a
                    break
            else:
                a -= 1
                if a < 1:
                    images[label - 1] = m + 1 - i
                    break
        # each pipe moves only up or left, so it leaves the grid
    w = Permutation(tuple(images))
    if not is_restricted(w, m, p):
        raise DomainError(f"trace produced {w}, outside the restricted window")
    return w


@lru_cache(maxsize=None)
def _pipe_dream_table(m: int, p: int) -> dict[Permutation, CauchonDiagram]:
    from .diagrams import enumerate_diagrams

    table: dict[Permutation, CauchonDiagram] = {}
    for diagram in enumerate_diagrams(m, p):
        w = pipe_dream(diagram)
        if w in table:
            raise DomainError(f"two diagrams trace to {w}; labeling broken")
        table[w] = diagram
    return table


def inverse_pipe_dream(w: Permutation, m: int, p: int) -> CauchonDiagram:
    """The unique diagram tracing to w; DomainError if w is not restricted."""
    guards.ensure_enumerable(m, p, what="pipe dream inversion")
    if not is_restricted(w, m, p):
        raise DomainError(f"{w} violates the window condition for ({m},{p})")
    table = _pipe_dream_table(m, p)
    if w not in table:
        raise DomainError(f"no diagram traces to {w}")
    return table[w]


# ---------------------------------------------------------------------------
# Bruhat order
# ---------------------------------------------------------------------------


def _rank_matrix(w: Permutation) -> list[list[int]]:
    n = w.n
    ranks = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ranks[i][j] = (
                ranks[i - 1][j]
                + ranks[i][j - 1]
                - ranks[i - 1][j - 1]
                + (1 if w(i) == j else 0)
            )
    return ranks


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """u <= w in Bruhat order, by comparing dot-count rank matrices."""
    if u.n != w.n:
        raise DomainError("Bruhat comparison needs equal sizes")
    ru, rw = _rank_matrix(u), _rank_matrix(w)
    n = u.n
    return all(
        ru[i][j] >= rw[i][j] for i in range(1, n + 1) for j in range(1, n + 1)
    )


# ---------------------------------------------------------------------------
# The minor family of a restricted permutation
# ---------------------------------------------------------------------------


def _set_leq(xs: tuple[int, ...], ys: tuple[int, ...]) -> bool:
    # both sorted ascending, equal length
    return all(x <= y for x, y in zip(xs, ys))


def _condition_one(w: Permutation, m: int, p: int, ix: MinorIndex) -> bool:
    # rows must escape the flipped image of every size-k column pool subset
    # below cols; an empty candidate set makes the condition hold
    pool = [a for a in range(1, p + 1) if w(a) <= m]
    k = ix.size
    for raw in combinations(pool, k):
        if not _set_leq(raw, ix.cols):
            continue
        target = tuple(sorted(m + 1 - w(a) for a in raw))
        if _set_leq(ix.rows, target):
            return False
    return True


def _condition_two(w: Permutation, m: int, p: int, ix: MinorIndex) -> bool:
    # shifted cols must escape the image of every size-k row pool subset
    # below rows; the pool flips through position N+1-x
    n = m + p
    pool = [x for x in range(1, m + 1) if w(n + 1 - x) > m]
    k = ix.size
    shifted = tuple(m + a for a in ix.cols)
    for raw in combinations(pool, k):
        if not _set_leq(raw, ix.rows):
            continue
        target = tuple(sorted(w(n + 1 - x) for x in raw))
        if _set_leq(shifted, target):
            return False
    return True


def _condition_three(w: Permutation, m: int, p: int, ix: MinorIndex) -> bool:
    # some column window [r..s] holds more of cols than it has columns
    # whose image escapes [m+r..m+s]
    for r in range(1, p + 1):
        for s in range(r, p + 1):
            inside = sum(1 for a in ix.cols if r <= a <= s)
            room = sum(1 for c in range(r, s + 1) if not (m + r <= w(c) <= m + s))
            if inside > room:
                return True
    return False


def _condition_four(w: Permutation, m: int, p: int, ix: MinorIndex) -> bool:
    # mirror of condition three on row windows, read through both
    # order-reversing elements
    n = m + p
    for r in range(1, m + 1):
        for s in range(r, m + 1):
            inside = sum(1 for i in ix.rows if r <= i <= s)
            room = sum(
                1
                for x in range(n + 1 - s, n + 2 - r)
                if not (m + 1 - s <= w(x) <= m + 1 - r)
            )
            if inside > room:
                return True
    return False


def in_minor_family(w: Permutation, m: int, p: int, ix: MinorIndex) -> bool:
    return (
        _condition_one(w, m, p, ix)
        or _condition_two(w, m, p, ix)
        or _condition_three(w, m, p, ix)
        or _condition_four(w, m, p, ix)
    )


def minor_family(w: Permutation, m: int, p: int) -> MinorFamily:
    """All minors forced to vanish on the cell labeled by w."""
    if w.n != m + p:
        raise DomainError(f"{w} is not a permutation of 1..{m + p}")
    if not is_restricted(w, m, p):
        raise DomainError(f"{w} violates the window condition for ({m},{p})")
    members = frozenset(
        ix for ix in iter_minor_indices(m, p) if in_minor_family(w, m, p, ix)
    )
    return MinorFamily(m, p, members)
