"""Planar networks, path matrices and the disjoint-path-family oracle.

Networks here are finite weighted DAGs with named sources s1..sm and sinks
t1..tp. The path matrix entry (i, a) is the weighted sum over all directed
paths from source i to sink a, where a path weighs the product of its edge
weights; with unit weights that is a path count.

A diagram gives rise to such a network by placing one dot in each white
cell, feeding each row from a source on its right edge and draining each
column into a sink below its bottom edge. Edges run right-to-left along
rows and top-to-bottom along columns between consecutive dots. The diagram
rule forbids a black cell with a white cell somewhere above and another
somewhere to its left in just the pattern that would make a row edge cross
a column edge, so these networks are genuinely planar and disjoint path
families obey the determinant identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from .diagrams import CauchonDiagram
from .errors import DomainError, ResourceGuardError
from .matrices import Matrix, MinorIndex, parse_rational
from .scalars import QQ

DEFAULT_STEP_LIMIT = 1_000_000


def source_id(i: int) -> str:
    return f"s{i}"


def sink_id(a: int) -> str:
    return f"t{a}"


def dot_id(i: int, a: int) -> str:
    return f"dot:{i},{a}"


@dataclass(frozen=True)
class PlanarNetwork:
    """A weighted DAG with ordered sources and sinks."""

    m: int
    p: int
    vertices: frozenset[str]
    edges: tuple[tuple[str, str, Fraction], ...]
    coords: dict[str, tuple[float, float]] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        names = set(self.vertices)
        for i in range(1, self.m + 1):
            if source_id(i) not in names:
                raise DomainError(f"missing source {source_id(i)}")
        for a in range(1, self.p + 1):
            if sink_id(a) not in names:
                raise DomainError(f"missing sink {sink_id(a)}")
        for frm, to, weight in self.edges:
            if frm not in names or to not in names:
                raise DomainError(f"edge {frm}->{to} references unknown vertex")
            if not isinstance(weight, Fraction):
                raise DomainError(f"edge {frm}->{to} weight must be rational")

    @property
    def sources(self) -> tuple[str, ...]:
        return tuple(source_id(i) for i in range(1, self.m + 1))

    @property
    def sinks(self) -> tuple[str, ...]:
        return tuple(sink_id(a) for a in range(1, self.p + 1))

    def outgoing(self) -> dict[str, list[tuple[str, Fraction]]]:
        table: dict[str, list[tuple[str, Fraction]]] = {v: [] for v in self.vertices}
        for frm, to, weight in self.edges:
            table[frm].append((to, weight))
        return table

    def topological_order(self) -> list[str]:
        """Kahn's algorithm; DomainError when a directed cycle exists."""
        indegree = {v: 0 for v in self.vertices}
        for _, to, _ in self.edges:
            indegree[to] += 1
        ready = sorted(v for v, d in indegree.items() if d == 0)
        out = self.outgoing()
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for to, _ in out[v]:
                indegree[to] -= 1
                if indegree[to] == 0:
                    ready.append(to)
        if len(order) != len(self.vertices):
            raise DomainError("network contains a directed cycle")
        return order

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "p": self.p,
            "vertices": sorted(self.vertices),
            "edges": [
                {"from": frm, "to": to, "weight": str(weight)}
                for frm, to, weight in self.edges
            ],
            "coords": {v: list(xy) for v, xy in sorted(self.coords.items())},
        }

    @classmethod
    def from_json(cls, obj: Any) -> "PlanarNetwork":
        if not isinstance(obj, dict) or not {"m", "p", "edges"} <= set(obj):
            raise DomainError("network JSON needs m, p and edges")
        edges = tuple(
            (e["from"], e["to"], parse_rational(e.get("weight", "1")))
            for e in obj["edges"]
        )
        vertices = set(obj.get("vertices", []))
        for frm, to, _ in edges:
            vertices.add(frm)
            vertices.add(to)
        m, p = int(obj["m"]), int(obj["p"])
        vertices.update(source_id(i) for i in range(1, m + 1))
        vertices.update(sink_id(a) for a in range(1, p + 1))
        coords = {
            v: (float(x), float(y))
            for v, (x, y) in obj.get("coords", {}).items()
        }
        return cls(m, p, frozenset(vertices), edges, coords)

    @classmethod
    def load_text(cls, text: str) -> "PlanarNetwork":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"bad network JSON: {exc}") from exc
        return cls.from_json(obj)

    def to_dot(self) -> str:
        lines = ["digraph network {", "  rankdir=RL;"]
        for v in sorted(self.vertices):
            attrs = ['shape=point'] if v.startswith("dot:") else ['shape=circle']
            if v in self.coords:
                x, y = self.coords[v]
                attrs.append(f'pos="{x},{y}!"')
            attrs.append(f'label="{v}"')
            lines.append(f'  "{v}" [{", ".join(attrs)}];')
        for frm, to, weight in self.edges:
            label = "" if weight == 1 else f' [label="{weight}"]'
            lines.append(f'  "{frm}" -> "{to}"{label};')
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Construction from a diagram
# ---------------------------------------------------------------------------


def postnikov_network(diagram: CauchonDiagram) -> PlanarNetwork:
    """Dots on white cells, row edges right-to-left, column edges downward."""
    m, p = diagram.m, diagram.p
    vertices = {source_id(i) for i in range(1, m + 1)}
    vertices.update(sink_id(a) for a in range(1, p + 1))
    coords: dict[str, tuple[float, float]] = {}
    for i in range(1, m + 1):
        coords[source_id(i)] = (p + 1.0, -float(i))
    for a in range(1, p + 1):
        coords[sink_id(a)] = (float(a), -(m + 1.0))
    whites = diagram.white_cells()
    for (i, a) in whites:
        vertices.add(dot_id(i, a))
        coords[dot_id(i, a)] = (float(a), -float(i))

    one = Fraction(1)
    edges: list[tuple[str, str, Fraction]] = []
    for i in range(1, m + 1):
        row = sorted((a for (r, a) in whites if r == i), reverse=True)
        chain = [source_id(i)] + [dot_id(i, a) for a in row]
        edges.extend((frm, to, one) for frm, to in zip(chain, chain[1:]))
    for a in range(1, p + 1):
        col = sorted(r for (r, c) in whites if c == a)
        if not col:
            continue  # a fully black column never reaches its sink
        chain = [dot_id(r, a) for r in col] + [sink_id(a)]
        edges.extend((frm, to, one) for frm, to in zip(chain, chain[1:]))
    return PlanarNetwork(m, p, frozenset(vertices), tuple(edges), coords)


# ---------------------------------------------------------------------------
# Path matrix and disjoint families
# ---------------------------------------------------------------------------


def path_matrix(network: PlanarNetwork) -> Matrix:
    """Weighted source-to-sink path sums by forward propagation."""
    order = network.topological_order()
    out = network.outgoing()
    rows = []
    for i in range(1, network.m + 1):
        acc: dict[str, Fraction] = {v: Fraction(0) for v in network.vertices}
        acc[source_id(i)] = Fraction(1)
        for v in order:
            if acc[v] == 0:
                continue
            for to, weight in out[v]:
                acc[to] += acc[v] * weight
        rows.append([acc[sink_id(a)] for a in range(1, network.p + 1)])
    return Matrix(QQ, rows)


def _paths_from(
    network_out: dict[str, list[tuple[str, Fraction]]],
    start: str,
    goal: str,
    blocked: set[str],
    budget: list[int],
) -> Iterator[tuple[frozenset[str], Fraction]]:
    """All simple paths start -> goal avoiding blocked vertices."""

    def walk(v: str, used: set[str], weight: Fraction) -> Iterator[
        tuple[frozenset[str], Fraction]
    ]:
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceGuardError(
                "path family enumeration exceeded its step budget"
            )
        if v == goal:
            yield frozenset(used), weight
            return
        for to, w in network_out[v]:
            if to in blocked or to in used:
                continue
            used.add(to)
            yield from walk(to, used, weight * w)
            used.discard(to)

    if start in blocked:
        return
    yield from walk(start, {start}, Fraction(1))


def _sign(perm: tuple[int, ...]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def nonintersecting_count(
    network: PlanarNetwork,
    ix: MinorIndex,
    *,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Fraction:
    """Signed weighted count of vertex-disjoint path families rows -> cols.

    Every pairing of sources to sinks is enumerated with its permutation
    sign, which is the determinant identity for arbitrary DAGs; on planar
    networks the twisted pairings admit no disjoint family, so the value is
    the plain (weighted) number of nonintersecting families.
    """
    network.topological_order()  # rejects cycles up front
    if ix.rows[-1] > network.m or ix.cols[-1] > network.p:
        raise DomainError(f"{ix} does not fit a {network.m}x{network.p} network")
    out = network.outgoing()
    budget = [step_limit]
    k = ix.size
    total = Fraction(0)

    from itertools import permutations as iter_perms

    for pairing in iter_perms(range(k)):
        sign = _sign(pairing)

        def assemble(level: int, blocked: set[str], weight: Fraction) -> Iterator[Fraction]:
            if level == k:
                yield weight
                return
            start = source_id(ix.rows[level])
            goal = sink_id(ix.cols[pairing[level]])
            for used, path_weight in _paths_from(out, start, goal, blocked, budget):
                yield from assemble(level + 1, blocked | used, weight * path_weight)

        for family_weight in assemble(0, set(), Fraction(1)):
            total += sign * family_weight
    return total
