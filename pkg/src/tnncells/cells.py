"""Admissible minor families and cell classification of TNN matrices.

A family of minors is admissible when some totally nonnegative matrix
vanishes exactly on it. Each such family is indexed three independent ways:
by a diagram (through the restoration algorithm), by a restricted
permutation (through its combinatorial minor family), and by any witness
matrix living in the cell. The theory says all three agree; this module
computes them separately and treats any disagreement as an internal error
rather than a tolerable approximation.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable

from . import guards
from .diagrams import CauchonDiagram, Cell, enumerate_diagrams
from .errors import ConsistencyError, DomainError
from .matrices import (
    Matrix,
    MinorFamily,
    MinorIndex,
    is_tnn_bruteforce,
    iter_minor_indices,
    minor,
)
from .permutations import Permutation, minor_family, pipe_dream
from .cauchon import ones_TC, tnn_test, vanishing_family


@dataclass(frozen=True)
class CellDescriptor:
    """One nonempty cell: its minor family with both combinatorial labels."""

    family: MinorFamily
    diagram: CauchonDiagram
    permutation: Permutation

    def __post_init__(self) -> None:
        if (self.family.m, self.family.p) != (self.diagram.m, self.diagram.p):
            raise DomainError("family and diagram ambient sizes differ")
        if self.permutation.n != self.diagram.m + self.diagram.p:
            raise DomainError("permutation size does not match the grid")

    def to_json(self) -> dict[str, Any]:
        return {
            "diagram": self.diagram.to_json(),
            "permutation": self.permutation.one_line(),
            "family": self.family.to_json(),
        }


_FAMILY_TABLE: dict[tuple[int, int], tuple[CellDescriptor, ...]] = {}


def admissible_families(m: int, p: int) -> tuple[CellDescriptor, ...]:
    """One descriptor per diagram, in diagram enumeration order.

    Families come from the permutation route, which is pure combinatorics;
    the exhaustive agreement with the restoration route is the job of
    :func:`unifying_check`. Distinctness across descriptors is still
    asserted here because admissibility testing relies on it.
    """
    guards.ensure_enumerable(m, p, what="cell enumeration")
    key = (m, p)
    if key in _FAMILY_TABLE:
        return _FAMILY_TABLE[key]
    seen: dict[frozenset[MinorIndex], CauchonDiagram] = {}
    out = []
    for diagram in enumerate_diagrams(m, p):
        w = pipe_dream(diagram)
        family = minor_family(w, m, p)
        if family.members in seen:
            raise ConsistencyError(
                f"diagrams {seen[family.members]} and {diagram} share a family"
            )
        seen[family.members] = diagram
        out.append(CellDescriptor(family, diagram, w))
    _FAMILY_TABLE[key] = tuple(out)
    return _FAMILY_TABLE[key]


@dataclass(frozen=True)
class AdmissibleVerdict:
    admissible: bool
    descriptor: CellDescriptor | None


def is_admissible(family: MinorFamily) -> AdmissibleVerdict:
    """Is the family the vanishing set of some nonempty cell?"""
    for descriptor in admissible_families(family.m, family.p):
        if descriptor.family.members == family.members:
            return AdmissibleVerdict(True, descriptor)
    return AdmissibleVerdict(False, None)


def witness_matrix(diagram: CauchonDiagram) -> Matrix:
    """A rational matrix inside the diagram's cell: all white cells set to 1."""
    return ones_TC(diagram)


def exact_vanishing_minors(matrix: Matrix) -> MinorFamily:
    members = frozenset(
        ix
        for ix in iter_minor_indices(matrix.m, matrix.p)
        if matrix.domain.is_zero(minor(matrix, ix))
    )
    return MinorFamily(matrix.m, matrix.p, members)


def cell_of(matrix: Matrix) -> CellDescriptor:
    """Classify a TNN matrix by the cell it belongs to.

    Three routes are computed and compared: the matrix's own vanishing
    minors, the diagram produced by deleting derivations, and the minor
    family of that diagram's permutation. Disagreement raises
    ConsistencyError since it would falsify the classification theorems,
    not merely this input.
    """
    ok, witness = is_tnn_bruteforce(matrix)
    if not ok:
        value = minor(matrix, witness)
        raise DomainError(
            f"matrix is not totally nonnegative: minor {witness} = {value}"
        )
    direct = exact_vanishing_minors(matrix)
    verdict = tnn_test(matrix)
    if not verdict.is_tnn or verdict.diagram is None:
        raise ConsistencyError(
            "brute-force minors say TNN but deleting derivations disagrees"
        )
    diagram = verdict.diagram
    via_restoration = vanishing_family(diagram)
    w = pipe_dream(diagram)
    via_permutation = minor_family(w, matrix.m, matrix.p)
    if direct.members != via_permutation.members:
        raise ConsistencyError(
            f"direct minors {direct} disagree with permutation family "
            f"{via_permutation} for diagram\n{diagram}"
        )
    if direct.members != via_restoration.members:
        raise ConsistencyError(
            f"direct minors {direct} disagree with restoration family "
            f"{via_restoration} for diagram\n{diagram}"
        )
    return CellDescriptor(direct, diagram, w)


# ---------------------------------------------------------------------------
# The exhaustive cross-check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnifyingReport:
    m: int
    p: int
    total: int
    agreements: int
    mismatches: tuple[dict[str, Any], ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "p": self.p,
            "total": self.total,
            "agreements": self.agreements,
            "mismatches": list(self.mismatches),
            "elapsed_seconds": round(self.elapsed, 3),
            "ok": self.ok,
        }


def _check_diagram(args: tuple[int, int, tuple[Cell, ...]]) -> dict[str, Any] | None:
    """Worker: compare the three family routes for one diagram."""
    m, p, black = args
    diagram = CauchonDiagram(m, p, frozenset(black))
    via_restoration = vanishing_family(diagram)
    w = pipe_dream(diagram)
    via_permutation = minor_family(w, m, p)
    witness = witness_matrix(diagram)
    via_witness = exact_vanishing_minors(witness)
    witness_verdict = tnn_test(witness)
    problems = []
    if via_restoration.members != via_permutation.members:
        problems.append("restoration family differs from permutation family")
    if via_restoration.members != via_witness.members:
        problems.append("witness matrix vanishing differs from restoration family")
    if not witness_verdict.is_tnn or witness_verdict.diagram != diagram:
        problems.append("witness matrix does not test back to its own diagram")
    if not problems:
        return None
    return {
        "diagram": diagram.to_json(),
        "permutation": w.one_line(),
        "problems": problems,
        "restoration": str(via_restoration),
        "permutation_family": str(via_permutation),
        "witness": str(via_witness),
    }


def unifying_check(m: int, p: int, *, jobs: int = 1) -> UnifyingReport:
    """Verify the three-route agreement for every diagram of the grid."""
    guards.ensure_enumerable(m, p, what="unifying check")
    started = time.monotonic()
    work = [
        (m, p, tuple(diagram.black_sorted()))
        for diagram in enumerate_diagrams(m, p)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results: Iterable[dict[str, Any] | None] = pool.map(
                _check_diagram, work, chunksize=8
            )
            mismatches = tuple(r for r in results if r is not None)
    else:
        mismatches = tuple(
            r for r in map(_check_diagram, work) if r is not None
        )
    elapsed = time.monotonic() - started
    return UnifyingReport(
        m, p, len(work), len(work) - len(mismatches), mismatches, elapsed
    )
