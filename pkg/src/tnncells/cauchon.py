"""Deleting derivations, restoration, TNN testing and canonical matrices.

One elementary step at index (j, beta) rewrites every entry strictly
northwest of the pivot:

    x[i,a]  ->  x[i,a] -/+ x[i,beta] * x[j,beta]^(-1) * x[j,a]

for i < j and a < beta, provided the pivot x[j,beta] is nonzero; a zero
pivot makes the step the identity. Deleting derivations composes the minus
steps from (m,p) down to (1,1) in reverse lexicographic order; restoration
composes the plus steps in the opposite direction. Each minus step undoes
the matching plus step on any matrix whatsoever (the step never touches row
j or column beta, so the pivot is the same on both sides), hence the two
sweeps are mutually inverse with no genericity assumptions.

The canonical matrix of a diagram arises by seeding zeros on black cells,
nonzero scalars on white cells, and restoring. Its identically-zero minors
form the vanishing family of the diagram; an exact rational-function
backend decides membership, with modular sampling available as a sound
nonzero pre-filter (a nonzero value at one point certifies a nonzero
minor, while zeros still get the exact treatment).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterator, Mapping

from . import guards
from .diagrams import CauchonDiagram, Cell, is_cauchon
from .errors import DomainError
from .matrices import Matrix, MinorFamily, MinorIndex, iter_minor_indices, minor
from .scalars import (
    QQ,
    PrimeFieldDomain,
    RatFunc,
    RationalDomain,
    RationalFunctionDomain,
    ScalarDomain,
    ZERO_TEST_PRIME,
)

StepIndex = tuple[int, int]


def step_indices(m: int, p: int) -> list[StepIndex]:
    """All step indices of the m x p grid in ascending lexicographic order."""
    return [(j, beta) for j in range(1, m + 1) for beta in range(1, p + 1)]


def _apply_step(matrix: Matrix, j: int, beta: int, sign: int) -> Matrix:
    if not (1 <= j <= matrix.m and 1 <= beta <= matrix.p):
        raise DomainError(f"step ({j},{beta}) outside {matrix.m}x{matrix.p}")
    dom = matrix.domain
    pivot = matrix.rows[j - 1][beta - 1]
    if dom.is_zero(pivot):
        return matrix
    rows = [list(r) for r in matrix.rows]
    for i in range(j - 1):
        factor = dom.div(rows[i][beta - 1], pivot)
        if dom.is_zero(factor):
            continue
        for a in range(beta - 1):
            delta = dom.mul(factor, rows[j - 1][a])
            if sign > 0:
                rows[i][a] = dom.add(rows[i][a], delta)
            else:
                rows[i][a] = dom.sub(rows[i][a], delta)
    return Matrix(dom, rows)


def delete_step(matrix: Matrix, j: int, beta: int) -> Matrix:
    return _apply_step(matrix, j, beta, -1)


def restore_step(matrix: Matrix, j: int, beta: int) -> Matrix:
    return _apply_step(matrix, j, beta, +1)


def deleting_stages(matrix: Matrix) -> Iterator[tuple[StepIndex, Matrix]]:
    """Yield (step, matrix after that step) from (m,p) down to (1,1)."""
    for j, beta in reversed(step_indices(matrix.m, matrix.p)):
        matrix = delete_step(matrix, j, beta)
        yield (j, beta), matrix


def restoration_stages(matrix: Matrix) -> Iterator[tuple[StepIndex, Matrix]]:
    """Yield (step, matrix after that step) from (1,1) up to (m,p)."""
    for j, beta in step_indices(matrix.m, matrix.p):
        matrix = restore_step(matrix, j, beta)
        yield (j, beta), matrix


def deleting_derivations(matrix: Matrix) -> Matrix:
    for _, matrix in deleting_stages(matrix):
        pass
    return matrix


def restoration(matrix: Matrix) -> Matrix:
    for _, matrix in restoration_stages(matrix):
        pass
    return matrix


# ---------------------------------------------------------------------------
# TNN testing
# ---------------------------------------------------------------------------


def zero_pattern(matrix: Matrix) -> frozenset[Cell]:
    dom = matrix.domain
    return frozenset(
        (i, a)
        for i in range(1, matrix.m + 1)
        for a in range(1, matrix.p + 1)
        if dom.is_zero(matrix.rows[i - 1][a - 1])
    )


@dataclass(frozen=True)
class TnnVerdict:
    is_tnn: bool
    diagram: CauchonDiagram | None
    final: Matrix


def tnn_test(matrix: Matrix) -> TnnVerdict:
    """Decide total nonnegativity by one deleting-derivations sweep.

    The input is totally nonnegative exactly when the sweep's output is
    entrywise nonnegative and its zero set is a valid diagram.
    """
    if not isinstance(matrix.domain, RationalDomain):
        raise DomainError("the TNN test needs rational entries")
    final = deleting_derivations(matrix)
    if any(x < 0 for row in final.rows for x in row):
        return TnnVerdict(False, None, final)
    zeros = zero_pattern(final)
    if not is_cauchon(matrix.m, matrix.p, zeros):
        return TnnVerdict(False, None, final)
    return TnnVerdict(True, CauchonDiagram(matrix.m, matrix.p, zeros), final)


# ---------------------------------------------------------------------------
# Canonical matrices of a diagram
# ---------------------------------------------------------------------------


def seed_matrix(
    diagram: CauchonDiagram,
    domain: ScalarDomain,
    assignment: Mapping[Cell, Any],
) -> Matrix:
    """Zero on black cells, the assigned nonzero scalar on white cells."""
    rows = []
    for i in range(1, diagram.m + 1):
        row = []
        for a in range(1, diagram.p + 1):
            if (i, a) in diagram.black:
                row.append(domain.zero())
            else:
                if (i, a) not in assignment:
                    raise DomainError(f"white cell ({i},{a}) has no assigned value")
                value = assignment[(i, a)]
                if domain.is_zero(value):
                    raise DomainError(f"white cell ({i},{a}) assigned zero")
                row.append(value)
        rows.append(row)
    return Matrix(domain, rows)


def build_TC(
    diagram: CauchonDiagram,
    domain: ScalarDomain,
    assignment: Mapping[Cell, Any],
) -> Matrix:
    """Restore the seeded matrix of the diagram."""
    return restoration(seed_matrix(diagram, domain, assignment))


def white_variable(cell: Cell) -> str:
    return f"t[{cell[0]},{cell[1]}]"


def symbolic_domain(diagram: CauchonDiagram) -> RationalFunctionDomain:
    return RationalFunctionDomain(
        [white_variable(c) for c in diagram.white_cells()]
    )


def symbolic_TC(diagram: CauchonDiagram) -> Matrix:
    """The canonical matrix with an independent variable per white cell.

    Every pivot used during restoration is an untouched seed entry (steps at
    row j never modify row j), so denominators stay monomial and entries are
    honest rational functions of the white-cell variables.
    """
    dom = symbolic_domain(diagram)
    assignment = {c: dom.var(white_variable(c)) for c in diagram.white_cells()}
    return build_TC(diagram, dom, assignment)


def ones_TC(diagram: CauchonDiagram) -> Matrix:
    """The canonical matrix with every white cell set to 1 (rational entries)."""
    from fractions import Fraction

    assignment = {c: Fraction(1) for c in diagram.white_cells()}
    return build_TC(diagram, QQ, assignment)


# ---------------------------------------------------------------------------
# Vanishing families
# ---------------------------------------------------------------------------


def _modular_minor_tables(
    diagram: CauchonDiagram, samples: int, rng: random.Random
) -> list[dict[MinorIndex, int]]:
    dom = PrimeFieldDomain(ZERO_TEST_PRIME)
    tables = []
    for _ in range(samples):
        assignment = {
            c: rng.randrange(1, ZERO_TEST_PRIME) for c in diagram.white_cells()
        }
        tc = build_TC(diagram, dom, assignment)
        tables.append(
            {ix: minor(tc, ix) for ix in iter_minor_indices(diagram.m, diagram.p)}
        )
    return tables


def sampled_vanishing_family(
    diagram: CauchonDiagram, *, samples: int = 20, seed: int = 0
) -> MinorFamily:
    """Probabilistic vanishing family from modular evaluation alone.

    A minor that is nonzero at any sampled point is certainly nonzero; one
    that is zero at every sample is reported as vanishing without exact
    confirmation. Useful as a cross-check, not as an authority.
    """
    if samples < 1:
        raise DomainError("need at least one sample")
    rng = random.Random(seed)
    tables = _modular_minor_tables(diagram, samples, rng)
    members = frozenset(
        ix for ix in tables[0] if all(t[ix] == 0 for t in tables)
    )
    return MinorFamily(diagram.m, diagram.p, members)


def vanishing_family(
    diagram: CauchonDiagram,
    *,
    prefilter: bool = True,
    samples: int = 3,
    seed: int = 0,
) -> MinorFamily:
    """The minors of the symbolic canonical matrix that vanish identically.

    Verdicts are exact: the symbolic backend confirms every reported zero.
    With the pre-filter on, modular sampling first certifies most minors
    nonzero so that only the surviving candidates pay for symbolic
    determinants.
    """
    default = (
        guards.DEFAULT_CELL_LIMIT if prefilter else guards.EXACT_FAMILY_LIMIT
    )
    guards.ensure_enumerable(
        diagram.m, diagram.p, default=default, what="symbolic minor scan"
    )
    candidates = list(iter_minor_indices(diagram.m, diagram.p))
    if prefilter:
        rng = random.Random(seed)
        tables = _modular_minor_tables(diagram, samples, rng)
        candidates = [
            ix for ix in candidates if all(t[ix] == 0 for t in tables)
        ]
    tc = symbolic_TC(diagram)
    members = frozenset(
        ix for ix in candidates if minor(tc, ix).is_zero
    )
    return MinorFamily(diagram.m, diagram.p, members)
