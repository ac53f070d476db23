"""The standard Poisson bracket on matrix coordinates, and flow checking.

Coordinates Y[i,a] generate a commutative polynomial ring. On generators
with (i,a) lexicographically before (k,g) the bracket is

    same row or same column:  {Y[i,a], Y[k,g]} = Y[i,a] Y[k,g]
    i < k, a > g:             0
    i < k, a < g:             2 Y[i,g] Y[k,a]

and extends to polynomials by bilinearity and the Leibniz rule. The q-side
engine reproduces the same table through commutators: [X, X'] / (q - 1) at
q = 1 must match the bracket on the corresponding coordinates, and
:func:`semiclassical_check` verifies exactly that, treating a failed exact
division by (q - 1) as a broken invariant rather than bad input.

Hamiltonian paths are checked in a small closed-form function ring: sums
p(t) * e^(l*t) with rational l and rational polynomial p. Distinct
exponentials are linearly independent over polynomials, so a zero residual
in this ring is an identity, not an approximation; a numeric grid fallback
covers nothing today but keeps the reporting honest when paths stop being
closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import ConsistencyError, DomainError
from .matrices import Matrix
from .quantum import QPoly, commutator
from .scalars import MPoly, Node, evaluate_node, int_const, parse_expression

Cell = tuple[int, int]

_TWO_BY_TWO_ALIASES = {"a": (1, 1), "b": (1, 2), "c": (2, 1), "d": (2, 2)}


def coordinate_name(i: int, a: int) -> str:
    return f"Y[{i},{a}]"


def coordinate_names(m: int, p: int) -> tuple[str, ...]:
    return tuple(
        coordinate_name(i, a)
        for i in range(1, m + 1)
        for a in range(1, p + 1)
    )


def coordinate(m: int, p: int, i: int, a: int) -> MPoly:
    if not (1 <= i <= m and 1 <= a <= p):
        raise DomainError(f"coordinate Y[{i},{a}] outside {m}x{p}")
    return MPoly.var(coordinate_names(m, p), coordinate_name(i, a))


def _generator_bracket(m: int, p: int, u: Cell, v: Cell) -> MPoly:
    """{Y_u, Y_v} for u < v in lexicographic order."""
    names = coordinate_names(m, p)
    (i, a), (k, g) = u, v
    if i == k or a == g:
        return MPoly.var(names, coordinate_name(*u)) * MPoly.var(
            names, coordinate_name(*v)
        )
    if a > g:
        return MPoly.zero(names)
    return 2 * MPoly.var(names, coordinate_name(i, g)) * MPoly.var(
        names, coordinate_name(k, a)
    )


def bracket(m: int, p: int, f: MPoly, g: MPoly) -> MPoly:
    """Extend the generator table by bilinearity and Leibniz."""
    names = coordinate_names(m, p)
    if f.names != names or g.names != names:
        raise DomainError(f"operands must live in the {m}x{p} coordinate ring")
    cells = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    total = MPoly.zero(names)
    for s, u in enumerate(cells):
        fu = f.partial(coordinate_name(*u))
        gu = g.partial(coordinate_name(*u))
        if fu.is_zero and gu.is_zero:
            continue
        for v in cells[s + 1:]:
            fv = f.partial(coordinate_name(*v))
            gv = g.partial(coordinate_name(*v))
            pairing = fu * gv - fv * gu
            if pairing.is_zero:
                continue
            total = total + _generator_bracket(m, p, u, v) * pairing
    return total


def jacobi_check(m: int, p: int, f: MPoly, g: MPoly, h: MPoly) -> MPoly:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}; zero when the bracket is honest."""
    return (
        bracket(m, p, f, bracket(m, p, g, h))
        + bracket(m, p, g, bracket(m, p, h, f))
        + bracket(m, p, h, bracket(m, p, f, g))
    )


def parse_poisson(text: str, m: int, p: int) -> MPoly:
    """Parse a polynomial in Y[i,a] (aliases a,b,c,d at 2x2) with int coefficients."""
    names = coordinate_names(m, p)
    node: Node = parse_expression(text)

    def const(value: Fraction) -> MPoly:
        return MPoly.const(names, int_const(value))

    def symbol(name: str) -> MPoly:
        if (m, p) == (2, 2) and name in _TWO_BY_TWO_ALIASES:
            return coordinate(m, p, *_TWO_BY_TWO_ALIASES[name])
        if name.startswith("Y["):
            i, a = name[2:-1].split(",")
            return coordinate(m, p, int(i), int(a))
        raise DomainError(f"unknown coordinate {name!r} for a {m}x{p} grid")

    def power(base: MPoly, exponent: int) -> MPoly:
        return base ** exponent

    return evaluate_node(node, const=const, symbol=symbol, power=power)


# ---------------------------------------------------------------------------
# The quantum-to-Poisson bridge
# ---------------------------------------------------------------------------


def _word_to_poly(word: tuple[Cell, ...], m: int, p: int) -> MPoly:
    names = coordinate_names(m, p)
    out = MPoly.one(names)
    for cell in word:
        out = out * MPoly.var(names, coordinate_name(*cell))
    return out


def semiclassical_poly(qpoly: QPoly) -> MPoly:
    """Divide by (q - 1), set q = 1 and read the words commutatively."""
    m, p = qpoly.m, qpoly.p
    names = coordinate_names(m, p)
    out = MPoly.zero(names)
    for word, coeff in qpoly.terms.items():
        try:
            scaled = coeff.divided_by_q_minus_one()
        except DomainError as exc:
            raise ConsistencyError(
                f"coefficient {coeff} of {word} is not divisible by q - 1"
            ) from exc
        out = out + scaled.at_one() * _word_to_poly(word, m, p)
    return out


def semiclassical_check(m: int, p: int, i: int, a: int, k: int, g: int) -> bool:
    """Does [X,X']/(q-1) at q=1 reproduce {Y,Y'} for this generator pair?"""
    if (i, a) == (k, g):
        raise DomainError("pick two distinct generators")
    comm = commutator(
        QPoly.generator(m, p, i, a), QPoly.generator(m, p, k, g)
    )
    classical = semiclassical_poly(comm)
    expected = bracket(m, p, coordinate(m, p, i, a), coordinate(m, p, k, g))
    return classical == expected


# ---------------------------------------------------------------------------
# Closed-form functions of t
# ---------------------------------------------------------------------------


def _strip(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


class ExpPoly:
    """A finite sum of p(t) * e^(l*t) terms with rational l and p.

    The map l -> p is a canonical form because distinct exponentials are
    linearly independent over polynomials; consequently is_zero and
    equality are exact.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Mapping[Fraction, Sequence[Fraction]]):
        clean: dict[Fraction, tuple[Fraction, ...]] = {}
        for lam, coeffs in parts.items():
            stripped = _strip(tuple(Fraction(c) for c in coeffs))
            if stripped:
                clean[Fraction(lam)] = stripped
        object.__setattr__(self, "parts", clean)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("ExpPoly is immutable")

    @classmethod
    def const(cls, value: Fraction | int) -> "ExpPoly":
        return cls({Fraction(0): (Fraction(value),)})

    @classmethod
    def t(cls) -> "ExpPoly":
        return cls({Fraction(0): (Fraction(0), Fraction(1))})

    @classmethod
    def exponential(cls, lam: Fraction) -> "ExpPoly":
        return cls({Fraction(lam): (Fraction(1),)})

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def _coerce(self, other: Any) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ExpPoly.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "ExpPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        parts: dict[Fraction, list[Fraction]] = {
            lam: list(coeffs) for lam, coeffs in self.parts.items()
        }
        for lam, coeffs in other.parts.items():
            mine = parts.setdefault(lam, [])
            if len(mine) < len(coeffs):
                mine.extend([Fraction(0)] * (len(coeffs) - len(mine)))
            for idx, c in enumerate(coeffs):
                mine[idx] += c
        return ExpPoly(parts)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(
            {lam: tuple(-c for c in coeffs) for lam, coeffs in self.parts.items()}
        )

    def __sub__(self, other: Any) -> "ExpPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "ExpPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "ExpPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        parts: dict[Fraction, list[Fraction]] = {}
        for l1, c1 in self.parts.items():
            for l2, c2 in other.parts.items():
                lam = l1 + l2
                conv = parts.setdefault(lam, [])
                need = len(c1) + len(c2) - 1
                if len(conv) < need:
                    conv.extend([Fraction(0)] * (need - len(conv)))
                for x, cx in enumerate(c1):
                    if cx == 0:
                        continue
                    for y, cy in enumerate(c2):
                        conv[x + y] += cx * cy
        return ExpPoly(parts)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ExpPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("paths admit nonnegative integer powers only")
        out = ExpPoly.const(1)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(frozenset((lam, coeffs) for lam, coeffs in self.parts.items()))

    def derivative(self) -> "ExpPoly":
        parts: dict[Fraction, list[Fraction]] = {}
        for lam, coeffs in self.parts.items():
            # (p e^{lt})' = (p' + l p) e^{lt}
            out = [Fraction(0)] * len(coeffs)
            for idx, c in enumerate(coeffs):
                if idx >= 1:
                    out[idx - 1] += idx * c
                out[idx] += lam * c
            parts[lam] = out
        return ExpPoly(parts)

    def eval_float(self, t: float) -> float:
        total = 0.0
        for lam, coeffs in self.parts.items():
            poly = 0.0
            for c in reversed(coeffs):
                poly = poly * t + float(c)
            total += poly * math.exp(float(lam) * t)
        return total

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        chunks = []
        for lam in sorted(self.parts):
            coeffs = self.parts[lam]
            poly = " + ".join(
                f"{c}" if idx == 0 else (f"{c}*t" if idx == 1 else f"{c}*t^{idx}")
                for idx, c in enumerate(coeffs)
                if c != 0
            )
            if lam == 0:
                chunks.append(f"({poly})")
            else:
                chunks.append(f"({poly})*exp({lam}*t)")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"ExpPoly({self})"


def parse_path_entry(text: str) -> ExpPoly:
    """Parse one path coordinate: rationals, t, and exp(<rational>*t)."""
    node = parse_expression(text, functions=("exp",))

    def const(value: Fraction) -> ExpPoly:
        return ExpPoly.const(value)

    def symbol(name: str) -> ExpPoly:
        if name == "t":
            return ExpPoly.t()
        raise DomainError(f"paths know only the variable t, not {name!r}")

    def power(base: ExpPoly, exponent: int) -> ExpPoly:
        return base ** exponent

    def call(func: str, arg: ExpPoly) -> ExpPoly:
        if func != "exp":
            raise DomainError(f"unknown function {func!r}")
        if arg.is_zero:
            return ExpPoly.const(1)
        if set(arg.parts) != {Fraction(0)}:
            raise DomainError("exp arguments must be rational multiples of t")
        coeffs = arg.parts[Fraction(0)]
        if len(coeffs) > 2 or (len(coeffs) >= 1 and coeffs[0] != 0):
            raise DomainError("exp arguments must be rational multiples of t")
        return ExpPoly.exponential(coeffs[1])

    return evaluate_node(node, const=const, symbol=symbol, power=power, call=call)


@dataclass(frozen=True)
class FlowPath:
    """A matrix of closed-form functions of t."""

    m: int
    p: int
    entries: tuple[tuple[ExpPoly, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.m or any(
            len(row) != self.p for row in self.entries
        ):
            raise DomainError(f"path entries do not form an {self.m}x{self.p} grid")

    def entry(self, i: int, a: int) -> ExpPoly:
        return self.entries[i - 1][a - 1]

    @classmethod
    def from_json(cls, obj: Any) -> "FlowPath":
        if not isinstance(obj, dict) or not {"m", "p", "entries"} <= set(obj):
            raise DomainError("path JSON needs m, p and entries")
        entries = tuple(
            tuple(parse_path_entry(str(cell)) for cell in row)
            for row in obj["entries"]
        )
        return cls(int(obj["m"]), int(obj["p"]), entries)

    @classmethod
    def constant(cls, matrix: Matrix) -> "FlowPath":
        entries = tuple(
            tuple(ExpPoly.const(Fraction(x)) for x in row) for row in matrix.rows
        )
        return cls(matrix.m, matrix.p, entries)


@dataclass(frozen=True)
class FlowReport:
    symbolic_zero: bool
    max_residual: float
    worst_coordinate: Cell | None

    @property
    def ok(self) -> bool:
        return self.symbolic_zero or self.max_residual < 1e-9


def verify_flow(
    path: FlowPath,
    hamiltonian: MPoly,
    ts: Iterable[float] = (),
) -> FlowReport:
    """Check d/dt of each path entry against {H, Y[i,a]} along the path.

    Residuals are computed in the closed-form ring, so a symbolic zero is
    exact. Nonzero residuals fall back to the sample grid and report the
    largest absolute value encountered.
    """
    m, p = path.m, path.p
    names = coordinate_names(m, p)
    if hamiltonian.names != names:
        raise DomainError(f"Hamiltonian must live in the {m}x{p} coordinate ring")
    values = {
        coordinate_name(i, a): path.entry(i, a)
        for i in range(1, m + 1)
        for a in range(1, p + 1)
    }
    grid = list(ts) or [k / 99 for k in range(100)]
    worst = 0.0
    worst_cell: Cell | None = None
    all_zero = True
    for i in range(1, m + 1):
        for a in range(1, p + 1):
            flow_rhs = bracket(m, p, hamiltonian, coordinate(m, p, i, a))
            rhs = flow_rhs.evaluate(values) if not flow_rhs.is_zero else ExpPoly.const(0)
            if isinstance(rhs, int):
                rhs = ExpPoly.const(rhs)
            residual = path.entry(i, a).derivative() - rhs
            if residual.is_zero:
                continue
            all_zero = False
            peak = max(abs(residual.eval_float(t)) for t in grid)
            if peak >= worst:
                worst, worst_cell = peak, (i, a)
    if all_zero:
        return FlowReport(True, 0.0, None)
    return FlowReport(False, worst, worst_cell)
