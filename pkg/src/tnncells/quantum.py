"""Quantum matrix algebra: normal forms, commutators and quantum minors.

Generators X[i,a] sit at the cells of an m x p grid and satisfy, for
(i,a) lexicographically before (k,g):

    same row or same column:   X[k,g] X[i,a] = q^(-1) X[i,a] X[k,g]
    i < k and a > g:           the two generators commute
    i < k and a < g:           X[k,g] X[i,a] = X[i,a] X[k,g]
                                 - (q - q^(-1)) X[i,g] X[k,a]

Monomials in normal form list their generators in nondecreasing
lexicographic order; every product is rewritten back to that basis. Each
rewrite strictly lowers the word in degree-lex order, so reduction
terminates, and the Ore-extension presentation guarantees the basis is
honest (confluence is exercised by tests rather than assumed: reduction
strategies are pluggable).

Coefficients are integer Laurent polynomials in q. The parameter is never
specialized here; the q = 1 limit belongs to the Poisson side.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations as iter_permutations
from typing import Any, Iterable, Literal

from .errors import DomainError
from .scalars import LaurentQ, Node, evaluate_node, int_const, parse_expression

Gen = tuple[int, int]
Word = tuple[Gen, ...]

Strategy = Literal["leftmost", "rightmost"]

_TWO_BY_TWO_ALIASES = {"a": (1, 1), "b": (1, 2), "c": (2, 1), "d": (2, 2)}


def _pair_product(v: Gen, u: Gen) -> list[tuple[Word, LaurentQ]]:
    """Normal form of X_v X_u for an out-of-order pair v > u."""
    (k, g), (i, a) = v, u
    if i == k or a == g:
        return [((u, v), LaurentQ.q_power(-1))]
    if i < k and a > g:
        return [((u, v), LaurentQ.ONE)]
    # i < k and a < g: the straightening relation
    return [
        ((u, v), LaurentQ.ONE),
        (((i, g), (k, a)), -LaurentQ.Q_MINUS_QINV),
    ]


def _reduce_word(
    word: Word, strategy: Strategy, memo: dict[Word, dict[Word, LaurentQ]]
) -> dict[Word, LaurentQ]:
    if word in memo:
        return memo[word]
    spots = [
        t for t in range(len(word) - 1) if word[t] > word[t + 1]
    ]
    if not spots:
        memo[word] = {word: LaurentQ.ONE}
        return memo[word]
    t = spots[0] if strategy == "leftmost" else spots[-1]
    head, v, u, tail = word[:t], word[t], word[t + 1], word[t + 2:]
    out: dict[Word, LaurentQ] = {}
    for pair, coeff in _pair_product(v, u):
        for reduced, inner in _reduce_word(
            head + pair + tail, strategy, memo
        ).items():
            total = out.get(reduced, LaurentQ.ZERO) + coeff * inner
            if total.is_zero:
                out.pop(reduced, None)
            else:
                out[reduced] = total
    memo[word] = out
    return out


class QPoly:
    """An element of the quantum matrix algebra in normal form."""

    __slots__ = ("m", "p", "terms")

    def __init__(self, m: int, p: int, terms: dict[Word, LaurentQ]):
        clean: dict[Word, LaurentQ] = {}
        for word, coeff in terms.items():
            if coeff.is_zero:
                continue
            for (i, a) in word:
                if not (1 <= i <= m and 1 <= a <= p):
                    raise DomainError(f"generator X[{i},{a}] outside {m}x{p}")
            if any(x > y for x, y in zip(word, word[1:])):
                raise DomainError(f"word {word} is not normally ordered")
            clean[word] = coeff
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("QPoly is immutable")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, m: int, p: int) -> "QPoly":
        return cls(m, p, {})

    @classmethod
    def const(cls, m: int, p: int, value: LaurentQ | int) -> "QPoly":
        coeff = value if isinstance(value, LaurentQ) else LaurentQ.const(value)
        return cls(m, p, {(): coeff})

    @classmethod
    def one(cls, m: int, p: int) -> "QPoly":
        return cls.const(m, p, 1)

    @classmethod
    def generator(cls, m: int, p: int, i: int, a: int) -> "QPoly":
        return cls(m, p, {((i, a),): LaurentQ.ONE})

    # -- ring structure -----------------------------------------------------------

    def _check(self, other: "QPoly") -> None:
        if (self.m, self.p) != (other.m, other.p):
            raise DomainError("mixed ambient grid sizes")

    def _coerce(self, other: Any) -> "QPoly":
        if isinstance(other, QPoly):
            self._check(other)
            return other
        if isinstance(other, (int, LaurentQ)):
            return QPoly.const(self.m, self.p, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "QPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            total = terms.get(word, LaurentQ.ZERO) + coeff
            if total.is_zero:
                terms.pop(word, None)
            else:
                terms[word] = total
        return QPoly(self.m, self.p, terms)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(self.m, self.p, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: Any) -> "QPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "QPoly":
        return (-self) + other

    def scaled(self, coeff: LaurentQ | int) -> "QPoly":
        factor = coeff if isinstance(coeff, LaurentQ) else LaurentQ.const(coeff)
        return QPoly(
            self.m, self.p, {w: factor * c for w, c in self.terms.items()}
        )

    def multiply(self, other: "QPoly", strategy: Strategy = "leftmost") -> "QPoly":
        self._check(other)
        memo: dict[Word, dict[Word, LaurentQ]] = {}
        terms: dict[Word, LaurentQ] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c12 = c1 * c2
                for reduced, inner in _reduce_word(w1 + w2, strategy, memo).items():
                    total = terms.get(reduced, LaurentQ.ZERO) + c12 * inner
                    if total.is_zero:
                        terms.pop(reduced, None)
                    else:
                        terms[reduced] = total
        return QPoly(self.m, self.p, terms)

    def __mul__(self, other: Any) -> "QPoly":
        if isinstance(other, (int, LaurentQ)):
            return self.scaled(other)
        if isinstance(other, QPoly):
            return self.multiply(other)
        return NotImplemented

    def __rmul__(self, other: Any) -> "QPoly":
        if isinstance(other, (int, LaurentQ)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "QPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("quantum polynomials admit nonnegative powers only")
        result = QPoly.one(self.m, self.p)
        for _ in range(exponent):
            result = result.multiply(self)
        return result

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, self.p, frozenset(
            (w, frozenset(c.coeffs.items())) for w, c in self.terms.items()
        )))

    # -- presentation ---------------------------------------------------------------

    def _gen_str(self, gen: Gen, aliases: bool) -> str:
        if aliases and (self.m, self.p) == (2, 2):
            for name, cell in _TWO_BY_TWO_ALIASES.items():
                if cell == gen:
                    return name
        return f"X[{gen[0]},{gen[1]}]"

    def to_str(self, aliases: bool = True) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            coeff = self.terms[word]
            # pull a negative leading q-power out so sums read "x - (...)*y"
            sign = ""
            if coeff.coeffs[max(coeff.coeffs)] < 0:
                sign, coeff = "-", -coeff
            gens = "*".join(self._gen_str(g, aliases) for g in word)
            coeff_str = str(coeff)
            if word:
                if coeff == LaurentQ.ONE:
                    body = gens
                elif len(coeff.coeffs) > 1:
                    body = f"({coeff_str})*{gens}"
                else:
                    body = f"{coeff_str}*{gens}"
            else:
                body = coeff_str if len(coeff.coeffs) <= 1 else f"({coeff_str})"
            chunks.append(sign + body)
        out = chunks[0]
        for chunk in chunks[1:]:
            out += f" - {chunk[1:]}" if chunk.startswith("-") else f" + {chunk}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"QPoly({self.to_str()})"


# ---------------------------------------------------------------------------
# Derived operations
# ---------------------------------------------------------------------------


def q_multiply(f: QPoly, g: QPoly, strategy: Strategy = "leftmost") -> QPoly:
    return f.multiply(g, strategy)


def commutator(f: QPoly, g: QPoly) -> QPoly:
    return f.multiply(g) - g.multiply(f)


def quantum_minor(
    m: int, p: int, rows: Iterable[int], cols: Iterable[int]
) -> QPoly:
    """The signed permutation sum; rows strictly increasing keep it normal."""
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols):
        raise DomainError("quantum minors need equally many rows and columns")
    if any(x >= y for x, y in zip(rows, rows[1:])) or any(
        x >= y for x, y in zip(cols, cols[1:])
    ):
        raise DomainError("row and column sets must increase strictly")
    if not rows:
        return QPoly.one(m, p)
    k = len(rows)
    terms: dict[Word, LaurentQ] = {}
    for sigma in iter_permutations(range(k)):
        length = sum(
            1
            for x in range(k)
            for y in range(x + 1, k)
            if sigma[x] > sigma[y]
        )
        word = tuple((rows[t], cols[sigma[t]]) for t in range(k))
        coeff = terms.get(word, LaurentQ.ZERO) + LaurentQ.minus_q_to(length)
        terms[word] = coeff
    return QPoly(m, p, terms)


def defining_relations_hold(m: int, p: int) -> list[tuple[Gen, Gen]]:
    """Check every generator pair's relation as a normal-form identity.

    Returns the list of offending pairs (empty on success). Each check
    reduces the product taken in the wrong order and compares against the
    relation's right-hand side built independently from sums of ordered
    words, so a reduction bug cannot cancel itself out.
    """
    gens = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    bad = []
    for u in gens:
        for v in gens:
            if not u < v:
                continue
            xu = QPoly.generator(m, p, *u)
            xv = QPoly.generator(m, p, *v)
            wrong_order = xv.multiply(xu)
            (i, a), (k, g) = u, v
            if i == k or a == g:
                expected = QPoly(m, p, {(u, v): LaurentQ.q_power(-1)})
            elif a > g:
                expected = QPoly(m, p, {(u, v): LaurentQ.ONE})
            else:
                expected = QPoly(
                    m,
                    p,
                    {
                        (u, v): LaurentQ.ONE,
                        ((i, g), (k, a)): -LaurentQ.Q_MINUS_QINV,
                    },
                )
            if wrong_order != expected:
                bad.append((u, v))
    return bad


def is_central_2x2_determinant() -> bool:
    """Does the 2x2 quantum determinant commute with all four generators?"""
    dq = quantum_minor(2, 2, (1, 2), (1, 2))
    return all(
        commutator(dq, QPoly.generator(2, 2, i, a)).is_zero
        for i in (1, 2)
        for a in (1, 2)
    )


# ---------------------------------------------------------------------------
# Expression parsing
# ---------------------------------------------------------------------------


def parse_qpoly(text: str, m: int, p: int) -> QPoly:
    """Parse an expression over X[i,a] (a,b,c,d at 2x2), q and integers."""
    node: Node = parse_expression(text)

    def const(value: Fraction) -> QPoly:
        return QPoly.const(m, p, int_const(value))

    def symbol(name: str) -> QPoly:
        if name == "q":
            return QPoly.const(m, p, LaurentQ.q_power(1))
        if (m, p) == (2, 2) and name in _TWO_BY_TWO_ALIASES:
            return QPoly.generator(m, p, *_TWO_BY_TWO_ALIASES[name])
        if name.startswith("X["):
            i, a = name[2:-1].split(",")
            return QPoly.generator(m, p, int(i), int(a))
        raise DomainError(f"unknown generator {name!r} for a {m}x{p} grid")

    def power(base: QPoly, exponent: int) -> QPoly:
        if exponent < 0:
            if set(base.terms) == {()}:
                return QPoly.const(m, p, base.terms[()] ** exponent)
            raise DomainError("negative powers only apply to powers of q")
        return base ** exponent

    return evaluate_node(node, const=const, symbol=symbol, power=power)
