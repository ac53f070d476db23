"""Exact scalar arithmetic: polynomials, rational functions and Laurent series in q.

Three concrete rings live here, all with exact zero tests:

* :class:`MPoly`, multivariate polynomials with integer coefficients over a
  fixed, ordered tuple of variable names;
* :class:`RatFunc`, quotients of MPoly values reduced by content only (integer
  gcd and per-variable monomial content; no full multivariate gcd);
* :class:`LaurentQ`, Laurent polynomials in a single parameter q.

On top of these, :class:`ScalarDomain` gives matrix code a uniform handle on
"field-like arithmetic with an exact zero test"; instances cover rationals,
prime fields and fields of rational functions.

The module also contains the small expression grammar shared by the command
line tools: variables such as ``t[1,3]`` or ``a``, integer (and ``3/2``
rational) literals, ``+ - * ^``, parentheses, and optionally function calls
like ``exp(...)``. Text parses to a tiny AST which callers evaluate in the
algebra of their choice, so one grammar serves commutative polynomials,
rational functions, quantum polynomials and flow paths alike.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import DomainError

# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


class MPoly:
    """A multivariate polynomial with integer coefficients.

    Terms map exponent vectors (tuples aligned with ``names``) to nonzero
    integer coefficients. Instances are immutable; all operators return new
    values. Two polynomials interoperate only when built over the same
    variable tuple.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple[int, ...], int]):
        names = tuple(names)
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in terms.items():
            if coeff == 0:
                continue
            exps = tuple(exps)
            if len(exps) != len(names):
                raise DomainError(
                    f"exponent vector {exps} does not match {len(names)} variables"
                )
            if any(e < 0 for e in exps):
                raise DomainError(f"negative exponent in {exps}")
            clean[exps] = coeff
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("MPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, names: Sequence[str]) -> "MPoly":
        return cls(names, {})

    @classmethod
    def const(cls, names: Sequence[str], value: int) -> "MPoly":
        if value == 0:
            return cls(names, {})
        return cls(names, {(0,) * len(names): value})

    @classmethod
    def one(cls, names: Sequence[str]) -> "MPoly":
        return cls.const(names, 1)

    @classmethod
    def var(cls, names: Sequence[str], name: str) -> "MPoly":
        names = tuple(names)
        try:
            k = names.index(name)
        except ValueError:
            raise DomainError(f"unknown variable {name!r}") from None
        exps = tuple(1 if i == k else 0 for i in range(len(names)))
        return cls(names, {exps: 1})

    # -- ring structure ------------------------------------------------------

    def _check_compatible(self, other: "MPoly") -> None:
        if self.names != other.names:
            raise DomainError(
                f"mixed variable universes {self.names} and {other.names}"
            )

    def _coerce(self, other: Any) -> "MPoly":
        if isinstance(other, MPoly):
            self._check_compatible(other)
            return other
        if isinstance(other, int):
            return MPoly.const(self.names, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = terms.get(exps, 0) + coeff
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return MPoly(self.names, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "MPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(exps, 0) + c1 * c2
                if new:
                    terms[exps] = new
                else:
                    terms.pop(exps, None)
        return MPoly(self.names, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MPoly":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            raise DomainError("negative powers need a rational function")
        result = MPoly.one(self.names)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = MPoly.const(self.names, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the polynomial, -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_value(self) -> int:
        """The value of a constant polynomial; DomainError otherwise."""
        if not self.terms:
            return 0
        zero_exps = (0,) * len(self.names)
        if set(self.terms) != {zero_exps}:
            raise DomainError(f"{self} is not constant")
        return self.terms[zero_exps]

    def partial(self, name: str) -> "MPoly":
        """Formal partial derivative with respect to ``name``."""
        names = self.names
        try:
            k = names.index(name)
        except ValueError:
            raise DomainError(f"unknown variable {name!r}") from None
        terms: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms.items():
            e = exps[k]
            if e == 0:
                continue
            new_exps = exps[:k] + (e - 1,) + exps[k + 1:]
            terms[new_exps] = terms.get(new_exps, 0) + coeff * e
        return MPoly(names, terms)

    def evaluate(self, values: Mapping[str, Any]) -> Any:
        """Evaluate with variable values from any commutative ring.

        The ring's elements must support ``+``, ``*`` and integer ``**``; the
        integer coefficients multiply in from the left. Every variable that
        actually occurs must be assigned.
        """
        missing = {self.names[k]
                   for exps in self.terms
                   for k, e in enumerate(exps) if e and self.names[k] not in values}
        if missing:
            raise DomainError(f"no value for variables {sorted(missing)}")
        result: Any = 0
        for exps, coeff in self.terms.items():
            term: Any = coeff
            for k, e in enumerate(exps):
                if e:
                    term = term * values[self.names[k]] ** e
            result = result + term
        return result

    def map_names(self, names: Sequence[str], translate: Mapping[str, str]) -> "MPoly":
        """Re-express the polynomial over another variable tuple."""
        names = tuple(names)
        index = {n: k for k, n in enumerate(names)}
        terms: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(names)
            for k, e in enumerate(exps):
                if not e:
                    continue
                target = translate.get(self.names[k], self.names[k])
                if target not in index:
                    raise DomainError(f"variable {target!r} not in target universe")
                new[index[target]] += e
            key = tuple(new)
            terms[key] = terms.get(key, 0) + coeff
        return MPoly(names, terms)

    # -- presentation ---------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(),
                      key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for exps, coeff in self._sorted_terms():
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            chunks.append((sign, body))  # type: ignore[arg-type]
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MPoly({self})"


def eval_mod_p(poly: MPoly, point: Mapping[str, int], prime: int) -> int:
    """Evaluate an integer polynomial at a point of a prime field."""
    result = 0
    for exps, coeff in poly.terms.items():
        term = coeff % prime
        for k, e in enumerate(exps):
            if e:
                name = poly.names[k]
                if name not in point:
                    raise DomainError(f"no value for variable {name!r}")
                term = term * pow(point[name] % prime, e, prime) % prime
        result = (result + term) % prime
    return result


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def _integer_content(poly: MPoly) -> int:
    value = 0
    for coeff in poly.terms.values():
        value = gcd(value, abs(coeff))
    return value or 1


def _monomial_content(poly: MPoly) -> tuple[int, ...]:
    if not poly.terms:
        return (0,) * len(poly.names)
    mins = None
    for exps in poly.terms:
        if mins is None:
            mins = list(exps)
        else:
            mins = [min(a, b) for a, b in zip(mins, exps)]
    return tuple(mins)  # type: ignore[arg-type]


def _strip(poly: MPoly, monomial: tuple[int, ...], content: int) -> MPoly:
    terms = {
        tuple(e - s for e, s in zip(exps, monomial)): coeff // content
        for exps, coeff in poly.terms.items()
    }
    return MPoly(poly.names, terms)


class RatFunc:
    """A quotient of integer polynomials, reduced by content only.

    Denominators stay nonzero by construction. Equality is decided by cross
    multiplication, so unequal representations of the same function compare
    equal; the zero test needs only the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly):
        if den.is_zero:
            raise DomainError("zero denominator")
        if num.names != den.names:
            raise DomainError("numerator and denominator variable universes differ")
        if num.is_zero:
            den = MPoly.one(num.names)
        else:
            content = gcd(_integer_content(num), _integer_content(den))
            mono = tuple(min(a, b) for a, b in
                         zip(_monomial_content(num), _monomial_content(den)))
            if content != 1 or any(mono):
                num = _strip(num, mono, content)
                den = _strip(den, mono, content)
        if den._sorted_terms()[0][1] < 0:
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_poly(cls, poly: MPoly) -> "RatFunc":
        return cls(poly, MPoly.one(poly.names))

    @classmethod
    def const(cls, names: Sequence[str], value: int) -> "RatFunc":
        return cls.from_poly(MPoly.const(names, value))

    @classmethod
    def var(cls, names: Sequence[str], name: str) -> "RatFunc":
        return cls.from_poly(MPoly.var(names, name))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other: Any) -> "RatFunc":
        if isinstance(other, RatFunc):
            if self.num.names != other.num.names:
                raise DomainError("mixed variable universes")
            return other
        if isinstance(other, MPoly):
            return RatFunc.from_poly(other)
        if isinstance(other, int):
            return RatFunc.const(self.num.names, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def reciprocal(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("zero has no reciprocal")
        return RatFunc(self.den, self.num)

    def __pow__(self, exponent: int) -> "RatFunc":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = RatFunc.const(self.num.names, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self) -> int:
        # Content reduction is not a canonical form, so hashing by value is
        # unsound in general; constants are the only values we ever pool.
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == MPoly.one(self.den.names):
            return str(self.num)
        num = str(self.num)
        den = str(self.den)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------


class LaurentQ:
    """A Laurent polynomial in the deformation parameter q.

    Coefficients are arbitrary-precision integers keyed by (possibly negative)
    exponents of q. The parameter stays formal: nothing ever specialises q
    except :meth:`at_one`, which implements the q=1 limit used by the
    semiclassical comparison.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int]):
        object.__setattr__(
            self, "coeffs", {e: c for e, c in coeffs.items() if c != 0}
        )

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("LaurentQ is immutable")

    @classmethod
    def const(cls, value: int) -> "LaurentQ":
        return cls({0: value})

    @classmethod
    def q_power(cls, exponent: int, coeff: int = 1) -> "LaurentQ":
        return cls({exponent: coeff})

    @classmethod
    def minus_q_to(cls, length: int) -> "LaurentQ":
        """(-q)^length, the sign-and-weight factor of quantum minors."""
        return cls({length: (-1) ** length})

    ZERO: "LaurentQ"
    ONE: "LaurentQ"
    Q_MINUS_QINV: "LaurentQ"

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other: Any) -> "LaurentQ":
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, int):
            return LaurentQ.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "LaurentQ":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            new = coeffs.get(e, 0) + c
            if new:
                coeffs[e] = new
            else:
                coeffs.pop(e, None)
        return LaurentQ(coeffs)

    __radd__ = __add__

    def __neg__(self) -> "LaurentQ":
        return LaurentQ({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: Any) -> "LaurentQ":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "LaurentQ":
        return (-self) + other

    def __mul__(self, other: Any) -> "LaurentQ":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        coeffs: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                new = coeffs.get(e, 0) + c1 * c2
                if new:
                    coeffs[e] = new
                else:
                    coeffs.pop(e, None)
        return LaurentQ(coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentQ":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if len(self.coeffs) != 1:
                raise DomainError("only monomials in q are invertible")
            (e, c), = self.coeffs.items()
            if abs(c) != 1:
                raise DomainError("only unit monomials in q are invertible")
            return LaurentQ({e * exponent: c if exponent % 2 else 1})
        result = LaurentQ.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def at_one(self) -> int:
        """Specialise q = 1."""
        return sum(self.coeffs.values())

    def divided_by_q_minus_one(self) -> "LaurentQ":
        """Exact quotient by (q - 1); DomainError when it does not divide."""
        if self.is_zero:
            return LaurentQ({})
        lo = min(self.coeffs)
        hi = max(self.coeffs)
        # Shift to an ordinary polynomial, synthetic-divide at the root 1,
        # then shift back.
        poly = [self.coeffs.get(e, 0) for e in range(lo, hi + 1)]
        degree = len(poly) - 1
        quotient = [0] * degree
        carry = poly[degree]
        for k in range(degree - 1, -1, -1):
            quotient[k] = carry
            carry = poly[k] + carry
        if carry != 0:
            raise DomainError("Laurent polynomial is not divisible by q - 1")
        return LaurentQ({lo + k: c for k, c in enumerate(quotient)})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        chunks: list[tuple[str, str]] = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                q = "q" if e == 1 else f"q^{e}"
                body = q if abs(c) == 1 else f"{abs(c)}*{q}"
            chunks.append(("-" if c < 0 else "+", body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentQ({self})"


LaurentQ.ZERO = LaurentQ({})
LaurentQ.ONE = LaurentQ({0: 1})
LaurentQ.Q_MINUS_QINV = LaurentQ({1: 1, -1: -1})


# ---------------------------------------------------------------------------
# Scalar domains
# ---------------------------------------------------------------------------


class ScalarDomain:
    """Field-like arithmetic with an exact zero test, as a value object.

    Matrix code uses a domain instead of duck typing so that prime fields
    (plain ints) and rationals (Fraction) can share the same elimination
    routines. ``div`` must be exact and raise ZeroDivisionError on a zero
    divisor.
    """

    name = "abstract"

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, value: int) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        return a + b

    def sub(self, a: Any, b: Any) -> Any:
        return a - b

    def mul(self, a: Any, b: Any) -> Any:
        return a * b

    def neg(self, a: Any) -> Any:
        return -a

    def div(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, a: Any) -> bool:
        raise NotImplementedError

    def eq(self, a: Any, b: Any) -> bool:
        return self.is_zero(self.sub(a, b))

    def to_str(self, a: Any) -> str:
        return str(a)

    def __repr__(self) -> str:
        return f"<domain {self.name}>"


class RationalDomain(ScalarDomain):
    """Exact rational numbers (Fraction)."""

    name = "QQ"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, value: int) -> Fraction:
        return Fraction(value)

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a: Fraction) -> bool:
        return a == 0


class PrimeFieldDomain(ScalarDomain):
    """Integers modulo a fixed prime, represented by ints in [0, p)."""

    def __init__(self, prime: int):
        if prime < 2:
            raise DomainError(f"{prime} is not a prime")
        self.prime = prime
        self.name = f"GF({prime})"

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, value: int) -> int:
        return value % self.prime

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.prime

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.prime

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.prime

    def neg(self, a: int) -> int:
        return (-a) % self.prime

    def div(self, a: int, b: int) -> int:
        if b % self.prime == 0:
            raise ZeroDivisionError("division by zero")
        return a * pow(b, -1, self.prime) % self.prime

    def is_zero(self, a: int) -> bool:
        return a % self.prime == 0


class RationalFunctionDomain(ScalarDomain):
    """The field of rational functions over a fixed variable tuple."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.name = f"QQ({','.join(self.names)})"

    def zero(self) -> RatFunc:
        return RatFunc.const(self.names, 0)

    def one(self) -> RatFunc:
        return RatFunc.const(self.names, 1)

    def from_int(self, value: int) -> RatFunc:
        return RatFunc.const(self.names, value)

    def var(self, name: str) -> RatFunc:
        return RatFunc.var(self.names, name)

    def div(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a / b

    def is_zero(self, a: RatFunc) -> bool:
        return a.is_zero


QQ = RationalDomain()

#: Default prime for probabilistic zero testing; 2^31 - 1 is prime.
ZERO_TEST_PRIME = 2147483647


# ---------------------------------------------------------------------------
# Expression grammar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Num | Sym | Neg | Add | Sub | Mul | Pow | Call

_TOKEN = re.compile(r"\d+|[A-Za-z]+|[][(),+\-*^/]|\S")


class _Parser:
    def __init__(self, text: str, functions: frozenset[str]):
        self.tokens = _TOKEN.findall(text)
        self.pos = 0
        self.functions = functions
        self.text = text

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise DomainError(f"unexpected end of expression in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, token: str) -> None:
        tok = self.take()
        if tok != token:
            raise DomainError(f"expected {token!r}, found {tok!r} in {self.text!r}")

    def parse(self) -> Node:
        node = self.expression()
        if self.peek() is not None:
            raise DomainError(f"trailing input {self.peek()!r} in {self.text!r}")
        return node

    def expression(self) -> Node:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek() == "*":
            self.take()
            node = Mul(node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek() == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            return Pow(base, self.signed_int())
        return base

    def signed_int(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise DomainError(f"expected integer exponent, found {tok!r}")
        return sign * int(tok)

    def atom(self) -> Node:
        tok = self.take()
        if tok == "(":
            node = self.expression()
            self.expect(")")
            return node
        if tok.isdigit():
            # A '/' between two integer literals is a rational literal, not
            # an operator; general division is outside the grammar.
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise DomainError(f"bad rational literal in {self.text!r}")
                return Num(Fraction(int(tok), int(den)))
            return Num(Fraction(int(tok)))
        if tok.isalpha():
            if self.peek() == "[":
                self.take()
                i = self.take()
                self.expect(",")
                j = self.take()
                self.expect("]")
                if not (i.isdigit() and j.isdigit()):
                    raise DomainError(f"bad variable index in {self.text!r}")
                return Sym(f"{tok}[{int(i)},{int(j)}]")
            if tok in self.functions and self.peek() == "(":
                self.take()
                arg = self.expression()
                self.expect(")")
                return Call(tok, arg)
            return Sym(tok)
        raise DomainError(f"unexpected token {tok!r} in {self.text!r}")


def parse_expression(text: str, functions: Iterable[str] = ()) -> Node:
    """Parse expression text to an AST; raises DomainError on bad syntax."""
    return _Parser(text, frozenset(functions)).parse()


def evaluate_node(
    node: Node,
    *,
    const: Callable[[Fraction], Any],
    symbol: Callable[[str], Any],
    power: Callable[[Any, int], Any],
    call: Callable[[str, Any], Any] | None = None,
) -> Any:
    """Evaluate an AST in an arbitrary algebra.

    ``const`` receives exact rationals; algebras that only admit integers
    should raise DomainError on a proper fraction. ``power`` receives the
    evaluated base and a (possibly negative) integer exponent.
    """
    def walk(n: Node) -> Any:
        if isinstance(n, Num):
            return const(n.value)
        if isinstance(n, Sym):
            return symbol(n.name)
        if isinstance(n, Neg):
            return -walk(n.arg)
        if isinstance(n, Add):
            return walk(n.left) + walk(n.right)
        if isinstance(n, Sub):
            return walk(n.left) - walk(n.right)
        if isinstance(n, Mul):
            return walk(n.left) * walk(n.right)
        if isinstance(n, Pow):
            return power(walk(n.base), n.exponent)
        if isinstance(n, Call):
            if call is None:
                raise DomainError(f"function {n.func!r} is not allowed here")
            return call(n.func, walk(n.arg))
        raise DomainError(f"unknown node {n!r}")

    return walk(node)


def int_const(value: Fraction) -> int:
    """Coerce a literal to int, rejecting proper fractions."""
    if value.denominator != 1:
        raise DomainError(f"integer coefficient required, got {value}")
    return int(value)
