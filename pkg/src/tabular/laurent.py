"""Exact Laurent polynomials in Z[v, v^-1].

Every algebra in the package is defined over this ring, so the type is
kept small, immutable and hashable.  Values are stored as a sparse map
from exponent to nonzero integer coefficient.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Mapping, Union


@total_ordering
class _NegativeInfinity:
    """Degree of the zero polynomial.  Compares below every integer."""

    _instance: _NegativeInfinity | None = None

    def __new__(cls) -> _NegativeInfinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __add__(self, other: object) -> _NegativeInfinity:
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __hash__(self) -> int:
        return hash("-inf")

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"


NEG_INF = _NegativeInfinity()

Degree = Union[int, _NegativeInfinity]
Scalar = Union[int, "LaurentPoly"]


class LaurentParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def coerce(cls, x: Scalar) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # --- queries -----------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms in descending exponent order."""
        for e in sorted(self._terms, reverse=True):
            yield e, self._terms[e]

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> Degree:
        return max(self._terms) if self._terms else NEG_INF

    def low_degree(self) -> Degree:
        return min(self._terms) if self._terms else NEG_INF

    def leading_coefficient(self) -> int:
        if not self._terms:
            raise ValueError("leading coefficient of the zero polynomial is undefined")
        return self._terms[max(self._terms)]

    def in_A_minus(self) -> bool:
        """True when every exponent is <= 0, i.e. p lies in Z[v^-1]."""
        return all(e <= 0 for e in self._terms)

    def in_v_inv_A_minus(self) -> bool:
        """True when every exponent is < 0, i.e. p lies in v^-1 Z[v^-1]."""
        return all(e < 0 for e in self._terms)

    def leading_and_membership(self) -> tuple[int, bool, bool]:
        return self.leading_coefficient(), self.in_A_minus(), self.in_v_inv_A_minus()

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def evaluate(self, x: int | Fraction) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    # --- ring operations ---------------------------------------------------

    def __add__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * k: c if k % 2 else 1})
            raise ValueError("only unit monomials have negative powers")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by v^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    # --- equality and hashing ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # --- text form ---------------------------------------------------------

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)
QUANTUM_TWO = V + V_INV
"""[2] = v + v^-1, also the loop value delta of every diagram algebra here."""


def lp_sum(values: Iterable[LaurentPoly]) -> LaurentPoly:
    out: dict[int, int] = {}
    for p in values:
        for e, c in p._terms.items():
            out[e] = out.get(e, 0) + c
    return LaurentPoly(out)


# --- parse / format ---------------------------------------------------------


def format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = "v" if e == 1 else f"v^{e}"
            body = power if mag == 1 else f"{mag}{power}"
        parts.append(sign + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


_TERM = re.compile(r"(\d+)?(v(?:\^(-?\d+))?)?")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the canonical grammar; whitespace and an optional `*` are tolerated."""
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise LaurentParseError("empty string", text, 0)
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise LaurentParseError("expected '+' or '-'", text, pos)
        first = False
        m = _TERM.match(s, pos)
        digits, power, exp = m.group(1), m.group(2), m.group(3)
        end = m.end()
        if digits and power is None and end < len(s) and s[end] == "*":
            m2 = _TERM.match(s, end + 1)
            if m2.group(1) is None and m2.group(2):
                power, exp, end = m2.group(2), m2.group(3), m2.end()
        if digits is None and power is None:
            raise LaurentParseError("expected a term", text, pos)
        coeff = int(digits) if digits is not None else 1
        e = 0 if power is None else (int(exp) if exp is not None else 1)
        terms[e] = terms.get(e, 0) + sign * coeff
        pos = end
    return LaurentPoly(terms)
