"""Exact integer Laurent polynomials in one variable t.

Every invariant value in this package lives in Z[t, t^-1].  Coefficients are
arbitrary-precision Python ints; there is no floating point anywhere.  A
polynomial is stored as a mapping from exponent (possibly negative) to a
nonzero coefficient, so the zero polynomial is the empty mapping and equality
is exponentwise coefficient equality.

Only the ring operations actually needed by the invariants are provided:
addition, negation, scaling by a signed monomial, the substitution t -> 1/t,
evaluation and first derivative at t = 1, and the one-norm (the sum of the
absolute values of the coefficients).  General polynomial multiplication is
deliberately absent.

Text form
---------
``format_poly``/``parse_poly`` use a small grammar: terms joined by ``+`` or
``-``; a term is ``[coeff][*][t[^exp]]`` where the exponent may be negative.
Examples: ``-t^3-2*t+1``, ``t^-2``, ``0``.

JSON form
---------
An object mapping decimal exponent strings to integer coefficients, e.g.
``{"3": -1, "1": -2}`` for ``-t^3 - 2t``.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class PolynomialSyntaxError(ValueError):
    """Raised when a polynomial text form cannot be parsed."""


class LaurentPolynomial:
    """An immutable integer Laurent polynomial in t."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        stored: dict[int, int] = {}
        for exp, c in items:
            if c:
                stored[exp] = stored.get(exp, 0) + c
                if not stored[exp]:
                    del stored[exp]
        self._coeffs = stored

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> "LaurentPolynomial":
        """The monomial coeff * t**exponent."""
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: int) -> "LaurentPolynomial":
        return cls({0: value})

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        out = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            elif exp in out:
                del out[exp]
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res._coeffs = out
        return res

    def __neg__(self) -> "LaurentPolynomial":
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res._coeffs = {e: -c for e, c in self._coeffs.items()}
        return res

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def monomial_mul(self, coeff: int, exponent: int) -> "LaurentPolynomial":
        """Multiply by the monomial coeff * t**exponent."""
        if coeff == 0:
            return LaurentPolynomial()
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res._coeffs = {e + exponent: c * coeff for e, c in self._coeffs.items()}
        return res

    def substitute_inverse(self) -> "LaurentPolynomial":
        """The polynomial f(1/t): every exponent is negated."""
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res._coeffs = {-e: c for e, c in self._coeffs.items()}
        return res

    # -- functionals ---------------------------------------------------

    def eval_at_one(self) -> int:
        """f(1): the sum of the coefficients."""
        return sum(self._coeffs.values())

    def derivative_at_one(self) -> int:
        """f'(1): the sum of exponent * coefficient over all terms."""
        return sum(e * c for e, c in self._coeffs.items())

    def one_norm(self) -> int:
        """The sum of the absolute values of the coefficients."""
        return sum(abs(c) for c in self._coeffs.values())

    # -- views ----------------------------------------------------------

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def items(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, exponents descending."""
        return sorted(self._coeffs.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- JSON form -------------------------------------------------------

    def to_json_dict(self) -> dict[str, int]:
        return {str(e): c for e, c in self.items()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, int]) -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in data.items()})


def format_poly(f: LaurentPolynomial) -> str:
    """Render a polynomial in the text grammar, exponents descending."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for exp, c in f.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            t = "t" if exp == 1 else f"t^{exp}"
            body = t if mag == 1 else f"{mag}*{t}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


_TERM = re.compile(
    r"""(?P<coeff>\d+)(?:\*?(?P<t1>t)(?:\^(?P<exp1>-?\d+))?)?
      | (?P<t2>t)(?:\^(?P<exp2>-?\d+))?
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPolynomial:
    """Parse the polynomial text grammar.

    Raises PolynomialSyntaxError on malformed input.
    """
    s = "".join(text.split())
    if not s:
        raise PolynomialSyntaxError("empty polynomial text")
    coeffs: dict[int, int] = {}
    i = 0
    first = True
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        elif not first:
            raise PolynomialSyntaxError(f"expected '+' or '-' at position {i} in {text!r}")
        m = _TERM.match(s, i)
        if m is None or m.end() == i:
            raise PolynomialSyntaxError(f"bad term at position {i} in {text!r}")
        if m.group("t2"):
            coeff = 1
            exp = int(m.group("exp2")) if m.group("exp2") else 1
        else:
            coeff = int(m.group("coeff"))
            if m.group("t1"):
                exp = int(m.group("exp1")) if m.group("exp1") else 1
            else:
                exp = 0
        c = sign * coeff
        if c:
            coeffs[exp] = coeffs.get(exp, 0) + c
            if not coeffs[exp]:
                del coeffs[exp]
        i = m.end()
        first = False
    return LaurentPolynomial(coeffs)
