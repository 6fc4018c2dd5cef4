"""Named diagram families, realization of invariant pairs, and the
Delta-move distance bound.

The two-parameter family K(n) / K'(n) consists of one inward-linked chord
pair wrapped by n parallel "tail" chords that each add one to the pair's
intersection number.  K(n) realizes (v1, v2) = (t**n, 0) and K'(n), which
differs only in the sign of the second chord, realizes (-t**(n-1), 0).
Together with line reversal (which substitutes 1/t) and the passage/sign
switch (which swaps v1 and v2), concatenating family members realizes any
pair of integer Laurent polynomials; ``realize`` builds such a diagram and
verifies it by recomputation.

``delta_bound`` turns the fact that one Delta-move changes v1 and v2 by a
common signed monomial into a lower bound: when two diagrams are related by
Delta-moves at all (their v1 - v2 values must agree), the number of moves is
at least the one-norm of the v1 difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .gauss import DEFAULT_ENUM_CAP, GaussDiagram, search_first
from .invariants import v_polys
from .laurent import LaurentPolynomial

FAMILY_K = "K"
FAMILY_KPRIME = "Kprime"


class RealizationError(RuntimeError):
    """Internal verification of a constructed diagram failed."""


@dataclass(frozen=True)
class FamilySpec:
    """Selector for one member of the built-in diagram family."""

    name: str  # FAMILY_K or FAMILY_KPRIME
    n: int


def family(spec: FamilySpec | str, n: int | None = None) -> GaussDiagram:
    """Build K(n) or K'(n).

    Accepts a FamilySpec or a name plus n.  Requires n >= 0.
    """
    if isinstance(spec, FamilySpec):
        name, size = spec.name, spec.n
    else:
        if n is None:
            raise ValueError("family(name, n) needs an explicit n")
        name, size = spec, n
    if name not in (FAMILY_K, FAMILY_KPRIME):
        raise ValueError(f"unknown family {name!r}")
    if size < 0:
        raise ValueError("family parameter n must be >= 0")
    word: list[tuple[int, bool]] = [(1, True), (2, False)]
    for cid in range(3, size + 3):
        word.append((cid, True))
    word.append((1, False))
    for cid in range(size + 2, 2, -1):
        word.append((cid, False))
    word.append((2, True))
    signs = {1: 1, 2: 1 if name == FAMILY_K else -1}
    for cid in range(3, size + 3):
        signs[cid] = -1
    return GaussDiagram(word, signs)


def _unit_factor(exponent: int, positive: bool) -> GaussDiagram:
    # deterministic term-to-factor table covering every signed monomial
    if positive:
        if exponent >= 0:
            return family(FAMILY_K, exponent)
        return family(FAMILY_K, -exponent).reverse()
    if exponent >= -1:
        return family(FAMILY_KPRIME, exponent + 1)
    return family(FAMILY_KPRIME, 1 - exponent).reverse()


def _realize_first(f: LaurentPolynomial) -> GaussDiagram:
    # diagram with (v1, v2) = (f, 0); terms in descending exponent order
    out = GaussDiagram((), {})
    for exponent, coeff in f.items():
        factor = _unit_factor(exponent, coeff > 0)
        for _ in range(abs(coeff)):
            out = out.concat(factor)
    return out


def realize(f: LaurentPolynomial, g: LaurentPolynomial) -> GaussDiagram:
    """A diagram whose invariant pair (v1, v2) equals (f, g), self-verified.

    Raises RealizationError when recomputation does not reproduce the
    request (which would indicate a family transcription bug).
    """
    result = _realize_first(f).concat(_realize_first(g).switch())
    check1, check2 = v_polys(result)
    if check1 != f or check2 != g:
        raise RealizationError(
            f"realization check failed: requested ({f}, {g}), got ({check1}, {check2})"
        )
    return result


@dataclass(frozen=True)
class DeltaBoundReport:
    """Lower bound for the Delta-move distance between two diagrams.

    ``obstruction`` is True when the v1 - v2 values differ, in which case no
    finite Delta-move distance exists and ``lower_bound`` is None.
    """

    difference: LaurentPolynomial
    lower_bound: int | None
    obstruction: bool

    def to_json_dict(self) -> dict:
        return {
            "difference": self.difference.to_json_dict(),
            "lower_bound": self.lower_bound,
            "obstruction": self.obstruction,
        }


def delta_bound(first: GaussDiagram, second: GaussDiagram) -> DeltaBoundReport:
    """Compare two diagrams under Delta-moves."""
    v1a, v2a = v_polys(first)
    v1b, v2b = v_polys(second)
    difference = v1a - v1b
    obstruction = (v1a - v2a) != (v1b - v2b)
    bound = None if obstruction else difference.one_norm()
    return DeltaBoundReport(difference=difference, lower_bound=bound, obstruction=obstruction)


def search_diagram(
    predicate: Callable[[GaussDiagram], bool],
    n_max: int,
    cap: int = DEFAULT_ENUM_CAP,
) -> GaussDiagram | None:
    """First diagram (by chord count, then canonical enumeration order)
    satisfying ``predicate``, or None.  Raises EnumerationCapError when
    n_max exceeds ``cap``."""
    return search_first(predicate, n_max, cap=cap)
