"""Invariants of long virtual knots computed from Gauss diagrams.

Two chords are *linked* when their endpoints alternate along the line.  With
chords oriented over-to-under, a linked pair is *inward* when the two arrows
point into the linking region and *outward* when they point away from it.
Reading types off the word, for a linked pair whose left endpoints occur in
the order (i then j):

* inward:  chord i has its over endpoint first (type 0) and chord j its
  under endpoint first (type 1);
* outward: chord i is type 1 and chord j is type 0.

``J_in`` and ``J_out`` collect these ordered pairs.  The degree-two integer
invariants are the sign-weighted pair counts ``v21 = sum eps_i eps_j`` over
``J_in`` and ``v22`` over ``J_out``.

The polynomial invariants refine the pair counts by an intersection number.
Endpoints carry signs (under endpoint: the chord sign; over endpoint: its
negation).  For a linked pair with endpoints ordered ``l_i, l_j, r_i, r_j``,
a third chord k contributes the sign of ``l_k`` to the sum ``S_ij`` when its
endpoints satisfy one of three interval conditions:

(i)   ``l_k`` in (l_i, l_j) and ``r_k`` in (l_j, r_i)   ("left straddle")
(ii)  ``l_k`` in (l_j, r_i) and ``r_k`` in (r_i, r_j)   ("right straddle")
(iii) ``l_k`` in (l_i, l_j) and ``r_k`` in (r_i, r_j)   ("full span")

The intersection number is then ``S_ij`` corrected by +1 when the signs of
``l_i`` and ``l_j`` are both positive and by -1 when both are negative; for
the reversed pair order it is defined by antisymmetry.  The two polynomial
invariants are::

    v1 = sum over (i,j) in J_in  of eps_i eps_j t**(a_i . a_j)
    v2 = sum over (i,j) in J_out of eps_i eps_j t**(a_i . a_j)

Their first derivatives at t = 1 also admit a pairing formula: a fixed set
of ten small arrow patterns (shipped as data files under ``patterns/``)
paired against the diagram by counting sign-weighted embeddings.  The same
patterns give a closed formula for the degree-three invariant ``alpha3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .gauss import GaussDiagram
from .laurent import LaurentPolynomial

KIND_IN = "in"
KIND_OUT = "out"


class NotLinkedError(ValueError):
    """The two chords do not have alternating endpoints."""


@dataclass(frozen=True)
class LinkedPairRecord:
    """One ordered linked pair: (i, j) with the left endpoint of i first."""

    i: int
    j: int
    kind: str  # KIND_IN or KIND_OUT
    intersection: int | None
    weight: int  # eps_i * eps_j


def linked_pairs(
    diagram: GaussDiagram, include_intersections: bool = False
) -> tuple[LinkedPairRecord, ...]:
    """All ordered pairs in J_in and J_out, sorted by left endpoints.

    Linked pairs whose chords have equal types belong to neither set and are
    excluded.  Intersection numbers are filled in only on request.
    """
    lpos, rpos, typ, _, eps = diagram.tables()
    n = diagram.n
    order = sorted(range(n), key=lpos.__getitem__)
    out: list[LinkedPairRecord] = []
    for ia in range(n):
        a = order[ia]
        ra = rpos[a]
        for ib in range(ia + 1, n):
            b = order[ib]
            if lpos[b] >= ra:
                break
            if rpos[b] < ra:
                continue
            if typ[a] == typ[b]:
                continue
            kind = KIND_IN if typ[a] == 0 else KIND_OUT
            inter = _alpha(diagram, a, b) if include_intersections else None
            out.append(
                LinkedPairRecord(
                    i=a + 1, j=b + 1, kind=kind, intersection=inter, weight=eps[a] * eps[b]
                )
            )
    return tuple(out)


def _alpha_parts(diagram: GaussDiagram, a: int, b: int) -> tuple[int, int]:
    # a, b are 0-based chord indices with lpos[a] < lpos[b]; assumes linked
    lpos, rpos, _, lsign, _ = diagram.tables()
    la, lb, ra, rb = lpos[a], lpos[b], rpos[a], rpos[b]
    s = 0
    for k in range(diagram.n):
        if k == a or k == b:
            continue
        lk = lpos[k]
        rk = rpos[k]
        if la < lk < lb:
            if lb < rk < ra or ra < rk < rb:
                s += lsign[k]
        elif lb < lk < ra:
            if ra < rk < rb:
                s += lsign[k]
    sa, sb = lsign[a], lsign[b]
    if sa != sb:
        corr = 0
    else:
        corr = 1 if sa > 0 else -1
    return s, corr


def _alpha(diagram: GaussDiagram, a: int, b: int) -> int:
    s, corr = _alpha_parts(diagram, a, b)
    return s + corr


def _check_linked(diagram: GaussDiagram, i: int, j: int) -> tuple[int, int, bool]:
    # returns 0-based (first, second) ordered by left endpoint and whether the
    # query order (i, j) was already canonical
    if not (1 <= i <= diagram.n and 1 <= j <= diagram.n) or i == j:
        raise ValueError(f"need two distinct chord ids in 1..{diagram.n}")
    lpos, rpos, _, _, _ = diagram.tables()
    a, b = i - 1, j - 1
    canonical = lpos[a] < lpos[b]
    if not canonical:
        a, b = b, a
    if not (lpos[a] < lpos[b] < rpos[a] < rpos[b]):
        raise NotLinkedError(f"chords {i} and {j} are not linked")
    return a, b, canonical


def intersection_parts(diagram: GaussDiagram, i: int, j: int) -> tuple[int, int]:
    """(S_ij, correction) for a linked pair given in canonical order.

    The pair must be ordered so the left endpoint of i precedes that of j.
    """
    a, b, canonical = _check_linked(diagram, i, j)
    if not canonical:
        raise ValueError("intersection_parts requires the left endpoint of i first")
    return _alpha_parts(diagram, a, b)


def intersection_number(diagram: GaussDiagram, i: int, j: int) -> int:
    """Intersection number of the linked chords i and j.

    Computed by the interval rule for the canonical order and extended to
    the other order by antisymmetry.  Raises NotLinkedError otherwise.
    """
    a, b, canonical = _check_linked(diagram, i, j)
    value = _alpha(diagram, a, b)
    return value if canonical else -value


def v_polys(diagram: GaussDiagram) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """The pair (v1, v2) of Laurent polynomial invariants."""
    lpos, rpos, typ, lsign, eps = diagram.tables()
    n = diagram.n
    order = sorted(range(n), key=lpos.__getitem__)
    c1: dict[int, int] = {}
    c2: dict[int, int] = {}
    rng_n = range(n)
    for ia in range(n):
        a = order[ia]
        la = lpos[a]
        ra = rpos[a]
        ta = typ[a]
        for ib in range(ia + 1, n):
            b = order[ib]
            lb = lpos[b]
            if lb >= ra:
                break
            rb = rpos[b]
            if rb < ra:
                continue
            if ta == typ[b]:
                continue
            s = 0
            for k in rng_n:
                if k == a or k == b:
                    continue
                lk = lpos[k]
                rk = rpos[k]
                if la < lk < lb:
                    if lb < rk < ra or ra < rk < rb:
                        s += lsign[k]
                elif lb < lk < ra:
                    if ra < rk < rb:
                        s += lsign[k]
            sa = lsign[a]
            sb = lsign[b]
            if sa == sb:
                s += 1 if sa > 0 else -1
            w = eps[a] * eps[b]
            target = c1 if ta == 0 else c2
            target[s] = target.get(s, 0) + w
    return LaurentPolynomial(c1), LaurentPolynomial(c2)


def v21_direct(diagram: GaussDiagram) -> int:
    """Sign-weighted count of inward pairs (no polynomial machinery)."""
    return sum(r.weight for r in linked_pairs(diagram) if r.kind == KIND_IN)


def v22_direct(diagram: GaussDiagram) -> int:
    """Sign-weighted count of outward pairs (no polynomial machinery)."""
    return sum(r.weight for r in linked_pairs(diagram) if r.kind == KIND_OUT)


# ---------------------------------------------------------------------------
# Arrow patterns and the pairing
# ---------------------------------------------------------------------------


class PatternSyntaxError(ValueError):
    """Malformed pattern text."""


class PatternDiagram:
    """A small arrow pattern used as the left argument of the pairing.

    Same token grammar as Gauss codes except that the sign character may be
    ``.`` meaning "unconstrained".  A chord with a definite sign only matches
    image chords of that sign.  At most three chords.
    """

    __slots__ = ("shape", "sign_constraints")

    def __init__(self, word: list[tuple[int, bool]], sign_constraints: dict[int, int | None]):
        relabel: dict[int, int] = {}
        for cid, _ in word:
            if cid not in relabel:
                relabel[cid] = len(relabel) + 1
        n = len(relabel)
        if n > 3:
            raise PatternSyntaxError("patterns have at most three chords")
        if len(word) != 2 * n:
            raise PatternSyntaxError("every pattern chord needs exactly two endpoints")
        counts: dict[tuple[int, bool], int] = {}
        for cid, over in word:
            counts[(relabel[cid], over)] = counts.get((relabel[cid], over), 0) + 1
        for r in range(1, n + 1):
            if counts.get((r, True), 0) != 1 or counts.get((r, False), 0) != 1:
                raise PatternSyntaxError("each pattern chord needs one over and one under endpoint")
        self.shape: tuple[tuple[int, bool], ...] = tuple(
            (relabel[cid], over) for cid, over in word
        )
        cons: list[int | None] = [None] * n
        for cid, rank in relabel.items():
            cons[rank - 1] = sign_constraints.get(cid)
        self.sign_constraints: tuple[int | None, ...] = tuple(cons)

    @property
    def n(self) -> int:
        return len(self.sign_constraints)

    @classmethod
    def parse(cls, text: str) -> "PatternDiagram":
        word: list[tuple[int, bool]] = []
        cons: dict[int, int | None] = {}
        for tok in text.split():
            if len(tok) < 3 or tok[0] not in "OU" or tok[-1] not in "+-.":
                raise PatternSyntaxError(f"bad pattern token {tok!r}")
            try:
                cid = int(tok[1:-1])
            except ValueError:
                raise PatternSyntaxError(f"bad pattern token {tok!r}") from None
            sign = None if tok[-1] == "." else (1 if tok[-1] == "+" else -1)
            if cid in cons and cons[cid] != sign:
                raise PatternSyntaxError(f"sign mismatch within pattern chord {cid}")
            cons[cid] = sign
            word.append((cid, tok[0] == "O"))
        return cls(word, cons)


@lru_cache(maxsize=None)
def pattern(index: int) -> PatternDiagram:
    """The shipped pattern number ``index`` (1..10), loaded from data files."""
    if not 1 <= index <= 10:
        raise ValueError("pattern index must be in 1..10")
    text = resources.files("vknot").joinpath(f"patterns/d{index:02d}.gauss").read_text("ascii")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise PatternSyntaxError(f"pattern file d{index:02d}.gauss must hold one pattern line")
    return PatternDiagram.parse(lines[0])


def pairing(pattern_diagram: PatternDiagram, diagram: GaussDiagram) -> int:
    """Sign-weighted count of embeddings of the pattern into the diagram.

    An embedding assigns pattern chords to distinct diagram chords so that
    endpoint order, passages and arrow directions all match; chords with a
    definite pattern sign must also match it.  Each embedding contributes
    the product of the signs of its image chords.
    """
    p = pattern_diagram.n
    if p == 0:
        return 1
    n = diagram.n
    if p > n:
        return 0
    positions: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    for pos, (cid, over) in enumerate(diagram.word):
        positions[cid - 1].append((pos, over))
    shape = pattern_diagram.shape
    cons = pattern_diagram.sign_constraints
    eps = diagram.signs
    total = 0
    for combo in itertools.combinations(range(n), p):
        endpoints: list[tuple[int, int, bool]] = []
        for c in combo:
            for pos, over in positions[c]:
                endpoints.append((pos, c, over))
        endpoints.sort()
        rank: dict[int, int] = {}
        ok = True
        for idx, (_, c, over) in enumerate(endpoints):
            r = rank.setdefault(c, len(rank) + 1)
            if shape[idx] != (r, over):
                ok = False
                break
        if not ok:
            continue
        weight = 1
        for c, r in rank.items():
            want = cons[r - 1]
            e = eps[c]
            if want is not None and e != want:
                ok = False
                break
            weight *= e
        if ok:
            total += weight
    return total


def v1_prime_gd(diagram: GaussDiagram) -> int:
    """Derivative of v1 at t = 1 via the ten-pattern pairing formula."""
    terms = (1, -1, 1, -1, 1, -1, 1, -1)
    return sum(sgn * pairing(pattern(k), diagram) for k, sgn in zip(range(1, 9), terms))


def v2_prime_gd(diagram: GaussDiagram) -> int:
    """Derivative of v2 at t = 1, computed through the passage/sign switch
    symmetry (which swaps v1 and v2)."""
    return v1_prime_gd(diagram.switch())


def v1_prime_semantic(diagram: GaussDiagram) -> int:
    """Second, pattern-free evaluator of the derivative of v1 at t = 1.

    Sums, over inward pairs, the third-chord contributions split by interval
    condition and left-endpoint passage, plus the sign-class corrections.
    Used to validate the pattern file transcription.
    """
    lpos, rpos, typ, lsign, eps = diagram.tables()
    n = diagram.n
    order = sorted(range(n), key=lpos.__getitem__)
    total = 0
    for ia in range(n):
        a = order[ia]
        if typ[a] != 0:
            continue
        la, ra = lpos[a], rpos[a]
        for ib in range(ia + 1, n):
            b = order[ib]
            lb = lpos[b]
            if lb >= ra:
                break
            rb = rpos[b]
            if rb < ra or typ[b] != 1:
                continue
            w = eps[a] * eps[b]
            for k in range(n):
                if k == a or k == b:
                    continue
                lk, rk = lpos[k], rpos[k]
                hit = (la < lk < lb and (lb < rk < ra or ra < rk < rb)) or (
                    lb < lk < ra and ra < rk < rb
                )
                if hit:
                    # under-first third chord counts +eps_k, over-first -eps_k
                    total += w * (eps[k] if typ[k] == 1 else -eps[k])
            sa, sb = lsign[a], lsign[b]
            if sa == sb:
                total += w if sa > 0 else -w
    return total


def alpha2(diagram: GaussDiagram) -> int:
    """Degree-two invariant: v1 evaluated at t = 1."""
    v1, _ = v_polys(diagram)
    return v1.eval_at_one()


def alpha3(diagram: GaussDiagram) -> int:
    """Degree-three invariant: v1'(1) - v1(1).

    For any diagram this is the stated combination of v1 data; it is an
    invariant of the welded equivalence class (the derivative at 1 is
    unchanged by welded moves even though v1 itself is not).
    """
    v1, _ = v_polys(diagram)
    return v1.derivative_at_one() - v1.eval_at_one()


def alpha2_gd(diagram: GaussDiagram) -> int:
    """Pairing form of alpha2: the four signed inward-pair patterns."""
    return sum(pairing(pattern(k), diagram) for k in (7, 8, 9, 10))


def alpha3_gd(diagram: GaussDiagram) -> int:
    """Pairing form of alpha3 over the ten shipped patterns."""
    terms = {1: 1, 2: -1, 3: 1, 4: -1, 5: 1, 6: -1, 8: -2, 9: -1, 10: -1}
    return sum(sgn * pairing(pattern(k), diagram) for k, sgn in terms.items())


# ---------------------------------------------------------------------------
# Alternating sums over chord subsets
# ---------------------------------------------------------------------------


def _subset_masks(ids: tuple[int, ...]):
    k = len(ids)
    for mask in range(1 << k):
        selected = tuple(ids[t] for t in range(k) if mask >> t & 1)
        parity = -1 if bin(mask).count("1") % 2 else 1
        yield selected, parity


def _distinct_ids(diagram: GaussDiagram, chords) -> tuple[int, ...]:
    ids = tuple(chords)
    if len(set(ids)) != len(ids):
        raise ValueError("chord subset contains duplicates")
    for cid in ids:
        if not 1 <= cid <= diagram.n:
            raise ValueError(f"no chord {cid} in this diagram")
    return ids


def virtualization_alt_sum(diagram: GaussDiagram, chords) -> LaurentPolynomial:
    """Alternating sum of v1 over deletions of subsets of ``chords``.

    Each subset S of the given chords contributes (-1)**|S| times v1 of the
    diagram with S deleted.
    """
    ids = _distinct_ids(diagram, chords)
    total = LaurentPolynomial()
    for selected, parity in _subset_masks(ids):
        v1, _ = v_polys(diagram.delete_chords(selected))
        total = total + v1 if parity > 0 else total - v1
    return total


def crossing_change_alt_sum(diagram: GaussDiagram, chords) -> LaurentPolynomial:
    """Alternating sum of v1 over crossing changes of subsets of ``chords``.

    A selected chord has its sign flipped and its passages swapped.
    """
    ids = _distinct_ids(diagram, chords)
    total = LaurentPolynomial()
    for selected, parity in _subset_masks(ids):
        v1, _ = v_polys(diagram.switch_chords(selected))
        total = total + v1 if parity > 0 else total - v1
    return total


def v1_prime_virtualization_alt_sum(diagram: GaussDiagram, chords) -> int:
    """Alternating sum of v1'(1) over deletions of subsets of ``chords``."""
    ids = _distinct_ids(diagram, chords)
    total = 0
    for selected, parity in _subset_masks(ids):
        v1, _ = v_polys(diagram.delete_chords(selected))
        total += parity * v1.derivative_at_one()
    return total


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    """All computed invariants of one diagram, with a fixed JSON shape."""

    gauss_code: str
    n: int
    v1: LaurentPolynomial
    v2: LaurentPolynomial
    v21: int
    v22: int
    v1_prime_1: int
    v2_prime_1: int
    alpha2: int
    alpha3: int

    def to_json_dict(self) -> dict:
        return {
            "gauss_code": self.gauss_code,
            "n": self.n,
            "v1": self.v1.to_json_dict(),
            "v2": self.v2.to_json_dict(),
            "v21": self.v21,
            "v22": self.v22,
            "v1_prime_1": self.v1_prime_1,
            "v2_prime_1": self.v2_prime_1,
            "alpha2": self.alpha2,
            "alpha3": self.alpha3,
        }


def compute_report(diagram: GaussDiagram) -> InvariantReport:
    """Evaluate every invariant of one diagram."""
    v1, v2 = v_polys(diagram)
    v21 = v1.eval_at_one()
    v22 = v2.eval_at_one()
    d1 = v1.derivative_at_one()
    d2 = v2.derivative_at_one()
    return InvariantReport(
        gauss_code=diagram.gauss_code(),
        n=diagram.n,
        v1=v1,
        v2=v2,
        v21=v21,
        v22=v22,
        v1_prime_1=d1,
        v2_prime_1=d2,
        alpha2=v21,
        alpha3=d1 - v21,
    )
