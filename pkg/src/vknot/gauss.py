"""Gauss diagrams of long virtual knots.

A long virtual knot is represented here purely combinatorially, as a Gauss
diagram: a horizontal line (read left to right) carrying the 2n endpoints of
n signed chords.  Each chord records one crossing; its two endpoints are the
over passage and the under passage of that crossing, and the chord carries
the crossing sign.  Chords are oriented from the over passage to the under
passage; this arrow convention is frozen by the calibration tests in the
test suite (see README).

Text format (one diagram per line, ``#`` starts a comment line)::

    token   := passage id sign
    passage := 'O' | 'U'
    id      := decimal integer >= 1
    sign    := '+' | '-'

Tokens are whitespace separated and both tokens of a chord must carry the
same sign character, e.g. ``O1+ U2- U1+ O2-``.

Diagrams are stored canonically: chord ids are renumbered 1..n in order of
first appearance along the line.  Instances are immutable values; all
operations return new diagrams and are safe for concurrent use.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

Token = tuple[int, bool]  # (chord id, is_over)

#: Hard ceiling for exhaustive enumeration unless the caller raises it.
DEFAULT_ENUM_CAP = 4


class GaussCodeError(ValueError):
    """Malformed Gauss code text or invalid diagram structure.

    ``column`` is the 1-based character offset of the offending token when
    the error comes from parsing text, else None.
    """

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class EnumerationCapError(ValueError):
    """Requested chord count exceeds the configured enumeration cap."""


@dataclass(frozen=True)
class ChordMeta:
    """Derived per-chord data (not stored on the diagram).

    ``type`` is 0 when the over endpoint comes first along the line, 1 when
    the under endpoint comes first.  Endpoint signs follow the arrow
    convention: the under (terminal) endpoint carries the chord sign, the
    over (initial) endpoint carries its negation.
    """

    chord_id: int
    type: int
    left_pos: int
    right_pos: int
    left_sign: int
    right_sign: int


class GaussDiagram:
    """An immutable Gauss diagram in canonical form.

    ``word`` is a tuple of (chord_id, is_over) tokens; ``signs[i]`` is the
    sign of chord i+1.  The constructor accepts arbitrary positive chord ids
    and renumbers them 1..n by first appearance.
    """

    __slots__ = ("word", "signs", "_tables")

    def __init__(self, word: Iterable[Token], signs: Mapping[int, int]):
        raw = list(word)
        relabel: dict[int, int] = {}
        for cid, _ in raw:
            if cid not in relabel:
                relabel[cid] = len(relabel) + 1
        seen: dict[int, bool] = {}
        canon: list[Token] = []
        for cid, over in raw:
            new_id = relabel[cid]
            key = new_id * 2 + (1 if over else 0)
            if key in seen:
                passage = "over" if over else "under"
                raise GaussCodeError(f"chord {cid} has two {passage} passages")
            seen[key] = True
            canon.append((new_id, over))
        n = len(relabel)
        if len(raw) != 2 * n:
            for cid, new_id in relabel.items():
                count = sum(1 for c, _ in raw if c == cid)
                if count != 2:
                    raise GaussCodeError(f"chord {cid} appears {count} times, expected 2")
        for new_id in range(1, n + 1):
            if (new_id * 2) not in seen or (new_id * 2 + 1) not in seen:
                old = next(k for k, v in relabel.items() if v == new_id)
                raise GaussCodeError(f"chord {old} is missing an over or under passage")
        sign_list = [0] * n
        for cid, new_id in relabel.items():
            try:
                s = signs[cid]
            except KeyError:
                raise GaussCodeError(f"no sign given for chord {cid}") from None
            if s not in (1, -1):
                raise GaussCodeError(f"sign of chord {cid} must be +1 or -1, got {s!r}")
            sign_list[new_id - 1] = s
        extra = set(signs) - set(relabel)
        if extra:
            raise GaussCodeError(f"signs given for absent chords: {sorted(extra)}")
        self.word: tuple[Token, ...] = tuple(canon)
        self.signs: tuple[int, ...] = tuple(sign_list)
        self._tables = None

    # -- basic views ---------------------------------------------------

    @property
    def n(self) -> int:
        """Number of chords."""
        return len(self.signs)

    def sign_of(self, chord_id: int) -> int:
        return self.signs[chord_id - 1]

    def chord_meta(self) -> tuple[ChordMeta, ...]:
        """Per-chord derived data, ordered by chord id."""
        lpos, rpos, typ, lsign, eps = self.tables()
        out = []
        for i in range(self.n):
            out.append(
                ChordMeta(
                    chord_id=i + 1,
                    type=typ[i],
                    left_pos=lpos[i],
                    right_pos=rpos[i],
                    left_sign=lsign[i],
                    right_sign=-lsign[i],
                )
            )
        return tuple(out)

    def tables(self) -> tuple[list[int], list[int], list[int], list[int], list[int]]:
        """Parallel per-chord lists (lpos, rpos, type, left sign, chord sign).

        Cached; used by the invariant evaluators.
        """
        if self._tables is None:
            n = self.n
            lpos = [-1] * n
            rpos = [-1] * n
            typ = [0] * n
            lsign = [0] * n
            for pos, (cid, over) in enumerate(self.word):
                i = cid - 1
                if lpos[i] < 0:
                    lpos[i] = pos
                    typ[i] = 0 if over else 1
                else:
                    rpos[i] = pos
            eps = list(self.signs)
            for i in range(n):
                # over endpoint is initial and carries -sign; under is terminal
                lsign[i] = -eps[i] if typ[i] == 0 else eps[i]
            self._tables = (lpos, rpos, typ, lsign, eps)
        return self._tables

    # -- identity --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussDiagram):
            return NotImplemented
        return self.word == other.word and self.signs == other.signs

    def __hash__(self) -> int:
        return hash((self.word, self.signs))

    def __repr__(self) -> str:
        return f"GaussDiagram({self.gauss_code()!r})"

    # -- text format -------------------------------------------------------

    _TOKEN = re.compile(r"([OU])([0-9]+)([+-])")

    @classmethod
    def parse(cls, text: str) -> "GaussDiagram":
        """Parse one diagram from Gauss-code text.

        Raises GaussCodeError (with a 1-based ``column``) on syntax errors,
        and on structural errors: a chord appearing more or fewer than two
        times, two passages of the same kind, or a sign mismatch between a
        chord's two tokens.
        """
        word: list[Token] = []
        signs: dict[int, int] = {}
        for m in re.finditer(r"\S+", text):
            tok = m.group(0)
            col = m.start() + 1
            tm = cls._TOKEN.fullmatch(tok)
            if tm is None:
                raise GaussCodeError(f"bad token {tok!r}", column=col)
            passage, id_text, sign_char = tm.groups()
            cid = int(id_text)
            if cid < 1:
                raise GaussCodeError(f"chord id must be >= 1 in token {tok!r}", column=col)
            s = 1 if sign_char == "+" else -1
            if cid in signs and signs[cid] != s:
                raise GaussCodeError(f"sign mismatch within chord {cid}", column=col)
            signs[cid] = s
            word.append((cid, passage == "O"))
        try:
            return cls(word, signs)
        except GaussCodeError as exc:
            raise GaussCodeError(str(exc)) from None

    def gauss_code(self) -> str:
        """Canonical text form: single spaces, ids 1..n by first appearance."""
        parts = []
        for cid, over in self.word:
            parts.append(
                ("O" if over else "U") + str(cid) + ("+" if self.signs[cid - 1] > 0 else "-")
            )
        return " ".join(parts)

    # -- symmetries and product ---------------------------------------------

    def reverse(self) -> "GaussDiagram":
        """Reverse the orientation of the underlying line."""
        signs = {cid: self.signs[cid - 1] for cid, _ in self.word}
        return GaussDiagram(reversed(self.word), signs)

    def mirror(self) -> "GaussDiagram":
        """Negate the sign of every chord."""
        signs = {i + 1: -s for i, s in enumerate(self.signs)}
        return GaussDiagram(self.word, signs)

    def switch(self) -> "GaussDiagram":
        """Negate every sign and swap every chord's passages."""
        word = [(cid, not over) for cid, over in self.word]
        signs = {i + 1: -s for i, s in enumerate(self.signs)}
        return GaussDiagram(word, signs)

    def concat(self, other: "GaussDiagram") -> "GaussDiagram":
        """This diagram followed by ``other`` (the product diagram)."""
        shift = self.n
        word = list(self.word) + [(cid + shift, over) for cid, over in other.word]
        signs = {i + 1: s for i, s in enumerate(self.signs)}
        signs.update({cid + shift: other.signs[cid - 1] for cid, _ in other.word})
        return GaussDiagram(word, signs)

    # -- chord surgery (used by moves and alternating sums) ------------------

    def delete_chords(self, chord_ids: Iterable[int]) -> "GaussDiagram":
        """Remove the listed chords entirely (virtualization)."""
        drop = set(chord_ids)
        for cid in drop:
            if not 1 <= cid <= self.n:
                raise GaussCodeError(f"no chord {cid} in this diagram")
        word = [(cid, over) for cid, over in self.word if cid not in drop]
        signs = {cid: self.signs[cid - 1] for cid, _ in word}
        return GaussDiagram(word, signs)

    def switch_chords(self, chord_ids: Iterable[int]) -> "GaussDiagram":
        """Flip sign and swap passages of the listed chords (crossing change)."""
        flip = set(chord_ids)
        for cid in flip:
            if not 1 <= cid <= self.n:
                raise GaussCodeError(f"no chord {cid} in this diagram")
        word = [(cid, (not over) if cid in flip else over) for cid, over in self.word]
        signs = {
            i + 1: (-s if i + 1 in flip else s) for i, s in enumerate(self.signs)
        }
        return GaussDiagram(word, signs)


def parse(text: str) -> GaussDiagram:
    """Module-level alias for GaussDiagram.parse."""
    return GaussDiagram.parse(text)


def serialize(diagram: GaussDiagram) -> str:
    """Module-level alias for GaussDiagram.gauss_code."""
    return diagram.gauss_code()


EMPTY = GaussDiagram((), {})


def _as_rng(rng: int | random.Random) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def random_diagram(n: int, rng: int | random.Random) -> GaussDiagram:
    """A uniformly random diagram with n chords.

    The endpoint matching is uniform over the (2n)!/(2^n n!) perfect
    matchings of 2n positions; each chord independently gets a uniform
    passage orientation and a uniform sign.

    The sampling algorithm is fixed forever for reproducibility: position
    pairs are built by repeatedly matching the smallest unmatched position
    with a uniformly chosen other unmatched position (one ``randrange`` draw
    per chord); then, per chord in order of left endpoint, one draw decides
    whether the left endpoint is the over passage and one draw decides the
    sign.  ``rng`` is either a ``random.Random`` (Mersenne Twister) instance
    or an integer seed for one.
    """
    if n < 0:
        raise ValueError("chord count must be >= 0")
    r = _as_rng(rng)
    free = list(range(2 * n))
    left_of: list[int] = []
    mate_of: list[int] = []
    while free:
        left = free.pop(0)
        mate = free.pop(r.randrange(len(free)))
        left_of.append(left)
        mate_of.append(mate)
    word: list[Token | None] = [None] * (2 * n)
    signs: dict[int, int] = {}
    for i in range(n):
        left_over = r.randrange(2) == 0
        sign = 1 if r.randrange(2) == 0 else -1
        word[left_of[i]] = (i + 1, left_over)
        word[mate_of[i]] = (i + 1, not left_over)
        signs[i + 1] = sign
    return GaussDiagram([tok for tok in word if tok is not None], signs)


def enumerate_diagrams(n: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[GaussDiagram]:
    """All diagrams with exactly n chords, each exactly once, canonically.

    Enumeration order is fixed: perfect matchings are generated recursively
    (smallest free position paired with each larger free position in
    increasing order); for each matching, passage orientations are iterated
    with chord 1 varying slowest (over-first before under-first), then signs
    likewise (+ before -).  Raises EnumerationCapError when n exceeds
    ``cap``.
    """
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds enumeration cap {cap}")
    if n < 0:
        raise ValueError("chord count must be >= 0")

    def matchings(free: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not free:
            yield ()
            return
        first = free[0]
        rest = free[1:]
        for k, mate in enumerate(rest):
            remaining = rest[:k] + rest[k + 1 :]
            for tail in matchings(remaining):
                yield ((first, mate),) + tail

    for match in matchings(tuple(range(2 * n))):
        for overs in itertools.product((True, False), repeat=n):
            base: list[Token | None] = [None] * (2 * n)
            for cid0, (left, right) in enumerate(match):
                base[left] = (cid0 + 1, overs[cid0])
                base[right] = (cid0 + 1, not overs[cid0])
            word = [tok for tok in base if tok is not None]
            for sgns in itertools.product((1, -1), repeat=n):
                yield GaussDiagram(word, {i + 1: s for i, s in enumerate(sgns)})


def search_first(
    predicate: Callable[[GaussDiagram], bool], n_max: int, cap: int = DEFAULT_ENUM_CAP
) -> GaussDiagram | None:
    """First diagram in canonical enumeration order (n ascending) satisfying
    ``predicate``, or None."""
    for n in range(n_max + 1):
        for d in enumerate_diagrams(n, cap=cap):
            if predicate(d):
                return d
    return None
