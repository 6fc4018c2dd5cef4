"""Local moves on Gauss diagrams and a seeded, replayable move-walk fuzzer.

Move kinds
----------
* ``R1Insert`` / ``R1Delete``: add or remove an isolated chord (its two
  endpoints adjacent).
* ``R2Insert`` / ``R2Delete``: add or remove a cancelling chord pair: two
  chords of opposite signs whose endpoints form two adjacent-position
  "windows", one window holding both over endpoints and the other both under
  endpoints, in parallel or reversed order.
* ``R3`` and ``Delta``: triangle moves.  Three chords whose six endpoints
  fill three disjoint windows (adjacent position pairs), each pair of chords
  sharing exactly one window; the move swaps the two endpoints inside every
  window.  Writing o for the over/under placement, tau for the within-window
  orders and s for the chord signs (all as +-1, see ``_triangle_config``),
  a configuration occurs in a planar triangle exactly when

      o_x * o_y * tau_b * tau_c * s_x * s_y == 1   and
      o_x * o_z * tau_a * tau_c * s_x * s_z == 1.

  The move is an R3 when the over/under tournament among the three strands
  is transitive (one window holds two over endpoints, another two under
  endpoints) and a Delta-move when the tournament is cyclic (every window
  holds one over and one under endpoint).  R3 sites carry a variant tag
  "i".."vi" classifying the tournament layout; Delta sites carry a
  forward/backward direction tag.  Both swaps are involutions, so the two
  directions of a Delta-move are mutually inverse.
* ``Welded``: exchange two adjacent initial (over) endpoints.
* ``Virtualize``: delete one chord.
* ``CrossingChange``: flip one chord's sign and swap its passages.

Walks are driven by a seeded Mersenne Twister and produce replayable
transcripts: one line per step holding the step index, the move kind, the
JSON-encoded site parameters and the resulting canonical Gauss code.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gauss import GaussDiagram, Token, _as_rng

R1_INSERT = "R1Insert"
R1_DELETE = "R1Delete"
R2_INSERT = "R2Insert"
R2_DELETE = "R2Delete"
R3 = "R3"
WELDED = "Welded"
DELTA = "Delta"
VIRTUALIZE = "Virtualize"
CROSSING_CHANGE = "CrossingChange"

ALL_KINDS = (
    R1_INSERT,
    R1_DELETE,
    R2_INSERT,
    R2_DELETE,
    R3,
    WELDED,
    DELTA,
    VIRTUALIZE,
    CROSSING_CHANGE,
)
#: The move set generating the virtual-knot equivalence.
REIDEMEISTER_KINDS = (R1_INSERT, R1_DELETE, R2_INSERT, R2_DELETE, R3)

SKIP = "skip"


class MoveSiteError(ValueError):
    """A move site cannot be applied to the given diagram."""


class StaleSiteError(MoveSiteError):
    """The local pattern required by the site is no longer present."""


class SiteRangeError(MoveSiteError):
    """Site parameters point outside the diagram."""


@dataclass(frozen=True)
class MoveSite:
    """A locus plus parameters where one move applies."""

    kind: str
    params: tuple


_R3_VARIANTS = {
    (0, 1): "i",
    (0, 2): "ii",
    (1, 0): "iii",
    (1, 2): "iv",
    (2, 0): "v",
    (2, 1): "vi",
}
R3_VARIANT_TAGS = tuple(sorted(_R3_VARIANTS.values()))


def _window_positions(word: Sequence[Token]) -> list[int]:
    return [p for p in range(len(word) - 1) if word[p][0] != word[p + 1][0]]


def _triangle_config(word: Sequence[Token], signs: Sequence[int], p1: int, p2: int, p3: int):
    """Inspect three windows; return ((x, y, z), config, cyclic) or None.

    x is the chord shared by windows 1 and 2, y by 1 and 3, z by 2 and 3.
    config = (o_x, o_y, o_z, tau_a, tau_b, tau_c, s_x, s_y, s_z) where o_x is
    +1 when x's endpoint inside window 1 is an over passage (likewise o_y;
    o_z refers to window 2), tau_a is +1 when x's endpoint comes first in
    window 1, tau_b when x comes first in window 2, tau_c when y comes first
    in window 3.  Only planar-realizable configurations are returned.
    """
    if not (0 <= p1 and p1 + 1 < p2 and p2 + 1 < p3 and p3 + 1 < len(word)):
        return None
    ends = []
    for p in (p1, p2, p3):
        a, b = word[p], word[p + 1]
        if a[0] == b[0]:
            return None
        ends.append((a, b))
    sets = [{ends[i][0][0], ends[i][1][0]} for i in range(3)]
    x_set, y_set, z_set = sets[0] & sets[1], sets[0] & sets[2], sets[1] & sets[2]
    if len(x_set) != 1 or len(y_set) != 1 or len(z_set) != 1:
        return None
    x, y, z = x_set.pop(), y_set.pop(), z_set.pop()
    if len({x, y, z}) != 3:
        return None

    def over_bit(win: int, chord: int) -> int:
        a, b = ends[win]
        tok = a if a[0] == chord else b
        return 1 if tok[1] else -1

    ox = over_bit(0, x)
    oy = over_bit(0, y)
    oz = over_bit(1, z)
    ta = 1 if ends[0][0][0] == x else -1
    tb = 1 if ends[1][0][0] == x else -1
    tc = 1 if ends[2][0][0] == y else -1
    sx, sy, sz = signs[x - 1], signs[y - 1], signs[z - 1]
    if ox * oy * tb * tc * sx * sy != 1 or ox * oz * ta * tc * sx * sz != 1:
        return None
    cyclic = ox == oz == -oy
    return (x, y, z), (ox, oy, oz, ta, tb, tc, sx, sy, sz), cyclic


def _triangle_tag(word: Sequence[Token], p1: int, p2: int, p3: int, cyclic: bool, ta: int) -> str:
    if cyclic:
        return "forward" if ta == 1 else "backward"
    overs = []
    for p in (p1, p2, p3):
        overs.append((word[p][1], word[p + 1][1]))
    oo = next(i for i, (u, v) in enumerate(overs) if u and v)
    uu = next(i for i, (u, v) in enumerate(overs) if not u and not v)
    return _R3_VARIANTS[(oo, uu)]


def _triangle_sites(diagram: GaussDiagram, kind: str) -> list[MoveSite]:
    word = diagram.word
    signs = diagram.signs
    want_cyclic = kind == DELTA
    by_pair: dict[frozenset, list[int]] = {}
    for p in _window_positions(word):
        by_pair.setdefault(frozenset((word[p][0], word[p + 1][0])), []).append(p)
    partners: dict[int, set[int]] = {}
    for fs in by_pair:
        a, b = sorted(fs)
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    sites: list[MoveSite] = []
    for a in sorted(partners):
        for b in sorted(c for c in partners[a] if c > a):
            common = partners[a] & partners[b]
            for c in sorted(d for d in common if d > b):
                for pa in by_pair[frozenset((a, b))]:
                    for pb in by_pair[frozenset((a, c))]:
                        for pc in by_pair[frozenset((b, c))]:
                            p1, p2, p3 = sorted((pa, pb, pc))
                            res = _triangle_config(word, signs, p1, p2, p3)
                            if res is None:
                                continue
                            _, config, cyclic = res
                            if cyclic != want_cyclic:
                                continue
                            tag = _triangle_tag(word, p1, p2, p3, cyclic, config[3])
                            sites.append(MoveSite(kind, (p1, p2, p3, tag)))
    sites.sort(key=lambda s: s.params[:3])
    return sites


def enumerate_sites(diagram: GaussDiagram, kind: str) -> tuple[MoveSite, ...]:
    """All applicable sites of one kind, deterministically ordered."""
    word = diagram.word
    m = len(word)
    n = diagram.n
    sites: list[MoveSite] = []
    if kind == R1_INSERT:
        for pos in range(m + 1):
            for over_first in (True, False):
                for sign in (1, -1):
                    sites.append(MoveSite(kind, (pos, over_first, sign)))
    elif kind == R1_DELETE:
        for pos in range(m - 1):
            if word[pos][0] == word[pos + 1][0]:
                sites.append(MoveSite(kind, (pos,)))
    elif kind == R2_INSERT:
        for p in range(m + 1):
            for q in range(p, m + 1):
                for over_first in (True, False):
                    for parallel in (True, False):
                        for sign in (1, -1):
                            sites.append(MoveSite(kind, (p, q, over_first, parallel, sign)))
    elif kind == R2_DELETE:
        for p in _window_positions(word):
            if word[p][1] != word[p + 1][1]:
                continue
            a, b = word[p][0], word[p + 1][0]
            if diagram.signs[a - 1] == diagram.signs[b - 1]:
                continue
            for q in range(p + 2, m - 1):
                if {word[q][0], word[q + 1][0]} != {a, b}:
                    continue
                if word[q][1] != word[q + 1][1] or word[q][1] == word[p][1]:
                    continue
                sites.append(MoveSite(kind, (p, q)))
    elif kind in (R3, DELTA):
        sites = _triangle_sites(diagram, kind)
    elif kind == WELDED:
        for pos in range(m - 1):
            if word[pos][1] and word[pos + 1][1]:
                sites.append(MoveSite(kind, (pos,)))
    elif kind == VIRTUALIZE:
        sites = [MoveSite(kind, (cid,)) for cid in range(1, n + 1)]
    elif kind == CROSSING_CHANGE:
        sites = [MoveSite(kind, (cid,)) for cid in range(1, n + 1)]
    else:
        raise MoveSiteError(f"unknown move kind {kind!r}")
    return tuple(sites)


def apply(diagram: GaussDiagram, site: MoveSite) -> GaussDiagram:
    """Apply one move site; raises on stale or out-of-range sites."""
    word = list(diagram.word)
    signs = {i + 1: s for i, s in enumerate(diagram.signs)}
    m = len(word)
    kind = site.kind
    params = site.params
    if kind == R1_INSERT:
        pos, over_first, sign = params
        if not 0 <= pos <= m:
            raise SiteRangeError(f"insert position {pos} outside 0..{m}")
        cid = diagram.n + 1
        word[pos:pos] = [(cid, bool(over_first)), (cid, not over_first)]
        signs[cid] = sign
    elif kind == R1_DELETE:
        (pos,) = params
        if not 0 <= pos < m - 1:
            raise SiteRangeError(f"delete position {pos} outside 0..{m - 2}")
        if word[pos][0] != word[pos + 1][0]:
            raise StaleSiteError(f"no isolated chord at position {pos}")
        cid = word[pos][0]
        del word[pos : pos + 2]
        del signs[cid]
    elif kind == R2_INSERT:
        p, q, over_first, parallel, sign = params
        if not 0 <= p <= q <= m:
            raise SiteRangeError(f"insert positions ({p}, {q}) outside 0..{m}")
        a, b = diagram.n + 1, diagram.n + 2
        over_first = bool(over_first)
        first = [(a, over_first), (b, over_first)]
        if parallel:
            second = [(a, not over_first), (b, not over_first)]
        else:
            second = [(b, not over_first), (a, not over_first)]
        word[q:q] = second
        word[p:p] = first
        signs[a] = sign
        signs[b] = -sign
    elif kind == R2_DELETE:
        p, q = params
        if not (0 <= p and p + 1 < q and q + 1 < m):
            raise SiteRangeError(f"delete windows ({p}, {q}) outside the word")
        a, b = word[p][0], word[p + 1][0]
        ok = (
            a != b
            and {word[q][0], word[q + 1][0]} == {a, b}
            and word[p][1] == word[p + 1][1]
            and word[q][1] == word[q + 1][1]
            and word[p][1] != word[q][1]
            and signs[a] == -signs[b]
        )
        if not ok:
            raise StaleSiteError(f"no cancelling pair at windows ({p}, {q})")
        del word[q : q + 2]
        del word[p : p + 2]
        del signs[a]
        del signs[b]
    elif kind in (R3, DELTA):
        p1, p2, p3, tag = params
        res = _triangle_config(word, diagram.signs, p1, p2, p3)
        if res is None:
            raise StaleSiteError(f"no realizable triangle at windows ({p1}, {p2}, {p3})")
        _, config, cyclic = res
        if cyclic != (kind == DELTA):
            raise StaleSiteError("triangle tournament does not match the move kind")
        if _triangle_tag(word, p1, p2, p3, cyclic, config[3]) != tag:
            raise StaleSiteError("triangle layout changed since the site was found")
        for p in (p1, p2, p3):
            word[p], word[p + 1] = word[p + 1], word[p]
    elif kind == WELDED:
        (pos,) = params
        if not 0 <= pos < m - 1:
            raise SiteRangeError(f"position {pos} outside 0..{m - 2}")
        if not (word[pos][1] and word[pos + 1][1]):
            raise StaleSiteError(f"positions {pos}, {pos + 1} are not both over endpoints")
        word[pos], word[pos + 1] = word[pos + 1], word[pos]
    elif kind == VIRTUALIZE:
        (cid,) = params
        if not 1 <= cid <= diagram.n:
            raise SiteRangeError(f"no chord {cid}")
        return diagram.delete_chords([cid])
    elif kind == CROSSING_CHANGE:
        (cid,) = params
        if not 1 <= cid <= diagram.n:
            raise SiteRangeError(f"no chord {cid}")
        return diagram.switch_chords([cid])
    else:
        raise MoveSiteError(f"unknown move kind {kind!r}")
    return GaussDiagram(word, signs)


def _sample_site(diagram: GaussDiagram, kind: str, rng: random.Random) -> MoveSite | None:
    """Uniform site of the given kind, or None when none applies.

    Insert kinds are sampled by decoding a single draw over the parameter
    space (same set as enumerate_sites); the rest enumerate and pick.
    """
    m = 2 * diagram.n
    if kind == R1_INSERT:
        k = rng.randrange((m + 1) * 4)
        pos, rem = divmod(k, 4)
        return MoveSite(kind, (pos, rem // 2 == 0, 1 if rem % 2 == 0 else -1))
    if kind == R2_INSERT:
        pairs = (m + 1) * (m + 2) // 2
        k = rng.randrange(pairs * 8)
        pair_idx, rem = divmod(k, 8)
        p = 0
        span = m + 1
        while pair_idx >= span:
            pair_idx -= span
            span -= 1
            p += 1
        q = p + pair_idx
        return MoveSite(
            kind, (p, q, rem & 4 == 0, rem & 2 == 0, 1 if rem & 1 == 0 else -1)
        )
    sites = enumerate_sites(diagram, kind)
    if not sites:
        return None
    return sites[rng.randrange(len(sites))]


@dataclass(frozen=True)
class WalkStep:
    index: int
    kind: str  # a move kind, or "skip" when no site of the drawn kind existed
    params: tuple
    code: str  # canonical Gauss code after the step


@dataclass(frozen=True)
class Transcript:
    """Replayable record of one walk."""

    start_code: str
    steps: tuple[WalkStep, ...]

    def coverage(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for step in self.steps:
            out[step.kind] = out.get(step.kind, 0) + 1
        return out

    def r3_variants(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for step in self.steps:
            if step.kind == R3:
                tag = step.params[3]
                out[tag] = out.get(tag, 0) + 1
        return out

    def to_text(self) -> str:
        lines = ["# vknot transcript", f"# start: {self.start_code}"]
        for step in self.steps:
            lines.append(
                "\t".join(
                    (str(step.index), step.kind, json.dumps(list(step.params)), step.code)
                )
            )
        lines.append("# coverage: " + json.dumps(self.coverage(), sort_keys=True))
        lines.append("# r3-variants: " + json.dumps(self.r3_variants(), sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Transcript":
        start: str | None = None
        steps: list[WalkStep] = []
        for raw in text.splitlines():
            line = raw.rstrip("\n")
            if line.startswith("# start:"):
                start = line[len("# start:") :].strip()
                continue
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise ReplayError(f"malformed transcript line {line!r}")
            idx, kind, params_json, code = fields
            params = tuple(json.loads(params_json))
            steps.append(WalkStep(int(idx), kind, params, code))
        if start is None:
            raise ReplayError("transcript has no '# start:' line")
        return cls(start, tuple(steps))


class ReplayError(ValueError):
    """A transcript does not replay to the codes it records."""


def replay(transcript: Transcript | str) -> GaussDiagram:
    """Re-run a transcript, verifying every recorded code; returns the final
    diagram.  Raises ReplayError on any mismatch."""
    if isinstance(transcript, str):
        transcript = Transcript.from_text(transcript)
    current = GaussDiagram.parse(transcript.start_code)
    for step in transcript.steps:
        if step.kind == SKIP:
            result = current
        else:
            try:
                result = apply(current, MoveSite(step.kind, step.params))
            except MoveSiteError as exc:
                raise ReplayError(f"step {step.index}: {exc}") from exc
        if result.gauss_code() != step.code:
            raise ReplayError(
                f"step {step.index}: replay produced {result.gauss_code()!r}, "
                f"transcript records {step.code!r}"
            )
        current = result
    return current


def random_walk(
    diagram: GaussDiagram,
    kinds: Iterable[str],
    length: int,
    rng: int | random.Random,
) -> tuple[GaussDiagram, Transcript]:
    """Apply ``length`` uniformly chosen applicable moves from ``kinds``.

    Each step draws a kind (uniform over the caller's list, order
    significant for reproducibility), then a uniform site of that kind.  A
    step with no applicable site is recorded as a skip and the walk goes on.
    Deterministic for a given seed.
    """
    kind_list = tuple(kinds)
    if not kind_list:
        raise ValueError("need at least one move kind")
    if length < 0:
        raise ValueError("walk length must be >= 0")
    r = _as_rng(rng)
    current = diagram
    steps: list[WalkStep] = []
    for idx in range(length):
        kind = kind_list[r.randrange(len(kind_list))]
        site = _sample_site(current, kind, r)
        if site is None:
            steps.append(WalkStep(idx, SKIP, (kind,), current.gauss_code()))
            continue
        current = apply(current, site)
        steps.append(WalkStep(idx, site.kind, site.params, current.gauss_code()))
    return current, Transcript(diagram.gauss_code(), tuple(steps))
