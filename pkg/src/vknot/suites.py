"""Randomized property suites behind ``vknot verify`` and the test suite.

Each runner draws every random object from one seeded Mersenne Twister, so a
(count, seed) pair pins the whole run.  Failures are reported as replayable
text: either a walk transcript or the Gauss codes and parameters of the
offending case.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from . import moves
from .construct import FAMILY_K, FAMILY_KPRIME, delta_bound, family, realize
from .gauss import GaussDiagram, random_diagram
from .invariants import (
    alpha2,
    alpha3,
    alpha3_gd,
    crossing_change_alt_sum,
    v1_prime_gd,
    v1_prime_semantic,
    v1_prime_virtualization_alt_sum,
    v21_direct,
    v22_direct,
    v_polys,
    virtualization_alt_sum,
)
from .laurent import LaurentPolynomial
from .moves import DELTA, R3, WELDED, MoveSite, apply, enumerate_sites, random_walk

SUITE_NAMES = ("invariance", "symmetry", "additivity", "finite-type", "delta", "welded")


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list[str] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)} failures)"
        extra = ""
        if self.stats:
            parts = ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
            extra = f" [{parts}]"
        return f"suite {self.name}: {self.cases} cases, {status}{extra}"


def _triangle_configs(cyclic: bool) -> tuple[tuple[int, ...], ...]:
    out = []
    for bits in itertools.product((1, -1), repeat=9):
        ox, oy, oz, ta, tb, tc, sx, sy, sz = bits
        if ox * oy * tb * tc * sx * sy != 1 or ox * oz * ta * tc * sx * sz != 1:
            continue
        if (ox == oz == -oy) != cyclic:
            continue
        out.append(bits)
    return tuple(out)


R3_CONFIGS = _triangle_configs(False)
DELTA_CONFIGS = _triangle_configs(True)


def insert_triangle(
    base: GaussDiagram, config: tuple[int, ...], slots: tuple[int, int, int], kind: str
) -> tuple[GaussDiagram, MoveSite]:
    """Splice a triangle-move configuration into ``base`` at the given word
    slots (q1 <= q2 <= q3) and return the diagram plus the move site."""
    ox, oy, oz, ta, tb, tc, sx, sy, sz = config
    q1, q2, q3 = slots
    n = base.n
    x, y, z = n + 1, n + 2, n + 3
    xt1, yt1 = (x, ox == 1), (y, oy == 1)
    win1 = [xt1, yt1] if ta == 1 else [yt1, xt1]
    xt2, zt2 = (x, ox == -1), (z, oz == 1)
    win2 = [xt2, zt2] if tb == 1 else [zt2, xt2]
    yt3, zt3 = (y, oy == -1), (z, oz == -1)
    win3 = [yt3, zt3] if tc == 1 else [zt3, yt3]
    word = list(base.word)
    word[q3:q3] = win3
    word[q2:q2] = win2
    word[q1:q1] = win1
    signs = {i + 1: s for i, s in enumerate(base.signs)}
    signs[x], signs[y], signs[z] = sx, sy, sz
    diagram = GaussDiagram(word, signs)
    w1, w2, w3 = q1, q2 + 2, q3 + 4
    res = moves._triangle_config(diagram.word, diagram.signs, w1, w2, w3)
    if res is None or res[1] != config or res[2] != (kind == DELTA):
        raise AssertionError("triangle insertion produced an inconsistent site")
    tag = moves._triangle_tag(diagram.word, w1, w2, w3, res[2], ta)
    return diagram, MoveSite(kind, (w1, w2, w3, tag))


def _random_slots(rng: random.Random, word_len: int) -> tuple[int, int, int]:
    a, b, c = sorted(rng.randrange(word_len + 1) for _ in range(3))
    return a, b, c


def random_laurent(
    rng: random.Random,
    max_terms: int = 4,
    exp_range: tuple[int, int] = (-5, 5),
    coeff_range: tuple[int, int] = (-3, 3),
) -> LaurentPolynomial:
    terms: dict[int, int] = {}
    for _ in range(rng.randrange(max_terms + 1)):
        e = rng.randint(*exp_range)
        c = rng.randint(*coeff_range)
        terms[e] = terms.get(e, 0) + c
    return LaurentPolynomial(terms)


def run_invariance(
    count: int, seed: int, max_chords: int = 8, max_walk: int = 12
) -> SuiteResult:
    """Random Reidemeister walks leave (v1, v2) unchanged; every realizable
    R3 configuration is exercised at least once."""
    rng = random.Random(seed)
    result = SuiteResult("invariance", count)
    variants: dict[str, int] = {}
    for config in R3_CONFIGS:
        base = random_diagram(rng.randrange(4), rng)
        diagram, site = insert_triangle(base, config, _random_slots(rng, 2 * base.n), R3)
        before = v_polys(diagram)
        after = v_polys(apply(diagram, site))
        tag = site.params[3]
        variants[tag] = variants.get(tag, 0) + 1
        if before != after:
            result.failures.append(
                f"R3 config {config} changed the invariants on {diagram.gauss_code()!r}"
            )
    applied = 0
    for case in range(count):
        n = rng.randrange(max_chords + 1)
        diagram = random_diagram(n, rng)
        length = rng.randrange(max_walk + 1)
        final, transcript = random_walk(diagram, moves.REIDEMEISTER_KINDS, length, rng)
        for kind, k in transcript.coverage().items():
            if kind != moves.SKIP:
                applied += k
        for tag, k in transcript.r3_variants().items():
            variants[tag] = variants.get(tag, 0) + k
        if v_polys(diagram) != v_polys(final):
            result.failures.append(
                f"case {case}: walk changed the invariants\n" + transcript.to_text()
            )
    result.stats["moves_applied"] = applied
    for tag in moves.R3_VARIANT_TAGS:
        result.stats[f"r3_{tag}"] = variants.get(tag, 0)
        if variants.get(tag, 0) == 0:
            result.failures.append(f"R3 variant {tag} was never exercised")
    return result


def run_symmetry(count: int, seed: int, max_chords: int = 8) -> SuiteResult:
    """Reversal and mirror substitute 1/t; the switch swaps v1 and v2."""
    rng = random.Random(seed)
    result = SuiteResult("symmetry", count)
    for case in range(count):
        diagram = random_diagram(rng.randrange(max_chords + 1), rng)
        v1, v2 = v_polys(diagram)
        checks = [
            (v_polys(diagram.reverse()), (v1.substitute_inverse(), v2.substitute_inverse()), "reverse"),
            (v_polys(diagram.mirror()), (v1.substitute_inverse(), v2.substitute_inverse()), "mirror"),
            (v_polys(diagram.switch()), (v2, v1), "switch"),
        ]
        for got, want, label in checks:
            if got != want:
                result.failures.append(
                    f"case {case}: {label} symmetry failed on {diagram.gauss_code()!r}"
                )
        if (
            diagram.reverse().reverse() != diagram
            or diagram.mirror().mirror() != diagram
            or diagram.switch().switch() != diagram
            or diagram.mirror().switch() != diagram.switch().mirror()
            or diagram.reverse().switch() != diagram.switch().reverse()
            or diagram.reverse().mirror() != diagram.mirror().reverse()
        ):
            result.failures.append(
                f"case {case}: involution identities failed on {diagram.gauss_code()!r}"
            )
    return result


def run_additivity(count: int, seed: int, max_chords: int = 6) -> SuiteResult:
    """(v1, v2) add under concatenation."""
    rng = random.Random(seed)
    result = SuiteResult("additivity", count)
    for case in range(count):
        first = random_diagram(rng.randrange(max_chords + 1), rng)
        second = random_diagram(rng.randrange(max_chords + 1), rng)
        va = v_polys(first)
        vb = v_polys(second)
        vc = v_polys(first.concat(second))
        if vc != (va[0] + vb[0], va[1] + vb[1]):
            result.failures.append(
                f"case {case}: additivity failed on {first.gauss_code()!r} "
                f"and {second.gauss_code()!r}"
            )
    return result


def binomial_power(n: int) -> LaurentPolynomial:
    """(t - 1)**n, expanded exactly (independent of the invariant code)."""
    return LaurentPolynomial(
        {k: math.comb(n, k) * (-1) ** (n - k) for k in range(n + 1)}
    )


def run_finite_type(count: int, seed: int, max_chords: int = 8) -> SuiteResult:
    """Degree bounds for the two local operations.

    Crossing-change alternating sums over 3- and 4-subsets of chords vanish;
    4-subset virtualization alternating sums of v1'(1) vanish; the family
    tail realizes the full-depth sum (t-1)**n; the two-chord and three-chord
    witness diagrams realize the sharp degrees; the pairing formula for
    v1'(1) agrees with the derivative and with the pattern-free evaluator.
    """
    rng = random.Random(seed)
    result = SuiteResult("finite-type", count)
    for case in range(count):
        n = rng.randrange(3, max_chords + 1)
        diagram = random_diagram(n, rng)
        chords = rng.sample(range(1, n + 1), 3)
        if not crossing_change_alt_sum(diagram, chords).is_zero():
            result.failures.append(
                f"case {case}: 3-subset crossing-change sum nonzero on "
                f"{diagram.gauss_code()!r} chords {chords}"
            )
        if n >= 4:
            chords4 = rng.sample(range(1, n + 1), 4)
            if not crossing_change_alt_sum(diagram, chords4).is_zero():
                result.failures.append(
                    f"case {case}: 4-subset crossing-change sum nonzero on "
                    f"{diagram.gauss_code()!r} chords {chords4}"
                )
            if v1_prime_virtualization_alt_sum(diagram, chords4) != 0:
                result.failures.append(
                    f"case {case}: 4-subset virtualization sum of v1'(1) nonzero on "
                    f"{diagram.gauss_code()!r} chords {chords4}"
                )
        small = random_diagram(rng.randrange(7), rng)
        d_direct = v_polys(small)[0].derivative_at_one()
        if v1_prime_gd(small) != d_direct or v1_prime_semantic(small) != d_direct:
            result.failures.append(
                f"case {case}: v1'(1) evaluators disagree on {small.gauss_code()!r}"
            )
        if alpha3_gd(small) != alpha3(small):
            result.failures.append(
                f"case {case}: alpha3 evaluators disagree on {small.gauss_code()!r}"
            )
    for n in range(9):
        diagram = family(FAMILY_K, n)
        tail = range(3, n + 3)
        if virtualization_alt_sum(diagram, tail) != binomial_power(n):
            result.failures.append(f"family tail sum wrong for n={n}")
    two = GaussDiagram.parse("O1+ U2+ U1+ O2+")
    if crossing_change_alt_sum(two, (1, 2)) != LaurentPolynomial.constant(1):
        result.failures.append("two-chord crossing-change witness is not 1")
    three = GaussDiagram.parse("O1+ U2+ U3+ O2+ U1+ O3+")
    if v1_prime_virtualization_alt_sum(three, (1, 2, 3)) != 1:
        result.failures.append("three-chord virtualization witness of v1'(1) is not 1")
    return result


def run_delta(count: int, seed: int, max_chords: int = 6) -> SuiteResult:
    """One Delta-move shifts v1 and v2 by the same one-term monomial; the
    move distance bound and its obstruction behave as specified."""
    rng = random.Random(seed)
    result = SuiteResult("delta", count)
    for case in range(count):
        base = random_diagram(rng.randrange(max_chords + 1), rng)
        config = DELTA_CONFIGS[rng.randrange(len(DELTA_CONFIGS))]
        diagram, site = insert_triangle(base, config, _random_slots(rng, 2 * base.n), DELTA)
        if site not in enumerate_sites(diagram, DELTA):
            result.failures.append(
                f"case {case}: enumerator missed an injected Delta site on "
                f"{diagram.gauss_code()!r}"
            )
            continue
        moved = apply(diagram, site)
        v1a, v2a = v_polys(diagram)
        v1b, v2b = v_polys(moved)
        diff1 = v1a - v1b
        diff2 = v2a - v2b
        if diff1 != diff2 or diff1.one_norm() != 1:
            result.failures.append(
                f"case {case}: Delta-move difference is not a common monomial: "
                f"{diagram.gauss_code()!r} -> {moved.gauss_code()!r} "
                f"(dv1={diff1}, dv2={diff2})"
            )
        report = delta_bound(diagram, moved)
        if report.obstruction or report.lower_bound != 1:
            result.failures.append(
                f"case {case}: single-move bound report wrong: {report}"
            )
    for n in range(9):
        report = delta_bound(family(FAMILY_K, n), family(FAMILY_KPRIME, n))
        if not report.obstruction or report.lower_bound is not None:
            result.failures.append(f"missing obstruction for family pair n={n}")
    target = LaurentPolynomial({1: 2, 0: 1})
    paired = delta_bound(realize(target, target), realize(LaurentPolynomial(), LaurentPolynomial()))
    if paired.obstruction or paired.lower_bound != target.one_norm():
        result.failures.append("realized-pair bound does not equal the one-norm")
    return result


def run_welded(count: int, seed: int, max_chords: int = 8) -> SuiteResult:
    """A welded move (swap of adjacent over endpoints) preserves v1'(1) and
    alpha3, while v1 itself is allowed to change; orientation reversal obeys
    the degree-two/three trades."""
    rng = random.Random(seed)
    result = SuiteResult("welded", count)
    changed = 0
    for case in range(count):
        diagram = None
        for _ in range(64):
            candidate = random_diagram(rng.randrange(2, max_chords + 1), rng)
            if enumerate_sites(candidate, WELDED):
                diagram = candidate
                break
        if diagram is None:
            result.failures.append(f"case {case}: could not sample a welded site")
            continue
        sites = enumerate_sites(diagram, WELDED)
        site = sites[rng.randrange(len(sites))]
        moved = apply(diagram, site)
        v1a, _ = v_polys(diagram)
        v1b, _ = v_polys(moved)
        if v1a.derivative_at_one() != v1b.derivative_at_one():
            result.failures.append(
                f"case {case}: welded move changed v1'(1): {diagram.gauss_code()!r} "
                f"site {site.params}"
            )
        if alpha3(diagram) != alpha3(moved) or alpha2(diagram) != alpha2(moved):
            result.failures.append(
                f"case {case}: welded move changed alpha invariants on "
                f"{diagram.gauss_code()!r}"
            )
        if v1a != v1b:
            changed += 1
        reversed_ = diagram.reverse()
        if (
            alpha2(reversed_) != alpha2(diagram)
            or alpha3(reversed_) != -2 * alpha2(diagram) - alpha3(diagram)
            or v_polys(reversed_)[0].derivative_at_one() != -v1a.derivative_at_one()
        ):
            result.failures.append(
                f"case {case}: reversal identities failed on {diagram.gauss_code()!r}"
            )
    result.stats["v1_changed"] = changed
    if count >= 50 and changed == 0:
        result.failures.append("v1 never changed under welded moves; fuzz looks vacuous")
    return result


def run_consistency(count: int, seed: int, max_chords: int = 8) -> SuiteResult:
    """Cross-checks between evaluators on random diagrams (used by tests)."""
    rng = random.Random(seed)
    result = SuiteResult("consistency", count)
    for case in range(count):
        diagram = random_diagram(rng.randrange(max_chords + 1), rng)
        v1, v2 = v_polys(diagram)
        if v1.eval_at_one() != v21_direct(diagram) or v2.eval_at_one() != v22_direct(diagram):
            result.failures.append(
                f"case {case}: direct pair counts disagree on {diagram.gauss_code()!r}"
            )
    return result


SUITES = {
    "invariance": run_invariance,
    "symmetry": run_symmetry,
    "additivity": run_additivity,
    "finite-type": run_finite_type,
    "delta": run_delta,
    "welded": run_welded,
}
