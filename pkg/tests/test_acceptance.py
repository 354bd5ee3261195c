"""Acceptance gate: one test per criterion, one printed line per criterion.

Criteria 1, 2 and 5 embed three reference constants that the implementation
can demonstrate to be misprints (a single-digit slip in T(5)/H(5,2) and a
digit transposition in the crude upper bound).  Those sub-assertions are kept
exactly as stated and fail with the supporting analysis; every other value
passes.  See tests/test_enumerator.py and tests/test_bounds.py for the
ground-truth assertions, and the repository notes for the cross-checks.
"""

import multiprocessing
import random
from fractions import Fraction

import pytest

from brickcount import (BrickShape, Configuration, SearchLimits, canonicalize,
                        count_table)
from brickcount.bounds import (EVEN_REDUCED, EVEN_TOP, REFINED_TOP,
                               UNEVEN_REDUCED, UNEVEN_TOP, PartitionSpec,
                               REFERENCE_C_2X4, coefficient_dominance_check,
                               crude_upper_bound, lower_bound_from_c,
                               lower_bound_with_tail, partition_upper_bound)
from brickcount.checks import example_failure_tapes
from brickcount.decomposition import (c3_derivation_audit, convolution_from_c,
                                      count_c, decompose, reconstruct)
from brickcount.enumerator import (bottleneck_free_counts, collect_sets,
                                   decode_collected, single_top_counts)
from brickcount.formulas import (tower_full_height, tower_one_less,
                                 tower_two_less)
from brickcount.geometry import Placement, collides, placements_on_top, rotate_placement
from brickcount.tape import decode as tape_decode
from brickcount.tape import encode as tape_encode
from brickcount._search import MODE_ANCHORED, MODE_SINGLE_TOP

SHAPE = BrickShape(2, 4)

STATED_T = {1: 1, 2: 24, 3: 1560, 4: 119580, 5: 10116403}
TRUE_T5 = 10166403
STATED_H = {
    (2, 2): 24,
    (3, 2): 500, (3, 3): 1060,
    (4, 2): 11707, (4, 3): 59201, (4, 4): 48672,
    (5, 2): 248688, (5, 3): 3203175, (5, 4): 4425804, (5, 5): 2238736,
}
TRUE_H52 = 298688

MISPRINT_NOTE = (
    "the reference tables carry a self-consistent single-digit slip at "
    "(n=5, m=2): enumeration ground truth is H(5,2) = 298688 and "
    "T(5) = 10166403, confirmed by an independent brute-force oracle and by "
    "exact reproduction of the entire n = 6 row (T(6) = 915103765)")


def _report(criterion: str, failures: list[str], detail: str) -> None:
    if failures:
        print(f"ACCEPTANCE {criterion}: FAIL - " + "; ".join(failures))
        pytest.fail(f"{criterion}: " + "; ".join(failures))
    print(f"ACCEPTANCE {criterion}: PASS - {detail}")


# -- criterion 1: orbit totals ------------------------------------------------

def test_criterion_1_totals_desk(ledgers5):
    got = {led.n: led.total for led in ledgers5}
    elapsed = ledgers5[-1].elapsed
    failures = []
    for n, want in STATED_T.items():
        if got[n] != want:
            failures.append(
                f"T({n}) enumerates to {got[n]}, criterion states {want}"
                + (f" ({MISPRINT_NOTE})" if n == 5 and got[n] == TRUE_T5 else
                   " (unexpected regression)"))
    if elapsed > 60:
        failures.append(f"desk runtime {elapsed:.1f}s exceeds the 60s target")
    _report("criterion 1 (desk totals)", failures,
            f"T(1..5) exact in {elapsed:.1f}s")


@pytest.mark.extended
def test_criterion_1_totals_extended(ledgers6):
    led = ledgers6[-1]
    failures = []
    if led.total != 915103765:
        failures.append(f"T(6) = {led.total} != 915103765")
    _report("criterion 1 (extended T(6))", failures, "T(6) = 915103765 exact")


# -- criterion 2: height table ------------------------------------------------

def test_criterion_2_heights_desk(ledgers5):
    failures = []
    for (n, m), want in STATED_H.items():
        got = ledgers5[n - 1].by_height.get(m, 0)
        if got != want:
            failures.append(
                f"H({n},{m}) enumerates to {got}, criterion states {want}"
                + (f" ({MISPRINT_NOTE})" if (n, m) == (5, 2) and got == TRUE_H52
                   else " (unexpected regression)"))
    for led in ledgers5:
        if sum(led.by_height.values()) != led.total:
            failures.append(f"height marginal broken at n={led.n}")
    _report("criterion 2 (desk heights)", failures,
            "all height cells exact, marginals consistent")


@pytest.mark.extended
def test_criterion_2_heights_extended(ledgers6):
    led = ledgers6[-1]
    want = {2: 7946227, 3: 162216127, 4: 359949655, 5: 282010252, 6: 102981504}
    failures = []
    if led.by_height != want:
        failures.append(f"row n=6 = {led.by_height} != {want}")
    _report("criterion 2 (extended heights)", failures,
            "H(6,6) = 102981504, H(6,4) = 359949655, full row exact")


# -- criterion 3: formula agreement -------------------------------------------

def test_criterion_3_formula_agreement(ledgers5):
    failures = []
    for n in range(2, 6):
        if tower_full_height(n) != ledgers5[n - 1].by_height.get(n, 0):
            failures.append(f"tower_full_height({n}) mismatch")
    for n in range(3, 6):
        if tower_one_less(n) != ledgers5[n - 1].by_height.get(n - 1, 0):
            failures.append(f"tower_one_less({n}) mismatch")
    if tower_two_less(5) != ledgers5[4].by_height.get(3, 0):
        failures.append("tower_two_less(5) mismatch")
    diff = tower_two_less(6) - tower_two_less(6, misprinted=True)
    if diff != 3840:
        failures.append(f"misprint evidence: expected a 3840 gap at n=6, got {diff}")
    if tower_two_less(6) != 359949655:
        failures.append("corrected quadratic form no longer matches the table")
    _report("criterion 3 (formula agreement)", failures,
            "closed forms match enumeration; misprinted variant off by 3840 at n=6")


# -- criterion 4: decomposition ------------------------------------------------

_ROWS = None


def _roundtrip_chunk(span):
    from brickcount.decomposition import roundtrip_failures

    start, end = span
    return roundtrip_failures(SHAPE, _ROWS[start:end])


def _exhaustive_roundtrip(rows) -> int:
    global _ROWS
    _ROWS = rows
    spans = [(i, min(i + 200_000, len(rows))) for i in range(0, len(rows), 200_000)]
    if len(spans) < 4:
        return sum(_roundtrip_chunk(s) for s in spans)
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool() as pool:
        return sum(pool.map(_roundtrip_chunk, spans))


def test_criterion_4_decomposition():
    failures = []
    cs = bottleneck_free_counts(SHAPE, 5)
    stated_c = {1: 46, 2: 0, 3: 74130, 4: 867346}
    for n, want in stated_c.items():
        if cs[n] != want:
            failures.append(f"c_{n} = {cs[n]} != {want}")
    bs = single_top_counts(SHAPE, 5)
    if bs[1:5] != convolution_from_c(cs[1:5]):
        failures.append("convolution identity broken for n <= 4")
    audit = c3_derivation_audit(SHAPE)
    if (audit.two_on_one, audit.both_attached_to_top) != (480, 4730):
        failures.append(f"audit counts {audit.two_on_one}/{audit.both_attached_to_top}")
    if not audit.consistent:
        failures.append("audit total disagrees with enumeration")
    # exhaustive split/glue identity over every single-top building up to
    # index 4, through the key-level core the public API delegates to
    total = 0
    rng = random.Random(4711)
    for bricks in (2, 3, 4, 5):
        rows = collect_sets(SHAPE, bricks, MODE_SINGLE_TOP)
        bad = _exhaustive_roundtrip(rows)
        total += len(rows)
        if bad:
            failures.append(f"{bad} round-trip failures among {len(rows)} "
                            f"{bricks}-brick buildings")
        # the Configuration-level wrappers on top of the same core, spot-checked
        sample = range(len(rows)) if len(rows) <= 3000 else \
            rng.sample(range(len(rows)), 3000)
        for idx in sample:
            cfg = decode_collected(SHAPE, rows[idx])
            if reconstruct(decompose(cfg)) != cfg:
                failures.append(f"wrapper round-trip failed for {cfg}")
                break
    _report("criterion 4 (decomposition)", failures,
            f"split/glue identity on all {total} single-top buildings up to "
            f"index 4; c_1..c_4, 480 and 4730 exact")


@pytest.mark.extended
def test_criterion_4_extended_c5_c6(c_counts7):
    failures = []
    c5, c6 = c_counts7[5], c_counts7[6]
    if c5 != 318434429:
        failures.append(f"c_5 = {c5}")
    if c6 != 18335373238:
        failures.append(f"c_6 = {c6}")
    _report("criterion 4 (extended c_5, c_6)", failures, "c_5 and c_6 exact")


# -- criterion 5: bounds ladder -------------------------------------------------

def test_criterion_5_bounds_ladder():
    failures = []
    crude = crude_upper_bound(SHAPE)
    if crude.value != "647.02":
        note = ("criterion states 647.02, but the closed form it cites "
                "evaluates to 16^17/15^15 = 674.0169... (safe up-rounding "
                "674.02); 647.02 transposes two digits and lies below the "
                "formula's value, so it cannot be a rounding of it")
        failures.append(f"crude upper bound renders as {crude.value} ({note})")
    even = partition_upper_bound(PartitionSpec(EVEN_TOP, EVEN_REDUCED))
    refined = partition_upper_bound(PartitionSpec(REFINED_TOP, EVEN_REDUCED))
    uneven = partition_upper_bound(PartitionSpec(UNEVEN_TOP, UNEVEN_REDUCED))
    if even.value != "203.82":
        failures.append(f"even bound {even.value}")
    if refined.value != "198.57":
        failures.append(f"refined bound {refined.value}")
    if uneven.value != "191.35":
        failures.append(f"uneven bound {uneven.value}")
    if lower_bound_from_c(list(REFERENCE_C_2X4[:3])).value != "64.06":
        failures.append("three-term lower bound")
    if lower_bound_from_c(list(REFERENCE_C_2X4)).value != "76.67":
        failures.append("six-term lower bound")
    tail = lower_bound_with_tail(list(REFERENCE_C_2X4))
    if tail.value != "78.32" or not tail.exact > Fraction(7832, 100):
        failures.append(f"tail bound {tail.value}")
    if not (even.witness["root_low"] == 72 == even.witness["root_high"]
            and even.exact == Fraction(6 * 13 ** 13, 12 ** 12)):
        failures.append("even-distribution symbolic check at x0 = 72")
    lo, hi = uneven.witness["root_low"], uneven.witness["root_high"]
    if not (Fraction(6504, 100) <= lo <= hi <= Fraction(6506, 100)):
        failures.append(f"uneven root interval [{float(lo)}, {float(hi)}]")
    _report("criterion 5 (bounds ladder)", failures,
            "203.82 / 198.57 / 191.35 upper, 64.06 / 76.67 / 78.32 lower, "
            "symbolic x0 = 72 exact, uneven root in [65.04, 65.06]")


# -- criterion 6: tape semantics -------------------------------------------------

def test_criterion_6_tape_semantics():
    failures = []
    rows = collect_sets(SHAPE, 3, MODE_ANCHORED)
    bad = 0
    for row in rows:
        cfg = decode_collected(SHAPE, row)
        out = tape_decode(tape_encode(cfg))
        if not out.ok or out.config != cfg:
            bad += 1
    if bad:
        failures.append(f"{bad} encode/decode round-trip failures on anchored "
                        f"3-brick buildings")
    tags = [tape_decode(t).failure for t in example_failure_tapes().values()]
    if len(set(tags)) != 5 or any(t is None for t in tags):
        failures.append(f"terminal-state fixtures reached {tags}")
    from brickcount.tape import Tape, tape_length

    n, length = 3, tape_length(SHAPE, 3)
    nonzero_fail = all(
        not tape_decode(Tape(SHAPE, n, tuple(v if i == pos else 0 for i in range(length)))).ok
        for pos in range(length) for v in (-8, -1, 1, 8))
    if tape_decode(Tape(SHAPE, n, (0,) * length)).ok:
        failures.append("all-zero tape decoded successfully")
    if not nonzero_fail:
        failures.append("a single-nonzero tape decoded successfully")
    rng = random.Random(12345)
    alphabet = [v for v in range(-8, 9) if v]
    for _ in range(3000):
        k = rng.randint(3, length)
        values = [0] * length
        for pos in rng.sample(range(length), k):
            values[pos] = rng.choice(alphabet)
        if tape_decode(Tape(SHAPE, n, tuple(values))).ok:
            failures.append("an over-support tape decoded successfully")
            break
    _report("criterion 6 (tape semantics)", failures,
            f"decode(encode(.)) identity on all {len(rows)} anchored 3-brick "
            f"buildings; five distinct terminal states; support-count "
            f"necessity verified")


# -- criterion 7: property suites -------------------------------------------------

def test_criterion_7_properties(ledgers5):
    failures = []
    a = {led.n: led.anchored for led in ledgers5}
    t = {led.n: led.total for led in ledgers5}
    if not all(a[n + m] >= a[n] * a[m]
               for n in range(1, 5) for m in range(1, 5) if n + m <= 5):
        failures.append("superadditivity broken")
    if not all(t[n - 1] <= a[n] <= 4 * t[n] for n in range(2, 6)):
        failures.append("anchored/orbit sandwich broken")
    rng = random.Random(424242)
    tops = placements_on_top(SHAPE).placements
    trials = 0
    while trials < 1000:
        ps = [Placement(0, 0, 0, rng.choice((0, 1)))]
        while len(ps) < rng.randint(2, 6):
            anchor = rng.choice(ps)
            rel = rng.choice(tops)
            cand = Placement(anchor.x + rel.x, anchor.y + rel.y,
                             anchor.z + rng.choice((1, -1)), rel.rot)
            cfg = Configuration(SHAPE, tuple(ps))
            if cand not in ps and not collides(cfg, cand):
                ps.append(cand)
        cfg = Configuration(SHAPE, tuple(ps))
        key = canonicalize(cfg)
        quarters = rng.randrange(4)
        moved = Configuration(SHAPE, tuple(
            rotate_placement(p, SHAPE, quarters) for p in ps)).translated(
            rng.randint(-30, 30), rng.randint(-30, 30), rng.randint(0, 9))
        if canonicalize(moved) != key:
            failures.append("canonical key not orbit-invariant")
            break
        trials += 1
    import os

    ledgersets = []
    for workers in (1, 2, os.cpu_count() or 1):
        ledgers = count_table(SHAPE, 4, SearchLimits(workers=workers))
        ledgersets.append([(led.total, led.anchored,
                            tuple(sorted(led.by_height.items())))
                           for led in ledgers])
    if not (ledgersets[0] == ledgersets[1] == ledgersets[2]):
        failures.append("worker count changed the ledgers")
    _report("criterion 7 (properties)", failures,
            "superadditivity, sandwich, 1000 orbit perturbations, and "
            "worker determinism all hold")


# -- criterion 8: coefficient dominance --------------------------------------------

def test_criterion_8_coefficient_dominance(ledgers5):
    failures = []
    spec = PartitionSpec(EVEN_TOP, EVEN_REDUCED)
    a = {led.n: led.anchored for led in ledgers5}
    if not coefficient_dominance_check(spec, 3, a[3]):
        failures.append(f"n=3: a_3 = {a[3]} exceeds the generating coefficient")
    if not coefficient_dominance_check(spec, 4, a[4]):
        failures.append(f"n=4: a_4 = {a[4]} exceeds the generating coefficient")
    _report("criterion 8 (coefficient dominance)", failures,
            f"a_3 = {a[3]} and a_4 = {a[4]} dominated with exact arithmetic")
