"""Rigorous upper and lower bounds on the growth constant of brick buildings.

Every bound-defining polynomial carries exact rational coefficients; floating
point never enters a comparison.  Root localization uses a sign scan plus
bisection with exact sign evaluation, and reported decimals are rounded in
the safe direction (upper bounds up, lower bounds down), so printed digits
are always valid bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, log

from .formulas import one_on_one_ways
from .geometry import BrickShape, Placement, footprint, placements_on_top


class Polynomial:
    """Dense univariate polynomial over exact rationals, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots_negated(cls, values) -> "Polynomial":
        """Product of (y + v) over the given values."""
        poly = cls([1])
        for v in values:
            poly = poly * cls([v, 1])
        return poly

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            out[i] += a
        for i, b in enumerate(other.coeffs):
            out[i] += b
        return Polynomial(out)

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        return Polynomial([f * c for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift_up(self, k: int) -> "Polynomial":
        """Multiply by y**k."""
        return Polynomial([Fraction(0)] * k + list(self.coeffs))

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"


ROOT_TOL = Fraction(1, 10 ** 9)


def bisect_decreasing_root(f, lo: Fraction, hi: Fraction,
                           tol: Fraction = ROOT_TOL) -> tuple[Fraction, Fraction]:
    """Bracket the root of a function positive at lo, negative at hi."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, lo
    if not (flo > 0 and fhi < 0):
        raise ValueError("invalid bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = f(mid)
        if v == 0:
            return mid, mid
        if v > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def largest_real_root(poly: Polynomial, scan_step: Fraction = Fraction(1, 2),
                      tol: Fraction = ROOT_TOL) -> tuple[Fraction, Fraction]:
    """Sign-scan down from a Cauchy bound, then bisect; exact sign arithmetic."""
    lead = poly.coeffs[-1]
    n = poly.degree()
    # Fujiwara-style bound on all root magnitudes, padded for float slack
    est = 2 * max((abs(poly.coeffs[n - k] / lead)) ** (1.0 / k)
                  for k in range(1, n + 1))
    bound = Fraction(int(est * 1.01) + 2)
    sign_at_inf = 1 if lead > 0 else -1

    def oriented(x):
        # positive beyond every root, crosses to negative below the largest one
        return poly(x) * sign_at_inf

    hi = Fraction(bound)
    if oriented(hi) <= 0:
        raise ValueError("root magnitude bound failed; polynomial degenerate")
    lo = hi
    while lo > -bound:
        lo = lo - scan_step
        v = oriented(lo)
        if v == 0:
            return lo, lo
        if v < 0:
            break
        hi = lo
    else:
        raise ValueError("no real root located in the scan range")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = oriented(mid)
        if v == 0:
            return mid, mid
        if v < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


@dataclass(frozen=True)
class BoundReport:
    """A certified bound with its safe two-decimal rendering and witnesses."""

    kind: str                 # "upper" or "lower"
    value: str                # decimal text, rounded in the safe direction
    exact: Fraction           # the certified rational bound
    method: str
    witness: dict = field(default_factory=dict)

    def as_float(self) -> float:
        return float(self.exact)


def _round_two(frac: Fraction, direction: str) -> str:
    num = frac * 100
    if direction == "up":
        cents = -((-num.numerator) // num.denominator)
    else:
        cents = num.numerator // num.denominator
    sign = "-" if cents < 0 else ""
    cents = abs(cents)
    return f"{sign}{cents // 100}.{cents % 100:02d}"


def upper_report(exact: Fraction, method: str, witness=None) -> BoundReport:
    return BoundReport("upper", _round_two(exact, "up"), exact, method, witness or {})


def lower_report(exact: Fraction, method: str, witness=None) -> BoundReport:
    return BoundReport("lower", _round_two(exact, "down"), exact, method, witness or {})


def crude_upper_bound(shape: BrickShape) -> BoundReport:
    """Closed-form tape-alphabet bound; exact growth for the 1x1 brick."""
    if shape.b == shape.w == 1:
        return upper_report(Fraction(1), "exact (single-column brick)")
    if shape.b != shape.w:
        s = 2 * shape.studs
        exact = Fraction(s ** (s + 1), (s - 1) ** (s - 1))
    else:
        # square bricks admit non-negative tapes, shrinking the alphabet
        s = shape.b * shape.b
        exact = Fraction(s ** (2 * s + 1), (s - 1) ** (2 * s - 1))
    return upper_report(exact, "tape alphabet counting", {"symbols": s})


def crude_lower_bound(shape: BrickShape) -> BoundReport:
    """Tower construction: the one-on-one placement count bounds growth below."""
    return lower_report(Fraction(one_on_one_ways(shape)), "tower construction")


# ---------------------------------------------------------------------------
# Partition machinery (2x4-specific exponents: the indicator polynomial has
# degree 16 and the bound minimizes P(x)/x^15).

TOP_SLOTS = 8
EVEN_TOP = (6, 6, 6, 6, 6, 6, 6, 6)
REFINED_TOP = (5, 5, 6, 6, 6, 6, 6, 6)
EVEN_REDUCED = (6, 6, 6, 6, 6, 0, 0, 0)
UNEVEN_TOP = (16, 15, 7, 5, 2, 1, 0, 0)
UNEVEN_REDUCED = (15, 7, 4, 3, 1, 0, 0, 0)


@dataclass(frozen=True)
class PartitionSpec:
    """Size tuples dominating a stud-indicator partition of the 46 positions.

    ``top_sizes`` bounds the partition used on the top side of every brick,
    ``reduced_sizes`` the 30-position partitions used on the second side of
    bricks that already spend one stud or hole on their own attachment.
    """

    top_sizes: tuple[int, ...]
    reduced_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.top_sizes) != TOP_SLOTS or len(self.reduced_sizes) != TOP_SLOTS:
            raise ValueError("expected 8 sizes per tuple")

    def p0(self) -> Polynomial:
        return Polynomial.from_roots_negated(self.top_sizes)

    def p(self) -> Polynomial:
        return self.p0() * Polynomial.from_roots_negated(self.reduced_sizes)


def partition_upper_bound(spec: PartitionSpec) -> BoundReport:
    """Minimize P(x)/x**15 at the largest real root of 15*P - x*P'."""
    p = spec.p()
    q = p.scale(15) + p.derivative().shift_up(1).scale(-1)
    lo, hi = largest_real_root(q)
    x = (lo + hi) / 2 if lo != hi else lo
    if x <= 0:
        raise ValueError("no positive critical point; method inapplicable")
    exact = p(x) / x ** 15
    return upper_report(exact, "stud-indicator partition",
                        {"top_sizes": spec.top_sizes,
                         "reduced_sizes": spec.reduced_sizes,
                         "root_low": lo, "root_high": hi})


def binomial_coefficient_bound(n: int) -> int:
    """Even-partition counting bound on the anchored count."""
    return comb(13 * n - 23, n - 1) * 6 ** (n - 1)


def coefficient_dominance_check(spec: PartitionSpec, n: int, anchored_n: int) -> bool:
    """True iff the anchored count is dominated by the generating coefficient.

    The witness coefficient is the y**(15n-31) coefficient of P0(y)**2 *
    P(y)**(n-3), computed with exact integer arithmetic.
    """
    if n < 3:
        raise ValueError("defined for n >= 3")
    poly = spec.p0() ** 2 * spec.p() ** (n - 3)
    coeff = poly.coefficient(15 * n - 31)
    assert coeff.denominator == 1
    return anchored_n <= coeff.numerator


def _snap_certified_inverse(g, hi: Fraction) -> Fraction:
    """Largest certified 1/root estimate, preferring short decimals.

    Any q with g(1/q) <= 0 certifies the bound q (g decreases through the
    root); rounding 1/hi up to k decimals recovers exact rational roots that
    bisection alone cannot hit.
    """
    best = 1 / hi
    for denom in (1, 10, 100, 10 ** 6, 10 ** 9):
        num = best * denom
        q = Fraction(-((-num.numerator) // num.denominator), denom)
        if q > best and g(1 / q) <= 0:
            best = q
    return best


def lower_bound_from_c(cs: list[int]) -> BoundReport:
    """Positive root of sum(c_i x^i) = 1 certifies growth >= 1/root."""
    if not any(cs):
        raise ValueError("all-zero coefficient list; method inapplicable")
    if cs[0] <= 0:
        raise ValueError("first coefficient must be positive")
    poly = Polynomial([0, *cs])

    def g(x):
        return 1 - poly(x)  # positive below the root, negative above

    hi = Fraction(1, 1)
    while g(hi) > 0:
        hi *= 2
    lo, hi = bisect_decreasing_root(g, Fraction(0), hi)
    exact = _snap_certified_inverse(g, hi)
    return lower_report(exact, "bottleneck-free composition series",
                        {"c_values": tuple(cs), "root_low": lo, "root_high": hi})


def lower_bound_with_tail(cs: list[int], growth: int = 1248) -> BoundReport:
    """Composition-series bound with a geometric tail for the missing terms.

    The tail models c_{k+2} >= growth * c_k beyond the last two known
    coefficients; growth = 0 drops the tail and recovers the finite bound.
    """
    if growth == 0:
        return lower_report(lower_bound_from_c(cs).exact,
                            "composition series (no tail)",
                            {"c_values": tuple(cs), "growth": 0})
    if len(cs) < 2:
        raise ValueError("need at least two coefficients for the tail")
    poly = Polynomial([0, *cs])
    n = len(cs)
    c_pen, c_last = cs[-2], cs[-1]
    g_inv = Fraction(1, growth)

    def r(x):
        tail = (c_pen * x ** (n + 1) + c_last * x ** (n + 2)) / (g_inv - x * x)
        return 1 - poly(x) - tail

    # the tail converges on (0, 1/sqrt(growth)); find hi with r(hi) < 0
    hi = min(Fraction(1, growth), _sqrt_upper(g_inv) / 2)
    while r(hi) > 0:
        nxt = hi * 2
        if nxt * nxt >= g_inv:
            nxt = (hi + _sqrt_upper(g_inv)) / 2
        hi = nxt
    lo, hi = bisect_decreasing_root(r, Fraction(0), hi)
    exact = 1 / hi
    return lower_report(exact, "composition series with geometric tail",
                        {"c_values": tuple(cs), "growth": growth,
                         "root_low": lo, "root_high": hi})


def _sqrt_upper(v: Fraction) -> Fraction:
    """A rational strictly below sqrt(v)."""
    x = Fraction(1)
    while x * x >= v:
        x /= 2
    for _ in range(40):
        nxt = (x + v / x) / 2
        if nxt * nxt < v:
            x = nxt
    return x


# ---------------------------------------------------------------------------
# Explicit partition witnesses over the 46 one-on-one positions.

def position_stud_sets(shape: BrickShape = BrickShape(2, 4)) -> list[frozenset[int]]:
    """For each on-top position, the base studs inserted into the upper brick."""
    base = Placement(0, 0, 0, 0)
    # row-major stud numbering, columns along the long side
    index = {(x, y): y * shape.w + x + 1 for (x, y) in footprint(base, shape)}
    out = []
    for p in placements_on_top(shape).placements:
        cells = footprint(p, shape) & footprint(base, shape)
        out.append(frozenset(index[c] for c in cells))
    return out


def stud_usage_counts(shape: BrickShape = BrickShape(2, 4)) -> dict[int, int]:
    counts: dict[int, int] = {i: 0 for i in range(1, shape.studs + 1)}
    for studs in position_stud_sets(shape):
        for s in studs:
            counts[s] += 1
    return counts


def partition_validity_check(assignment: dict[int, int],
                             shape: BrickShape = BrickShape(2, 4)) -> bool:
    """True iff every position is assigned one of the studs it employs.

    Also verifies the elimination floor behind the reduced systems: every
    stud is employed by at least 16 positions, so fixing one stud or hole
    removes at least 16 of the 46 placements.
    """
    sets_ = position_stud_sets(shape)
    if set(assignment) != set(range(len(sets_))):
        return False
    if min(stud_usage_counts(shape).values()) != 16 and (shape.b, shape.w) == (2, 4):
        return False
    return all(stud in sets_[pos] for pos, stud in assignment.items())


def _feasible_assignment(stud_sets: list[frozenset[int]],
                         capacity: dict[int, int]) -> dict[int, int] | None:
    """Bipartite b-matching of positions to capacitated studs (Kuhn's)."""
    match: dict[int, int] = {}
    load = {s: 0 for s in range(1, TOP_SLOTS + 1)}

    def augment(pos: int, visited: set[int]) -> bool:
        for stud in sorted(stud_sets[pos]):
            cap = capacity.get(stud, 0)
            if cap == 0 or stud in visited:
                continue
            visited.add(stud)
            if load[stud] < cap:
                match[pos] = stud
                load[stud] += 1
                return True
            for other in [p for p, s in match.items() if s == stud]:
                if augment(other, visited):
                    match[pos] = stud
                    return True
        return False

    for pos in sorted(range(len(stud_sets)), key=lambda p: len(stud_sets[p])):
        if not augment(pos, set()):
            return None
    return match


def find_partition_witness(sizes: tuple[int, ...],
                           stud_sets: list[frozenset[int]] | None = None,
                           shape: BrickShape = BrickShape(2, 4)) -> dict[int, int] | None:
    """An explicit position->stud assignment with class sizes <= a permutation
    of ``sizes``, or None when no arrangement admits one."""
    if stud_sets is None:
        stud_sets = position_stud_sets(shape)
    studs = sorted({s for ss in stud_sets for s in ss})
    forced = {s: 0 for s in studs}
    for ss in stud_sets:
        if len(ss) == 1:
            forced[next(iter(ss))] += 1
    seen = set()
    for perm in itertools.permutations(sizes):
        if perm in seen:
            continue
        seen.add(perm)
        capacity = dict(zip(range(1, TOP_SLOTS + 1), perm))
        if any(capacity.get(s, 0) < forced.get(s, 0) for s in studs):
            continue
        result = _feasible_assignment(stud_sets, capacity)
        if result is not None:
            return result
    return None


def reduced_position_sets(j: int, shape: BrickShape = BrickShape(2, 4)) -> list[frozenset[int]]:
    """Stud sets of the positions that do not employ stud j."""
    return [ss for ss in position_stud_sets(shape) if j not in ss]


# ---------------------------------------------------------------------------
# Summary.

#: c_1..c_6 for the 2x4 brick, reproduced exactly by the extended-tier
#: enumeration suite (see tests/test_acceptance.py).
REFERENCE_C_2X4 = (46, 0, 74130, 867346, 318434429, 18335373238)

#: orbit totals for the 2x4 brick; n <= 5 desk-enumerable, 6 extended,
#: 7 reproduced here from the reference data set (not desk-checkable).
REFERENCE_T_2X4 = {1: 1, 2: 24, 3: 1560, 4: 119580, 5: 10166403,
                   6: 915103765, 7: 85747377755}


@dataclass(frozen=True)
class EmpiricalEstimate:
    label: str
    value: float


@dataclass(frozen=True)
class EntropySummary:
    shape: BrickShape
    lower: tuple[BoundReport, ...]
    upper: tuple[BoundReport, ...]
    empirical: tuple[EmpiricalEstimate, ...]

    def interval(self) -> tuple[str, str]:
        best_lo = max(self.lower, key=lambda r: r.exact)
        best_hi = min(self.upper, key=lambda r: r.exact)
        return best_lo.value, best_hi.value


def entropy_summary(shape: BrickShape,
                    c_values: tuple[int, ...] | None = None,
                    t_values: dict[int, int] | None = None) -> EntropySummary:
    """Best-known bound ladder plus clearly labeled non-rigorous slopes."""
    if shape.b == shape.w == 1:
        exact = Fraction(1)
        report = BoundReport("lower", "1.00", exact, "exact (single-column brick)")
        return EntropySummary(shape, (report,),
                              (upper_report(exact, "exact (single-column brick)"),), ())
    lower = [crude_lower_bound(shape)]
    upper = [crude_upper_bound(shape)]
    if (shape.b, shape.w) == (2, 4):
        if c_values is None:
            c_values = REFERENCE_C_2X4
        if t_values is None:
            t_values = REFERENCE_T_2X4
        upper.append(partition_upper_bound(PartitionSpec(EVEN_TOP, EVEN_REDUCED)))
        upper.append(partition_upper_bound(PartitionSpec(REFINED_TOP, EVEN_REDUCED)))
        upper.append(partition_upper_bound(PartitionSpec(UNEVEN_TOP, UNEVEN_REDUCED)))
        lower.append(lower_bound_from_c(list(c_values[:3])))
        lower.append(lower_bound_from_c(list(c_values)))
        lower.append(lower_bound_with_tail(list(c_values)))
    empirical = []
    if t_values:
        ns = sorted(t_values)
        for n in ns:
            empirical.append(EmpiricalEstimate(
                f"log(T({n}))/{n} (non-rigorous)", log(t_values[n]) / n))
        for a, b in zip(ns, ns[1:]):
            if b == a + 1:
                empirical.append(EmpiricalEstimate(
                    f"T({b})/T({a}) successive ratio (non-rigorous)",
                    t_values[b] / t_values[a]))
    return EntropySummary(shape, tuple(lower), tuple(upper), tuple(empirical))
