"""Instruction-tape codec for anchored buildings.

A tape of length ``2*b*w*(n-2)`` over the alphabet ``{-bw, ..., bw}`` is read
left to right and either assembles a building of exactly n bricks anchored on
a fixed base brick, or fails in one of five ways.  The reading discipline:

* positions are grouped into windows; brick 1 and brick 2 each own one
  window of ``bw`` values describing what to attach on their top side,
  bricks 3..n-1 own two windows of ``bw`` values (top side, then bottom
  side);
* a positive value v at stud j of the window's brick attaches a new
  axis-aligned brick with hole v over stud j; a negative value attaches the
  brick rotated a quarter turn with hole -v over stud j (bottom windows
  mirror this with studs and holes exchanged);
* bricks are numbered in order of introduction.

Studs and holes are numbered row-major in the brick's own frame, columns
along the long side: for a 2x4 brick the top row reads 1 2 3 4 and the
bottom row 5 6 7 8.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .geometry import (BrickShape, Configuration, Placement, boxes_collide,
                       extents, footprints_overlap, is_connected)


class TapeFormatError(ValueError):
    """Malformed tape input (wrong length or out-of-alphabet value)."""


class FailureTag(Enum):
    COLLISION = "Collision"
    EARLY_FINISH_NONZERO_TAIL = "EarlyFinishNonzeroTail"
    STALLED_INTRODUCTION = "StalledIntroduction"
    SECOND_BASE_LAYER_BLOCK = "SecondBaseLayerBlock"
    UNDERFULL = "Underfull"


def tape_length(shape: BrickShape, n: int) -> int:
    return 2 * shape.studs * (n - 2) if n >= 3 else 0


@dataclass(frozen=True)
class Tape:
    """A read-only instruction sequence targeting n bricks of one shape."""

    shape: BrickShape
    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise TapeFormatError("target brick count must be positive")
        expect = tape_length(self.shape, self.n)
        if len(self.values) != expect:
            raise TapeFormatError(
                f"tape length {len(self.values)} != {expect} for n={self.n}")
        bw = self.shape.studs
        for i, v in enumerate(self.values):
            if abs(v) > bw:
                raise TapeFormatError(f"value {v} at position {i + 1} outside [-{bw}, {bw}]")

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.values)

    @classmethod
    def parse(cls, text: str, shape: BrickShape, n: int) -> "Tape":
        text = text.strip()
        try:
            values = tuple(int(tok) for tok in text.split(",")) if text else ()
        except ValueError as exc:
            raise TapeFormatError(f"cannot parse tape text: {exc}") from exc
        return cls(shape, n, values)


@dataclass(frozen=True)
class DecodeOutcome:
    """Either an assembled configuration or a failure tag with read position."""

    config: Configuration | None
    failure: FailureTag | None
    position: int

    @property
    def ok(self) -> bool:
        return self.config is not None


def _stud_xy(p: Placement, shape: BrickShape, index: int) -> tuple[int, int]:
    # index is 1-based; valid for holes as well (same grid).
    col = (index - 1) % shape.w
    row = (index - 1) // shape.w
    if p.rot == 0:
        return p.x + col, p.y + row
    return p.x + shape.b - 1 - row, p.y + col


def _stud_index(p: Placement, shape: BrickShape, cx: int, cy: int) -> int:
    if p.rot == 0:
        col, row = cx - p.x, cy - p.y
    else:
        row, col = shape.b - 1 - (cx - p.x), cy - p.y
    return row * shape.w + col + 1


def _anchor_from_grid_point(shape: BrickShape, rot: int, index: int,
                            wx: int, wy: int, z: int) -> Placement:
    # Place a brick so its grid point `index` lands on world cell (wx, wy).
    col = (index - 1) % shape.w
    row = (index - 1) // shape.w
    if rot == 0 or shape.square:
        return Placement(wx - col, wy - row, z, 0)
    return Placement(wx - (shape.b - 1 - row), wy - col, z, 1)


def decode(tape: Tape) -> DecodeOutcome:
    """Run the reading procedure; total over well-formed tapes, single pass."""
    shape, n = tape.shape, tape.n
    bw = shape.studs
    base = Placement(0, 0, 0, 0)
    blocks = [base]
    if n == 1:
        return DecodeOutcome(Configuration(shape, (base,)), None, 0)
    if n == 2:
        return DecodeOutcome(None, FailureTag.UNDERFULL, 0)

    pos = 0  # 1-based position of the value just read
    for m in range(1, n):
        sides = ("top",) if m <= 2 else ("top", "bottom")
        for side in sides:
            for j in range(1, bw + 1):
                pos += 1
                v = tape.values[pos - 1]
                if v == 0:
                    continue
                carrier = blocks[m - 1]
                rot = 0 if v > 0 else (0 if shape.square else 1)
                wx, wy = _stud_xy(carrier, shape, j)
                if side == "top":
                    new = _anchor_from_grid_point(shape, rot, abs(v), wx, wy, carrier.z + 1)
                else:
                    new = _anchor_from_grid_point(shape, rot, abs(v), wx, wy, carrier.z - 1)
                for q in blocks:
                    if boxes_collide(new, q, shape):
                        return DecodeOutcome(None, FailureTag.COLLISION, pos)
                if new.z == 0:
                    return DecodeOutcome(None, FailureTag.SECOND_BASE_LAYER_BLOCK, pos)
                blocks.append(new)
                if len(blocks) == n:
                    for tail_pos in range(pos + 1, len(tape.values) + 1):
                        if tape.values[tail_pos - 1] != 0:
                            return DecodeOutcome(
                                None, FailureTag.EARLY_FINISH_NONZERO_TAIL, tail_pos)
                    return DecodeOutcome(Configuration(shape, tuple(blocks)), None, pos)
        if m < n - 1 and len(blocks) < m + 1:
            return DecodeOutcome(None, FailureTag.STALLED_INTRODUCTION, pos)
    return DecodeOutcome(None, FailureTag.UNDERFULL, len(tape.values))


def _check_anchored(config: Configuration) -> None:
    base = Placement(0, 0, 0, 0)
    if base not in config.placements:
        raise ValueError("configuration must contain the base brick at the origin")
    for p in config.placements:
        if p != base and p.z < 1:
            raise ValueError("only the base brick may occupy layer 0 and below")
    if not is_connected(config):
        raise ValueError("configuration is not contiguous")


def encode(config: Configuration) -> Tape:
    """Produce a tape that decodes back to the given anchored configuration.

    Each brick is introduced at the lowest-index stud (or hole, for downward
    attachments) of the earliest-numbered brick it touches, mirroring the
    reading order of :func:`decode`, so decode(encode(c)) == c.
    """
    _check_anchored(config)
    shape, n = config.shape, len(config)
    bw = shape.studs
    values = [0] * tape_length(shape, n)
    blocks = [Placement(0, 0, 0, 0)]
    introduced = {blocks[0]}
    pending = [p for p in config.placements if p not in introduced]

    for m in range(1, n):
        if m > len(blocks):
            raise ValueError("configuration cannot be reached by the window discipline")
        carrier = blocks[m - 1]
        if m == 1:
            window_offset = 0
        elif m == 2:
            window_offset = bw
        else:
            window_offset = (2 * m - 4) * bw
        sides = ("top",) if m <= 2 else ("top", "bottom")
        for s_idx, side in enumerate(sides):
            dz = 1 if side == "top" else -1
            attached = []
            for q in pending:
                if q in introduced or q.z != carrier.z + dz:
                    continue
                if not footprints_overlap(carrier, q, shape):
                    continue
                cells = sorted(set(_cells(carrier, shape)) & set(_cells(q, shape)))
                j = min(_stud_index(carrier, shape, cx, cy) for cx, cy in cells)
                other = _stud_index(q, shape, *_stud_xy(carrier, shape, j))
                sign = 1 if q.rot == 0 else -1
                attached.append((j, sign * other, q))
            for j, value, q in sorted(attached):
                values[window_offset + s_idx * bw + j - 1] = value
                blocks.append(q)
                introduced.add(q)
        if len(blocks) == n:
            break
    if len(blocks) != n:
        raise ValueError("could not introduce every brick; configuration not anchored-reachable")
    return Tape(shape, n, tuple(values))


def _cells(p: Placement, shape: BrickShape):
    ex, ey = extents(p, shape)
    return ((p.x + i, p.y + j) for i in range(ex) for j in range(ey))


def nonzero_support_tapes(shape: BrickShape, n: int):
    """All tapes with exactly n-1 nonzero values (the only possible successes)."""
    length = tape_length(shape, n)
    bw = shape.studs
    alphabet = [v for v in range(-bw, bw + 1) if v != 0]
    for support in itertools.combinations(range(length), n - 1):
        for combo in itertools.product(alphabet, repeat=n - 1):
            values = [0] * length
            for idx, v in zip(support, combo):
                values[idx] = v
            yield Tape(shape, n, tuple(values))


def surjectivity_census(shape: BrickShape, n: int,
                        max_tapes: int = 5_000_000) -> tuple[int, int]:
    """Exhaust the support-constrained tape space; returns (valid, distinct).

    ``valid`` counts tapes that decode successfully, ``distinct`` the distinct
    buildings among them.  Tapes with a different number of nonzero values
    always fail, so the restriction loses no successes.
    """
    length = tape_length(shape, n)
    bw = shape.studs
    from math import comb

    space = comb(length, n - 1) * (2 * bw) ** (n - 1)
    if space > max_tapes:
        raise ValueError(f"census space {space} exceeds cap {max_tapes}")
    valid = 0
    distinct = set()
    for tape in nonzero_support_tapes(shape, n):
        outcome = decode(tape)
        if outcome.ok:
            valid += 1
            distinct.add(outcome.config.placements)
    return valid, len(distinct)
