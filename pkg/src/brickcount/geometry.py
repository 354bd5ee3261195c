"""Bricks, placements, collision, contact connectivity, and canonical forms.

Coordinates are integer stud units.  A brick occupies the half-open box
``[x, x+ex) x [y, y+ey) x [z, z+1)`` where the footprint extents ``(ex, ey)``
are ``(w, b)`` for an axis-aligned brick and ``(b, w)`` for one rotated a
quarter turn.  Top and bottom faces are distinguishable, so the only
symmetries considered for identification are the four rotations about the
z-axis plus translations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Cell = tuple[int, int]


@dataclass(frozen=True)
class BrickShape:
    """Brick dimensions in studs, short side first (b <= w)."""

    b: int
    w: int

    def __post_init__(self) -> None:
        if self.b < 1 or self.w < 1:
            raise ValueError(f"brick sides must be positive, got {self.b}x{self.w}")
        if self.b > self.w:
            raise ValueError(f"expected b <= w, got {self.b}x{self.w}")

    @property
    def studs(self) -> int:
        return self.b * self.w

    @property
    def square(self) -> bool:
        return self.b == self.w

    def __str__(self) -> str:
        return f"{self.b}x{self.w}"

    @staticmethod
    def parse(text: str) -> "BrickShape":
        try:
            b, w = text.lower().split("x")
            return BrickShape(int(b), int(w))
        except (ValueError, TypeError):
            raise ValueError(f"cannot parse brick shape {text!r}; expected BxW like 2x4")


@dataclass(frozen=True)
class Placement:
    """One brick at integer position; rot=1 means rotated a quarter turn.

    For square bricks the two orientations coincide, so rot is normalized
    to 0 by every operation that builds placements.
    """

    x: int
    y: int
    z: int
    rot: int = 0

    def __post_init__(self) -> None:
        if self.rot not in (0, 1):
            raise ValueError(f"rot must be 0 or 1, got {self.rot}")

    def key(self) -> tuple[int, int, int, int]:
        # Fixed total order used everywhere: layer first, then x, y, rot.
        return (self.z, self.x, self.y, self.rot)


def extents(p: Placement, shape: BrickShape) -> tuple[int, int]:
    return (shape.w, shape.b) if p.rot == 0 else (shape.b, shape.w)


def footprint(p: Placement, shape: BrickShape) -> frozenset[Cell]:
    """Unit xy-cells covered by the placement at its layer."""
    ex, ey = extents(p, shape)
    return frozenset((p.x + i, p.y + j) for i in range(ex) for j in range(ey))


def footprints_overlap(p: Placement, q: Placement, shape: BrickShape) -> bool:
    pex, pey = extents(p, shape)
    qex, qey = extents(q, shape)
    return (p.x < q.x + qex and q.x < p.x + pex
            and p.y < q.y + qey and q.y < p.y + pey)


def boxes_collide(p: Placement, q: Placement, shape: BrickShape) -> bool:
    """True iff the two open brick boxes intersect."""
    return p.z == q.z and footprints_overlap(p, q, shape)


def touches(p: Placement, q: Placement, shape: BrickShape) -> bool:
    """Stud-hole contact: adjacent layers with positive footprint overlap."""
    return abs(p.z - q.z) == 1 and footprints_overlap(p, q, shape)


def _normalize_rot(p: Placement, shape: BrickShape) -> Placement:
    if shape.square and p.rot:
        return Placement(p.x, p.y, p.z, 0)
    return p


@dataclass(frozen=True)
class Configuration:
    """A finite set of non-colliding placements of one brick shape.

    Placements are stored sorted by ``Placement.key`` so equal sets compare
    equal.  Use :meth:`checked` to also validate collision-freeness and
    contact connectivity.
    """

    shape: BrickShape
    placements: tuple[Placement, ...]

    def __post_init__(self) -> None:
        norm = tuple(sorted((_normalize_rot(p, self.shape) for p in self.placements),
                            key=Placement.key))
        object.__setattr__(self, "placements", norm)

    @classmethod
    def checked(cls, shape: BrickShape, placements: Iterable[Placement]) -> "Configuration":
        cfg = cls(shape, tuple(placements))
        ps = cfg.placements
        if len(set(ps)) != len(ps):
            raise ValueError("duplicate placements")
        for i, p in enumerate(ps):
            for q in ps[i + 1:]:
                if boxes_collide(p, q, shape):
                    raise ValueError(f"colliding placements {p} and {q}")
        if not is_connected(cfg):
            raise ValueError("configuration is not contiguous")
        return cfg

    def __len__(self) -> int:
        return len(self.placements)

    def __iter__(self) -> Iterator[Placement]:
        return iter(self.placements)

    def zmin(self) -> int:
        return min(p.z for p in self.placements)

    def zmax(self) -> int:
        return max(p.z for p in self.placements)

    def height(self) -> int:
        return self.zmax() - self.zmin() + 1

    def layer_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self.placements:
            counts[p.z] = counts.get(p.z, 0) + 1
        return counts

    def translated(self, dx: int, dy: int, dz: int) -> "Configuration":
        return Configuration(self.shape, tuple(
            Placement(p.x + dx, p.y + dy, p.z + dz, p.rot) for p in self.placements))


def collides(config: Configuration, p: Placement) -> bool:
    """True iff p's box interior intersects any box interior in the configuration."""
    p = _normalize_rot(p, config.shape)
    return any(boxes_collide(p, q, config.shape) for q in config.placements)


def is_connected(config: Configuration) -> bool:
    """True iff the layer-contact graph of the placements is connected."""
    ps = config.placements
    if len(ps) <= 1:
        return len(ps) == 1
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(len(ps)):
            if j not in seen and touches(ps[i], ps[j], config.shape):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(ps)


def rotate_placement(p: Placement, shape: BrickShape, quarters: int) -> Placement:
    """Rotate a placement by quarters*90 degrees counterclockwise about the z-axis."""
    quarters %= 4
    for _ in range(quarters):
        ex, ey = extents(p, shape)
        p = Placement(-p.y - ey, p.x, p.z, p.rot ^ 1 if not shape.square else 0)
    return p


def _normalize_translation(keys: list[tuple[int, int, int, int]]) -> tuple[tuple[int, int, int, int], ...]:
    z0, x0, y0, _ = min(keys)
    return tuple(sorted((z - z0, x - x0, y - y0, r) for (z, x, y, r) in keys))


@dataclass(frozen=True)
class CanonicalKey:
    """Translation- and rotation-invariant identifier of a configuration."""

    shape: BrickShape
    code: tuple[tuple[int, int, int, int], ...]


def translation_normal_form(config: Configuration) -> tuple[tuple[int, int, int, int], ...]:
    """Placement keys translated so the least placement sits at the origin."""
    return _normalize_translation([p.key() for p in config.placements])


def canonicalize(config: Configuration) -> CanonicalKey:
    """Least translation-normalized form over the four z-axis rotations."""
    best = None
    for quarters in range(4):
        keys = [rotate_placement(p, config.shape, quarters).key() for p in config.placements]
        form = _normalize_translation(keys)
        if best is None or form < best:
            best = form
    return CanonicalKey(config.shape, best)


@dataclass(frozen=True)
class TopPlacements:
    """All upper placements over a fixed lower brick, plus the symmetric ones."""

    placements: tuple[Placement, ...]
    symmetric: tuple[Placement, ...]


def placements_on_top(shape: BrickShape) -> TopPlacements:
    """Every placement of one brick attached on top of a fixed axis-aligned brick.

    The lower brick sits at the origin in layer 0; upper placements live in
    layer 1 and must overlap it.  The ``symmetric`` sublist collects those
    whose two-brick assembly is fixed by a half-turn.
    """
    base = Placement(0, 0, 0, 0)
    rots = (0,) if shape.square else (0, 1)
    found: list[Placement] = []
    for rot in rots:
        up = Placement(0, 0, 1, rot)
        ex, ey = extents(up, shape)
        for dx in range(-ex + 1 - shape.w, shape.w + ex):
            for dy in range(-ey + 1 - shape.b, shape.b + ey):
                cand = Placement(dx, dy, 1, rot)
                if footprints_overlap(base, cand, shape):
                    found.append(cand)
    symmetric = tuple(p for p in found if _pair_is_symmetric(base, p, shape))
    return TopPlacements(tuple(found), symmetric)


def _pair_is_symmetric(base: Placement, upper: Placement, shape: BrickShape) -> bool:
    cfg = Configuration(shape, (base, upper))
    rotated = [rotate_placement(p, shape, 2) for p in cfg.placements]
    rbase = next(p for p in rotated if p.z == 0)
    dx, dy = base.x - rbase.x, base.y - rbase.y
    back = Configuration(shape, tuple(Placement(p.x + dx, p.y + dy, p.z, p.rot) for p in rotated))
    return back == cfg
