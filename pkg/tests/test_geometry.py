import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brickcount.geometry import (BrickShape, Configuration, Placement,
                                 boxes_collide, canonicalize, collides,
                                 footprint, is_connected, placements_on_top,
                                 rotate_placement)
from brickcount.formulas import one_on_one_ways


def test_shape_validation():
    with pytest.raises(ValueError):
        BrickShape(0, 4)
    with pytest.raises(ValueError):
        BrickShape(4, 2)
    assert BrickShape.parse("2x4") == BrickShape(2, 4)
    with pytest.raises(ValueError):
        BrickShape.parse("2by4")


def test_footprint_axis_aligned():
    cells = footprint(Placement(0, 0, 0, 0), BrickShape(2, 4))
    assert cells == {(x, y) for x in range(4) for y in range(2)}


def test_footprint_single_stud():
    assert footprint(Placement(3, -1, 5, 0), BrickShape(1, 1)) == {(3, -1)}


def test_footprint_rotated_swaps_extents():
    cells = footprint(Placement(0, 0, 0, 1), BrickShape(2, 4))
    assert cells == {(x, y) for x in range(2) for y in range(4)}


def test_collision_identical_and_stacked():
    s = BrickShape(2, 4)
    p = Placement(0, 0, 0, 0)
    assert boxes_collide(p, Placement(0, 0, 0, 0), s)
    assert not boxes_collide(p, Placement(0, 0, 1, 0), s)
    assert boxes_collide(p, Placement(1, 0, 0, 0), s)


def test_collides_against_configuration():
    s = BrickShape(2, 4)
    cfg = Configuration(s, (Placement(0, 0, 0, 0),))
    assert collides(cfg, Placement(3, 1, 0, 1))
    assert not collides(cfg, Placement(4, 0, 0, 0))


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 1),
       st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 1))
def test_collision_symmetric(x1, y1, r1, x2, y2, r2):
    s = BrickShape(2, 3)
    p, q = Placement(x1, y1, 0, r1), Placement(x2, y2, 0, r2)
    assert boxes_collide(p, q, s) == boxes_collide(q, p, s)


def test_one_on_one_counts_against_formula():
    # enumerated placements vs the closed form, all shapes up to 4x4
    for b in range(1, 5):
        for w in range(b, 5):
            s = BrickShape(b, w)
            assert len(placements_on_top(s).placements) == one_on_one_ways(s)


def test_2x4_has_46_positions_2_symmetric():
    survey = placements_on_top(BrickShape(2, 4))
    assert len(survey.placements) == 46
    assert len(survey.symmetric) == 2


def test_1x1_single_position():
    assert len(placements_on_top(BrickShape(1, 1)).placements) == 1


def test_2x2_nine_positions():
    assert len(placements_on_top(BrickShape(2, 2)).placements) == 9


def test_connectivity():
    s = BrickShape(2, 4)
    single = Configuration(s, (Placement(0, 0, 0, 0),))
    assert is_connected(single)
    gap = Configuration(s, (Placement(0, 0, 0, 0), Placement(0, 0, 2, 0)))
    assert not is_connected(gap)
    for p in placements_on_top(s).placements:
        assert is_connected(Configuration(s, (Placement(0, 0, 0, 0), p)))


def test_canonical_translation_invariance():
    s = BrickShape(2, 4)
    cfg = Configuration(s, (Placement(0, 0, 0, 0), Placement(1, 0, 1, 1)))
    assert canonicalize(cfg) == canonicalize(cfg.translated(5, -3, 0))
    assert canonicalize(cfg) == canonicalize(cfg.translated(0, 0, 7))


def test_canonical_rotation_invariance():
    s = BrickShape(2, 4)
    cfg = Configuration(s, (Placement(0, 0, 0, 0), Placement(-1, -2, 1, 1)))
    rot = Configuration(s, tuple(rotate_placement(p, s, 1) for p in cfg.placements))
    assert canonicalize(cfg) == canonicalize(rot)


def test_two_brick_orbits_collapse_to_24():
    s = BrickShape(2, 4)
    base = Placement(0, 0, 0, 0)
    keys = {canonicalize(Configuration(s, (base, p)))
            for p in placements_on_top(s).placements}
    assert len(keys) == 24


def test_canonicalize_idempotent_on_random_configs():
    s = BrickShape(2, 4)
    rng = random.Random(20240809)
    tops = placements_on_top(s).placements
    for _ in range(200):
        ps = [Placement(0, 0, 0, rng.choice((0, 1)))]
        while len(ps) < rng.randint(2, 5):
            anchor = rng.choice(ps)
            rel = rng.choice(tops)
            dz = rng.choice((1, -1))
            cand = Placement(anchor.x + rel.x, anchor.y + rel.y,
                             anchor.z + dz, rel.rot)
            cfg = Configuration(s, tuple(ps))
            if cand not in ps and not collides(cfg, cand):
                ps.append(cand)
        cfg = Configuration(s, tuple(ps))
        key = canonicalize(cfg)
        for q in range(4):
            moved = Configuration(s, tuple(rotate_placement(p, s, q) for p in ps))
            moved = moved.translated(rng.randint(-20, 20), rng.randint(-20, 20),
                                     rng.randint(0, 5))
            assert canonicalize(moved) == key


def test_square_brick_rot_normalized():
    s = BrickShape(2, 2)
    assert Placement(0, 0, 0, 1) in Configuration(s, (Placement(0, 0, 0, 1),)).placements or \
        Configuration(s, (Placement(0, 0, 0, 1),)).placements[0].rot == 0


def test_checked_rejects_bad_configs():
    s = BrickShape(2, 4)
    with pytest.raises(ValueError):
        Configuration.checked(s, (Placement(0, 0, 0, 0), Placement(1, 0, 0, 0)))
    with pytest.raises(ValueError):
        Configuration.checked(s, (Placement(0, 0, 0, 0), Placement(0, 0, 2, 0)))


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(1, 4))
def test_footprint_size_is_stud_count(b, w):
    if b > w:
        b, w = w, b
    s = BrickShape(b, w)
    for rot in ((0,) if s.square else (0, 1)):
        assert len(footprint(Placement(0, 0, 0, rot), s)) == s.studs
