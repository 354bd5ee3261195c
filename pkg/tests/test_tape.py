import random

import pytest

from brickcount import BrickShape, Configuration, Placement
from brickcount.checks import example_failure_tapes, example_success_tape
from brickcount.enumerator import collect_sets, count_anchored, decode_collected
from brickcount._search import MODE_ANCHORED
from brickcount.tape import (FailureTag, Tape, TapeFormatError, decode, encode,
                             surjectivity_census, tape_length)

SHAPE = BrickShape(2, 4)


def test_tape_validation():
    with pytest.raises(TapeFormatError):
        Tape(SHAPE, 3, (0,) * 15)          # wrong length
    with pytest.raises(TapeFormatError):
        Tape(SHAPE, 3, (9,) + (0,) * 15)   # out of alphabet
    with pytest.raises(TapeFormatError):
        Tape.parse("0,x,0", SHAPE, 3)
    assert tape_length(SHAPE, 4) == 32
    assert tape_length(SHAPE, 2) == 0


def test_text_roundtrip():
    t = Tape.parse("0,5,0,0,-4,0,0,0,0,0,0,0,-1,0,0,0", SHAPE, 3)
    assert Tape.parse(t.to_text(), SHAPE, 3) == t


def test_degenerate_small_targets():
    assert decode(Tape(SHAPE, 1, ())).ok
    out = decode(Tape(SHAPE, 2, ()))
    assert not out.ok and out.failure is FailureTag.UNDERFULL


def test_worked_example_success():
    out = decode(example_success_tape())
    assert out.ok
    cfg = out.config
    assert len(cfg) == 4
    assert cfg.layer_counts() == {0: 1, 1: 2, 2: 1}
    # one brick at layer 1 parallel to the base, one rotated, rotated cover
    rots = sorted(p.rot for p in cfg.placements if p.z == 1)
    assert rots == [0, 1]
    assert [p.rot for p in cfg.placements if p.z == 2] == [1]
    assert decode(encode(cfg)).config == cfg


def test_five_terminal_states_in_order():
    fixtures = example_failure_tapes()
    outcomes = {name: decode(t) for name, t in fixtures.items()}
    assert outcomes["collision"].failure is FailureTag.COLLISION
    assert outcomes["early_finish"].failure is FailureTag.EARLY_FINISH_NONZERO_TAIL
    assert outcomes["stalled"].failure is FailureTag.STALLED_INTRODUCTION
    assert outcomes["second_base_layer"].failure is FailureTag.SECOND_BASE_LAYER_BLOCK
    assert outcomes["underfull"].failure is FailureTag.UNDERFULL
    assert len({o.failure for o in outcomes.values()}) == 5
    assert all(not o.ok for o in outcomes.values())


def test_failure_positions_are_read_positions():
    fixtures = example_failure_tapes()
    assert decode(fixtures["collision"]).position == 2
    assert decode(fixtures["stalled"]).position == 8    # end of brick 1's window
    assert decode(fixtures["underfull"]).position == 32  # end of tape


def test_roundtrip_exhaustive_a3():
    rows = collect_sets(SHAPE, 3, MODE_ANCHORED)
    assert len(rows) == 2596
    for row in rows:
        cfg = decode_collected(SHAPE, row)
        out = decode(encode(cfg))
        assert out.ok and out.config == cfg


def test_census_n3():
    valid, distinct = surjectivity_census(SHAPE, 3)
    assert distinct == count_anchored(SHAPE, 3) == 2596
    assert valid >= distinct


def test_successful_decodes_are_valid_anchored():
    from brickcount.geometry import Configuration, is_connected
    from brickcount.tape import nonzero_support_tapes

    seen = 0
    for t in nonzero_support_tapes(SHAPE, 3):
        out = decode(t)
        if not out.ok:
            continue
        cfg = out.config
        assert len(cfg) == 3 and is_connected(cfg)
        assert Placement(0, 0, 0, 0) in cfg.placements
        assert all(p.z >= 1 for p in cfg.placements if p != Placement(0, 0, 0, 0))
        Configuration.checked(SHAPE, cfg.placements)
        seen += 1
        if seen >= 800:
            break
    assert seen > 0


def test_census_rejects_huge_spaces():
    with pytest.raises(ValueError):
        surjectivity_census(SHAPE, 6)


def test_nonzero_count_necessity_small_support():
    # 0 or 1 nonzero values can never introduce the two missing bricks
    n, length = 3, tape_length(SHAPE, 3)
    assert not decode(Tape(SHAPE, n, (0,) * length)).ok
    for pos in range(length):
        for v in list(range(-8, 0)) + list(range(1, 9)):
            values = [0] * length
            values[pos] = v
            assert not decode(Tape(SHAPE, n, tuple(values))).ok


def test_nonzero_count_necessity_oversupport_sampled():
    rng = random.Random(99)
    n, length = 3, tape_length(SHAPE, 3)
    alphabet = [v for v in range(-8, 9) if v]
    for _ in range(4000):
        k = rng.randint(3, length)
        positions = rng.sample(range(length), k)
        values = [0] * length
        for pos in positions:
            values[pos] = rng.choice(alphabet)
        assert not decode(Tape(SHAPE, n, tuple(values))).ok


def test_encoder_rejects_non_anchored():
    cfg = Configuration(SHAPE, (Placement(0, 0, 0, 0), Placement(0, 0, 1, 0),
                                Placement(4, 0, 0, 0)))
    with pytest.raises(ValueError):
        encode(cfg)  # second layer-0 brick
    with pytest.raises(ValueError):
        encode(Configuration(SHAPE, (Placement(1, 1, 0, 0),)))  # base off origin


def test_downward_introduction_roundtrip():
    # brick hanging one layer below a cover brick, reachable only through a
    # bottom window
    cfg = Configuration(SHAPE, (
        Placement(0, 0, 0, 0),
        Placement(3, 0, 1, 0),
        Placement(3, 0, 2, 1),
        Placement(4, 3, 1, 1),
    ))
    out = decode(encode(cfg))
    assert out.ok and out.config == cfg


@pytest.mark.extended
def test_roundtrip_exhaustive_a4_extended():
    rows = collect_sets(SHAPE, 4, MODE_ANCHORED)
    for row in rows:
        cfg = decode_collected(SHAPE, row)
        out = decode(encode(cfg))
        assert out.ok and out.config == cfg
