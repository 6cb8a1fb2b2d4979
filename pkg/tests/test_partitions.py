from math import comb

import pytest

from higgsmot import (
    BoxOutsideDiagramError,
    Partition,
    arm_leg,
    block_data,
    enumerate_partitions,
    pairing,
)


def test_enumerate_zero():
    assert enumerate_partitions(0) == [Partition(())]


def test_enumerate_exact_sizes():
    parts = [p for p in enumerate_partitions(3) if p.size == 3]
    assert {p.parts for p in parts} == {(3,), (2, 1), (1, 1, 1)}
    assert len([p for p in enumerate_partitions(5) if p.size == 5]) == 7


def test_enumerate_duplicate_free():
    all_parts = enumerate_partitions(8)
    assert len({p.parts for p in all_parts}) == len(all_parts)


def test_invalid_partitions_rejected():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_arm_leg_hook():
    lam = Partition((2, 1))
    assert arm_leg(lam, (1, 1)) == (1, 1)


def test_arm_leg_corner_and_row():
    lam = Partition((3,))
    assert arm_leg(lam, (1, 1)) == (2, 0)
    assert arm_leg(lam, (3, 1)) == (0, 0)
    for p in enumerate_partitions(6):
        if p.size == 0:
            continue
        corner = (p.parts[-1], p.length)
        assert arm_leg(p, corner) == (0, 0)


def test_arm_leg_outside():
    lam = Partition((2, 1))
    with pytest.raises(BoxOutsideDiagramError):
        arm_leg(lam, (2, 2))


def test_pairing_examples():
    assert pairing(Partition((2, 1))) == 5
    assert pairing(Partition((3,))) == 3
    assert pairing(Partition((1, 1, 1))) == 9


def test_block_data_examples():
    mult, prefix, block = block_data(Partition((3, 1, 1)))
    assert mult == (2, 0, 1)
    assert prefix == (0, 2, 2, 3)
    assert block == (1, 1, 3)

    mult, prefix, block = block_data(Partition((1,)))
    assert mult == (1,)
    assert block == (1,)

    mult, prefix, block = block_data(Partition((2, 2)))
    assert mult == (0, 2)
    assert block == (2, 2)


def test_block_data_consistency():
    for lam in enumerate_partitions(7):
        mult, prefix, block = block_data(lam)
        assert sum(mult) == lam.length
        assert sum((i + 1) * m for i, m in enumerate(mult)) == lam.size
        assert len(block) == lam.length
        # block sizes match multiplicities
        for i, m in enumerate(mult, start=1):
            assert block.count(i) == m


def test_box_count_and_hook_sum():
    for lam in enumerate_partitions(8):
        boxes = list(lam.boxes())
        assert len(boxes) == lam.size
        hooks = sum(sum(arm_leg(lam, s)) + 1 for s in boxes)
        expected = (
            sum(comb(p, 2) for p in lam.parts)
            + sum(comb(c, 2) for c in lam.conjugate)
            + lam.size
        )
        assert hooks == expected


def test_pairing_via_legs():
    for lam in enumerate_partitions(8):
        legs = sum(arm_leg(lam, s)[1] for s in lam.boxes())
        assert pairing(lam) == lam.size + 2 * legs


def test_conjugate_involution():
    for lam in enumerate_partitions(8):
        assert Partition(lam.conjugate).conjugate == lam.parts
