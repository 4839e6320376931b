import pytest
from hypothesis import given, strategies as st

from plane3jack.diagrams import (
    AXIS_PERMS,
    Box,
    PlanePartition,
    addable,
    axis_permute,
    axis_to_h_perm,
    box_weight,
    count_pp,
    enumerate_pp,
    line,
    macmahon_coefficients,
    removable,
)
from plane3jack.exactfield import h1, h2, permute_h

EMPTY = PlanePartition(())


def _compose(g, h):
    # (g o h)[a] = g[h[a]]
    return tuple(g[h[a]] for a in range(3))


def _inverse(g):
    out = [0, 0, 0]
    for a in range(3):
        out[g[a]] = a
    return tuple(out)


def test_small_enumerations():
    assert enumerate_pp(0) == (EMPTY,)
    assert [count_pp(n) for n in range(6)] == [1, 1, 3, 6, 13, 24]
    assert set(enumerate_pp(2)) == {line(2, "x"), line(2, "y"), line(2, "z")}


def test_macmahon_series():
    # independent count: truncate prod (1 - q^k)^-k by repeated convolution
    assert macmahon_coefficients(10) == [1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500]
    assert [count_pp(n) for n in range(9)] == macmahon_coefficients(8)


@pytest.mark.parametrize("n", range(6))
def test_enumeration_unique_and_valid(n):
    pps = enumerate_pp(n)
    assert len(set(pps)) == len(pps)
    for pp in pps:
        assert len(pp) == n
        for x, row in enumerate(pp.heights):
            for y, v in enumerate(row):
                assert v >= pp.height(x + 1, y) and v >= pp.height(x, y + 1)


def test_add_remove_examples():
    assert addable(EMPTY) == [Box(0, 0, 0)]
    assert len(addable(PlanePartition.parse("1"))) == 3
    assert removable(line(2, "y")) == [Box(0, 1, 0)]


@pytest.mark.parametrize("n", range(5))
def test_add_remove_inverse(n):
    for pp in enumerate_pp(n):
        for b in addable(pp):
            big = pp.add(b)
            assert b in removable(big)
            assert big.remove(b) == pp
        ws = [box_weight(b) for b in addable(pp)]
        assert len(set(ws)) == len(ws)


def test_box_weights():
    assert box_weight(Box(0, 0, 0)).is_zero()
    assert box_weight(Box(1, 0, 0)) == h2
    assert box_weight(Box(0, 0, 1)) == -h1 - h2


def test_axis_swap_examples():
    assert axis_permute(line(2, "y"), (1, 0, 2)) == line(2, "x")
    assert axis_to_h_perm((1, 0, 2)) == (1, 0, 2)


@pytest.mark.parametrize("n", range(5))
def test_group_action(n):
    for pp in enumerate_pp(n):
        assert axis_permute(pp, (0, 1, 2)) == pp
        for g in AXIS_PERMS:
            assert axis_permute(axis_permute(pp, g), _inverse(g)) == pp
            for h in AXIS_PERMS:
                assert axis_permute(axis_permute(pp, h), g) == axis_permute(pp, _compose(g, h))


@given(st.sampled_from(AXIS_PERMS), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_box_weight_covariance(g, x, y, z):
    b = (x, y, z)
    moved = [0, 0, 0]
    for a in range(3):
        moved[g[a]] = b[a]
    assert box_weight(Box(*moved)) == permute_h(box_weight(Box(*b)), axis_to_h_perm(g))


def test_text_roundtrip():
    for pp in enumerate_pp(4):
        assert PlanePartition.parse(str(pp)) == pp
