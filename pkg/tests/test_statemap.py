import pytest

from plane3jack.diagrams import enumerate_pp, line
from plane3jack.exactfield import RF_ONE, sigma
from plane3jack.fockpoly import PMonomial, gen, vertex_column, weight_monomials
from plane3jack.linalg import rank
from plane3jack.statemap import LINE_FREE_SETS, StateMap, shapovalov
from plane3jack.walgebra import central_c

C2 = central_c(2)


@pytest.fixture(scope="module")
def line_map(rep4):
    return StateMap(rep4, "line")


@pytest.fixture(scope="module")
def op_map(rep4):
    return StateMap(rep4, "operator")


def test_bad_basis(rep4):
    with pytest.raises(ValueError):
        StateMap(rep4, "other")


def test_vacuum_and_box(line_map):
    assert line_map.state(PMonomial.of()).vec == {0: RF_ONE}
    s = line_map.state(PMonomial.of((1, 1)))
    assert set(s.vec) == {0} and s.level == 1


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("axis", "xyz")
def test_lines_are_line_states(line_map, rep4, n, axis):
    s = line_map.poly_state(vertex_column(axis, n)[n])
    t = rep4.state(line(n, axis))
    assert (s - t).is_zero()


@pytest.mark.parametrize("n", range(5))
def test_monomials_span(line_map, n):
    assert rank(line_map.matrix(n)) == len(enumerate_pp(n)) == len(weight_monomials(n))


def test_conventions_agree_below_level_four(line_map, op_map):
    for n in range(4):
        for m in weight_monomials(n):
            assert (line_map.state(m) - op_map.state(m)).is_zero()


def test_conventions_differ_on_level_four_free_set(line_map, op_map):
    p = PMonomial.of((2, 2), (2, 2))
    assert p in LINE_FREE_SETS[4]
    assert not (line_map.state(p) - op_map.state(p)).is_zero()


def test_inner(op_map):
    assert op_map.inner(gen(2, 2), gen(2, 2)) == C2
    assert op_map.inner(gen(1, 1), gen(2, 2)) == 0
    assert op_map.inner(gen(1, 1) ** 2, gen(1, 1) ** 2) == 2


def test_shapovalov_symmetric(line_map, rep4):
    a = line_map.state(PMonomial.of((1, 1), (2, 1)))
    b = line_map.state(PMonomial.of((3, 2)))
    assert shapovalov(rep4, a, b) == shapovalov(rep4, b, a)


def test_coords_roundtrip(line_map, rep4):
    for pp in enumerate_pp(3):
        s = rep4.state(pp)
        assert (line_map.poly_state(line_map.coords(s)) - s).is_zero()


def test_weight_cap(line_map):
    with pytest.raises(ValueError):
        line_map.state(PMonomial.of((5, 1)))


def test_sigma_sanity():
    assert C2 == -2 * (1 + sigma(2) + sigma(3) ** 2)
