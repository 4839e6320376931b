from fractions import Fraction
from math import comb

import pytest
from hypothesis import given

from plane3jack.diagrams import AXIS_PERMS, PlanePartition, addable, axis_permute, axis_to_h_perm, enumerate_pp, line
from plane3jack.exactfield import RF_ONE, RF_ZERO, UPolynomial, URational, h1, h2, h3, permute_h, sigma
from plane3jack.operators import SparseOperator
from plane3jack.walgebra import central_c
from plane3jack.yangian_rep import (
    amplitude_sq,
    bracket_operator,
    commutant_search,
    gram,
    norm,
    phi,
    psi_function,
    reduce_e_bracket,
    verify_relations,
)

from strategies import rfuncs

S2, S3 = sigma(2), sigma(3)
BOX = PlanePartition.parse("1")
EMPTY = PlanePartition(())


@given(rfuncs())
def test_phi_reflection(x):
    f = phi()
    try:
        assert f(x) * f(-x) == RF_ONE
    except ZeroDivisionError:
        pass


def test_phi_properties():
    f = phi()
    # phi - 1 decays like u^-3 because sigma1 = 0
    d = f - URational(UPolynomial([RF_ONE]))
    assert d.num.degree() <= d.den.degree() - 3


def test_psi_one_box():
    one = psi_function(BOX)
    for u in (h1 + 7, 3 * h2 + 2):
        assert one(u) == (u + S3) / u * phi()(u)


def test_amplitudes():
    assert amplitude_sq(EMPTY, (0, 0, 0)) == RF_ONE
    for g in AXIS_PERMS:
        s = axis_to_h_perm(g)
        for pp in enumerate_pp(3):
            img = axis_permute(pp, g)
            for b in addable(pp):
                moved = [0, 0, 0]
                for a in range(3):
                    moved[g[a]] = b[a]
                assert amplitude_sq(img, tuple(moved)) == permute_h(amplitude_sq(pp, b), s)


def test_gauge_rep_examples(rep4):
    vac = rep4.vacuum()
    assert rep4.e(0).apply(vac) == rep4.state(BOX)
    for j in (1, 2):
        assert rep4.e(j).apply(vac).is_zero()
    two = rep4.e(0).apply(rep4.state(BOX))
    assert sorted(two.vec.values(), key=str) == [RF_ONE] * 3
    for n in range(5):
        for pp in enumerate_pp(n):
            assert psi_function(pp).mode(2) == 2 * n


def test_relations_level4(rep4):
    report = verify_relations(rep4, 2, 2)
    assert report and all(r["status"] == "pass" for r in report)


def test_relation_witness(rep4):
    # a deliberately wrong identity reports a counterexample state
    from plane3jack.yangian_rep import _record

    out = []
    _record(out, "wrong", (), rep4.e(0).comm(rep4.f(0)), rep4.psi(0) * 2)
    assert out[0]["status"] == "fail" and out[0]["witness"]["level"] == 0


def test_gram(rep5):
    assert gram(rep5, 1)[0, 0] == RF_ONE
    g2 = gram(rep5, 2)
    ycol = rep5.basis.index(line(2, "y"))
    assert g2[ycol, ycol] == 2 * (1 + h2 * h3) / ((h1 - h2) * (h1 - h3))
    for n in range(1, 5):
        g = gram(rep5, n)
        for i, pp in enumerate(rep5.basis.levels[n]):
            for k in range(len(rep5.basis.levels[n])):
                assert g[i, k] == (norm(pp) if i == k else RF_ZERO)


def test_column_norm_product(rep4):
    for n in range(1, 5):
        want = RF_ONE
        for j in range(1, n):
            want = want * (j + 1) * (j + h2 * h3) / ((j * h1 - h2) * (j * h1 - h3))
        assert norm(line(n, "y")) == want


def test_heisenberg_and_ladder(bm5):
    one = SparseOperator.scalar(bm5.basis, RF_ONE)
    assert bm5.a1(1).comm(bm5.a1(-1)).equals(one)
    assert bm5.a1(2).comm(bm5.a1(-2)).equals(one * 2)
    e1 = bm5.rep.e(1)
    for n in (-3, -2, -1, 1, 2, 3):
        if n == 1:
            continue  # a_{0,1} vanishes on this module
        assert e1.comm(bm5.a1(n)).equals(bm5.a1(n - 1) * (-n))


def test_a22_bracket(bm5):
    # [a_{2,2}, a_{-2,2}] = 8 a_{0,2} + c2 with a_{0,2} = psi_2 - 2 sum a_{-j} a_j
    lhs = bm5.a2(2).comm(bm5.a2(-2))
    rhs = bm5.a2(0) * 8 + SparseOperator.scalar(bm5.basis, central_c(2))
    assert lhs.equals(rhs)
    assert bm5.a2(-2).equals(bm5.a_minus22_literal())


@pytest.mark.parametrize("n", [2, 3, 4])
def test_a2_vacuum_norms(bm5, n):
    vac = bm5.rep.vacuum()
    v = bm5.a2(n).apply(bm5.a2(-n).apply(vac))
    assert v.vec == {0: central_c(2) * comb(n + 1, 3)}


def test_a22_commutes_with_a1(bm5):
    for n in (-3, -2, -1, 1, 2, 3):
        assert bm5.a2(-2).comm(bm5.a1(n)).is_zero()


def test_commutant_search_weight2(rep4):
    names, basis = commutant_search(2, rep4)
    assert basis == []
    names, basis = commutant_search(2, rep4, bilinear=True)
    assert len(basis) == 1
    v = {names[i]: c for i, c in basis[0].items()}
    k = v["sum a_{-(k+2)}a_k"] * Fraction(-1, 2)
    want = {"e_{2,0}": RF_ONE, "e_{1,0}": -S3, "e_0e_0": -RF_ONE, "sum a_{-(k+2)}a_k": _rf(-2)}
    assert {n: c / k for n, c in v.items()} == want


def _rf(x):
    return RF_ONE * x


def test_reduce_e_bracket():
    assert reduce_e_bracket(1, 0) == {("b", 1): RF_ONE}
    r = reduce_e_bracket(2, 1)
    assert r == {("b", 3): _rf(Fraction(1, 3)), ("b", 1): S2 / 3, ("p", 0, 0): -S3 / 3}
    with pytest.raises(ValueError):
        reduce_e_bracket(1, 1)


@pytest.mark.parametrize("jk", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_reduce_e_bracket_matrices(rep5, jk):
    j, k = jk
    d = rep5.e(j).comm(rep5.e(k)) - bracket_operator(rep5, reduce_e_bracket(j, k))
    assert d.domain and d.is_zero()


@pytest.mark.slow
def test_virasoro(bm5):
    basis = bm5.basis
    for name, L, c in (("L", bm5.L, -S2 - S3 * S3), ("Lbar", bm5.Lbar, RF_ONE)):
        for m in range(-2, 3):
            for n in range(-2, 3):
                rhs = L(m + n) * (m - n)
                if m + n == 0:
                    rhs = rhs + SparseOperator.scalar(basis, c * Fraction(m**3 - m, 12))
                d = L(m).comm(L(n)) - rhs
                assert d.domain and d.is_zero(), (name, m, n)
