from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plane3jack.diagrams import AXIS_PERMS, PlanePartition, addable, axis_permute, axis_to_h_perm, enumerate_pp, line
from plane3jack.exactfield import RF_ONE, h1, h2
from plane3jack.fockpoly import PMonomial, gen
from plane3jack.jack_solver import (
    build_table,
    classical_jack_oracle,
    constant_per_weight,
    degeneration_report,
    is_eigen,
    jack_norm,
    one_layer_partition,
    printed_displays,
    partitions,
    pieri_P1,
    proportionality,
    s3_equivariance_failures,
    schur_oracle,
    specialize_jack,
    specialize_schur_literal,
    verify_against_printed,
)
from plane3jack.jack_solver import _alpha_inner, _jack_P_table

P1, P21, P31 = gen(1, 1), gen(2, 1), gen(3, 1)
T = h1  # t = sqrt(alpha)
ALPHA = T * T


def test_table_complete(table4):
    for n in range(5):
        assert all(pp in table4 for pp in enumerate_pp(n))
    assert len(table4.shapes(4)) == 13


@pytest.mark.parametrize("n", range(1, 5))
def test_all_eigen(table4, n):
    assert all(is_eigen(table4, pp) for pp in enumerate_pp(n))


def test_s3_equivariant(table4):
    assert s3_equivariance_failures(table4) == []


pps4 = st.sampled_from([pp for n in range(1, 5) for pp in enumerate_pp(n)])


@given(pps4, st.sampled_from(AXIS_PERMS))
def test_relabelling(table4, pp, g):
    assert table4[axis_permute(pp, g)] == table4[pp].permute_h(axis_to_h_perm(g))


def test_printed_polynomials(table4):
    report = verify_against_printed(table4)
    assert report and all(ok for _, ok, _ in report), [r for r in report if not r[1]]
    assert len(printed_displays()) == 10


def test_provenance(table4):
    assert table4.provenance[line(3, "y")] == "vertex"
    assert table4.provenance[PlanePartition.parse("2 1")] in ("linear-solve", "symmetry")


def test_json(table4):
    js = table4.to_json()
    assert js["normalization"] == "average"
    assert len(js["entries"]) == sum(len(enumerate_pp(n)) for n in range(5))


def test_pieri_support(table4):
    # P_1 J~_pi lies in the span of the one-box children of pi
    for n in range(4):
        for pp in enumerate_pp(n):
            e = pieri_P1(table4, pp)
            assert e.exact
            assert {q for q, _ in e.terms} == {pp.add(b) for b in addable(pp)}


def test_pieri_box_squared(table4):
    e = pieri_P1(table4, PlanePartition.parse("1"))
    assert e.all_one()


def test_pieri_coefficients_not_all_one(table4):
    # the straight extension keeps coefficient 1, the corner children do not
    e = dict(pieri_P1(table4, line(2, "y")).terms)
    assert e[line(3, "y")] == RF_ONE
    corner = e[PlanePartition.parse("1 1 / 1")]
    assert corner == (2 * h1 - 4 * h2) / (3 * (h1 - h2))


def test_partitions():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert [len(partitions(n)) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]


def test_jack_oracle_known_values():
    # integral Jack polynomials in power sums
    assert classical_jack_oracle((2,)) == P1**2 + ALPHA * P21
    assert classical_jack_oracle((1, 1)) == P1**2 - P21
    assert classical_jack_oracle((2, 1)) == P1**3 + (ALPHA - 1) * P1 * P21 - ALPHA * P31


def test_schur_oracle():
    assert schur_oracle((2,)) == (P1**2 + P21) * Fraction(1, 2)
    assert schur_oracle((1, 1)) == (P1**2 - P21) * Fraction(1, 2)
    assert schur_oracle((2, 1)) == (P1**3 - P31) * Fraction(1, 3)


@pytest.mark.parametrize("n", range(2, 6))
def test_jack_orthogonal(n):
    P = _jack_P_table(n, "t2")
    keys = list(P)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            assert _alpha_inner(P[a], P[b], ALPHA).is_zero()


def test_jack_norm_weight2():
    # <p_mu, p_mu> = z_mu alpha^len(mu) applied to the oracle values above
    assert jack_norm((2,)) == 2 * ALPHA**2 * (1 + ALPHA)
    assert jack_norm((1, 1)) == 2 * ALPHA * (1 + ALPHA)


def test_one_layer():
    assert one_layer_partition(PlanePartition.parse("1 1 / 1")) == (2, 1)
    assert one_layer_partition(PlanePartition.parse("2")) is None


def test_specialize_drops_higher_generators():
    assert specialize_jack(gen(2, 2)).is_zero()
    assert specialize_jack(P1 * h2) == P1 * (-1 / (T * T))


def test_proportionality():
    assert proportionality(P1 * h1, P1) == h1
    assert proportionality(P1, P21) is None


def test_degeneration(table4):
    rows = degeneration_report(table4)
    assert len(rows) == 11
    assert all(r.schur_constant == RF_ONE for r in rows)
    jack = constant_per_weight(rows, "jack_constant")
    assert jack[1] == T and jack[2] == T**2 and jack[3] == T**3
    # the stabilizer-free orbit {(3,1), (2,1,1)} breaks uniformity at weight 4
    assert jack[4] is None
    odd = {r.partition: r.jack_constant for r in rows if r.jack_constant != T ** sum(r.partition)}
    assert set(odd) == {(3, 1), (2, 1, 1)}
    assert odd[(3, 1)] == (3 * T**6 + T**4) / (2 * (T**2 + 1))
    assert odd[(2, 1, 1)] == (T**6 + 3 * T**4) / (2 * (T**2 + 1))


@pytest.mark.slow
def test_level5_stretch():
    t = build_table(5)
    assert len(t.shapes(5)) == 24
    assert all(is_eigen(t, pp) for pp in enumerate_pp(5))
    assert s3_equivariance_failures(t) == []


def test_schur_literal_substitution(table4):
    # h1 = h2 = -1 forces h3 = 2; most shapes hit a pole there
    assert specialize_schur_literal(table4[PlanePartition.parse("1")]) == ("ok", gen(1, 1))
    assert specialize_schur_literal(table4[line(2, "y")])[0] == "pole"
    status, val = specialize_schur_literal(table4[line(2, "z")])
    assert status == "ok" and val.coeff(PMonomial.of((2, 2))) == Fraction(1, 9)
