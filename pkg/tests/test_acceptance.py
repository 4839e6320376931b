"""The twelve acceptance criteria, one test each.

Each test records a PASS/FAIL line (printed in the terminal summary) and
then asserts.  Criteria that cannot hold as stated are marked xfail with
strict=True, so an unexpected pass is reported too; the analysis for each
lives in the decisions ledger.
"""

import time
from fractions import Fraction
from math import comb, factorial

import pytest

import displays
from conftest import CRITERIA
from plane3jack.diagrams import count_pp, enumerate_pp, macmahon_coefficients
from plane3jack.exactfield import RF_ONE, h1, h2, h3, sigma
from plane3jack.fockpoly import P_inner, Q, column_norm, gen, q_to_jack
from plane3jack.jack_solver import (
    Underdetermined,
    build_table,
    constant_per_weight,
    degeneration_report,
    pieri_P1,
    s3_equivariance_failures,
    verify_against_printed,
)
from plane3jack.operators import SparseOperator
from plane3jack.diagrams import line
from plane3jack.walgebra import central_c, central_c_kappa, gamma_fit
from plane3jack.yangian_rep import build_gauge_rep, commutant_search, verify_relations

S2, S3 = sigma(2), sigma(3)
C2 = -2 * (1 + S2 + S3 * S3)


def kappa(n):
    return -(n + h1 * h2) * (n + h1 * h3) * (n + h2 * h3)


def record(n, ok, detail=""):
    CRITERIA[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_c01_relations():
    t0 = time.time()
    report = verify_relations(build_gauge_rep(5, j_max=3), 3, 2)
    bad = [r for r in report if r["status"] == "fail"]
    checked = sum(r["status"] == "pass" for r in report)
    record(1, checked and not bad, f"{checked} relation instances exact at N=5, j<=3 in {time.time() - t0:.0f}s")


def test_c02_printed_jacks(table4):
    rows = [r for r in verify_against_printed(table4) if r[0].startswith("J[")]
    bad = [name for name, ok, _ in rows if not ok]
    record(2, len(rows) == 10 and not bad, f"{len(rows)} printed polynomials, mismatches: {bad}")


@pytest.mark.xfail(strict=True, reason="Q_{2,1} display denominator")
def test_c03_q_engine(table4):
    checks = {
        "Q_1": Q(1) == gen(1, 1) / h1,
        "Q_2": Q(2) == displays.Q2,
        "Q_3": Q(3) == displays.Q3,
        "Q_1,1": Q(1, 1) == displays.Q11,
        "Q_2,1 (rescaled)": Q(2, 1) == displays.Q21 * displays.Q21_FACTOR,
        "J[(2)]": q_to_jack(2) == table4[line(2, "y")],
        "J[(1,1)]": q_to_jack(2, hook=True) == table4[line(2, "x")],
        "Q_2,1": Q(2, 1) == displays.Q21,
    }
    bad = [k for k, ok in checks.items() if not ok]
    record(3, not bad, f"mismatches: {bad}" + (" (differs by (2+h1h3)/(2+h2h3))" if bad == ["Q_2,1"] else ""))


def test_c04_norms(bm5):
    ok = True
    for n in range(1, 5):
        want = RF_ONE
        for j in range(1, n):
            want = want * (j + 1) * (j + h2 * h3) / ((j * h1 - h2) * (j * h1 - h3))
        ok &= column_norm(n) == want
    for n in range(1, 4):
        want = RF_ONE * factorial(n)
        for j in range(1, n + 1):
            want = want * (C2 + 16 * (j - 1))
        ok &= P_inner(gen(2, 2) ** n, gen(2, 2) ** n) == want
    vac = bm5.rep.vacuum()
    for n in range(2, 5):
        v = bm5.a2(n).apply(bm5.a2(-n).apply(vac))
        ok &= v.vec == {0: -2 * comb(n + 1, n - 2) * (1 + S2 + S3 * S3)}
    record(4, ok, "column norms n<=4, <P22^n> n<=3, <a_{n,2}a_{-n,2}> n<=4")


def test_c05_central_charges():
    ok = (
        central_c(2) == 2 * kappa(1)
        and central_c(3) == 6 * kappa(1) * kappa(2)
        and central_c(4) == 144 * kappa(1) * kappa(2) * kappa(3) * kappa(-1) / (5 * kappa(1) + 22)
        and all(central_c(j) == central_c_kappa(j) for j in (2, 3, 4))
    )
    record(5, ok, "c_2, c_3, c_4")


@pytest.mark.xfail(strict=True, reason="printed central term of [a_{m,2}, a_{n,2}] is twice the matrix value")
def test_c06_gamma(bm5):
    fits = {jk: gamma_fit(bm5, *jk, mmax=3) for jk in ((1, 1), (1, 2), (2, 2))}
    half = gamma_fit(bm5, 2, 2, mmax=3, c0_scale=Fraction(1, 2))
    detail = ", ".join(f"gamma{jk}={f['gamma']} constant={f['constant']}" for jk, f in fits.items())
    detail += f"; (2,2) with halved central term: gamma={half['gamma']} constant={half['constant']}"
    record(6, all(f["constant"] for f in fits.values()), detail)


def test_c07_virasoro(bm5):
    basis = bm5.basis
    ok = True
    for L, c in ((bm5.L, -S2 - S3 * S3), (bm5.Lbar, RF_ONE)):
        for m in range(-2, 3):
            for n in range(-2, 3):
                rhs = L(m + n) * (m - n)
                if m + n == 0:
                    rhs = rhs + SparseOperator.scalar(basis, c * Fraction(m**3 - m, 12))
                d = L(m).comm(L(n)) - rhs
                ok &= bool(d.domain) and d.is_zero()
    record(7, ok, "L and Lbar, |m|,|n| <= 2")


def test_c08_commutant(rep4):
    names, basis = commutant_search(2, rep4, bilinear=True)
    ok = len(basis) == 1
    if ok:
        v = {names[i]: c for i, c in basis[0].items()}
        k = v["e_{2,0}"]
        want = {"e_{2,0}": RF_ONE, "e_{1,0}": -S3, "e_0e_0": -RF_ONE, "sum a_{-(k+2)}a_k": -2 * RF_ONE}
        ok = {n: c / k for n, c in v.items()} == want
    record(8, ok, f"{len(basis)} commutant vector(s) at weight 2")


@pytest.mark.xfail(strict=True, reason="coefficient 1 is incompatible with the S3-symmetric normalization")
def test_c09_pieri(table4):
    not_one = []
    for n in range(4):
        for pp in enumerate_pp(n):
            e = pieri_P1(table4, pp)
            if not e.all_one():
                not_one.append(str(pp))
    record(9, not not_one, f"shapes with a coefficient != 1: {not_one}")


@pytest.mark.xfail(strict=True, reason="no single weight-4 constant for the (3,1)/(2,1,1) orbit")
def test_c10_degeneration(table4):
    rows = degeneration_report(table4)
    jack = constant_per_weight(rows, "jack_constant")
    schur_ok = all(r.schur_constant == RF_ONE for r in rows)
    detail = "Jack constants " + ", ".join(f"w{w}: {c}" for w, c in sorted(jack.items())) + f"; Schur ok={schur_ok}"
    record(10, schur_ok and all(c is not None for c in jack.values()), detail)


def test_c11_macmahon():
    want = [1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500]
    counts = [count_pp(n) for n in range(11)]
    record(11, counts == macmahon_coefficients(10) == want, f"counts {counts}")


def test_c12_solver():
    t0 = time.time()
    try:
        t = build_table(4)
    except Underdetermined as exc:
        record(12, False, str(exc))
        return
    n4 = len(t.shapes(4))
    bad = s3_equivariance_failures(t)
    record(12, n4 == 13 and not bad, f"{n4} level-4 entries, S3 failures {len(bad)}, {time.time() - t0:.1f}s")
