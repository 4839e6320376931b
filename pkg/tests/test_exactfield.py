from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plane3jack.exactfield import (
    RF,
    RF_ONE,
    RF_ZERO,
    DegeneratePoleError,
    HPolynomial,
    PowerSeries,
    UPolynomial,
    URational,
    h1,
    h2,
    h3,
    kappa,
    permute_h,
    residue_at,
    series_exp,
    sigma,
)

from strategies import hpolys, rfuncs


def test_sigma_values():
    assert sigma(2) == -h1 * h1 - h1 * h2 - h2 * h2
    assert sigma(3) == -h1 * h1 * h2 - h1 * h2 * h2
    assert sigma(2)(1, -1) == -1
    assert sigma(1).is_zero()


def test_h3_canonical():
    assert (h1 + h2 + h3).is_zero()
    assert HPolynomial.from_h123({(0, 0, 1): 1}) == HPolynomial({(1, 0): -1, (0, 1): -1})


@pytest.mark.parametrize("n", range(-3, 6))
def test_kappa_product_form(n):
    prod = (n + h1 * h2) * (n + h1 * h3) * (n + h2 * h3)
    assert kappa(n) == -prod


def test_kappa_examples():
    assert kappa(0) == -sigma(3) ** 2
    assert kappa(1) == -(1 + sigma(2) + sigma(3) ** 2)


@given(hpolys(), hpolys(), hpolys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(rfuncs(), rfuncs())
def test_field_ops(x, y):
    assert (x + y) - y == x
    if not y.is_zero():
        assert (x / y) * y == x
        assert y * y.inverse() == RF_ONE


@given(rfuncs())
def test_json_roundtrip(x):
    assert RF.from_json(x.to_json()) == x


@given(rfuncs(), st.permutations([0, 1, 2]), st.permutations([0, 1, 2]))
def test_permutation_action(x, p, q):
    # relabelling twice equals relabelling by the composite
    comp = tuple(p[q[i]] for i in range(3))
    assert permute_h(permute_h(x, q), p) == permute_h(x, comp)


def test_residue_examples():
    u = UPolynomial.linear(RF_ZERO)  # u - 0
    f = URational(UPolynomial([sigma(3), RF_ONE]), u)
    assert residue_at(f, RF_ZERO) == sigma(3)
    g = URational(UPolynomial([RF_ONE]), UPolynomial.linear(h1))
    assert residue_at(g, h1) == RF_ONE
    p = URational(UPolynomial([0, 0, 1]))
    assert residue_at(p, h2) == RF_ZERO


def test_residue_higher_pole_is_error():
    d = UPolynomial.linear(h1) * UPolynomial.linear(h1)
    with pytest.raises(DegeneratePoleError):
        residue_at(URational(UPolynomial([RF_ONE]), d), h1)


@given(rfuncs(), rfuncs())
def test_residue_linear(a, b):
    den = UPolynomial.linear(h1) * UPolynomial.linear(h2)
    f = URational(UPolynomial([a, RF_ONE]), den)
    g = URational(UPolynomial([b]), den)
    assert residue_at(f + g, h1) == residue_at(f, h1) + residue_at(g, h1)


def test_series_exp():
    x = PowerSeries([RF_ZERO, h1.inverse()], 2)
    e = series_exp(x)
    assert e[0] == RF_ONE and e[1] == h1.inverse() and e[2] == h1.inverse() ** 2 / 2
    z = series_exp(PowerSeries([RF_ZERO], 3))
    assert z[0] == RF_ONE and all(z[k].is_zero() for k in (1, 2, 3))


def test_series_exp_needs_zero_constant():
    with pytest.raises(ValueError):
        series_exp(PowerSeries([RF_ONE], 2))


def test_evaluation():
    x = (h1 + 2 * h2) / (h1 - h2)
    assert x(3, 1) == Fraction(5, 2)
    with pytest.raises(ZeroDivisionError):
        x(1, 1)
