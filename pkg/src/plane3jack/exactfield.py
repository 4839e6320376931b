"""Exact arithmetic in the field Q(h1, h2, h3) with h1 + h2 + h3 = 0.

Every value is stored in the canonical coordinates (h1, h2); h3 is
eliminated as -h1 - h2 the moment it is created.  Polynomials are backed
by FLINT multivariate polynomials over Q, and rational functions are kept
reduced (gcd-free, denominator monic in deglex order) at all times, so
``==`` is a normal-form comparison.

The module also carries the small amount of one-variable machinery the
rest of the package needs: polynomials and rational functions in an
auxiliary variable ``u`` with coefficients in the field (for the
generating currents), residues at simple poles, and truncated power
series in ``z`` with an exact exponential.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import flint

__all__ = [
    "CTX",
    "HPolynomial",
    "RationalFunction",
    "RF",
    "h1",
    "h2",
    "h3",
    "sigma",
    "kappa",
    "UPolynomial",
    "URational",
    "PowerSeries",
    "residue_at",
    "series_exp",
    "DegeneratePoleError",
    "permute_h",
]

CTX = flint.fmpq_mpoly_ctx.get(("h1", "h2"), "deglex")
_H1, _H2 = CTX.gens()
_ZERO = CTX.from_dict({})
_ONE = CTX.from_dict({(0, 0): 1})


class DegeneratePoleError(ArithmeticError):
    """Raised when a residue is requested at a pole of order > 1."""


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, str):
        f = Fraction(c)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot convert {c!r} to an exact rational")


def _poly_from_scalar(c) -> flint.fmpq_mpoly:
    return CTX.from_dict({(0, 0): _to_fmpq(c)}) if c else _ZERO


class HPolynomial:
    """Polynomial in h1, h2 with rational coefficients (h3 already eliminated)."""

    __slots__ = ("_p",)

    def __init__(self, terms=None):
        if terms is None:
            self._p = _ZERO
        elif isinstance(terms, flint.fmpq_mpoly):
            self._p = terms
        elif isinstance(terms, dict):
            self._p = CTX.from_dict(
                {(int(a), int(b)): _to_fmpq(c) for (a, b), c in terms.items() if c}
            )
        else:
            self._p = _poly_from_scalar(terms)

    @classmethod
    def from_h123(cls, terms: dict) -> "HPolynomial":
        """Build from exponent triples (d1, d2, d3), substituting h3 = -h1 - h2."""
        h3 = -_H1 - _H2
        p = _ZERO
        for (a, b, c), coeff in terms.items():
            if coeff:
                p += _to_fmpq(coeff) * _H1**a * _H2**b * h3**c
        return cls(p)

    @property
    def terms(self) -> dict:
        return {
            k: Fraction(int(v.p), int(v.q)) for k, v in self._p.to_dict().items()
        }

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def degree(self) -> int:
        return self._p.total_degree() if not self._p.is_zero() else -1

    def __add__(self, other):
        return HPolynomial(self._p + _as_poly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return HPolynomial(self._p - _as_poly(other))

    def __rsub__(self, other):
        return HPolynomial(_as_poly(other) - self._p)

    def __neg__(self):
        return HPolynomial(-self._p)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return HPolynomial(self._p * _as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return HPolynomial(self._p**n)

    def __eq__(self, other):
        try:
            return self._p == _as_poly(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._p.to_dict().items(), key=lambda kv: kv[0])))

    def __repr__(self):
        return f"HPolynomial({self._p})"

    def __str__(self):
        return str(self._p)

    def to_json(self) -> list:
        return [
            [int(a), int(b), str(Fraction(int(c.p), int(c.q)))]
            for (a, b), c in sorted(self._p.to_dict().items())
        ]

    @classmethod
    def from_json(cls, data) -> "HPolynomial":
        return cls({(a, b): Fraction(c) for a, b, c in data})


def _as_poly(x) -> flint.fmpq_mpoly:
    if isinstance(x, HPolynomial):
        return x._p
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return _poly_from_scalar(x)
    raise TypeError(f"not a polynomial: {x!r}")


class RationalFunction:
    """Reduced quotient of two h-polynomials.

    Invariants: ``den`` is nonzero and monic in deglex order and
    ``gcd(num, den) == 1``; zero is stored as 0/1.
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num=0, den=None, *, _reduced=False):
        n = _coerce_poly(num)
        if den is None:
            d = _ONE
            _reduced = True
        else:
            d = _coerce_poly(den)
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            n, d = _reduce(n, d)
        self._n = n
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, n, d) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        obj._hash = None
        return obj

    # ----------------------------------------------------------------- access
    @property
    def num(self) -> HPolynomial:
        return HPolynomial(self._n)

    @property
    def den(self) -> HPolynomial:
        return HPolynomial(self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_constant(self) -> bool:
        return self._n.is_constant() and self._d.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        c = self._n.coefficient(0) if not self._n.is_zero() else flint.fmpq(0)
        d = self._d.coefficient(0)
        q = c / d
        return Fraction(int(q.p), int(q.q))

    # ------------------------------------------------------------- arithmetic
    def __add__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        if o._n.is_zero():
            return self
        if self._n.is_zero():
            return o
        if self._d == o._d:
            return RationalFunction(self._n + o._n, self._d)
        if o._d.is_one():
            return RationalFunction._raw(self._n + o._n * self._d, self._d)
        if self._d.is_one():
            return RationalFunction._raw(self._n * o._d + o._n, o._d)
        g = self._d.gcd(o._d)
        if g.is_one():
            return RationalFunction(self._n * o._d + o._n * self._d, self._d * o._d)
        a = o._d / g
        b = self._d / g
        return RationalFunction(self._n * a + o._n * b, self._d * a)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self._n, self._d)

    def __sub__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        if self._n.is_zero() or o._n.is_zero():
            return RF_ZERO
        if o._d.is_one() and o._n.is_constant():
            return RationalFunction._raw(self._n * o._n, self._d)
        if self._d.is_one() and self._n.is_constant():
            return RationalFunction._raw(o._n * self._n, o._d)
        # cross-cancel before multiplying keeps intermediate sizes down
        g1 = self._n.gcd(o._d)
        g2 = o._n.gcd(self._d)
        n = (self._n / g1) * (o._n / g2)
        d = (self._d / g2) * (o._d / g1)
        return RationalFunction(n, d, _reduced=True)._normalized_sign()

    __rmul__ = __mul__

    def _normalized_sign(self) -> "RationalFunction":
        lc = self._d.leading_coefficient()
        if lc == 1:
            return self
        return RationalFunction._raw(self._n / lc, self._d / lc)

    def inverse(self) -> "RationalFunction":
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction._raw(self._d, self._n)._normalized_sign()

    def __truediv__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self._n**k, self._d**k)

    def __eq__(self, other):
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self._n), str(self._d)))
        return self._hash

    def __bool__(self):
        return not self._n.is_zero()

    # -------------------------------------------------------------- utilities
    def __call__(self, a, b) -> Fraction:
        """Evaluate at h1 = a, h2 = b."""
        a = _to_fmpq(a)
        b = _to_fmpq(b)
        den = self._d(a, b)
        if den == 0:
            raise ZeroDivisionError("evaluation at a pole")
        v = self._n(a, b) / den
        return Fraction(int(v.p), int(v.q))

    def subs_h(self, new_h1: "RationalFunction", new_h2: "RationalFunction"):
        """Substitute h1 -> new_h1, h2 -> new_h2 (both rational functions)."""
        return _compose(self._n, new_h1, new_h2) / _compose(self._d, new_h1, new_h2)

    def permute(self, perm: Sequence[int]) -> "RationalFunction":
        """Relabel (h1, h2, h3) -> (h_perm[0], h_perm[1], h_perm[2]), 0-based."""
        return permute_h(self, perm)

    def __repr__(self):
        if self._d.is_one():
            return f"RF({self._n})"
        return f"RF(({self._n})/({self._d}))"

    def __str__(self):
        if self._d.is_one():
            return str(self._n)
        return f"({self._n})/({self._d})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(HPolynomial.from_json(data["num"]), HPolynomial.from_json(data["den"]))


def _coerce_poly(x) -> flint.fmpq_mpoly:
    if isinstance(x, RationalFunction):
        if not x._d.is_one():
            raise TypeError("expected a polynomial, got a proper rational function")
        return x._n
    return _as_poly(x)


def _reduce(n, d):
    if n.is_zero():
        return _ZERO, _ONE
    if not d.is_constant():
        g = n.gcd(d)
        if not g.is_one():
            n = n / g
            d = d / g
    lc = d.leading_coefficient()
    if lc != 1:
        n = n / lc
        d = d / lc
    return n, d


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return RationalFunction._raw(_poly_from_scalar(x), _ONE)
    if isinstance(x, HPolynomial):
        return RationalFunction._raw(x._p, _ONE)
    return None


def _compose(p, new_h1, new_h2):
    out = RF_ZERO
    # Horner would need a univariate view; terms are few so a direct sum is fine
    for (a, b), c in p.to_dict().items():
        out = out + RationalFunction._raw(CTX.from_dict({(0, 0): c}), _ONE) * new_h1**a * new_h2**b
    return out


RF = RationalFunction
RF_ZERO = RationalFunction._raw(_ZERO, _ONE)
RF_ONE = RationalFunction._raw(_ONE, _ONE)

h1 = RationalFunction._raw(_H1, _ONE)
h2 = RationalFunction._raw(_H2, _ONE)
h3 = RationalFunction._raw(-_H1 - _H2, _ONE)
_HS = (h1, h2, h3)


@lru_cache(maxsize=None)
def _perm_images(perm: tuple) -> tuple:
    return _HS[perm[0]], _HS[perm[1]]


def permute_h(x: RationalFunction, perm: Sequence[int]) -> RationalFunction:
    """Apply the relabelling h_i -> h_{perm[i]} (0-based) to ``x``.

    Because h3 = -h1 - h2 is preserved by any permutation, it is enough to
    send h1 and h2 to their images.
    """
    perm = tuple(perm)
    if perm == (0, 1, 2):
        return x
    a, b = _perm_images(perm)
    return x.subs_h(a, b)


def sigma(k: int) -> RationalFunction:
    """Elementary symmetric function of (h1, h2, h3); sigma(1) is identically 0."""
    if k == 1:
        return RF_ZERO
    if k == 2:
        return h1 * h2 + h1 * h3 + h2 * h3
    if k == 3:
        return h1 * h2 * h3
    raise ValueError("sigma(k) is defined for k in {1, 2, 3}")


def kappa(n) -> RationalFunction:
    """kappa(n) = -(n^3 + n^2 sigma_2 + sigma_3^2)."""
    n = RF(n) if not isinstance(n, RationalFunction) else n
    return -(n**3 + n**2 * sigma(2) + sigma(3) ** 2)


# --------------------------------------------------------------------------
# One-variable polynomials / rational functions in u over the h-field
# --------------------------------------------------------------------------


class UPolynomial:
    """Dense polynomial in u; ``coeffs[i]`` multiplies u**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [c if isinstance(c, RationalFunction) else _as_rf(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def linear(cls, root: RationalFunction) -> "UPolynomial":
        """u - root"""
        return cls([-_as_rf(root), RF_ONE])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> RationalFunction:
        return self.coeffs[-1]

    def __add__(self, other: "UPolynomial") -> "UPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (RF_ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (RF_ZERO,) * (n - len(other.coeffs))
        return UPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPolynomial):
            o = _as_rf(other)
            return UPolynomial([c * o for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UPolynomial([])
        out = [RF_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: RationalFunction) -> RationalFunction:
        acc = RF_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, s: RationalFunction) -> "UPolynomial":
        """Return p(u - s)."""
        result = UPolynomial([])
        base = UPolynomial([-_as_rf(s), RF_ONE])
        power = UPolynomial([RF_ONE])
        for c in self.coeffs:
            result = result + power * c
            power = power * base
        return result

    def divmod_linear(self, root: RationalFunction):
        """Synthetic division by (u - root): returns (quotient, remainder)."""
        if self.is_zero():
            return UPolynomial([]), RF_ZERO
        q = [RF_ZERO] * (len(self.coeffs) - 1)
        acc = RF_ZERO
        for i in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * root + self.coeffs[i]
            if i > 0:
                q[i - 1] = acc
        return UPolynomial(q), acc

    def __eq__(self, other):
        return isinstance(other, UPolynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"UPolynomial({list(self.coeffs)})"


class URational:
    """Rational function num(u)/den(u) with coefficients in the h-field."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPolynomial, den: UPolynomial | None = None):
        if den is None:
            den = UPolynomial([RF_ONE])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in u")
        self.num = num
        self.den = den

    def __mul__(self, other: "URational") -> "URational":
        return URational(self.num * other.num, self.den * other.den)

    def __add__(self, other: "URational") -> "URational":
        if self.den == other.den:
            return URational(self.num + other.num, self.den)
        return URational(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "URational") -> "URational":
        return self + URational(-other.num, other.den)

    def shift(self, s: RationalFunction) -> "URational":
        """Return f(u - s)."""
        return URational(self.num.shift(s), self.den.shift(s))

    def __call__(self, x: RationalFunction) -> RationalFunction:
        return self.num(x) / self.den(x)

    def expand_at_infinity(self, order: int) -> list:
        """Coefficients c_0..c_order with f(u) = sum c_k u^{-k} + O(u^{-order-1}).

        Requires deg num <= deg den.
        """
        dn, dd = self.num.degree(), self.den.degree()
        if dn > dd:
            raise ValueError("function has a pole at infinity")
        # reverse polynomials: f(1/w) = w^(dd-dn) * rev(num)(w) / rev(den)(w)
        rn = [RF_ZERO] * (dd - dn) + list(reversed(self.num.coeffs))
        rd = list(reversed(self.den.coeffs))
        inv_lead = rd[0].inverse()
        out = []
        for k in range(order + 1):
            acc = rn[k] if k < len(rn) else RF_ZERO
            for i in range(1, min(k, len(rd) - 1) + 1):
                acc = acc - rd[i] * out[k - i]
            out.append(acc * inv_lead)
        return out


def residue_at(f: URational, pole: RationalFunction) -> RationalFunction:
    """Residue of ``f`` at ``u = pole``; the pole must be at most simple."""
    pole = _as_rf(pole)
    num, den = f.num, f.den
    k = 0
    while True:
        q, r = den.divmod_linear(pole)
        if not r.is_zero():
            break
        den = q
        k += 1
    if k == 0:
        return RF_ZERO
    m = 0
    while m < k:
        q, r = num.divmod_linear(pole)
        if not r.is_zero():
            break
        num = q
        m += 1
    order = k - m
    if order <= 0:
        return RF_ZERO
    if order > 1:
        raise DegeneratePoleError(f"pole of order {order} at u = {pole}")
    for _ in range(m):
        den, _r = den.divmod_linear(pole)
    return num(pole) / den(pole)


# --------------------------------------------------------------------------
# Truncated power series in z
# --------------------------------------------------------------------------


class PowerSeries:
    """Power series sum_k coeffs[k] z^k known exactly up to z^order.

    Coefficients may be any ring elements supporting +, * and scaling by
    Fractions (RationalFunction or PPolynomial).  Products are truncated
    at the smaller of the two orders; nothing is silently extended.
    """

    __slots__ = ("coeffs", "order", "zero")

    def __init__(self, coeffs: Sequence, order: int, zero=RF_ZERO):
        cs = list(coeffs)[: order + 1]
        cs += [zero] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order
        self.zero = zero

    def __getitem__(self, k: int):
        if k > self.order:
            raise IndexError(f"coefficient z^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n, self.zero)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.order, self.zero)
        n = min(self.order, other.order)
        out = [self.zero] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if _is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(out, n, self.zero)

    def __repr__(self):
        return f"PowerSeries({self.coeffs}, order={self.order})"


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def series_exp(x: PowerSeries, one=None) -> PowerSeries:
    """exp(x) truncated at z^order via the finite sum of x^k / k!."""
    if not _is_zero(x.coeffs[0]):
        raise ValueError("series_exp needs a vanishing constant term")
    one = RF_ONE if one is None else one
    result = PowerSeries([one], x.order, x.zero)
    term = PowerSeries([one], x.order, x.zero)
    for k in range(1, x.order + 1):
        term = (term * x) * Fraction(1, k)
        result = result + term
    return result
