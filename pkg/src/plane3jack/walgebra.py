"""W-algebra modes a_{n,k}, free 3D bosons b_{n,k} and their brackets.

The bracket of two modes with j, k > 1 comes from the structure constants
N and C (a terminating 4F3 sum).  Words are normal ordered by repeated
commutation, which gives vacuum expectation values.  ``gamma_fit``
compares the abstract brackets with the matrix modes of yangian_rep.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exactfield import RF_ONE, RF_ZERO, RationalFunction, _as_rf, kappa, sigma
from .fockpoly import form_norm

__all__ = [
    "OutOfAlgebra",
    "pochhammer",
    "falling",
    "gbinom",
    "hyper4F3",
    "structure_N",
    "structure_C",
    "central_c",
    "central_c_kappa",
    "WMode",
    "WWord",
    "commutator",
    "vacuum_expectation",
    "gamma_fit",
]


class OutOfAlgebra(ValueError):
    """A bracket needs a mode outside the generator ranges (a_{0,l>=3}, l > |n|)."""


def pochhammer(a, n: int):
    """(a)_n = a(a+1)...(a+n-1)."""
    out = 1
    for i in range(n):
        out = out * (a + i)
    return out


def falling(a, n: int):
    """[a]_n = a(a-1)...(a-n+1)."""
    out = 1
    for i in range(n):
        out = out * (a - i)
    return out


def gbinom(x, k: int):
    """Binomial coefficient with arbitrary (possibly negative) top entry."""
    if k < 0:
        return 0
    return Fraction(falling(x, k), factorial(k))


def hyper4F3(upper, lower, z=1):
    """Terminating 4F3 as a finite sum; some upper parameter must be a nonpositive integer."""
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    stops = [int(-a) for a in upper if a.denominator == 1 and a <= 0]
    if not stops:
        raise ValueError("4F3 does not terminate for these parameters")
    K = min(stops)
    total = Fraction(0)
    for k in range(K + 1):
        den = Fraction(1)
        for b in lower:
            den *= pochhammer(b, k)
        if den == 0:
            raise ZeroDivisionError("lower parameter hits a nonpositive integer before termination")
        num = Fraction(1)
        for a in upper:
            num *= pochhammer(a, k)
        total += num / den * Fraction(z) ** k / factorial(k)
    return total


def _check_jkl(j: int, k: int, l: int):
    if j < 2 or k < 2:
        raise ValueError("the structure constants are defined for j, k > 1")
    if not (0 <= l <= j + k - 2) or (j + k - l) % 2:
        raise ValueError(f"l={l} out of range for (j, k) = ({j}, {k})")


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def structure_N(j: int, k: int, l: int, m: int, n: int) -> Fraction:
    _check_jkl(j, k, l)
    if l == 0:
        return gbinom(m + j - 1, j + k - 1) if m + n == 0 else Fraction(0)
    t = j + k - l - 1
    pref = Fraction(1, factorial(t) * pochhammer(2 * l, t))
    total = Fraction(0)
    for s in range(t + 1):
        total += (
            (-1) ** s
            * comb(t, s)
            * falling(j + m - 1, t - s)
            * falling(j - m - 1, s)
            * falling(k + n - 1, s)
            * falling(k - n - 1, t - s)
        )
    return pref * total


def central_c(j: int) -> RationalFunction:
    """c_j from the explicit sigma expressions (j = 2, 3, 4)."""
    s2, s3 = sigma(2), sigma(3)
    a = 1 + s2 + s3 * s3
    b = 8 + 4 * s2 + s3 * s3
    if j == 2:
        return a * (-2)
    if j == 3:
        return a * b * 6
    if j == 4:
        c = 27 + 9 * s2 + s3 * s3
        d = -1 + s2 + s3 * s3
        return a * b * c * d * (-144) / (-17 + 5 * s2 + 5 * s3 * s3)
    raise ValueError("central charges are tabulated for j = 2, 3, 4")


def central_c_kappa(j: int) -> RationalFunction:
    """The same charges written through kappa(n)."""
    if j == 2:
        return kappa(1) * 2
    if j == 3:
        return kappa(1) * kappa(2) * 6
    if j == 4:
        return kappa(1) * kappa(2) * kappa(3) * kappa(-1) * 144 / (kappa(1) * 5 + 22)
    raise ValueError("central charges are tabulated for j = 2, 3, 4")


@lru_cache(maxsize=None)
def _structure_C_rational(j: int, k: int, l: int) -> Fraction:
    t = j + k - l - 2
    h = hyper4F3(
        [Fraction(1, 2), Fraction(1, 2), Fraction(-t, 2), Fraction(-(t + 1), 2)],
        [Fraction(3, 2) - j, Fraction(3, 2) - k, Fraction(1, 2) + l],
    )
    return Fraction(1, 2 * 4**t) * pochhammer(2 * l, t + 1) * h


def structure_C(j: int, k: int, l: int) -> RationalFunction:
    _check_jkl(j, k, l)
    if l == 0:
        if j != k:
            return RF_ZERO
        num = factorial(j - 1) ** 2 * factorial(2 * j - 1)
        den = 4 ** (j - 1) * _double_factorial(2 * j - 1) * _double_factorial(2 * j - 3)
        return central_c(j) * Fraction(num, den)
    return _as_rf(_structure_C_rational(j, k, l))


# --------------------------------------------------------------------------
# Modes and words
# --------------------------------------------------------------------------


class WMode(tuple):
    """a_{n,k} (or b_{n,k} when ``free``); (0, 2) is the distinguished zero mode."""

    def __new__(cls, n: int, k: int, free: bool = False):
        if not ((n != 0 and 1 <= k <= abs(n)) or (n == 0 and k == 2 and not free)):
            raise OutOfAlgebra(f"mode ({n}, {k}) is outside the generator range")
        return super().__new__(cls, (n, k, free))

    n = property(lambda self: self[0])
    k = property(lambda self: self[1])
    free = property(lambda self: self[2])

    def annihilates_vacuum(self) -> bool:
        return self.n >= 0

    def __repr__(self):
        return f"{'b' if self.free else 'a'}({self.n},{self.k})"


class WWord:
    """scalar * product of modes (leftmost acts last)."""

    __slots__ = ("modes", "scalar")

    def __init__(self, modes, scalar=RF_ONE):
        self.modes = tuple(modes)
        self.scalar = _as_rf(scalar)

    @classmethod
    def of(cls, *pairs, free: bool = False) -> "WWord":
        return cls([WMode(n, k, free) for n, k in pairs])

    @property
    def weight(self) -> int:
        return sum(m.n for m in self.modes)

    def is_normal_ordered(self) -> bool:
        seen_ann = False
        for m in self.modes:
            if m.n >= 0:
                seen_ann = True
            elif seen_ann:
                return False
        return True

    def __repr__(self):
        return f"({self.scalar})*" + "".join(map(repr, self.modes))


def _mode_if_valid(n: int, l: int):
    try:
        return WMode(n, l)
    except OutOfAlgebra:
        return None


def commutator(a: WMode, b: WMode, c0_scale=1) -> dict:
    """[a, b] as {mode or None: coefficient}; the key None is the central unit.

    ``c0_scale`` multiplies the central (l = 0) part of the j, k > 1 bracket;
    it is 1 for the printed structure constants.
    """
    if a.free or b.free:
        if not (a.free and b.free):
            raise ValueError("cannot bracket a free boson with a W mode")
        if a.n + b.n == 0 and a.k == b.k:
            return {None: form_norm(abs(a.n), a.k) * a.n}
        return {}
    j, k, m, n = a.k, b.k, a.n, b.n
    if j == 1 and k == 1:
        return {None: _as_rf(m)} if m + n == 0 else {}
    if j == 1 or k == 1:
        return {}
    out: dict = {}
    for l in range(j + k - 2, -1, -1):
        if (j + k - l) % 2:
            continue
        Nv = structure_N(j, k, l, m, n)
        if Nv == 0:
            continue
        coeff = structure_C(j, k, l) * (Nv * Fraction(factorial(j) * factorial(k), factorial(l)))
        if coeff.is_zero():
            continue
        if l == 0:
            out[None] = out.get(None, RF_ZERO) + coeff * c0_scale
            continue
        mode = _mode_if_valid(m + n, l)
        if mode is None:
            raise OutOfAlgebra(f"[a({m},{j}), a({n},{k})] needs a({m + n},{l})")
        out[mode] = out.get(mode, RF_ZERO) + coeff
    return {key: v for key, v in out.items() if not v.is_zero()}


def vacuum_expectation(w: WWord, c0_scale=1) -> RationalFunction:
    """<0| w |0> by normal ordering; annihilators and a_{0,2} kill the vacuum."""
    if w.weight != 0:
        raise ValueError(f"unbalanced word of weight {w.weight}")
    return _vev(w.modes, c0_scale) * w.scalar


@lru_cache(maxsize=None)
def _vev(modes: tuple, c0_scale) -> RationalFunction:
    if not modes:
        return RF_ONE
    if modes[-1].annihilates_vacuum() or modes[0].n < 0:
        return RF_ZERO
    # move the first annihilator that has a creator to its right
    for i in range(len(modes) - 1):
        a, b = modes[i], modes[i + 1]
        if a.n >= 0 and b.n < 0:
            swapped = modes[:i] + (b, a) + modes[i + 2 :]
            total = _vev(swapped, c0_scale)
            for mode, c in commutator(a, b, c0_scale).items():
                rest = modes[:i] + ((mode,) if mode is not None else ()) + modes[i + 2 :]
                total = total + _vev(rest, c0_scale) * c
            return total
    return RF_ZERO


# --------------------------------------------------------------------------
# Cross-validation against matrices
# --------------------------------------------------------------------------


def _matrix_mode(bm, mode: WMode):
    if mode.k == 1:
        return bm.a1(mode.n)
    if mode.k == 2:
        return bm.a2(mode.n)
    raise OutOfAlgebra(f"no matrix realization of {mode!r}")


def _ratio(lhs, rhs):
    """gamma with lhs = gamma * rhs blockwise, None if both vanish, False if not proportional."""
    gamma = None
    for L in sorted(lhs.blocks.keys() & rhs.blocks.keys()):
        A, B = lhs.blocks[L], rhs.blocks[L]
        for j in range(A.ncols):
            ca, cb = A.cols[j], B.cols[j]
            if ca.keys() != cb.keys():
                return False
            for i, x in ca.items():
                g = x / cb[i]
                if gamma is None:
                    gamma = g
                elif g != gamma:
                    return False
    return gamma


def gamma_fit(bm, j: int, k: int, mmax: int = 3, c0_scale=1) -> dict:
    """Fit one constant per (j, k) between printed brackets and matrix commutators.

    Each pair (m, n) with both modes in range and the bracket inside the
    algebra and inside the truncation contributes a ratio.  The result
    lists per-pair ratios ('zero' when both sides vanish, 'skipped' with a
    reason otherwise) and ``constant`` = whether all finite ratios agree.
    """
    from .operators import SparseOperator

    pairs = []
    for m in range(-mmax, mmax + 1):
        for n in range(-mmax, mmax + 1):
            if m == 0 or n == 0 or abs(m) < j or abs(n) < k:
                continue
            pairs.append((m, n))
    report = {"j": j, "k": k, "pairs": [], "gamma": None, "constant": True}
    gammas = []
    for m, n in pairs:
        a, b = WMode(m, j), WMode(n, k)
        entry = {"m": m, "n": n}
        try:
            expr = commutator(a, b, c0_scale)
            A, B = _matrix_mode(bm, a), _matrix_mode(bm, b)
            lhs = A @ B - B @ A
            rhs = SparseOperator.zero(bm.basis, lhs.degree, domain=lhs.domain)
            for mode, c in expr.items():
                term = SparseOperator.scalar(bm.basis, c, domain=lhs.domain) if mode is None else _matrix_mode(bm, mode) * c
                rhs = rhs + term
        except OutOfAlgebra as exc:
            entry["status"] = f"skipped: {exc}"
            report["pairs"].append(entry)
            continue
        if not (lhs.blocks.keys() & rhs.blocks.keys()):
            entry["status"] = "skipped: truncation"
            report["pairs"].append(entry)
            continue
        g = _ratio(lhs, rhs)
        if g is None:
            entry["status"] = "zero"
        elif g is False:
            entry["status"] = "not proportional"
            report["constant"] = False
        else:
            entry["status"] = "ratio"
            entry["gamma"] = str(g)
            gammas.append(g)
        report["pairs"].append(entry)
    if gammas:
        report["gamma"] = str(gammas[0])
        if any(g != gammas[0] for g in gammas):
            report["constant"] = False
    return report
