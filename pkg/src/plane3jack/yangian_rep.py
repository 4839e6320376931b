"""The affine Yangian of gl(1) acting on plane partitions, as exact matrices.

States |pi> are normalised in a rational gauge: square roots never appear.
Fix a total order on boxes (``box_order_key``).  Adding the box b to pi
multiplies by

    e(pi -> pi+b) = prod_{c in pi, c after b} phi(h_b - h_c)

and the lowering coefficient is f(pi+b -> pi) = -E^2(pi -> pi+b) / e(pi -> pi+b),
with E^2 the residue of psi_pi(u) at u = h_b divided by sigma3.  The
products e*f are those of the symmetric (square-root) normalisation, and the
ratio of the two paths around every square pi -> pi+a+b is phi(h_b - h_a),
which is what the quadratic e-relation requires.  Along a straight line of
boxes every e-coefficient is 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .diagrams import PlanePartition, addable, box_weight, removable
from .exactfield import (
    RF_ONE,
    RF_ZERO,
    DegeneratePoleError,
    PowerSeries,
    RationalFunction,
    UPolynomial,
    URational,
    _as_rf,
    h1,
    h2,
    h3,
    series_exp,
    sigma,
)
from .linalg import SparseMatrix, nullspace, rank, solve
from .operators import LevelBasis, SparseOperator, State

__all__ = [
    "phi",
    "psi0",
    "PsiFunction",
    "psi_function",
    "amplitude_sq",
    "box_order_key",
    "gauge_e",
    "gauge_f",
    "GaugeRep",
    "build_gauge_rep",
    "verify_relations",
    "gram",
    "norm",
    "BosonModes",
    "boson_modes",
    "commutant_search",
    "reduce_e_bracket",
    "EWord",
]

_H = (h1, h2, h3)
_S2 = sigma(2)
_S3 = sigma(3)


def phi(u_shift=RF_ZERO) -> URational:
    """phi(u - s) = prod (u - s + h_i) / prod (u - s - h_i) as a rational function of u."""
    s = _as_rf(u_shift)
    num = UPolynomial([RF_ONE])
    den = UPolynomial([RF_ONE])
    for h in _H:
        num = num * UPolynomial.linear(s - h)
        den = den * UPolynomial.linear(s + h)
    return URational(num, den)


def psi0() -> URational:
    """(u + sigma3) / u, i.e. the vacuum current with psi_0 = 1."""
    return URational(UPolynomial([_S3, RF_ONE]), UPolynomial([RF_ZERO, RF_ONE]))


class PsiFunction:
    """psi_pi(u) kept as a product of linear factors in u.

    ``zeros`` and ``poles`` are the roots of numerator and denominator
    after cancelling common roots; their counts agree, so psi -> 1 at
    infinity.
    """

    __slots__ = ("zeros", "poles")

    def __init__(self, zeros, poles):
        zs = list(zeros)
        ps = []
        for p in poles:
            try:
                zs.remove(p)
            except ValueError:
                ps.append(p)
        self.zeros = tuple(zs)
        self.poles = tuple(ps)
        if len(self.zeros) != len(self.poles):
            raise ValueError("psi must tend to 1 at infinity")

    def as_urational(self) -> URational:
        num = UPolynomial([RF_ONE])
        den = UPolynomial([RF_ONE])
        for z in self.zeros:
            num = num * UPolynomial.linear(z)
        for p in self.poles:
            den = den * UPolynomial.linear(p)
        return URational(num, den)

    def __call__(self, u):
        u = _as_rf(u)
        val = RF_ONE
        for z in self.zeros:
            val = val * (u - z)
        for p in self.poles:
            val = val / (u - p)
        return val

    def residue(self, pole) -> RationalFunction:
        pole = _as_rf(pole)
        k = self.poles.count(pole)
        if k == 0:
            return RF_ZERO
        if k > 1:
            raise DegeneratePoleError(f"pole of order {k} at u = {pole}")
        val = RF_ONE
        for z in self.zeros:
            val = val * (pole - z)
        for p in self.poles:
            if p != pole:
                val = val / (pole - p)
        return val

    def expansion(self, order: int) -> list:
        """c_0..c_order with psi(u) = sum_k c_k u^{-k}, via log psi = sum_k (P_k - Z_k) u^{-k} / k."""
        logs = [RF_ZERO]
        zp = list(self.zeros)
        pp = list(self.poles)
        for k in range(1, order + 1):
            acc = RF_ZERO
            for i in range(len(pp)):
                acc = acc + pp[i] - zp[i]
            logs.append(acc * Fraction(1, k))
            pp = [p * q for p, q in zip(pp, self.poles)]
            zp = [z * q for z, q in zip(zp, self.zeros)]
        return series_exp(PowerSeries(logs, order)).coeffs

    def mode(self, j: int) -> RationalFunction:
        """Eigenvalue of psi_j: psi(u) = 1 + sigma3 sum_j psi_j u^{-j-1}."""
        return self.expansion(j + 1)[j + 1] / _S3


@lru_cache(maxsize=None)
def psi_function(pp: PlanePartition) -> PsiFunction:
    zeros = [-_S3]
    poles = [RF_ZERO]
    for b in pp.boxes():
        hb = box_weight(b)
        zeros += [hb - h for h in _H]
        poles += [hb + h for h in _H]
    return PsiFunction(zeros, poles)


@lru_cache(maxsize=None)
def amplitude_sq(pp: PlanePartition, b) -> RationalFunction:
    """E^2(pi -> pi + b) = res_{u = h_b} psi_pi(u) / sigma3."""
    return psi_function(pp).residue(box_weight(b)) / _S3


def box_order_key(b):
    """Total order on boxes used by the gauge: by level, then y before x before z."""
    x, y, z = b
    return (x + y + z, -y, -x, -z)


def _phi_value(v: RationalFunction) -> RationalFunction:
    num = den = RF_ONE
    for h in _H:
        num = num * (v + h)
        den = den * (v - h)
    return num / den


@lru_cache(maxsize=None)
def gauge_e(pp: PlanePartition, b) -> RationalFunction:
    """Raising coefficient (at j = 0) for pi -> pi + b in the rational gauge."""
    kb = box_order_key(b)
    hb = box_weight(b)
    out = RF_ONE
    for c in pp.boxes():
        if box_order_key(c) > kb:
            out = out * _phi_value(hb - box_weight(c))
    return out


@lru_cache(maxsize=None)
def gauge_f(pp: PlanePartition, b) -> RationalFunction:
    """Lowering coefficient (at j = 0) for pi -> pi - b."""
    smaller = pp.remove(b)
    return -amplitude_sq(smaller, b) / gauge_e(smaller, b)


@lru_cache(maxsize=None)
def norm(pp: PlanePartition) -> RationalFunction:
    """<pi, pi> in the gauge basis: product of E^2 / e^2 along any building path."""
    if len(pp) == 0:
        return RF_ONE
    b = removable(pp)[0]
    smaller = pp.remove(b)
    e = gauge_e(smaller, b)
    return norm(smaller) * amplitude_sq(smaller, b) / (e * e)


class GaugeRep:
    """Matrices of e_j, f_j, psi_j on levels 0..N, built lazily and cached."""

    def __init__(self, N: int, j_max: int = 3):
        if N < 1:
            raise ValueError("level cutoff N must be at least 1")
        self.N = N
        self.j_max = j_max
        self.basis = LevelBasis(N)
        self._cache: dict = {}

    def _raise_block(self, L: int, j: int) -> SparseMatrix:
        src = self.basis.levels[L]
        m = SparseMatrix(self.basis.dim(L + 1), len(src))
        for col, pp in enumerate(src):
            for b in addable(pp):
                m.set(self.basis.index(pp.add(b)), col, box_weight(b) ** j * gauge_e(pp, b))
        return m

    def _lower_block(self, L: int, j: int) -> SparseMatrix:
        src = self.basis.levels[L]
        m = SparseMatrix(self.basis.dim(L - 1), len(src))
        for col, pp in enumerate(src):
            for b in removable(pp):
                m.set(self.basis.index(pp.remove(b)), col, box_weight(b) ** j * gauge_f(pp, b))
        return m

    def e(self, j: int) -> SparseOperator:
        key = ("e", j)
        if key not in self._cache:
            blocks = {L: self._raise_block(L, j) for L in range(self.N)}
            self._cache[key] = SparseOperator(self.basis, 1, blocks, f"e{j}")
        return self._cache[key]

    def f(self, j: int) -> SparseOperator:
        key = ("f", j)
        if key not in self._cache:
            blocks = {L: self._lower_block(L, j) for L in range(self.N + 1)}
            self._cache[key] = SparseOperator(self.basis, -1, blocks, f"f{j}")
        return self._cache[key]

    def psi(self, j: int) -> SparseOperator:
        key = ("psi", j)
        if key not in self._cache:
            op = SparseOperator.diagonal(self.basis, lambda pp: psi_function(pp).mode(j))
            op.name = f"psi{j}"
            self._cache[key] = op
        return self._cache[key]

    def identity(self) -> SparseOperator:
        return SparseOperator.scalar(self.basis, RF_ONE)

    def vacuum(self) -> State:
        return self.basis.state(PlanePartition(()))

    def state(self, pp: PlanePartition, coeff=RF_ONE) -> State:
        return self.basis.state(pp, coeff)

    def apply_word(self, word, state: State) -> State:
        """Apply a word of generators, rightmost first; letters are ('e'|'f'|'psi', j)."""
        for kind, j in reversed(list(word)):
            state = getattr(self, kind)(j).apply(state)
        return state


def build_gauge_rep(N: int = 5, j_max: int = 3) -> GaugeRep:
    return GaugeRep(N, j_max)


# --------------------------------------------------------------------------
# relations
# --------------------------------------------------------------------------


def _witness(lhs: SparseOperator):
    for L in sorted(lhs.blocks):
        for i, j, x in lhs.blocks[L].nonzero_entries():
            return {
                "level": L,
                "witness_state": str(lhs.basis.levels[L][j]),
                "image_state": str(lhs.basis.levels[L + lhs.degree][i]),
                "residual": str(x),
            }
    return None


def _record(report, rid, params, op: SparseOperator, expected=None):
    lhs = op if expected is None else op - expected
    w = _witness(lhs)
    report.append(
        {
            "relation_id": rid,
            "params": list(params),
            "levels": lhs.domain,
            "status": "pass" if w is None and lhs.domain else ("fail" if w else "untestable"),
            "witness": w,
        }
    )


def _cubic(rep: GaugeRep, gen, j, k, sign):
    """Left side of the cubic e-e (sign=-1) or f-f (sign=+1) relation."""
    X = gen
    s = (
        X(j + 3).comm(X(k))
        - X(j + 2).comm(X(k + 1)) * 3
        + X(j + 1).comm(X(k + 2)) * 3
        - X(j).comm(X(k + 3))
        + X(j + 1).comm(X(k)) * _S2
        - X(j).comm(X(k + 1)) * _S2
    )
    return s + X(j).anticomm(X(k)) * (_S3 * sign)


def _cubic_psi(rep: GaugeRep, gen, j, k, sign):
    P = rep.psi
    s = (
        P(j + 3).comm(gen(k))
        - P(j + 2).comm(gen(k + 1)) * 3
        + P(j + 1).comm(gen(k + 2)) * 3
        - P(j).comm(gen(k + 3))
        + P(j + 1).comm(gen(k)) * _S2
        - P(j).comm(gen(k + 1)) * _S2
    )
    return s + P(j).anticomm(gen(k)) * (_S3 * sign)


def verify_relations(rep: GaugeRep, j_max: int | None = None, serre_max: int = 2) -> list:
    """Check every defining relation as an exact matrix identity.

    Returns a list of records {relation_id, params, levels, status, witness}.
    Levels are those on which every factor of the relation is representable.
    """
    jm = rep.j_max if j_max is None else j_max
    report: list = []
    for j in range(jm + 1):
        for k in range(jm + 1):
            _record(report, "psi_psi", (j, k), rep.psi(j).comm(rep.psi(k)))
            _record(report, "cubic_ee", (j, k), _cubic(rep, rep.e, j, k, -1))
            _record(report, "cubic_ff", (j, k), _cubic(rep, rep.f, j, k, +1))
            _record(report, "e_f", (j, k), rep.e(j).comm(rep.f(k)), rep.psi(j + k))
            _record(report, "cubic_psi_e", (j, k), _cubic_psi(rep, rep.e, j, k, -1))
            _record(report, "cubic_psi_f", (j, k), _cubic_psi(rep, rep.f, j, k, +1))
    for j in range(jm + 1):
        for i, coef in ((0, 0), (1, 0), (2, 2)):
            _record(report, "boundary_e", (i, j), rep.psi(i).comm(rep.e(j)), rep.e(j) * coef)
            _record(report, "boundary_f", (i, j), rep.psi(i).comm(rep.f(j)), rep.f(j) * (-coef))
    seen = set()
    for t in _triples(serre_max):
        key = tuple(sorted(t))
        if key in seen:
            continue
        seen.add(key)
        for name, X in (("serre_e", rep.e), ("serre_f", rep.f)):
            acc = None
            for a, b, c in permutations(key):
                term = X(a).comm(X(b).comm(X(c + 1)))
                acc = term if acc is None else acc + term
            _record(report, name, key, acc)
    return report


def _triples(m):
    return [(a, b, c) for a in range(m + 1) for b in range(m + 1) for c in range(m + 1)]


# --------------------------------------------------------------------------
# quadratic form
# --------------------------------------------------------------------------


class EWord(tuple):
    """Word e_{j1} e_{j2} ... e_{jk}; acts on a state rightmost letter first."""

    def act(self, rep: GaugeRep, state: State) -> State:
        for j in reversed(self):
            state = rep.e(j).apply(state)
        return state

    def adjoint_act(self, rep: GaugeRep, state: State) -> State:
        """Action of a~(word) = (-f_{jk}) ... (-f_{j1}); the letter e_{j1} is applied first."""
        for j in self:
            state = rep.f(j).apply(state) * (-RF_ONE)
        return state


def _words(n: int, jmax: int):
    """Words of length n in e_0..e_jmax, by total index then lexicographically."""
    out = [()]
    for _ in range(n):
        out = [w + (j,) for w in out for j in range(jmax + 1)]
    return sorted(out, key=lambda w: (sum(w), w))


def build_words(rep: GaugeRep, n: int) -> dict:
    """Express each basis state of level n as a combination of e-words on |0>.

    Returns {pp: [(coeff, EWord), ...]}.  Words are chosen greedily in a
    fixed order until they span the level.
    """
    dim = rep.basis.dim(n)
    chosen, images = [], []
    for w in _words(n, n):
        img = EWord(w).act(rep, rep.vacuum())
        trial = images + [img.vec]
        m = SparseMatrix(dim, len(trial), trial)
        if rank(m) == len(trial):
            chosen.append(EWord(w))
            images.append(img.vec)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise ArithmeticError(f"e-words do not span level {n}")
    m = SparseMatrix(dim, dim, images)
    out = {}
    for i, pp in enumerate(rep.basis.levels[n]):
        x = solve(m, {i: RF_ONE})
        out[pp] = [(x[k], chosen[k]) for k in sorted(x)]
    return out


def gram(rep: GaugeRep, n: int) -> SparseMatrix:
    """Gram matrix <pi', pi> = <0| a~(y) x |0> of the level-n gauge basis.

    x and y are the e-word combinations building |pi> and |pi'>; a~ maps
    e_j to -f_j and reverses products.
    """
    words = build_words(rep, n)
    levels = rep.basis.levels[n]
    g = SparseMatrix(len(levels), len(levels))
    for col, pp in enumerate(levels):
        st = rep.state(pp)
        for row, qq in enumerate(levels):
            acc = RF_ZERO
            for c, w in words[qq]:
                val = w.adjoint_act(rep, st).vec.get(0, RF_ZERO)
                acc = acc + c * val
            g.set(row, col, acc)
    return g


# --------------------------------------------------------------------------
# Boson modes and Virasoro operators
# --------------------------------------------------------------------------


def _ad_power(x: SparseOperator, y: SparseOperator, k: int) -> SparseOperator:
    for _ in range(k):
        y = x.comm(y)
    return y


class BosonModes:
    """a_{n,1}, a_{n,2}, L_n and Lbar_n built from the Yangian generators.

    ``a2_zero`` selects the zero mode used in the (2,2) commutator:
    'bracket' is 2L_0 - 2Lbar_0 = psi_2 - 2 sum_j a_{-j} a_j, 'single'
    is psi_2 - sum_j a_{-j} a_j.
    """

    def __init__(self, rep: GaugeRep):
        self.rep = rep
        self.basis = rep.basis
        self.N = rep.N
        self._cache: dict = {}

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def a1(self, n: int) -> SparseOperator:
        """a_{n,1}; a_{0,1} = 0 in this module."""
        rep = self.rep
        if n == 0:
            return SparseOperator.zero(self.basis, 0)
        if n < 0:
            m = -n
            return self._cached(
                ("a1", n),
                lambda: _ad_power(rep.e(1), rep.e(0), m - 1) * Fraction(1, factorial(m - 1)),
            )
        return self._cached(
            ("a1", n),
            lambda: _ad_power(rep.f(1), rep.f(0), n - 1) * Fraction(-1, factorial(n - 1)),
        )

    def L(self, n: int) -> SparseOperator:
        rep = self.rep

        def build():
            if n == 0:
                return rep.psi(2) * Fraction(1, 2)
            if n == -1:
                return rep.e(1)
            if n == 1:
                return -rep.f(1)
            if n == -2:
                return (rep.e(2).comm(rep.e(0)) - rep.e(1).comm(rep.e(0)) * _S3) * Fraction(1, 2)
            if n == 2:
                return (rep.f(2).comm(rep.f(0)) - rep.f(1).comm(rep.f(0)) * _S3) * Fraction(-1, 2)
            k = abs(n) - 2
            base = self.L(-2 if n < 0 else 2)
            gen = rep.e(1) if n < 0 else rep.f(1)
            return _ad_power(gen, base, k) * Fraction(1, factorial(k))

        return self._cached(("L", n), build)

    def Lbar(self, n: int) -> SparseOperator:
        """(1/2) sum_{i+j=n} :a_i a_j: assembled level by level (finite on each level)."""

        def build():
            blocks = {}
            for L in range(self.N + 1):
                if L - n > self.N:
                    continue
                tgt = L - n
                acc = SparseMatrix(self.basis.dim(tgt), self.basis.dim(L))
                ok = True
                r_lo = -((-n) // 2)  # ceil(n/2)
                for r in range(r_lo, L + 1):
                    l = n - r
                    if r == 0 or l == 0:
                        continue
                    w = Fraction(1, 2) if l == r else Fraction(1)
                    ar = self.a1(r).blocks.get(L)
                    al = self.a1(l).blocks.get(L - r)
                    if ar is None or al is None:
                        ok = False
                        break
                    acc = acc + (al @ ar) * w
                if ok:
                    blocks[L] = acc
            return SparseOperator(self.basis, -n, blocks, f"Lbar{n}")

        return self._cached(("Lbar", n), build)

    def a2(self, n: int, zero_mode: str = "bracket") -> SparseOperator:
        """a_{n,2} = 2 L_n - 2 Lbar_n; for n = 0 see the class docstring."""
        if n == 0 and zero_mode == "single":
            return self._cached(("a2", 0, "single"), lambda: self.rep.psi(2) - self.Lbar(0))
        return self._cached(("a2", n), lambda: (self.L(n) - self.Lbar(n)) * 2)

    def a_minus22_literal(self) -> SparseOperator:
        """[e2,e0] - sigma3[e1,e0] - e0^2 - 2 sum_{n>=1} a_{-(n+2),1} a_{n,1}, block by block."""

        def build():
            rep = self.rep
            head = rep.e(2).comm(rep.e(0)) - rep.e(1).comm(rep.e(0)) * _S3 - rep.e(0) @ rep.e(0)
            blocks = {}
            for L, m in head.blocks.items():
                acc = m
                ok = True
                for k in range(1, L + 1):
                    ar = self.a1(k).blocks.get(L)
                    al = self.a1(-(k + 2)).blocks.get(L - k)
                    if ar is None or al is None:
                        ok = False
                        break
                    acc = acc - (al @ ar) * 2
                if ok:
                    blocks[L] = acc
            return SparseOperator(self.basis, 2, blocks, "a_-22")

        return self._cached(("a-22lit",), build)


def boson_modes(rep: GaugeRep) -> BosonModes:
    return BosonModes(rep)


# --------------------------------------------------------------------------
# commutant search
# --------------------------------------------------------------------------


def commutant_search(weight: int, rep: GaugeRep, *, bilinear: bool = False, modes=None):
    """Weight-``weight`` combinations commuting with the available a_{m,1}.

    Candidates are e_{n,0} = [e_n, e_0] and e_m e_n (m <= n) with m + n
    equal to ``weight`` - 2 shifted appropriately (creation degree 2), and,
    when ``bilinear`` is set, the normal-ordered sums
    sum_k a_{-(k+d),1} a_{k,1} for d = 1, 2.  Returns (names, basis) where
    basis is a list of coefficient dicts over the candidate names.
    """
    bm = BosonModes(rep)
    cands = []
    # degree-2 e-bilinears with total spectral index `weight`
    for n in range(1, weight + 1):
        cands.append((f"e_{{{n},0}}", rep.e(n).comm(rep.e(0))))
    for m in range(weight + 1):
        for n in range(m, weight + 1):
            if m + n <= weight:
                cands.append((f"e_{m}e_{n}", rep.e(m) @ rep.e(n)))
    if bilinear:
        cands.append(("sum a_{-(k+2)}a_k", _normal_sum(bm, 2)))
    if modes is None:
        modes = [m for m in range(-3, 4) if m != 0]
    names = [c[0] for c in cands]
    # each candidate's commutator with each mode, flattened to a column
    columns = []
    for _, op in cands:
        col = {}
        for m in modes:
            c = op.comm(bm.a1(m))
            for L in sorted(c.blocks):
                for i, j, x in c.blocks[L].nonzero_entries():
                    col[(m, L, i, j)] = x
        columns.append(col)
    keys = sorted({k for col in columns for k in col})
    index = {k: r for r, k in enumerate(keys)}
    mat = SparseMatrix(len(keys), len(columns), [{index[k]: v for k, v in col.items()} for col in columns])
    basis = nullspace(mat)
    return names, basis


def _normal_sum(bm: BosonModes, d: int) -> SparseOperator:
    blocks = {}
    for L in range(bm.N + 1):
        if L + d > bm.N:
            continue
        acc = SparseMatrix(bm.basis.dim(L + d), bm.basis.dim(L))
        for k in range(1, L + 1):
            acc = acc + bm.a1(-(k + d)).blocks[L - k] @ bm.a1(k).blocks[L]
        blocks[L] = acc
    return SparseOperator(bm.basis, d, blocks)


# --------------------------------------------------------------------------
# reduction of [e_j, e_k]
# --------------------------------------------------------------------------


def reduce_e_bracket(j: int, k: int) -> dict:
    """Write e_{j,k} = [e_j, e_k] (j > k >= 0) in the basis e_{n,0}, e_m e_n (m <= n).

    Uses the cubic e-relation with j' + k' = j + k - 3, applied recursively.
    Keys of the result are ('b', n) for e_{n,0} and ('p', m, n) for e_m e_n.
    """
    if not j > k >= 0:
        raise ValueError("need j > k >= 0")
    return dict(_reduce_bracket(j, k))


@lru_cache(maxsize=None)
def _reduce_bracket(j: int, k: int):
    if k == 0:
        return tuple({("b", j): RF_ONE}.items())
    w = j + k
    # unknowns e_{a, w-a} for a > w - a, a < w; solve the weight-w block once
    sol = _solve_weight(w)
    return sol[(j, k)]


def _anti(a, b) -> dict:
    """{e_a, e_b} in basis terms plus bracket terms (returned as mixed dict)."""
    m, n = min(a, b), max(a, b)
    out = {("p", m, n): RF_ONE * 2}
    if m != n:
        out[("br", n, m)] = RF_ONE
    return out


def _bracket_term(a, b):
    """[e_a, e_b] as {('br', max, min): +-1} (zero if a == b)."""
    if a == b:
        return {}
    if a > b:
        return {("br", a, b): RF_ONE}
    return {("br", b, a): -RF_ONE}


@lru_cache(maxsize=None)
def _solve_weight(w: int) -> dict:
    unknowns = [(a, w - a) for a in range(w - 1, 0, -1) if a > w - a]
    uidx = {u: i for i, u in enumerate(unknowns)}
    rows = []
    for jj in range(w - 2):
        kk = w - 3 - jj
        rel: dict = {}

        def add(d, c):
            for key, v in d.items():
                rel[key] = rel.get(key, RF_ZERO) + v * c

        add(_bracket_term(jj + 3, kk), RF_ONE)
        add(_bracket_term(jj + 2, kk + 1), _as_rf(-3))
        add(_bracket_term(jj + 1, kk + 2), _as_rf(3))
        add(_bracket_term(jj, kk + 3), -RF_ONE)
        add(_bracket_term(jj + 1, kk), _S2)
        add(_bracket_term(jj, kk + 1), -_S2)
        add(_anti(jj, kk), -_S3)
        rows.append(rel)
    # lower-weight brackets are expanded recursively; weight-w ones are unknowns
    n = len(unknowns)
    mat_rows, rhs = [], []
    for rel in rows:
        lhs_row: dict = {}
        r: dict = {}
        for key, v in rel.items():
            if v.is_zero():
                continue
            if key[0] == "br":
                a, b = key[1], key[2]
                if a + b == w and b != 0:
                    lhs_row[uidx[(a, b)]] = lhs_row.get(uidx[(a, b)], RF_ZERO) + v
                    continue
                for kk2, vv in (_reduce_bracket(a, b)):
                    r[kk2] = r.get(kk2, RF_ZERO) - v * vv
            else:
                r[key] = r.get(key, RF_ZERO) - v
        mat_rows.append(lhs_row)
        rhs.append(r)
    # solve column by column in the space of basis symbols
    symbols = sorted({s for r in rhs for s in r})
    m = SparseMatrix(len(rows), n)
    for i, row in enumerate(mat_rows):
        for c, v in row.items():
            m.set(i, c, v)
    out = {}
    sol_cols = {}
    for s in symbols:
        b = {i: r[s] for i, r in enumerate(rhs) if s in r and not r[s].is_zero()}
        sol_cols[s] = solve(m, b)
    for u, i in uidx.items():
        out[u] = tuple((s, x[i]) for s, x in sol_cols.items() if i in x and not x[i].is_zero())
    return out


def bracket_operator(rep: GaugeRep, combo: dict) -> SparseOperator:
    """Matrix image of a formal combination from reduce_e_bracket."""
    acc = SparseOperator.zero(rep.basis, 2)
    for key, c in combo.items():
        if key[0] == "b":
            term = rep.e(key[1]).comm(rep.e(0))
        else:
            term = rep.e(key[1]) @ rep.e(key[2])
        acc = acc + term * c
    return acc
