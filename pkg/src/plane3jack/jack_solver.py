"""3-Jack polynomials for all plane partitions up to a level cutoff.

J~_pi is the P-polynomial whose state is proportional to |pi>.  The
proportionality constant is fixed per S3 orbit: on a representative the
coordinates of the gauge state are averaged over its stabilizer (with
the matching h-relabelling), and every other member of the orbit is the
h-relabelled image.  Lines are exactly the vertex-operator polynomials.

Classical checks live here too: the Jack degeneration at h1 = t,
h2 = -1/t (alpha = t^2) against a Gram-Schmidt Jack oracle, and Pieri
products with P_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .diagrams import AXIS_PERMS, PlanePartition, addable, axis_permute, axis_to_h_perm, enumerate_pp, line
from .exactfield import RF_ONE, RF_ZERO, RationalFunction, _as_rf, h1, h2, h3
from .fockpoly import (
    PMonomial,
    PPolynomial,
    column_norm,
    gen,
    q_to_jack,
    vertex_column,
    weight_monomials,
)
from .linalg import SingularSystemError, SparseMatrix, solve
from .statemap import StateMap
from .yangian_rep import GaugeRep, build_gauge_rep

__all__ = [
    "Underdetermined",
    "JackTable",
    "PieriExpansion",
    "solve_level",
    "build_table",
    "pieri_P1",
    "is_eigen",
    "s3_equivariance_failures",
    "one_layer_partition",
    "specialize_jack",
    "specialize_schur_literal",
    "partitions",
    "classical_jack_oracle",
    "schur_oracle",
    "jack_norm",
    "DegenerationRow",
    "degeneration_report",
    "constant_per_weight",
    "proportionality",
    "verify_against_printed",
    "printed_displays",
]


class Underdetermined(RuntimeError):
    def __init__(self, pp, residual_dim):
        super().__init__(f"UNDERDETERMINED at {pp}: residual dimension {residual_dim}")
        self.pp = pp
        self.residual_dim = residual_dim


@dataclass
class JackTable:
    rep: GaugeRep
    statemap: StateMap
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    normalization: str = "average"

    @property
    def level(self) -> int:
        return max((len(pp) for pp in self.entries), default=-1)

    def __getitem__(self, pp) -> PPolynomial:
        if isinstance(pp, str):
            pp = PlanePartition.parse(pp)
        return self.entries[pp]

    def __contains__(self, pp) -> bool:
        return pp in self.entries

    def shapes(self, level: int) -> list:
        return [pp for pp in enumerate_pp(level) if pp in self.entries]

    def to_json(self) -> dict:
        out = []
        for pp in sorted(self.entries, key=lambda p: (len(p), p.sort_key())):
            out.append(
                {
                    "shape": pp.to_json(),
                    "label": str(pp),
                    "provenance": self.provenance.get(pp, ""),
                    "polynomial": self.entries[pp].to_json(),
                }
            )
        return {"normalization": self.normalization, "entries": out}


def _orbit_data(pp: PlanePartition):
    """Canonical representative of the S3 orbit of ``pp`` and a g with g.rep = pp."""
    images = {}
    for g in AXIS_PERMS:
        images.setdefault(axis_permute(pp, g), g)
    rep = min(images, key=lambda p: p.sort_key())
    for g in AXIS_PERMS:
        if axis_permute(rep, g) == pp:
            return rep, g
    raise AssertionError("orbit without a transporter")


def _stabilizer(pp: PlanePartition) -> list:
    return [g for g in AXIS_PERMS if axis_permute(pp, g) == pp]


def _line_axis(pp: PlanePartition):
    n = len(pp)
    for ax in ("y", "x", "z"):
        if n and line(n, ax) == pp:
            return ax
    return None


def solve_level(table: JackTable, m: int) -> None:
    """Add J~ for every plane partition of size ``m`` to ``table``."""
    if m > table.rep.N:
        raise ValueError(f"level {m} exceeds the representation cutoff {table.rep.N}")
    sm = table.statemap
    if m == 0:
        table.entries[PlanePartition(())] = PPolynomial.constant(1)
        table.provenance[PlanePartition(())] = "vacuum"
        return
    shapes = enumerate_pp(m)
    reps = sorted({_orbit_data(pp)[0] for pp in shapes}, key=lambda p: p.sort_key())
    for rho in reps:
        ax = _line_axis(rho)
        if ax is not None:
            J = vertex_column(ax, m)[m]
            prov = "vertex"
        else:
            try:
                c = sm.coords(table.rep.state(rho))
            except SingularSystemError:
                raise Underdetermined(rho, _residual_dim(sm, m)) from None
            stab = _stabilizer(rho)
            J = PPolynomial()
            for g in stab:
                J = J + c.permute_h(axis_to_h_perm(g))
            J = J * Fraction(1, len(stab))
            if J.is_zero():
                raise Underdetermined(rho, 1)
            prov = "linear-solve"
        table.entries[rho] = J
        table.provenance[rho] = prov
    for pp in shapes:
        if pp in table.entries:
            continue
        rho, g = _orbit_data(pp)
        table.entries[pp] = table.entries[rho].permute_h(axis_to_h_perm(g))
        table.provenance[pp] = "vertex" if _line_axis(pp) else "symmetry"


def _residual_dim(sm: StateMap, m: int) -> int:
    from .linalg import rank

    mat = sm.matrix(m)
    return mat.ncols - rank(mat)


def build_table(N: int = 4, rep: GaugeRep | None = None, basis: str = "line") -> JackTable:
    if rep is None:
        rep = build_gauge_rep(N, j_max=2)
    table = JackTable(rep, StateMap(rep, basis))
    for m in range(N + 1):
        solve_level(table, m)
    return table


def is_eigen(table: JackTable, pp: PlanePartition) -> bool:
    """The state of J~_pi is a multiple of |pi>."""
    s = table.statemap.poly_state(table.entries[pp])
    i = table.rep.basis.index(pp)
    return set(s.vec) == {i}


def s3_equivariance_failures(table: JackTable) -> list:
    bad = []
    for pp, J in table.entries.items():
        for g in AXIS_PERMS:
            img = axis_permute(pp, g)
            if img in table.entries and table.entries[img] != J.permute_h(axis_to_h_perm(g)):
                bad.append((pp, g))
    return bad


# --------------------------------------------------------------------------
# Pieri
# --------------------------------------------------------------------------


@dataclass
class PieriExpansion:
    shape: PlanePartition
    terms: list  # (child shape, coefficient)
    exact: bool  # P1 * J~_pi lies in the span of its children

    def all_one(self) -> bool:
        return self.exact and all(c == RF_ONE for _, c in self.terms)


def pieri_P1(table: JackTable, pp: PlanePartition) -> PieriExpansion:
    """Expand P_1 * J~_pi in the J~ of the next level."""
    prod = table.entries[pp] * gen(1, 1)
    level = enumerate_pp(len(pp) + 1)
    basis = [table.entries[q] for q in level]
    monos = list(weight_monomials(len(pp) + 1))
    idx = {mo: i for i, mo in enumerate(monos)}
    mat = SparseMatrix(len(monos), len(basis), [{idx[mo]: v for mo, v in p.terms.items()} for p in basis])
    x = solve(mat, {idx[mo]: v for mo, v in prod.terms.items()})
    children = {pp.add(b) for b in addable(pp)}
    terms = [(level[i], v) for i, v in sorted(x.items())]
    exact = all(q in children for q, _ in terms)
    return PieriExpansion(pp, terms, exact)


# --------------------------------------------------------------------------
# Degenerations
# --------------------------------------------------------------------------

_T = h1  # the parameter t = sqrt(alpha) lives in the h1 slot


def one_layer_partition(pp: PlanePartition):
    """2D partition of a plane partition with all heights <= 1 (row lengths), else None."""
    if any(v > 1 for row in pp.heights for v in row):
        return None
    return tuple(len(row) for row in pp.heights)


def specialize_jack(x: PPolynomial) -> PPolynomial:
    """h1 = t, h2 = -1/t, P_{n,j>1} = 0, P_{n,1} = p_n / t.

    The result is a polynomial in the P_{n,1} (read as power sums p_n)
    with coefficients in Q(t), t = sqrt(alpha), stored in the h1 slot.
    """
    out = PPolynomial()
    for mono, c in x.terms.items():
        if any(j > 1 for (_, j), _m in mono.factors):
            continue
        cc = c.subs_h(_T, -_T.inverse()) * _T.inverse() ** mono.degree
        out = out + PPolynomial.monomial(mono, cc)
    return out


def specialize_schur_literal(x: PPolynomial):
    """Literal substitution h1 = h2 = -1 (so h3 = 2); returns (status, value)."""
    out = PPolynomial()
    try:
        for mono, c in x.terms.items():
            out = out + PPolynomial.monomial(mono, _as_rf(c(-1, -1)))
    except ZeroDivisionError:
        return "pole", None
    return "ok", out


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """Partitions of n in reverse lexicographic order ((n) first)."""
    out = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rem, cap), 0, -1):
            rec(rem - k, k, acc + [k])

    rec(n, n, [])
    return tuple(out)


def _p_mono(lam) -> PMonomial:
    return PMonomial([((k, 1), 1) for k in lam])


def _z(lam) -> int:
    from collections import Counter

    out = 1
    for k, m in Counter(lam).items():
        out *= k**m * factorial(m)
    return out


@lru_cache(maxsize=None)
def _power_to_monomial(n: int) -> tuple:
    """Matrix A with p_mu = sum_lam A[mu][lam] m_lam (partitions of n in order)."""
    parts = partitions(n)
    pos = {lam: i for i, lam in enumerate(parts)}
    rows = []
    for mu in parts:
        # expand prod p_{mu_i} in n variables, keep sorted exponent vectors
        poly = {(0,) * n: 1}
        for k in mu:
            new = {}
            for e, c in poly.items():
                for v in range(n):
                    f = list(e)
                    f[v] += k
                    f = tuple(f)
                    new[f] = new.get(f, 0) + c
            poly = new
        row = [0] * len(parts)
        for e, c in poly.items():
            if list(e) == sorted(e, reverse=True):
                lam = tuple(v for v in e if v)
                row[pos[lam]] += c
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _monomial_in_p(n: int) -> list:
    """m_lam as dict {mu: Fraction} over power sums, by inverting _power_to_monomial."""
    parts = partitions(n)
    A = [[Fraction(v) for v in row] for row in _power_to_monomial(n)]
    k = len(parts)
    # solve A^T x = e_lam: m_lam = sum_mu B[lam][mu] p_mu with B = (A^{-1})^T
    aug = [[A[j][i] for j in range(k)] + [Fraction(int(i == r)) for r in range(k)] for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = [row[k:] for row in aug]  # inverse of A^T
    out = []
    for lam_i in range(k):
        out.append({parts[mu_i]: inv[mu_i][lam_i] for mu_i in range(k) if inv[mu_i][lam_i] != 0})
    return out


def _alpha_inner(x: dict, y: dict, alpha: RationalFunction) -> RationalFunction:
    total = RF_ZERO
    for lam, c in x.items():
        d = y.get(lam)
        if d is not None:
            total = total + c * d * _z(lam) * alpha ** len(lam)
    return total


@lru_cache(maxsize=None)
def _jack_P_table(n: int, alpha_key):
    alpha = _ALPHAS[alpha_key]
    parts = partitions(n)
    mp = _monomial_in_p(n)
    done = {}
    for i in range(len(parts) - 1, -1, -1):  # (1^n) first: lowest in dominance
        lam = parts[i]
        v = {mu: _as_rf(c) for mu, c in mp[i].items()}
        for mu, P in done.items():
            coef = _alpha_inner(v, P, alpha) / _alpha_inner(P, P, alpha)
            for nu, c in P.items():
                s = v.get(nu, RF_ZERO) - coef * c
                if s.is_zero():
                    v.pop(nu, None)
                else:
                    v[nu] = s
        done[lam] = v
    return done


_ALPHAS = {"t2": h1 * h1, "1": RF_ONE}


def _hook_c(lam, alpha) -> RationalFunction:
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    out = RF_ONE
    for i, r in enumerate(lam):
        for j in range(r):
            arm = r - j - 1
            leg = conj[j] - i - 1
            out = out * (alpha * arm + leg + 1)
    return out


def classical_jack_oracle(lam, alpha: str = "t2") -> PPolynomial:
    """Integral Jack J_lam in power sums (P_{k,1} read as p_k).

    ``alpha='t2'`` means alpha = t^2 with t in the h1 slot; ``alpha='1'``
    gives hook-length times Schur.
    """
    lam = tuple(lam)
    n = sum(lam)
    if n == 0:
        return PPolynomial.constant(1)
    P = _jack_P_table(n, alpha)[lam]
    c = _hook_c(lam, _ALPHAS[alpha])
    return PPolynomial({_p_mono(mu): v * c for mu, v in P.items()})


def _hook_c_prime(lam, alpha) -> RationalFunction:
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    out = RF_ONE
    for i, r in enumerate(lam):
        for j in range(r):
            out = out * (alpha * (r - j) + conj[j] - i - 1)
    return out


def jack_norm(lam, alpha: str = "t2") -> RationalFunction:
    """<J_lam, J_lam>_alpha = c_lam(alpha) c'_lam(alpha)."""
    a = _ALPHAS[alpha]
    return _hook_c(tuple(lam), a) * _hook_c_prime(tuple(lam), a)


def schur_oracle(lam) -> PPolynomial:
    """Schur function s_lam in power sums (Jack at alpha = 1 over the hook product)."""
    J = classical_jack_oracle(lam, "1")
    return J / _hook_c(tuple(lam), RF_ONE)


def proportionality(x: PPolynomial, y: PPolynomial):
    """c with x = c * y, or None."""
    if x.is_zero() or y.is_zero():
        return None
    if set(x.terms) != set(y.terms):
        return None
    c = None
    for m, v in x.terms.items():
        r = v / y.terms[m]
        if c is None:
            c = r
        elif r != c:
            return None
    return c


@dataclass
class DegenerationRow:
    shape: PlanePartition
    partition: tuple
    jack_constant: object  # K with spec(J~) = K h_lam J_lam / <J_lam, J_lam>, or None
    schur_constant: object  # c with spec(J~)|_{alpha=1} = c s_lam, or None


def degeneration_report(table: JackTable, max_weight: int = 4) -> list:
    """Jack and Schur constants for every one-layer shape up to ``max_weight``.

    The oracle is normalized as h_lam J_lam / <J_lam, J_lam>_alpha, which is
    the weight-2 normalization and reduces to s_lam at alpha = 1.
    """
    rows = []
    for n in range(1, min(max_weight, table.level) + 1):
        for pp in enumerate_pp(n):
            lam = one_layer_partition(pp)
            if lam is None:
                continue
            spec = specialize_jack(table.entries[pp])
            oracle = classical_jack_oracle(lam) * (_hook_c(lam, RF_ONE) / jack_norm(lam))
            K = proportionality(spec, oracle)
            at1 = spec.map_coeffs(lambda c: c.subs_h(RF_ONE, RF_ZERO))
            S = proportionality(at1, schur_oracle(lam))
            rows.append(DegenerationRow(pp, lam, K, S))
    return rows


def constant_per_weight(rows: list, attr: str) -> dict:
    """weight -> (constant or None if not uniform / missing)."""
    out = {}
    for r in rows:
        w = sum(r.partition)
        v = getattr(r, attr)
        if w not in out:
            out[w] = v
        elif out[w] is not None and (v is None or v != out[w]):
            out[w] = None
    return out


# --------------------------------------------------------------------------
# Printed polynomials
# --------------------------------------------------------------------------


def _P(*gens):
    out = PPolynomial.constant(1)
    for g in gens:
        out = out * gen(*g)
    return out


def _line3(ha, hb, hc) -> PPolynomial:
    q = hb * hc
    D = (ha - hb) * (ha - hc) * (2 * ha - hb) * (2 * ha - hc)
    body = (
        _P((1, 1), (1, 1), (1, 1)) * ((1 + q) * (2 + q))
        + _P((1, 1), (2, 1)) * (3 * ha * (1 + q) * (2 + q))
        + _P((1, 1), (2, 2)) * (3 * (2 + q))
        + _P((3, 1)) * (2 * ha * ha * (1 + q) * (2 + q))
        + _P((3, 2)) * (3 * ha * (1 + q * Fraction(1, 2)))
        + _P((3, 3))
    )
    return body / D


def _line4(ha, hb, hc) -> PPolynomial:
    q = hb * hc
    A = (1 + q) * (2 + q) * (3 + q)
    D = (ha - hb) * (ha - hc) * (2 * ha - hb) * (2 * ha - hc) * (3 * ha - hb) * (3 * ha - hc)
    body = (
        _P((1, 1), (1, 1), (1, 1), (1, 1)) * A
        + _P((1, 1), (1, 1), (2, 1)) * (6 * ha * A)
        + _P((2, 1), (2, 2)) * (6 * ha * (2 + q) * (3 + q))
        + _P((1, 1), (1, 1), (2, 2)) * (6 * (2 + q) * (3 + q))
        + _P((1, 1), (3, 1)) * (8 * A * ha**2)
        + _P((1, 1), (3, 2)) * (6 * (2 + q) * (3 + q) * ha)
        + _P((1, 1), (3, 3)) * (4 * (3 + q))
        + _P((4, 1)) * (6 * A * ha**3)
        + _P((4, 2)) * (Fraction(12, 5) * (2 + q) * (3 + q) * ha**2)
        + _P((4, 3)) * (2 * (3 + q) * ha)
        + _P((4, 4))
        + _P((2, 2), (2, 2)) * (3 * (2 + q) * (3 + q) / (1 + q))
        + _P((2, 1), (2, 1)) * (3 * A * ha**2)
    )
    return body / D


def _line2(ha, hb, hc) -> PPolynomial:
    q = hb * hc
    return (_P((1, 1), (1, 1)) * (1 + q) + _P((2, 1)) * ((1 + q) * ha) + _P((2, 2))) / ((ha - hb) * (ha - hc))


def printed_displays() -> dict:
    """The printed 3-Jack polynomials (lines of length <= 4 along each axis)."""
    out = {PlanePartition.parse("1"): gen(1, 1)}
    H = {"y": (h1, h2, h3), "x": (h2, h1, h3), "z": (h3, h1, h2)}
    for ax, hs in H.items():
        out[line(2, ax)] = _line2(*hs)
        out[line(3, ax)] = _line3(*hs)
        out[line(4, ax)] = _line4(*hs)
    return out


def verify_against_printed(table: JackTable) -> list:
    """Per-shape comparison with the printed polynomials and the Q-engine.

    Returns a list of (name, passed, detail).  The 4-box lines are checked
    as vertex-operator polynomials; their state images depend on the
    chosen P_{2,2}^2 (see statemap).
    """
    report = []
    for pp, P in printed_displays().items():
        if len(pp) > table.level:
            continue
        J = table.entries[pp]
        ok = J == P
        report.append((f"J[{pp}]", ok, "" if ok else f"{len((J - P).terms)} differing terms"))
    for n in range(1, min(table.level, 4) + 1):
        ok = column_norm(n, "y") == _expected_column_norm(n)
        report.append((f"column norm n={n}", ok, ""))
    if table.level >= 2:
        row = q_to_jack(2)
        ok = row == table.entries[line(2, "y")]
        report.append(("Q-engine J[(2)]", ok, ""))
        hook = q_to_jack(2, hook=True)
        ok = hook == table.entries[line(2, "x")]
        report.append(("Q-engine J[(1,1)]", ok, ""))
    return report


def _expected_column_norm(n: int) -> RationalFunction:
    out = RF_ONE
    for j in range(1, n):
        out = out * (j + 1) * (j + h2 * h3) / ((j * h1 - h2) * (j * h1 - h3))
    return out
