"""Polynomials in the generators P_{n,j} (n >= j >= 1).

3-Jack polynomials live in this ring.  The module also carries the two
quadratic forms on it, the vertex operators that produce straight lines
of boxes, and the multi-variable exponential (the T_yx / Q engine) used
for one-layer shapes.

Generators are written ``(n, j)``; ``P_{n,1}`` is the ordinary power sum
and weight is ``n``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exactfield import RF, RF_ONE, RF_ZERO, RationalFunction, _as_rf, h1, h2, h3, permute_h, sigma

__all__ = [
    "PMonomial",
    "PPolynomial",
    "gen",
    "weight_monomials",
    "mul_gen",
    "annihilate_n1",
    "form_norm",
    "free_inner",
    "P_inner",
    "d_factor",
    "xi_coefficient",
    "VertexSeries",
    "vertex_series",
    "vertex_column",
    "column_norm",
    "AXIS_H",
    "r_coefficients",
    "y_generator",
    "y_specialize",
    "MultiZSeries",
    "Tyx_expand",
    "Q",
    "q_to_jack",
    "rf_latex",
]


def _rf(x) -> RationalFunction:
    r = _as_rf(x)
    if r is None:
        raise TypeError(f"cannot use {x!r} as a coefficient")
    return r


# --------------------------------------------------------------------------
# Monomials and polynomials
# --------------------------------------------------------------------------


class PMonomial:
    """Multiset of generators, stored as a sorted tuple of ((n, j), mult)."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors=()):
        acc: dict = defaultdict(int)
        for item in factors:
            if len(item) == 3:
                n, j, m = item
            else:
                (n, j), m = item
            if not (n >= j >= 1):
                raise ValueError(f"generator P_{{{n},{j}}} needs n >= j >= 1")
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                acc[(n, j)] += m
        self.factors = tuple(sorted(acc.items()))
        self._hash = hash(self.factors)

    @classmethod
    def of(cls, *gens) -> "PMonomial":
        """PMonomial.of((1, 1), (1, 1), (2, 2)) = P_1^2 P_{2,2}."""
        return cls([(g, 1) for g in gens])

    @property
    def weight(self) -> int:
        return sum(n * m for (n, _), m in self.factors)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def generators(self) -> list:
        """Generators with repetition, in canonical order."""
        return [g for g, m in self.factors for _ in range(m)]

    def mult(self, g) -> int:
        return dict(self.factors).get(tuple(g), 0)

    def __mul__(self, other: "PMonomial") -> "PMonomial":
        return PMonomial(list(self.factors) + list(other.factors))

    def without(self, g) -> "PMonomial":
        d = dict(self.factors)
        if d.get(g, 0) == 0:
            raise ValueError(f"{g} is not a factor of {self}")
        d[g] -= 1
        return PMonomial(d.items())

    def is_one(self) -> bool:
        return not self.factors

    def __eq__(self, other):
        return isinstance(other, PMonomial) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def sort_key(self):
        # by weight, then lexicographic on the factor list
        return (self.weight, self.factors)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for (n, j), m in self.factors:
            s = "P1" if (n, j) == (1, 1) else f"P{n}{j}" if n < 10 and j < 10 else f"P[{n},{j}]"
            parts.append(s if m == 1 else f"{s}^{m}")
        return "*".join(parts)

    __repr__ = __str__

    def to_latex(self) -> str:
        if not self.factors:
            return "1"
        out = []
        for (n, j), m in self.factors:
            s = "P_1" if (n, j) == (1, 1) else f"P_{{{n},{j}}}"
            out.append(s if m == 1 else f"{s}^{{{m}}}")
        return "".join(out)

    def to_json(self) -> list:
        return [[n, j, m] for (n, j), m in self.factors]

    @classmethod
    def from_json(cls, data) -> "PMonomial":
        return cls([tuple(x) for x in data])


ONE_MONO = PMonomial()


class PPolynomial:
    """Finite sum of coefficient * PMonomial with rational-function coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for mono, c in dict(terms).items():
                c = _rf(c)
                if not c.is_zero():
                    self.terms[mono] = c

    @classmethod
    def constant(cls, c) -> "PPolynomial":
        return cls({ONE_MONO: c})

    @classmethod
    def monomial(cls, mono: PMonomial, c=RF_ONE) -> "PPolynomial":
        return cls({mono: c})

    # --------------------------------------------------------------- algebra
    def __add__(self, other):
        other = _as_ppoly(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, RF_ZERO) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return _raw_ppoly(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw_ppoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_ppoly(other))

    def __rsub__(self, other):
        return _as_ppoly(other) - self

    def __mul__(self, other):
        if isinstance(other, PPolynomial):
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 * m2
                    s = out.get(m, RF_ZERO) + c1 * c2
                    if s.is_zero():
                        out.pop(m, None)
                    else:
                        out[m] = s
            return _raw_ppoly(out)
        c = _rf(other)
        if c.is_zero():
            return PPolynomial()
        return _raw_ppoly({m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _rf(other).inverse()

    def __pow__(self, k: int):
        out = PPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    # ------------------------------------------------------------- structure
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono) -> RationalFunction:
        return self.terms.get(mono, RF_ZERO)

    def monomials(self) -> list:
        return sorted(self.terms)

    def weights(self) -> set:
        return {m.weight for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    @property
    def weight(self) -> int:
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError("polynomial is not homogeneous")
        return ws.pop()

    def map_coeffs(self, fn) -> "PPolynomial":
        return PPolynomial({m: fn(c) for m, c in self.terms.items()})

    def permute_h(self, perm) -> "PPolynomial":
        return self.map_coeffs(lambda c: permute_h(c, perm))

    def substitute(self, images: dict) -> "PPolynomial":
        """Replace generators by polynomials; generators not in ``images`` stay."""
        out = PPolynomial()
        for mono, c in self.terms.items():
            term = PPolynomial.constant(c)
            for g in mono.generators():
                term = term * (images[g] if g in images else gen(*g))
            out = out + term
        return out

    def __eq__(self, other):
        if not isinstance(other, PPolynomial):
            other = _as_ppoly(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "PPolynomial(0)"
        return " + ".join(f"({c})*{m}" for m, c in sorted(self.terms.items()))

    # -------------------------------------------------------------- formats
    def to_json(self) -> dict:
        return {
            "terms": [
                {"mono": m.to_json(), "coeff": self.terms[m].to_json()} for m in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, data) -> "PPolynomial":
        return cls({PMonomial.from_json(t["mono"]): RF.from_json(t["coeff"]) for t in data["terms"]})

    def to_latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = rf_latex(self.terms[m])
            mono = m.to_latex()
            if mono == "1":
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{c}\\,{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def _raw_ppoly(terms: dict) -> PPolynomial:
    p = PPolynomial.__new__(PPolynomial)
    p.terms = terms
    return p


def _as_ppoly(x) -> PPolynomial:
    if isinstance(x, PPolynomial):
        return x
    return PPolynomial.constant(x)


def gen(n: int, j: int = 1) -> PPolynomial:
    return PPolynomial.monomial(PMonomial([((n, j), 1)]))


@lru_cache(maxsize=None)
def weight_monomials(w: int) -> tuple:
    """All monomials of weight ``w``, sorted; there are MacMahon(w) of them."""
    gens = [(n, j) for n in range(1, w + 1) for j in range(1, n + 1)]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(PMonomial([(g, 1) for g in acc]))
            return
        for i in range(start, len(gens)):
            g = gens[i]
            if g[0] <= remaining:
                rec(i, remaining - g[0], acc + [g])

    rec(0, w, [])
    return tuple(sorted(out))


def mul_gen(x: PPolynomial, n: int, j: int = 1) -> PPolynomial:
    return x * gen(n, j)


def annihilate_n1(x: PPolynomial, n: int) -> PPolynomial:
    """n * d/dP_{n,1}; the Heisenberg lowering operator (psi_0 = 1)."""
    g = (n, 1)
    out = PPolynomial()
    for mono, c in x.terms.items():
        k = mono.mult(g)
        if k:
            out = out + PPolynomial.monomial(mono.without(g), c * (n * k))
    return out


# --------------------------------------------------------------------------
# The free (Wick) form
# --------------------------------------------------------------------------


def form_norm(n: int, j: int) -> RationalFunction:
    """<p_{n,j}, p_{n,j}> = binom(n+j-1, n-j) (-1)^(j-1) j! prod_k (k^3 + k^2 s2 + s3^2)."""
    s2, s3 = sigma(2), sigma(3)
    base = _rf((-1) ** (j - 1) * factorial(j))
    for k in range(1, j):
        base = base * (k**3 + k**2 * s2 + s3 * s3)
    return base * comb(n + j - 1, n - j)


def free_inner(x: PPolynomial, y: PPolynomial) -> RationalFunction:
    """Diagonal Wick form: distinct monomials are orthogonal and
    <prod P^a, prod P^a> = prod a! <p, p>^a."""
    total = RF_ZERO
    for mono, c in x.terms.items():
        d = y.terms.get(mono)
        if d is None:
            continue
        val = RF_ONE
        for (n, j), m in mono.factors:
            val = val * form_norm(n, j) ** m * factorial(m)
        total = total + c * d * val
    return total


# --------------------------------------------------------------------------
# The W form
# --------------------------------------------------------------------------

_P_INNER_REPS: dict = {}


def _matrix_statemap(level: int):
    from .statemap import StateMap
    from .yangian_rep import build_gauge_rep

    for N, sm in _P_INNER_REPS.items():
        if N >= level:
            return sm
    sm = StateMap(build_gauge_rep(max(level, 1), j_max=2), "operator")
    _P_INNER_REPS[max(level, 1)] = sm
    return sm


def _a_word(mono: PMonomial) -> list:
    from .walgebra import OutOfAlgebra, WMode

    out = []
    for (n, j), m in mono.factors:
        if j > 2:
            raise OutOfAlgebra(f"P_({n},{j}) has no mode construction")
        out += [WMode(-n, j)] * m
    return out


def P_inner(x: PPolynomial, y: PPolynomial, route: str = "matrix", c0_scale=1) -> RationalFunction:
    """<x, y> on P-polynomials, computed as <0| x^t y |0>.

    ``matrix`` realizes both sides as states of the plane-partition module
    (P_{n,2} through the a_{-n,2} operators) and pairs them with the module's
    quadratic form.  ``walgebra`` normal-orders the a-words with the printed
    structure constants; ``c0_scale`` rescales their central part.
    """
    if route not in ("matrix", "walgebra"):
        raise ValueError("route must be 'matrix' or 'walgebra'")
    weights = x.weights() & y.weights()
    if not weights:
        return RF_ZERO
    if route == "matrix":
        return _matrix_statemap(max(weights)).inner(x, y)
    from .walgebra import WWord, vacuum_expectation

    total = RF_ZERO
    for mx, cx in x.terms.items():
        left = [type(m)(-m.n, m.k) for m in reversed(_a_word(mx))]
        for my, cy in y.terms.items():
            if my.weight != mx.weight:
                continue
            w = WWord(left + _a_word(my))
            total = total + cx * cy * vacuum_expectation(w, c0_scale)
    return total


# --------------------------------------------------------------------------
# Vertex operators for straight lines
# --------------------------------------------------------------------------

# the h-parameter along each axis and the two transverse ones
AXIS_H = {"y": (h1, h2, h3), "x": (h2, h1, h3), "z": (h3, h1, h2)}


def d_factor(n: int, j: int) -> int:
    """d_{n,j}: 1 on the diagonal n = j, otherwise j."""
    return 1 if n == j else j


def _prod(vals, start=RF_ONE):
    out = start
    for v in vals:
        out = out * v
    return out


def xi_coefficient(n: int, j: int, axis: str = "y") -> RationalFunction:
    """Coefficient of P_{n,j} z^n in xi_axis."""
    ha, hb, hc = AXIS_H[axis]
    den = _prod([k + hb * hc for k in range(1, j)], _rf(factorial(j) * comb(n + j - 1, n - j)) * ha**j)
    return _rf(d_factor(n, j)) / den


class VertexSeries:
    """xi_axis(P, z) truncated at z^N; ``coeffs[n]`` is the weight-n PPolynomial."""

    def __init__(self, axis: str, N: int):
        if axis not in AXIS_H:
            raise ValueError(f"unknown axis {axis!r}")
        self.axis = axis
        self.N = N
        self.coeffs = [PPolynomial()]
        for n in range(1, N + 1):
            self.coeffs.append(PPolynomial({PMonomial([((n, j), 1)]): xi_coefficient(n, j, axis) for j in range(1, n + 1)}))

    def exp(self) -> list:
        """Coefficients of exp(xi) up to z^N."""
        # exp via the recursion n E_n = sum_k k xi_k E_{n-k}
        E = [PPolynomial.constant(1)]
        for n in range(1, self.N + 1):
            acc = PPolynomial()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * E[n - k] * k
            E.append(acc * Fraction(1, n))
        return E


@lru_cache(maxsize=None)
def vertex_series(axis: str, N: int) -> VertexSeries:
    return VertexSeries(axis, N)


def column_norm(n: int, axis: str = "y") -> RationalFunction:
    """prod_{j=1}^{n-1} (j+1)(j + hb hc) / ((j ha - hb)(j ha - hc))."""
    ha, hb, hc = AXIS_H[axis]
    out = RF_ONE
    for j in range(1, n):
        out = out * (j + 1) * (j + hb * hc) / ((j * ha - hb) * (j * ha - hc))
    return out


def vertex_column(axis: str, N: int) -> list:
    """J~ of the n-box line along ``axis`` for n = 0..N."""
    ha = AXIS_H[axis][0]
    E = vertex_series(axis, N).exp()
    return [E[n] * (column_norm(n, axis) * ha**n) for n in range(N + 1)]


# --------------------------------------------------------------------------
# Y-type specialization of P_{n,j}
# --------------------------------------------------------------------------


def r_coefficients(j: int) -> list:
    """r_0..r_{j-1} with (1+x)(2+x)...(j-1+x) = sum r_k x^k."""
    r = [1]
    for k in range(1, j):
        nxt = [0] * (len(r) + 1)
        for i, c in enumerate(r):
            nxt[i] += c * k
            nxt[i + 1] += c
        r = nxt
    return r


def y_generator(n: int, j: int) -> PPolynomial:
    """The value of P_{n,j} in terms of the P_{m,1} under the Y-specialization."""
    if j == 1:
        return gen(n, 1)
    r = r_coefficients(j)
    pref = _prod([k + h1 * h2 for k in range(1, j)], _rf((-1) ** (j - 1) * d_factor(n, j)))
    acc = PPolynomial()
    for k in range(j):
        term = gen(1, 1) ** (j - 1 - k) * gen(n - j + 1 + k, 1)
        acc = acc + term * (r[k] * h3**k)
    return acc * pref


def y_specialize(x: PPolynomial) -> PPolynomial:
    """Replace every P_{n,j>1} by its Y-specialization."""
    images = {}
    for mono in x.terms:
        for g in mono.generators():
            if g[1] > 1 and g not in images:
                images[g] = y_generator(*g)
    return x.substitute(images)


# --------------------------------------------------------------------------
# Multi-variable series and the Q engine
# --------------------------------------------------------------------------


class MultiZSeries:
    """Truncated series in z_1..z_r: ``terms[exponent tuple] -> coefficient``.

    Coefficients may be RationalFunction or PPolynomial; everything of
    total degree above ``N`` is dropped.
    """

    __slots__ = ("r", "N", "terms")

    def __init__(self, r: int, N: int, terms=None):
        self.r = r
        self.N = N
        self.terms = {}
        for e, c in (terms or {}).items():
            if sum(e) <= N and not _zero(c):
                self.terms[tuple(e)] = c

    @classmethod
    def power_sum(cls, r: int, N: int, n: int) -> "MultiZSeries":
        return cls(r, N, {tuple(n if i == k else 0 for i in range(r)): RF_ONE for k in range(r)})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiZSeries(self.r, min(self.N, other.N), out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "MultiZSeries":
        return MultiZSeries(self.r, self.N, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiZSeries):
            return self.scale(other)
        N = min(self.N, other.N)
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > N:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return MultiZSeries(self.r, N, out)

    def coefficient(self, exps) -> object:
        e = tuple(exps) + (0,) * (self.r - len(exps))
        return self.terms.get(e, RF_ZERO)

    def is_symmetric(self) -> bool:
        from itertools import permutations

        for e, c in self.terms.items():
            for p in permutations(range(self.r)):
                f = tuple(e[i] for i in p)
                if f not in self.terms or not _eq(self.terms[f], c):
                    return False
        return True


def _zero(c) -> bool:
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def _eq(a, b) -> bool:
    return a == b


def _z_specialize(p: PPolynomial, r: int, N: int) -> MultiZSeries:
    """Substitute P_{m,1} -> p_m(z)/h1 in a polynomial of the P_{m,1} only."""
    out = MultiZSeries(r, N)
    for mono, c in p.terms.items():
        term = MultiZSeries(r, N, {(0,) * r: c})
        for n, j in mono.generators():
            if j != 1:
                raise ValueError("only P_{n,1} can be specialized to power sums")
            term = term * MultiZSeries.power_sum(r, N, n).scale(h1.inverse())
        out = out + term
    return out


def _y_bracket(n: int, j: int, r: int, N: int) -> MultiZSeries:
    """z-expansion of P_{n,j}, normalized so the p_n(z) coefficient is one."""
    zs = _z_specialize(y_generator(n, j), r, N)
    norm = _prod([(k + h1 * h2) * (k + h1 * h3) for k in range(1, j)], _rf((-1) ** (j - 1) * d_factor(n, j)))
    return zs.scale(h1**j / norm)


@lru_cache(maxsize=None)
def Tyx_series(r: int, N: int) -> MultiZSeries:
    """T_yx(P, z) in z_1..z_r up to total degree N, coefficients in PPolynomial."""
    T = MultiZSeries(r, N)
    for n in range(1, N + 1):
        for j in range(1, n + 1):
            c = xi_coefficient(n, j, "y")
            br = MultiZSeries.power_sum(r, N, n) if j == 1 else _y_bracket(n, j, r, N)
            T = T + MultiZSeries(r, N, {e: gen(n, j) * (v * c) for e, v in br.terms.items()})
    return T


@lru_cache(maxsize=None)
def _exp_T(r: int, N: int) -> MultiZSeries:
    T = Tyx_series(r, N)
    one = MultiZSeries(r, N, {(0,) * r: PPolynomial.constant(1)})
    result, term = one, one
    for k in range(1, N + 1):
        term = (term * T).scale(Fraction(1, k))
        result = result + term
    return result


def Tyx_expand(r: int = 3, N: int = 4) -> dict:
    """Q-coefficients: exponent tuple (i_1, ..., i_r) -> PPolynomial."""
    E = _exp_T(r, N)
    return {e: (c if isinstance(c, PPolynomial) else PPolynomial.constant(c)) for e, c in E.terms.items()}


def Q(*idx, r: int = 3) -> PPolynomial:
    N = max(sum(idx), 1)
    c = _exp_T(max(r, len(idx)), N).coefficient(idx)
    return c if isinstance(c, PPolynomial) else PPolynomial.constant(c)


def q_to_jack(n: int, hook: bool = False, inner=None) -> PPolynomial:
    """J~ of the one-row shape (n) or, with ``hook``, of (n-1, 1), from the Q's.

    The row is Q_n times its norm.  For the hook the row contribution is
    removed from Q_{n-1,1}; the norm of the hook is the x-line norm when
    n = 2 and otherwise is solved self-consistently with ``inner`` (a form
    on PPolynomial, required for n >= 3).
    """
    row = Q(n) * (column_norm(n, "y") * h1**n)
    if not hook:
        return row
    if n < 2:
        raise ValueError("the hook (n-1, 1) needs n >= 2")
    if (h1 - h2).is_zero():
        raise ZeroDivisionError("singular coefficient at h1 = h2")
    rest = Q(n - 1, 1) - row * (-n * h2 / ((n - 1) * h1 - h2) / (column_norm(n, "y") * h1**n))
    k = _rf(2) / ((h1 - h2) * h1 ** (n - 1))
    if n == 2:
        return rest * (column_norm(2, "x") / k)
    if inner is None:
        raise ValueError("q_to_jack for n >= 3 needs an inner product")
    return rest * (k / inner(rest, rest))


# --------------------------------------------------------------------------
# LaTeX for coefficients
# --------------------------------------------------------------------------


def _poly_latex(p) -> str:
    s = str(p).replace("h1", "h_1").replace("h2", "h_2").replace("*", " ")
    out = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "^":
            j = i + 1
            while j < len(s) and s[j].isdigit():
                j += 1
            out.append("^{" + s[i + 1 : j] + "}")
            i = j
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def rf_latex(c: RationalFunction) -> str:
    num = _poly_latex(c.num)
    if c.den.degree() == 0 and str(c.den) == "1":
        return num
    return f"\\frac{{{num}}}{{{_poly_latex(c.den)}}}"
