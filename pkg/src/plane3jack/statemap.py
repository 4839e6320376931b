"""Realization of P-monomials as states of the plane-partition module.

P_{n,1} and P_{n,2} act as the creation modes a_{-n,1}, a_{-n,2}.  The
generators P_{j,j}, j >= 3, have no mode construction; they are fixed by
requiring the vertex-operator polynomials of straight lines to equal the
line states.  P_{n,j} with n > j comes from the e_1 ladder
P_{n,j} = e_1 P_{n-1,j} / (n - j).

Two conventions are provided:

``operator``
    only P_{j,j} (j >= 3) is solved for, from the y-line alone;
    everything else is a mode word.  Norms of mode words such as P_{2,2}^2
    come out as the W-algebra values.
``line``
    at each level a small set of monomials is solved for from all three
    lines at once, which makes every line polynomial an exact image of
    its line state.  At level 4 this replaces P_{4,3} and P_{2,2}^2.
"""

from __future__ import annotations

from .diagrams import line
from .exactfield import RF_ONE, RF_ZERO, RationalFunction
from .fockpoly import PMonomial, PPolynomial, vertex_column, weight_monomials
from .linalg import SingularSystemError, SparseMatrix, solve
from .operators import State
from .yangian_rep import GaugeRep, boson_modes, norm

__all__ = ["StateMap", "LINE_FREE_SETS", "shapovalov"]

_M = PMonomial.of
# monomials solved from the three lines, per level, in the line convention
LINE_FREE_SETS = {
    3: (_M((3, 3)),),
    4: (_M((4, 4)), _M((4, 3)), _M((2, 2), (2, 2))),
    5: (_M((5, 5)), _M((5, 4)), _M((5, 3))),
}


def shapovalov(rep: GaugeRep, x: State, y: State) -> RationalFunction:
    """<x, y> in the rational gauge: sum_i x_i y_i norm(pi_i)."""
    if x.level != y.level:
        return RF_ZERO
    levels = rep.basis.levels[x.level]
    total = RF_ZERO
    for i, v in x.vec.items():
        w = y.vec.get(i)
        if w is not None:
            total = total + v * w * norm(levels[i])
    return total


class StateMap:
    def __init__(self, rep: GaugeRep, basis: str = "line"):
        if basis not in ("line", "operator"):
            raise ValueError("basis must be 'line' or 'operator'")
        self.rep = rep
        self.kind = basis
        self.bm = boson_modes(rep)
        self._cache: dict = {}
        self._solved_levels: set = set()

    # ------------------------------------------------------------ monomials
    def state(self, mono: PMonomial) -> State:
        if mono in self._cache:
            return self._cache[mono]
        w = mono.weight
        if w > self.rep.N:
            raise ValueError(f"weight {w} exceeds the level cutoff {self.rep.N}")
        if self.kind == "line" and w in LINE_FREE_SETS and mono in LINE_FREE_SETS[w]:
            self._solve_line_level(w)
            return self._cache[mono]
        s = self._build(mono)
        self._cache[mono] = s
        return s

    def _build(self, mono: PMonomial) -> State:
        if mono.is_one():
            return self.rep.vacuum()
        gens = mono.generators()
        # the a_{n,1} commute with everything else: peel them first
        for n, j in gens:
            if j == 1:
                return self.bm.a1(-n).apply(self.state(mono.without((n, j))))
        big = [g for g in gens if g[1] >= 3]
        if len(gens) == 1:
            n, j = gens[0]
            if j == 2:
                return self.bm.a2(-n).apply(self.rep.vacuum())
            if n == j:
                self._solve_y_diagonal(n)
                return self._cache[mono]
            return self.rep.e(1).apply(self.state(_M((n - 1, j)))) * (RF_ONE / (n - j))
        if len(big) > 1:
            raise NotImplementedError(f"{mono} has two generators with j >= 3")
        n, j = min(g for g in gens if g[1] == 2)
        return self.bm.a2(-n).apply(self.state(mono.without((n, j))))

    def _line_rest(self, n: int, axis: str, unknowns) -> tuple:
        """(line state minus the known part, coefficients of the unknowns)."""
        J = vertex_column(axis, n)[n]
        rest = self.rep.state(line(n, axis))
        coeffs = []
        for m in unknowns:
            coeffs.append(J.coeff(m))
        for m, c in J.terms.items():
            if m in unknowns:
                continue
            rest = rest - self.state(m) * c
        return rest, coeffs

    def _solve_y_diagonal(self, n: int):
        target = _M((n, n))
        rest, (c,) = self._line_rest(n, "y", (target,))
        self._cache[target] = rest * c.inverse()

    def _solve_line_level(self, n: int):
        if n in self._solved_levels:
            return
        unknowns = LINE_FREE_SETS[n]
        rows = [self._line_rest(n, ax, unknowns) for ax in ("y", "x", "z")]
        k = len(unknowns)
        coef = SparseMatrix.from_dense([r[1] for r in rows])
        dim = self.rep.basis.dim(n)
        comps = [dict() for _ in range(k)]
        for i in range(dim):
            b = {a: rows[a][0].vec[i] for a in range(3) if i in rows[a][0].vec}
            try:
                x = solve(coef, b)
            except SingularSystemError as exc:
                raise SingularSystemError(f"the three {n}-box lines are inconsistent: {exc}") from None
            for t in range(k):
                if t in x:
                    comps[t][i] = x[t]
        for t, m in enumerate(unknowns):
            self._cache[m] = State(n, comps[t])
        self._solved_levels.add(n)

    # ------------------------------------------------------------ polynomials
    def poly_state(self, p: PPolynomial) -> State:
        acc = None
        for m, c in p.terms.items():
            s = self.state(m) * c
            acc = s if acc is None else acc + s
        if acc is None:
            return State(0, {})
        return acc

    def matrix(self, level: int) -> SparseMatrix:
        monos = weight_monomials(level)
        return SparseMatrix(self.rep.basis.dim(level), len(monos), [dict(self.state(m).vec) for m in monos])

    def coords(self, s: State) -> PPolynomial:
        """The PPolynomial whose state is ``s``."""
        monos = weight_monomials(s.level)
        x = solve(self.matrix(s.level), s.vec)
        return PPolynomial({monos[i]: v for i, v in x.items()})

    def inner(self, p: PPolynomial, q: PPolynomial) -> RationalFunction:
        total = RF_ZERO
        for w in p.weights() & q.weights():
            pw = PPolynomial({m: c for m, c in p.terms.items() if m.weight == w})
            qw = PPolynomial({m: c for m, c in q.terms.items() if m.weight == w})
            total = total + shapovalov(self.rep, self.poly_state(pw), self.poly_state(qw))
        return total
