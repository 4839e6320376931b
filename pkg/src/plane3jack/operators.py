"""Level-graded operators on the plane-partition module, truncated at level N.

An operator of degree ``d`` is a family of blocks, one sparse matrix per
source level L, mapping level L to level L + d.  Only levels whose image
stays inside 0..N carry a block.  Composition keeps exactly the levels on
which both factors are known, so truncation shows up as a smaller
``domain`` instead of silently wrong matrices.
"""

from __future__ import annotations

from fractions import Fraction
from .diagrams import PlanePartition, enumerate_pp
from .exactfield import RF_ONE, RF_ZERO, RationalFunction, _as_rf
from .linalg import SparseMatrix

__all__ = ["LevelBasis", "SparseOperator", "State", "TruncationError"]


class TruncationError(ValueError):
    """An operator was needed on a level outside its representable range."""


class LevelBasis:
    """Ordered plane-partition bases of levels 0..N."""

    def __init__(self, N: int):
        if N < 0:
            raise ValueError("level cutoff must be nonnegative")
        self.N = N
        self.levels = [list(enumerate_pp(n)) for n in range(N + 1)]
        self._index = [{pp: i for i, pp in enumerate(lv)} for lv in self.levels]

    def dim(self, level: int) -> int:
        # negative levels are the zero space: lowering operators simply vanish there
        if level < 0:
            return 0
        return len(self.levels[level])

    def index(self, pp: PlanePartition) -> int:
        return self._index[len(pp)][pp]

    def __contains__(self, pp) -> bool:
        return len(pp) <= self.N

    def state(self, pp: PlanePartition, coeff=RF_ONE) -> "State":
        return State(len(pp), {self.index(pp): _as_rf(coeff)})


class State:
    """Vector in a single level, stored sparsely."""

    __slots__ = ("level", "vec")

    def __init__(self, level: int, vec: dict):
        self.level = level
        self.vec = {i: v for i, v in vec.items() if not v.is_zero()}

    def __add__(self, other: "State") -> "State":
        if other.level != self.level:
            if not other.vec:
                return self
            if not self.vec:
                return other
            raise ValueError("adding states of different levels")
        out = dict(self.vec)
        for i, v in other.vec.items():
            s = out.get(i, RF_ZERO) + v
            if s.is_zero():
                out.pop(i, None)
            else:
                out[i] = s
        return State(self.level, out)

    def __sub__(self, other):
        return self + other * (-RF_ONE)

    def __mul__(self, c) -> "State":
        c = _as_rf(c) if not isinstance(c, RationalFunction) else c
        return State(self.level, {i: v * c for i, v in self.vec.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-RF_ONE)

    def is_zero(self) -> bool:
        return not self.vec

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.level == other.level and self.vec == other.vec

    def __repr__(self):
        return f"State(level={self.level}, {self.vec})"


class SparseOperator:
    """Graded operator: ``blocks[L]`` maps level L to level L + degree."""

    __slots__ = ("basis", "degree", "blocks", "name")

    def __init__(self, basis: LevelBasis, degree: int, blocks: dict, name: str = ""):
        self.basis = basis
        self.degree = degree
        self.blocks = dict(blocks)
        self.name = name

    # ----------------------------------------------------------- constructors
    @classmethod
    def zero(cls, basis: LevelBasis, degree: int, domain=None) -> "SparseOperator":
        if domain is None:
            domain = [L for L in range(basis.N + 1) if L + degree <= basis.N]
        return cls(
            basis,
            degree,
            {L: SparseMatrix(basis.dim(L + degree), basis.dim(L)) for L in domain},
        )

    @classmethod
    def scalar(cls, basis: LevelBasis, value=RF_ONE, domain=None) -> "SparseOperator":
        value = _as_rf(value) if not isinstance(value, RationalFunction) else value
        if domain is None:
            domain = range(basis.N + 1)
        return cls(basis, 0, {L: SparseMatrix.identity(basis.dim(L), value) for L in domain})

    @classmethod
    def diagonal(cls, basis: LevelBasis, fn, domain=None) -> "SparseOperator":
        if domain is None:
            domain = range(basis.N + 1)
        blocks = {}
        for L in domain:
            m = SparseMatrix(basis.dim(L), basis.dim(L))
            for i, pp in enumerate(basis.levels[L]):
                m.set(i, i, fn(pp))
            blocks[L] = m
        return cls(basis, 0, blocks)

    # ------------------------------------------------------------- structure
    @property
    def domain(self) -> list:
        return sorted(self.blocks)

    def restrict(self, levels) -> "SparseOperator":
        return SparseOperator(self.basis, self.degree, {L: self.blocks[L] for L in levels if L in self.blocks}, self.name)

    # ------------------------------------------------------------ arithmetic
    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        blocks = {}
        deg = self.degree + other.degree
        for L, B in other.blocks.items():
            mid = L + other.degree
            if mid < 0 or L + deg < 0:
                # passes through the zero space below the vacuum
                if L + deg <= self.basis.N:
                    blocks[L] = SparseMatrix(self.basis.dim(L + deg), self.basis.dim(L))
                continue
            A = self.blocks.get(mid)
            if A is not None:
                blocks[L] = A @ B
        return SparseOperator(self.basis, deg, blocks)

    def _combine(self, other: "SparseOperator", sign) -> "SparseOperator":
        if self.degree != other.degree:
            raise ValueError(f"cannot add operators of degree {self.degree} and {other.degree}")
        blocks = {}
        for L in self.blocks.keys() & other.blocks.keys():
            blocks[L] = self.blocks[L] + other.blocks[L] * sign if sign is not None else self.blocks[L] + other.blocks[L]
        return SparseOperator(self.basis, self.degree, blocks)

    def __add__(self, other):
        if not isinstance(other, SparseOperator):
            other = SparseOperator.scalar(self.basis, other)
        return self._combine(other, None)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, SparseOperator):
            other = SparseOperator.scalar(self.basis, other)
        return self._combine(other, -RF_ONE)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self * (-RF_ONE)

    def __mul__(self, c) -> "SparseOperator":
        if isinstance(c, SparseOperator):
            return self @ c
        if isinstance(c, (int, Fraction)):
            c = _as_rf(c)
        return SparseOperator(self.basis, self.degree, {L: m * c for L, m in self.blocks.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparseOperator":
        if k < 0:
            raise ValueError("negative operator power")
        out = SparseOperator.scalar(self.basis, RF_ONE)
        for _ in range(k):
            out = self @ out
        return out

    def comm(self, other: "SparseOperator") -> "SparseOperator":
        return self @ other - other @ self

    def anticomm(self, other: "SparseOperator") -> "SparseOperator":
        return self @ other + other @ self

    # ---------------------------------------------------------------- action
    def apply(self, state: State) -> State:
        if state.is_zero():
            return State(state.level + self.degree, {})
        m = self.blocks.get(state.level)
        if m is None:
            raise TruncationError(f"operator {self.name or ''} not known on level {state.level}")
        return State(state.level + self.degree, m.apply(state.vec))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def equals(self, other: "SparseOperator") -> bool:
        """Exact equality on the common domain (which must be nonempty)."""
        if self.degree != other.degree:
            return False
        common = self.blocks.keys() & other.blocks.keys()
        return all(self.blocks[L] == other.blocks[L] for L in common)

    def first_difference(self, other: "SparseOperator"):
        """Return (level, row pp, column pp, difference) for the first mismatch, or None."""
        for L in sorted(self.blocks.keys() & other.blocks.keys()):
            d = self.blocks[L] - other.blocks[L]
            for i, j, x in d.nonzero_entries():
                return L, self.basis.levels[L + self.degree][i], self.basis.levels[L][j], x
        return None

    def to_json(self) -> dict:
        out = {"degree": self.degree, "name": self.name, "blocks": {}}
        for L in self.domain:
            out["blocks"][str(L)] = [
                {
                    "row": str(self.basis.levels[L + self.degree][i]),
                    "col": str(self.basis.levels[L][j]),
                    "value": x.to_json(),
                }
                for i, j, x in self.blocks[L].nonzero_entries()
            ]
        return out

    def __repr__(self):
        return f"SparseOperator({self.name or '?'}, degree={self.degree}, domain={self.domain})"
