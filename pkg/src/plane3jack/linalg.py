"""Sparse matrices and exact elimination over the field Q(h1, h2).

Matrices are stored column-wise as ``{row: value}`` dictionaries; zero
entries are never stored.  Elimination picks the pivot of smallest total
degree in each column, which keeps rational-function growth in check on
the small systems this package produces.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exactfield import RF_ONE, RF_ZERO, RationalFunction, _as_rf

__all__ = [
    "SparseMatrix",
    "Vector",
    "rank",
    "nullspace",
    "solve",
    "SingularSystemError",
]

Vector = dict  # index -> RationalFunction, zeros omitted


class SingularSystemError(ArithmeticError):
    """A linear system has no solution or no unique solution."""


def _vadd(acc: dict, v: dict, scale: RationalFunction | None = None) -> None:
    for i, x in v.items():
        y = x if scale is None else x * scale
        if i in acc:
            s = acc[i] + y
            if s.is_zero():
                del acc[i]
            else:
                acc[i] = s
        elif not y.is_zero():
            acc[i] = y


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        self.cols = [dict(c) for c in cols]

    @classmethod
    def identity(cls, n: int, value=RF_ONE) -> "SparseMatrix":
        return cls(n, n, [{i: value} if not value.is_zero() else {} for i in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        m = cls(nr, nc)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = _as_rf(v) if not isinstance(v, RationalFunction) else v
                if not v.is_zero():
                    m.cols[j][i] = v
        return m

    def __getitem__(self, ij) -> RationalFunction:
        i, j = ij
        return self.cols[j].get(i, RF_ZERO)

    def set(self, i: int, j: int, value: RationalFunction) -> None:
        if value.is_zero():
            self.cols[j].pop(i, None)
        else:
            self.cols[j][i] = value

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, x in v.items():
            _vadd(out, self.cols[j], x)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _vadd(c, b)
            cols.append(c)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other * (-RF_ONE)

    def __neg__(self):
        return self * (-RF_ONE)

    def __mul__(self, scalar) -> "SparseMatrix":
        s = _as_rf(scalar) if not isinstance(scalar, RationalFunction) else scalar
        if s.is_zero():
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, [{i: x * s for i, x in c.items()} for c in self.cols])

    __rmul__ = __mul__

    def transpose(self) -> "SparseMatrix":
        t = SparseMatrix(self.ncols, self.nrows)
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                t.cols[i][j] = x
        return t

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def nonzero_entries(self) -> Iterable:
        for j, c in enumerate(self.cols):
            for i, x in sorted(c.items()):
                yield i, j, x

    def to_dense(self) -> list:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={sum(len(c) for c in self.cols)})"


def _cost(x: RationalFunction) -> int:
    return x.num.degree() + x.den.degree()


def _row_reduce(rows: list, ncols: int):
    """In-place reduced row echelon form of ``rows`` (list of {col: val}).

    Returns the pivot columns in order; ``rows`` is replaced by the
    nonzero reduced rows, each normalized to pivot value 1.
    """
    pivots = []
    work = [dict(r) for r in rows if r]
    reduced = []
    for col in range(ncols):
        cands = [r for r in work if col in r]
        if not cands:
            continue
        piv = min(cands, key=lambda r: (_cost(r[col]), len(r)))
        work.remove(piv)
        inv = piv[col].inverse()
        piv = {c: v * inv for c, v in piv.items()}
        for r in work:
            if col in r:
                f = -r[col]
                _vadd(r, piv, f)
                r.pop(col, None)
        for r in reduced:
            if col in r:
                f = -r[col]
                _vadd(r, piv, f)
                r.pop(col, None)
        work = [r for r in work if r]
        reduced.append(piv)
        pivots.append(col)
    rows[:] = reduced
    return pivots


def rank(m: SparseMatrix) -> int:
    rows = m.transpose().cols
    return len(_row_reduce(list(rows), m.ncols))


def nullspace(m: SparseMatrix) -> list:
    """Basis of {v : m v = 0}, one dict per basis vector (free variable set to 1)."""
    rows = m.transpose().cols  # row i as {col: val}
    rows = [dict(r) for r in rows]
    pivots = _row_reduce(rows, m.ncols)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = {f: RF_ONE}
        for p, r in zip(pivots, rows):
            x = r.get(f)
            if x is not None:
                v[p] = -x
        basis.append(v)
    return basis


def solve(m: SparseMatrix, b: dict, *, allow_free: bool = False):
    """Solve ``m x = b`` exactly.

    Raises SingularSystemError if inconsistent, or if the solution is not
    unique and ``allow_free`` is false.  With ``allow_free`` the particular
    solution with all free variables zero is returned together with the
    nullspace basis.
    """
    n = m.ncols
    aug = [dict() for _ in range(m.nrows)]
    for j, c in enumerate(m.cols):
        for i, x in c.items():
            aug[i][j] = x
    for i, x in b.items():
        if not x.is_zero():
            aug[i][n] = x
    pivots = _row_reduce(aug, n + 1)
    if n in pivots:
        raise SingularSystemError("inconsistent linear system")
    x = {}
    for p, r in zip(pivots, aug):
        v = r.get(n)
        if v is not None:
            x[p] = v
    free = [c for c in range(n) if c not in set(pivots)]
    if free and not allow_free:
        raise SingularSystemError(f"solution not unique: {len(free)} free variables")
    if allow_free:
        basis = []
        for f in free:
            v = {f: RF_ONE}
            for p, r in zip(pivots, aug):
                y = r.get(f)
                if y is not None:
                    v[p] = -y
            basis.append(v)
        return x, basis
    return x
