"""Plane partitions (3D Young diagrams) and their boxes.

Heights are stored row by row: ``heights[x][y]`` is the number of cubes
piled over the cell in row ``x`` (the x-axis) and column ``y`` (the
y-axis), so the cube (x, y, z) belongs to the diagram iff
``z < heights[x][y]``.  A single row ``(1, 1)`` is therefore the two-box
line along y, the column ``((1,), (1,))`` the line along x, and ``(2,)``
the line along z.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator, NamedTuple

from .exactfield import RationalFunction, h1, h2, h3

__all__ = [
    "Box",
    "PlanePartition",
    "enumerate_pp",
    "count_pp",
    "macmahon_coefficients",
    "addable",
    "removable",
    "box_weight",
    "axis_permute",
    "axis_to_h_perm",
    "AXES",
    "AXIS_PERMS",
    "line",
]

AXES = ("x", "y", "z")
# every permutation of the axis indices (x=0, y=1, z=2)
AXIS_PERMS = tuple(permutations(range(3)))


class Box(NamedTuple):
    x: int
    y: int
    z: int


class PlanePartition:
    """Immutable plane partition with trailing zeros trimmed."""

    __slots__ = ("heights", "_hash", "_size")

    def __init__(self, heights=()):
        rows = []
        for row in heights:
            r = list(row)
            while r and r[-1] == 0:
                r.pop()
            rows.append(tuple(int(v) for v in r))
        while rows and not rows[-1]:
            rows.pop()
        self.heights = tuple(rows)
        self._check()
        self._hash = hash(self.heights)
        self._size = sum(sum(r) for r in self.heights)

    def _check(self):
        hs = self.heights
        for i, row in enumerate(hs):
            if any(v < 0 for v in row):
                raise ValueError(f"negative height in {hs}")
            if any(row[j] < row[j + 1] for j in range(len(row) - 1)):
                raise ValueError(f"row {i} of {hs} is not nonincreasing")
            if i + 1 < len(hs):
                below = hs[i + 1]
                if len(below) > len(row) or any(below[j] > row[j] for j in range(len(below))):
                    raise ValueError(f"columns of {hs} are not nonincreasing")
            if not row:
                raise ValueError(f"empty interior row in {hs}")

    # ------------------------------------------------------------------ basics
    def height(self, x: int, y: int) -> int:
        if x < 0 or y < 0:
            return 10**9  # outside the octant behaves like an infinite wall
        if x < len(self.heights) and y < len(self.heights[x]):
            return self.heights[x][y]
        return 0

    def __len__(self):
        return self._size

    size = property(__len__)

    def __contains__(self, b) -> bool:
        x, y, z = b
        return 0 <= z < self.height(x, y) and x >= 0 and y >= 0

    def boxes(self) -> list:
        return [
            Box(x, y, z)
            for x, row in enumerate(self.heights)
            for y, hgt in enumerate(row)
            for z in range(hgt)
        ]

    def add(self, b) -> "PlanePartition":
        x, y, z = b
        if self.height(x, y) != z:
            raise ValueError(f"box {tuple(b)} cannot be added to {self}")
        rows = [list(r) for r in self.heights]
        while len(rows) <= x:
            rows.append([])
        while len(rows[x]) <= y:
            rows[x].append(0)
        rows[x][y] += 1
        return PlanePartition(rows)

    def remove(self, b) -> "PlanePartition":
        x, y, z = b
        if self.height(x, y) != z + 1:
            raise ValueError(f"box {tuple(b)} is not on top of {self}")
        rows = [list(r) for r in self.heights]
        rows[x][y] -= 1
        return PlanePartition(rows)

    @classmethod
    def from_boxes(cls, boxes) -> "PlanePartition":
        rows: dict = {}
        for x, y, z in boxes:
            rows[(x, y)] = max(rows.get((x, y), 0), z + 1)
        if not rows:
            return cls(())
        nx = max(k[0] for k in rows) + 1
        ny = max(k[1] for k in rows) + 1
        pp = cls([[rows.get((i, j), 0) for j in range(ny)] for i in range(nx)])
        if len(pp) != len(set(map(tuple, boxes))):
            raise ValueError("box set is not a plane partition")
        return pp

    # ------------------------------------------------------------------ format
    @classmethod
    def parse(cls, text: str) -> "PlanePartition":
        """Parse the row format ``"2 1 / 1"``; an empty string is the empty diagram."""
        text = text.strip()
        if not text or text in ("0", "()", "empty"):
            return cls(())
        return cls([[int(t) for t in row.split()] for row in text.split("/")])

    def __str__(self):
        if not self.heights:
            return "()"
        return " / ".join(" ".join(str(v) for v in row) for row in self.heights)

    def __repr__(self):
        return f"PlanePartition({[list(r) for r in self.heights]})"

    def to_json(self) -> list:
        return [list(r) for r in self.heights]

    def sort_key(self):
        flat = tuple(v for row in self.heights for v in row)
        return (flat, tuple(len(r) for r in self.heights))

    def __eq__(self, other):
        return isinstance(other, PlanePartition) and self.heights == other.heights

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def _partitions_under(total: int, bound: tuple) -> Iterator[tuple]:
    """Nonincreasing rows summing to ``total`` bounded entrywise by ``bound``."""

    def rec(pos, remaining, cap):
        if remaining == 0:
            yield ()
            return
        if pos >= len(bound):
            return
        for v in range(min(remaining, cap, bound[pos]), 0, -1):
            for rest in rec(pos + 1, remaining - v, v):
                yield (v,) + rest

    yield from rec(0, total, total)


@lru_cache(maxsize=None)
def enumerate_pp(n: int) -> tuple:
    """All plane partitions of size ``n``, sorted by flattened rows."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    out = []

    def rec(rows, remaining, bound):
        if remaining == 0:
            out.append(PlanePartition(rows))
            return
        for k in range(1, remaining + 1):
            for row in _partitions_under(k, bound):
                rec(rows + [row], remaining - k, row)

    rec([], n, (n,) * n if n else ())
    return tuple(sorted(out))


def count_pp(n: int) -> int:
    return len(enumerate_pp(n))


def macmahon_coefficients(nmax: int) -> list:
    """Coefficients of prod_{k>=1} (1 - q^k)^(-k) up to q^nmax, by series expansion."""
    coeffs = [1] + [0] * nmax
    for k in range(1, nmax + 1):
        # multiply k times by 1/(1 - q^k) = 1 + q^k + q^2k + ...
        for _ in range(k):
            for i in range(k, nmax + 1):
                coeffs[i] += coeffs[i - k]
    return coeffs


def addable(pp: PlanePartition) -> list:
    """Boxes whose addition keeps ``pp`` a plane partition."""
    out = []
    nx = len(pp.heights)
    for x in range(nx + 1):
        ny = len(pp.heights[x]) if x < nx else 0
        for y in range(ny + 1):
            z = pp.height(x, y)
            if pp.height(x - 1, y) > z and pp.height(x, y - 1) > z:
                out.append(Box(x, y, z))
    return out


def removable(pp: PlanePartition) -> list:
    """Boxes of ``pp`` whose removal keeps it a plane partition."""
    out = []
    for x, row in enumerate(pp.heights):
        for y, z in enumerate(row):
            if z > 0 and pp.height(x + 1, y) < z and pp.height(x, y + 1) < z:
                out.append(Box(x, y, z - 1))
    return out


_AXIS_WEIGHT = (h2, h1, h3)  # x, y, z


@lru_cache(maxsize=None)
def box_weight(b) -> RationalFunction:
    """h_box = h1*y + h2*x + h3*z."""
    x, y, z = b
    return h1 * y + h2 * x + h3 * z


# axis index (x=0, y=1, z=2) -> h index (h1=0, h2=1, h3=2)
_AXIS_TO_H = (1, 0, 2)


def axis_to_h_perm(g) -> tuple:
    """h-relabelling induced by the axis permutation ``g``.

    ``g[a]`` is the axis that axis ``a`` is sent to.  The returned tuple
    ``s`` satisfies box_weight(g.b) = box_weight(b) with h_i -> h_{s[i]}.
    """
    s = [0, 0, 0]
    for a in range(3):
        s[_AXIS_TO_H[a]] = _AXIS_TO_H[g[a]]
    return tuple(s)


def axis_permute(pp: PlanePartition, g) -> PlanePartition:
    """Image of ``pp`` under the axis permutation ``g`` (see axis_to_h_perm)."""
    g = tuple(g)
    if g == (0, 1, 2):
        return pp
    moved = []
    for b in pp.boxes():
        c = [0, 0, 0]
        for a in range(3):
            c[g[a]] = b[a]
        moved.append(tuple(c))
    return PlanePartition.from_boxes(moved)


def line(n: int, axis: str) -> PlanePartition:
    """The n-box straight line along ``axis``."""
    if n == 0:
        return PlanePartition(())
    if axis == "y":
        return PlanePartition([[1] * n])
    if axis == "x":
        return PlanePartition([[1]] * n)
    if axis == "z":
        return PlanePartition([[n]])
    raise ValueError(f"unknown axis {axis!r}")
