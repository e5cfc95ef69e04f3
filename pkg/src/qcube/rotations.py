"""The 24 proper rotations of the cube, acting on vertices and on R^3.

The group is generated by breadth-first closure from three quarter turns
given in cycle notation; nothing else about it is hard-coded.

Composition convention: ``compose(a, b)`` applies ``b`` first, then ``a``.
"""
from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from itertools import permutations
from typing import Sequence

from .ontic import ANTIPODAL_PAIRS, N, VERTEX_COORDS, VERTICES

Matrix3 = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

AXES = ("x", "y", "z")

GENERATOR_CYCLES = {
    "x": "(1562)(3487)",
    "y": "(1584)(2673)",
    "z": "(1234)(5678)",
}

_IDENTITY_PERM = tuple(VERTICES)
_IDENTITY_MATRIX: Matrix3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def parse_cycles(text: str) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1562)(3487)`` into an image tuple.

    ``result[i-1]`` is the image of vertex ``i``.  Digits inside a cycle
    are single vertex labels; fixed points may be omitted.
    """
    image = list(VERTICES)
    seen: set[int] = set()
    body = text.replace(" ", "")
    if not re.fullmatch(r"(\([1-8]*\))*", body):
        raise ValueError(f"bad cycle notation {text!r}")
    for cyc in re.findall(r"\(([1-8]*)\)", body):
        labels = [int(c) for c in cyc]
        if seen.intersection(labels) or len(set(labels)) != len(labels):
            raise ValueError(f"cycles in {text!r} are not disjoint")
        seen.update(labels)
        for a, b in zip(labels, labels[1:] + labels[:1]):
            image[a - 1] = b
    return tuple(image)


def format_cycles(perm: Sequence[int]) -> str:
    """Inverse of :func:`parse_cycles`; identity prints as ``()``."""
    out = []
    done: set[int] = set()
    for start in VERTICES:
        if start in done or perm[start - 1] == start:
            continue
        cyc = [start]
        done.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cyc.append(nxt)
            done.add(nxt)
            nxt = perm[nxt - 1]
        out.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def matmul3(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def matvec3(m: Sequence[Sequence], v: Sequence):
    a, b, c = v
    return tuple(row[0] * a + row[1] * b + row[2] * c for row in m)


def det3(m: Matrix3) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def transpose3(m: Matrix3) -> Matrix3:
    return tuple(zip(*m))


def matrix_from_perm(perm: Sequence[int]) -> Matrix3:
    """Recover the linear map realised by a vertex permutation.

    Uses sum_i (v_i)_k v_i = 8 e_k, so column k of the matrix is
    sum_i (v_i)_k v_perm(i) / 8.  Raises if that is not an integer matrix.
    """
    cols = []
    for k in range(3):
        col = [Fraction(0)] * 3
        for i in VERTICES:
            vi, vj = VERTEX_COORDS[i], VERTEX_COORDS[perm[i - 1]]
            for r in range(3):
                col[r] += Fraction(vi[k] * vj[r], 8)
        if any(c.denominator != 1 for c in col):
            raise ValueError(f"permutation {format_cycles(perm)} is not linear on the cube")
        cols.append([int(c) for c in col])
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def _check_signed_perm_matrix(m: Matrix3) -> None:
    for row in m:
        if sorted(abs(x) for x in row) != [0, 0, 1]:
            raise ValueError(f"matrix {m} is not a signed permutation matrix")
    for col in zip(*m):
        if sorted(abs(x) for x in col) != [0, 0, 1]:
            raise ValueError(f"matrix {m} is not a signed permutation matrix")
    if det3(m) != 1:
        raise ValueError(f"matrix {m} has determinant {det3(m)}; reflections are not rotations")


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def classify(m: Matrix3, perm: Sequence[int]) -> str:
    """Canonical name from axis and angle: ``id``, ``Rz+90``, ``Rx180``, ``V1-120``, ``E12``."""
    trace = m[0][0] + m[1][1] + m[2][2]
    if trace == 3:
        return "id"
    if trace == 1 or (trace == -1 and any(m[k][k] == 1 for k in range(3))):
        k = next(k for k in range(3) if m[k][k] == 1)
        if trace == -1:
            return f"R{AXES[k]}180"
        u = tuple(int(j == (k + 1) % 3) for j in range(3))
        w = tuple(int(j == (k + 2) % 3) for j in range(3))
        return f"R{AXES[k]}{'+' if matvec3(m, u) == w else '-'}90"
    if trace == 0:
        fixed = [i for i in VERTICES if perm[i - 1] == i]
        v = min(fixed)
        n = VERTEX_COORDS[v]
        # any vector orthogonal to n; sign of n.(u x Mu) gives the sense
        u = (n[1], -n[0], 0) if (n[0], n[1]) != (0, 0) else (1, 0, 0)
        sense = _dot(n, _cross(u, matvec3(m, u)))
        return f"V{v}{'+' if sense > 0 else '-'}120"
    # edge half-turn: the axis passes through midpoints of two opposite edges
    for a in VERTICES:
        for b in VERTICES:
            if a < b and perm[a - 1] == b and perm[b - 1] == a:
                va, vb = VERTEX_COORDS[a], VERTEX_COORDS[b]
                if sum(x != y for x, y in zip(va, vb)) == 1:
                    return f"E{a}{b}"
    raise ValueError(f"cannot classify rotation {m}")


@dataclass(frozen=True)
class Rotation:
    """A cube rotation as a vertex permutation plus its signed integer 3x3 matrix.

    Equality and hashing use ``perm`` only; ``matrix`` is checked against it.
    """

    perm: tuple[int, ...]
    matrix: Matrix3 = field(compare=False)

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        if sorted(perm) != list(VERTICES):
            raise ValueError(f"{perm} is not a permutation of 1..8")
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        _check_signed_perm_matrix(m)
        for i in VERTICES:
            if matvec3(m, VERTEX_COORDS[i]) != VERTEX_COORDS[perm[i - 1]]:
                raise ValueError(f"matrix {m} does not realise {format_cycles(perm)} on vertex {i}")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "matrix", m)

    @cached_property
    def name(self) -> str:
        return classify(self.matrix, self.perm)

    @classmethod
    def from_perm(cls, perm: Sequence[int]) -> "Rotation":
        perm = tuple(perm)
        return cls(perm, matrix_from_perm(perm))

    @classmethod
    def from_cycles(cls, text: str) -> "Rotation":
        return cls.from_perm(parse_cycles(text))

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    @property
    def cycles(self) -> str:
        return format_cycles(self.perm)

    def __repr__(self):
        return f"Rotation({self.name}, {self.cycles})"


def identity() -> Rotation:
    return Rotation(_IDENTITY_PERM, _IDENTITY_MATRIX)


def generator(axis: str) -> Rotation:
    """Quarter turn (+90 degrees, right-handed) about the given axis."""
    if axis not in GENERATOR_CYCLES:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}")
    return Rotation.from_cycles(GENERATOR_CYCLES[axis])


def compose(a: Rotation, b: Rotation) -> Rotation:
    """``a`` after ``b``."""
    perm = tuple(a.perm[b.perm[i - 1] - 1] for i in VERTICES)
    return Rotation(perm, matmul3(a.matrix, b.matrix))


def inverse(a: Rotation) -> Rotation:
    perm = [0] * N
    for i in VERTICES:
        perm[a.perm[i - 1] - 1] = i
    return Rotation(tuple(perm), transpose3(a.matrix))


def power(a: Rotation, k: int) -> Rotation:
    if k < 0:
        a, k = inverse(a), -k
    out = identity()
    for _ in range(k):
        out = compose(a, out)
    return out


def quarter_turns(axis: str, k: int) -> Rotation:
    """Rotation by ``k * 90`` degrees about ``axis``."""
    return power(generator(axis), k % 4)


def order(a: Rotation) -> int:
    e, cur, k = identity(), a, 1
    while cur != e:
        cur, k = compose(a, cur), k + 1
    return k


def diagonal_action(a: Rotation) -> tuple[int, ...]:
    """Induced permutation of the four body diagonals.

    Diagonals are indexed 0..3 in the order {1,7}, {2,8}, {3,5}, {4,6};
    ``result[k]`` is the index of the image of diagonal ``k``.
    """
    where = {v: k for k, pair in enumerate(ANTIPODAL_PAIRS) for v in pair}
    return tuple(where[a(pair[0])] for pair in ANTIPODAL_PAIRS)


@dataclass(frozen=True)
class RotationGroup:
    elements: tuple[Rotation, ...]
    cayley: tuple[tuple[int, ...], ...]
    # BFS tree: index -> (generator axis, parent index); identity maps to None
    tree: tuple[tuple[str, int] | None, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {r: k for k, r in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, r: Rotation) -> int:
        return self._index[r]

    def __contains__(self, r) -> bool:
        return r in self._index

    def by_name(self, name: str) -> Rotation:
        for r in self.elements:
            if r.name == name:
                return r
        raise KeyError(name)

    def word(self, r: Rotation) -> tuple[str, ...]:
        """Generator axes whose left-to-right product equals ``r`` (BFS tree path)."""
        out = []
        k = self.index(r)
        while self.tree[k] is not None:
            axis, k = self.tree[k]
            out.append(axis)
        return tuple(out)

    def inverse_index(self, k: int) -> int:
        return self.cayley[k].index(0)

    def conjugacy_classes(self) -> list[list[Rotation]]:
        """Classes by brute-force conjugation g a g^-1 over the Cayley table."""
        classes: list[list[Rotation]] = []
        seen: set[int] = set()
        n = len(self.elements)
        for a in range(n):
            if a in seen:
                continue
            cls = sorted({self.cayley[self.cayley[g][a]][self.inverse_index(g)] for g in range(n)})
            seen.update(cls)
            classes.append([self.elements[k] for k in cls])
        return classes

    def order_counts(self) -> dict[int, int]:
        return dict(sorted(Counter(order(a) for a in self.elements).items()))


def generate_group(gens: dict[str, Rotation] | None = None) -> RotationGroup:
    """Breadth-first closure of the generators under left multiplication."""
    if gens is None:
        gens = {axis: generator(axis) for axis in AXES}
    e = identity()
    elements = [e]
    index = {e: 0}
    tree: list[tuple[str, int] | None] = [None]
    queue = deque([e])
    while queue:
        a = queue.popleft()
        for axis, g in gens.items():
            b = compose(g, a)
            if b not in index:
                index[b] = len(elements)
                elements.append(b)
                tree.append((axis, index[a]))
                queue.append(b)
    by_perm = {r.perm: k for r, k in index.items()}
    cayley = tuple(
        tuple(by_perm[tuple(a.perm[i - 1] for i in b.perm)] for b in elements) for a in elements
    )
    return RotationGroup(tuple(elements), cayley, tuple(tree))


@cache
def cube_group() -> RotationGroup:
    """The group generated from the three quarter turns, built once."""
    return generate_group()


def s4() -> set[tuple[int, ...]]:
    return set(permutations(range(4)))
