"""Ontic layer: eight cube vertices, exact probability vectors, stochastic matrices.

Vertices are labelled 1..8.  Each carries a sign vector in (x, y, z) order;
the chart is fixed by the face sets U={1,2,3,4}, L={1,4,5,8}, F={1,2,5,6}
with F at x=+1, R at y=+1, U at z=+1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

N = 8
VERTICES = tuple(range(1, N + 1))

VERTEX_COORDS: dict[int, tuple[int, int, int]] = {
    1: (+1, -1, +1),
    2: (+1, +1, +1),
    3: (-1, +1, +1),
    4: (-1, -1, +1),
    5: (+1, -1, -1),
    6: (+1, +1, -1),
    7: (-1, +1, -1),
    8: (-1, -1, -1),
}

_COORDS_TO_VERTEX = {v: i for i, v in VERTEX_COORDS.items()}

ANTIPODAL_PAIRS = ((1, 7), (2, 8), (3, 5), (4, 6))


def check_index(i: int) -> int:
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= N:
        raise ValueError(f"ontic state index must be in 1..8, got {i!r}")
    return i


def antipode(i: int) -> int:
    x, y, z = VERTEX_COORDS[check_index(i)]
    return _COORDS_TO_VERTEX[(-x, -y, -z)]


def vertex_at(coords: Sequence[int]) -> int:
    return _COORDS_TO_VERTEX[tuple(coords)]


def _as_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'a/b' strings")
    return Fraction(x)


@dataclass(frozen=True)
class ProbVec8:
    """Probability vector over the eight ontic states, exact rationals.

    ``p[0]`` is the probability of vertex 1.
    """

    p: tuple[Fraction, ...]

    def __post_init__(self):
        p = tuple(_as_fraction(x) for x in self.p)
        if len(p) != N:
            raise ValueError(f"expected {N} entries, got {len(p)}")
        if any(x < 0 for x in p):
            raise ValueError(f"negative probability in {p}")
        if sum(p) != 1:
            raise ValueError(f"probabilities sum to {sum(p)}, not 1")
        object.__setattr__(self, "p", p)

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return N

    def __getitem__(self, k):
        return self.p[k]

    def prob(self, i: int) -> Fraction:
        """Probability of vertex ``i`` (1-based)."""
        return self.p[check_index(i) - 1]

    def to_json(self) -> list[str]:
        return [str(x) for x in self.p]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "ProbVec8":
        return cls(tuple(Fraction(s) for s in data))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.p) + ")"


def uniform() -> ProbVec8:
    return ProbVec8((Fraction(1, 8),) * N)


def extremal(i: int) -> ProbVec8:
    check_index(i)
    return ProbVec8(tuple(Fraction(int(j == i)) for j in VERTICES))


def mixture(weighted: Iterable[tuple[Fraction, ProbVec8]]) -> ProbVec8:
    acc = [Fraction(0)] * N
    for w, vec in weighted:
        w = _as_fraction(w)
        for k in range(N):
            acc[k] += w * vec[k]
    return ProbVec8(tuple(acc))


def inner(a: Sequence, b: Sequence) -> Fraction:
    """Exact dot product of two length-8 vectors (not necessarily normalized)."""
    if len(a) != N or len(b) != N:
        raise ValueError("inner() needs two length-8 vectors")
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


@dataclass(frozen=True)
class StochasticMatrix8:
    """Column-stochastic 8x8 matrix acting on column vectors, ``m[i][j]`` row-major."""

    m: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(_as_fraction(x) for x in row) for row in self.m)
        if len(m) != N or any(len(row) != N for row in m):
            raise ValueError("stochastic matrix must be 8x8")
        if any(x < 0 for row in m for x in row):
            raise ValueError("stochastic matrix has a negative entry")
        for j in range(N):
            col = sum(m[i][j] for i in range(N))
            if col != 1:
                raise ValueError(f"column {j + 1} sums to {col}")
        object.__setattr__(self, "m", m)

    def entry(self, i: int, j: int) -> Fraction:
        """1-based entry access, matching the usual matrix notation."""
        return self.m[check_index(i) - 1][check_index(j) - 1]

    def __matmul__(self, other: "StochasticMatrix8") -> "StochasticMatrix8":
        a, b = self.m, other.m
        return StochasticMatrix8(
            tuple(tuple(sum(a[i][k] * b[k][j] for k in range(N)) for j in range(N)) for i in range(N))
        )

    def transpose(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(zip(*self.m))


def basic_measurement_matrix() -> StochasticMatrix8:
    """Up/down test: two 4x4 diagonal blocks filled with 1/4."""
    q = Fraction(1, 4)
    return StochasticMatrix8(
        tuple(
            tuple(q if (i <= 4 and j <= 4) or (i > 4 and j > 4) else Fraction(0) for j in VERTICES)
            for i in VERTICES
        )
    )


def permutation_matrix(perm: Sequence[int]) -> StochasticMatrix8:
    """8x8 matrix with T[i][j] = 1 iff i = perm(j); ``perm[j-1]`` is the image of j."""
    return StochasticMatrix8(
        tuple(tuple(Fraction(int(perm[j - 1] == i)) for j in VERTICES) for i in VERTICES)
    )


def apply_matrix(m: StochasticMatrix8, p: ProbVec8) -> ProbVec8:
    return ProbVec8(tuple(sum(m.m[i][j] * p[j] for j in range(N)) for i in range(N)))
