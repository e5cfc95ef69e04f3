"""What an agent restricted to face measurements and cube rotations can see.

Faces are the six sets of four vertices sharing a coordinate sign.  A
measurement along an axis reports which of the two faces on that axis holds
the system, then leaves it uniformly spread over that face.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cache, lru_cache
from fractions import Fraction
from typing import Sequence

from .errors import NotEpistemic, OutcomeNotOnAxis, OutsideOctahedron
from .ontic import (
    N,
    VERTEX_COORDS,
    VERTICES,
    ProbVec8,
    StochasticMatrix8,
    check_index,
    inner,
    mixture,
)
from .rotations import AXES, Rotation, inverse, matvec3
from .rng import ShotRNG


class Face(Enum):
    U = ("z", +1)
    D = ("z", -1)
    R = ("y", +1)
    L = ("y", -1)
    F = ("x", +1)
    B = ("x", -1)

    @property
    def axis(self) -> str:
        return self.value[0]

    @property
    def sign(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        return self.name

    @property
    def normal(self) -> tuple[int, int, int]:
        k = AXES.index(self.axis)
        return tuple(self.sign if j == k else 0 for j in range(3))

    @property
    def opposite(self) -> "Face":
        return face_of(self.axis, -self.sign)

    @property
    def vertices(self) -> frozenset[int]:
        k = AXES.index(self.axis)
        return frozenset(i for i in VERTICES if VERTEX_COORDS[i][k] == self.sign)

    def __repr__(self):
        return f"Face.{self.name}"

    def __str__(self):
        return self.name


# weight tuples over faces use this order
FACE_ORDER = (Face.U, Face.D, Face.L, Face.R, Face.F, Face.B)


def face_of(axis: str, sign: int) -> Face:
    return Face((axis, sign))


def face_from_normal(n: Sequence[int]) -> Face:
    for f in Face:
        if f.normal == tuple(n):
            return f
    raise ValueError(f"{n} is not a face normal")


def parse_face(label: str) -> Face:
    try:
        return Face[label]
    except KeyError:
        raise ValueError(f"unknown face {label!r}") from None


@dataclass(frozen=True)
class Measurement:
    """Test distinguishing the two opposite faces on ``axis``."""

    axis: str

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of x, y, z; got {self.axis!r}")

    @property
    def faces(self) -> tuple[Face, Face]:
        return face_of(self.axis, +1), face_of(self.axis, -1)

    def __str__(self):
        return self.axis


MEASUREMENTS = tuple(Measurement(a) for a in AXES)


@cache
def face_state(f: Face) -> ProbVec8:
    q = Fraction(1, 4)
    verts = f.vertices
    return ProbVec8(tuple(q if i in verts else Fraction(0) for i in VERTICES))


def face_image(t: Rotation, f: Face) -> Face:
    return face_from_normal(matvec3(t.matrix, f.normal))


def transform(t: Rotation, p: ProbVec8) -> ProbVec8:
    """Push ``p`` forward along the vertex permutation: (Tp)[t(j)] = p[j]."""
    out = [Fraction(0)] * N
    for j in VERTICES:
        out[t(j) - 1] = p[j - 1]
    return ProbVec8(tuple(out))


def measurement_for(t: Rotation) -> tuple[Measurement, tuple[Face, Face]]:
    """Measurement realised by conjugating the up/down test with ``t``.

    The conjugated procedure reports U exactly when the system sits on
    ``t(U)``, so the ordered pair is ``(t(U), t(D))``.
    """
    pair = (face_image(t, Face.U), face_image(t, Face.D))
    return Measurement(pair[0].axis), pair


def outcome_distribution(m: Measurement, p: Sequence) -> dict[Face, Fraction]:
    """Outcome probabilities 4 <p_face, p> for the two faces on ``m.axis``."""
    return {f: 4 * inner(face_state(f), p) for f in m.faces}


def measurement_channel(m: Measurement, p: ProbVec8) -> ProbVec8:
    """Ensemble state after measuring without reading the outcome."""
    dist = outcome_distribution(m, p)
    return mixture((w, face_state(f)) for f, w in dist.items())


def measurement_matrix(m: Measurement) -> StochasticMatrix8:
    """Stochastic matrix of :func:`measurement_channel`: 1/4 within each face on the axis."""
    k = AXES.index(m.axis)
    q = Fraction(1, 4)
    return StochasticMatrix8(
        tuple(
            tuple(q if VERTEX_COORDS[i][k] == VERTEX_COORDS[j][k] else Fraction(0) for j in VERTICES)
            for i in VERTICES
        )
    )


def conjugated_channel(t: Rotation, p: ProbVec8) -> ProbVec8:
    """T . M_z . T^-1 applied to ``p``, built literally from its three stages."""
    return transform(t, measurement_channel(Measurement("z"), transform(inverse(t), p)))


def conditional_update(m: Measurement, outcome: Face) -> ProbVec8:
    if outcome.axis != m.axis:
        raise OutcomeNotOnAxis(f"face {outcome} is not an outcome of the {m.axis} measurement")
    return face_state(outcome)


def bloch_of(p: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """Signed face-pair readings: (F - B, R - L, U - D) outcome probabilities.

    4 <p_plus - p_minus, p> reduces to the signed vertex sum sum_i v_i[k] p_i.
    """
    out = [Fraction(0)] * 3
    for i in VERTICES:
        pi = p[i - 1]
        if pi:
            for k, s in enumerate(VERTEX_COORDS[i]):
                out[k] = out[k] + pi if s > 0 else out[k] - pi
    return tuple(out)


def l1(r: Sequence) -> Fraction:
    return sum((abs(Fraction(x)) for x in r), Fraction(0))


def state_from_bloch(r: Sequence) -> ProbVec8:
    """The epistemic state with Bloch vector ``r``: p_i = (1 + v_i . r) / 8."""
    r = tuple(Fraction(x) for x in r)
    if len(r) != 3:
        raise ValueError("Bloch vector needs 3 components")
    if l1(r) > 1:
        raise OutsideOctahedron(f"|r|_1 = {l1(r)} > 1 for r = {tuple(map(str, r))}")
    return ProbVec8(
        tuple((1 + sum(v * x for v, x in zip(VERTEX_COORDS[i], r))) / 8 for i in VERTICES)
    )


def membership(p: ProbVec8) -> bool:
    """True iff ``p`` is a convex mixture of the six face states."""
    return epistemic_bloch(p) is not None


@lru_cache(maxsize=4096)
def epistemic_bloch(p: ProbVec8) -> tuple[Fraction, Fraction, Fraction] | None:
    """Bloch vector of ``p`` if ``p`` is epistemic, else None.

    Decides by reconstruction: ``p`` must equal the state rebuilt from its
    own readings, and those readings must lie in the octahedron.
    """
    r = bloch_of(p)
    if l1(r) > 1 or state_from_bloch(r) != p:
        return None
    return r


def face_weights(p: ProbVec8) -> dict[Face, Fraction] | None:
    """One convex decomposition of ``p`` over face states, or None if there is none.

    Each axis gets its signed reading on the matching face; whatever mass
    is left over is spread evenly across all six faces.
    """
    if not membership(p):
        return None
    r = bloch_of(p)
    slack = (1 - l1(r)) / 6
    w = {f: slack for f in FACE_ORDER}
    for k, axis in enumerate(AXES):
        w[face_of(axis, 1 if r[k] >= 0 else -1)] += abs(r[k])
    return w


@dataclass(frozen=True)
class EpistemicState:
    p: ProbVec8

    def __post_init__(self):
        if not membership(self.p):
            raise NotEpistemic(f"{self.p} is not a mixture of face states")

    @property
    def bloch(self):
        return bloch_of(self.p)


def face_of_vertex(m: Measurement, w: int) -> Face:
    k = AXES.index(m.axis)
    return face_of(m.axis, VERTEX_COORDS[check_index(w)][k])


def ontic_measure(m: Measurement, w: int, rng: ShotRNG) -> tuple[Face, int]:
    """Measure a single system sitting at vertex ``w``.

    Returns the face containing ``w`` and a fresh vertex drawn uniformly
    from that face.  Consumes one word from ``rng``.
    """
    outcome = face_of_vertex(m, w)
    verts = sorted(outcome.vertices)
    return outcome, verts[rng.below(4)]


def ontic_transform(t: Rotation, w: int) -> int:
    return t(check_index(w))
