"""Checks that the cube model and the qubit octahedron give the same statistics.

Every check appends to a :class:`Report` instead of raising, so a
convention error (handedness, face labelling) shows up as a pattern of
failures across the whole table.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .epistemic import (
    FACE_ORDER,
    MEASUREMENTS,
    Face,
    Measurement,
    face_state,
    face_weights,
    l1,
    outcome_distribution,
    state_from_bloch,
    transform,
)
from .errors import InvalidWeights
from .ontic import ProbVec8, mixture
from .qubit import (
    TOL,
    BlochState,
    born,
    clifford_of,
    density_of,
    embed,
    equal_up_to_phase,
    kappa_of,
)
from .rotations import Rotation, compose, cube_group, matvec3

# kernel of the map from face weights (U, D, L, R, F, B) to probability vectors
KERNEL = ((1, 1, -1, -1, 0, 0), (1, 1, 0, 0, -1, -1))


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Face):
        return x.name
    if isinstance(x, Rotation):
        return x.name
    if isinstance(x, Measurement):
        return x.axis
    if isinstance(x, ProbVec8):
        return x.to_json()
    if isinstance(x, BlochState):
        return x.to_json()
    if isinstance(x, dict):
        return {_fmt(k): _fmt(v) for k, v in x.items()}
    if isinstance(x, (tuple, list)):
        return [_fmt(v) for v in x]
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


@dataclass
class Failure:
    kind: str
    inputs: dict
    lhs: object
    rhs: object

    def to_json(self) -> dict:
        return {"kind": self.kind, "inputs": _fmt(self.inputs), "lhs": _fmt(self.lhs), "rhs": _fmt(self.rhs)}


@dataclass
class Report:
    checks: int = 0
    passes: int = 0
    failures: list[Failure] = field(default_factory=list)

    def record(self, ok: bool, kind: str, inputs: dict, lhs, rhs) -> None:
        self.checks += 1
        if ok:
            self.passes += 1
        else:
            self.failures.append(Failure(kind, inputs, lhs, rhs))

    def merge(self, other: "Report") -> "Report":
        return Report(self.checks + other.checks, self.passes + other.passes, self.failures + other.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_counterexample(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {
            "checks": self.checks,
            "passes": self.passes,
            "failures": [f.to_json() for f in self.failures],
        }

    def summary(self) -> str:
        return f"{self.checks} checks, {len(self.failures)} failures"


MatrixOf = Callable[[Rotation], Sequence[Sequence[int]]]
UnitaryOf = Callable[[Rotation], np.ndarray]


def _default_matrix(t: Rotation):
    return t.matrix


def _default_unitary(t: Rotation) -> np.ndarray:
    return clifford_of(t).u


def check_probability_equivalence(p: ProbVec8, m: Measurement, report: Report | None = None) -> Report:
    report = Report() if report is None else report
    b = embed(p)
    cube = outcome_distribution(m, p)
    qubit = {f: born(kappa_of(f), b) for f in m.faces}
    for f in m.faces:
        report.record(cube[f] == qubit[f], "probability", {"p": p, "measurement": m, "outcome": f}, cube[f], qubit[f])
    return report


def check_transformation_covariance(
    t: Rotation,
    p: ProbVec8,
    report: Report | None = None,
    matrix_of: MatrixOf = _default_matrix,
    unitary_of: UnitaryOf = _default_unitary,
) -> Report:
    """Exact Bloch covariance, then the same statement via U rho U^dag in floats."""
    report = Report() if report is None else report
    inputs = {"rotation": t, "p": p}
    b = embed(p)
    lhs = embed(transform(t, p)).r
    rhs = matvec3(matrix_of(t), b.r)
    report.record(lhs == rhs, "covariance", inputs, lhs, rhs)

    u = unitary_of(t)
    rho_lhs = density_of(BlochState(lhs)).rho
    rho_rhs = u @ density_of(b).rho @ u.conj().T
    err = float(np.max(np.abs(rho_lhs - rho_rhs)))
    report.record(err <= TOL, "covariance-density", inputs, lhs, err)
    return report


def _weights_tuple(w) -> tuple[Fraction, ...]:
    if isinstance(w, dict):
        w = [w.get(f, 0) for f in FACE_ORDER]
    w = tuple(Fraction(x) for x in w)
    if len(w) != 6:
        raise InvalidWeights("weight tuple needs 6 entries in U, D, L, R, F, B order")
    if any(x < 0 for x in w) or sum(w) != 1:
        raise InvalidWeights(f"weights {tuple(map(str, w))} are not convex")
    return w


def weights_to_state(w) -> ProbVec8:
    w = _weights_tuple(w)
    return mixture(zip(w, (face_state(f) for f in FACE_ORDER)))


def weights_to_bloch(w) -> tuple[Fraction, ...]:
    w = _weights_tuple(w)
    return tuple(sum(wk * f.normal[i] for wk, f in zip(w, FACE_ORDER)) for i in range(3))


def check_well_definedness(w, w2, report: Report | None = None) -> Report:
    """Two decompositions of the same state must give the same Bloch vector."""
    report = Report() if report is None else report
    if weights_to_state(w) != weights_to_state(w2):
        raise InvalidWeights("the two weight tuples produce different probability vectors")
    lhs, rhs = weights_to_bloch(w), weights_to_bloch(w2)
    report.record(lhs == rhs, "well-defined", {"w": list(_weights_tuple(w)), "w2": list(_weights_tuple(w2))}, lhs, rhs)
    return report


def check_clifford_composition(a: Rotation, b: Rotation, report: Report | None = None,
                               unitary_of: UnitaryOf = _default_unitary) -> Report:
    report = Report() if report is None else report
    ok = equal_up_to_phase(unitary_of(compose(a, b)), unitary_of(a) @ unitary_of(b))
    report.record(ok, "clifford-composition", {"a": a, "b": b}, compose(a, b), ok)
    return report


def random_rational(rng: random.Random, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-den, den), den)


def random_bloch(rng: random.Random, max_den: int = 12) -> tuple[Fraction, Fraction, Fraction]:
    """Three bounded-denominator rationals, redrawn until inside the octahedron."""
    while True:
        r = tuple(random_rational(rng, max_den) for _ in range(3))
        if l1(r) <= 1:
            return r


def random_epistemic_states(n: int, seed: int = 0, max_den: int = 12) -> list[ProbVec8]:
    rng = random.Random(seed)
    return [state_from_bloch(random_bloch(rng, max_den)) for _ in range(n)]


def _rational_between(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randint(0, max_den), max_den)


def kernel_perturbation(w, rng: random.Random, max_den: int = 12):
    """``w + s*K1 + t*K2`` for random rational s, t keeping every weight nonnegative.

    With weights ordered (U, D, L, R, F, B) the constraints are
    s <= min(L, R), t <= min(F, B) and s + t >= -min(U, D).
    """
    w = _weights_tuple(w)
    ud, lr, fb = min(w[0], w[1]), min(w[2], w[3]), min(w[4], w[5])
    s = _rational_between(rng, -ud, lr, max_den)
    t = _rational_between(rng, -ud - s, fb, max_den)
    w2 = tuple(x + s * k1 + t * k2 for x, k1, k2 in zip(w, *KERNEL))
    assert all(x >= 0 for x in w2) and sum(w2) == 1
    return w2


def random_convex_weights(rng: random.Random, max_den: int = 12) -> tuple[Fraction, ...]:
    raw = [rng.randint(0, max_den) for _ in range(6)]
    if sum(raw) == 0:
        raw[rng.randrange(6)] = 1
    total = sum(raw)
    return tuple(Fraction(x, total) for x in raw)


def well_definedness_sweep(n: int = 1000, seed: int = 0, report: Report | None = None) -> Report:
    report = Report() if report is None else report
    rng = random.Random(seed)
    for _ in range(n):
        w = random_convex_weights(rng)
        check_well_definedness(w, kernel_perturbation(w, rng), report)
    return report


def run_full_suite(
    n_random: int = 200,
    seed: int = 0,
    matrix_of: MatrixOf = _default_matrix,
    unitary_of: UnitaryOf = _default_unitary,
) -> Report:
    """Every extremal case plus ``n_random`` seeded octahedron states.

    ``matrix_of`` / ``unitary_of`` replace the rotation's 3x3 matrix or
    Clifford unitary; they exist for fault injection.
    """
    report = Report()
    group = cube_group()
    extremal = [face_state(f) for f in FACE_ORDER]

    for p in extremal:
        for m in MEASUREMENTS:
            check_probability_equivalence(p, m, report)
    for t in group:
        for p in extremal:
            check_transformation_covariance(t, p, report, matrix_of, unitary_of)
    for a in group:
        for b in group:
            check_clifford_composition(a, b, report, unitary_of)

    rng = random.Random(seed)
    for _ in range(n_random):
        p = state_from_bloch(random_bloch(rng))
        for m in MEASUREMENTS:
            check_probability_equivalence(p, m, report)
        t = group.elements[rng.randrange(len(group))]
        check_transformation_covariance(t, p, report, matrix_of, unitary_of)
        w = face_weights(p)
        check_well_definedness(w, kernel_perturbation(w, rng), report)
    return report
