"""Qubit side: the stabilizer octahedron, Pauli eigenstates and single-qubit Cliffords.

States are carried as exact rational Bloch vectors.  Complex 2x2 matrices
are floating point and only serve as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from typing import Callable, Sequence

import numpy as np

from .epistemic import Face, epistemic_bloch, l1
from .errors import NotEpistemic, OutcomeNotOnAxis, OutsideOctahedron
from .ontic import ProbVec8
from .rotations import AXES, Matrix3, Rotation, RotationGroup, cube_group

TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


@dataclass(frozen=True)
class BlochState:
    r: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        r = tuple(Fraction(x) for x in self.r)
        if len(r) != 3:
            raise ValueError("Bloch vector needs 3 components")
        if l1(r) > 1:
            raise OutsideOctahedron(f"|r|_1 = {l1(r)} > 1")
        object.__setattr__(self, "r", r)

    def to_json(self) -> list[str]:
        return [str(x) for x in self.r]

    def __iter__(self):
        return iter(self.r)


class PauliEigenstate(Enum):
    ZERO = "0"
    ONE = "1"
    PLUS = "+"
    MINUS = "-"
    PLUS_I = "+i"
    MINUS_I = "-i"

    @property
    def normal(self) -> tuple[int, int, int]:
        return _NORMALS[self]

    @property
    def axis(self) -> str:
        return AXES[next(k for k in range(3) if self.normal[k])]

    @property
    def face(self) -> Face:
        return _FACE_OF[self]

    @property
    def opposite(self) -> "PauliEigenstate":
        return kappa_of(self.face.opposite)

    def ket(self) -> np.ndarray:
        s = 1 / np.sqrt(2)
        return {
            PauliEigenstate.ZERO: np.array([1, 0], dtype=complex),
            PauliEigenstate.ONE: np.array([0, 1], dtype=complex),
            PauliEigenstate.PLUS: np.array([s, s], dtype=complex),
            PauliEigenstate.MINUS: np.array([s, -s], dtype=complex),
            PauliEigenstate.PLUS_I: np.array([s, 1j * s], dtype=complex),
            PauliEigenstate.MINUS_I: np.array([s, -1j * s], dtype=complex),
        }[self]

    def projector(self) -> np.ndarray:
        k = self.ket()
        return np.outer(k, k.conj())


_NORMALS = {
    PauliEigenstate.ZERO: (0, 0, 1),
    PauliEigenstate.ONE: (0, 0, -1),
    PauliEigenstate.PLUS: (1, 0, 0),
    PauliEigenstate.MINUS: (-1, 0, 0),
    PauliEigenstate.PLUS_I: (0, 1, 0),
    PauliEigenstate.MINUS_I: (0, -1, 0),
}

_FACE_OF = {
    PauliEigenstate.ZERO: Face.U,
    PauliEigenstate.ONE: Face.D,
    PauliEigenstate.PLUS: Face.F,
    PauliEigenstate.MINUS: Face.B,
    PauliEigenstate.PLUS_I: Face.R,
    PauliEigenstate.MINUS_I: Face.L,
}
_KAPPA_OF = {f: k for k, f in _FACE_OF.items()}


def kappa_of(f: Face) -> PauliEigenstate:
    return _KAPPA_OF[f]


@dataclass(frozen=True)
class DensityMatrix:
    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError("density matrix must be 2x2")
        if np.max(np.abs(rho - rho.conj().T)) > TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > TOL:
            raise ValueError("density matrix trace is not 1")
        if np.min(np.linalg.eigvalsh(rho)) < -TOL:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "rho", rho)

    def to_json(self) -> list[list[str]]:
        return [[f"{z.real:.17g}", f"{z.imag:.17g}"] for z in self.rho.ravel()]


def embed(p: ProbVec8) -> BlochState:
    r = epistemic_bloch(p)
    if r is None:
        raise NotEpistemic(f"{p} is not a mixture of face states")
    return BlochState(r)


def density_of(b: BlochState) -> DensityMatrix:
    x, y, z = (float(c) for c in b.r)
    return DensityMatrix((I2 + x * SX + y * SY + z * SZ) / 2)


def born(kappa: PauliEigenstate, b: BlochState) -> Fraction:
    """<kappa|rho|kappa> in closed form, (1 + n_kappa . r) / 2."""
    return (1 + sum(n * x for n, x in zip(kappa.normal, b.r))) / 2


def born_trace(kappa: PauliEigenstate, b: BlochState) -> float:
    """Same probability through Tr(|kappa><kappa| rho) in floating point."""
    return float(np.trace(kappa.projector() @ density_of(b).rho).real)


def projective_update(axis: str, kappa: PauliEigenstate) -> BlochState:
    if kappa.axis != axis:
        raise OutcomeNotOnAxis(f"|{kappa.value}> is not an eigenstate of sigma_{axis}")
    return BlochState(kappa.normal)


def adjoint_action(u: np.ndarray) -> np.ndarray:
    """Real 3x3 matrix R with U sigma_k U^dag = sum_j R[j, k] sigma_j."""
    r = np.empty((3, 3))
    for k in range(3):
        img = u @ PAULIS[k] @ u.conj().T
        for j in range(3):
            r[j, k] = (np.trace(PAULIS[j] @ img) / 2).real
    return r


@dataclass(frozen=True)
class CliffordUnitary:
    u: np.ndarray
    matrix: Matrix3

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if np.max(np.abs(u @ u.conj().T - I2)) > TOL:
            raise ValueError("matrix is not unitary")
        if np.max(np.abs(adjoint_action(u) - np.array(self.matrix))) > TOL:
            raise ValueError("adjoint action does not match the rotation matrix")
        object.__setattr__(self, "u", u)


def generator_unitary(axis: str) -> np.ndarray:
    """(I - i sigma_axis)/sqrt(2): right-handed quarter turn of the Bloch ball."""
    return (I2 - 1j * PAULIS[AXES.index(axis)]) / np.sqrt(2)


def unitary_from_word(word: Sequence[str], gen: Callable[[str], np.ndarray] = generator_unitary) -> np.ndarray:
    u = I2.copy()
    for axis in word:
        u = u @ gen(axis)
    return u


def clifford_of(t: Rotation, group: RotationGroup | None = None) -> CliffordUnitary:
    """Unitary for ``t``: product of generator unitaries along the group's BFS tree.

    The global phase follows from the tree and is deterministic, not canonical.
    """
    if group is None:
        return _clifford_cached(t)
    return CliffordUnitary(unitary_from_word(group.word(t)), t.matrix)


@cache
def _clifford_cached(t: Rotation) -> CliffordUnitary:
    g = cube_group()
    return CliffordUnitary(unitary_from_word(g.word(t)), t.matrix)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> bool:
    # phase from the largest entry of b; then compare entrywise
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(a[k]) < tol:
        return False
    phase = a[k] / b[k]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def rotate_bloch(m: Sequence[Sequence[int]], b: BlochState) -> BlochState:
    return BlochState(tuple(sum(m[i][k] * b.r[k] for k in range(3)) for i in range(3)))
