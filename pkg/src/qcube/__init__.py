"""Exact simulator of the quantum-cube toy model and its qubit-octahedron counterpart."""
from .epistemic import (
    Face,
    Measurement,
    bloch_of,
    conditional_update,
    face_state,
    measurement_channel,
    measurement_for,
    membership,
    ontic_measure,
    outcome_distribution,
    state_from_bloch,
    transform,
)
from .ontic import ProbVec8, apply_matrix, basic_measurement_matrix, extremal, inner
from .qubit import BlochState, PauliEigenstate, born, clifford_of, density_of, embed, projective_update
from .rotations import Rotation, compose, cube_group, generate_group, generator, inverse

__version__ = "0.1.0"
