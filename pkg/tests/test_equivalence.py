import json
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from qcube.epistemic import FACE_ORDER, MEASUREMENTS, Face, face_state, state_from_bloch
from qcube.equivalence import (
    KERNEL,
    Report,
    check_clifford_composition,
    check_probability_equivalence,
    check_transformation_covariance,
    check_well_definedness,
    kernel_perturbation,
    random_convex_weights,
    run_full_suite,
    weights_to_bloch,
    weights_to_state,
    well_definedness_sweep,
)
from qcube.errors import InvalidWeights
from qcube.qubit import clifford_of
from qcube.rotations import cube_group, generator, identity

H, T = Fraction(1, 2), Fraction(1, 3)
X, Y, Z = MEASUREMENTS


def test_probability_examples():
    r = check_probability_equivalence(face_state(Face.F), Z)
    assert r.ok and r.checks == 2
    assert [f.lhs for f in r.failures] == []
    r = check_probability_equivalence(face_state(Face.U), Z)
    assert r.ok
    p = state_from_bloch((T, T, T))
    r = check_probability_equivalence(p, Y)
    assert r.ok and r.passes == 2


def test_probability_on_y_by_hand():
    from qcube.epistemic import outcome_distribution

    p = state_from_bloch((T, T, T))
    assert outcome_distribution(Y, p) == {Face.R: Fraction(2, 3), Face.L: T}


def test_covariance_examples():
    r = check_transformation_covariance(generator("y"), face_state(Face.U))
    assert r.ok and r.checks == 2
    assert check_transformation_covariance(identity(), state_from_bloch((H, 0, -H))).ok


def test_covariance_exhaustive_extremal():
    r = Report()
    for t in cube_group():
        for f in FACE_ORDER:
            check_transformation_covariance(t, face_state(f), r)
    assert r.ok and r.passes == 2 * 144


def test_well_definedness_examples():
    w = (H, H, 0, 0, 0, 0)
    w2 = (0, 0, H, H, 0, 0)
    assert weights_to_state(w) == weights_to_state(w2)
    assert weights_to_bloch(w) == weights_to_bloch(w2) == (0, 0, 0)
    assert check_well_definedness(w, w2).ok
    assert check_well_definedness(w, w).ok


def test_well_definedness_errors():
    with pytest.raises(InvalidWeights):
        check_well_definedness((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0))
    with pytest.raises(InvalidWeights):
        check_well_definedness((2, -1, 0, 0, 0, 0), (2, -1, 0, 0, 0, 0))
    with pytest.raises(InvalidWeights):
        check_well_definedness((1, 0, 0), (1, 0, 0))


def test_kernel_vectors_span_the_kernel():
    # rank of the weights-to-state map is 4, so the kernel is 2-dimensional
    a = np.array([[float(x) for x in face_state(f)] for f in FACE_ORDER]).T
    assert np.linalg.matrix_rank(a) == 4
    for k in KERNEL:
        assert np.allclose(a @ np.array(k, dtype=float), 0)
    assert np.linalg.matrix_rank(np.array(KERNEL)) == 2


def test_kernel_perturbation_preserves_state():
    rng = random.Random(3)
    for _ in range(200):
        w = random_convex_weights(rng)
        w2 = kernel_perturbation(w, rng)
        assert all(x >= 0 for x in w2)
        assert weights_to_state(w) == weights_to_state(w2)


def test_sweep():
    r = well_definedness_sweep(300, seed=1)
    assert r.ok and r.checks == 300


def test_default_suite_passes_quickly():
    t0 = time.perf_counter()
    r = run_full_suite()
    dt = time.perf_counter() - t0
    assert r.ok, r.first_counterexample
    assert r.checks >= 576 and r.passes == r.checks
    assert dt < 1.0


def _flip_x(t):
    # mutation: the x quarter turn is replaced by its mirror image
    m = [list(row) for row in t.matrix]
    if t == generator("x"):
        m[1] = [-v for v in m[1]]
    return m


def test_mutation_sign_flipped_generator_matrix():
    r = run_full_suite(n_random=20, matrix_of=_flip_x)
    assert not r.ok
    assert {f.kind for f in r.failures} == {"covariance"}
    assert r.first_counterexample.inputs["rotation"].name == "Rx+90"


def test_mutation_sign_flipped_generator_unitary():
    def flipped(t):
        u = clifford_of(t).u
        return u.conj().T if t == generator("y") else u  # inverse turn

    r = run_full_suite(n_random=20, unitary_of=flipped)
    assert not r.ok
    kinds = {f.kind for f in r.failures}
    assert "covariance-density" in kinds and "clifford-composition" in kinds


def test_composition_check():
    g = cube_group()
    r = Report()
    for a in g.elements[:5]:
        for b in g.elements[-5:]:
            check_clifford_composition(a, b, r)
    assert r.ok and r.checks == 25


def test_report_json_format():
    r = run_full_suite(n_random=3, matrix_of=_flip_x)
    js = r.to_json()
    assert list(js) == ["checks", "passes", "failures"]
    assert js["checks"] == js["passes"] + len(js["failures"])
    f = js["failures"][0]
    assert list(f) == ["kind", "inputs", "lhs", "rhs"]
    json.dumps(js)  # serialisable
    assert r.summary() == f"{r.checks} checks, {len(r.failures)} failures"


def test_report_merge():
    a = check_probability_equivalence(face_state(Face.U), Z)
    b = check_transformation_covariance(identity(), face_state(Face.U))
    m = a.merge(b)
    assert m.checks == a.checks + b.checks and m.ok


def test_suite_is_seeded():
    assert run_full_suite(50, seed=4).to_json() == run_full_suite(50, seed=4).to_json()
