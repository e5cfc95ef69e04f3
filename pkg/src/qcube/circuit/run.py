"""Exact branch-tree evaluation and seeded ontic sampling of circuits."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import rng as rng_mod
from ..epistemic import (
    EpistemicState,
    Face,
    Measurement,
    conditional_update,
    face_state,
    ontic_measure,
    outcome_distribution,
    transform,
)
from ..ontic import VERTEX_COORDS, VERTICES, ProbVec8, mixture
from ..rotations import AXES, Rotation, quarter_turns
from .parser import Circuit, Measure, Mix, Prepare, Rot

Outcome = tuple[str, "str | None", Face]


@dataclass(frozen=True)
class BranchOutcome:
    outcomes: tuple[Outcome, ...]
    probability: Fraction
    final_state: EpistemicState

    @property
    def key(self) -> str:
        return sequence_key(self.outcomes)

    def to_json(self) -> dict:
        return {
            "outcomes": [{"axis": a, "tag": t, "face": f.name} for a, t, f in self.outcomes],
            "probability": str(self.probability),
            "final_bloch": [str(x) for x in self.final_state.bloch],
        }


def sequence_key(outcomes) -> str:
    return ",".join(f"{t}={f.name}" if t else f.name for _, t, f in outcomes)


def prepared_state(c: Circuit) -> ProbVec8:
    prep = c.preparation
    if isinstance(prep, Prepare):
        return face_state(prep.face)
    if isinstance(prep, Mix):
        return mixture((w, face_state(f)) for f, w in prep.weights)
    raise TypeError(f"not a preparation: {prep!r}")


def _rotation(stmt: Rot) -> Rotation:
    return quarter_turns(stmt.axis, stmt.quarter_turns)


def eval_exact(c: Circuit) -> list[BranchOutcome]:
    """Depth-first expansion over measurement outcomes, + face before - face.

    Zero-probability branches are dropped.
    """
    out: list[BranchOutcome] = []

    def walk(k: int, p: ProbVec8, prob: Fraction, outcomes: tuple):
        if k == len(c.statements):
            out.append(BranchOutcome(outcomes, prob, EpistemicState(p)))
            return
        s = c.statements[k]
        if isinstance(s, Rot):
            walk(k + 1, transform(_rotation(s), p), prob, outcomes)
        elif isinstance(s, Measure):
            m = Measurement(s.axis)
            for face, q in outcome_distribution(m, p).items():
                if q:
                    walk(k + 1, conditional_update(m, face), prob * q, outcomes + ((s.axis, s.tag, face),))
        else:
            raise TypeError(f"unexpected statement {s!r}")

    walk(1, prepared_state(c), Fraction(1), ())
    return out


def eval_json(c: Circuit) -> dict:
    return {"mode": c.mode, "branches": [b.to_json() for b in eval_exact(c)]}


# ---------------------------------------------------------------- sampling
#
# Shot ``s`` uses word (seed, s, 0) for the initial vertex and word
# (seed, s, j + 1) for the j-th measurement.  The scalar path below and the
# vectorised path must agree shot for shot.

_U63 = 1 << 63


def vertex_thresholds(p: ProbVec8) -> list[int]:
    """ceil(cumsum(p)[k] * 2**63) for the first seven vertices."""
    out, acc = [], Fraction(0)
    for k in range(7):
        acc += p[k]
        num = acc.numerator * _U63
        out.append(-(-num // acc.denominator))
    return out


def draw_vertex(p: ProbVec8, word: int, thresholds: list[int] | None = None) -> int:
    """Vertex ``k+1`` where ``k`` counts thresholds not above the top 63 bits of ``word``."""
    u = word >> 1
    th = vertex_thresholds(p) if thresholds is None else thresholds
    return 1 + sum(1 for t in th if t <= u)


def sample_shot(c: Circuit, seed: int, shot: int) -> tuple[Outcome, ...]:
    """One shot simulated vertex by vertex with :func:`ontic_measure`."""
    stream = rng_mod.ShotRNG(seed, shot)
    w = draw_vertex(prepared_state(c), stream.next_u64())
    outcomes = []
    for s in c.body:
        if isinstance(s, Rot):
            w = _rotation(s)(w)
        else:
            face, w = ontic_measure(Measurement(s.axis), w, stream)
            outcomes.append((s.axis, s.tag, face))
    return tuple(outcomes)


def sample_scalar(c: Circuit, shots: int, seed: int) -> dict[str, int]:
    counts = Counter(sequence_key(sample_shot(c, seed, s)) for s in range(shots))
    return dict(sorted(counts.items()))


_COORDS = np.array([VERTEX_COORDS[i] for i in VERTICES], dtype=np.int8)  # row i-1 is vertex i


def _face_vertex_table(axis_k: int) -> np.ndarray:
    """table[side, j] = j-th vertex (sorted, 0-based) of the face; side 0 is +, 1 is -."""
    plus = sorted(i - 1 for i in VERTICES if VERTEX_COORDS[i][axis_k] > 0)
    minus = sorted(i - 1 for i in VERTICES if VERTEX_COORDS[i][axis_k] < 0)
    return np.array([plus, minus], dtype=np.int64)


def _sample_block(c: Circuit, seed: int, start: int, stop: int) -> Counter:
    shots = np.arange(start, stop, dtype=np.uint64)
    th = np.array(vertex_thresholds(prepared_state(c)), dtype=np.uint64)
    u = rng_mod.words(seed, shots, 0) >> np.uint64(1)
    v = np.searchsorted(th, u, side="right").astype(np.int64)  # 0-based vertex
    sides = []
    for s in c.body:
        if isinstance(s, Rot):
            perm = np.array(_rotation(s).perm, dtype=np.int64) - 1
            v = perm[v]
        else:
            k = AXES.index(s.axis)
            side = (_COORDS[v, k] < 0).astype(np.int64)
            pick = (rng_mod.words(seed, shots, len(sides) + 1) >> np.uint64(62)).astype(np.int64)
            v = _face_vertex_table(k)[side, pick]
            sides.append(side.astype(np.uint8))
    meas = c.measurements
    if not sides:
        return Counter({"": len(shots)})
    rows, counts = np.unique(np.stack(sides, axis=1), axis=0, return_counts=True)
    out = Counter()
    for row, n in zip(rows.tolist(), counts.tolist()):
        seq = tuple((m.axis, m.tag, Measurement(m.axis).faces[b]) for m, b in zip(meas, row))
        out[sequence_key(seq)] += n
    return out


BLOCK = 1 << 18


def sample(c: Circuit, shots: int, seed: int, workers: int = 1) -> dict[str, int]:
    """Outcome-sequence counts over ``shots`` independent ontic runs.

    The result depends only on (circuit, shots, seed); ``workers`` only
    changes how the shot range is split.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    bounds = list(range(0, shots, BLOCK)) + [shots]
    blocks = list(zip(bounds[:-1], bounds[1:]))
    if workers > 1 and len(blocks) < workers:
        step = -(-shots // workers)
        blocks = [(a, min(a + step, shots)) for a in range(0, shots, step)]
    total = Counter()
    if workers <= 1:
        for a, b in blocks:
            total.update(_sample_block(c, seed, a, b))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(lambda ab: _sample_block(c, seed, *ab), blocks):
                total.update(part)
    return dict(sorted(total.items()))


def sample_json(c: Circuit, shots: int, seed: int, workers: int = 1) -> dict:
    return {"shots": shots, "seed": seed, "counts": sample(c, shots, seed, workers)}
