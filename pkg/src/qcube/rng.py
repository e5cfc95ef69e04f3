"""Counter-based 64-bit random words keyed by (seed, shot, step).

Every word is a pure function of its key, so shots can be simulated in any
order, or in parallel, and still give identical results.  The mixer is the
SplitMix64 finalizer; a scalar and a numpy-vectorised version are provided
and must agree bit for bit.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
# odd constants that separate the shot and step counters
_SHOT_MUL = 0xD1B54A32D192ED03
_STEP_MUL = 0x8CB92BA72F3D8DD7


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def word(seed: int, shot: int, step: int) -> int:
    h = mix64((seed & MASK64) + GOLDEN)
    h = mix64(h ^ ((shot * _SHOT_MUL) & MASK64))
    return mix64(h ^ (((step + 1) * _STEP_MUL) & MASK64))


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def words(seed: int, shots: np.ndarray, step: int) -> np.ndarray:
    """Vectorised :func:`word` over an array of shot indices."""
    h0 = np.uint64(mix64((seed & MASK64) + GOLDEN))
    shots = np.asarray(shots, dtype=np.uint64)
    with np.errstate(over="ignore"):
        h = _mix64_np(h0 ^ (shots * np.uint64(_SHOT_MUL)))
        return _mix64_np(h ^ np.uint64(((step + 1) * _STEP_MUL) & MASK64))


class ShotRNG:
    """Stream of words for one shot; each call to :meth:`next_u64` advances the step."""

    def __init__(self, seed: int, shot: int = 0, step: int = 0):
        self.seed = seed
        self.shot = shot
        self.step = step

    def next_u64(self) -> int:
        w = word(self.seed, self.shot, self.step)
        self.step += 1
        return w

    def below(self, n: int) -> int:
        """Uniform integer in ``range(n)`` for ``n`` a power of two (top bits)."""
        bits = n.bit_length() - 1
        if n != 1 << bits:
            raise ValueError("below() needs a power of two")
        w = self.next_u64()
        return w >> (64 - bits) if bits else 0
