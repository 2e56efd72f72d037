"""Reflection-coefficient strategies for the two transmission slots.

The surface applies one unit-modulus coefficient per element; a PhaseVector
holds the diagonal of that reflection matrix for one slot. Strategies here are
pluggable: a flat (identity) baseline, uniform random phases, and a per-element
greedy grid ascent that aligns the reflected path with the direct one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scenario import ChannelSet, as_generator

UNIT_MODULUS_TOL = 1e-12
SLOTS = ("first", "second")


@dataclass(frozen=True)
class PhaseVector:
    """Unit-modulus reflection coefficients for one slot, one per element."""

    theta: np.ndarray

    def __post_init__(self):
        arr = np.array(self.theta, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "theta", arr)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("theta must be a non-empty 1D vector")
        if np.max(np.abs(np.abs(arr) - 1.0)) > UNIT_MODULUS_TOL:
            raise ValueError("reflection coefficients must have unit modulus")

    @property
    def n(self) -> int:
        return self.theta.size


def identity_phase(n: int) -> PhaseVector:
    """All-ones coefficients (zero phase shift on every element)."""
    if n < 1:
        raise ValueError("element count must be >= 1")
    return PhaseVector(np.ones(n, dtype=complex))


def random_phase(n: int, rng) -> PhaseVector:
    """Phases drawn i.i.d. uniform on (0, 2*pi]."""
    if n < 1:
        raise ValueError("element count must be >= 1")
    g = as_generator(rng)
    phases = 2.0 * np.pi * (1.0 - g.random(n))  # (0, 2*pi]
    return PhaseVector(np.exp(1j * phases))


def _slot_setup(ch: ChannelSet, slot: str, noise_r_w: float, noise_1_w: float,
                noise_2_w: float):
    """Composite pairs and noise weights for one slot's gain-sum objective.

    First slot: both uplink composites land at the relay (weight 1/noise_r for
    each). Second slot: reciprocity makes each downlink composite the conjugate
    transpose of an uplink one, so the slot objective is evaluated on the same
    composites with per-user noise weights, and the returned coefficients are
    conjugated.
    """
    if slot not in SLOTS:
        raise ValueError(f"slot must be one of {SLOTS}")
    if min(noise_r_w, noise_1_w, noise_2_w) <= 0:
        raise ValueError("noise powers must be positive")
    if slot == "first":
        return (1.0 / noise_r_w, 1.0 / noise_r_w), False
    return (1.0 / noise_1_w, 1.0 / noise_2_w), True


def slot_objective(ch: ChannelSet, slot: str, theta: PhaseVector,
                   noise_r_w: float, noise_1_w: float, noise_2_w: float) -> float:
    """Sum of the two effective gains this slot's coefficients control."""
    (w1, w2), conj = _slot_setup(ch, slot, noise_r_w, noise_1_w, noise_2_w)
    if theta.n != ch.n:
        raise ValueError("phase vector length must match element count")
    t = np.conj(theta.theta) if conj else theta.theta
    c1 = ch.h_1r + ch.H_ir @ (t * ch.h_1i)
    c2 = ch.h_2r + ch.H_ir @ (t * ch.h_2i)
    return float(w1 * np.vdot(c1, c1).real + w2 * np.vdot(c2, c2).real)


def greedy_phase(ch: ChannelSet, slot: str, noise_r_w: float, noise_1_w: float,
                 noise_2_w: float, passes: int = 3, grid_points: int = 64,
                 on_update=None) -> PhaseVector:
    """Coordinate-ascent phase selection for one slot.

    Sweeps the elements `passes` times; for each element it evaluates
    `grid_points` equally spaced phases on (0, 2*pi] plus the current value and
    keeps the argmax of the slot's gain-sum objective, so the objective never
    decreases. `on_update(objective)` is invoked after every element update.
    """
    if passes < 1:
        raise ValueError("passes must be >= 1")
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    (w1, w2), conj = _slot_setup(ch, slot, noise_r_w, noise_1_w, noise_2_w)

    n = ch.n
    t = np.ones(n, dtype=complex)
    grid = np.exp(1j * 2.0 * np.pi * np.arange(1, grid_points + 1) / grid_points)
    # running composites for the two users under the working coefficients
    c1 = ch.h_1r + ch.H_ir @ (t * ch.h_1i)
    c2 = ch.h_2r + ch.H_ir @ (t * ch.h_2i)
    for _ in range(passes):
        for i in range(n):
            a1 = ch.H_ir[:, i] * ch.h_1i[i]
            a2 = ch.H_ir[:, i] * ch.h_2i[i]
            base1 = c1 - t[i] * a1
            base2 = c2 - t[i] * a2
            cand = np.concatenate([grid, t[i:i + 1]])
            v1 = base1[:, None] + a1[:, None] * cand[None, :]
            v2 = base2[:, None] + a2[:, None] * cand[None, :]
            obj = (w1 * (np.abs(v1) ** 2).sum(axis=0)
                   + w2 * (np.abs(v2) ** 2).sum(axis=0))
            k = int(np.argmax(obj))
            t[i] = cand[k]
            c1 = base1 + t[i] * a1
            c2 = base2 + t[i] * a2
            if on_update is not None:
                on_update(float(obj[k]))
    return PhaseVector(np.conj(t) if conj else t)
