"""Effective link gains and achievable-rate algebra for the two-slot exchange.

Rates are in bits/s/Hz and already carry the 1/2 prefactor of the two-slot
protocol; it is applied exactly once, inside link_rate and the MAC bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .phases import PhaseVector
from .scenario import ChannelSet

PA_SUM_TOL = 1e-9


@dataclass(frozen=True)
class LinkGains:
    """Effective SNR-per-watt gains of the four directed links.

    gamma1: U1 -> relay (first slot); gamma3: U2 -> relay (first slot);
    gamma2: relay -> U2 (second slot); gamma4: relay -> U1 (second slot).
    """

    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma3", "gamma4"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and non-negative")


@dataclass(frozen=True)
class PAFactors:
    """Fractions of the total power assigned to U1, U2, and the relay.

    Each lies strictly inside (0, 1) and the three sum to 1.
    """

    beta1: float
    beta2: float
    beta3: float

    def __post_init__(self):
        for name in ("beta1", "beta2", "beta3"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name}={v} outside (0, 1)")
        if abs(self.beta1 + self.beta2 + self.beta3 - 1.0) > PA_SUM_TOL:
            raise ValueError("power fractions must sum to 1")

    @classmethod
    def from_pair(cls, beta1: float, beta2: float) -> "PAFactors":
        return cls(beta1, beta2, 1.0 - beta1 - beta2)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.beta1, self.beta2, self.beta3)


def combined_channel(h_direct: np.ndarray, H_ir: np.ndarray, theta: PhaseVector,
                     h_ui: np.ndarray) -> np.ndarray:
    """Direct-plus-reflected composite: h_direct + H_ir * diag(theta) * h_ui."""
    h_direct = np.asarray(h_direct, dtype=complex)
    H_ir = np.asarray(H_ir, dtype=complex)
    h_ui = np.asarray(h_ui, dtype=complex)
    if H_ir.ndim != 2:
        raise ValueError("H_ir must be a matrix")
    m, n = H_ir.shape
    if h_direct.shape != (m,) or h_ui.shape != (n,) or theta.n != n:
        raise ValueError("combined_channel dimensions do not conform")
    return h_direct + H_ir @ (theta.theta * h_ui)


def link_gains(ch: ChannelSet, theta1: PhaseVector, theta2: PhaseVector,
               noise_r_w: float, noise_1_w: float, noise_2_w: float) -> LinkGains:
    """Squared-norm effective gains of the four links.

    The first slot uses theta1 and the relay's noise; the second slot sees the
    conjugate-transposed channels (reciprocity), so its composite norms equal
    those of first-slot composites built with conj(theta2), divided by the
    receiving user's noise.
    """
    if min(noise_r_w, noise_1_w, noise_2_w) <= 0:
        raise ValueError("noise powers must be positive")
    theta2c = PhaseVector(np.conj(theta2.theta))

    def norm2(v):
        return float(np.vdot(v, v).real)

    g1 = norm2(combined_channel(ch.h_1r, ch.H_ir, theta1, ch.h_1i)) / noise_r_w
    g3 = norm2(combined_channel(ch.h_2r, ch.H_ir, theta1, ch.h_2i)) / noise_r_w
    g2 = norm2(combined_channel(ch.h_2r, ch.H_ir, theta2c, ch.h_2i)) / noise_2_w
    g4 = norm2(combined_channel(ch.h_1r, ch.H_ir, theta2c, ch.h_1i)) / noise_1_w
    return LinkGains(g1, g2, g3, g4)


def link_rate(gamma: float, beta: float, p_watt: float) -> float:
    """Half-duplex point-to-point rate: 0.5*log2(1 + gamma*beta*P)."""
    if gamma < 0 or beta < 0 or p_watt < 0:
        raise ValueError("gamma, beta, and P must be non-negative")
    return 0.5 * math.log2(1.0 + gamma * beta * p_watt)


def mac_rate(g: LinkGains, beta: PAFactors, p_watt: float) -> float:
    """First-slot multiple-access bound: 0.5*log2(1 + g1*b1*P + g3*b2*P)."""
    if p_watt < 0:
        raise ValueError("P must be non-negative")
    return 0.5 * math.log2(1.0 + g.gamma1 * beta.beta1 * p_watt
                           + g.gamma3 * beta.beta2 * p_watt)


def sum_rate(g: LinkGains, beta: PAFactors, p_watt: float) -> float:
    """Achievable end-to-end sum rate of the exchange.

    min over the MAC bound and the sum of the two per-direction rates, each of
    which is the min of its uplink and downlink legs.
    """
    r_1ir = link_rate(g.gamma1, beta.beta1, p_watt)
    r_ri2 = link_rate(g.gamma2, beta.beta3, p_watt)
    r_2ir = link_rate(g.gamma3, beta.beta2, p_watt)
    r_ri1 = link_rate(g.gamma4, beta.beta3, p_watt)
    r_12 = min(r_1ir, r_ri2)
    r_21 = min(r_2ir, r_ri1)
    return min(r_12 + r_21, mac_rate(g, beta, p_watt))


def sum_rate_expanded(g: LinkGains, beta: PAFactors, p_watt: float) -> float:
    """Expanded form of sum_rate with the dominated uplink-pair branch removed.

    The uplink-sum branch always dominates the MAC bound, so the min over
    {R_1ir+R_ri1, R_ri2+R_2ir, R_ri2+R_ri1, R_MAC} equals sum_rate exactly.
    """
    r_1ir = link_rate(g.gamma1, beta.beta1, p_watt)
    r_ri2 = link_rate(g.gamma2, beta.beta3, p_watt)
    r_2ir = link_rate(g.gamma3, beta.beta2, p_watt)
    r_ri1 = link_rate(g.gamma4, beta.beta3, p_watt)
    return min(r_1ir + r_ri1, r_ri2 + r_2ir, r_ri2 + r_ri1,
               mac_rate(g, beta, p_watt))
