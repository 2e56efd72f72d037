"""Scenario configuration, 3D geometry, large-scale fading, and channel generation.

All link math downstream works in linear watts; dB/dBm quantities live only in
the configuration and the path-loss model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SPEED_OF_LIGHT_M_S = 299_792_458.0

# "rayleigh" draws the magnitude of a complex Gaussian CN(0, sigma^2): an
# always-positive excess obstruction loss whose mean grows with sigma, so
# heavier shadowing degrades average rates. "gaussian" is classical zero-mean
# log-normal shadowing, N(0, sigma^2) in dB.
SHADOW_MODELS = ("rayleigh", "gaussian")

# Keys a scenario file may carry in addition to SystemConfig fields; they are
# forwarded to the solvers (see paopt.SolverOptions).
SOLVER_KEYS = frozenset(
    {"sca_tol", "sca_max_iter", "inner_tol", "inner_grid_init",
     "inner_refine_rounds", "box_margin"}
)


class ConfigError(ValueError):
    """Invalid scenario configuration (bad value, unknown key, missing file)."""


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if x <= 0:
        raise ValueError("linear value must be positive")
    return 10.0 * math.log10(x)


def dbm_to_watt(x_dbm: float) -> float:
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class RngStream:
    """Names one reproducible random stream.

    Identical (seed, stream_id) pairs reproduce identical draws regardless of
    what other streams were consumed elsewhere.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if self.seed < 0 or self.stream_id < 0:
            raise ConfigError("seed and stream_id must be non-negative integers")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng((self.seed, self.stream_id))


def as_generator(rng: "RngStream | np.random.Generator") -> np.random.Generator:
    """Accept either an RngStream value or a live Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return rng.generator()


def _as_point(p) -> tuple:
    q = tuple(float(v) for v in p)
    if len(q) != 3:
        raise ConfigError(f"positions are 3D points, got {p!r}")
    return q


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters. Defaults are the bundled 3D deployment:

    U1 at the origin, U2 100 m away, the reflecting surface and the relay
    elevated near the midpoint, 1.5 GHz carrier, -80 dBm noise everywhere.
    """

    pos_u1: tuple = (0.0, 0.0, 0.0)
    pos_u2: tuple = (0.0, 100.0, 0.0)
    pos_irs: tuple = (-10.0, 50.0, 20.0)
    pos_rs: tuple = (10.0, 50.0, 10.0)
    M: int = 4                    # relay antennas
    N: int = 16                   # reflecting elements
    fc_hz: float = 1.5e9
    noise_r_dbm: float = -80.0
    noise_1_dbm: float = -80.0
    noise_2_dbm: float = -80.0
    alpha_direct: float = 2.3     # user-relay path-loss exponent
    alpha_irs: float = 2.1        # exponent for all surface-related links
    shadow_sigma_db: float = 3.0
    d0_m: float = 1.0             # path-loss reference distance
    p_dbm: float = 40.0           # total transmit power shared by U1, U2, RS
    mu: float = 3.0               # rate-ratio constant of the RC scheme
    shadow_model: str = "rayleigh"

    def __post_init__(self):
        for name in ("pos_u1", "pos_u2", "pos_irs", "pos_rs"):
            object.__setattr__(self, name, _as_point(getattr(self, name)))
        if not (isinstance(self.M, int) and self.M >= 1):
            raise ConfigError("M must be a positive integer")
        if not (isinstance(self.N, int) and self.N >= 1):
            raise ConfigError("N must be a positive integer")
        if self.fc_hz <= 0:
            raise ConfigError("fc_hz must be positive")
        if self.d0_m <= 0:
            raise ConfigError("d0_m must be positive")
        if self.shadow_sigma_db < 0:
            raise ConfigError("shadow_sigma_db must be non-negative")
        if self.mu <= 0:
            raise ConfigError("mu must be positive")
        if self.shadow_model not in SHADOW_MODELS:
            raise ConfigError(f"shadow_model must be one of {SHADOW_MODELS}")
        pts = [self.pos_u1, self.pos_u2, self.pos_irs, self.pos_rs]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if math.dist(pts[i], pts[j]) <= 0:
                    raise ConfigError("all node positions must be distinct")

    # link distances (meters)
    @property
    def d_u1_rs(self) -> float:
        return math.dist(self.pos_u1, self.pos_rs)

    @property
    def d_u2_rs(self) -> float:
        return math.dist(self.pos_u2, self.pos_rs)

    @property
    def d_irs_rs(self) -> float:
        return math.dist(self.pos_irs, self.pos_rs)

    @property
    def d_u1_irs(self) -> float:
        return math.dist(self.pos_u1, self.pos_irs)

    @property
    def d_u2_irs(self) -> float:
        return math.dist(self.pos_u2, self.pos_irs)

    # linear-unit views
    @property
    def p_watt(self) -> float:
        return dbm_to_watt(self.p_dbm)

    @property
    def noise_r_watt(self) -> float:
        return dbm_to_watt(self.noise_r_dbm)

    @property
    def noise_1_watt(self) -> float:
        return dbm_to_watt(self.noise_1_dbm)

    @property
    def noise_2_watt(self) -> float:
        return dbm_to_watt(self.noise_2_dbm)


@dataclass(frozen=True)
class ChannelSet:
    """One realization of the five complex channels.

    h_1r, h_2r: user-to-relay vectors (M,); H_ir: surface-to-relay matrix
    (M, N); h_1i, h_2i: user-to-surface vectors (N,).
    """

    h_1r: np.ndarray
    h_2r: np.ndarray
    H_ir: np.ndarray
    h_1i: np.ndarray
    h_2i: np.ndarray

    def __post_init__(self):
        for name in ("h_1r", "h_2r", "H_ir", "h_1i", "h_2i"):
            arr = np.array(getattr(self, name), dtype=complex)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        m, n = self.H_ir.shape if self.H_ir.ndim == 2 else (0, 0)
        if self.H_ir.ndim != 2:
            raise ValueError("H_ir must be a 2D matrix")
        if self.h_1r.shape != (m,) or self.h_2r.shape != (m,):
            raise ValueError("user-relay vectors must have length M")
        if self.h_1i.shape != (n,) or self.h_2i.shape != (n,):
            raise ValueError("user-surface vectors must have length N")
        for name in ("h_1r", "h_2r", "H_ir", "h_1i", "h_2i"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"{name} contains non-finite entries")

    @property
    def m(self) -> int:
        return self.H_ir.shape[0]

    @property
    def n(self) -> int:
        return self.H_ir.shape[1]


def wavelength(fc_hz: float) -> float:
    """Carrier wavelength c/fc in meters."""
    if fc_hz <= 0:
        raise ConfigError("carrier frequency must be positive")
    return SPEED_OF_LIGHT_M_S / fc_hz


def path_loss_db(d_m: float, alpha: float, d0_m: float, lambda_m: float,
                 x_sigma_db: float = 0.0) -> float:
    """Large-scale channel gain in dB (typically negative).

    PL(d) = PL0 - 10*alpha*log10(d/d0) - X_sigma with the free-space reference
    PL0 = -20*log10(4*pi*d0/lambda). Requires d >= d0 > 0.
    """
    if d0_m <= 0 or lambda_m <= 0:
        raise ValueError("d0 and lambda must be positive")
    if d_m < d0_m:
        raise ValueError(f"distance {d_m} below reference distance {d0_m}")
    pl0 = -20.0 * math.log10(4.0 * math.pi * d0_m / lambda_m)
    return pl0 - 10.0 * alpha * math.log10(d_m / d0_m) - x_sigma_db


def draw_shadowing(rng, sigma_db: float, model: str = "rayleigh") -> float:
    """One random shadowing attenuation sample in dB.

    model="rayleigh": magnitude of a complex Gaussian CN(0, sigma^2), a
    non-negative loss with mean sigma*sqrt(pi)/2 and std sigma*sqrt(1-pi/4).
    model="gaussian": zero-mean real N(0, sigma^2).
    Either model returns exactly 0.0 when sigma_db == 0.
    """
    if sigma_db < 0:
        raise ValueError("sigma_db must be non-negative")
    g = as_generator(rng)
    if model == "gaussian":
        return float(g.normal(0.0, sigma_db))
    if model == "rayleigh":
        s = sigma_db / math.sqrt(2.0)
        return abs(complex(g.normal(0.0, s), g.normal(0.0, s)))
    raise ConfigError(f"unknown shadow model {model!r}")


def generate_channels(cfg: SystemConfig, rng) -> ChannelSet:
    """Draw one Rayleigh-fading realization of all five links.

    Entries are i.i.d. CN(0, 1) scaled by sqrt of the link's linear path gain;
    each link gets one independent shadowing draw per call. Draw order is
    fixed (h_1r, h_2r, H_ir, h_1i, h_2i; per link: shadowing, then real, then
    imaginary parts), so a given RngStream is bit-reproducible.
    """
    g = as_generator(rng)
    lam = wavelength(cfg.fc_hz)
    links = (
        ("h_1r", cfg.d_u1_rs, cfg.alpha_direct, (cfg.M,)),
        ("h_2r", cfg.d_u2_rs, cfg.alpha_direct, (cfg.M,)),
        ("H_ir", cfg.d_irs_rs, cfg.alpha_irs, (cfg.M, cfg.N)),
        ("h_1i", cfg.d_u1_irs, cfg.alpha_irs, (cfg.N,)),
        ("h_2i", cfg.d_u2_irs, cfg.alpha_irs, (cfg.N,)),
    )
    out = {}
    for name, d, alpha, shape in links:
        xs = draw_shadowing(g, cfg.shadow_sigma_db, cfg.shadow_model)
        pl = path_loss_db(d, alpha, cfg.d0_m, lam, xs)
        amp = math.sqrt(db_to_linear(pl))
        out[name] = amp * (g.standard_normal(shape)
                           + 1j * g.standard_normal(shape)) / math.sqrt(2.0)
    return ChannelSet(**out)


def load_scenario(path) -> tuple[SystemConfig, dict]:
    """Read a flat JSON scenario file.

    Returns (SystemConfig, solver_overrides) where solver_overrides holds any
    of the SOLVER_KEYS present in the file. Unknown keys are an error.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except FileNotFoundError as exc:
        raise ConfigError(f"scenario file not found: {p}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {p} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"scenario file {p} must hold a flat JSON object")
    known = {f for f in SystemConfig.__dataclass_fields__}
    cfg_kwargs, solver = {}, {}
    for key, value in raw.items():
        if key in SOLVER_KEYS:
            solver[key] = value
        elif key in known:
            cfg_kwargs[key] = value
        else:
            raise ConfigError(f"unknown scenario key {key!r}")
    return SystemConfig(**cfg_kwargs), solver
