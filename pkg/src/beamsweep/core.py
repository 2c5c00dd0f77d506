"""Scenario parameters, sector geometry, and the warden's link budget.

Everything downstream works in two normalized coordinates derived here: the
per-sector sample count ``l_sector`` and the post-beamforming SNR ``phi_w``.
All powers are SI watts internally; dBm appears only at the config-file
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 3.0e8  # m/s


def dbm_to_watt(p_dbm: float) -> float:
    """Convert a power level in dBm to watts."""
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watt_to_dbm(p_watt: float) -> float:
    """Convert a power level in watts to dBm."""
    if not p_watt > 0.0:
        raise ValueError(f"power must be positive to express in dBm, got {p_watt}")
    return 10.0 * math.log10(p_watt) + 30.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Physical and system parameters of one surveillance scenario.

    Attributes:
        pa_watt: transmit power of the covert source [W].
        noise_watt: per-antenna noise variance at the warden [W].
        theta_t: beamspace width of the suspicious angular range; with
            half-wavelength element spacing the full visible range has
            width 2, so theta_t must lie in (0, 2].
        n_antennas: number of antennas at the warden.
        l_total: total number of symbols observed over one full sweep.
        d_aw: source-to-warden distance [m].
        path_exp: path loss exponent (2 = free-space line of sight).
        carrier_hz: carrier frequency [Hz].
    """

    pa_watt: float
    noise_watt: float
    theta_t: float
    n_antennas: int
    l_total: int
    d_aw: float
    path_exp: float = 2.0
    carrier_hz: float = 2.4e9

    def __post_init__(self) -> None:
        if not (math.isfinite(self.pa_watt) and self.pa_watt > 0.0):
            raise ValueError(f"pa_watt must be finite and > 0, got {self.pa_watt}")
        if not (math.isfinite(self.noise_watt) and self.noise_watt > 0.0):
            raise ValueError(f"noise_watt must be finite and > 0, got {self.noise_watt}")
        if not (math.isfinite(self.theta_t) and 0.0 < self.theta_t <= 2.0):
            raise ValueError(f"theta_t must lie in (0, 2], got {self.theta_t}")
        if self.n_antennas < 1:
            raise ValueError(f"n_antennas must be >= 1, got {self.n_antennas}")
        if self.l_total < 1:
            raise ValueError(f"l_total must be >= 1, got {self.l_total}")
        if not (math.isfinite(self.d_aw) and self.d_aw > 0.0):
            raise ValueError(f"d_aw must be finite and > 0, got {self.d_aw}")
        if not (math.isfinite(self.path_exp) and self.path_exp >= 1.0):
            raise ValueError(f"path_exp must be >= 1, got {self.path_exp}")
        if not (math.isfinite(self.carrier_hz) and self.carrier_hz > 0.0):
            raise ValueError(f"carrier_hz must be finite and > 0, got {self.carrier_hz}")

    @property
    def m_max(self) -> int:
        """Largest sector count the array can resolve: floor(N * theta_t / 2)."""
        return int(math.floor(self.n_antennas * self.theta_t / 2.0))


@dataclass(frozen=True)
class SweepPlan:
    """Per-sector quantities for a sweep divided into ``m_sectors`` sectors.

    ``l_sector`` is kept real-valued; only the Monte Carlo validator needs an
    integer sample count and floors it at its own boundary.
    """

    m_sectors: int
    sector_width: float
    l_sector: float
    array_gain: float
    m_max: int


@dataclass(frozen=True)
class LinkBudget:
    """Path loss, post-beamforming SNR, and the energy-test threshold."""

    rho_aw: float
    phi_w: float
    eta: float


def path_loss(cfg: ScenarioConfig) -> float:
    """Free-space style path loss rho = (c / (4 pi f_c))^2 * d^(-path_exp)."""
    omega = (SPEED_OF_LIGHT / (4.0 * math.pi * cfg.carrier_hz)) ** 2
    return omega * cfg.d_aw ** (-cfg.path_exp)


def make_sweep_plan(cfg: ScenarioConfig, m: int) -> SweepPlan:
    """Divide the suspicious range into ``m`` sectors.

    The steered array concentrates its gain on one sector at a time, so the
    gain is inversely proportional to the sector width: gain = 2 / width =
    2 m / theta_t. Raises ValueError if ``m`` is outside [1, m_max].
    """
    m_max = cfg.m_max
    if not 1 <= m <= m_max:
        raise ValueError(f"sector count m={m} outside the feasible range [1, {m_max}]")
    sector_width = cfg.theta_t / m
    return SweepPlan(
        m_sectors=m,
        sector_width=sector_width,
        l_sector=cfg.l_total / m,
        array_gain=2.0 * m / cfg.theta_t,
        m_max=m_max,
    )


def make_link_budget(cfg: ScenarioConfig, plan: SweepPlan) -> LinkBudget:
    """Compute path loss, the warden's SNR, and the decision threshold.

    The threshold is evaluated as eta = noise * gain * ln(1+phi)(1+1/phi),
    which is algebraically identical to ln(1+phi) (noise/(pa*rho) + gain) *
    noise but stays finite as pa -> 0.
    """
    rho = path_loss(cfg)
    phi_w = cfg.pa_watt * rho * plan.array_gain / cfg.noise_watt
    eta = cfg.noise_watt * plan.array_gain * h0_threshold_factor(phi_w)
    return LinkBudget(rho_aw=rho, phi_w=phi_w, eta=eta)


def h0_threshold_factor(phi_w: float) -> float:
    """Test threshold in units of the mean no-signal statistic per sample.

    Equals ln(1+phi)(1+1/phi); tends to 1 as phi -> 0 (a blind test sits at
    the mean) and grows like ln(phi) for large phi.
    """
    if phi_w < 0.0 or not math.isfinite(phi_w):
        raise ValueError(f"phi_w must be finite and >= 0, got {phi_w}")
    if phi_w == 0.0:
        return 1.0
    log_term = math.log1p(phi_w)
    return log_term + log_term / phi_w


def h1_threshold_factor(phi_w: float) -> float:
    """Test threshold in units of the mean signal-present statistic per sample.

    Equals ln(1+phi)/phi, the previous factor divided by (1+phi); tends to 1
    as phi -> 0 and to 0 as phi -> infinity.
    """
    if phi_w < 0.0 or not math.isfinite(phi_w):
        raise ValueError(f"phi_w must be finite and >= 0, got {phi_w}")
    if phi_w == 0.0:
        return 1.0
    return math.log1p(phi_w) / phi_w
