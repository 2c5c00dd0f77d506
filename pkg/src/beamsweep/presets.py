"""Built-in scenario presets for the shipped parameter studies.

Both presets share the array and geometry; they differ in transmit power and
symbol budget. At the 50 m standoff they land in the two qualitative
regimes of the sector trade-off: the small-budget scenario (fig3) has an
interior optimal sector count, while the large-budget scenario (fig2) is
best served by a single sector and only gets worse as the sweep is split
further.
"""

from __future__ import annotations

import math

from .core import ScenarioConfig, dbm_to_watt


def fig2_config() -> ScenarioConfig:
    """Large symbol budget, strong transmitter: splitting sectors never helps."""
    return ScenarioConfig(
        pa_watt=dbm_to_watt(30.0),
        noise_watt=dbm_to_watt(-50.0),
        theta_t=math.pi / 3.0,
        n_antennas=128,
        l_total=160,
        d_aw=50.0,
        path_exp=2.0,
        carrier_hz=2.4e9,
    )


def fig3_config() -> ScenarioConfig:
    """Small symbol budget, weak transmitter: an interior sector count is optimal."""
    return ScenarioConfig(
        pa_watt=dbm_to_watt(10.0),
        noise_watt=dbm_to_watt(-50.0),
        theta_t=math.pi / 3.0,
        n_antennas=128,
        l_total=32,
        d_aw=50.0,
        path_exp=2.0,
        carrier_hz=2.4e9,
    )


PRESET_BUILDERS = {
    "fig2": fig2_config,
    "fig3": fig3_config,
}

# Parameter swept by `repro <preset>` and its default value list; override
# with --set <key>=<comma separated values>.
REPRO_SWEEPS: dict[str, tuple[str, tuple[float, ...]]] = {
    "fig2": ("noise_dbm", (-50.0, -60.0)),
    "fig3": ("l_total", (32.0, 160.0)),
}
