"""
Sizing procedures for a PV-fed CHB inverter.

Buck stages use the continuous-conduction ripple approximations, filters are
plain second-order LC sections, and fleet sizing is a ceiling division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import check_levels, check_positive
from .errors import BoostRequired, ModulationOutOfRange, NonPositive, NotAchievable
from .harmonics import thd_analytic

DEFAULT_L_MAX = 201


@dataclass(frozen=True)
class BuckDesign:
    v_s: float
    v_o: float
    f_s: float
    duty: float
    ripple_i: float
    ripple_v: float
    inductance: float
    capacitance: float
    # Boundary-conduction inductance, only when a load resistance was given.
    l_crit: Optional[float] = None


@dataclass(frozen=True)
class FilterDesign:
    inductance: float
    capacitance: float
    cutoff: float

    @classmethod
    def from_lc(cls, inductance: float, capacitance: float) -> "FilterDesign":
        return cls(inductance, capacitance, lc_cutoff(inductance, capacitance))


@dataclass(frozen=True)
class SystemSpec:
    v_ll_rms: float
    f0: float
    p_target: float
    thd_limit: float
    delta: float = math.radians(-2.5)
    l_line: float = 1e-3

    def __post_init__(self):
        check_positive(v_ll_rms=self.v_ll_rms, f0=self.f0, p_target=self.p_target,
                       thd_limit=self.thd_limit, l_line=self.l_line)
        if not abs(self.delta) < math.pi / 2:
            raise ValueError(f"|delta| must be below pi/2, got {self.delta}")

    @property
    def v_phase_rms(self) -> float:
        return self.v_ll_rms / math.sqrt(3.0)

    @property
    def x_line(self) -> float:
        return 2 * math.pi * self.f0 * self.l_line


def buck_design(v_s: float, v_o: float, f_s: float, ripple_i: float, ripple_v: float,
                r_load: Optional[float] = None) -> BuckDesign:
    """Size a buck stage for the given current and voltage ripple."""
    check_positive(v_s=v_s, v_o=v_o, f_s=f_s, ripple_i=ripple_i, ripple_v=ripple_v)
    if v_o >= v_s:
        raise BoostRequired(f"buck cannot raise {v_s} V to {v_o} V")
    duty = v_o / v_s
    period = 1.0 / f_s
    inductance = duty * v_s * (1 - duty) * period / ripple_i
    capacitance = period * ripple_i / (8 * ripple_v)
    l_crit = None
    if r_load is not None:
        check_positive(r_load=r_load)
        l_crit = (1 - duty) * r_load / (2 * f_s)
    return BuckDesign(v_s, v_o, f_s, duty, ripple_i, ripple_v, inductance, capacitance, l_crit)


def lc_cutoff(l_f: float, c_f: float) -> float:
    check_positive(l_f=l_f, c_f=c_f)
    return 1.0 / (2 * math.pi * math.sqrt(l_f * c_f))


def lc_for_cutoff(f_c: float, l_f: float) -> float:
    """Capacitance that places the LC corner at ``f_c`` for inductance ``l_f``."""
    check_positive(f_c=f_c, l_f=l_f)
    return 1.0 / ((2 * math.pi * f_c) ** 2 * l_f)


def nls_cell_voltage(v_ll_rms: float, n_cells: int) -> float:
    """Per-cell DC voltage so the staircase peak hits the line-neutral peak."""
    check_positive(v_ll_rms=v_ll_rms, n_cells=n_cells)
    return v_ll_rms * math.sqrt(2.0 / 3.0) / n_cells


def pspwm_dc_voltages(v_ll_rms: float, m_a: float, n_cells: int) -> tuple[float, float]:
    """Return (total DC voltage, per-cell DC voltage) for PSPWM at index ``m_a``."""
    check_positive(v_ll_rms=v_ll_rms, n_cells=n_cells)
    if not (0.0 < m_a <= 1.0):
        raise ModulationOutOfRange(f"m_a must lie in (0, 1], got {m_a}")
    total = math.sqrt(2.0 / 3.0) * v_ll_rms / m_a
    return total, total / n_cells


def min_levels_for_thd(thd_limit: float, l_max: int = DEFAULT_L_MAX) -> int:
    """Smallest odd level count whose ideal staircase THD is below ``thd_limit``.

    The limit is a fraction (0.05 for 5 %). Every odd L up to ``l_max`` is
    tried in turn.
    """
    check_positive(thd_limit=thd_limit)
    check_levels(l_max)
    for levels in range(3, l_max + 1, 2):
        if thd_analytic(levels).thd < thd_limit:
            return levels
    raise NotAchievable(
        f"no level count up to {l_max} reaches THD below {100 * thd_limit:g} %")


def pv_array(panel_v: float, panel_i: float, n_series: int,
             n_parallel: int) -> tuple[float, float]:
    check_positive(panel_v=panel_v, panel_i=panel_i, n_series=n_series, n_parallel=n_parallel)
    return n_series * panel_v, n_parallel * panel_i


def power_transfer(v1_rms: float, v2_rms: float, delta: float, x_line: float) -> float:
    """Per-phase real power between two sources tied through a lossless reactance.

    A sanity check only: resistance and the filter shunt capacitor are
    ignored.
    """
    if not (x_line > 0):
        raise NonPositive(f"x_line must be positive, got {x_line!r}")
    return v1_rms * v2_rms * math.sin(delta) / x_line


def fleet_size(p_target: float, p_unit: float) -> int:
    """Number of identical units needed to reach ``p_target``."""
    check_positive(p_target=p_target, p_unit=p_unit)
    # Rounding guards against 1.0000000000000002 from an exact fit.
    return max(1, math.ceil(round(p_target / p_unit, 9)))
