"""Cascaded H-bridge multilevel inverter synthesis, harmonic analysis and sizing."""

from .core import ChbConfig, HarmonicSpectrum, SwitchingAngles, Waveform, validate_config
from .design import (
    BuckDesign,
    FilterDesign,
    SystemSpec,
    buck_design,
    fleet_size,
    lc_cutoff,
    lc_for_cutoff,
    min_levels_for_thd,
    nls_cell_voltage,
    power_transfer,
    pspwm_dc_voltages,
    pv_array,
)
from .harmonics import (
    ThdReport,
    filtered_spectrum,
    first_harmonic_rms,
    fourier_bh,
    rms_analytic,
    rms_numeric,
    spectrum,
    thd_analytic,
    thd_numeric,
)
from .modulation import (
    GateSchedule,
    PspwmConfig,
    nls_gate_schedule,
    nls_thresholds,
    nls_waveform,
    pspwm_carriers,
    pspwm_waveform,
    switching_angles,
    triangle,
)
from .threephase import ThreePhaseSet, line_line, three_phase, three_phase_power

__version__ = "0.1.0"
