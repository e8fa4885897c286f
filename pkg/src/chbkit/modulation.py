"""
Nearest-level switching (NLS) and phase-shifted PWM (PSPWM) synthesis.

Cell ``k`` (0-based) of an N-cell NLS staircase fires when the reference
``|sin|`` exceeds ``(2k+1)/(2N)``; equivalently at the angle
``asin((2k+1)/(L-1))``.

H-bridge switch naming: S1/S4 form leg A (upper/lower), S2/S3 form leg B.
S1+S3 gives +Vdc, S2+S4 gives -Vdc and S3+S4 shorts the cell output (zero
state), so S4 = not S1 and S3 = not S2 at every instant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ChbConfig, SwitchingAngles, Waveform, check_levels, check_positive
from .errors import CarrierTooSlow, CellOutOfRange, ChbError, ModulationOutOfRange, SampleRateTooLow

SWITCHES = ("S1", "S2", "S3", "S4")
MIN_CARRIER_RATIO = 20
MIN_SAMPLES_PER_CARRIER = 8


def _step_fractions(cells: int) -> np.ndarray:
    """Per-unit NLS thresholds (2k-1)/(2N), k = 1..N."""
    k = np.arange(1, cells + 1)
    return (2 * k - 1) / (2.0 * cells)


def _cycle_position(n: int, freq: float, sample_rate: float,
                    phase: float = 0.0) -> np.ndarray:
    # freq/sample_rate is exact for power-of-two sample counts, which keeps
    # the half-period shift of the index bit-exact.
    return np.arange(n) * (freq / sample_rate) + phase / (2 * math.pi)


def _sample_count(f0: float, sample_rate: float, periods: int) -> int:
    if periods < 1:
        raise ChbError(f"periods must be >= 1, got {periods}")
    return int(round(periods * sample_rate / f0))


def _sin_cycles(position: np.ndarray) -> np.ndarray:
    """sin(2 pi u), odd about half a cycle so u and u + 1/2 give exact negatives."""
    u = np.mod(position, 1.0)
    upper = u >= 0.5
    return np.where(upper, -1.0, 1.0) * np.sin(2 * math.pi * (u - 0.5 * upper))


def nls_thresholds(cfg: ChbConfig) -> list[float]:
    """Reference voltages at which each cell switches in, ascending."""
    return [cfg.v_peak * x for x in _step_fractions(cfg.cells)]


def switching_angles(levels: int) -> SwitchingAngles:
    """Firing angles ``asin((2i+1)/(L-1))`` for i = 0..N-1."""
    cells = check_levels(levels)
    return SwitchingAngles(tuple(
        math.asin((2 * i + 1) / (levels - 1)) for i in range(cells)))


def nls_waveform(cfg: ChbConfig, sample_rate: float, periods: int = 1,
                 phase: float = 0.0) -> Waveform:
    """Sample the NLS staircase for ``periods`` fundamental cycles.

    ``phase`` delays the reference: the output follows ``sin(w t - phase)``.
    """
    check_positive(sample_rate=sample_rate)
    if sample_rate < 64 * cfg.f0:
        raise SampleRateTooLow(f"sample_rate must be >= 64 x f0, got {sample_rate}")
    n = _sample_count(cfg.f0, sample_rate, periods)
    ref = _sin_cycles(_cycle_position(n, cfg.f0, sample_rate, -phase))
    steps = np.searchsorted(_step_fractions(cfg.cells), np.abs(ref), side="left")
    return Waveform(cfg.v_dc * steps * np.sign(ref), sample_rate, cfg.f0)


@dataclass(frozen=True)
class GateSchedule:
    """Switch transitions of one NLS cell over a single fundamental period.

    ``toggle_times`` maps switch name to its transition instants; ``initial``
    gives each switch's state at t = 0.
    """

    cell_index: int
    f0: float
    toggle_times: dict
    initial: dict

    def __post_init__(self):
        T = 1.0 / self.f0
        for name in SWITCHES:
            ts = self.toggle_times[name]
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValueError(f"{name} toggles must be strictly increasing")
            if any(not (0.0 <= t < T) for t in ts):
                raise ValueError(f"{name} toggles must fall within one period")

    def state(self, name: str, t) -> np.ndarray:
        """Conduction state of ``name`` at time(s) ``t`` (periodic)."""
        t = np.mod(np.asarray(t, dtype=float), 1.0 / self.f0)
        flips = np.searchsorted(np.asarray(self.toggle_times[name]), t, side="right")
        return (flips % 2 == 1) ^ bool(self.initial[name])

    def on_fraction(self, name: str) -> float:
        ts = list(self.toggle_times[name])
        T = 1.0 / self.f0
        edges = [0.0] + ts + [T]
        on = bool(self.initial[name])
        total = 0.0
        for a, b in zip(edges, edges[1:]):
            if on:
                total += b - a
            on = not on
        return total / T


def nls_gate_schedule(cfg: ChbConfig, cell: int) -> GateSchedule:
    if not (0 <= cell < cfg.cells):
        raise CellOutOfRange(f"cell must be in [0, {cfg.cells}), got {cell}")
    alpha = switching_angles(cfg.levels)[cell]
    w = 2 * math.pi * cfg.f0
    s1 = (alpha / w, (math.pi - alpha) / w)
    s2 = ((math.pi + alpha) / w, (2 * math.pi - alpha) / w)
    return GateSchedule(
        cell_index=cell,
        f0=cfg.f0,
        toggle_times={"S1": s1, "S2": s2, "S3": s2, "S4": s1},
        initial={"S1": False, "S2": False, "S3": True, "S4": True},
    )


@dataclass(frozen=True)
class PspwmConfig:
    cells: int
    f_carrier: float
    theta_shift: float
    v_dc_level: float = 1.0

    def carrier_phase(self, k: int) -> float:
        return k * self.theta_shift


def pspwm_carriers(cells: int, f_carrier: float, v_dc_level: float = 1.0) -> PspwmConfig:
    """Carrier set for ``cells`` bridges, mutually shifted by 360/(2N) degrees."""
    check_positive(cells=cells, f_carrier=f_carrier, v_dc_level=v_dc_level)
    cells = int(cells)
    return PspwmConfig(cells, float(f_carrier), 2 * math.pi / (2 * cells), float(v_dc_level))


def _triangle_at(position) -> np.ndarray:
    p = np.mod(position, 1.0)
    return np.where(p < 0.25, 4 * p, np.where(p < 0.75, 2 - 4 * p, 4 * p - 4))


def triangle(t, f_carrier: float, phase: float = 0.0):
    """Unit symmetric triangle: 0 rising at phase 0, +1 at a quarter period."""
    check_positive(f_carrier=f_carrier)
    out = _triangle_at(np.asarray(t, dtype=float) * f_carrier + phase / (2 * math.pi))
    return float(out) if out.ndim == 0 else out


def pspwm_waveform(cfg: ChbConfig, ps: PspwmConfig, sample_rate: float,
                   periods: int = 1, phase: float = 0.0,
                   m_a: float | None = None) -> Waveform:
    """Unipolar phase-shifted PWM output of the whole cascade.

    ``m_a`` overrides ``cfg.m_a`` and may be 0 (converter idle).
    Comparisons are strict: a tie between reference and carrier is "off".
    """
    m = cfg.m_a if m_a is None else m_a
    if not (0.0 <= m <= 1.0):
        raise ModulationOutOfRange(f"m_a must lie in [0, 1], got {m}")
    if ps.cells != cfg.cells:
        raise CellOutOfRange(f"carrier set has {ps.cells} cells, config has {cfg.cells}")
    if ps.f_carrier < MIN_CARRIER_RATIO * cfg.f0:
        raise CarrierTooSlow(f"f_carrier must be >= {MIN_CARRIER_RATIO} x f0")
    if sample_rate < MIN_SAMPLES_PER_CARRIER * ps.f_carrier:
        raise SampleRateTooLow(
            f"sample_rate must be >= {MIN_SAMPLES_PER_CARRIER} x f_carrier, got {sample_rate}")
    n = _sample_count(cfg.f0, sample_rate, periods)
    ref = m * _sin_cycles(_cycle_position(n, cfg.f0, sample_rate, -phase))
    base = _cycle_position(n, ps.f_carrier, sample_rate)
    steps = np.zeros(n, dtype=np.int64)
    for k in range(ps.cells):
        carrier = _triangle_at(base + ps.carrier_phase(k) / (2 * math.pi))
        steps += (ref > carrier).astype(np.int64) - (-ref > carrier).astype(np.int64)
    return Waveform(ps.v_dc_level * steps, sample_rate, cfg.f0)
