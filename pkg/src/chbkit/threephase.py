"""Balanced three-phase (Y-connected) assembly of CHB phase legs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .core import ChbConfig, Waveform
from .errors import MismatchedSampling, PfOutOfRange
from .modulation import PspwmConfig, nls_waveform, pspwm_waveform

PHASE_STEP = 2 * math.pi / 3


@dataclass(frozen=True)
class ThreePhaseSet:
    a: Waveform
    b: Waveform
    c: Waveform

    def __post_init__(self):
        ref = self.a
        for w in (self.b, self.c):
            if len(w) != len(ref) or w.sample_rate != ref.sample_rate or w.f0 != ref.f0:
                raise MismatchedSampling("phases must share length, sample rate and f0")

    @property
    def phases(self) -> tuple[Waveform, Waveform, Waveform]:
        return self.a, self.b, self.c

    def neutral_sum(self) -> Waveform:
        return self.a.with_samples(self.a.samples + self.b.samples + self.c.samples)


def three_phase(modulator: Literal["nls", "pspwm"], cfg: ChbConfig, sample_rate: float,
                ps: Optional[PspwmConfig] = None, periods: int = 1,
                shift: float = 0.0) -> ThreePhaseSet:
    """Synthesize phases A, B, C lagging by 0, 120 and 240 degrees.

    Phase k follows ``sin(w t - k 2 pi/3 + shift)``; ``shift`` is a common
    angle such as the inverter-to-grid offset. When a period holds a multiple of three
    samples, B and C are index rotations of A so the shift is exact.
    """
    if modulator == "nls":
        def make(offset):
            return nls_waveform(cfg, sample_rate, periods, phase=offset)
    elif modulator == "pspwm":
        if ps is None:
            raise ValueError("pspwm modulator needs a PspwmConfig")

        def make(offset):
            return pspwm_waveform(cfg, ps, sample_rate, periods, phase=offset)
    else:
        raise ValueError(f"unknown modulator {modulator!r}")
    a = make(-shift)
    per_period = len(a) // a.periods
    if len(a) % a.periods == 0 and per_period % 3 == 0:
        lag = per_period // 3
        return ThreePhaseSet(a, a.with_samples(np.roll(a.samples, lag)),
                             a.with_samples(np.roll(a.samples, 2 * lag)))
    return ThreePhaseSet(a, *(make(k * PHASE_STEP - shift) for k in (1, 2)))


def line_line(s: ThreePhaseSet) -> Waveform:
    """Line-to-line voltage A - B."""
    if len(s.a) != len(s.b) or s.a.sample_rate != s.b.sample_rate:
        raise MismatchedSampling("phases A and B are sampled differently")
    return s.a.with_samples(s.a.samples - s.b.samples)


def three_phase_power(v_phase_rms: float, i_phase_rms: float, pf: float) -> float:
    if not (0.0 <= pf <= 1.0):
        raise PfOutOfRange(f"power factor must lie in [0, 1], got {pf}")
    return 3.0 * v_phase_rms * i_phase_rms * pf
