"""
RMS, Fourier and THD of NLS staircases.

Two independent routes are provided. The closed forms work per unit of the
staircase peak and need only the level count. The numeric routes take any
sampled :class:`~chbkit.core.Waveform` and correlate it against each
harmonic directly, so the sample count is unconstrained and an integer
period span has no leakage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import HarmonicSpectrum, Waveform, check_levels, check_positive
from .errors import EmptyWaveform, EvenHarmonic, NyquistViolation, ZeroFundamental

ZERO_FUNDAMENTAL_RATIO = 1e-12


@dataclass(frozen=True)
class ThdReport:
    rms_total: float
    rms_fundamental: float
    thd: float

    @property
    def thd_percent(self) -> float:
        return 100.0 * self.thd


def _thd(total: float, fundamental: float) -> ThdReport:
    distortion = math.sqrt(max(total * total - fundamental * fundamental, 0.0))
    return ThdReport(total, fundamental, distortion / fundamental)


def rms_analytic(levels: int) -> float:
    """Per-unit RMS of the L-level staircase."""
    cells = check_levels(levels)
    acc = sum((2 * i + 1) * math.asin((2 * i + 1) / (levels - 1)) for i in range(cells))
    return math.sqrt(1.0 - 2.0 / (math.pi * cells * cells) * acc)


def fourier_bh(levels: int, h: int) -> float:
    """Per-unit peak sine coefficient of odd harmonic ``h``.

    Even harmonics vanish by half-wave symmetry; asking for one raises
    :class:`EvenHarmonic` rather than returning a silent zero.
    """
    cells = check_levels(levels)
    if h < 1 or h % 2 == 0:
        raise EvenHarmonic(f"harmonic must be a positive odd integer, got {h}")
    acc = sum(math.cos(h * math.asin((2 * i + 1) / (levels - 1))) for i in range(cells))
    return 4.0 / (math.pi * h * cells) * acc


def first_harmonic_rms(levels: int) -> float:
    cells = check_levels(levels)
    acc = sum(math.sqrt(1.0 - ((2 * i + 1) / (levels - 1)) ** 2) for i in range(cells))
    return 4.0 / (math.pi * cells * math.sqrt(2.0)) * acc


def thd_analytic(levels: int) -> ThdReport:
    return _thd(rms_analytic(levels), first_harmonic_rms(levels))


def rms_numeric(w: Waveform) -> float:
    x = w.samples
    if x.size == 0:
        raise EmptyWaveform("cannot take the RMS of an empty waveform")
    return float(np.sqrt(np.mean(x * x)))


def _correlate(w: Waveform, harmonics: np.ndarray) -> np.ndarray:
    x = w.samples
    n = x.size
    periods = w.periods
    grid = np.arange(n, dtype=np.int64)
    table = 2 * math.pi * np.arange(n) / n
    sin_t, cos_t = np.sin(table), np.cos(table)
    out = np.empty(harmonics.size)
    # Index arithmetic modulo n keeps every reference sinusoid exactly periodic.
    chunk = max(1, (1 << 22) // n)
    for start in range(0, harmonics.size, chunk):
        hs = harmonics[start:start + chunk]
        idx = np.mod(np.outer(hs * periods, grid), n)
        a = sin_t[idx] @ x
        b = cos_t[idx] @ x
        out[start:start + chunk] = np.hypot(a, b) * (2.0 / n) / math.sqrt(2.0)
    return out


def spectrum(w: Waveform, max_h: int) -> HarmonicSpectrum:
    """RMS amplitude of harmonics 1..max_h of ``w.f0``."""
    if max_h < 1:
        raise NyquistViolation(f"max_h must be >= 1, got {max_h}")
    if max_h * w.f0 >= w.sample_rate / 2:
        raise NyquistViolation(
            f"harmonic {max_h} of {w.f0} Hz is not below Nyquist ({w.sample_rate / 2} Hz)")
    hs = np.arange(1, max_h + 1)
    return HarmonicSpectrum.from_arrays(w.f0, hs, _correlate(w, hs))


def thd_numeric(w: Waveform) -> ThdReport:
    total = rms_numeric(w)
    fundamental = spectrum(w, 1)[1]
    if fundamental < ZERO_FUNDAMENTAL_RATIO * total or fundamental == 0.0:
        raise ZeroFundamental("waveform has no measurable fundamental")
    return _thd(total, fundamental)


def lc_gain(freq, lf: float, cf: float, r_load: float):
    """|H(j 2 pi f)| of a series-L, shunt-C filter feeding ``r_load``."""
    s = 2j * math.pi * np.asarray(freq, dtype=float)
    return np.abs(1.0 / (1.0 + s * lf / r_load + s * s * lf * cf))


def filtered_spectrum(s: HarmonicSpectrum, lf: float, cf: float,
                      r_load: float) -> HarmonicSpectrum:
    check_positive(lf=lf, cf=cf, r_load=r_load)
    gains = lc_gain(s.harmonics * s.f0, lf, cf, r_load)
    return HarmonicSpectrum.from_arrays(s.f0, s.harmonics, s.amplitudes * gains)
