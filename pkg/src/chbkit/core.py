"""
Shared domain types for cascaded H-bridge (CHB) inverter analysis.

Angles are radians throughout. Voltages in ``ChbConfig`` refer to the peak
of the synthesized phase waveform; the per-cell DC voltage is derived.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyWaveform,
    EvenLevels,
    NonPositive,
    SampleRateTooLow,
    TooFewLevels,
)

# Waveform span must be an integer number of periods to this relative slack.
PERIOD_TOLERANCE = 1e-9
MIN_SAMPLES_PER_PERIOD = 64


def check_levels(levels: int) -> int:
    """Return the cell count for a legal level count, or raise."""
    if int(levels) != levels:
        raise EvenLevels(f"level count must be an integer, got {levels!r}")
    levels = int(levels)
    if levels < 3:
        raise TooFewLevels(f"a CHB needs at least 3 levels, got {levels}")
    if levels % 2 == 0:
        raise EvenLevels(f"level count must be odd, got {levels}")
    return (levels - 1) // 2


def check_positive(**values: float) -> None:
    for name, value in values.items():
        if not (value > 0) or not math.isfinite(value):
            raise NonPositive(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class ChbConfig:
    """Topology of one CHB phase leg.

    ``v_peak`` is the staircase peak (cells times cell voltage).
    """

    levels: int
    v_peak: float
    f0: float = 60.0
    m_a: float = 1.0

    def __post_init__(self):
        validate_config(self)

    @classmethod
    def from_cells(cls, cells: int, v_peak: float, f0: float = 60.0,
                   m_a: float = 1.0) -> "ChbConfig":
        return cls(levels=2 * int(cells) + 1, v_peak=v_peak, f0=f0, m_a=m_a)

    @property
    def cells(self) -> int:
        return (self.levels - 1) // 2

    @property
    def v_dc(self) -> float:
        """Per-cell DC voltage."""
        return self.v_peak / self.cells

    @property
    def period(self) -> float:
        return 1.0 / self.f0


def validate_config(cfg: ChbConfig) -> ChbConfig:
    """Return ``cfg`` unchanged if every invariant holds, raise otherwise."""
    check_levels(cfg.levels)
    check_positive(v_peak=cfg.v_peak, f0=cfg.f0)
    if not (0.0 < cfg.m_a <= 1.0):
        raise NonPositive(f"m_a must lie in (0, 1], got {cfg.m_a!r}")
    return cfg


@dataclass(frozen=True)
class SwitchingAngles:
    """Firing angles of the staircase, one per cell, ascending."""

    angles: tuple[float, ...]

    def __post_init__(self):
        a = self.angles
        if not a:
            raise TooFewLevels("at least one switching angle is required")
        if any(not (0.0 < x < math.pi / 2) for x in a):
            raise ValueError("switching angles must lie in (0, pi/2)")
        if any(b <= x for x, b in zip(a, a[1:])):
            raise ValueError("switching angles must be strictly increasing")

    @property
    def levels(self) -> int:
        return 2 * len(self.angles) + 1

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i):
        return self.angles[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.angles, dtype=float)


@dataclass(frozen=True, eq=False)
class Waveform:
    """Uniformly sampled real signal spanning a whole number of periods."""

    samples: np.ndarray
    sample_rate: float
    f0: float

    def __post_init__(self):
        x = np.asarray(self.samples, dtype=float)
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        if x.ndim != 1 or x.size == 0:
            raise EmptyWaveform("waveform needs a non-empty 1-D sample array")
        check_positive(sample_rate=self.sample_rate, f0=self.f0)
        if self.sample_rate < MIN_SAMPLES_PER_PERIOD * self.f0:
            raise SampleRateTooLow(
                f"sample_rate {self.sample_rate} is below "
                f"{MIN_SAMPLES_PER_PERIOD} x f0 ({self.f0} Hz)")
        periods = x.size * self.f0 / self.sample_rate
        if periods < 1 - PERIOD_TOLERANCE or \
                abs(periods - round(periods)) > PERIOD_TOLERANCE * max(1.0, periods):
            raise ValueError(
                f"{x.size} samples at {self.sample_rate} Hz cover {periods} "
                f"periods; need a positive integer")

    def __len__(self):
        return self.samples.size

    @property
    def periods(self) -> int:
        return int(round(self.samples.size * self.f0 / self.sample_rate))

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def with_samples(self, samples) -> "Waveform":
        return Waveform(np.asarray(samples, dtype=float), self.sample_rate, self.f0)


@dataclass(frozen=True)
class HarmonicSpectrum:
    """RMS amplitude per harmonic index of ``f0``."""

    f0: float
    entries: tuple[tuple[int, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        entries = tuple((int(h), float(a)) for h, a in self.entries)
        hs = [h for h, _ in entries]
        if any(h < 1 for h in hs):
            raise ValueError("harmonic indices must be positive")
        if any(b <= a for a, b in zip(hs, hs[1:])):
            raise ValueError("harmonic indices must be unique and sorted")
        if any(not (a >= 0) for _, a in entries):
            raise ValueError("harmonic amplitudes must be non-negative")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_arrays(cls, f0: float, harmonics: Iterable[int],
                    amplitudes: Sequence[float]) -> "HarmonicSpectrum":
        return cls(f0, tuple(zip(harmonics, amplitudes)))

    @property
    def harmonics(self) -> np.ndarray:
        return np.array([h for h, _ in self.entries], dtype=int)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([a for _, a in self.entries], dtype=float)

    def amplitude(self, h: int) -> float:
        for hh, a in self.entries:
            if hh == h:
                return a
        raise KeyError(h)

    def __getitem__(self, h: int) -> float:
        return self.amplitude(h)

    def rms(self) -> float:
        """Root-sum-square of all listed components."""
        return float(np.sqrt(np.sum(self.amplitudes ** 2)))
