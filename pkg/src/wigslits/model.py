"""Core value types: slit-pair parameters, sampling grids, and field containers.

All types are immutable after construction (frozen dataclasses; array payloads
are marked read-only), so instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

__all__ = [
    "SlitPairParams",
    "Grid1D",
    "Grid2D",
    "WignerField",
    "SampledWavefunction",
    "MarginalCurve",
    "FringeReport",
    "normalized_params",
    "propagated_width",
]


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SlitPairParams:
    """Physical scenario of the two-slit Gaussian pair.

    Slits of width ``x0`` sit at ``+d`` and ``-d``; the relative phase
    ``delta`` (radians) is the Aharonov-Bohm phase split evenly between the
    two beams; ``alpha`` is the free-flight parameter (time over mass) that
    shears the phase-space distribution.
    """

    x0: float
    d: float
    delta: float = 0.0
    hbar: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        for name in ("x0", "d", "delta", "hbar", "alpha"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.x0 <= 0:
            raise ValueError(f"x0 must be > 0, got {self.x0}")
        if self.d <= 0:
            raise ValueError(f"d must be > 0, got {self.d}")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")


def normalized_params(alpha: float = 0.0, delta: float = 0.0) -> SlitPairParams:
    """Standard scenario in normalized units: x0 = 1, hbar = 1, slits at +-5."""
    return SlitPairParams(x0=1.0, d=5.0, delta=delta, hbar=1.0, alpha=alpha)


def propagated_width(params: SlitPairParams) -> float:
    """Width of each slit envelope after free flight.

    Equals sqrt(alpha^2 hbar^2 + x0^4) / x0; reduces to x0 at alpha = 0 and
    grows monotonically with alpha.
    """
    return math.sqrt(params.alpha**2 * params.hbar**2 + params.x0**4) / params.x0


@dataclass(frozen=True)
class Grid1D:
    """Uniform sampling lattice, inclusive of both endpoints."""

    min: float
    max: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "min", _require_finite("min", self.min))
        object.__setattr__(self, "max", _require_finite("max", self.max))
        object.__setattr__(self, "n", int(self.n))
        if self.n < 2:
            raise ValueError(f"grid needs n >= 2 points, got {self.n}")
        if not self.min < self.max:
            raise ValueError(f"grid needs min < max, got [{self.min}, {self.max}]")

    @property
    def spacing(self) -> float:
        return (self.max - self.min) / (self.n - 1)

    def points(self) -> np.ndarray:
        # min + i*spacing rather than linspace, so point(i) and points() agree bit-for-bit
        return self.min + np.arange(self.n) * self.spacing

    def point(self, i: int) -> float:
        if not 0 <= i < self.n:
            raise IndexError(f"grid index {i} out of range [0, {self.n})")
        return self.min + i * self.spacing

    def index_of(self, value: float) -> int:
        """Index of the nearest grid point (clipped to the grid)."""
        i = round((float(value) - self.min) / self.spacing)
        return min(max(i, 0), self.n - 1)


@dataclass(frozen=True)
class Grid2D:
    """Product lattice for the (x, p) phase-space plane."""

    x_axis: Grid1D
    p_axis: Grid1D


def _frozen_array(values, dtype, shape, what: str) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if arr.shape != shape:
        raise ValueError(f"{what} shape {arr.shape} does not match grid shape {shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite values")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class WignerField:
    """Real phase-space field over a Grid2D, indexed [x_index, p_index].

    Values may be negative: the interference term of a superposition is
    oscillatory and dips below zero.
    """

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        shape = (self.grid.x_axis.n, self.grid.p_axis.n)
        object.__setattr__(self, "values", _frozen_array(self.values, float, shape, "Wigner field"))


@dataclass(frozen=True)
class SampledWavefunction:
    """Complex wavefunction samples on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _frozen_array(self.values, complex, (self.grid.n,), "wavefunction")
        )


@dataclass(frozen=True)
class MarginalCurve:
    """Probability-density samples along one axis; non-negative everywhere."""

    axis_label: str
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        if self.axis_label not in ("position", "momentum"):
            raise ValueError(f"axis_label must be 'position' or 'momentum', got {self.axis_label!r}")
        arr = _frozen_array(self.values, float, (self.grid.n,), "marginal")
        if arr.min() < 0:
            raise ValueError(f"marginal has negative values (min {arr.min():g})")
        object.__setattr__(self, "values", arr)


@dataclass(frozen=True)
class FringeReport:
    """Extracted fringe structure of a marginal curve."""

    maxima: Tuple[float, ...] = ()
    period_estimate: Optional[float] = None
    shift_vs_reference: Optional[float] = None
    pattern_interval: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        maxima = tuple(float(m) for m in self.maxima)
        if any(b <= a for a, b in zip(maxima, maxima[1:])):
            raise ValueError("maxima must be strictly ascending")
        object.__setattr__(self, "maxima", maxima)
        if self.period_estimate is not None and not self.period_estimate > 0:
            raise ValueError(f"period_estimate must be > 0, got {self.period_estimate}")
        if self.pattern_interval is not None:
            lo, hi = self.pattern_interval
            object.__setattr__(self, "pattern_interval", (float(lo), float(hi)))

    def to_dict(self) -> dict:
        return {
            "maxima": list(self.maxima),
            "period_estimate": self.period_estimate,
            "shift_vs_reference": self.shift_vs_reference,
            "pattern_interval": list(self.pattern_interval) if self.pattern_interval else None,
        }
