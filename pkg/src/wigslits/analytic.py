"""Closed-form phase-space fields, marginals, and phase-shift conversions.

Conventions (fixed throughout the package):

* The momentum transform uses the kernel exp(+i x p / hbar) with no
  normalization prefactor; the inverse then carries 1/(2 pi hbar).
* The two slit Gaussians have equal unit amplitudes and the total
  wavefunction is left unnormalized, so the Wigner field of the pair is

      W(x, p) = 2 x0 sqrt(pi) exp(-p^2 x0^2 / hbar^2)
                * { exp(-(x-d)^2/x0^2) + exp(-(x+d)^2/x0^2)
                    + 2 exp(-x^2/x0^2) cos(2 p d / hbar - delta) }

* Free flight over alpha = t/m shears the field: W -> W(x - alpha p, p).

All functions broadcast over numpy array inputs and are pure/thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Grid2D, SlitPairParams, WignerField, propagated_width

__all__ = [
    "FluxSpec",
    "PulseSeries",
    "wigner_two_slit",
    "wigner_two_slit_propagated",
    "wigner_single_slit",
    "momentum_marginal",
    "position_marginal_propagated",
    "two_slit_field",
    "single_slit_field",
    "phase_from_flux",
    "phase_from_voltage_pulses",
    "phase_from_magnetic_pulses",
]


@dataclass(frozen=True)
class FluxSpec:
    """Magnetic flux threading the two paths, with its flux quantum."""

    phi: float
    phi0: float

    def __post_init__(self):
        if not self.phi0 > 0:
            raise ValueError(f"flux quantum must be > 0, got {self.phi0}")


@dataclass(frozen=True)
class PulseSeries:
    """Sampled time series of a pulse (voltage, or magnetic-moment energy)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise ValueError("times and values must be 1-D arrays of equal length")
        if t.size < 2:
            raise ValueError(f"pulse series needs >= 2 samples, got {t.size}")
        if not np.all(np.diff(t) > 0):
            raise ValueError("pulse times must be strictly ascending")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("pulse series contains non-finite values")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def integral(self) -> float:
        """Trapezoid integral of the sampled pulse; exact for piecewise-linear pulses."""
        return float(np.trapezoid(self.values, self.times))


def wigner_two_slit(params: SlitPairParams, x, p):
    """Wigner field of the Gaussian pair immediately after the slits.

    ``params.alpha`` is ignored here; this is the unpropagated field. The
    two outer terms are the single-slit fields; the central term is the
    oscillatory interference term and carries the phase ``delta``.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    x0, d, hbar, delta = params.x0, params.d, params.hbar, params.delta
    envelope = 2 * x0 * math.sqrt(math.pi) * np.exp(-(p * x0 / hbar) ** 2)
    slits = np.exp(-((x - d) / x0) ** 2) + np.exp(-((x + d) / x0) ** 2)
    cross = 2 * np.exp(-((x / x0) ** 2)) * np.cos(2 * p * d / hbar - delta)
    return envelope * (slits + cross)


def wigner_two_slit_propagated(params: SlitPairParams, x, p):
    """Wigner field after free flight: the unpropagated field sheared to (x - alpha p, p)."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    return wigner_two_slit(params, x - params.alpha * p, p)


def wigner_single_slit(params: SlitPairParams, x, p, slit: int = 1):
    """Wigner field of one slit alone (``slit`` = +1 for the slit at +d, -1 at -d)."""
    if slit not in (1, -1):
        raise ValueError(f"slit must be +1 or -1, got {slit}")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    x0, hbar = params.x0, params.hbar
    c = slit * params.d
    return 2 * x0 * math.sqrt(math.pi) * np.exp(-(p * x0 / hbar) ** 2) * np.exp(-((x - c) / x0) ** 2)


def momentum_marginal(params: SlitPairParams, p):
    """Momentum density |phibar(p)|^2 = 8 pi x0^2 exp(-p^2 x0^2/hbar^2) cos^2(p d/hbar - delta/2).

    Invariant under free flight, so ``params.alpha`` plays no role. The
    fringe comb shifts to positive p in proportion to delta.
    """
    p = np.asarray(p, dtype=float)
    x0, d, hbar, delta = params.x0, params.d, params.hbar, params.delta
    return (
        8 * math.pi * x0**2
        * np.exp(-(p * x0 / hbar) ** 2)
        * np.cos(p * d / hbar - delta / 2) ** 2
    )


def position_marginal_propagated(params: SlitPairParams, x):
    """Position density |phi(x)|^2 after free flight over ``params.alpha``.

    The slit envelopes widen from x0 to the propagated width; the fringe
    comb inside the overlap region shifts to positive x in proportion to
    delta. At alpha = 0 this reduces to the density right after the slits.
    """
    x = np.asarray(x, dtype=float)
    x0, d, hbar, delta, alpha = params.x0, params.d, params.hbar, params.delta, params.alpha
    big = propagated_width(params)
    slits = np.exp(-((x - d) / big) ** 2) + np.exp(-((x + d) / big) ** 2)
    cross = 2 * np.exp(-(x**2 + d**2) / big**2) * np.cos(
        2 * x * alpha * d * hbar / (x0**2 * big**2) - delta
    )
    return (x0 / big) * (slits + cross)


def two_slit_field(params: SlitPairParams, grid: Grid2D) -> WignerField:
    """Sample the (propagated) two-slit Wigner field on a phase-space grid."""
    x = grid.x_axis.points()[:, None]
    p = grid.p_axis.points()[None, :]
    return WignerField(grid=grid, values=wigner_two_slit_propagated(params, x, p))


def single_slit_field(params: SlitPairParams, grid: Grid2D, slit: int = 1) -> WignerField:
    """Sample one sheared single-slit Wigner field on a phase-space grid."""
    x = grid.x_axis.points()[:, None]
    p = grid.p_axis.points()[None, :]
    return WignerField(grid=grid, values=wigner_single_slit(params, x - params.alpha * p, p, slit))


def phase_from_flux(flux: FluxSpec) -> float:
    """Aharonov-Bohm phase of a charge e encircling magnetic flux: 2 pi phi / phi0."""
    return 2 * math.pi * flux.phi / flux.phi0


def _pulse_phase(path1: PulseSeries, path2: PulseSeries, scale: float) -> float:
    return float(scale) * (path1.integral() - path2.integral())


def phase_from_voltage_pulses(path1: PulseSeries, path2: PulseSeries, e_over_hbar: float) -> float:
    """Scalar AB phase for electrons in pulsed Faraday cages.

    delta = (e/hbar) * (integral of U(t) on path 1 - integral on path 2);
    pass the charge-to-action ratio explicitly to fix the unit system.
    """
    return _pulse_phase(path1, path2, e_over_hbar)


def phase_from_magnetic_pulses(path1: PulseSeries, path2: PulseSeries, inv_hbar: float) -> float:
    """Scalar AB phase for polarized neutrons in pulsed magnetic fields.

    Same integral contract as the electric case with samples interpreted as
    the magnetic-moment energy mu*B(t) and the overall 1/hbar scale.
    """
    return _pulse_phase(path1, path2, inv_hbar)
