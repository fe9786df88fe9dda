"""Dual log-price/frequency lattices and centred DFT conventions.

The two grids are tied by the Nyquist relation: x_j = j*dx for
j = -M/2 .. M/2-1 with dx = 2*x_max/M, and xi_k = k*dxi with
dxi = pi/x_max, xi_max = pi/dx.  The transform pair implemented here is

    fwd:  fhat(xi_k) = dx  * sum_j f(x_j)    exp(+i x_j xi_k)
    inv:  f(x_j)     = dxi / (2 pi) * sum_k fhat(xi_k) exp(-i x_j xi_k)

computed via the FFT with fftshift bookkeeping so callers only ever see
centred indices.  All arrays are complex128.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "GridMismatchError",
    "GridSpec",
    "SampledSpectrum",
    "SampledDensity",
    "build_grid",
    "forward_dft",
    "inverse_dft",
    "inverse_at_zero",
]


class GridMismatchError(ValueError):
    """Raised when two sampled objects do not share a grid."""


@dataclass(frozen=True)
class GridSpec:
    """Centred lattice pair of size M (even, >= 8) on [-x_max, x_max)."""

    M: int
    x_max: float

    def __post_init__(self) -> None:
        if self.M < 8 or self.M % 2 != 0:
            raise ValueError(f"M must be even and >= 8, got {self.M}")
        if not (self.x_max > 0):
            raise ValueError(f"x_max must be positive, got {self.x_max}")

    @property
    def dx(self) -> float:
        return 2.0 * self.x_max / self.M

    @property
    def dxi(self) -> float:
        return np.pi / self.x_max

    @property
    def xi_max(self) -> float:
        return np.pi / self.dx

    @cached_property
    def x(self) -> np.ndarray:
        return np.arange(-self.M // 2, self.M // 2) * self.dx

    @cached_property
    def xi(self) -> np.ndarray:
        return np.arange(-self.M // 2, self.M // 2) * self.dxi

    @cached_property
    def eta(self) -> np.ndarray:
        """Scaled frequency xi/xi_max; left endpoint is exactly -1."""
        return np.arange(-self.M // 2, self.M // 2) / (self.M // 2)


def build_grid(M: int, x_max: float) -> GridSpec:
    return GridSpec(int(M), float(x_max))


def _as_values(values) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1:
        raise ValueError("sampled values must be one-dimensional")
    return v


@dataclass(frozen=True)
class SampledSpectrum:
    """Complex samples on the xi lattice (index k = -M/2 .. M/2-1)."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        v = _as_values(self.values)
        if len(v) != self.grid.M:
            raise ValueError(f"expected {self.grid.M} samples, got {len(v)}")
        object.__setattr__(self, "values", v)

    def with_values(self, values) -> "SampledSpectrum":
        return SampledSpectrum(self.grid, values)


@dataclass(frozen=True)
class SampledDensity:
    """Complex samples on the x lattice (index j = -M/2 .. M/2-1)."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        v = _as_values(self.values)
        if len(v) != self.grid.M:
            raise ValueError(f"expected {self.grid.M} samples, got {len(v)}")
        object.__setattr__(self, "values", v)


def require_same_grid(a, b) -> None:
    if a.grid != b.grid:
        raise GridMismatchError(f"grid mismatch: {a.grid} vs {b.grid}")


def forward_dft(density: SampledDensity) -> SampledSpectrum:
    g = density.grid
    vals = g.dx * g.M * np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(density.values)))
    return SampledSpectrum(g, vals)


def inverse_dft(spectrum: SampledSpectrum) -> SampledDensity:
    g = spectrum.grid
    vals = (g.dxi / (2.0 * np.pi)) * np.fft.fftshift(
        np.fft.fft(np.fft.ifftshift(spectrum.values))
    )
    return SampledDensity(g, vals)


def inverse_at_zero(spectrum: SampledSpectrum) -> complex:
    """Inverse transform evaluated at x = 0 only: a single O(M) sum."""
    g = spectrum.grid
    return complex(g.dxi / (2.0 * np.pi) * np.sum(spectrum.values))
