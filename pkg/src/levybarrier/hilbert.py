"""Sinc-expansion discrete Hilbert transform and half-line projections.

On the xi lattice the sinc-based Hilbert transform reduces to a Toeplitz
convolution with kernel

    h(m) = (1 - cos(pi m)) / (pi m)  =  2/(pi m)  for odd m,  0 for even m

over lags m = -(M-1) .. M-1 (the m = 0 limit is 0 and is hard-coded).
The product is computed as a linear convolution embedded in a length-2M
circular FFT, which is exact for the centre window: the needed output
lags never wrap.  Kernels are cached per grid since pricers reuse them
heavily.

The projections split a spectrum into the transforms of the x > b and
x < b restrictions of the underlying function (or of the band l < x < u)
without leaving the frequency domain; barrier shifts enter as pointwise
phase factors, so barriers need not lie on the x lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .grid import GridSpec, SampledSpectrum, require_same_grid

__all__ = [
    "HilbertKernel",
    "hilbert_kernel",
    "discrete_hilbert",
    "plemelj_decompose",
    "plemelj_decompose_shifted",
    "window_between_barriers",
]


@dataclass(frozen=True)
class HilbertKernel:
    """Precomputed frequency representation of the Toeplitz kernel."""

    grid: GridSpec
    kernel_fft: np.ndarray = field(repr=False)

    @classmethod
    def for_grid(cls, grid: GridSpec) -> "HilbertKernel":
        M = grid.M
        lags = np.arange(-(M - 1), M)
        with np.errstate(divide="ignore", invalid="ignore"):
            h = (1.0 - np.cos(np.pi * lags)) / (np.pi * lags)
        h[lags % 2 == 0] = 0.0  # includes the m = 0 limit
        # circular embedding: slot t holds lag t for t < M, lag t-2M beyond
        c = np.zeros(2 * M)
        c[:M] = h[M - 1 :]
        c[M + 1 :] = h[: M - 1]
        return cls(grid, np.fft.fft(c))

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Discrete Hilbert transform of one centred sample vector."""
        M = self.grid.M
        padded = np.zeros(2 * M, dtype=complex)
        padded[:M] = values
        return np.fft.ifft(np.fft.fft(padded) * self.kernel_fft)[:M]


@lru_cache(maxsize=16)
def hilbert_kernel(grid: GridSpec) -> HilbertKernel:
    return HilbertKernel.for_grid(grid)


def _check(f: SampledSpectrum, kernel: HilbertKernel) -> None:
    require_same_grid(f, kernel)


def discrete_hilbert(f: SampledSpectrum, kernel: HilbertKernel) -> SampledSpectrum:
    _check(f, kernel)
    return f.with_values(kernel.apply(f.values))


def plemelj_decompose(
    f: SampledSpectrum, kernel: HilbertKernel
) -> tuple[SampledSpectrum, SampledSpectrum]:
    """Split f into (plus, minus) with plus + minus = f exactly.

    plus is the transform of the x > 0 restriction, minus of x < 0.
    """
    _check(f, kernel)
    ih = 1j * kernel.apply(f.values)
    return (
        f.with_values(0.5 * (f.values + ih)),
        f.with_values(0.5 * (f.values - ih)),
    )


def _shifted_half(values: np.ndarray, b: float, kernel: HilbertKernel) -> np.ndarray:
    """e^{i b xi} * i * H[e^{-i b xi} f] on the grid."""
    xi = kernel.grid.xi
    phase = np.exp(-1j * b * xi)
    return np.exp(1j * b * xi) * (1j * kernel.apply(phase * values))


def plemelj_decompose_shifted(
    f: SampledSpectrum, b: float, side: str, kernel: HilbertKernel
) -> SampledSpectrum:
    """Transform of the restriction of f's function to x > b or x < b.

    side is "above" (+) or "below" (-); b = 0 reduces to the unshifted
    decomposition.
    """
    _check(f, kernel)
    if side not in ("above", "below"):
        raise ValueError(f"side must be 'above' or 'below', got {side!r}")
    if not np.isfinite(b):
        raise ValueError(f"barrier must be finite, got {b}")
    half = _shifted_half(f.values, b, kernel)
    sign = 1.0 if side == "above" else -1.0
    return f.with_values(0.5 * (f.values + sign * half))


def window_between_barriers(
    f: SampledSpectrum, l: float, u: float, kernel: HilbertKernel
) -> SampledSpectrum:
    """Transform of the restriction of f's function to l < x < u."""
    _check(f, kernel)
    if not l < u:
        raise ValueError(f"need l < u, got l={l}, u={u}")
    vals = 0.5 * (_shifted_half(f.values, l, kernel) - _shifted_half(f.values, u, kernel))
    return f.with_values(vals)


def window_values(
    values: np.ndarray, l: float, u: float, kernel: HilbertKernel
) -> np.ndarray:
    """Raw-array band window used in pricer hot loops."""
    return 0.5 * (_shifted_half(values, l, kernel) - _shifted_half(values, u, kernel))


def above_values(values: np.ndarray, b: float, kernel: HilbertKernel) -> np.ndarray:
    """Raw-array x > b projection used in pricer hot loops."""
    return 0.5 * (values + _shifted_half(values, b, kernel))


def below_values(values: np.ndarray, b: float, kernel: HilbertKernel) -> np.ndarray:
    """Raw-array x < b projection used in pricer hot loops."""
    return 0.5 * (values - _shifted_half(values, b, kernel))
