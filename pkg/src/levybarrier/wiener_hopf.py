"""Wiener-Hopf factorisation and additive decomposition of spectra.

The multiplicative split Phi = Phi_plus * Phi_minus (factors analytic in
the upper / lower half-planes) is obtained by decomposing log Phi with
the half-line projections and exponentiating.  On the z-inversion
contour |q| = rho < 1 and |Psi| <= 1, so Phi = 1 - q*Psi keeps a
positive real part: the principal log branch is continuous and the
winding check below is purely defensive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SampledSpectrum
from .hilbert import HilbertKernel, plemelj_decompose

__all__ = [
    "SingularInputError",
    "BranchFailureError",
    "FactorPair",
    "factorize",
    "decompose_additive",
]

MIN_MODULUS = 1e-14


class SingularInputError(ValueError):
    """Input spectrum too close to zero for a stable logarithm."""


class BranchFailureError(ArithmeticError):
    """Phase winding detected; a continuous log branch is unavailable."""


@dataclass(frozen=True)
class FactorPair:
    plus: SampledSpectrum
    minus: SampledSpectrum


def _continuous_log(values: np.ndarray) -> np.ndarray:
    mod = np.abs(values)
    if np.min(mod) < MIN_MODULUS:
        raise SingularInputError(
            f"minimum modulus {np.min(mod):.3e} below {MIN_MODULUS:.0e}; cannot factorise"
        )
    phase = np.angle(values)
    # scan outward from xi = 0: any principal-branch jump signals winding
    if np.any(np.abs(np.diff(phase)) > np.pi):
        raise BranchFailureError("phase winding detected in factorisation input")
    return np.log(mod) + 1j * phase


def factorize(phi: SampledSpectrum, kernel: HilbertKernel) -> FactorPair:
    """Phi -> (Phi_plus, Phi_minus) with Phi_plus * Phi_minus = Phi."""
    h = phi.with_values(_continuous_log(phi.values))
    h_plus, h_minus = plemelj_decompose(h, kernel)
    return FactorPair(
        plus=phi.with_values(np.exp(h_plus.values)),
        minus=phi.with_values(np.exp(h_minus.values)),
    )


def factorize_values(values: np.ndarray, kernel: HilbertKernel) -> tuple[np.ndarray, np.ndarray]:
    """Raw-array factorisation used in pricer hot loops."""
    h = _continuous_log(values)
    ih = 1j * kernel.apply(h)
    return np.exp(0.5 * (h + ih)), np.exp(0.5 * (h - ih))


def decompose_additive(
    f: SampledSpectrum, kernel: HilbertKernel
) -> tuple[SampledSpectrum, SampledSpectrum]:
    """Additive split f = plus + minus via the half-line projections."""
    return plemelj_decompose(f, kernel)
