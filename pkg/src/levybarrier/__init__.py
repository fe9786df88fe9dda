"""Fourier/Hilbert-transform pricing of discretely monitored barrier
options under Levy processes, with spectral filtering."""

from .filters import FilterKind, FilterSpec
from .grid import GridSpec, SampledDensity, SampledSpectrum, build_grid
from .hilbert import HilbertKernel, hilbert_kernel
from .levy import DecayClass, DecayKind, LevyModel, ModelKind
from .oracle import OracleConfig, mc_price, quad_price
from .payoff import OptionContract, damped_payoff_fourier
from .pricers import (
    FixedPointSettings,
    Method,
    PricingResult,
    default_grid,
    price,
    price_fgm_double,
    price_fgm_single,
    price_fl,
)
from .ztransform import ZInversionConfig

__version__ = "0.1.0"

__all__ = [
    "DecayClass",
    "DecayKind",
    "FilterKind",
    "FilterSpec",
    "FixedPointSettings",
    "GridSpec",
    "HilbertKernel",
    "LevyModel",
    "Method",
    "ModelKind",
    "OptionContract",
    "OracleConfig",
    "PricingResult",
    "SampledDensity",
    "SampledSpectrum",
    "ZInversionConfig",
    "build_grid",
    "damped_payoff_fourier",
    "default_grid",
    "hilbert_kernel",
    "mc_price",
    "price",
    "price_fgm_double",
    "price_fgm_single",
    "price_fl",
    "quad_price",
]
