"""Inverse z-transform on a circular contour, with Euler acceleration.

Given samples of the generating function f~(q) = sum_n f(t_n) q^n on the
contour q_j = rho * exp(i pi j / n) with rho = 10^(-gamma/n), the n-th
coefficient is recovered by the alternating trapezoid sum

    f(t_n) ~= [f~(rho) + 2 sum_{j=1}^{n-1} (-1)^j Re f~(q_j)
               + (-1)^n f~(-rho)] / (2 n rho^n),

whose aliasing error is of order 10^(-2 gamma) on the coefficient scale.
The Euler-accelerated variant replaces the full sum by the binomial
average of the partial sums b_{nE} .. b_{nE+mE}, requiring only
nE + mE + 1 contour evaluations regardless of n.  In double precision
the rho^-n amplification of rounding noise caps the achievable absolute
accuracy near 1e-12 for gamma = 6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ZInversionConfig",
    "ContourPoints",
    "contour_points",
    "invert_exact",
    "invert_euler",
    "invert",
    "use_euler",
]

DEFAULT_GAMMA = 6.0
DEFAULT_NE = 12
DEFAULT_ME = 20


@dataclass(frozen=True)
class ZInversionConfig:
    """Contour/accuracy settings for one target coefficient index n."""

    n: int
    gamma: float = DEFAULT_GAMMA
    n_e: int = DEFAULT_NE
    m_e: int = DEFAULT_ME
    accelerated: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"target index must be >= 1, got {self.n}")
        if not (0 < self.gamma <= 12):
            raise ValueError(f"gamma must lie in (0, 12], got {self.gamma}")
        if self.n_e < 1 or self.m_e < 1:
            raise ValueError("Euler parameters n_e and m_e must be >= 1")

    @property
    def rho(self) -> float:
        return 10.0 ** (-self.gamma / self.n)


@dataclass(frozen=True)
class ContourPoints:
    points: np.ndarray  # q_j = rho e^{i pi j / n}, j = 0 .. J


def use_euler(cfg: ZInversionConfig) -> bool:
    """Acceleration pays only when it needs fewer evaluations than the
    exact sum; with few monitoring dates fall back to the exact formula."""
    return cfg.accelerated and cfg.n >= 2 and cfg.n > cfg.n_e + cfg.m_e


def contour_points(cfg: ZInversionConfig, accelerated: bool | None = None) -> ContourPoints:
    if accelerated is None:
        accelerated = use_euler(cfg)
    J = cfg.n_e + cfg.m_e if accelerated else cfg.n
    j = np.arange(J + 1)
    return ContourPoints(cfg.rho * np.exp(1j * np.pi * j / cfg.n))


def invert_exact(values, cfg: ZInversionConfig) -> float:
    """Full alternating sum over j = 0 .. n (endpoints rho and -rho)."""
    v = np.asarray(values, dtype=complex)
    if len(v) != cfg.n + 1:
        raise ValueError(f"expected {cfg.n + 1} contour values, got {len(v)}")
    n = cfg.n
    re = v.real
    s = re[0] + (-1.0) ** n * re[n]
    if n > 1:
        signs = (-1.0) ** np.arange(1, n)
        s += 2.0 * np.sum(signs * re[1:n])
    return float(s / (2.0 * n * cfg.rho**n))


def _binomials(m: int) -> np.ndarray:
    """C(m, 0..m) by the multiplicative recurrence, in floating point."""
    c = np.empty(m + 1)
    c[0] = 1.0
    for j in range(1, m + 1):
        c[j] = c[j - 1] * (m - j + 1) / j
    return c


def invert_euler(values, cfg: ZInversionConfig) -> float:
    """Binomial average of the partial sums b_{nE} .. b_{nE+mE}."""
    if cfg.n < 2:
        raise ValueError("Euler acceleration requires n >= 2")
    v = np.asarray(values, dtype=complex)
    J = cfg.n_e + cfg.m_e
    if len(v) != J + 1:
        raise ValueError(f"expected {J + 1} contour values, got {len(v)}")
    re = v.real
    signs = (-1.0) ** np.arange(J + 1)
    terms = signs * re
    terms[0] = 0.5 * re[0]
    b = np.cumsum(terms)  # b_k = f~(rho)/2 + sum_{j<=k} (-1)^j Re f~(q_j)
    w = _binomials(cfg.m_e)
    avg = float(np.dot(w, b[cfg.n_e : cfg.n_e + cfg.m_e + 1]))
    return avg / (2.0**cfg.m_e * cfg.n * cfg.rho**cfg.n)


def invert(values, cfg: ZInversionConfig, accelerated: bool | None = None) -> float:
    if accelerated is None:
        accelerated = use_euler(cfg)
    return invert_euler(values, cfg) if accelerated else invert_exact(values, cfg)
