"""Weighted-linear-regression fit of the boundary constant and
construction of the depth-adaptive filter window from it.

The boundary satisfies gamma + N/(k*n) = 0; weighting each boundary
point by its occupancy count, the quadratic objective

    sum_i (gamma + N/(k_i*n_i))^2 * omega_i

has the unique closed-form minimizer

    gamma_hat = - sum_i (N/(k_i*n_i)) * omega_i / sum_i omega_i.
"""

from dataclasses import dataclass

import numpy as np

from .convert import TAPER_ATTENUATED, FilterWindow


@dataclass(frozen=True)
class FitResult:
    gamma: float
    points_used: tuple
    residual: float


def fit_gamma(points, n_freq):
    """Closed-form weighted fit of the boundary constant.

    Parameters
    ----------
    points : sequence of BoundaryPoint
        Boundary samples (n_i, k_i) with occupancy weights omega_i.
    n_freq : int
        Sweep length N.

    Returns
    -------
    FitResult with the fitted gamma (< 0), the points used, and the
    value of the weighted quadratic objective at the fit.
    """
    pts = tuple(points)
    if not pts:
        raise ValueError("fit_gamma needs at least one boundary point")
    weights = np.array([p.omega_i for p in pts], dtype=np.float64)
    if weights.sum() == 0:
        raise ValueError("fit_gamma: all boundary-point weights are zero")
    ratios = np.array(
        [n_freq / (p.k_i * p.n_i) for p in pts], dtype=np.float64
    )
    gamma = -float((ratios * weights).sum() / weights.sum())
    residual = float((((gamma + ratios) ** 2) * weights).sum())
    return FitResult(gamma=gamma, points_used=pts, residual=residual)


def build_datff_window(fit, w_threshold=0.5, n_freq=None, n_time=None,
                       taper=TAPER_ATTENUATED):
    """Filter window from a fitted boundary constant.

    K_n = clamp(floor(-N/(gamma*n)), 1, N) traces the boundary
    hyperbola k*n = -N/gamma; the in-window taper uses
    alpha = gamma*ln(w_threshold) (> 0), so the taper magnitude at the
    cutoff equals w_threshold.
    """
    gamma = fit.gamma if isinstance(fit, FitResult) else float(fit)
    if gamma >= 0:
        raise ValueError(
            f"fitted gamma must be negative, got {gamma}; refusing to build "
            "a window that passes nothing"
        )
    if not (0 < w_threshold < 1):
        raise ValueError(f"w_threshold must be in (0, 1), got {w_threshold}")
    if n_freq is None or n_time is None:
        raise ValueError("build_datff_window needs n_freq and n_time")
    n = np.arange(1, n_time + 1, dtype=np.float64)
    cutoff = np.clip(np.floor(-n_freq / (gamma * n)), 1, n_freq).astype(np.int64)
    return FilterWindow(
        n_freq=n_freq,
        n_time=n_time,
        gamma=gamma,
        alpha=gamma * np.log(w_threshold),
        w_threshold=w_threshold,
        cutoff=cutoff,
        taper=taper,
    )
