"""Log-log regression and Richardson extrapolation helpers."""

from typing import NamedTuple

import numpy as np


class SlopeFit(NamedTuple):
    """Least-squares line ``ys ~ exponent * xs + intercept`` on log data."""

    xs: np.ndarray
    ys: np.ndarray
    exponent: float
    intercept: float
    max_residual: float

    def residuals(self):
        return self.ys - (self.exponent * self.xs + self.intercept)


def loglog_fit(x, y):
    """Fit ``log y = exponent * log x + intercept`` by ordinary least squares.

    Raises
    ------
    ValueError
        If fewer than two points are given, any value is non-positive, or the
        regressor has zero variance.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("need at least two (x, y) pairs of equal length")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs strictly positive data")
    lx, ly = np.log(x), np.log(y)
    if np.ptp(lx) <= 1e-12 * max(1.0, np.max(np.abs(lx))):
        raise ValueError("degenerate fit: regressor has zero variance")
    design = np.column_stack([lx, np.ones_like(lx)])
    (slope, intercept), *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - (slope * lx + intercept)
    return SlopeFit(lx, ly, float(slope), float(intercept), float(np.max(np.abs(resid))))


def richardson_linear(h, values):
    """Extrapolate ``values(h)`` to ``h = 0`` assuming ``v(h) = v0 + c h + o(h)``.

    Uses the two points with the smallest ``h``; for a halving grid this is
    ``2 v(h/2) - v(h)``.
    """
    h, values = np.asarray(h, dtype=float), np.asarray(values, dtype=float)
    if h.size < 2:
        raise ValueError("Richardson extrapolation needs at least two points")
    order = np.argsort(h)
    (h1, h2), (v1, v2) = h[order[:2]], values[order[:2]]
    if h1 == h2:
        raise ValueError("Richardson extrapolation needs distinct step sizes")
    return float(v1 - h1 * (v2 - v1) / (h2 - h1))
