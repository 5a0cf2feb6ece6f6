"""Uniform convexity of Schatten norms and Hölder's inequality with remainder.

For ``1 < p <= 2``, unit ``A`` in ``C_p`` and unit ``B`` in ``C_{p'}``, the
trace pairing ``|Tr[AB]|`` falls short of one by at least

* ``(p-1)/4 * ||D_{p'}(B) - e^{i theta} A||_p^2``  (quadratic remainder), and
* ``||e^{i theta} B - D_p(A)||_{p'}^{p'} / (p' 2^{p'-1})``  (dual remainder),

where ``theta`` rotates ``Tr[AB]`` onto the nonnegative axis.
"""

import cmath
import enum
import math

import numpy as np

from .certificates import DEFAULT_TOL, certify, default_tolerance
from .fitting import loglog_fit
from .matcore import as_matrix, trace_inner
from .schatten import conjugate_exponent, duality_map, normalize, schatten_norm

UNIT_ATOL = 1e-9


def phase_align(A, B):
    """Angle ``theta`` in ``[0, 2 pi)`` with ``e^{i theta} Tr[AB] >= 0``.

    Returns 0 when ``Tr[AB]`` vanishes.
    """
    z = trace_inner(A, B)
    if z == 0:
        return 0.0
    theta = (-cmath.phase(z)) % (2 * math.pi)
    # -0.0 and values that round up to 2 pi both mean no rotation
    return 0.0 if theta >= 2 * math.pi else theta + 0.0


def _require_unit(X, p, label):
    n = schatten_norm(X, p)
    if abs(n - 1.0) > UNIT_ATOL:
        raise ValueError(f"{label} must have unit {p}-norm, got {n!r}")


def _check_holder_exponent(p):
    p = float(p)
    if not 1 < p <= 2:
        raise ValueError(f"Hölder remainder bounds need 1 < p <= 2, got {p}")
    return p


def quadratic_constant(p):
    """Constant of the quadratic remainder, ``(p-1)/4``."""
    return (p - 1.0) / 4.0


def dual_constant(p):
    """Constant of the dual remainder, ``1 / (p' 2^{p'-1})``."""
    q = conjugate_exponent(p)
    return 1.0 / (q * 2.0 ** (q - 1.0))


def uniform_convexity_gap(X, Y, p, tolerance=None):
    """Midpoint bound for unit ``X, Y`` in ``C_p``.

    For ``1 < p <= 2`` the bound is ``1 - (p-1)/2 ||(X-Y)/2||_p^2``; for
    ``p >= 2`` it is ``1 - ||(X-Y)/2||_p^p / p``. Both agree at ``p = 2``.
    """
    p = float(p)
    if not p > 1:
        raise ValueError(f"uniform convexity needs p > 1, got {p}")
    X, Y = as_matrix(X), as_matrix(Y)
    _require_unit(X, p, "X")
    _require_unit(Y, p, "Y")
    half_diff = schatten_norm((X - Y) / 2, p)
    lhs = schatten_norm((X + Y) / 2, p)
    if p <= 2:
        rhs = 1.0 - (p - 1.0) / 2.0 * half_diff**2
    else:
        rhs = 1.0 - half_diff**p / p
    tol = default_tolerance(X.shape[0]) if tolerance is None else tolerance
    return certify("uniform_convexity", lhs, rhs, tol, p=p, half_difference_norm=half_diff)


def holder_remainder_1(A, B, p, tolerance=None):
    """Quadratic remainder: ``|Tr[AB]| <= 1 - (p-1)/4 ||D_{p'}(B) - e^{i theta} A||_p^2``."""
    p = _check_holder_exponent(p)
    q = conjugate_exponent(p)
    A, B = as_matrix(A), as_matrix(B)
    _require_unit(A, p, "A")
    _require_unit(B, q, "B")
    theta = phase_align(A, B)
    lhs = abs(trace_inner(A, B))
    if q == math.inf:
        raise ValueError("p = 1 is excluded")
    diff = schatten_norm(duality_map(B, q).matrix - cmath.exp(1j * theta) * A, p)
    rhs = 1.0 - quadratic_constant(p) * diff**2
    tol = default_tolerance(A.shape[0]) if tolerance is None else tolerance
    return certify("holder_remainder_quadratic", lhs, rhs, tol, p=p, theta=theta,
                   difference_norm=diff)


def holder_remainder_2(A, B, p, tolerance=None):
    """Dual remainder: ``|Tr[AB]| <= 1 - ||e^{i theta} B - D_p(A)||_{p'}^{p'} / (p' 2^{p'-1})``."""
    p = _check_holder_exponent(p)
    q = conjugate_exponent(p)
    A, B = as_matrix(A), as_matrix(B)
    _require_unit(A, p, "A")
    _require_unit(B, q, "B")
    theta = phase_align(A, B)
    lhs = abs(trace_inner(A, B))
    diff = schatten_norm(cmath.exp(1j * theta) * B - duality_map(A, p).matrix, q)
    rhs = 1.0 - dual_constant(p) * diff**q
    tol = default_tolerance(A.shape[0]) if tolerance is None else tolerance
    return certify("holder_remainder_dual", lhs, rhs, tol, p=p, theta=theta,
                   difference_norm=diff)


def holder_chain_gap(A, B, p):
    """``||D_{p'}(B) + e^{i theta} A||_p - (1 + |Tr[AB]|)``, nonnegative by
    Hölder's inequality for unit inputs."""
    q = conjugate_exponent(p)
    theta = phase_align(A, B)
    total = schatten_norm(duality_map(B, q).matrix + cmath.exp(1j * theta) * A, p)
    return total - (1.0 + abs(trace_inner(A, B)))


class Family(enum.Enum):
    DIAGONAL_PERTURBATION = "diagonal"


def _quadratic_family_point(p, s):
    q = conjugate_exponent(p)
    B = normalize(np.eye(2), q)
    target = duality_map(B, q).matrix
    A = normalize(target + s * np.diag([1.0, -1.0]), p)
    return schatten_norm(target - A, p), 1.0 - abs(trace_inner(A, B))


def _dual_family_point(p, s):
    q = conjugate_exponent(p)
    A = np.diag([1.0, 0.0]).astype(complex)
    target = duality_map(A, p).matrix
    B = normalize(np.diag([1.0, s]), q)
    return schatten_norm(B - target, q), 1.0 - abs(trace_inner(A, B))


def _default_scales(p, remainder):
    if remainder != "dual":
        return np.logspace(-4, -1, 13)
    # deficits scale like s^{p'}; keep them above ~1e-9 so 1 - |Tr| resolves
    lo = max(-4.0, -9.0 / conjugate_exponent(p))
    hi = min(max(-1.0, lo + 1.5), math.log10(0.5))
    return np.logspace(lo, hi, 13)


def sharpness_scan(p, family=Family.DIAGONAL_PERTURBATION, scale_grid=None,
                   remainder="quadratic"):
    """Fit the exponent of the Hölder deficit against the remainder distance.

    ``remainder="quadratic"`` perturbs ``A`` away from ``D_{p'}(B)`` along a
    direction interior to the support (deficit ~ distance^2);
    ``remainder="dual"`` perturbs ``B`` away from ``D_p(A)`` into an unoccupied
    coordinate (deficit ~ distance^{p'}). Both families are diagonal.

    Returns
    -------
    SlopeFit
        ``exponent`` estimates the power law ``deficit ~ distance^exponent``.
    """
    family = Family(family)
    p = _check_holder_exponent(p)
    if scale_grid is None:
        scale_grid = _default_scales(p, remainder)
    scale_grid = np.asarray(scale_grid, dtype=float)
    if remainder == "quadratic":
        point = _quadratic_family_point
    elif remainder == "dual":
        point = _dual_family_point
    else:
        raise ValueError(f"unknown remainder {remainder!r}")
    if np.ptp(scale_grid) == 0:
        raise ValueError("degenerate fit: all scales are equal")
    pts = np.array([point(p, s) for s in scale_grid])
    return loglog_fit(pts[:, 0], pts[:, 1])


__all__ = [
    "DEFAULT_TOL",
    "Family",
    "dual_constant",
    "holder_chain_gap",
    "holder_remainder_1",
    "holder_remainder_2",
    "phase_align",
    "quadratic_constant",
    "sharpness_scan",
    "uniform_convexity_gap",
]
