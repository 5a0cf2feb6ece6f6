"""Rényi and von Neumann relative entropies and Pinsker-type certificates.

All functions take density matrices as array-likes. Powers are support
restricted (``0^s = 0``) and ``0 log 0 = 0``.
"""

import math
from typing import NamedTuple

import numpy as np

from .certificates import certify, default_tolerance
from .convexity import dual_constant, quadratic_constant
from .matcore import (
    RANK_RTOL,
    as_density_matrix,
    as_psd,
    eig_hermitian,
    mat_power,
)
from .schatten import conjugate_exponent, schatten_norm

#: Traces below this are treated as exact zeros when taking logarithms.
UNDERFLOW_FLOOR = 1e-300
SUPPORT_ATOL = 1e-10
#: Eigenvalues of ``rho - sigma`` above this span the pinching projector.
PINCH_ATOL = 1e-12


def _spectrum(rho):
    w, V = eig_hermitian(rho)
    w = np.clip(w, 0.0, None)
    w[w <= RANK_RTOL * w.max()] = 0.0
    return w, V


def _support_power(w, s):
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = w[pos] ** s
    return out


def _overlap_from(spec_rho, spec_sigma, alpha):
    (r, U), (s, V) = spec_rho, spec_sigma
    M = np.abs(U.conj().T @ V) ** 2
    return float(_support_power(r, alpha) @ M @ _support_power(s, 1.0 - alpha))


def _overlap(rho, sigma, alpha):
    """``Tr[rho^alpha sigma^{1-alpha}]`` in the two eigenbases."""
    return _overlap_from(_spectrum(rho), _spectrum(sigma), alpha)


def _divergence_from(spec_rho, spec_sigma, alpha):
    ov = _overlap_from(spec_rho, spec_sigma, alpha)
    if ov <= UNDERFLOW_FLOOR:
        return math.inf
    return math.log(ov) / (alpha - 1.0)


def _power_difference_from(spec_rho, spec_sigma, alpha):
    (r, U), (s, V) = spec_rho, spec_sigma
    diff = (U * _support_power(r, alpha)) @ U.conj().T - (V * _support_power(s, alpha)) @ V.conj().T
    return schatten_norm(diff, 1.0 / alpha)


def _check_alpha(alpha, lo=0.0, closed_lo=False):
    alpha = float(alpha)
    ok = (lo <= alpha if closed_lo else lo < alpha) and alpha < 1
    if not ok:
        bracket = "[" if closed_lo else "("
        raise ValueError(f"alpha must lie in {bracket}{lo}, 1), got {alpha}")
    return alpha


def _check_p(p):
    p = float(p)
    if not 1 < p <= 2:
        raise ValueError(f"p must lie in (1, 2], got {p}")
    return p


def trace_distance(rho, sigma):
    """``||rho - sigma||_1``."""
    return schatten_norm(np.asarray(rho) - np.asarray(sigma), 1)


def renyi_relative_entropy(rho, sigma, alpha):
    """``D_alpha(rho || sigma) = log Tr[rho^alpha sigma^{1-alpha}] / (alpha - 1)``
    for ``alpha`` in ``(0, 1)``; ``inf`` for orthogonal supports."""
    alpha = _check_alpha(alpha)
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    return _divergence_from(_spectrum(rho), _spectrum(sigma), alpha)


def von_neumann_relative_entropy(rho, sigma):
    """``D(rho || sigma) = Tr[rho (log rho - log sigma)]``.

    Returns ``inf`` when the support of ``rho`` is not contained in that of
    ``sigma``, detected as ``Tr[rho (I - P_sigma)] > 1e-10``.
    """
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    r, U = _spectrum(rho)
    s, V = _spectrum(sigma)
    M = np.abs(U.conj().T @ V) ** 2
    # weight of rho inside the support of sigma
    inside = r @ M @ (s > 0)
    if r.sum() - inside > SUPPORT_ATOL:
        return math.inf
    log_r = np.where(r > 0, np.log(np.where(r > 0, r, 1.0)), 0.0)
    log_s = np.where(s > 0, np.log(np.where(s > 0, s, 1.0)), 0.0)
    return float(r @ log_r - r @ M @ log_s)


def trace_overlap(rho, sigma, p):
    """``Tr[sigma^{1-1/p} rho^{1/p}]`` for ``p`` in ``(1, 2]``."""
    p = _check_p(p)
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    return _overlap(rho, sigma, 1.0 / p)


def overlap_certificates(rho, sigma, p, tolerance=None):
    """Upper bounds on ``Tr[sigma^{1-1/p} rho^{1/p}]``.

    Returns the quadratic bound ``1 - (p-1)/4 ||rho^{1/p} - sigma^{1/p}||_p^2``
    and the dual bound
    ``1 - ||rho^{1/p'} - sigma^{1/p'}||_{p'}^{p'} / (p' 2^{p'-1})``.
    """
    p = _check_p(p)
    q = conjugate_exponent(p)
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    spec_rho, spec_sigma = _spectrum(rho), _spectrum(sigma)
    lhs = _overlap_from(spec_rho, spec_sigma, 1.0 / p)
    d_p = _power_difference_from(spec_rho, spec_sigma, 1.0 / p)
    d_q = _power_difference_from(spec_rho, spec_sigma, 1.0 / q)
    tol = default_tolerance(rho.shape[0]) if tolerance is None else tolerance
    meta = dict(p=p, difference_norm_p=d_p, difference_norm_conjugate=d_q)
    return (
        certify("overlap_quadratic", lhs, 1.0 - quadratic_constant(p) * d_p**2, tol, **meta),
        certify("overlap_dual", lhs, 1.0 - dual_constant(p) * d_q**q, tol, **meta),
    )


def power_difference_norm(rho, sigma, alpha):
    """``||rho^alpha - sigma^alpha||_{1/alpha}``."""
    return schatten_norm(mat_power(rho, alpha) - mat_power(sigma, alpha), 1.0 / alpha)


def renyi_pinsker_certificate(rho, sigma, alpha, tolerance=None):
    """``D_alpha >= ||rho^alpha - sigma^alpha||_{1/alpha}^2 / (4 alpha)`` for
    ``alpha`` in ``[1/2, 1)``."""
    alpha = _check_alpha(alpha, 0.5, closed_lo=True)
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    spec_rho, spec_sigma = _spectrum(rho), _spectrum(sigma)
    d = _power_difference_from(spec_rho, spec_sigma, alpha)
    tol = default_tolerance(rho.shape[0]) if tolerance is None else tolerance
    return certify("renyi_pinsker", d**2 / (4 * alpha),
                   _divergence_from(spec_rho, spec_sigma, alpha), tol,
                   alpha=alpha, power_difference_norm=d)


def classical_renyi_bound_certificate(rho, sigma, alpha, tolerance=None):
    """``D_alpha >= (alpha/2) ||rho - sigma||_1^2`` for ``alpha`` in ``(0, 1)``."""
    alpha = _check_alpha(alpha)
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    t = trace_distance(rho, sigma)
    tol = default_tolerance(rho.shape[0]) if tolerance is None else tolerance
    return certify("classical_renyi_pinsker", alpha / 2 * t**2,
                   renyi_relative_entropy(rho, sigma, alpha), tol,
                   alpha=alpha, trace_distance=t)


def ricard_bound_certificate(A, B, alpha, tolerance=None, homogeneous=True):
    """Lower Lipschitz bound for the power map ``X -> X^alpha`` of PSD matrices:

        (alpha/3) ||A - B||_1 <= ||A^alpha - B^alpha||_{1/alpha} * m,

    with ``m = max(||A^alpha||_{1/alpha}, ||B^alpha||_{1/alpha})^{(1-alpha)/alpha}``.
    For density matrices ``m = 1``. ``homogeneous=False`` uses the max factor
    without the exponent; that form is not invariant under scaling ``A, B``
    and fails for general PSD pairs away from unit trace.
    """
    alpha = _check_alpha(alpha)
    A, B = as_psd(A), as_psd(B)
    lhs = alpha / 3 * schatten_norm(A - B, 1)
    Aa, Ba = mat_power(A, alpha), mat_power(B, alpha)
    d = schatten_norm(Aa - Ba, 1.0 / alpha)
    m = max(schatten_norm(Aa, 1.0 / alpha), schatten_norm(Ba, 1.0 / alpha))
    if homogeneous:
        m = m ** ((1.0 - alpha) / alpha)
    tol = default_tolerance(A.shape[0]) if tolerance is None else tolerance
    return certify("ricard", lhs, d * m, tol, alpha=alpha, power_difference_norm=d,
                   max_factor=m)


def weakened_pinsker_certificate(rho, sigma, alpha, tolerance=None):
    """``D_alpha >= (alpha/36) ||rho - sigma||_1^2`` for ``alpha`` in ``[1/2, 1)``.

    Metadata ``chain_gap`` is ``||rho^alpha - sigma^alpha||^2/(4 alpha)`` minus
    this bound; it is nonnegative whenever the power-map Lipschitz bound holds.
    """
    alpha = _check_alpha(alpha, 0.5, closed_lo=True)
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    t = trace_distance(rho, sigma)
    spec_rho, spec_sigma = _spectrum(rho), _spectrum(sigma)
    d = _power_difference_from(spec_rho, spec_sigma, alpha)
    bound = alpha / 36 * t**2
    tol = default_tolerance(rho.shape[0]) if tolerance is None else tolerance
    return certify("weakened_renyi_pinsker", bound,
                   _divergence_from(spec_rho, spec_sigma, alpha), tol,
                   alpha=alpha, trace_distance=t,
                   chain_gap=d**2 / (4 * alpha) - bound,
                   constant_ratio=(alpha / 36) / (alpha / 2))


def pinsker_certificate(rho, sigma, tolerance=None):
    """``D(rho || sigma) >= ||rho - sigma||_1^2 / 2``."""
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    t = trace_distance(rho, sigma)
    tol = default_tolerance(rho.shape[0]) if tolerance is None else tolerance
    return certify("pinsker", t**2 / 2, von_neumann_relative_entropy(rho, sigma), tol,
                   trace_distance=t)


class PinchingResult(NamedTuple):
    projector: np.ndarray
    rho_hat: np.ndarray
    sigma_hat: np.ndarray
    p_weight: float
    q_weight: float


def pinch_to_commuting(rho, sigma):
    """Average ``rho`` and ``sigma`` onto the algebra spanned by ``P`` and
    ``I - P``, with ``P`` the projector onto the positive part of
    ``rho - sigma``.

    The pinched pair commutes, has the same trace distance and no larger
    Rényi divergence. If ``rho - sigma`` has no positive eigenvalue (so
    ``rho`` and ``sigma`` agree to rounding) both are replaced by ``I/n``.
    """
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    n = rho.shape[0]
    w, V = eig_hermitian(rho - sigma)
    Vp = V[:, w > PINCH_ATOL]
    P = Vp @ Vp.conj().T
    k = Vp.shape[1]
    identity = np.eye(n)
    if k == 0 or k == n:
        # one block is empty; keep the other (which is then all of C^n)
        P = np.zeros((n, n), dtype=complex) if k == 0 else identity.astype(complex)
        pw = float(np.trace(P @ rho).real)
        qw = float(np.trace(P @ sigma).real)
        flat = identity / n
        return PinchingResult(P, flat.astype(complex), flat.astype(complex), pw, qw)
    pw = float(np.trace(P @ rho).real)
    qw = float(np.trace(P @ sigma).real)
    Q = identity - P
    rho_hat = pw / k * P + (1.0 - pw) / (n - k) * Q
    sigma_hat = qw / k * P + (1.0 - qw) / (n - k) * Q
    return PinchingResult(P, rho_hat, sigma_hat, pw, qw)
