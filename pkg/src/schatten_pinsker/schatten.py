"""Schatten p-norms, the norm gradient (duality map) and the Mazur map."""

import math
from typing import NamedTuple

import numpy as np

from .matcore import (
    RANK_RTOL,
    abs_mat,
    as_matrix,
    mat_power,
    singular_values,
    support_rank,
    svd,
    trace_inner,
)

INF = math.inf


def conjugate_exponent(p):
    """Hölder conjugate ``p'`` with ``1/p + 1/p' = 1`` (``1 <-> inf``)."""
    p = float(p)
    if p < 1:
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    if p == 1:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


class SchattenExponent(NamedTuple):
    p: float
    conjugate: float

    @classmethod
    def of(cls, p):
        return cls(float(p), conjugate_exponent(p))


class NormGradient(NamedTuple):
    """Value of the duality map at a matrix ``A``."""

    matrix: np.ndarray
    p: SchattenExponent
    source_norm: float


def norm_from_singular_values(s, p):
    s = np.asarray(s, dtype=float)
    if s.size == 0:
        return 0.0
    if p == INF:
        return float(s.max())
    top = s.max()
    if top == 0:
        return 0.0
    # scale out the largest value to avoid overflow / underflow in s**p
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def schatten_norm(A, p):
    """``||A||_p = (sum_j s_j^p)^{1/p}``; ``p = inf`` gives the operator norm."""
    p = float(p)
    if p < 1:
        raise ValueError(f"Schatten exponent must lie in [1, inf], got {p}")
    return norm_from_singular_values(singular_values(A), p)


def _check_open_exponent(p):
    p = float(p)
    if not 1 < p < INF:
        raise ValueError(f"duality map requires 1 < p < inf, got {p}")
    return p


def duality_map(A, p):
    """Norm gradient ``D_p(A) = ||A||_p^{1-p} |A|^{p-1} U*``.

    With the SVD ``A = W S V*`` this is ``V S^{p-1} W* / ||A||_p^{p-1}``,
    restricted to the support of ``A``. It is the unique element of unit
    ``p'``-norm with ``Tr[D_p(A) A] = ||A||_p``.

    Raises
    ------
    ValueError
        If ``p`` is not in the open interval ``(1, inf)`` or ``A`` is zero.
    """
    p = _check_open_exponent(p)
    dec = svd(A)
    s = dec.values
    r = support_rank(s)
    if r == 0:
        raise ValueError("duality map is undefined at the zero matrix")
    norm = norm_from_singular_values(s, p)
    weights = (s[:r] / norm) ** (p - 1.0)
    G = (dec.right[:r].conj().T * weights) @ dec.left[:, :r].conj().T
    return NormGradient(G, SchattenExponent.of(p), norm)


def mazur_map(A, p, q):
    """``M_{p,q}(A) = A |A|^{(p-q)/q}`` with support-restricted powers."""
    p, q = float(p), float(q)
    if q <= 0 or p <= 0:
        raise ValueError("Mazur map exponents must be positive")
    A = as_matrix(A)
    return A @ mat_power(abs_mat(A), (p - q) / q)


class GradientCheck(NamedTuple):
    fd_slope: float
    analytic_slope: float
    deviation: float
    step: float


def gradient_fd_check(A, B, p, t=1e-5, rtol=1e-6):
    """Compare a central difference of ``t -> ||A + tB||_p`` at zero with the
    directional derivative ``Re Tr[D_p(A) B]``.

    If the central difference at ``t`` misses ``rtol * (1 + |analytic|)`` a
    Richardson combination with ``t/2`` is reported instead.
    """
    if t == 0:
        raise ValueError("finite-difference step must be nonzero")
    A, B = as_matrix(A), as_matrix(B)
    analytic = trace_inner(duality_map(A, p).matrix, B).real

    def central(h):
        return (schatten_norm(A + h * B, p) - schatten_norm(A - h * B, p)) / (2 * h)

    fd = central(t)
    if abs(fd - analytic) > rtol * (1 + abs(analytic)):
        fd = (4 * central(t / 2) - fd) / 3
    return GradientCheck(fd, analytic, fd - analytic, t)


def is_unit(A, p, atol=1e-9):
    return abs(schatten_norm(A, p) - 1.0) <= atol


def normalize(A, p):
    A = as_matrix(A)
    n = schatten_norm(A, p)
    if n <= RANK_RTOL:
        raise ValueError("cannot normalize the zero matrix")
    return A / n
