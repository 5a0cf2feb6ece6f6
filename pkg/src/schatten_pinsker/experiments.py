"""Worked examples, limits and ensemble campaigns for the Pinsker-type bounds.

Covers the two-level example pairs and their trace-distance ratios, the
``alpha -> 1`` limit of the Rényi divergence, power curves ``p -> rho^{1/p}``
with the overlap remainder, extraction of the sharp Pinsker constant by
extrapolation in ``p -> 1``, and certificate campaigns over random ensembles.
"""

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import convexity, entropy
from .certificates import Status, certify, default_tolerance
from .fitting import loglog_fit, richardson_linear
from .matcore import (
    EnsembleConfig,
    EnsembleKind,
    as_density_matrix,
    mat_power,
    random_sample,
    trace_inner,
)
from .schatten import conjugate_exponent, normalize, schatten_norm

# ---------------------------------------------------------------------------
# two-level examples


def balanced_qubit_pair(epsilon):
    """``rho = diag(1/2, 1/2)`` and ``sigma = diag(1/2 + eps, 1/2 - eps)``."""
    epsilon = float(epsilon)
    if not 0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    rho = np.diag([0.5, 0.5]).astype(complex)
    sigma = np.diag([0.5 + epsilon, 0.5 - epsilon]).astype(complex)
    return rho, sigma


def boundary_qubit_pair(epsilon):
    """``rho = diag(1, 0)`` and ``sigma = diag(1 - eps, eps)``.

    Unlike the balanced pair, the perturbation here moves weight onto an
    empty eigenvector, where ``x -> x^alpha`` is not Lipschitz; the ratio of
    ``||rho^a - sigma^a||_{1/a}`` to ``||rho - sigma||_1`` then grows like
    ``eps^{a-1} / 2``.
    """
    epsilon = float(epsilon)
    if not 0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = np.diag([1.0 - epsilon, epsilon]).astype(complex)
    return rho, sigma


class ExampleRatio(NamedTuple):
    measured: float
    predicted_leading: float


def predicted_ratio(epsilon, alpha):
    """Claimed leading term ``alpha^alpha / (2 eps^{1-alpha})``."""
    return alpha**alpha / (2 * epsilon ** (1 - alpha))


def example_ratio(epsilon, alpha, states=balanced_qubit_pair):
    """Ratio ``||rho^a - sigma^a||_{1/a} / ||rho - sigma||_1`` for an example
    pair, together with ``alpha^alpha / (2 eps^{1-alpha})``."""
    alpha = float(alpha)
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    rho, sigma = states(epsilon)
    num = entropy.power_difference_norm(rho, sigma, alpha)
    return ExampleRatio(num / entropy.trace_distance(rho, sigma),
                        predicted_ratio(epsilon, alpha))


def epsilon_sweep_slope(alpha, epsilon_grid=None, states=balanced_qubit_pair):
    """Log-log slope of the example ratio against ``epsilon``."""
    if epsilon_grid is None:
        epsilon_grid = np.logspace(-5, -2, 7)
    eps = np.asarray(epsilon_grid, dtype=float)
    if eps.ndim != 1 or eps.size < 6 or np.unique(eps).size != eps.size:
        raise ValueError("epsilon grid needs at least 6 distinct values")
    ratios = [example_ratio(e, alpha, states).measured for e in eps]
    return loglog_fit(eps, ratios)


# ---------------------------------------------------------------------------
# alpha -> 1


class AlphaLimitReport(NamedTuple):
    alphas: np.ndarray
    values: np.ndarray
    deviations: np.ndarray
    limit: float
    final_deviation: float
    monotone: bool


def alpha_limit_check(rho, sigma, k_max=6):
    """Tabulate ``D_alpha`` at ``alpha = 1 - 10^{-k}``, ``k = 1..k_max``, against
    the von Neumann relative entropy.

    An infinite relative entropy is reported (``limit = inf``) rather than
    raised.
    """
    if int(k_max) < 3:
        raise ValueError("k_max must be at least 3")
    ks = np.arange(1, int(k_max) + 1)
    alphas = 1.0 - 10.0 ** (-ks.astype(float))
    limit = entropy.von_neumann_relative_entropy(rho, sigma)
    values = np.array([entropy.renyi_relative_entropy(rho, sigma, a) for a in alphas])
    if math.isinf(limit):
        devs = np.full(alphas.shape, math.inf)
        return AlphaLimitReport(alphas, values, devs, limit, math.inf, False)
    devs = np.abs(values - limit)
    return AlphaLimitReport(alphas, values, devs, limit, float(devs[-1]),
                            bool(np.all(np.diff(devs) <= 0)))


# ---------------------------------------------------------------------------
# curves p -> A(p)


class CurveRule(enum.Enum):
    POWER = "power"


@dataclass(frozen=True, eq=False)
class MatrixCurve:
    """Curve ``p -> rho^{1/p}``; unit ``p``-norm for every ``p``."""

    generator: np.ndarray
    rule: CurveRule = CurveRule.POWER

    def __post_init__(self):
        object.__setattr__(self, "generator", as_density_matrix(self.generator))

    def __call__(self, p):
        return mat_power(self.generator, 1.0 / float(p))


def curve_overlap_certificate(curve_a, curve_b, p, K, tolerance=None):
    """``Tr[A(p) B(p)^{p-1}] <= 1 - K (p-1) ||A(p) - B(p)||_p^2``.

    The ``o(p-1)`` allowance is not included; with ``K = 1/4`` the bound holds
    exactly for every ``p`` in ``(1, 2]``.
    """
    p = float(p)
    if not 1 < p <= 2:
        raise ValueError(f"p must lie in (1, 2], got {p}")
    A, B = curve_a(p), curve_b(p)
    lhs = trace_inner(A, mat_power(B, p - 1.0)).real
    d = schatten_norm(A - B, p)
    tol = default_tolerance(A.shape[0]) if tolerance is None else tolerance
    return certify("curve_overlap", lhs, 1.0 - K * (p - 1.0) * d**2, tol,
                   p=p, K=K, difference_norm=d)


class PinskerConstant(NamedTuple):
    p_grid: np.ndarray
    K_estimates: np.ndarray
    extrapolated_K: float
    limit_ratio: float


def default_p_grid(levels=12):
    return 1.0 + 2.0 ** -np.arange(1, levels + 1, dtype=float)


def pinsker_constant_extraction(rho, sigma, p_grid=None):
    """Empirical constant in the overlap remainder as ``p -> 1``.

    At each ``p`` the constant is

        K(p) = (1 - Tr[sigma^{1-1/p} rho^{1/p}]) / ((p-1) ||rho^{1/p} - sigma^{1/p}||_p^2),

    and ``extrapolated_K`` is the linear Richardson limit of ``K(p)`` at
    ``p = 1``. ``limit_ratio`` is ``D(rho||sigma) / ||rho - sigma||_1^2``, the
    exact value of that limit.
    """
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    tdist = entropy.trace_distance(rho, sigma)
    if tdist <= 1e-12:
        raise ValueError("rho and sigma coincide; the constant is undefined")
    ps = default_p_grid() if p_grid is None else np.asarray(p_grid, dtype=float)
    if np.any(ps <= 1) or np.any(ps > 2):
        raise ValueError("p grid must lie in (1, 2]")
    ks = []
    for p in ps:
        overlap = entropy.trace_overlap(rho, sigma, p)
        d = schatten_norm(mat_power(rho, 1 / p) - mat_power(sigma, 1 / p), p)
        ks.append((1.0 - overlap) / ((p - 1.0) * d**2))
    ks = np.array(ks)
    K = richardson_linear(ps - 1.0, ks)
    ratio = entropy.von_neumann_relative_entropy(rho, sigma) / tdist**2
    return PinskerConstant(ps, ks, K, ratio)


def constant_iteration(K0, steps):
    """Iterates of ``K -> (K + 1/2) / 2``, starting at ``K0`` (length ``steps + 1``)."""
    if int(steps) < 0:
        raise ValueError("steps must be nonnegative")
    out = [float(K0)]
    for _ in range(int(steps)):
        out.append(0.25 + out[-1] / 2)
    return np.array(out)


# ---------------------------------------------------------------------------
# ensemble campaigns

MATRIX_INEQUALITIES = (
    "uniform_convexity",
    "holder_remainder_quadratic",
    "holder_remainder_dual",
)
P_INEQUALITIES = ("overlap_quadratic", "overlap_dual")
ALPHA_INEQUALITIES = (
    "renyi_pinsker",
    "classical_renyi_pinsker",
    "ricard",
    "weakened_renyi_pinsker",
    "pinching_monotonicity",
)
ALL_INEQUALITIES = MATRIX_INEQUALITIES + P_INEQUALITIES + ALPHA_INEQUALITIES + ("pinsker",)

DEFAULT_PS = (1.1, 1.25, 1.5, 1.75, 2.0)
DEFAULT_ALPHAS = (0.5, 0.6, 0.7, 0.8, 0.9, 0.99)

#: Interior edges of the gap histogram; bins are open-ended at both sides.
GAP_BIN_EDGES = (-1e-8, -1e-9, 0.0, 1e-6, 1e-3, 1e-1)

_DENSITY_KINDS = {k for k in EnsembleKind if k is not EnsembleKind.GINIBRE_GENERAL}


def pinching_certificate(rho, sigma, alpha, tolerance=None):
    """``D_alpha(rho_hat || sigma_hat) <= D_alpha(rho || sigma)`` for the
    pinched pair; metadata records the trace-distance change."""
    res = entropy.pinch_to_commuting(rho, sigma)
    before = entropy.trace_distance(rho, sigma)
    after = entropy.trace_distance(res.rho_hat, res.sigma_hat)
    tol = default_tolerance(np.shape(rho)[0]) if tolerance is None else tolerance
    return certify("pinching_monotonicity",
                   entropy.renyi_relative_entropy(res.rho_hat, res.sigma_hat, alpha),
                   entropy.renyi_relative_entropy(rho, sigma, alpha), tol,
                   alpha=alpha, trace_distance_change=after - before)


def _as_density(X):
    W = X @ X.conj().T
    W = 0.5 * (W + W.conj().T)
    return W / np.trace(W).real


def _trial_certificates(config, names, ps, alphas, tolerance, index):
    X, Y = random_sample(config, index)
    if config.kind in _DENSITY_KINDS:
        rho, sigma = X, Y
    else:
        rho, sigma = _as_density(X), _as_density(Y)
    base = {"trial": index, "dim": config.dim, "ensemble": config.kind.value}
    out = []
    for name in names:
        if name in MATRIX_INEQUALITIES:
            for p in ps:
                if name == "uniform_convexity":
                    cert = convexity.uniform_convexity_gap(
                        normalize(X, p), normalize(Y, p), p, tolerance)
                else:
                    A, B = normalize(X, p), normalize(Y, conjugate_exponent(p))
                    fn = (convexity.holder_remainder_1 if name.endswith("quadratic")
                          else convexity.holder_remainder_2)
                    cert = fn(A, B, p, tolerance)
                out.append(cert)
        elif name in P_INEQUALITIES:
            for p in ps:
                quad, dual = entropy.overlap_certificates(rho, sigma, p, tolerance)
                out.append(quad if name == "overlap_quadratic" else dual)
        elif name in ALPHA_INEQUALITIES:
            for a in alphas:
                if name in ("renyi_pinsker", "weakened_renyi_pinsker") and a < 0.5:
                    continue
                fn = {
                    "renyi_pinsker": entropy.renyi_pinsker_certificate,
                    "classical_renyi_pinsker": entropy.classical_renyi_bound_certificate,
                    "ricard": entropy.ricard_bound_certificate,
                    "weakened_renyi_pinsker": entropy.weakened_pinsker_certificate,
                    "pinching_monotonicity": pinching_certificate,
                }[name]
                out.append(fn(rho, sigma, a, tolerance))
        else:
            out.append(entropy.pinsker_certificate(rho, sigma, tolerance))
    return [type(c)(c.name, c.lhs, c.rhs, c.tolerance, {**base, **c.metadata})
            for c in out]


class SuiteReport(NamedTuple):
    certificates: list
    summary: dict

    @property
    def violations(self):
        return sum(s["violations"] for s in self.summary.values())

    @property
    def min_gap(self):
        gaps = [s["min_gap"] for s in self.summary.values()]
        return min(gaps) if gaps else math.inf


def _summarize(certs):
    gaps = np.array([c.gap for c in certs])
    statuses = [c.status for c in certs]
    hist = np.bincount(np.searchsorted(GAP_BIN_EDGES, gaps, side="right"),
                       minlength=len(GAP_BIN_EDGES) + 1)
    return {
        "count": len(certs),
        "min_gap": float(gaps.min()),
        "violations": statuses.count(Status.VIOLATED),
        "within_tolerance": statuses.count(Status.VIOLATED_WITHIN_TOLERANCE),
        "gap_histogram": [int(h) for h in hist],
    }


def ensemble_suite(config, inequality_set, ps=DEFAULT_PS, alphas=DEFAULT_ALPHAS,
                   tolerance=None, workers=1):
    """Evaluate named certificates on every trial of an ensemble.

    Matrix inequalities (uniform convexity, Hölder remainders) use the sampled
    pair after normalisation; entropy inequalities use the pair itself for
    density ensembles and ``X X* / Tr`` for the Ginibre ensemble. Results are
    ordered by ``(name, trial)`` and do not depend on ``workers``.

    Raises
    ------
    ValueError
        On an unknown inequality name.
    """
    names = list(dict.fromkeys(inequality_set))
    unknown = [n for n in names if n not in ALL_INEQUALITIES]
    if unknown:
        raise ValueError(f"unknown inequalities: {unknown}; known: {list(ALL_INEQUALITIES)}")
    if not names:
        return SuiteReport([], {})
    tol = default_tolerance(config.dim) if tolerance is None else tolerance

    def run(i):
        return _trial_certificates(config, names, ps, alphas, tol, i)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            per_trial = list(pool.map(run, range(config.trials)))
    else:
        per_trial = [run(i) for i in range(config.trials)]
    rank = {n: k for k, n in enumerate(names)}
    certs = [c for trial in per_trial for c in trial]
    certs.sort(key=lambda c: (rank[c.name], c.metadata["trial"]))
    summary = {}
    for name in names:
        group = [c for c in certs if c.name == name]
        if group:
            summary[name] = _summarize(group)
    return SuiteReport(certs, summary)


__all__ = [
    "ALL_INEQUALITIES",
    "AlphaLimitReport",
    "CurveRule",
    "EnsembleConfig",
    "EnsembleKind",
    "ExampleRatio",
    "MatrixCurve",
    "PinskerConstant",
    "SuiteReport",
    "alpha_limit_check",
    "boundary_qubit_pair",
    "constant_iteration",
    "curve_overlap_certificate",
    "default_p_grid",
    "ensemble_suite",
    "epsilon_sweep_slope",
    "example_ratio",
    "balanced_qubit_pair",
    "pinching_certificate",
    "pinsker_constant_extraction",
    "predicted_ratio",
]
