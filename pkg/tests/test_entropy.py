import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schatten_pinsker.certificates import Status
from schatten_pinsker.convexity import holder_remainder_1, holder_remainder_2
from schatten_pinsker.entropy import (
    classical_renyi_bound_certificate,
    overlap_certificates,
    pinch_to_commuting,
    pinsker_certificate,
    renyi_pinsker_certificate,
    renyi_relative_entropy,
    ricard_bound_certificate,
    trace_distance,
    trace_overlap,
    von_neumann_relative_entropy,
    weakened_pinsker_certificate,
)
from schatten_pinsker.matcore import mat_power, wishart_density
from schatten_pinsker.schatten import conjugate_exponent

from .conftest import random_density_pair, rotate

RHO = np.diag([0.5, 0.5])
SIGMA = np.diag([0.6, 0.4])
# frozen from 30-digit scalar evaluations over the eigenvalue pairs
RENYI_HALF = 0.0101534234328679962172041433363
VON_NEUMANN = 0.0204109972601275647772885325776
RENYI_PINSKER_HALF_BOUND = 0.00506384699487594726119548345294


def scalar_renyi(r, s, alpha):
    r, s = np.asarray(r, float), np.asarray(s, float)
    return math.log(np.sum(r**alpha * s ** (1 - alpha))) / (alpha - 1)


def test_renyi_examples():
    for a in (0.1, 0.5, 0.9):
        assert abs(renyi_relative_entropy(SIGMA, SIGMA, a)) <= 1e-13
    assert renyi_relative_entropy(RHO, SIGMA, 0.5) == pytest.approx(RENYI_HALF, rel=1e-12)
    assert renyi_relative_entropy(np.diag([1, 0]), np.diag([0, 1]), 0.5) == math.inf
    with pytest.raises(ValueError):
        renyi_relative_entropy(RHO, SIGMA, 1.0)
    with pytest.raises(ValueError):
        renyi_relative_entropy(RHO, 2 * SIGMA, 0.5)


def test_renyi_unitary_invariance_matches_scalar_oracle(rng):
    r, s = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
    rho, sigma = rotate(rng, np.diag(r), np.diag(s))
    for a in (0.2, 0.5, 0.8):
        assert renyi_relative_entropy(rho, sigma, a) == pytest.approx(scalar_renyi(r, s, a),
                                                                      rel=1e-10)


def test_von_neumann_examples():
    assert abs(von_neumann_relative_entropy(SIGMA, SIGMA)) <= 1e-15
    assert von_neumann_relative_entropy(RHO, SIGMA) == pytest.approx(VON_NEUMANN, rel=1e-12)
    assert von_neumann_relative_entropy(np.diag([0.5, 0.5]), np.diag([1.0, 0.0])) == math.inf
    # rho supported inside sigma's support stays finite
    assert math.isfinite(von_neumann_relative_entropy(np.diag([1.0, 0.0]), SIGMA))


def test_trace_overlap():
    assert trace_overlap(SIGMA, SIGMA, 1.5) == pytest.approx(1.0, abs=1e-14)
    assert trace_overlap(np.diag([1, 0]), np.diag([0, 1]), 2) == 0
    for p in (1.2, 1.5, 2.0):
        a = 1 / p
        expect = math.exp((a - 1) * renyi_relative_entropy(RHO, SIGMA, a))
        assert trace_overlap(RHO, SIGMA, p) == pytest.approx(expect, rel=1e-10)


def test_overlap_certificates_examples():
    for c in overlap_certificates(SIGMA, SIGMA, 1.5):
        assert c.lhs == pytest.approx(1) and c.rhs == pytest.approx(1) and abs(c.gap) < 1e-12
    quad, dual = overlap_certificates(RHO, SIGMA, 2)
    assert quad.gap >= 0 and dual.gap >= 0
    assert quad.gap == pytest.approx(0.00253192349743797363, rel=1e-10)


def test_overlap_matches_holder_specialization(rng):
    for _ in range(50):
        rho, sigma = random_density_pair(rng, 4)
        for p in (1.1, 1.5, 2.0):
            q = conjugate_exponent(p)
            A, B = mat_power(rho, 1 / p), mat_power(sigma, 1 / q)
            quad, dual = overlap_certificates(rho, sigma, p)
            h1, h2 = holder_remainder_1(A, B, p), holder_remainder_2(A, B, p)
            assert abs(quad.lhs - h1.lhs) <= 1e-10 and abs(quad.rhs - h1.rhs) <= 1e-10
            assert abs(dual.lhs - h2.lhs) <= 1e-10 and abs(dual.rhs - h2.rhs) <= 1e-10


def test_renyi_pinsker_examples():
    c = renyi_pinsker_certificate(SIGMA, SIGMA, 0.7)
    assert abs(c.gap) <= 1e-12
    c = renyi_pinsker_certificate(RHO, SIGMA, 0.5)
    assert c.lhs == pytest.approx(RENYI_PINSKER_HALF_BOUND, rel=1e-10)
    assert c.rhs == pytest.approx(RENYI_HALF, rel=1e-12)
    assert c.gap > 0
    with pytest.raises(ValueError):
        renyi_pinsker_certificate(RHO, SIGMA, 0.4)


def test_classical_renyi_examples():
    assert abs(classical_renyi_bound_certificate(SIGMA, SIGMA, 0.3).gap) <= 1e-12
    c = classical_renyi_bound_certificate(RHO, SIGMA, 0.5)
    # alpha/2 * (0.2)^2 = 0.01
    assert c.lhs == pytest.approx(0.01, rel=1e-12)
    assert c.gap == pytest.approx(RENYI_HALF - 0.01, rel=1e-9)


def test_ricard_examples(rng):
    assert abs(ricard_bound_certificate(SIGMA, SIGMA, 0.5).gap) == 0
    rho, sigma = random_density_pair(rng, 3)
    for a in (0.3, 0.5, 0.8):
        c = ricard_bound_certificate(rho, sigma, a)
        assert c.metadata["max_factor"] == pytest.approx(1.0, abs=1e-12)
        assert a / 3 * trace_distance(rho, sigma) <= c.metadata["power_difference_norm"] + 1e-9
        literal = ricard_bound_certificate(rho, sigma, a, homogeneous=False)
        assert literal.rhs == pytest.approx(c.rhs, rel=1e-10)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
def test_ricard_random_psd(rng, alpha):
    for i in range(300):
        dim = 2 + i % 4
        scale = 10.0 ** rng.uniform(-3, 3)
        A = scale * rng.uniform(0.5, 2) * wishart_density(rng, dim)
        B = scale * rng.uniform(0.5, 2) * wishart_density(rng, dim)
        assert ricard_bound_certificate(A, B, alpha, tolerance=1e-9 * scale).status is Status.HOLDS


def test_ricard_literal_form_is_not_scale_invariant():
    # scaling a density pair by c multiplies the lhs by c but the literal rhs by c^{2 alpha}
    rho, sigma = np.diag([0.9, 0.1]), np.diag([0.1, 0.9])
    c = ricard_bound_certificate(1e-3 * rho, 1e-3 * sigma, 0.8, homogeneous=False)
    assert c.gap < 0
    assert ricard_bound_certificate(1e-3 * rho, 1e-3 * sigma, 0.8).gap > 0


def test_weakened_pinsker():
    assert abs(weakened_pinsker_certificate(SIGMA, SIGMA, 0.5).gap) <= 1e-12
    c = weakened_pinsker_certificate(RHO, SIGMA, 0.6)
    assert c.gap > 0 and c.metadata["chain_gap"] >= 0
    assert c.metadata["constant_ratio"] == pytest.approx(1 / 18, rel=1e-15)


def test_pinsker_examples():
    assert abs(pinsker_certificate(SIGMA, SIGMA).gap) <= 1e-12
    c = pinsker_certificate(RHO, SIGMA)
    assert c.lhs == pytest.approx(0.02, rel=1e-12)
    assert c.gap == pytest.approx(VON_NEUMANN - 0.02, rel=1e-9)
    c = pinsker_certificate(np.diag([0.5, 0.5]), np.diag([1.0, 0.0]))
    assert c.rhs == math.inf and c.status is Status.HOLDS


ALPHAS = [0.5, 0.6, 0.7, 0.8, 0.9, 0.99]


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 6), rank=st.integers(1, 6),
       alpha=st.sampled_from(ALPHAS))
def test_entropy_certificates_hold(seed, dim, rank, alpha):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density_pair(rng, dim, min(rank, dim))
    certs = [
        renyi_pinsker_certificate(rho, sigma, alpha),
        classical_renyi_bound_certificate(rho, sigma, alpha),
        classical_renyi_bound_certificate(rho, sigma, alpha / 3),
        weakened_pinsker_certificate(rho, sigma, alpha),
        ricard_bound_certificate(rho, sigma, alpha),
        pinsker_certificate(rho, sigma),
        *overlap_certificates(rho, sigma, 1 / alpha if alpha >= 0.5 else 2),
    ]
    for c in certs:
        assert c.status is Status.HOLDS, c


def test_pinching_degenerate_equal_states():
    res = pinch_to_commuting(SIGMA, SIGMA)
    np.testing.assert_allclose(res.rho_hat, res.sigma_hat)
    assert renyi_relative_entropy(res.rho_hat, res.sigma_hat, 0.5) == pytest.approx(0, abs=1e-15)


def test_pinching_diagonal_pair():
    rho, sigma = np.diag([0.5, 0.3, 0.2]), np.diag([0.2, 0.3, 0.5])
    res = pinch_to_commuting(rho, sigma)
    np.testing.assert_allclose(res.projector, np.diag([1, 0, 0]), atol=1e-15)
    assert res.p_weight == pytest.approx(0.5) and res.q_weight == pytest.approx(0.2)
    assert trace_distance(res.rho_hat, res.sigma_hat) == pytest.approx(
        trace_distance(rho, sigma), abs=1e-15)


@pytest.mark.parametrize("dim", [2, 3, 5])
def test_pinching_invariants(rng, dim):
    for _ in range(30):
        rho, sigma = random_density_pair(rng, dim)
        res = pinch_to_commuting(rho, sigma)
        P, rh, sh = res.projector, res.rho_hat, res.sigma_hat
        np.testing.assert_allclose(P @ P, P, atol=1e-10)
        for X in (rh, sh):
            np.testing.assert_allclose(X @ P, P @ X, atol=1e-10)
            assert np.trace(X).real == pytest.approx(1, abs=1e-10)
        np.testing.assert_allclose(rh @ sh, sh @ rh, atol=1e-10)
        assert abs(trace_distance(rho, sigma) - trace_distance(rh, sh)) <= 1e-9
        for a in (0.5, 0.7, 0.9):
            assert (renyi_relative_entropy(rho, sigma, a)
                    - renyi_relative_entropy(rh, sh, a)) >= -1e-9


def test_alpha_to_one_convergence(rng):
    rho, sigma = random_density_pair(rng, 3)
    D = von_neumann_relative_entropy(rho, sigma)
    devs = [abs(renyi_relative_entropy(rho, sigma, 1 - 10.0**-k) - D) for k in range(1, 7)]
    assert all(b <= a for a, b in zip(devs, devs[1:]))
    assert devs[-1] <= 1e-4 * (1 + D)
