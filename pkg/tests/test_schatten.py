import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schatten_pinsker.matcore import ginibre, mat_power, trace_inner, wishart_density
from schatten_pinsker.schatten import (
    SchattenExponent,
    conjugate_exponent,
    duality_map,
    gradient_fd_check,
    mazur_map,
    normalize,
    schatten_norm,
)

EXPONENTS = [1.1, 1.5, 2.0, 3.0, 64.0]


def oracle_norm(A, p):
    # singular values from the Hermitian eigenproblem, not from svd
    s = np.sqrt(np.clip(np.linalg.eigvalsh(A.conj().T @ A), 0, None))
    return np.sum(s**p) ** (1 / p)


def test_conjugate_exponent():
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(1) == math.inf
    assert conjugate_exponent(math.inf) == 1
    for p in (1.1, 1.5, 3.0, 7.25):
        e = SchattenExponent.of(p)
        assert abs(1 / e.p + 1 / e.conjugate - 1) <= 1e-14
    with pytest.raises(ValueError):
        conjugate_exponent(0.5)


def test_schatten_norm_examples(rng):
    assert math.isclose(schatten_norm(np.eye(5) / 5, 1), 1.0, rel_tol=1e-14)
    assert math.isclose(schatten_norm(np.diag([3.0, 4.0]), 2), 5.0, rel_tol=1e-14)
    A = ginibre(rng, 4)
    assert abs(schatten_norm(A, 1.5) - oracle_norm(A, 1.5)) <= 1e-10 * oracle_norm(A, 1.5)
    assert math.isclose(schatten_norm(A, math.inf), np.linalg.norm(A, 2), rel_tol=1e-12)
    assert schatten_norm(np.zeros((3, 3)), 1.7) == 0.0
    with pytest.raises(ValueError):
        schatten_norm(A, 0.5)


def test_duality_map_on_density_power(rng):
    rho = wishart_density(rng, 4)
    for p in (1.3, 1.5, 2.0):
        A = mat_power(rho, 1 / p)
        np.testing.assert_allclose(duality_map(A, p).matrix, mat_power(rho, 1 - 1 / p),
                                   atol=1e-10)


def test_duality_map_p2_is_normalized_adjoint(rng):
    A = ginibre(rng, 5)
    np.testing.assert_allclose(duality_map(A, 2).matrix, A.conj().T / np.linalg.norm(A),
                               atol=1e-12)


def test_duality_map_psd_formula(rng):
    H = wishart_density(rng, 4, rank=2)
    p = 1.4
    expected = mat_power(H, p - 1) / schatten_norm(H, p) ** (p - 1)
    np.testing.assert_allclose(duality_map(H, p).matrix, expected, atol=1e-10)


def test_duality_map_contract(rng):
    A = ginibre(rng, 6)
    g = duality_map(A, 1.3)
    assert abs(schatten_norm(g.matrix, g.p.conjugate) - 1) <= 1e-9
    assert abs(trace_inner(g.matrix, A) - g.source_norm) <= 1e-9 * g.source_norm


def test_duality_map_errors():
    with pytest.raises(ValueError):
        duality_map(np.zeros((2, 2)), 1.5)
    for p in (1, math.inf, 0.5):
        with pytest.raises(ValueError):
            duality_map(np.eye(2), p)


def test_duality_map_singular_input(rng):
    A = ginibre(rng, 5, 2) @ ginibre(rng, 2, 5)
    for p in (1.2, 1.8, 3.0):
        g = duality_map(A, p)
        assert abs(schatten_norm(g.matrix, g.p.conjugate) - 1) <= 1e-9
        assert abs(trace_inner(g.matrix, A) - g.source_norm) <= 1e-9 * g.source_norm


def test_mazur_map_examples(rng):
    A = ginibre(rng, 4)
    np.testing.assert_allclose(mazur_map(A, 1.7, 1.7), A, atol=1e-12)
    H = wishart_density(rng, 3)
    np.testing.assert_allclose(mazur_map(H, 2, 1), H @ H, atol=1e-12)
    with pytest.raises(ValueError):
        mazur_map(A, 2, 0)


@pytest.mark.parametrize("p", [1.2, 1.5, 2.5, 4.0])
def test_mazur_map_matches_duality_map(rng, p):
    A = ginibre(rng, 5)
    q = conjugate_exponent(p)
    expected = schatten_norm(A, p) ** (p - 1) * duality_map(A, p).matrix.conj().T
    np.testing.assert_allclose(mazur_map(A, p, q), expected, atol=1e-9 * np.abs(expected).max())


def test_gradient_check_homogeneous_direction(rng):
    A = ginibre(rng, 4)
    chk = gradient_fd_check(A, A, 1.5)
    assert math.isclose(chk.analytic_slope, schatten_norm(A, 1.5), rel_tol=1e-12)
    assert abs(chk.deviation) <= 1e-8 * chk.analytic_slope


def test_gradient_check_random(rng):
    A, B = ginibre(rng, 8), ginibre(rng, 8)
    chk = gradient_fd_check(A, B, 1.5, 1e-5)
    # finite-difference oracle computed directly from the norm
    t = 1e-5
    fd = (schatten_norm(A + t * B, 1.5) - schatten_norm(A - t * B, 1.5)) / (2 * t)
    assert abs(fd - chk.analytic_slope) <= 1e-6 * (1 + abs(chk.analytic_slope))
    assert abs(chk.deviation) <= 1e-6 * (1 + abs(chk.analytic_slope))


def test_gradient_check_frobenius(rng):
    A, B = ginibre(rng, 4), ginibre(rng, 4)
    chk = gradient_fd_check(A, B, 2)
    expected = np.real(np.trace(A.conj().T @ B)) / np.linalg.norm(A)
    assert math.isclose(chk.analytic_slope, expected, rel_tol=1e-12)
    with pytest.raises(ValueError):
        gradient_fd_check(A, B, 2, 0)


seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 7)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, dim=dims, p=st.sampled_from(EXPONENTS))
def test_holder_inequality(seed, dim, p):
    rng = np.random.default_rng(seed)
    A, B = ginibre(rng, dim), ginibre(rng, dim)
    q = conjugate_exponent(p)
    assert abs(trace_inner(A, B)) <= schatten_norm(A, p) * schatten_norm(B, q) + 1e-9


@settings(max_examples=60, deadline=None)
@given(seed=seeds, dim=dims, p=st.sampled_from(EXPONENTS + [1.0, math.inf]),
       c=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_norm_axioms(seed, dim, p, c):
    rng = np.random.default_rng(seed)
    A, B = ginibre(rng, dim), ginibre(rng, dim)
    nA, nB = schatten_norm(A, p), schatten_norm(B, p)
    assert schatten_norm(A + B, p) <= nA + nB + 1e-9
    assert math.isclose(schatten_norm(c * A, p), abs(c) * nA, rel_tol=1e-9)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, dim=dims, p=st.sampled_from([1.1, 1.5, 2.0, 3.0]),
       c=st.floats(1e-3, 1e3))
def test_gradient_scale_invariance(seed, dim, p, c):
    A = ginibre(np.random.default_rng(seed), dim)
    np.testing.assert_allclose(duality_map(c * A, p).matrix, duality_map(A, p).matrix,
                               atol=1e-9)


@pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 3.0])
def test_duality_supremum_attained(rng, p):
    A = ginibre(rng, 4)
    q = conjugate_exponent(p)
    nA = schatten_norm(A, p)
    best = -math.inf
    for _ in range(1000):
        B = normalize(ginibre(rng, 4), q)
        best = max(best, trace_inner(A, B).real)
    assert best <= nA + 1e-9
    attained = trace_inner(A, duality_map(A, p).matrix).real
    assert abs(attained - nA) <= 1e-9 * nA
    assert attained >= best
