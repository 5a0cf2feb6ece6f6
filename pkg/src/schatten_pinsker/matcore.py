"""Dense matrix primitives: spectral and singular-value decompositions,
polar factors, PSD functional calculus and seeded random ensembles.

Matrices are plain complex ``numpy.ndarray`` objects. The validators
``as_matrix``, ``as_hermitian`` and ``as_density_matrix`` enforce the
invariants that the rest of the package relies on and return fresh arrays.
"""

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

#: Singular values / eigenvalues below ``RANK_RTOL * max`` count as zero.
RANK_RTOL = 1e-12
#: Eigenvalues of PSD inputs above ``-PSD_ATOL`` are clamped to zero.
PSD_ATOL = 1e-10
#: Allowed deviation of a density matrix trace from one.
TRACE_ATOL = 1e-10
#: Relative tolerance on reconstruction residuals of decompositions.
RESIDUAL_RTOL = 1e-10
HERMITIAN_RTOL = 1e-12


class DecompositionError(np.linalg.LinAlgError):
    """A decomposition failed to converge or did not reconstruct its input."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


class SingularValues(NamedTuple):
    """``A = left @ diag(values) @ right``, values sorted descending."""

    values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self):
        return (self.left * self.values) @ self.right

    def rank(self):
        return support_rank(self.values)


class PolarFactors(NamedTuple):
    """``A = isometry @ modulus`` with ``modulus = |A|``."""

    isometry: np.ndarray
    modulus: np.ndarray


def support_rank(values):
    """Number of entries of a nonnegative, descending vector above the
    global rank tolerance."""
    values = np.asarray(values)
    if values.size == 0 or values[0] <= 0:
        return 0
    return int(np.count_nonzero(values > RANK_RTOL * values[0]))


# ---------------------------------------------------------------------------
# validators


def as_matrix(A):
    """Return ``A`` as a finite, square, complex 2-d array."""
    A = np.array(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def as_hermitian(H):
    """Validate hermiticity to ``1e-12 * max|entry|`` and return the
    symmetrized matrix."""
    H = as_matrix(H)
    scale = np.max(np.abs(H))
    dev = np.max(np.abs(H - H.conj().T))
    if dev > HERMITIAN_RTOL * scale:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
    return 0.5 * (H + H.conj().T)


def as_psd(H):
    """Validate positive semidefiniteness; eigenvalues in ``[-1e-10, 0)`` are
    clamped to zero."""
    H = as_hermitian(H)
    w = np.linalg.eigvalsh(H)
    if w[0] < -PSD_ATOL:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    if w[0] >= 0:
        return H
    dec = eig_hermitian(H)
    return SpectralDecomposition(np.clip(dec.eigenvalues, 0.0, None),
                                 dec.eigenvectors).reconstruct()


def as_density_matrix(rho):
    """Validate a density matrix (PSD, unit trace) and return it with
    slightly negative eigenvalues clamped."""
    rho = as_psd(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise ValueError(f"density matrix must have unit trace, got {tr!r}")
    return rho


def is_density_matrix(rho, atol=TRACE_ATOL):
    try:
        rho = as_hermitian(rho)
    except ValueError:
        return False
    w = np.linalg.eigvalsh(rho)
    return bool(w[0] >= -PSD_ATOL and abs(w.sum() - 1.0) <= atol)


# ---------------------------------------------------------------------------
# decompositions


def eig_hermitian(H):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    DecompositionError
        If LAPACK fails or the reconstruction residual exceeds
        ``1e-10 * (1 + spectral radius)``.
    """
    H = as_hermitian(H)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigh did not converge: {exc}") from exc
    dec = SpectralDecomposition(w, V)
    radius = np.max(np.abs(w))
    residual = np.max(np.abs(dec.reconstruct() - H))
    if residual > RESIDUAL_RTOL * (1.0 + radius):
        raise DecompositionError(
            f"eigendecomposition residual {residual:.3e} too large", residual
        )
    return dec


def svd(A):
    """Singular value decomposition ``A = W diag(s) V*`` with ``s`` descending."""
    A = as_matrix(A)
    try:
        W, s, Vh = np.linalg.svd(A)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"svd did not converge: {exc}") from exc
    dec = SingularValues(s, W, Vh)
    residual = np.max(np.abs(dec.reconstruct() - A))
    if residual > RESIDUAL_RTOL * (1.0 + s[0]):
        raise DecompositionError(f"svd residual {residual:.3e} too large", residual)
    return dec


def singular_values(A):
    return np.linalg.svd(as_matrix(A), compute_uv=False)


def abs_mat(A):
    """The modulus ``|A| = (A* A)^{1/2}``, built from the SVD."""
    dec = svd(A)
    Vh = dec.right
    return (Vh.conj().T * dec.values) @ Vh


def polar(A):
    """Polar decomposition ``A = U |A|``.

    ``U`` is the partial isometry ``sum_i u_i v_i*`` over singular values above
    the rank tolerance, so ``U* U`` is the projector onto the range of ``|A|``.
    """
    dec = svd(A)
    r = dec.rank()
    W, Vh = dec.left[:, :r], dec.right[:r]
    U = W @ Vh
    modulus = (dec.right.conj().T * dec.values) @ dec.right
    return PolarFactors(U, modulus)


def mat_power(H, s, full_inverse=False):
    """Power ``H**s`` of a PSD matrix via its eigendecomposition.

    Zero eigenvalues (below the rank tolerance) map to zero for every real
    ``s``, so negative powers are pseudo-inverses restricted to the support.

    Parameters
    ----------
    H : array_like
        Positive semidefinite matrix; eigenvalues down to ``-1e-10`` are
        clamped to zero.
    s : float
        Real exponent.
    full_inverse : bool
        Request an inverse on the whole space. Not supported for ``s < 0``.
    """
    s = float(s)
    if full_inverse and s < 0:
        raise ValueError("negative powers are only defined on the support")
    w, V = eig_hermitian(H)
    if w[0] < -PSD_ATOL:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    return SpectralDecomposition(_power_on_support(w, s), V).reconstruct()


def _power_on_support(w, s):
    w = np.clip(w, 0.0, None)
    top = w.max() if w.size else 0.0
    keep = w > RANK_RTOL * top
    out = np.zeros_like(w)
    out[keep] = w[keep] ** s
    return out


def trace_inner(A, B):
    """``Tr[A B]`` without forming the product."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape or A.ndim != 2:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return complex(np.einsum("ij,ji->", A, B))


# ---------------------------------------------------------------------------
# random ensembles


class EnsembleKind(enum.Enum):
    GINIBRE_GENERAL = "ginibre"
    WISHART_DENSITY = "wishart"
    DIAGONAL_COMMUTING = "diagonal"
    RANK_DEFICIENT_DENSITY = "rank-deficient"
    NEAR_IDENTICAL_PAIR = "near-identical"


@dataclass(frozen=True)
class EnsembleConfig:
    """Random pair generator settings.

    ``rank`` is used by ``RANK_DEFICIENT_DENSITY`` (defaults to ``dim // 2``,
    at least 1) and ``epsilon`` by ``NEAR_IDENTICAL_PAIR``.
    """

    dim: int
    kind: EnsembleKind = EnsembleKind.WISHART_DENSITY
    trials: int = 1
    seed: int = 0
    rank: int = None
    epsilon: float = 1e-3

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", EnsembleKind(self.kind))
        if int(self.dim) < 1:
            raise ValueError("dim must be >= 1")
        if int(self.trials) < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.rank is not None and not 1 <= self.rank <= self.dim:
            raise ValueError("rank must lie in [1, dim]")
        if self.kind is EnsembleKind.NEAR_IDENTICAL_PAIR and not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


def trial_rng(seed, trial_index):
    """Independent generator for one trial, keyed by ``(seed, trial_index)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial_index)]))


def ginibre(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def wishart_density(rng, dim, rank=None):
    """``G G* / Tr[G G*]`` with ``G`` a ``dim x rank`` Ginibre matrix."""
    G = ginibre(rng, dim, dim if rank is None else rank)
    W = G @ G.conj().T
    W = 0.5 * (W + W.conj().T)
    return W / np.trace(W).real


def random_unitary(rng, dim):
    """Haar unitary via QR of a Ginibre matrix with phase correction."""
    Q, R = np.linalg.qr(ginibre(rng, dim))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def project_to_density(H):
    """Nearest-by-clipping density matrix: clamp negative eigenvalues and
    renormalise the trace."""
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    w = np.clip(w, 0.0, None)
    out = (V * (w / w.sum())) @ V.conj().T
    return 0.5 * (out + out.conj().T)


def random_sample(config, trial_index):
    """Draw the ``trial_index``-th pair of ``config``'s ensemble.

    Every kind returns a pair ``(X, Y)``: Ginibre matrices for
    ``GINIBRE_GENERAL`` and density matrices otherwise. The result depends only
    on ``(config, trial_index)``.
    """
    if not 0 <= trial_index < config.trials:
        raise ValueError(f"trial_index {trial_index} outside [0, {config.trials})")
    rng = trial_rng(config.seed, trial_index)
    n = config.dim
    kind = config.kind
    if kind is EnsembleKind.GINIBRE_GENERAL:
        return ginibre(rng, n), ginibre(rng, n)
    if kind is EnsembleKind.WISHART_DENSITY:
        return wishart_density(rng, n), wishart_density(rng, n)
    if kind is EnsembleKind.DIAGONAL_COMMUTING:
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        return np.diag(p).astype(complex), np.diag(q).astype(complex)
    if kind is EnsembleKind.RANK_DEFICIENT_DENSITY:
        r = config.rank if config.rank is not None else max(1, n // 2)
        return wishart_density(rng, n, r), wishart_density(rng, n, r)
    if kind is EnsembleKind.NEAR_IDENTICAL_PAIR:
        rho = wishart_density(rng, n)
        G = ginibre(rng, n)
        H = G + G.conj().T
        H -= np.trace(H).real / n * np.eye(n)
        H /= np.sum(np.abs(np.linalg.eigvalsh(H))) or 1.0
        return rho, project_to_density(rho + config.epsilon * H)
    raise ValueError(f"unknown ensemble kind {kind!r}")
