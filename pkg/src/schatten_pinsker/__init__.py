"""Schatten-norm duality, Hölder's inequality with remainder and
Pinsker-type bounds for quantum Rényi divergences, with numerical
certification on random density-matrix ensembles."""

from .certificates import InequalityCertificate, Status, default_tolerance
from .convexity import (
    holder_remainder_1,
    holder_remainder_2,
    phase_align,
    sharpness_scan,
    uniform_convexity_gap,
)
from .entropy import (
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
from .fitting import SlopeFit, loglog_fit
from .matcore import (
    EnsembleConfig,
    EnsembleKind,
    abs_mat,
    eig_hermitian,
    mat_power,
    polar,
    random_sample,
    svd,
    trace_inner,
)
from .schatten import (
    conjugate_exponent,
    duality_map,
    gradient_fd_check,
    mazur_map,
    schatten_norm,
)

__version__ = "0.1.0"
