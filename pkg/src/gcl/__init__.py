"""Multi-mode bosonic Gaussian channels at the covariance-matrix level:
symplectic linear algebra, unitary dilations, minimal-noise criteria,
weak degradability, and the complete two-mode classification.

Coordinates are ordered (Q1..Qn; P1..Pn) everywhere; the commutation
form is sigma = [[0, 1], [-1, 0]] in that block split.
"""

from .channel import (
    GaussianChannel,
    RankInvariants,
    additive_noise,
    additive_noise_normal_form,
    apply,
    attenuator,
    channel_class,
    compose,
    conjugate,
    identity_channel,
    is_minimal_noise,
    minimal_noise_split,
    rank_invariants,
    validate_cp,
)
from .config import RunConfig
from .degradability import (
    DegradabilityVerdict,
    classify,
    connecting_map,
    connecting_map_is_cp,
    schur_assemble,
    schur_blocks,
    schur_classify,
    wd_matrix,
    weak_complement,
)
from .dilation import (
    UnitaryDilation,
    canonical_dilation,
    canonical_dilation_S,
    dilate_case_i,
    dilate_ideal_like,
    dilate_pure,
    dilate_reduced_mixed,
    dilate_reduced_pure,
    dilation_residual,
    general_G_dilation_S,
    transform_dilation,
)
from .sampling import (
    random_channel,
    random_covariance,
    random_pure_covariance,
    random_symplectic,
    random_two_mode_class,
)
from .states import (
    GaussianState,
    TwoModeStandardForm,
    is_pure,
    thermal_state,
    two_mode_squeezer,
    two_mode_standard,
    validate_state,
)
from .symplectic import (
    HermitianPair,
    SkewNormalForm,
    direct_sum,
    is_symplectic,
    psd_check,
    pseudo_inverse,
    skew_normal_form,
    symplectic_complete,
    symplectic_eigenvalues,
    symplectic_form,
    williamson,
)
from .twomode import (
    TwoModeClass,
    classify_block,
    compose_class,
    decoupling_search,
    jordan_block,
    n1_threshold,
    n2_threshold,
    thermal_classify,
    zero_capacity_bound,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
