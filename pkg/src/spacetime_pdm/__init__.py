"""Pseudo-density matrices for two-point qubit correlations in space and time,
with the exact geometry of the attainable correlation triples."""
from .channels import (
    Channel,
    CPTPReport,
    ExtremalParams,
    amplitude_damping,
    apply,
    apply_to_B,
    choi_to_ptm,
    dephasing,
    depolarizing,
    extremal_channel,
    fully_depolarizing,
    identity,
    is_unital,
    kraus_to_choi,
    mix,
    pauli_channel,
    pauli_unitary,
    ptm_to_choi,
    standard_channels,
    validate_cptp,
)
from .errors import InvalidArgument, PreconditionViolation, RepresentationError, ValidationError
from .geometry import (
    CorrVec3,
    ProjectionType,
    RegionReport,
    admissible_2d,
    classify,
    d_s,
    d_t,
    dist_to_octahedron,
    in_elliptope,
    in_octahedron,
    in_tetra_s,
    in_tetra_t,
    projection_type,
    surface_point,
)
from .inference import CausalHypothesis, infer_causal
from .pdm import (
    PDM,
    QubitState,
    causality_f_tr,
    choi_of_pdm,
    corr_vec3,
    correlation,
    mix_pdm,
    negativity,
    pdm_from_correlations,
    pdm_jordan,
    pdm_spatial,
    pdm_temporal,
)
from .sampling import SampleSpec

__version__ = "0.1.0"
