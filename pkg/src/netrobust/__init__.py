"""Structural robustness of undirected consensus networks to additive noise."""

from ._kernels import DEFAULT_BACKEND as KERNEL_BACKEND
from .errors import (
    DisconnectedGraphError,
    EdgeListParseError,
    InvalidDegreeError,
    InvalidFamilyError,
    InvalidGraphError,
    InvalidMatrixError,
    InvalidNodeError,
    InvalidParameterError,
    InvalidSizeError,
    NetRobustError,
    ParityError,
    StabilityError,
)
from .graph import (
    DistanceSummary,
    Graph,
    average_degree,
    bridge,
    distances,
    is_connected,
    load_edgelist,
    make_family,
    make_lollipop,
    random_connected,
    random_regular,
    random_tree,
    read_edgelist,
    sample_random_regular,
    save_edgelist,
    write_edgelist,
)
from .robustness import (
    BoundCurvePoint,
    RobustnessReport,
    analyze,
    approximation_bound,
    bridged_kirchhoff_estimate,
    degree_distance_bounds,
    dense_fragile_lollipop,
    design_degree,
    h_expected,
    h_star,
    h_star_closed_form,
    kirchhoff_from_resistances,
    kirchhoff_from_spectrum,
    min_degree_for_alpha,
    regular_vulnerability_bound,
    sparsity_ratios,
    spectral_gap_bound,
    tail_exponent,
)
from .sim import SimConfig, SimResult, estimate_h_star, simulate
from .spectral import (
    Spectrum,
    algebraic_connectivity,
    effective_resistance,
    eigenvalues,
    laplacian,
    resistance_matrix,
    spectrum,
)

__version__ = "0.1.0"
