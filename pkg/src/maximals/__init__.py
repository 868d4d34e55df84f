"""Exact counting, enumeration and certificate machinery for maximal
independent sets in graphs and maximal antichains in the Boolean lattice."""

from .errors import (
    BudgetExceeded,
    CapacityError,
    EncoderFailure,
    InvalidCertificate,
    InvalidParameterError,
    PreconditionViolation,
    SamplingFailure,
    VerificationFailure,
)
from .graphs import (
    BitGraph,
    MatchingPairs,
    VertexSet,
    bilayer,
    comparability_graph,
    h_n_graph,
    hypercube,
    is_induced_matching,
    is_maximal_independent,
    random_regular,
    read_graph,
    write_graph,
)
from .posets import (
    BooleanLattice,
    ConvexSubposet,
    convex_closure,
    coordinate_matching,
    cover_degree_up,
    gamma_plus,
    induced_comparability,
    is_convex,
    level_matching,
    random_convex_subposet,
    read_element_set,
    write_element_set,
)
from .enumeration import (
    CountResult,
    EnumerationConfig,
    count_maximal_antichains,
    count_maximal_antichains_of,
    count_mis,
    count_mis_naive,
    enumerate_mis,
    ma_bound_convex,
)
from .certificates import (
    AntichainCertificate,
    BudgetReport,
    Claim1Report,
    EntropyCertificate,
    MisCertificate,
    antichain_decode,
    antichain_encode,
    certificate_budget,
    certificate_from_json_dict,
    default_antichain_b,
    entropy_decode,
    entropy_encode,
    sap_decode,
    sap_encode,
    verify_claim1,
)
from .bounds import (
    BoundReport,
    ShearerInstance,
    SweepReport,
    binomial_tail_check,
    conjecture52_sweep,
    evaluate_bound,
    h2,
    h_family_mis_count,
    hypercube_parity_matching,
    lattice_middle_matching,
    log2_big,
    matching_lower_bound,
    shearer_check,
)

__version__ = "0.1.0"
