"""Spectral theory of the signless graph 1-Laplacian: dual Cheeger constant
and recursive spectral maxcut."""

__version__ = "0.1.0"

from .cut import (
    CutResult,
    CutScore,
    approximation_ratio_floor,
    coarea_certified_round,
    d2_relaxation_vector,
    greedy_cut,
    rsc_cost_bound,
    rsc_maxcut,
    two_threshold_round,
)
from .eigen import (
    EigenCertificate,
    NodalDecomposition,
    enumerate_ternary_eigenpairs,
    nodal_domains,
    restrict_to_domain,
    simplex_closure_check,
    spectral_gap_check,
    verify_eigenpair,
)
from .estimators import DualCheeger, RecursiveSpectralCut
from .exceptions import CapacityError, ConvergenceError, DomainError, GraphFormatError
from .functional import (
    SetPairFunction,
    SpectralVector,
    TernaryVector,
    dual_cheeger_objective,
    iminus,
    iplus,
    iplus_subdifferential_contains,
    lovasz_extension,
    norm_subgradient,
    normalize,
    quotient,
    ternary_vector,
    weighted_norm,
)
from .graph import Graph, SetPair, check_graph, cut_weight, dumps_gset, from_networkx, parse_gset, read_gset, volume
from .ipm import IpmConfig, IpmTrace, inner_solve, ipm_multistart, ipm_run
from .oracle import OracleResult, oracle_dual_cheeger, oracle_maxcut, oracle_ordering_check
