"""Least fixed points of monotone maps on finitely based sup lattices, by saturation."""

from .closure import (
    ClosureProblem,
    ClosureResult,
    check_initiality,
    is_c_closed_small,
    is_phi_closed_small,
    saturate_large,
    saturate_small,
)
from .errors import (
    ConfigurationError,
    ContractError,
    DensityError,
    GuardError,
    LfpError,
    MonotonicityError,
    ParseError,
    RepresentationError,
    UnboundedGeneratorError,
)
from .fixpoint import (
    FixpointReport,
    correspondence_backward,
    correspondence_forward,
    deflationary_meet_oracle,
    is_deflationary,
    kleene_oracle,
    least_fixed_point,
)
from .generator import (
    Bound,
    DenseFamily,
    HornRule,
    MonotoneMap,
    bound_of,
    canonical_generator,
    check_bound,
    check_dense,
    check_local,
    check_monotone,
    dense_generator,
    gamma_op,
    rule_set,
    s_phi,
    validate_monotone,
)
from .lattice import (
    Basis,
    BasisSubset,
    ExplicitLattice,
    PosetTable,
    Presentation,
    check_presentation,
    downset,
    infimum,
    join_subset,
    tautological_presentation,
    validate_basis,
)
from .powerset import (
    FiniteUniverse,
    PowersetLattice,
    list_basis,
    membership_presentation,
    singleton_basis,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BasisSubset",
    "Bound",
    "ClosureProblem",
    "ClosureResult",
    "ConfigurationError",
    "ContractError",
    "DenseFamily",
    "DensityError",
    "ExplicitLattice",
    "FiniteUniverse",
    "FixpointReport",
    "GuardError",
    "HornRule",
    "LfpError",
    "MonotoneMap",
    "MonotonicityError",
    "ParseError",
    "PosetTable",
    "PowersetLattice",
    "Presentation",
    "RepresentationError",
    "UnboundedGeneratorError",
    "bound_of",
    "canonical_generator",
    "check_bound",
    "check_dense",
    "check_initiality",
    "check_local",
    "check_monotone",
    "check_presentation",
    "correspondence_backward",
    "correspondence_forward",
    "deflationary_meet_oracle",
    "dense_generator",
    "downset",
    "gamma_op",
    "infimum",
    "is_c_closed_small",
    "is_deflationary",
    "is_phi_closed_small",
    "join_subset",
    "kleene_oracle",
    "least_fixed_point",
    "list_basis",
    "membership_presentation",
    "rule_set",
    "s_phi",
    "saturate_large",
    "saturate_small",
    "singleton_basis",
    "tautological_presentation",
    "validate_basis",
    "validate_monotone",
]
