"""permroute: subgroup distance in symmetric groups, polarized switching
circuit routings, the Boolean gadget family, and the parsimonious
reductions tying them together, with exhaustive oracles for desk-scale
verification."""

__version__ = "0.1.0"

from .circuits import (
    Edge,
    MaxRoutingResult,
    Polarization,
    Routing,
    SwitchingCircuit,
    count_routing_cycles,
    decide_routing,
    enumerate_routings,
    max_routing,
    successor_permutation,
    validate_circuit,
)
from .cnf import (
    Assignment,
    CnfFormula,
    Literal,
    count_satisfying,
    normalize_3sat,
    parse_dimacs,
)
from .errors import (
    CapExceededError,
    DimacsError,
    GadgetVerificationError,
    PermRouteError,
    ValidationError,
)
from .gadgets import (
    GadgetFragment,
    IdAllocator,
    build_A,
    build_E,
    build_F,
    build_G,
    build_I,
    verify_gadget_tables,
)
from .perms import (
    IdsGeneratorSet,
    Permutation,
    Transposition,
    cayley_distance,
    compose,
    cycle_count,
    ids_element,
    inverse,
    validate_ids,
)
from .solvers import (
    bfs_cayley_distance,
    capped_closure,
    decide_distance,
    distance_to_ids_subgroup,
)
from .transforms import (
    IdsCircuit,
    IdsDistanceInstance,
    SatCircuitInstance,
    SplitFormula,
    assignment_to_routing,
    circuit_to_ids,
    ids_to_circuit,
    routing_to_group_element,
    sat_to_circuit,
    split_variables,
    subset_routing,
)

__all__ = [
    "Assignment",
    "CapExceededError",
    "CnfFormula",
    "DimacsError",
    "Edge",
    "GadgetFragment",
    "GadgetVerificationError",
    "IdAllocator",
    "IdsCircuit",
    "IdsDistanceInstance",
    "IdsGeneratorSet",
    "Literal",
    "MaxRoutingResult",
    "PermRouteError",
    "Permutation",
    "Polarization",
    "Routing",
    "SatCircuitInstance",
    "SplitFormula",
    "SwitchingCircuit",
    "Transposition",
    "ValidationError",
    "assignment_to_routing",
    "bfs_cayley_distance",
    "build_A",
    "build_E",
    "build_F",
    "build_G",
    "build_I",
    "capped_closure",
    "cayley_distance",
    "circuit_to_ids",
    "compose",
    "count_routing_cycles",
    "count_satisfying",
    "cycle_count",
    "decide_distance",
    "decide_routing",
    "distance_to_ids_subgroup",
    "enumerate_routings",
    "ids_element",
    "ids_to_circuit",
    "inverse",
    "max_routing",
    "normalize_3sat",
    "parse_dimacs",
    "routing_to_group_element",
    "sat_to_circuit",
    "split_variables",
    "subset_routing",
    "successor_permutation",
    "validate_circuit",
    "validate_ids",
    "verify_gadget_tables",
]
