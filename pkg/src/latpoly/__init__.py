"""Finite bounded lattices, lattice polynomial functions, and their
disjunctive normal forms."""

from .budget import DEFAULT_BUDGET
from .conditions import (
    CONDITION_IDS,
    Classification,
    ConditionEntry,
    ConditionReport,
    Witness,
    check_condition,
    check_delta_preservation,
    check_homogeneity,
    check_horizontal,
    check_median_decomposition,
    check_range_convexity,
    check_range_idempotency,
    check_self_composition,
    classify,
    evaluate_all_conditions,
    format_witness,
    is_order_preserving,
    report_lines,
)
from .dnf import (
    DNFMap,
    dnf_evaluate,
    dnf_membership,
    dnf_to_lines,
    dnf_to_term,
    enumerate_dnf,
    equivalent,
    extract_alpha,
    format_subset,
    reconstruct,
    subset_masks,
)
from .lattice import (
    DEFAULT_MAX_ELEMENTS,
    Element,
    FiniteLattice,
    boolean,
    build_from_covers,
    chain,
    downset_lattice,
    lattice_from_text,
    lattice_to_text,
    load_lattice,
    m3,
    n5,
    product,
    standard_lattice,
)
from .oracle import (
    FunctionSet,
    NondistributiveWitness,
    VerificationReport,
    closure_polynomials,
    count_monotone_tables,
    enumerate_polynomials_distributive,
    find_nondistributive_witness,
    iter_monotone_tables,
    random_monotone_table,
    verify_equivalence,
)
from .terms import (
    Const,
    FunctionTable,
    Join,
    Med,
    Meet,
    Var,
    delta,
    evaluate,
    format_term,
    load_table,
    make_join,
    make_med,
    make_meet,
    materialize,
    parse_term,
    random_term,
    substitute,
    table_from_text,
    table_to_text,
)
from . import errors

__version__ = "0.1.0"
