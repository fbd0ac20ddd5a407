"""Orbifold braid group presentations, word rewriting proofs, and finite-quotient checks."""

__version__ = "0.1.0"

from .words import (  # noqa: F401
    EPSILON,
    Family,
    GeneratorId,
    Letter,
    W,
    Word,
    alternating_word,
    concat,
    format_word,
    free_reduce,
    inv,
    invert,
    parse_word,
)
from .presentations import (  # noqa: F401
    Presentation,
    Relation,
    WeightedGraph,
    artin_from_graph,
    build_cor35_presentation,
    build_orbifold_braid,
    build_prop32_presentation,
    build_prop36_presentation,
    build_pure_orbifold,
    build_remark34_presentation,
    coxeterize,
    expand_pure_generator,
    normal_subgroup_presentation,
)
from .prover import ProofResult, ProverBudget, prove_equal, replay_chain, verify_obligations  # noqa: F401
from .homomorphisms import (  # noqa: F401
    Assignment,
    SemidirectForm,
    apply_assignment,
    closed_form_conjugation,
    compose,
    conjugation_automorphism,
    semidirect_normal_form,
    u_exponent,
    von_dyck_obligations,
)
from .center import gamma, gamma_pure, pure_degree, theta, theta_power_membership  # noqa: F401
from .quotients import (  # noqa: F401
    MonomialElement,
    check_relations_in_quotient,
    enumerate_G,
    evaluate_word,
    separate,
    standard_wreath_assignment,
)
from .coset_enum import CosetTable, enumerate_cosets, enumerate_order  # noqa: F401
