"""Exact verification laboratory for universal virtual and welded braid
groups: finitely presented group flavors, local matrix representation
families over ℚ(i)(parameters), and redundant verification engines
(symbolic relation checks, constraint-system regeneration, finite-field
scans, closed-form irreducibility criteria with an algebra-dimension
oracle, and quotient-factoring checks)."""

from .analysis import (
    ConstraintSystem,
    FactorOutcome,
    ModPScan,
    ReducibilityResult,
    RelationOutcome,
    VerificationReport,
    burnside_dim,
    classify_virtual_point,
    enumerate_solutions_mod_p,
    factor_check,
    forbidden_moves,
    generate_constraints,
    generic_rep,
    invariant_check,
    reducibility_criterion,
    spin,
    verify_relations,
)
from .groups import (
    FLAVORS,
    AbelianImage,
    Generator,
    GroupSpec,
    Permutation,
    PhiImage,
    Relation,
    Word,
    abelianize,
    free_reduce,
    make_spec,
    normal_form_n2,
    parse_word,
    perm_image,
    phi,
    relations,
    rho,
    sigma,
    word,
)
from .matrices import Matrix, block_embed
from .reps import (
    FAMILY_NAMES,
    ConjugationWitness,
    LocalRep,
    build_local_rep,
    canonical_family,
    conjugation_equivalence,
    eval_word,
    specialize,
)
from .scalars import (
    G_I,
    G_ONE,
    G_ZERO,
    GaussianRational,
    MultiPoly,
    PolyRing,
    RatFunc,
    VanishingDenominator,
    parse_gaussian,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianImage",
    "ConjugationWitness",
    "ConstraintSystem",
    "FactorOutcome",
    "FAMILY_NAMES",
    "FLAVORS",
    "G_I",
    "G_ONE",
    "G_ZERO",
    "GaussianRational",
    "Generator",
    "GroupSpec",
    "LocalRep",
    "Matrix",
    "ModPScan",
    "MultiPoly",
    "Permutation",
    "PhiImage",
    "PolyRing",
    "RatFunc",
    "ReducibilityResult",
    "Relation",
    "RelationOutcome",
    "VanishingDenominator",
    "VerificationReport",
    "Word",
    "abelianize",
    "block_embed",
    "build_local_rep",
    "burnside_dim",
    "canonical_family",
    "classify_virtual_point",
    "conjugation_equivalence",
    "enumerate_solutions_mod_p",
    "eval_word",
    "factor_check",
    "forbidden_moves",
    "free_reduce",
    "generate_constraints",
    "generic_rep",
    "invariant_check",
    "make_spec",
    "normal_form_n2",
    "parse_gaussian",
    "parse_word",
    "perm_image",
    "phi",
    "reducibility_criterion",
    "relations",
    "rho",
    "sigma",
    "specialize",
    "spin",
    "verify_relations",
    "word",
]
