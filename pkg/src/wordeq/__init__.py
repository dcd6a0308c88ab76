"""Word equations over anticongruences.

Equivalence-class arithmetic on words, free and pseudo-free hulls with
their ranks, pseudo-solutions of word equations, and the constructive
descent from pseudo-solutions to ordinary solutions over class alphabets.
"""

from .words import (
    DEFAULT_PRODUCT_LIMIT,
    Alphabet,
    AlphabetMismatch,
    EnumerationGuardExceeded,
    FiniteLanguage,
    ProductLimitExceeded,
    Word,
    WordEqError,
    concat,
    factorizations,
    is_in_monoid,
    product,
    split,
)
from .anticongruence import (
    Anticongruence,
    AxiomViolation,
    EqClass,
    FiniteTable,
    Identity,
    MorphicPermutation,
    RawRelation,
    close_pairs,
    parse_relation,
    reversal_relation,
    verify_axioms,
)
from .freeness import (
    Basis,
    CodeVerdict,
    free_hull,
    hull_oracle,
    is_code,
    minimal_generators,
    rank,
)
from .pseudo import (
    ClassWord,
    NotInMonoid,
    PseudoFreeBasis,
    class_closure,
    class_factor_stability,
    class_factorization,
    factorization_is_morphism,
    pseudo_free_hull,
    pseudo_rank,
)
from .equations import (
    BudgetExceeded,
    DescentFailed,
    DescentResult,
    Equation,
    EquationSyntaxError,
    InvalidPseudoSolution,
    MissingImage,
    PseudoSolution,
    PseudoVerdict,
    RankCertificate,
    Solution,
    align_equivalent_sides,
    bounded_rank_certificate,
    canonical_representatives,
    check_pseudo_solution,
    check_solution,
    descend,
    elementary_transform,
    enumerate_pseudo_solutions,
    parse_equation,
    solution_rank,
)

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "Anticongruence",
    "AxiomViolation",
    "Basis",
    "BudgetExceeded",
    "ClassWord",
    "CodeVerdict",
    "DEFAULT_PRODUCT_LIMIT",
    "DescentFailed",
    "DescentResult",
    "EnumerationGuardExceeded",
    "EqClass",
    "Equation",
    "EquationSyntaxError",
    "FiniteLanguage",
    "FiniteTable",
    "Identity",
    "InvalidPseudoSolution",
    "MissingImage",
    "MorphicPermutation",
    "NotInMonoid",
    "ProductLimitExceeded",
    "PseudoFreeBasis",
    "PseudoSolution",
    "PseudoVerdict",
    "RankCertificate",
    "RawRelation",
    "Solution",
    "Word",
    "WordEqError",
    "align_equivalent_sides",
    "bounded_rank_certificate",
    "canonical_representatives",
    "check_pseudo_solution",
    "check_solution",
    "class_closure",
    "class_factor_stability",
    "class_factorization",
    "close_pairs",
    "concat",
    "descend",
    "elementary_transform",
    "enumerate_pseudo_solutions",
    "factorization_is_morphism",
    "factorizations",
    "free_hull",
    "hull_oracle",
    "is_code",
    "is_in_monoid",
    "minimal_generators",
    "parse_equation",
    "parse_relation",
    "product",
    "pseudo_free_hull",
    "pseudo_rank",
    "rank",
    "reversal_relation",
    "split",
    "verify_axioms",
]
