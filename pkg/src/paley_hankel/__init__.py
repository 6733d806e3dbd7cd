"""Hankel operators on lacunary sets and Schur-test certificates of their norms."""

from .best_constant import (
    certified_norm_leq_one,
    epsilon_step,
    exact_eigenvector,
    forward_v,
    inverse_c,
    sharpness_table,
)
from .folding import FoldProfile, TrigPolynomial, fold_u, partial_product_u, product_formula_u, refold, refold_coefficient_check
from .hankel import (
    HankelOperator,
    NotConvergedError,
    bilinear,
    make_hankel,
    make_paley_hankel,
    matvec,
    op_norm,
    op_norm_oracle,
    op_norm_power,
    truncate,
)
from .multipliers import (
    cond_supdouble,
    cond_sumsquaresum,
    cond_supsum2,
    kothe_factorization,
    kothe_row_bound,
    multiplier_product_check,
)
from .schur import (
    FactorizationPair,
    SchurCertificate,
    asymmetric_uw,
    geometric_u,
    paley_factorization,
    paley_row_bound,
    rank_one_factors,
    verify_certificate,
    verify_factorization,
)
from .sequences import (
    AlternatingRep,
    LacunarySet,
    alternating_representation,
    decompose_strongly_lacunary,
    dyadic_count_bound,
    fold_set,
    is_hadamard,
    is_strongly_lacunary,
)

__all__ = [
    "certified_norm_leq_one",
    "epsilon_step",
    "exact_eigenvector",
    "forward_v",
    "inverse_c",
    "sharpness_table",
    "FoldProfile",
    "TrigPolynomial",
    "fold_u",
    "partial_product_u",
    "product_formula_u",
    "refold",
    "refold_coefficient_check",
    "HankelOperator",
    "NotConvergedError",
    "bilinear",
    "make_hankel",
    "make_paley_hankel",
    "matvec",
    "op_norm",
    "op_norm_oracle",
    "op_norm_power",
    "truncate",
    "cond_supdouble",
    "cond_sumsquaresum",
    "cond_supsum2",
    "kothe_factorization",
    "kothe_row_bound",
    "multiplier_product_check",
    "FactorizationPair",
    "SchurCertificate",
    "asymmetric_uw",
    "geometric_u",
    "paley_factorization",
    "paley_row_bound",
    "rank_one_factors",
    "verify_certificate",
    "verify_factorization",
    "AlternatingRep",
    "LacunarySet",
    "alternating_representation",
    "decompose_strongly_lacunary",
    "dyadic_count_bound",
    "fold_set",
    "is_hadamard",
    "is_strongly_lacunary",
]
