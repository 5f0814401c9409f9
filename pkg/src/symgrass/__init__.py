"""Evaluation codes from minors of symmetric matrices over small finite fields."""

from .codes import (
    AFFINE,
    SYMPLECTIC,
    DualWitness,
    LinearCode,
    WeightReport,
    automorphism_check,
    build_generator,
    dual_low_weight_scan,
    dual_witness_check,
    encode,
    macwilliams_transform,
    min_distance_exhaustive,
    puncture_shorten,
    weight_enumerator,
)
from .gf import (
    FieldElement,
    FieldSpec,
    field_elements,
    field_from_order,
    field_make,
    solve_quadratic,
)
from .minors import (
    MinorCombination,
    act,
    clear_subminors,
    combination,
    evaluate,
    spread_reduce,
    weight,
)
from .polys import expand_to_polynomial, leading_term, normal_form
from .symspace import (
    DosetPair,
    SymMatrix,
    catalan,
    count_fullrank_symmetric,
    doset_pairs,
    enumerate_symmetric,
    isotropic_embed_check,
    minor_value,
    narayana,
)

__version__ = "0.1.0"
