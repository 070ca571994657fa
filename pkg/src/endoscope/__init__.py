"""Exact classification machinery for endomorphisms of simple abelian
varieties: fixed-point counts of iterates, growth type, topological entropy
and its algebraic certificates, over exact rational / number-field /
quaternion arithmetic with certified complex enclosures.
"""

from .algnum import AlgebraicNumber, from_rational, from_root, power, product, product_many
from .classify import (
    AlbertType,
    EntropyReport,
    GrowthReport,
    SalemReport,
    admissibility_check,
    classify_growth,
    entropy,
    is_automorphism,
    is_root_of_unity,
    is_salem_polynomial,
    structure_certificate,
)
from .enclosures import ComplexEnclosure, isolate_roots, unit_circle_status
from .errors import (
    CrossCheckError,
    DegreeCapExceeded,
    DivisibilityViolation,
    EndoscopeError,
    NonIntegralElement,
    NonSquarefreeInput,
    NotSimpleAlbertType,
    PrecisionExhausted,
    ValidationError,
)
from .factorq import factor, is_irreducible
from .lefschetz import (
    EigenvalueMultiset,
    EndomorphismSpec,
    companion_oracle,
    fixed_points_exact,
    fixed_points_via_eigenvalues,
    rational_eigenvalues,
)
from .numfield import (
    FieldTypeReport,
    NFElement,
    NumberField,
    cm_structure,
    is_totally_real,
    norm_and_trace,
    rationals_field,
    relative_norm_trace,
)
from .qpoly import QPoly, cyclotomic_order, from_ints, resultant
from .quaternion import (
    DefinitenessReport,
    QuatAlgebra,
    QuatElement,
    definiteness,
    hilbert_symbol,
    is_division,
    rational_quaternion_is_division,
    reduced_trace_norm,
    split_witness_search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
