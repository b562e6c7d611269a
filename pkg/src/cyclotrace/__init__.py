"""Exact integral trace forms of tame cyclic number fields."""

from .group_ring import (
    FiniteAbelianGroup,
    GroupRingElement,
    add,
    aug,
    involute,
    mul,
    pr,
    quotient_push,
    sigma_subgroup,
    tensor_embed,
)
from .oracle import (
    FieldRealization,
    FormalRootSum,
    certify,
    gram_oracle,
    nib,
    ramanujan_sum,
    realize,
    trace_full,
)
from .trace_form import (
    CoefficientTable,
    FieldSpec,
    GramMatrix,
    RamifiedPrime,
    SpecError,
    circulant_to_matrix,
    closed_form_coefficients,
    coefficient_table,
    discriminant,
    enumerate_specs,
    field_circulant,
    gram_matrix,
    is_isometric,
    local_circulant,
    signature,
    validate_spec,
)

__version__ = "0.1.0"
