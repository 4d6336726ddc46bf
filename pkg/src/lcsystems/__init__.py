"""Exact computations with log canonical systems of vectors.

Subpackages and modules:

* :mod:`lcsystems.exact` -- exact numbers in Q(sqrt k1, sqrt k2, ...)
* :mod:`lcsystems.systems` -- vector systems, signature classes, moves
* :mod:`lcsystems.logcanonical` -- canonical elements, log canonicity,
  minimality and bounded enumeration
* :mod:`lcsystems.catalog` -- parameterised families and their audit
* :mod:`lcsystems.surface` -- resolution graphs, codiscrepancies, l(X)
* :mod:`lcsystems.bound` -- Lanner sizes, distance pairs, dimension bound
* :mod:`lcsystems.cli` -- the ``lcsystems`` command
"""
from .errors import (
    DegenerateConfigurationError,
    DomainError,
    LCSystemsError,
    NotASingularityError,
    NotBlowableError,
    NotContractibleError,
    ParameterError,
    ResourceError,
    StructuralError,
    UnsupportedEntryError,
)
from .exact import ExactScalar, sign_of
from .logcanonical import (
    CanonicalElement,
    EnumerationLimits,
    Target,
    canonical_element,
    contractible_elements,
    enumerate_minimal,
    is_log_canonical,
    is_minimal,
)
from .systems import (
    ClassKind,
    Signature,
    SystemClass,
    VectorSystem,
    blow_up,
    canonical_form,
    classify,
    contract,
    is_elliptic,
    is_equivalent,
    is_hyperbolic,
    is_lanner,
    signature,
    subsystem,
    validate,
)

__all__ = [
    "CanonicalElement", "ClassKind", "DegenerateConfigurationError", "DomainError", "EnumerationLimits",
    "ExactScalar", "LCSystemsError", "NotASingularityError", "NotBlowableError", "NotContractibleError",
    "ParameterError", "ResourceError", "Signature", "StructuralError", "SystemClass", "Target",
    "UnsupportedEntryError", "VectorSystem", "blow_up", "canonical_element", "canonical_form", "classify",
    "contract", "contractible_elements", "enumerate_minimal", "is_elliptic", "is_equivalent",
    "is_hyperbolic", "is_lanner", "is_log_canonical", "is_minimal", "sign_of", "signature", "subsystem",
    "validate",
]
