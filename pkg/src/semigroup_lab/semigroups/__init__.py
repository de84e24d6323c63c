from .monoids import (
    DescriptorMismatchError,
    ElementError,
    MonoidDescriptor,
    MonoidKind,
    SemigroupElement,
    compose,
    enumerate_elements,
    power,
    project_exponents,
    try_divide,
)

__all__ = [
    "DescriptorMismatchError",
    "ElementError",
    "MonoidDescriptor",
    "MonoidKind",
    "SemigroupElement",
    "compose",
    "enumerate_elements",
    "power",
    "project_exponents",
    "try_divide",
]
