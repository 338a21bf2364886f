"""Possibilistic robust optimization: nominal, robust, light robust and necessity-based models."""

from ._possro import (
    AssumptionViolation,
    DomainError,
    Instance,
    SchemaError,
    combinatorial,
    experiment,
    generate_instance,
    light_robust,
    nec,
    nominal,
    robust,
    soft_nec,
    soft_nec_obj,
)

__all__ = [
    "AssumptionViolation",
    "DomainError",
    "Instance",
    "SchemaError",
    "combinatorial",
    "experiment",
    "generate_instance",
    "light_robust",
    "nec",
    "nominal",
    "robust",
    "soft_nec",
    "soft_nec_obj",
]
