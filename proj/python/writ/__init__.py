"""Python bindings for the writ analyses."""

from ._writ import (
    FuelExhausted,
    WritError,
    WritTypeError,
    bounded_cost,
    cli,
    eval,
    exact_cost,
    majorant,
    modulus,
    translate,
    typecheck,
    verify_corpus,
)

__all__ = [
    "FuelExhausted",
    "WritError",
    "WritTypeError",
    "bounded_cost",
    "cli",
    "eval",
    "exact_cost",
    "majorant",
    "modulus",
    "translate",
    "typecheck",
    "verify_corpus",
]
