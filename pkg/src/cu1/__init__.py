"""Exact arithmetic for the unitary Cuntz semigroup Cu1 of small C*-algebras.

Modules, bottom up: ``values`` (value scales and coefficient groups),
``arcs`` (open sets), ``lsc`` (step functions), ``ktheory`` (K1 of ideals),
``core`` (Cu1 elements, models, morphisms), ``functors`` (compacts, H_*),
``limits`` (inductive limits, completions), ``axiomlab`` (property suites),
``codec`` (JSON) and ``cli``.
"""
from .core import (Cu1Element, Cu1Model, Cu1Morphism, af_model, circle_model,
                   interval_model, simple_model, uhf_circle_model,
                   uhf_interval_model, zero_model)
from .errors import Cu1Error

__all__ = [
    "Cu1Element", "Cu1Model", "Cu1Morphism", "Cu1Error", "af_model", "circle_model",
    "interval_model", "simple_model", "uhf_circle_model", "uhf_interval_model", "zero_model",
]
__version__ = "0.1.0"
