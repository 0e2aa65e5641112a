"""Exact computer algebra for the quantum Poincare group E_q(1,1) at odd roots of unity."""

from .scalars import CycScalar, ParamScalar, field, q_binom, q_fact, q_int
from .reduced import AElement
from .extended import EElement
from .quantum_algebra import UElement
from .duality import pair
from .parser import ParseError, parse
from .suites import run_suite

__all__ = [
    "CycScalar", "ParamScalar", "field", "q_int", "q_fact", "q_binom",
    "AElement", "EElement", "UElement", "pair", "parse", "ParseError", "run_suite",
]
