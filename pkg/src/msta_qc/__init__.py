"""Quantum states and gates as real multivectors, checked against a matrix simulator."""

from .algebra import Multivector, geometric_product, grade_projection, reversion, scalar_part
from .msta import SpinorGA, bell_states, complex_structure, correlator, decode, encode
from .gates import GateGA, PauliWordSum, translate_unitary
from .universality import Rotor, boykin_construct, euler_decompose, synthesize_word

__all__ = [
    "Multivector",
    "geometric_product",
    "grade_projection",
    "reversion",
    "scalar_part",
    "SpinorGA",
    "bell_states",
    "complex_structure",
    "correlator",
    "decode",
    "encode",
    "GateGA",
    "PauliWordSum",
    "translate_unitary",
    "Rotor",
    "boykin_construct",
    "euler_decompose",
    "synthesize_word",
]
