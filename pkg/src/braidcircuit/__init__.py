"""Monitored brickwall circuits built from unitary R-matrix gates.

Three cross-validating engines compute trajectory entanglement: a
classical loop model (Clifford point, large L), a phase-free stabilizer
tableau (Clifford point, exact), and dense linear algebra (any c, small
L).  A shared CircuitLayout and counter-based RNG make all three sample
identical circuits from identical seeds.
"""

__version__ = "1.0.0"

from . import errors  # noqa: F401
from .gates import RParams, arccot, gate  # noqa: F401
from .layout import CircuitLayout, q_prime, sample_layout  # noqa: F401

__all__ = [
    "__version__", "errors", "RParams", "arccot", "gate",
    "CircuitLayout", "q_prime", "sample_layout",
]
