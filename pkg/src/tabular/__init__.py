"""Tabular algebras, their a-functions and asymptotic versions, with exact arithmetic."""

from .laurent import NEG_INF, ONE, QUANTUM_TWO, V, V_INV, ZERO, LaurentPoly, parse_laurent

__all__ = ["LaurentPoly", "parse_laurent", "NEG_INF", "ZERO", "ONE", "V", "V_INV", "QUANTUM_TWO"]
__version__ = "0.1.0"
