"""Exact Hochschild and Lie-Rinehart cohomology for differential operators
tangent to central line arrangements and for the algebras A_h."""

from .pbw import AhAlgebra, ArrangementAlgebra, PbwElement

__all__ = ["AhAlgebra", "ArrangementAlgebra", "PbwElement"]
