"""The explicit 1-cocycles listed for three lines, as functions of the slope t."""

from __future__ import annotations

from .pbw import ArrangementAlgebra
from .slices import Cochain


def _one(algebra, a: str, b: str) -> Cochain:
    return Cochain(algebra, 1, {("x",): algebra.parse(a), ("y",): algebra.parse(b)})


def eta(algebra: ArrangementAlgebra) -> list:
    """Degree-0 classes: they span H^1(S,U)_0."""
    t = f"({algebra.slopes[1]})"
    return [
        _one(algebra, "-y E + D", f"{t} y E"),
        _one(algebra, "y", "0"),
        _one(algebra, "0", "x"),
        _one(algebra, "0", "y"),
        _one(algebra, "0", "D"),
    ]


def zeta(algebra: ArrangementAlgebra) -> list:
    """Degree-1 classes: they span H^1(S,U)_1."""
    t = f"({algebra.slopes[1]})"
    f = f"(y^2 + {t} x y)"
    return [
        _one(algebra, "D^2 - 2 y D E + y^2 (E^2 - E)", f"2 {t} y D E + {t} {f} E + {t} y^2 (E - E^2)"),
        _one(algebra, "-y^2 E + y D", f"{t} y^2 E"),
        _one(algebra, "y^2", "0"),
        _one(algebra, "0", "x^2"),
        _one(algebra, "0", "x y"),
        _one(algebra, "0", "x D"),
        _one(algebra, "0", "y D"),
        _one(algebra, "0", "D^2"),
    ]
