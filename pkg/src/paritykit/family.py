"""One-parameter family of curves sharing their mod-3 representation with y^2 = x^3 - Dx."""

from __future__ import annotations

from dataclasses import dataclass

from .weierstrass import CurveModel, discriminant


@dataclass(frozen=True)
class FamilyParams:
    D: int
    t: int

    def __post_init__(self) -> None:
        if self.D < 1:
            raise ValueError("D must be a positive integer, got %d" % self.D)


def base_curve(D: int) -> CurveModel:
    """y^2 = x^3 - Dx."""
    if D < 1:
        raise ValueError("D must be a positive integer, got %d" % D)
    return CurveModel(0, 0, 0, -D, 0)


def member(D: int, t: int) -> CurveModel:
    """The twist-family specialization at t; member(D, 0) is the base curve."""
    params = FamilyParams(D, t)
    d, s = params.D, params.t
    a4 = d * (27 * d * d * s**4 - 18 * d * s * s - 1)
    a6 = 4 * d * d * s * (27 * d * d * s**4 + 1)
    c = CurveModel(0, 0, 0, a4, a6)
    if discriminant(c) == 0:
        raise ValueError("singular specialization at (D=%d, t=%d)" % (d, s))
    return c
