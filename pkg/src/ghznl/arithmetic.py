"""Exact complex-rational (Gaussian rational) arithmetic.

State amplitudes for tuples whose weight divides 4 only ever involve the
fourth roots of unity {1, i, -1, -i}, so every coefficient that appears in an
orthogonality or nullspace computation is a complex number with rational real
and imaginary parts.  This module provides that number type; anything with
other roots of unity falls back to ordinary ``complex``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


GR_ZERO = GaussianRational(0, 0)
GR_ONE = GaussianRational(1, 0)
GR_I = GaussianRational(0, 1)

_I_POWERS = (
    GaussianRational(1, 0),
    GaussianRational(0, 1),
    GaussianRational(-1, 0),
    GaussianRational(0, -1),
)


def i_power(k: int) -> GaussianRational:
    """i**k as an exact Gaussian rational."""
    return _I_POWERS[k % 4]


def exact_weight(w: int) -> bool:
    """True when the w-th roots of unity are Gaussian rationals (w | 4)."""
    return w >= 1 and 4 % w == 0


def root_of_unity(w: int, exponent: int, exact: bool):
    """exp(2*pi*1j*exponent/w), exact when requested (requires w | 4)."""
    if exact:
        if not exact_weight(w):
            raise ValueError(f"weight {w} has no Gaussian-rational roots of unity")
        return i_power((4 // w) * exponent)
    return cmath.exp(2j * cmath.pi * exponent / w)
