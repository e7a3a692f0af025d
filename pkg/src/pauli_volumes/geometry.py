"""Hilbert-Schmidt geometry of the eigenvalue simplex.

The flat Hilbert-Schmidt metric, restricted to the eigenvalue coordinates of
a generalized Pauli channel, is diagonal:

    g = ((d-1)/d^2) * diag(1, ..., 1, d+1-N)        (N ones, N <= d)

and for N = d+1 (all bases used, lambda_{N+1} pinned to zero) it is
((d-1)/d^2) times the identity on the d+1 remaining coordinates. Volumes in
lambda-space therefore pick up the constant factor sqrt(det g), which is an
exact quadratic surd. :class:`SurdValue` keeps such numbers exact end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .rationals import rational_str, surd_decimal_str


def _square_free_split(n: int) -> tuple[int, int]:
    """Write n = s^2 * r with r square-free; returns (s, r)."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    s, r, f = 1, 1, 2
    while f * f <= n:
        count = 0
        while n % f == 0:
            n //= f
            count += 1
        s *= f ** (count // 2)
        if count % 2:
            r *= f
        f += 1 if f == 2 else 2
    return s, r * n


@dataclass(frozen=True)
class SurdValue:
    """An exact number coeff * sqrt(radicand), kept canonical.

    Canonical means the radicand is a square-free positive integer (so a
    rational value always has radicand 1) and zero is (0, 1). Multiplication
    and division stay inside the representation; mixed-radicand addition does
    not and is deliberately unsupported.
    """

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.coeff, float):
            raise TypeError("floating-point coefficient rejected")
        coeff = Fraction(self.coeff)
        s, r = _square_free_split(int(self.radicand))
        coeff *= s
        if r == 0 or coeff == 0:
            coeff, r = Fraction(0), 1
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", r)

    @classmethod
    def from_rational(cls, q: Fraction | int) -> "SurdValue":
        return cls(Fraction(q), 1)

    @classmethod
    def sqrt(cls, q: Fraction | int) -> "SurdValue":
        """Exact square root of a non-negative rational: sqrt(p/q) = sqrt(pq)/q."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("cannot take a real square root of a negative rational")
        return cls(Fraction(1, q.denominator), q.numerator * q.denominator)

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"value {self} is irrational")
        return self.coeff

    def __mul__(self, other: "SurdValue | Fraction | int") -> "SurdValue":
        if isinstance(other, SurdValue):
            g = gcd(self.radicand, other.radicand)
            return SurdValue(
                self.coeff * other.coeff * g,
                (self.radicand // g) * (other.radicand // g),
            )
        return SurdValue(self.coeff * Fraction(other), self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other: "SurdValue | Fraction | int") -> "SurdValue":
        if isinstance(other, SurdValue):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero surd")
            inverse = SurdValue(Fraction(1, other.coeff * other.radicand), other.radicand)
            return self * inverse
        return SurdValue(self.coeff / Fraction(other), self.radicand)

    def __pow__(self, n: int) -> "SurdValue":
        if n < 0:
            raise ValueError("negative powers unsupported; divide instead")
        out = SurdValue(Fraction(1), 1)
        for _ in range(n):
            out = out * self
        return out

    def __neg__(self) -> "SurdValue":
        return SurdValue(-self.coeff, self.radicand)

    def __float__(self) -> float:
        return float(self.coeff) * float(self.radicand) ** 0.5

    def __str__(self) -> str:
        if self.is_rational:
            return rational_str(self.coeff)
        return f"{rational_str(self.coeff)}*sqrt({self.radicand})"

    def decimal(self, digits: int = 20) -> str:
        return surd_decimal_str(self.coeff, self.radicand, digits)

    def to_json_dict(self) -> dict:
        return {"coeff": rational_str(self.coeff), "radicand": self.radicand}


@dataclass(frozen=True)
class MetricData:
    """Diagonal of the induced metric in eigenvalue coordinates."""

    d: int
    N: int
    diag: tuple[Fraction, ...]

    def det(self) -> Fraction:
        out = Fraction(1)
        for entry in self.diag:
            out *= entry
        return out


def _check_dims(d: int, N: int) -> None:
    if d < 2:
        raise ValueError(f"d must be >= 2 (got {d})")
    if not 3 <= N <= d + 1:
        raise ValueError(f"N must satisfy 3 <= N <= d+1 (got N={N}, d={d})")


def metric(d: int, N: int) -> MetricData:
    """Induced metric diagonal: N entries (d-1)/d^2 plus, for N <= d, a final
    entry scaled by the multiplicity d+1-N of the left-out directions."""
    _check_dims(d, N)
    unit = Fraction(d - 1, d * d)
    if N == d + 1:
        return MetricData(d, N, (unit,) * (d + 1))
    return MetricData(d, N, (unit,) * N + (unit * (d + 1 - N),))


def volume_prefactor(d: int, N: int) -> SurdValue:
    """sqrt(det g): the constant converting lambda-volume to metric volume."""
    _check_dims(d, N)
    base = SurdValue.sqrt(Fraction(d - 1, d * d))
    if N == d + 1:
        return base ** (d + 1)
    return SurdValue.sqrt(d + 1 - N) * base ** (N + 1)


def vp_volume(d: int, N: int) -> SurdValue:
    """Closed-form metric volume of the necessary-positivity box.

    sqrt((d+1-N)/(d-1)^(N+1)) for N <= d, and 1/sqrt((d-1)^(d+1)) when
    N = d+1; both are the box side d/(d-1) per coordinate times the metric
    prefactor, reduced.
    """
    _check_dims(d, N)
    if N == d + 1:
        return SurdValue.sqrt(Fraction(1, (d - 1) ** (d + 1)))
    return SurdValue.sqrt(Fraction(d + 1 - N, (d - 1) ** (N + 1)))
