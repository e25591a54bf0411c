"""
Exact rational vectors over a shared denominator.

Lattice vectors are stored as integer numerators over the global denominator
det(Gamma); every element of the dual lattice clears to integers after scaling
by the determinant, so hashing and comparison stay exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

Rational = Union[int, Fraction]


def rational_string(value: Rational) -> str:
    """Exact "num/den" (or "num") rendering used in every report"""
    return str(Fraction(value))


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class RationalVector:
    """
    Coordinates in the E_v basis, stored as numerators over a common denominator.

    Attributes:
        num: Integer numerators, one per vertex in file order
        den: Positive common denominator
    """

    num: Tuple[int, ...]
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")

    @classmethod
    def from_fractions(cls, values: Iterable[Rational], den: int) -> "RationalVector":
        """Build a vector over `den`; raises ValueError if a value does not clear"""
        num = []
        for value in values:
            scaled = Fraction(value) * den
            if scaled.denominator != 1:
                raise ValueError(f"{value} is not a multiple of 1/{den}")
            num.append(int(scaled))
        return cls(tuple(num), den)

    @classmethod
    def zero(cls, size: int, den: int) -> "RationalVector":
        return cls((0,) * size, den)

    @classmethod
    def integral(cls, values: Iterable[int], den: int) -> "RationalVector":
        return cls(tuple(int(v) * den for v in values), den)

    def __len__(self) -> int:
        return len(self.num)

    def __getitem__(self, index: int) -> Fraction:
        return Fraction(self.num[index], self.den)

    def coordinates(self) -> List[Fraction]:
        return [Fraction(n, self.den) for n in self.num]

    def _check(self, other: "RationalVector"):
        if self.den != other.den or len(self.num) != len(other.num):
            raise ValueError("vectors live over different denominators or dimensions")

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check(other)
        return RationalVector(tuple(a + b for a, b in zip(self.num, other.num)), self.den)

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check(other)
        return RationalVector(tuple(a - b for a, b in zip(self.num, other.num)), self.den)

    def __neg__(self) -> "RationalVector":
        return RationalVector(tuple(-a for a in self.num), self.den)

    def scale(self, factor: int) -> "RationalVector":
        return RationalVector(tuple(factor * a for a in self.num), self.den)

    def __ge__(self, other: "RationalVector") -> bool:
        """Componentwise comparison"""
        self._check(other)
        return all(a >= b for a, b in zip(self.num, other.num))

    def floor(self) -> "RationalVector":
        d = self.den
        return RationalVector(tuple((a // d) * d for a in self.num), d)

    def ceil(self) -> "RationalVector":
        d = self.den
        return RationalVector(tuple(ceil_div(a, d) * d for a in self.num), d)

    def fractional_part(self) -> "RationalVector":
        d = self.den
        return RationalVector(tuple(a % d for a in self.num), d)

    def is_integral(self) -> bool:
        return all(a % self.den == 0 for a in self.num)

    def to_dict(self) -> Dict[str, Any]:
        return {"num": list(self.num), "den": self.den}


@dataclass(frozen=True)
class ReducedExponent:
    """
    Node coordinates of a lattice vector: one numerator per node over det(Gamma).
    """

    num: Tuple[int, ...]
    den: int

    def values(self) -> List[Fraction]:
        return [Fraction(n, self.den) for n in self.num]

    def __add__(self, other: "ReducedExponent") -> "ReducedExponent":
        if self.den != other.den or len(self.num) != len(other.num):
            raise ValueError("exponents live over different denominators or node sets")
        return ReducedExponent(tuple(a + b for a, b in zip(self.num, other.num)), self.den)

    def to_dict(self) -> Dict[str, Any]:
        return {"num": list(self.num), "den": self.den}


def exponent_strings(num: Sequence[int], den: int) -> List[str]:
    return [rational_string(Fraction(n, den)) for n in num]
