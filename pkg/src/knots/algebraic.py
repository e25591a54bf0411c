"""
Algebraic Knots

Newton pairs, linking pairs, the semigroup of the plane curve singularity,
the Alexander polynomial and the polynomial part of the monodromy
zeta-function Delta(t)/(1 - t).
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, prod
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError
from sympy import Poly, ZZ, symbols

from src.laurent.division import DenominatorFactorList, divide
from src.laurent.poly import LaurentPoly

logger = logging.getLogger(__name__)

t = symbols("t")

Pair = Tuple[int, int]


class KnotDataError(Exception):
    """Raised when Newton pairs violate p_i >= 2, q_i >= 1, q_1 > p_1 or gcd(p_i, q_i) = 1"""
    pass


def validate_newton_pairs(newton: Sequence[Sequence[int]]) -> List[Pair]:
    """Check the Newton-pair constraints and return the pairs as int tuples"""
    pairs = [tuple(int(x) for x in pair) for pair in newton]
    if not pairs:
        raise KnotDataError("at least one Newton pair is required")
    for i, pair in enumerate(pairs):
        if len(pair) != 2:
            raise KnotDataError(f"Newton pair {i + 1} must have two entries, got {pair}")
        p, q = pair
        if p < 2:
            raise KnotDataError(f"Newton pair {i + 1}: p = {p} must be at least 2")
        if q < 1:
            raise KnotDataError(f"Newton pair {i + 1}: q = {q} must be positive")
        if gcd(p, q) != 1:
            raise KnotDataError(f"Newton pair {i + 1}: gcd({p}, {q}) != 1")
    p1, q1 = pairs[0]
    if q1 <= p1:
        raise KnotDataError(f"first Newton pair must satisfy q_1 > p_1, got ({p1}, {q1})")
    return pairs


def linking_pairs(newton: Sequence[Sequence[int]]) -> List[Pair]:
    """
    Linking pairs (p_i, a_i): a_1 = q_1 and a_{i+1} = q_{i+1} + a_i p_i p_{i+1}.

    Raises:
        KnotDataError: If the Newton pairs are invalid
    """
    pairs = validate_newton_pairs(newton)
    result = []
    a = None
    previous_p = None
    for p, q in pairs:
        a = q if a is None else q + a * previous_p * p
        result.append((p, a))
        previous_p = p
    return result


@dataclass(frozen=True)
class NumericalSemigroup:
    """
    Numerical semigroup given by generators, with its gaps below the conductor.

    Attributes:
        generators: The Hilbert basis
        conductor: Smallest c with c + N contained in the semigroup (equals mu)
        gaps: Non-members, ascending
    """

    generators: Tuple[int, ...]
    conductor: int
    gaps: Tuple[int, ...]

    @property
    def mu(self) -> int:
        return self.conductor

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    def __contains__(self, n: int) -> bool:
        return n >= 0 and (n >= self.conductor or n not in self.gaps)

    def members_below(self, bound: int) -> List[int]:
        return [n for n in range(bound) if n in self]

    def is_symmetric(self) -> bool:
        """l in M iff mu - 1 - l not in M, for 0 <= l <= mu - 1"""
        return all((n in self) != ((self.mu - 1 - n) in self) for n in range(self.mu))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": list(self.generators),
            "gaps": list(self.gaps),
            "mu": self.mu,
            "frobenius": self.frobenius,
        }


def numerical_semigroup(generators: Sequence[int]) -> NumericalSemigroup:
    """
    Membership by the coin-problem dynamic programme, stopped once min(generators)
    consecutive members are found.

    Raises:
        KnotDataError: If the generators are not positive or not coprime
    """
    gens = tuple(sorted(set(int(g) for g in generators)))
    if not gens or gens[0] <= 0:
        raise KnotDataError(f"semigroup generators must be positive, got {generators}")
    if reduce(gcd, gens) != 1:
        raise KnotDataError(f"semigroup generators {gens} are not coprime")

    smallest = gens[0]
    member = [True]
    run = 1
    n = 0
    while run < smallest:
        n += 1
        is_member = any(n >= g and member[n - g] for g in gens)
        member.append(is_member)
        run = run + 1 if is_member else 0
    conductor = n - smallest + 1 if smallest > 1 else 0
    gaps = tuple(k for k in range(conductor) if not member[k])
    return NumericalSemigroup(generators=gens, conductor=conductor, gaps=gaps)


def _one_minus(power: int) -> Poly:
    return Poly(1 - t**power, t, domain=ZZ)


@dataclass(frozen=True)
class AlgebraicKnot:
    """
    Algebraic knot given by its Newton pairs.

    Raises:
        KnotDataError: If the Newton pairs are invalid
    """

    newton_pairs: Tuple[Pair, ...]

    def __post_init__(self):
        object.__setattr__(self, "newton_pairs", tuple(validate_newton_pairs(self.newton_pairs)))

    @classmethod
    def parse(cls, text: str) -> "AlgebraicKnot":
        return cls(tuple(parse_newton_pairs(text)))

    @property
    def r(self) -> int:
        return len(self.newton_pairs)

    @cached_property
    def linking_pairs(self) -> List[Pair]:
        return linking_pairs(self.newton_pairs)

    @property
    def multiplicity(self) -> int:
        """m_f = a_r p_r, the multiplicity of the (-1)-vertex"""
        p, a = self.linking_pairs[-1]
        return a * p

    def tail_product(self, i: int) -> int:
        """p_{i+1} ... p_r for a 1-based index i"""
        return prod(p for p, _ in self.linking_pairs[i:])

    @cached_property
    def semigroup(self) -> NumericalSemigroup:
        """Generated by p_1...p_r and a_i p_{i+1}...p_r for i = 1..r"""
        ps = [p for p, _ in self.linking_pairs]
        generators = [prod(ps)] + [a * self.tail_product(i) for i, (_, a) in enumerate(self.linking_pairs, start=1)]
        return numerical_semigroup(generators)

    @property
    def mu(self) -> int:
        return self.semigroup.mu

    @cached_property
    def alexander(self) -> Poly:
        """Delta(t) from the linking pairs, normalized by Delta(1) = 1"""
        numerator = _one_minus(1)
        denominator = _one_minus(prod(p for p, _ in self.linking_pairs))
        for i, (p, a) in enumerate(self.linking_pairs, start=1):
            tail = self.tail_product(i)
            numerator = numerator * _one_minus(a * p * tail)
            denominator = denominator * _one_minus(a * tail)
        quotient, remainder = numerator.div(denominator)
        if not remainder.is_zero:
            raise KnotDataError(f"Alexander quotient is not a polynomial for {self.newton_pairs}")
        return quotient

    def alexander_coefficients(self) -> List[int]:
        """Coefficients of Delta(t) by ascending degree"""
        return [int(c) for c in reversed(self.alexander.all_coeffs())]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "newton_pairs": [list(pair) for pair in self.newton_pairs],
            "linking_pairs": [list(pair) for pair in self.linking_pairs],
            "multiplicity": self.multiplicity,
            "semigroup": self.semigroup.to_dict(),
            "delta": delta_invariant(self),
            "alexander": self.alexander_coefficients(),
            "monodromy_polynomial_part": monodromy_polynomial_part(self).to_dict(),
            "q_coefficients": q_coefficients_from_gaps(self),
        }


def semigroup(knot: AlgebraicKnot) -> NumericalSemigroup:
    return knot.semigroup


def alexander(knot: AlgebraicKnot) -> LaurentPoly:
    """Delta(t) as a one-variable LaurentPoly"""
    return LaurentPoly.univariate(knot.alexander_coefficients())


def monodromy_polynomial_part(knot: AlgebraicKnot) -> LaurentPoly:
    """-sum over the gaps of t^l"""
    return LaurentPoly(1, 1, {(g,): -1 for g in knot.semigroup.gaps})


def monodromy_polynomial_part_by_division(knot: AlgebraicKnot) -> LaurentPoly:
    """Quotient of Delta(t) by (1 - t)"""
    factors = DenominatorFactorList.of([(1,)], nvars=1)
    return divide(alexander(knot), factors, [0], want_remainder=False).quotient


def delta_invariant(knot: AlgebraicKnot) -> int:
    """mu / 2, the Seifert genus"""
    return knot.mu // 2


def q_coefficients_from_gaps(knot: AlgebraicKnot) -> List[int]:
    """q_i = #{n not in M : n > i} for 0 <= i <= mu - 2"""
    gaps = knot.semigroup.gaps
    return [sum(1 for g in gaps if g > i) for i in range(knot.mu - 1)]


_PAIR = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


def parse_newton_pairs(text: str) -> List[Pair]:
    """
    Parse "p,q;p,q;..." into Newton pairs.

    Raises:
        KnotDataError: On malformed text or invalid pairs
    """
    chunks = [chunk for chunk in text.split(";") if chunk.strip()]
    if not chunks:
        raise KnotDataError(f"no Newton pairs in {text!r}")
    pairs = []
    for chunk in chunks:
        match = _PAIR.match(chunk)
        if not match:
            raise KnotDataError(f"malformed Newton pair {chunk.strip()!r}, expected \"p,q\"")
        pairs.append((int(match.group(1)), int(match.group(2))))
    return validate_newton_pairs(pairs)


class KnotDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    newton_pairs: List[Tuple[StrictInt, StrictInt]] = Field(min_length=1)
    name: Optional[str] = None

    def to_knot(self) -> AlgebraicKnot:
        return AlgebraicKnot(tuple(tuple(pair) for pair in self.newton_pairs))


def knot_from_document(raw: Any) -> AlgebraicKnot:
    """
    Build a knot from a parsed JSON knot document.

    Raises:
        KnotDataError: On schema violations or invalid pairs
    """
    try:
        document = KnotDocument.model_validate(raw)
    except ValidationError as e:
        raise KnotDataError(f"invalid knot document: {e.errors()[0]['msg']} at {list(e.errors()[0]['loc'])}")
    return document.to_knot()
