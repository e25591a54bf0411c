"""
Multivariable Euclidean Division

Given a Laurent polynomial B and denominator factors c_1, ..., c_k (each
strictly positive in every coordinate), divide B by A = prod_k (1 - t^c_k)
with respect to a coordinate subset S:

    B = C * A + R

where no quotient exponent is <_S 0 and every remainder exponent is <_S a,
a = sum_k c_k. Here b <_S a means b_s < a_s for all s in S. The decomposition
B/A = C + R/A is unique, so every processing order yields the same result.

Two strategies are provided: "factorwise" (one factor at a time with a closed
form per monomial, the default) and "leading-term" (repeatedly subtract a
multiple of A at the maximal remaining monomial).
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from src.util.config import DEFAULT_TERM_CAP
from .poly import Coefficient, Exponent, LaurentAlgebraError, LaurentPoly, VariableMismatchError

logger = logging.getLogger(__name__)

STRATEGIES = ("factorwise", "leading-term")
ORDERS = ("grlex", "lex")


class FactorError(LaurentAlgebraError):
    """Raised when a denominator factor is not strictly positive in every coordinate"""
    pass


class TermBudgetExceeded(Exception):
    """Raised when an enumeration touches more terms than the configured cap"""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded the term budget of {cap}")
        self.what = what
        self.cap = cap


def less_on(b: Sequence[int], a: Sequence[int], subset: Sequence[int]) -> bool:
    """b <_S a"""
    return all(b[s] < a[s] for s in subset)


@dataclass(frozen=True)
class DenominatorFactorList:
    """
    Multiset of exponent vectors c_k standing for prod_k (1 - t^c_k).

    Raises:
        FactorError: If some c_k has a non-positive coordinate
    """

    factors: Tuple[Exponent, ...]
    nvars: int
    den: int = 1

    def __post_init__(self):
        for c in self.factors:
            if len(c) != self.nvars:
                raise VariableMismatchError(f"factor {c} has {len(c)} coordinates, expected {self.nvars}")
            if any(x <= 0 for x in c):
                raise FactorError(f"factor {c} is not strictly positive")

    @classmethod
    def of(cls, factors: Iterable[Sequence[int]], nvars: int, den: int = 1) -> "DenominatorFactorList":
        return cls(tuple(tuple(c) for c in factors), nvars, den)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    @property
    def total(self) -> Exponent:
        """a = sum_k c_k, the exponent of the maximal term of A"""
        return tuple(sum(column) for column in zip(*self.factors)) if self.factors else (0,) * self.nvars

    @property
    def leading_sign(self) -> int:
        return -1 if len(self.factors) % 2 else 1

    def product(self) -> LaurentPoly:
        """A = prod_k (1 - t^c_k)"""
        result = LaurentPoly.one(self.nvars, self.den)
        for c in self.factors:
            result = result * LaurentPoly(self.nvars, self.den, {(0,) * self.nvars: 1, c: -1})
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {"den": self.den, "factors": [list(c) for c in self.factors]}


@dataclass(frozen=True)
class DivisionResult:
    """
    Quotient C and remainder R of B = C * A + R.

    The remainder is None when the division ran with want_remainder=False.
    """

    quotient: LaurentPoly
    remainder: Optional[LaurentPoly]
    subset: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subset": list(self.subset),
            "quotient": self.quotient.to_dict(),
            "remainder": self.remainder.to_dict() if self.remainder is not None else None,
        }


def geometric_lift(c: Sequence[int], k: int, den: int = 1) -> Tuple[LaurentPoly, Exponent]:
    """
    Rewrite 1/(1 - t^c) as (sum_{j<k} t^(jc)) / (1 - t^(kc)).

    Returns:
        The numerator sum_{j=0}^{k-1} t^(jc) and the lifted factor k*c
    """
    if k < 1:
        raise LaurentAlgebraError(f"lift order must be positive, got {k}")
    c = tuple(c)
    numerator = LaurentPoly(len(c), den, {tuple(j * x for x in c): 1 for j in range(k)})
    return numerator, tuple(k * x for x in c)


def taylor_coefficients(
    numerator: LaurentPoly,
    factors: DenominatorFactorList,
    box: Sequence[int],
    term_cap: int = DEFAULT_TERM_CAP,
) -> Dict[Exponent, Coefficient]:
    """
    Series coefficients of numerator / prod(1 - t^c) at every exponent NOT >= box.

    Each exponent b + sum_k m_k c_k is enumerated with a depth-first search over
    the multiplicities m_k; a branch stops as soon as the partial exponent is
    >= box in every coordinate since the factors only increase it.

    Raises:
        TermBudgetExceeded: If more than term_cap partial exponents are visited
    """
    if numerator.nvars != factors.nvars or numerator.den != factors.den:
        raise VariableMismatchError("numerator and factors live over different variables")
    box = tuple(box)
    coefficients: Dict[Exponent, Coefficient] = {}
    gens = factors.factors
    visits = 0

    def below(x: Exponent) -> bool:
        return any(a < b for a, b in zip(x, box))

    for start, coeff in numerator.terms.items():
        stack = [(start, 0)]
        while stack:
            current, index = stack.pop()
            visits += 1
            if visits > term_cap:
                raise TermBudgetExceeded("taylor_coefficients", term_cap)
            if index == len(gens):
                coefficients[current] = coefficients.get(current, 0) + coeff
                continue
            c = gens[index]
            point = current
            while below(point):
                stack.append((point, index + 1))
                point = tuple(a + b for a, b in zip(point, c))

    return {e: c for e, c in coefficients.items() if c}


def _divide_factorwise(
    numerator: LaurentPoly,
    factors: DenominatorFactorList,
    subset: Tuple[int, ...],
    prune: bool,
    term_cap: int,
) -> LaurentPoly:
    order = sorted(factors.factors, key=lambda c: (sum(c), c), reverse=True)
    remaining = [tuple(sum(column) for column in zip(*order[k:])) for k in range(len(order))]

    current: Dict[Exponent, Coefficient] = dict(numerator.terms)
    for k, c in enumerate(order):
        if prune:
            # t^b / prod_{i>=k}(1 - t^c_i) with b <_S sum_{i>=k} c_i has no polynomial part
            current = {b: v for b, v in current.items() if not less_on(b, remaining[k], subset)}
        quotient: Dict[Exponent, Coefficient] = {}
        for b, beta in current.items():
            steps = max(0, max(b[s] // c[s] for s in subset))
            point = b
            for _ in range(steps):
                point = tuple(x - y for x, y in zip(point, c))
                quotient[point] = quotient.get(point, 0) - beta
            if len(quotient) > term_cap:
                raise TermBudgetExceeded("divide", term_cap)
        current = {e: v for e, v in quotient.items() if v}
        logger.debug(f"➗ Factor {k + 1}/{len(order)}: [bold]{len(current)}[/bold] quotient terms")

    return LaurentPoly(numerator.nvars, numerator.den, current)


def _divide_leading_term(
    numerator: LaurentPoly,
    factors: DenominatorFactorList,
    subset: Tuple[int, ...],
    order: str,
    term_cap: int,
) -> Tuple[LaurentPoly, LaurentPoly]:
    a = factors.total
    lead = factors.leading_sign
    divisor = [(tuple(e_i - a_i for e_i, a_i in zip(e, a)), c) for e, c in factors.product().terms.items()]

    def key(e: Exponent):
        inverted = tuple(-x for x in e)
        return (-sum(e), inverted) if order == "grlex" else inverted

    pending: Dict[Exponent, Coefficient] = dict(numerator.terms)
    heap = [(key(e), e) for e in pending]
    heapq.heapify(heap)
    quotient: Dict[Exponent, Coefficient] = {}
    remainder: Dict[Exponent, Coefficient] = {}
    steps = 0

    while heap:
        _, b = heapq.heappop(heap)
        beta = pending.pop(b, 0)
        if not beta:
            continue
        steps += 1
        if steps > term_cap:
            raise TermBudgetExceeded("divide", term_cap)
        if less_on(b, a, subset):
            remainder[b] = beta
            continue
        q = beta * lead
        shift = tuple(x - y for x, y in zip(b, a))
        quotient[shift] = quotient.get(shift, 0) + q
        for offset, coeff in divisor:
            e = tuple(x + y for x, y in zip(shift, offset))
            if e == b:
                continue
            if e not in pending:
                heapq.heappush(heap, (key(e), e))
            pending[e] = pending.get(e, 0) - q * coeff

    return (
        LaurentPoly(numerator.nvars, numerator.den, quotient),
        LaurentPoly(numerator.nvars, numerator.den, remainder),
    )


def divide(
    numerator: LaurentPoly,
    factors: DenominatorFactorList,
    subset: Iterable[int],
    strategy: str = "factorwise",
    order: str = "grlex",
    want_remainder: bool = True,
    term_cap: int = DEFAULT_TERM_CAP,
) -> DivisionResult:
    """
    Divide B by A = prod(1 - t^c) with respect to the coordinate subset S.

    Args:
        numerator: B
        factors: The denominator factors c_k
        subset: Coordinate indices S (nonempty)
        strategy: "factorwise" or "leading-term"
        order: Processing order of the leading-term strategy ("grlex" or "lex")
        want_remainder: With False only the quotient is computed
        term_cap: Budget on stored or processed terms

    Returns:
        DivisionResult with B = C * A + R

    Raises:
        LaurentAlgebraError: On an empty subset or an unknown strategy/order
        TermBudgetExceeded: If the term budget is hit
    """
    subset = tuple(sorted(set(subset)))
    if not subset:
        raise LaurentAlgebraError("comparison subset must be nonempty")
    if any(s < 0 or s >= numerator.nvars for s in subset):
        raise VariableMismatchError(f"subset {subset} out of range for {numerator.nvars} variables")
    if numerator.nvars != factors.nvars or numerator.den != factors.den:
        raise VariableMismatchError("numerator and factors live over different variables")
    if strategy not in STRATEGIES:
        raise LaurentAlgebraError(f"unknown division strategy {strategy!r}")
    if order not in ORDERS:
        raise LaurentAlgebraError(f"unknown processing order {order!r}")

    if not factors.factors:
        # A = 1
        zero = LaurentPoly.zero(numerator.nvars, numerator.den)
        return DivisionResult(numerator, zero if want_remainder else None, subset)

    if strategy == "leading-term":
        quotient, remainder = _divide_leading_term(numerator, factors, subset, order, term_cap)
        return DivisionResult(quotient, remainder if want_remainder else None, subset)

    quotient = _divide_factorwise(numerator, factors, subset, prune=not want_remainder, term_cap=term_cap)
    remainder = None
    if want_remainder:
        remainder = numerator - quotient * factors.product()
    return DivisionResult(quotient, remainder, subset)


def check_division(
    numerator: LaurentPoly,
    factors: DenominatorFactorList,
    subset: Iterable[int],
    result: DivisionResult,
) -> List[str]:
    """
    Verify B = C * A + R, quotient exponents not <_S 0, remainder exponents <_S a.

    Returns:
        A list of violations, empty when the result is valid
    """
    subset = tuple(sorted(set(subset)))
    violations = []
    if result.remainder is None:
        return ["division ran without a remainder"]

    if result.quotient * factors.product() + result.remainder != numerator:
        violations.append("B != C * A + R")

    origin = (0,) * numerator.nvars
    for e in result.quotient.exponents():
        if less_on(e, origin, subset):
            violations.append(f"quotient exponent {e} is <_S 0")

    a = factors.total
    for e in result.remainder.exponents():
        if not less_on(e, a, subset):
            violations.append(f"remainder exponent {e} is not <_S {a}")
    return violations
