"""
Sparse Laurent Polynomials

Exponents are integer-numerator tuples over a fixed denominator d, so a key
(n_1, ..., n_N) stands for t_1^(n_1/d) ... t_N^(n_N/d). Coefficients are ints
or Fractions; zero coefficients are never stored.
"""

from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]


class LaurentAlgebraError(Exception):
    """Base error of the Laurent algebra"""
    pass


class VariableMismatchError(LaurentAlgebraError):
    """Raised when operands live over different variable sets or denominators"""
    pass


def grlex_key(exponent: Exponent) -> Tuple[int, Exponent]:
    return (sum(exponent), exponent)


def _normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def coefficient_string(value: Coefficient) -> Union[int, str]:
    """Integers stay integers; other rationals render as "num/den" """
    value = _normalize(value)
    return value if isinstance(value, int) else str(value)


class LaurentPoly:
    """
    Sparse exact Laurent polynomial in `nvars` variables with exponents in (1/den)Z.

    Iteration yields (exponent, coefficient) pairs in graded-lexicographic
    descending order, which keeps every serialization deterministic.
    """

    __slots__ = ("nvars", "den", "_terms")

    def __init__(self, nvars: int, den: int = 1, terms: Optional[Mapping[Exponent, Coefficient]] = None):
        if den <= 0:
            raise LaurentAlgebraError(f"denominator must be positive, got {den}")
        self.nvars = nvars
        self.den = den
        self._terms: Dict[Exponent, Coefficient] = {}
        if terms:
            for exponent, coeff in terms.items():
                if len(exponent) != nvars:
                    raise VariableMismatchError(f"exponent {exponent} has {len(exponent)} coordinates, expected {nvars}")
                if coeff:
                    self._terms[tuple(exponent)] = _normalize(coeff)

    @classmethod
    def zero(cls, nvars: int, den: int = 1) -> "LaurentPoly":
        return cls(nvars, den)

    @classmethod
    def one(cls, nvars: int, den: int = 1) -> "LaurentPoly":
        return cls(nvars, den, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Coefficient = 1, den: int = 1) -> "LaurentPoly":
        return cls(len(exponent), den, {tuple(exponent): coeff})

    @classmethod
    def from_terms(cls, nvars: int, den: int, terms: Iterable[Tuple[Sequence[int], Coefficient]]) -> "LaurentPoly":
        """Accumulate possibly repeated (exponent, coefficient) pairs"""
        acc: Dict[Exponent, Coefficient] = {}
        for exponent, coeff in terms:
            key = tuple(exponent)
            acc[key] = acc.get(key, 0) + coeff
        return cls(nvars, den, acc)

    @classmethod
    def univariate(cls, coefficients: Sequence[Coefficient], den: int = 1) -> "LaurentPoly":
        """sum_i coefficients[i] t^(i/den) ... with den = 1 this is an ordinary polynomial"""
        return cls(1, den, {(i * den,): c for i, c in enumerate(coefficients) if c})

    # ------------------------------------------------------------------
    # Container protocol

    @property
    def terms(self) -> Dict[Exponent, Coefficient]:
        """A copy of the exponent -> coefficient map"""
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[Exponent, Coefficient]]:
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def __iter__(self) -> Iterator[Tuple[Exponent, Coefficient]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        return self._terms.get(tuple(exponent), 0)

    def exponents(self) -> List[Exponent]:
        return [e for e, _ in self.sorted_terms()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.den == other.den and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, self.den, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly(nvars={self.nvars}, den={self.den}, terms={dict(self.sorted_terms())})"

    # ------------------------------------------------------------------
    # Arithmetic

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if self.nvars != other.nvars or self.den != other.den:
            raise VariableMismatchError(
                f"variable mismatch: ({self.nvars} vars, den {self.den}) vs ({other.nvars} vars, den {other.den})"
            )

    def _with_terms(self, terms: Dict[Exponent, Coefficient]) -> "LaurentPoly":
        result = LaurentPoly(self.nvars, self.den)
        result._terms = {e: _normalize(c) for e, c in terms.items() if c}
        return result

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return self._with_terms(terms)

    def __neg__(self) -> "LaurentPoly":
        return self._with_terms({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) - c
        return self._with_terms(terms)

    def __mul__(self, other: Union["LaurentPoly", int, Fraction]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms: Dict[Exponent, Coefficient] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return self._with_terms(terms)

    __rmul__ = __mul__

    def scale(self, factor: Coefficient) -> "LaurentPoly":
        return self._with_terms({e: c * factor for e, c in self._terms.items()})

    def shift(self, exponent: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exponent"""
        if len(exponent) != self.nvars:
            raise VariableMismatchError(f"shift {tuple(exponent)} has {len(exponent)} coordinates, expected {self.nvars}")
        return self._with_terms({tuple(a + b for a, b in zip(e, exponent)): c for e, c in self._terms.items()})

    def scale_by_monomial(self, exponent: Sequence[int], coeff: Coefficient = 1) -> "LaurentPoly":
        return self.shift(exponent).scale(coeff)

    def restrict(self, predicate: Callable[[Exponent], bool]) -> "LaurentPoly":
        """The terms whose exponent satisfies the predicate"""
        return self._with_terms({e: c for e, c in self._terms.items() if predicate(e)})

    def evaluate_at_one(self) -> Coefficient:
        """P(1, ..., 1): the sum of all coefficients"""
        return _normalize(sum(self._terms.values(), 0))

    def degree(self) -> Optional[Exponent]:
        """Componentwise maximum of the exponents, None for the zero polynomial"""
        if not self._terms:
            return None
        return tuple(max(column) for column in zip(*self._terms))

    # ------------------------------------------------------------------
    # Serialization

    def to_dict(self) -> List[Dict[str, Any]]:
        return [
            {"exp": {"num": list(e), "den": self.den}, "coeff": coefficient_string(c)}
            for e, c in self.sorted_terms()
        ]


def evaluate_at_one(poly: LaurentPoly) -> Coefficient:
    return poly.evaluate_at_one()
