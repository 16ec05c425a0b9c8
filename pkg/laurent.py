"""
Sparse Laurent polynomials in v with exact integer coefficients.

A polynomial is stored as a dictionary {degree: coefficient} with zero
coefficients trimmed, the same shape used for Burau-type computations.

>>> p = LaurentPolynomial.from_dict({3: 1, 1: 1})
>>> str(p)
'v^3+v'
>>> str(p * LaurentPolynomial.monomial(-1))
'v^2+1'
"""

import re
from typing import Dict, Iterator, List, Tuple, Union

from errors import ContractViolationError, ParameterError

__all__ = ["LaurentPolynomial", "ZERO", "ONE", "V", "V_INV"]

_TERM = re.compile(r"([+-]?)(\d*)(v(?:\^(-?\d+))?)?")


def _trim(coeffs: Dict[int, int]) -> Dict[int, int]:
    """Remove all zero entries."""
    return {deg: c for deg, c in coeffs.items() if c != 0}


class LaurentPolynomial:
    """Immutable element of Z[v, v^-1]"""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Dict[int, int] = None):
        self._coeffs: Dict[int, int] = _trim(coeffs or {})
        self._hash = None

    # Constructors

    @classmethod
    def from_dict(cls, coeffs: Dict[int, int]) -> "LaurentPolynomial":
        return cls({int(deg): int(c) for deg, c in coeffs.items()})

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({degree: coeff})

    @classmethod
    def constant(cls, value: int) -> "LaurentPolynomial":
        return cls({0: value})

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        """Read the normal form produced by ``str``, e.g. ``v^4+2v^2+1``."""
        compact = text.replace(" ", "")
        if compact in ("", "0"):
            return cls()
        coeffs: Dict[int, int] = {}
        pos = 0
        while pos < len(compact):
            match = _TERM.match(compact, pos)
            if match is None or match.end() == pos:
                raise ParameterError(f"cannot parse Laurent polynomial {text!r}")
            sign, digits, var, exp = match.groups()
            if not digits and not var:
                raise ParameterError(f"cannot parse Laurent polynomial {text!r}")
            coeff = int(digits) if digits else 1
            if sign == "-":
                coeff = -coeff
            degree = 0 if not var else (int(exp) if exp is not None else 1)
            coeffs[degree] = coeffs.get(degree, 0) + coeff
            pos = match.end()
        return cls(coeffs)

    @classmethod
    def from_json(cls, data: List[List[Union[int, str]]]) -> "LaurentPolynomial":
        return cls({int(deg): int(c) for deg, c in data})

    # Accessors

    def coefficient(self, degree: int) -> int:
        return self._coeffs.get(degree, 0)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._coeffs.items()))

    def to_dict(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def degree(self) -> int:
        """Top degree; raises on the zero polynomial."""
        if not self._coeffs:
            raise ParameterError("the zero polynomial has no degree")
        return max(self._coeffs)

    def valuation(self) -> int:
        """Bottom degree; raises on the zero polynomial."""
        if not self._coeffs:
            raise ParameterError("the zero polynomial has no valuation")
        return min(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def evaluate(self, value: int = 1) -> int:
        if value == 1:
            return sum(self._coeffs.values())
        return sum(c * value ** deg for deg, c in self._coeffs.items())

    def to_json(self) -> List[List[Union[int, str]]]:
        return [[deg, str(c)] for deg, c in self.items()]

    # Ring structure

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for deg, c in other._coeffs.items():
            out[deg] = out.get(deg, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({deg: -c for deg, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[int, int] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            if not self.is_monomial() or abs(next(iter(self._coeffs.values()))) != 1:
                raise ParameterError("only unit monomials have negative powers")
            (deg, c), = self._coeffs.items()
            return LaurentPolynomial({deg * exponent: c ** abs(exponent)})
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by v^k."""
        return LaurentPolynomial({deg + k: c for deg, c in self._coeffs.items()})

    def bar(self) -> "LaurentPolynomial":
        """The involution v -> v^-1."""
        return LaurentPolynomial({-deg: c for deg, c in self._coeffs.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """
        Exact quotient self / other in Z[v, v^-1].

        Raises ContractViolationError when the division leaves a remainder.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        top, lead = other.degree(), other.coefficient(other.degree())
        floor = self.valuation() - other.valuation()
        quotient: Dict[int, int] = {}
        rest = self
        while not rest.is_zero():
            deg = rest.degree() - top
            c, r = divmod(rest.coefficient(rest.degree()), lead)
            if r or deg < floor:
                raise ContractViolationError(f"{self} is not divisible by {other}")
            quotient[deg] = c
            rest = rest - other.shift(deg) * c
        return LaurentPolynomial(quotient)

    # Comparison

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    # Printing

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for deg, c in sorted(self._coeffs.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if deg == 0:
                body = str(mag)
            else:
                var = "v" if deg == 1 else f"v^{deg}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append(sign + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial.constant(1)
V = LaurentPolynomial.monomial(1)
V_INV = LaurentPolynomial.monomial(-1)
