"""
Cyclotomic Values
Exact arithmetic in Q(zeta_s) = Q[x]/(Phi_s(x)): coefficient vectors over the
basis 1, zeta, ..., zeta^{phi(s)-1}. Values built from group-ring counts modulo
x^s - 1 are reduced once, at the end.
"""
import cmath
import logging
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import List, Sequence, Tuple, Union

from sympy import Poly, Symbol, cyclotomic_poly

from errors import DomainError

logger = logging.getLogger("Cyclotomic")

_x = Symbol("x")

Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_coefficients(s: int) -> Tuple[int, ...]:
    """Coefficients of Phi_s, constant term first (monic, degree phi(s))."""
    if s < 1:
        raise DomainError(f"Root order must be positive, got {s}")
    coeffs = Poly(cyclotomic_poly(s, _x), _x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(vector: Sequence, s: int) -> Tuple:
    phi = cyclotomic_coefficients(s)
    degree = len(phi) - 1
    work = list(vector)
    for top in range(len(work) - 1, degree - 1, -1):
        lead = work[top]
        if lead == 0:
            continue
        for offset, p in enumerate(phi):
            work[top - degree + offset] -= lead * p
    work = work[:degree] + [0] * max(0, degree - len(work))
    return tuple(Fraction(c) if isinstance(c, (int, Fraction)) else c for c in work)


class CyclotomicValue:
    """Element of Q(zeta_s). Equality is coefficient equality."""

    __slots__ = ("s", "coeffs")

    def __init__(self, s: int, coeffs: Sequence):
        self.s = s
        self.coeffs = _reduce(coeffs, s)

    # --- constructors ---

    @classmethod
    def rational(cls, s: int, value: Number) -> "CyclotomicValue":
        return cls(s, [value])

    @classmethod
    def zero(cls, s: int) -> "CyclotomicValue":
        return cls(s, [0])

    @classmethod
    def one(cls, s: int) -> "CyclotomicValue":
        return cls(s, [1])

    @classmethod
    def root(cls, s: int, exponent: int) -> "CyclotomicValue":
        """zeta_s ** exponent."""
        vector = [0] * s
        vector[exponent % s] = 1
        return cls(s, vector)

    @classmethod
    def from_group_ring(cls, s: int, counts: Sequence) -> "CyclotomicValue":
        """sum_j counts[j] zeta^j, counts indexed modulo s."""
        if len(counts) != s:
            raise DomainError(f"Group-ring vector of length {len(counts)} for s={s}")
        return cls(s, counts)

    # --- arithmetic ---

    def _coerce(self, other) -> "CyclotomicValue":
        if isinstance(other, CyclotomicValue):
            if other.s != self.s:
                raise DomainError(f"Cannot combine values of Q(zeta_{self.s}) and Q(zeta_{other.s})")
            return other
        if isinstance(other, Rational):
            return CyclotomicValue.rational(self.s, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicValue(self.s, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue(self.s, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return CyclotomicValue(self.s, product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Rational) or other == 0:
            raise DomainError("Cyclotomic values divide by nonzero rationals only")
        return CyclotomicValue(self.s, [a / Fraction(other) for a in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("Negative powers are not supported")
        out, base = CyclotomicValue.one(self.s), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "CyclotomicValue":
        """zeta^j -> zeta^{-j}."""
        vector = [Fraction(0)] * self.s
        for j, c in enumerate(self.coeffs):
            vector[(-j) % self.s] += c
        return CyclotomicValue(self.s, vector)

    # --- inspection ---

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is not rational")
        return Fraction(self.coeffs[0]) if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        return sum(complex(c) * cmath.exp(2j * cmath.pi * j / self.s) for j, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicValue) and other.s != self.s:
            return False
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.to_fraction())
        return hash((self.s, self.coeffs))

    def to_json(self) -> dict:
        return {"s": self.s, "coefficients": [_render(c) for c in self.coeffs]}

    def sort_key(self) -> Tuple:
        return tuple(self.coeffs)

    def __str__(self) -> str:
        if self.is_rational:
            return _render(self.to_fraction())
        terms: List[str] = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            power = "" if j == 0 else ("ζ" if j == 1 else f"ζ^{j}")
            if not power:
                terms.append(_render(c))
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"{_render(c)}{power}")
        return " + ".join(terms).replace("+ -", "- ") + f" (ζ=e^(2πi/{self.s}))"

    def __repr__(self) -> str:
        return f"CyclotomicValue({self.s}, {list(map(_render, self.coeffs))})"


def _render(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)
