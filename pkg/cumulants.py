"""
Cumulants
Moment sequences, classical and free cumulants by Möbius inversion over P(n)
and NC(n), moment-level convolutions, truncated R- and Cauchy-transform series,
and the Bercovici-Pata correspondence.

Sums over partitions are grouped by block type: M_pi and k_pi only depend on
the multiset of block sizes, so each order needs one table of
(count, sum of mu(pi, 1_n)) per type.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Basic, expand

from cyclotomic import CyclotomicValue
from errors import CapacityError, DomainError, ShapeError
from partition_core import (
    ALL, NONCROSSING, Partition, enumerate_partitions, mobius, mobius_noncrossing, one_block,
)

logger = logging.getLogger("Cumulants")

MAX_ORDER = 10


def _clean(x):
    if isinstance(x, Basic):
        return expand(x)
    if isinstance(x, Rational) and not isinstance(x, Fraction):
        return Fraction(x)
    return x


def _same(a, b) -> bool:
    if isinstance(a, Basic) or isinstance(b, Basic):
        return expand(a - b) == 0
    return a == b


def render_value(x):
    """JSON form of an exact value: 'p/q' strings, sympy text, cyclotomic vectors."""
    if isinstance(x, CyclotomicValue):
        return x.to_json() if not x.is_rational else render_value(x.to_fraction())
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return str(x)


@dataclass
class MomentSequence:
    """
    M_1..M_n (M_0 = 1 implicitly). Complex laws carry colored moments keyed by
    the color word ('oob', ...).
    """
    values: Tuple = ()
    colored: Dict[str, object] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        self.values = tuple(_clean(v) for v in self.values)

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int):
        if k == 0:
            return 1
        if not 1 <= k <= len(self.values):
            raise DomainError(f"Moment of order {k} not available (have 1..{len(self.values)})")
        return self.values[k - 1]

    def __len__(self) -> int:
        return len(self.values)

    def truncated(self, n: int) -> "MomentSequence":
        if n > len(self.values):
            raise ShapeError(f"Cannot truncate {len(self.values)} moments to {n}")
        return MomentSequence(self.values[:n], label=self.label)

    def equals(self, other: "MomentSequence", n: Optional[int] = None) -> bool:
        n = min(len(self), len(other)) if n is None else n
        if len(self) < n or len(other) < n:
            return False
        return all(_same(a, b) for a, b in zip(self.values[:n], other.values[:n]))

    def scaled(self, c) -> "MomentSequence":
        """Moments of c X."""
        return MomentSequence([c ** k * m for k, m in enumerate(self.values, 1)], label=f"{c}*{self.label}")

    def shifted(self, d) -> "MomentSequence":
        """Moments of X + d."""
        out = []
        for k in range(1, len(self.values) + 1):
            out.append(sum((comb(k, j) * self[j] * d ** (k - j) for j in range(k + 1)), 0))
        return MomentSequence(out, label=f"{self.label}+{d}")

    def to_json(self) -> Dict:
        doc = {"label": self.label, "moments": [render_value(v) for v in self.values]}
        if self.colored:
            doc["colored"] = {word: render_value(v) for word, v in self.colored.items()}
        return doc


@dataclass
class CumulantSequence:
    """k_1..k_n (classical) or kappa_1..kappa_n (free)."""
    values: Tuple = ()
    free: bool = False

    def __post_init__(self):
        self.values = tuple(_clean(v) for v in self.values)

    def __getitem__(self, n: int):
        if not 1 <= n <= len(self.values):
            raise DomainError(f"Cumulant of order {n} not available (have 1..{len(self.values)})")
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __add__(self, other: "CumulantSequence") -> "CumulantSequence":
        if self.free != other.free:
            raise DomainError("Cannot add classical and free cumulants")
        n = min(len(self), len(other))
        return CumulantSequence([a + b for a, b in zip(self.values[:n], other.values[:n])], self.free)

    def equals(self, other: "CumulantSequence") -> bool:
        return len(self) == len(other) and all(_same(a, b) for a, b in zip(self.values, other.values))

    def to_json(self) -> Dict:
        return {"free": self.free, "cumulants": [render_value(v) for v in self.values]}


# ============ TYPE TABLES ============

def _check_order(n: int):
    if n > MAX_ORDER:
        raise CapacityError(f"Cumulant transforms are supported up to order {MAX_ORDER}, got {n}")
    if n < 0:
        raise DomainError(f"Order must be nonnegative, got {n}")


@lru_cache(maxsize=None)
def _type_table(n: int, noncrossing: bool) -> Dict[Tuple[int, ...], Tuple[int, int]]:
    """{block sizes: (number of partitions, sum of mu(pi, 1_n))} over P(n) or NC(n)."""
    top = one_block(n)
    table: Dict[Tuple[int, ...], List[int]] = {}
    for pi in enumerate_partitions(n, NONCROSSING if noncrossing else ALL):
        mu = mobius_noncrossing(pi, top) if noncrossing else mobius(pi, top)
        entry = table.setdefault(pi.block_sizes(), [0, 0])
        entry[0] += 1
        entry[1] += mu
    logger.info(f"Type table for {'NC' if noncrossing else 'P'}({n}): {len(table)} types")
    return {sizes: (count, mu) for sizes, (count, mu) in table.items()}


def _product(seq, sizes):
    out = 1
    for size in sizes:
        out = out * seq[size - 1]
    return out


def multiplicative_extension(values: Sequence, pi: Partition):
    """f_pi = prod over blocks of f_{|block|} for a one-row partition."""
    return _clean(_product(list(values), [len(b) for b in pi.blocks]))


def _values(seq) -> List:
    return list(seq.values) if isinstance(seq, (MomentSequence, CumulantSequence)) else list(seq)


def _cumulants(m, n: int, free: bool) -> CumulantSequence:
    _check_order(n)
    values = _values(m)
    if len(values) < n:
        raise ShapeError(f"Need {n} moments, got {len(values)}")
    out = []
    for j in range(1, n + 1):
        total = 0
        for sizes, (_, mu) in _type_table(j, free).items():
            if mu:
                total = total + mu * _product(values, sizes)
        out.append(total)
    return CumulantSequence(out, free)


def _moments(k, n: int, free: bool, label: str = "") -> MomentSequence:
    _check_order(n)
    values = _values(k)
    if len(values) < n:
        raise ShapeError(f"Need {n} cumulants, got {len(values)}")
    out = []
    for j in range(1, n + 1):
        total = 0
        for sizes, (count, _) in _type_table(j, free).items():
            total = total + count * _product(values, sizes)
        out.append(total)
    return MomentSequence(out, label=label)


def moments_to_cumulants_classical(m, n: int) -> CumulantSequence:
    """k_n = sum over pi in P(n) of mu(pi, 1_n) M_pi."""
    return _cumulants(m, n, free=False)


def cumulants_to_moments_classical(k, n: int) -> MomentSequence:
    """M_n = sum over pi in P(n) of k_pi."""
    return _moments(k, n, free=False)


def moments_to_cumulants_free(m, n: int) -> CumulantSequence:
    """kappa_n = sum over pi in NC(n) of mu_NC(pi, 1_n) M_pi."""
    return _cumulants(m, n, free=True)


def cumulants_to_moments_free(kappa, n: int) -> MomentSequence:
    """M_n = sum over pi in NC(n) of kappa_pi."""
    return _moments(kappa, n, free=True)


# ============ CONVOLUTIONS ============

def classical_convolve(m1, m2, n: int) -> MomentSequence:
    """Moments of the classical convolution: classical cumulants add."""
    k = moments_to_cumulants_classical(m1, n) + moments_to_cumulants_classical(m2, n)
    return cumulants_to_moments_classical(k.values, n)


def free_convolve(m1, m2, n: int) -> MomentSequence:
    """Moments of the free convolution: free cumulants add."""
    kappa = moments_to_cumulants_free(m1, n) + moments_to_cumulants_free(m2, n)
    return cumulants_to_moments_free(kappa.values, n)


def bp_map(m, n: int) -> MomentSequence:
    """Classical cumulants of m read as free cumulants; the free counterpart's moments."""
    return cumulants_to_moments_free(moments_to_cumulants_classical(m, n).values, n)


def bp_inverse(m, n: int) -> MomentSequence:
    """Free cumulants of m read as classical cumulants."""
    return cumulants_to_moments_classical(moments_to_cumulants_free(m, n).values, n)


def free_compound_poisson_moments(atoms: Sequence[Tuple], n: int) -> MomentSequence:
    """Free compound Poisson with kappa_j = sum_i c_i z_i^j; atoms are (c_i, z_i)."""
    kappa = [sum((c * z ** j for c, z in atoms), 0) for j in range(1, n + 1)]
    return cumulants_to_moments_free(kappa, n)


def poisson_limit_moments(t, N: int, n: int, free: bool = False) -> MomentSequence:
    """
    Moments of ((1 - t/N) delta_0 + (t/N) delta_1) convolved N times with itself,
    classically or freely.
    """
    if N < 1:
        raise DomainError(f"Number of summands must be positive, got {N}")
    base = [Fraction(t) / N] * n if not isinstance(t, Basic) else [t / N] * n
    cumulants = _cumulants(base, n, free)
    return _moments([N * c for c in cumulants.values], n, free, label=f"bernoulli^{N}")


def central_limit_moments(N: int, n: int, free: bool = False) -> MomentSequence:
    """Moments of the N-fold convolution of the symmetric law on +-1/sqrt(N)."""
    if N < 1:
        raise DomainError(f"Number of summands must be positive, got {N}")
    base = [Fraction(1, N ** (k // 2)) if k % 2 == 0 else Fraction(0) for k in range(1, n + 1)]
    cumulants = _cumulants(base, n, free)
    return _moments([N * c for c in cumulants.values], n, free, label=f"rademacher^{N}")


# ============ FORMAL SERIES ============

@dataclass
class FormalSeries:
    """c_0 + c_1 w + ... + c_{order-1} w^{order-1}, truncated at w^order."""
    coeffs: Tuple
    order: int
    variable: str = "ξ"

    def __post_init__(self):
        coeffs = list(self.coeffs)[: self.order]
        coeffs += [0] * (self.order - len(coeffs))
        self.coeffs = tuple(_clean(c) for c in coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < self.order else 0

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        order = min(self.order, other.order)
        return FormalSeries([self[i] + other[i] for i in range(order)], order, self.variable)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "FormalSeries":
        return FormalSeries([c * x for x in self.coeffs], self.order, self.variable)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        order = min(self.order, other.order)
        out = []
        for i in range(order):
            out.append(sum((self[j] * other[i - j] for j in range(i + 1)), 0))
        return FormalSeries(out, order, self.variable)

    def shift_up(self) -> "FormalSeries":
        """w * f."""
        return FormalSeries([0] + list(self.coeffs[:-1]), self.order, self.variable)

    def shift_down(self) -> "FormalSeries":
        """(f - f(0)) / w."""
        return FormalSeries(list(self.coeffs[1:]), self.order - 1, self.variable)

    def power(self, k: int) -> "FormalSeries":
        out = FormalSeries([1], self.order, self.variable)
        for _ in range(k):
            out = out * self
        return out

    def reciprocal(self) -> "FormalSeries":
        """1/f for f(0) = 1."""
        if not _same(self[0], 1):
            raise DomainError("reciprocal() needs a series with constant term 1")
        out = [1]
        for i in range(1, self.order):
            out.append(-sum((self[j] * out[i - j] for j in range(1, i + 1)), 0))
        return FormalSeries(out, self.order, self.variable)

    def is_zero(self) -> bool:
        return all(_same(c, 0) for c in self.coeffs)

    def to_json(self) -> Dict:
        return {"variable": self.variable, "order": self.order, "coefficients": [render_value(c) for c in self.coeffs]}


def r_series(m, n: int) -> FormalSeries:
    """R(ξ) = sum_j kappa_j ξ^{j-1}, to order n."""
    kappa = moments_to_cumulants_free(m, n)
    return FormalSeries(kappa.values, n, "ξ")


def cauchy_series(m, n: int) -> FormalSeries:
    """G(ξ) = ξ^{-1} + M_1 ξ^{-2} + ...: coefficients of ξ^{-1-j}, j = 0..n."""
    values = _values(m)
    if len(values) < n:
        raise ShapeError(f"Need {n} moments, got {len(values)}")
    return FormalSeries([1] + values[:n], n + 1, "1/ξ")


def check_inversion(m, n: int) -> bool:
    """
    K(G(ξ)) = ξ with K(ξ) = 1/ξ + R(ξ), as a truncated identity. In w = 1/ξ and
    g(w) = sum M_k w^k (so G = w g) it reads (1/g - 1)/w + sum kappa_j (w g)^{j-1} = 0 mod w^n.
    """
    kappa = moments_to_cumulants_free(m, n)
    g = FormalSeries([1] + _values(m)[:n], n + 1, "w")
    lhs = (g.reciprocal() - FormalSeries([1], n + 1, "w")).shift_down()
    wg = g.shift_up()
    for j, value in enumerate(kappa.values, 1):
        lhs = lhs + wg.power(j - 1).scale(value)
    return lhs.is_zero()
