"""
Gram & Weingarten
Exact Gram matrices G(pi, sigma) = N^{|pi v sigma|} over category members, their
determinants (direct and by the closed product formulas), Weingarten matrices
(inverse or pseudo-inverse), monomial integrals and truncated character moments.

Closed formulas return an int for numeric N and a sympy Poly in N for N=None.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Basic, Poly, Symbol, chebyshevu_poly, expand, factor_list
from sympy.functions.combinatorial.numbers import stirling
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.utilities.iterables import partitions as integer_partitions

import config
from categories import NC, NC12, NC2, NC_EVEN, P, P12, P2, P_EVEN, CategoryId, members
from diagram_maps import delta
from errors import CapacityError, ConsistencyError, DomainError, ShapeError
from exact_linalg import ExactMatrix, bareiss_det, inverse, pseudo_inverse, rank
from partition_core import (
    ALL, NONCROSSING, ColoredWord, Partition,
    adjacency_matrix, as_word, block_count_distribution, enumerate_partitions, join, leq, num_blocks, shrink,
)

logger = logging.getLogger("GramWeingarten")

N_SYMBOL = Symbol("N")
_X = Symbol("x")


# ============ GRAM MATRICES ============

@lru_cache(maxsize=None)
def join_table(cat: CategoryId, word: ColoredWord) -> Tuple[Tuple[Partition, ...], np.ndarray]:
    """Members of D(word) and the matrix of |pi v sigma|."""
    found = members(cat, word)
    if len(found) > config.MAX_MEMBERS:
        raise CapacityError(f"{cat}({word}) has {len(found)} members, above {config.MAX_MEMBERS}")
    n = len(found)
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            table[a, b] = table[b, a] = num_blocks(join(found[a], found[b]))
    return found, table


def _power_matrix(table: np.ndarray, N) -> np.ndarray:
    out = np.empty(table.shape, dtype=object)
    for index, b in np.ndenumerate(table):
        out[index] = Poly(N_SYMBOL ** int(b), N_SYMBOL, domain="ZZ") if N is None else N ** int(b)
    return out


def gram_matrix(cat: CategoryId, word: Union[int, str, ColoredWord], N: Optional[int]) -> ExactMatrix:
    """
    G(pi, sigma) = N^{|pi v sigma|} over the canonical member list.

    Args:
        cat: category
        word: point count or colored word
        N: dimension, or None for entries as polynomials in N
    """
    found, table = join_table(cat, as_word(word))
    return ExactMatrix(_power_matrix(table, N), found)


def gram_det_direct(cat: CategoryId, word: Union[int, str, ColoredWord], N: Optional[int] = None):
    """Determinant of the Gram matrix by fraction-free elimination; symbolic when N is None."""
    found, table = join_table(cat, as_word(word))
    if N is None and len(found) > config.MAX_SYMBOLIC_SIZE:
        raise CapacityError(f"Symbolic determinant of size {len(found)} exceeds {config.MAX_SYMBOLIC_SIZE}")
    logger.info(f"Direct determinant for {cat}({word}), size {len(found)}, N={N if N is not None else 'symbolic'}")
    det = bareiss_det(_power_matrix(table, N))
    if N is None:
        return det if isinstance(det, Poly) else Poly(det, N_SYMBOL, domain="ZZ")
    return int(det)


def _finish(poly: Poly, N: Optional[int]):
    return poly if N is None else int(poly.eval(N))


def _falling(b: int) -> Poly:
    out = Poly(1, N_SYMBOL, domain="ZZ")
    for i in range(b):
        out *= Poly(N_SYMBOL - i, N_SYMBOL, domain="ZZ")
    return out


def factor_report(poly: Poly) -> Dict:
    """Factor list of a determinant polynomial: constant plus [(factor, exponent)]."""
    constant, factors = factor_list(poly)
    return {
        "constant": str(constant),
        "factors": [[str(f.as_expr()), int(e)] for f, e in factors],
    }


# ============ LINDSTROM ============

def lindstrom_det(cat: CategoryId, k: int, N: Optional[int] = None):
    """prod over pi in D(k) of N!/(N-|pi|)!, for D = P or P_even."""
    if cat not in (P, P_EVEN):
        raise DomainError(f"The falling-factorial product applies to p and p_even, not {cat}")
    poly = Poly(1, N_SYMBOL, domain="ZZ")
    for b, count in block_count_distribution(k, cat.filter).items():
        poly *= _falling(b) ** count
    return _finish(poly, N)


# ============ YOUNG DIAGRAMS ============

@dataclass(frozen=True)
class YoungDiagram:
    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(self.rows)
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise DomainError(f"Rows must be positive and weakly decreasing, got {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def cells(self) -> List[Tuple[int, int]]:
        """(i, j) 1-based."""
        return [(i, j) for i, length in enumerate(self.rows, 1) for j in range(1, length + 1)]

    def doubled(self) -> "YoungDiagram":
        """2 lambda: every row length doubled."""
        return YoungDiagram(tuple(2 * r for r in self.rows))

    def column_lengths(self) -> Tuple[int, ...]:
        if not self.rows:
            return ()
        return tuple(sum(1 for r in self.rows if r >= j) for j in range(1, self.rows[0] + 1))

    def hook_lengths(self) -> List[int]:
        columns = self.column_lengths()
        return [(self.rows[i - 1] - j) + (columns[j - 1] - i) + 1 for i, j in self.cells()]

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")"


def young_diagrams(n: int) -> List[YoungDiagram]:
    """All diagrams with n cells, largest first row first."""
    if n == 0:
        return [YoungDiagram()]
    shapes = []
    for parts in integer_partitions(n):
        rows = sorted((size for size, mult in parts.items() for _ in range(mult)), reverse=True)
        shapes.append(YoungDiagram(tuple(rows)))
    return sorted(shapes, key=lambda d: d.rows, reverse=True)


@lru_cache(maxsize=None)
def count_tableaux_brute(rows: Tuple[int, ...]) -> int:
    """Standard tableaux by removing the cell holding the largest entry (a corner)."""
    if sum(rows) <= 1:
        return 1
    total = 0
    for i, length in enumerate(rows):
        below = rows[i + 1] if i + 1 < len(rows) else 0
        if length > below:
            shrunk = rows[:i] + (length - 1,) + rows[i + 1:]
            total += count_tableaux_brute(tuple(r for r in shrunk if r))
    return total


def standard_tableaux_count(shape: YoungDiagram) -> int:
    """f^lambda by the hook-length formula, checked by brute force up to 6 cells."""
    if shape.size > 20:
        raise DomainError(f"Tableau counts are supported up to 20 cells, got {shape.size}")
    hooks = 1
    for h in shape.hook_lengths():
        hooks *= h
    value = factorial(shape.size) // hooks
    if shape.size <= 6 and count_tableaux_brute(shape.rows) != value:
        raise ConsistencyError(f"Hook-length count {value} disagrees with enumeration for {shape}")
    return value


def _content_product(shape: YoungDiagram, shift: int) -> Poly:
    """prod over cells of (N + 2j - i - shift)."""
    out = Poly(1, N_SYMBOL, domain="ZZ")
    for i, j in shape.cells():
        out *= Poly(N_SYMBOL + 2 * j - i - shift, N_SYMBOL, domain="ZZ")
    return out


def on_det(k: int, N: Optional[int] = None):
    """Gram determinant of P_2(k): prod over |lambda| = k/2 of f_N(lambda)^{f^{2 lambda}}."""
    if k % 2:
        raise DomainError(f"Pairings need an even number of points, got k={k}")
    if k > 12:
        raise CapacityError(f"Orthogonal determinant formula is supported up to k=12, got {k}")
    poly = Poly(1, N_SYMBOL, domain="ZZ")
    for shape in young_diagrams(k // 2):
        poly *= _content_product(shape, 1) ** standard_tableaux_count(shape.doubled())
    return _finish(poly, N)


def _a_exponent(k: int, filt) -> int:
    return sum((2 * b - k) * count for b, count in block_count_distribution(k, filt).items())


def bn_det(k: int, N: Optional[int] = None):
    """Gram determinant of P_12(k): N^{a_k} prod over |lambda| <= k/2 of f_N(lambda)^{C(k,2|lambda|) f^{2 lambda}}."""
    if k > 8:
        raise CapacityError(f"Bistochastic determinant formula is supported up to k=8, got {k}")
    poly = Poly(N_SYMBOL ** _a_exponent(k, P12.filter), N_SYMBOL, domain="ZZ")
    for size in range(1, k // 2 + 1):
        for shape in young_diagrams(size):
            exponent = comb(k, 2 * size) * standard_tableaux_count(shape.doubled())
            poly *= _content_product(shape, 2) ** exponent
    return _finish(poly, N)


# ============ CHEBYSHEV-TYPE FORMULAS ============

def _ballot(top, k, r) -> int:
    def c(n, m):
        return comb(n, m) if 0 <= m <= n else 0
    return c(top, k - r) - c(top, k - r - 1)


def _is_integral(k) -> bool:
    return Fraction(k).denominator == 1


def binomial_exponents(k, r: int) -> Tuple[int, int]:
    """(f_kr, d_kr) with f_kr = C(2k, k-r) - C(2k, k-r-1) and d_kr = f_kr - f_k,r+1; zero for non-integral k."""
    if not _is_integral(k):
        return 0, 0
    k = int(k)
    f = _ballot(2 * k, k, r)
    return f, f - _ballot(2 * k, k, r + 1)


def even_binomial_exponents(s, r: int) -> Tuple[int, int]:
    """(f'_sr, d'_sr) with f'_sr = C(3s, s-r) - C(3s, s-r-1)."""
    if not _is_integral(s):
        return 0, 0
    s = int(s)
    f = _ballot(3 * s, s, r)
    return f, f - _ballot(3 * s, s, r + 1)


@lru_cache(maxsize=None)
def chebyshev_p(r: int, variable: Symbol = _X) -> Poly:
    """P_r with P_0 = 1, P_1 = X, P_{r+1} = X P_r - P_{r-1}, i.e. U_r(X/2)."""
    return Poly(expand(chebyshevu_poly(r, variable / 2)), variable, domain="ZZ")


def _half_power_to_n(poly_x: Poly, a: int) -> Poly:
    """x^a * poly_x with x = sqrt(N), returned as a polynomial in N."""
    if a >= 0:
        poly_x = poly_x * Poly(_X ** a, _X, domain="ZZ")
    else:
        try:
            poly_x = poly_x.exquo(Poly(_X ** (-a), _X, domain="ZZ"))
        except ExactQuotientFailed as e:
            raise ConsistencyError(f"sqrt(N)^{a} does not divide the product: {e}")
    terms = poly_x.terms()
    if any(degree % 2 for (degree,), _ in terms):
        raise ConsistencyError("Odd power of sqrt(N) left in a determinant")
    expr = sum(int(coeff) * N_SYMBOL ** (degree // 2) for (degree,), coeff in terms)
    return Poly(expr, N_SYMBOL, domain="ZZ")


A_CONVENTIONS = ("noncrossing", "all")


@lru_cache(maxsize=None)
def _difrancesco_poly(cat: CategoryId, k: int, convention: str) -> Poly:
    if convention not in A_CONVENTIONS:
        raise DomainError(f"Unknown exponent convention {convention!r}")
    if cat == NC2:
        poly = Poly(1, N_SYMBOL, domain="ZZ")
        if k % 2:
            return poly
        for r in range(1, k // 2 + 1):
            poly *= chebyshev_p(r, N_SYMBOL) ** binomial_exponents(k // 2, r)[1]
        return poly
    if cat == NC:
        a = _a_exponent(k, NONCROSSING if convention == "noncrossing" else ALL)
        product = Poly(1, _X, domain="ZZ")
        for r in range(1, k + 1):
            product *= chebyshev_p(r) ** binomial_exponents(k, r)[1]
        return _half_power_to_n(product, a)
    if cat == NC12:
        filt = NC12.filter if convention == "noncrossing" else P12.filter
        poly = Poly(N_SYMBOL ** _a_exponent(k, filt), N_SYMBOL, domain="ZZ")
        shifted = Poly(N_SYMBOL - 1, N_SYMBOL, domain="ZZ")
        for l in range(1, k // 2 + 1):
            for r in range(1, l + 1):
                factor = chebyshev_p(r, N_SYMBOL).compose(shifted)
                poly *= factor ** (comb(k, 2 * l) * binomial_exponents(l, r)[1])
        return poly
    if cat == NC_EVEN:
        if k % 2:
            raise DomainError(f"The even-block formula needs even k, got {k}")
        a = _a_exponent(k, NC_EVEN.filter if convention == "noncrossing" else P_EVEN.filter)
        product = Poly(1, _X, domain="ZZ")
        for r in range(1, k // 2 + 1):
            product *= chebyshev_p(r) ** (2 * even_binomial_exponents(k // 2, r)[1])
        return _half_power_to_n(product, a)
    raise DomainError(f"Chebyshev-type formulas cover nc2, nc, nc12, nc_even; got {cat}")


def difrancesco_det(cat: CategoryId, k: int, N: Optional[int] = None, convention: str = "noncrossing"):
    """
    Closed Gram determinant of NC2, NC, NC12 or NC_even in terms of the P_r.

    Args:
        convention: index set of the exponent a_k, "noncrossing" (the members)
            or "all" (every partition of k points with the same block rule)
    """
    return _finish(_difrancesco_poly(cat, k, convention), N)


def difrancesco_conventions(cat: CategoryId, k: int, N: Optional[int] = None) -> Dict[str, object]:
    """Both exponent conventions side by side, plus the directly computed determinant when N is given."""
    out = {}
    for convention in A_CONVENTIONS:
        try:
            out[convention] = difrancesco_det(cat, k, N, convention)
        except ConsistencyError as e:
            logger.info(f"{cat} k={k} convention {convention}: {e}")
            out[convention] = None
    if N is not None:
        out["direct"] = gram_det_direct(cat, k, N)
    return out


def closed_det(cat: CategoryId, k: int, N: Optional[int] = None):
    """Closed determinant for every category with a product formula."""
    if cat in (P, P_EVEN):
        return lindstrom_det(cat, k, N)
    if cat == P2:
        return on_det(k, N)
    if cat == P12:
        return bn_det(k, N)
    return difrancesco_det(cat, k, N)


# ============ TRIANGULAR FACTORS / FATTENING ============

def triangular_factors(k: int, N: int) -> Dict:
    """
    G = A L over P(k) with A(pi, tau) = [pi <= tau] and
    L(tau, sigma) = N(N-1)...(N-|tau|+1) [sigma <= tau].
    """
    parts = enumerate_partitions(k)
    a = adjacency_matrix(k)
    lower = np.empty(a.shape, dtype=object)
    for x, tau in enumerate(parts):
        falling = 1
        for i in range(num_blocks(tau)):
            falling *= N - i
        for y, sigma in enumerate(parts):
            lower[x, y] = falling if leq(sigma, tau) else 0
    g = gram_matrix(P, k, N).entries
    holds = all(x == y for x, y in zip(a.dot(lower).flat, g.flat))
    return {"A": a, "L": lower, "G": g, "holds": holds}


def fattening_gram_relation(k: int, n: int) -> bool:
    """
    Entrywise G_{2k,n}(pi, sigma) = n^k (D^-1 G_{k,n^2} D^-1)(pi', sigma') over
    NC_2(2k), pi' the shrinking of pi and D the diagonal of the NC(k) Gram matrix at n.
    """
    pairings, pair_table = join_table(NC2, ColoredWord.uncolored(2 * k))
    shrunk, shrunk_table = join_table(NC, ColoredWord.uncolored(k))
    where = {pi: i for i, pi in enumerate(shrunk)}
    for a, pi in enumerate(pairings):
        for b, sigma in enumerate(pairings):
            x, y = where[shrink(pi)], where[shrink(sigma)]
            rhs = Fraction(n ** k * (n * n) ** int(shrunk_table[x, y]),
                           n ** int(shrunk_table[x, x]) * n ** int(shrunk_table[y, y]))
            if rhs != n ** int(pair_table[a, b]):
                logger.info(f"Fattening relation fails at {pi}, {sigma}, n={n}")
                return False
    return True


# ============ WEINGARTEN ============

@lru_cache(maxsize=None)
def _weingarten_entries(cat: CategoryId, word: ColoredWord, N: int) -> np.ndarray:
    found, table = join_table(cat, word)
    g = _power_matrix(table, N)
    if rank(g) == len(found):
        return inverse(g)
    logger.info(f"Gram matrix of {cat}({word}) is singular at N={N}; using the pseudo-inverse")
    return pseudo_inverse(g)


def weingarten_matrix(cat: CategoryId, word: Union[int, str, ColoredWord], N: int) -> ExactMatrix:
    """Exact inverse of the Gram matrix, or its Moore-Penrose pseudo-inverse when singular."""
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    word = as_word(word)
    found, _ = join_table(cat, word)
    return ExactMatrix(_weingarten_entries(cat, word, N).copy(), found)


def integrate_monomial(cat: CategoryId, N: int, word: Union[int, str, ColoredWord],
                       i: Sequence[int], j: Sequence[int]) -> Fraction:
    """
    Integral of u_{i1 j1}^{e1} ... u_{ik jk}^{ek} over the easy group of cat:
    sum over pi, sigma in D(e) of delta_pi(i) delta_sigma(j) W(pi, sigma).
    """
    word = as_word(word)
    if len(i) != len(word) or len(j) != len(word):
        raise ShapeError(f"Exponent word of length {len(word)} with index tuples of lengths {len(i)}, {len(j)}")
    if any(not 1 <= x <= N for x in list(i) + list(j)):
        raise DomainError(f"Indices must lie in 1..{N}")
    found, _ = join_table(cat, word)
    w = _weingarten_entries(cat, word, N)
    left = [delta(pi, (), i) for pi in found]
    right = [delta(sigma, (), j) for sigma in found]
    total = Fraction(0)
    for a, da in enumerate(left):
        if not da:
            continue
        for b, db in enumerate(right):
            if db:
                total += w[a, b]
    return total


def truncated_moment(cat: CategoryId, N: int, word: Union[int, str, ColoredWord], s: int) -> Fraction:
    """Moment of the truncated character chi_s: Tr(W_{kN} G_{ks})."""
    if not 1 <= s <= N:
        raise DomainError(f"Truncation s must lie in 1..{N}, got {s}")
    word = as_word(word)
    _, table = join_table(cat, word)
    product = _weingarten_entries(cat, word, N).dot(_power_matrix(table, s))
    return sum(product.diagonal(), Fraction(0))


def asymptotic_moment(cat: CategoryId, word: Union[int, str, ColoredWord], t):
    """sum over pi in D(word) of t^{|pi|}; t may be a number or a sympy symbol."""
    distribution = block_count_distribution(as_word(word), cat.filter)
    if isinstance(t, Basic):
        return expand(sum(count * t ** b for b, count in distribution.items()))
    t = Fraction(t)
    return sum((count * t ** b for b, count in distribution.items()), Fraction(0))


def sn_truncated_closed(N: int, s: int, k: int) -> Fraction:
    """sum_b s!/(s-b)! (N-b)!/N! S(k, b) for the symmetric group."""
    if not 0 <= s <= N:
        raise DomainError(f"Truncation s must lie in 0..{N}, got {s}")
    total = Fraction(0)
    for b in range(0, min(k, s) + 1):
        total += Fraction(factorial(s) // factorial(s - b) * factorial(N - b), factorial(N)) * int(stirling(k, b))
    return total
