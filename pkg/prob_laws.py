"""
Probability Laws
Exact moment sequences of the classical and free limit laws (partition sums over
the matching category), closed-form densities, the Bessel point masses, compound
Poisson moments, and numerical Stieltjes inversion from moments.

Parameters t are rationals or sympy symbols; densities are floats.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad
from sympy import Basic, Symbol, expand, sympify
from sympy.functions.combinatorial.numbers import stirling

import config
from categories import CNC2, CP2, NC, NC2, NC_EVEN, P, P2, P_EVEN, CategoryId, ncs, ps
from cumulants import MomentSequence, cumulants_to_moments_classical, render_value
from cyclotomic import CyclotomicValue
from errors import CapacityError, DomainError
from partition_core import ColoredWord, as_word, block_count_distribution, weighted_partition_sums

logger = logging.getLogger("ProbLaws")

PMF_TAIL = 1e-12

# law kind -> category whose partition sums give the moments
_LAW_CATEGORY = {
    "poisson": P,
    "gaussian": P2,
    "bessel_real": P_EVEN,
    "semicircle": NC2,
    "marchenko_pastur": NC,
    "free_bessel_real": NC_EVEN,
    "complex_gaussian": CP2,
    "circular": CNC2,
}

KINDS = tuple(_LAW_CATEGORY) + ("bessel", "free_bessel", "dirac", "compound_poisson", "arcsine", "modified_arcsine")

_COMPLEX_KINDS = ("complex_gaussian", "circular", "bessel", "free_bessel")


def _parameter(raw) -> Union[Fraction, Basic]:
    if isinstance(raw, Basic):
        return raw
    if isinstance(raw, str) and raw.strip().isidentifier():
        return Symbol(raw.strip(), positive=True)
    return Fraction(raw)


@dataclass(frozen=True)
class LawSpec:
    """
    kind: one of KINDS. t is the parameter of the parametrized families, s the
    root order of the Bessel families, c the Dirac location, atoms the
    (weight, location) pairs of a compound Poisson law.
    """
    kind: str
    t: object = None
    s: Optional[int] = None
    c: object = None
    atoms: Tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"Unknown law {self.kind!r}")
        if self.kind in _LAW_CATEGORY or self.kind in ("bessel", "free_bessel"):
            if self.t is None:
                raise DomainError(f"Law {self.kind} needs a parameter t")
            t = _parameter(self.t)
            if not isinstance(t, Basic) and t <= 0:
                raise DomainError(f"Parameter t must be positive, got {t}")
            object.__setattr__(self, "t", t)
        if self.kind in ("bessel", "free_bessel") and (self.s is None or self.s < 1):
            raise DomainError(f"Law {self.kind} needs a root order s >= 1")
        if self.kind == "dirac":
            object.__setattr__(self, "c", _parameter(0 if self.c is None else self.c))
        if self.kind == "compound_poisson":
            if not self.atoms:
                raise DomainError("A compound Poisson law needs at least one atom")
            for weight, _ in self.atoms:
                if not isinstance(weight, Basic) and Fraction(weight) <= 0:
                    raise DomainError(f"Compound Poisson weights must be positive, got {weight}")

    @classmethod
    def parse(cls, token: str) -> "LawSpec":
        """
        'poisson:1', 'semicircle:t', 'bessel:3:1/2' (s then t), 'dirac:2',
        'compound_poisson:1/2@1,1/2@-1' (weight@location), 'arcsine'.
        """
        kind, _, rest = token.strip().lower().partition(":")
        args = rest.split(":") if rest else []
        try:
            if kind in ("bessel", "free_bessel"):
                return cls(kind, t=args[1], s=int(args[0]))
            if kind == "dirac":
                return cls(kind, c=args[0] if args else 0)
            if kind == "compound_poisson":
                atoms = []
                for item in rest.split(","):
                    weight, _, location = item.partition("@")
                    atoms.append((_parameter(weight), _parameter(location)))
                return cls(kind, atoms=tuple(atoms))
            if kind in ("arcsine", "modified_arcsine"):
                return cls(kind)
            return cls(kind, t=args[0] if args else 1)
        except (IndexError, ValueError, ZeroDivisionError):
            raise DomainError(f"Cannot read law {token!r}")

    @property
    def is_complex(self) -> bool:
        if self.kind == "compound_poisson":
            return any(isinstance(z, CyclotomicValue) and not z.is_rational for _, z in self.atoms)
        if self.kind in ("bessel", "free_bessel"):
            return self.s > 2
        return self.kind in _COMPLEX_KINDS

    @property
    def category(self) -> Optional[CategoryId]:
        if self.kind == "bessel":
            return ps(self.s)
        if self.kind == "free_bessel":
            return ncs(self.s)
        return _LAW_CATEGORY.get(self.kind)

    @property
    def token(self) -> str:
        if self.kind in ("bessel", "free_bessel"):
            return f"{self.kind}:{self.s}:{self.t}"
        if self.kind == "dirac":
            return f"dirac:{self.c}"
        if self.kind == "compound_poisson":
            return "compound_poisson:" + ",".join(f"{w}@{z}" for w, z in self.atoms)
        if self.t is None:
            return self.kind
        return f"{self.kind}:{self.t}"

    def __str__(self) -> str:
        return self.token


# --- constructors ---

def poisson(t) -> LawSpec:
    return LawSpec("poisson", t)


def gaussian(t) -> LawSpec:
    return LawSpec("gaussian", t)


def bessel_real(t) -> LawSpec:
    return LawSpec("bessel_real", t)


def bessel(s: int, t) -> LawSpec:
    return LawSpec("bessel", t, s=s)


def complex_gaussian(t) -> LawSpec:
    return LawSpec("complex_gaussian", t)


def semicircle(t) -> LawSpec:
    return LawSpec("semicircle", t)


def circular(t) -> LawSpec:
    return LawSpec("circular", t)


def marchenko_pastur(t) -> LawSpec:
    return LawSpec("marchenko_pastur", t)


def free_bessel(s: int, t) -> LawSpec:
    return LawSpec("free_bessel", t, s=s)


def free_bessel_real(t) -> LawSpec:
    return LawSpec("free_bessel_real", t)


def dirac(c) -> LawSpec:
    return LawSpec("dirac", c=c)


def compound_poisson(atoms: Sequence[Tuple]) -> LawSpec:
    return LawSpec("compound_poisson", atoms=tuple(atoms))


ARCSINE = LawSpec("arcsine")
MODIFIED_ARCSINE = LawSpec("modified_arcsine")


# ============ MOMENTS ============

def _partition_sum(cat: CategoryId, word: ColoredWord, t):
    distribution = block_count_distribution(word, cat.filter)
    if isinstance(t, Basic):
        return expand(sum(count * t ** b for b, count in distribution.items()))
    return sum((count * t ** b for b, count in distribution.items()), Fraction(0))


def _counted_moments(cat: CategoryId, n: int, t) -> List:
    if n > config.MAX_COUNTED_ORDER:
        raise CapacityError(f"Moments up to order {n} exceed {config.MAX_COUNTED_ORDER}")
    if isinstance(t, Basic):
        return [_partition_sum(cat, ColoredWord.uncolored(j), t) for j in range(1, n + 1)]
    return list(weighted_partition_sums(n, cat.size_rule, cat.noncrossing, t)[1:])


def _colored_moment(cat: CategoryId, word: ColoredWord, t):
    if len(word) > config.MAX_ENUMERATED_ORDER:
        raise CapacityError(f"Colored moments are enumerated up to length {config.MAX_ENUMERATED_ORDER}")
    return _partition_sum(cat, word, t)


def _plain_moment(law: LawSpec, k: int):
    if law.kind == "dirac":
        return law.c ** k
    if law.kind == "arcsine":
        return Fraction(comb(2 * k, k))
    if law.kind == "modified_arcsine":
        return Fraction(comb(k, k // 2))
    raise DomainError(f"No closed moments for {law}")


def moments(law: LawSpec, up_to: Union[int, Sequence]) -> MomentSequence:
    """
    Exact moments M_1..M_n, or colored moments for the given words.

    Args:
        law: law spec
        up_to: maximal order n, or a list of colored words

    Returns:
        MomentSequence; for words, values hold the moments in the given order
        and `colored` maps each word to its moment
    """
    if isinstance(up_to, int):
        n = up_to
        if law.kind == "compound_poisson":
            return compound_poisson_moments(law.atoms, n, label=law.token)
        if law.kind in ("dirac", "arcsine", "modified_arcsine"):
            return MomentSequence([_plain_moment(law, k) for k in range(1, n + 1)], label=law.token)
        cat = law.category
        if law.kind in ("bessel", "free_bessel") and law.s <= 2:
            # on white words, block weights mod 1 or 2 are just block sizes
            cat = {
                (1, False): P, (2, False): P_EVEN, (1, True): NC, (2, True): NC_EVEN,
            }[(law.s, law.kind == "free_bessel")]
        if cat.is_colored:
            values = [_colored_moment(cat, ColoredWord((("o",) * k)), law.t) for k in range(1, n + 1)]
        else:
            values = _counted_moments(cat, n, law.t)
        return MomentSequence(values, label=law.token)

    words = [as_word(w) for w in up_to]
    if law.kind == "compound_poisson":
        return compound_poisson_moments(law.atoms, words, label=law.token)
    colored = {}
    for word in words:
        if law.kind in ("dirac", "arcsine", "modified_arcsine"):
            # real laws: conj(X) = X
            colored[str(word)] = _plain_moment(law, len(word))
        else:
            colored[str(word)] = _colored_moment(law.category, word, law.t)
    return MomentSequence(list(colored.values()), colored=colored, label=law.token)


def _touchard(m: int, c):
    """E[alpha^m] for alpha Poisson(c): sum_b S(m, b) c^b."""
    return sum((int(stirling(m, b)) * c ** b for b in range(m + 1)), 0)


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def _compound_word_moment(atoms: Sequence[Tuple], whites: int, blacks: int):
    """E[X^whites conj(X)^blacks] for X = sum z_i alpha_i, alpha_i independent Poisson(c_i)."""
    total = 0
    weights = [c for c, _ in atoms]
    locations = [z for _, z in atoms]
    conjugates = [z.conjugate() for z in locations]
    for a in _compositions(whites, len(atoms)):
        for b in _compositions(blacks, len(atoms)):
            term = _multinomial(a) * _multinomial(b)
            for c, z, zbar, ai, bi in zip(weights, locations, conjugates, a, b):
                if ai or bi:
                    term = term * (z ** ai) * (zbar ** bi) * _touchard(ai + bi, c)
            total = total + term
    return total


def compound_poisson_moments(atoms: Sequence[Tuple], up_to: Union[int, Sequence], label: str = "") -> MomentSequence:
    """
    Exact moments of sum z_i alpha_i with alpha_i independent Poisson(c_i); atoms
    are (c_i, z_i). Locations may be rationals, symbols or CyclotomicValues.
    """
    atoms = [(_parameter(c) if not isinstance(c, (Fraction, Basic)) else c, z) for c, z in atoms]
    if isinstance(up_to, int):
        if up_to > config.MAX_ENUMERATED_ORDER:
            raise CapacityError(f"Compound Poisson moments are supported up to order {config.MAX_ENUMERATED_ORDER}")
        values = [_compound_word_moment(atoms, k, 0) for k in range(1, up_to + 1)]
        return MomentSequence(values, label=label or "compound_poisson")
    colored = {}
    for word in (as_word(w) for w in up_to):
        if len(word) > config.MAX_ENUMERATED_ORDER:
            raise CapacityError(f"Compound Poisson moments are supported up to length {config.MAX_ENUMERATED_ORDER}")
        colored[str(word)] = _compound_word_moment(atoms, word.count("o"), word.count("b"))
    return MomentSequence(list(colored.values()), colored=colored, label=label or "compound_poisson")


def compound_poisson_via_cumulants(atoms: Sequence[Tuple], n: int) -> MomentSequence:
    """Same moments through the classical cumulants k_j = sum_i c_i z_i^j."""
    kappa = [sum((c * z ** j for c, z in atoms), 0) for j in range(1, n + 1)]
    return cumulants_to_moments_classical(kappa, n)


def bessel_atoms(s: int, t) -> List[Tuple]:
    """Compound Poisson atoms (t/s, zeta_s^j) of the s-Bessel law."""
    t = _parameter(t)
    if s <= 2:
        return [(t / s, Fraction(1 if j == 0 else -1)) for j in range(s)]
    return [(t / s, CyclotomicValue.root(s, j)) for j in range(s)]


# ============ DENSITIES ============

def _float(x) -> float:
    if isinstance(x, Basic):
        raise DomainError("Densities need a numeric parameter")
    return float(x)


def support(law: LawSpec) -> Tuple[float, float]:
    if law.kind == "semicircle":
        r = 2 * math.sqrt(_float(law.t))
        return -r, r
    if law.kind == "marchenko_pastur":
        root = math.sqrt(_float(law.t))
        return (1 - root) ** 2, (1 + root) ** 2
    if law.kind == "arcsine":
        return 0.0, 4.0
    if law.kind == "modified_arcsine":
        return -2.0, 2.0
    if law.kind == "gaussian":
        return -math.inf, math.inf
    raise DomainError(f"No closed density for {law}")


def atoms(law: LawSpec) -> List[Tuple[Fraction, Fraction]]:
    """Exact point masses accompanying the density."""
    if law.kind == "marchenko_pastur" and not isinstance(law.t, Basic) and law.t < 1:
        return [(Fraction(0), 1 - law.t)]
    return []


def density(law: LawSpec, x: float) -> float:
    """Absolutely continuous part at x; 0 outside the support."""
    a, b = support(law)
    if not a <= x <= b:
        return 0.0
    if law.kind == "semicircle":
        t = _float(law.t)
        return math.sqrt(max(4 * t - x * x, 0.0)) / (2 * math.pi * t)
    if law.kind == "marchenko_pastur":
        t = _float(law.t)
        if x <= 0:
            return 0.0
        return math.sqrt(max(4 * t - (x - 1 - t) ** 2, 0.0)) / (2 * math.pi * x)
    if law.kind == "arcsine":
        if x <= 0 or x >= 4:
            return 0.0
        return 1 / (math.pi * math.sqrt(x * (4 - x)))
    if law.kind == "modified_arcsine":
        if x >= 2:
            return 0.0
        return math.sqrt((2 + x) / (2 - x)) / (2 * math.pi)
    t = _float(law.t)
    return math.exp(-x * x / (2 * t)) / math.sqrt(2 * math.pi * t)


def _integrate(law: LawSpec, weight) -> float:
    a, b = support(law)
    value, _ = quad(lambda x: weight(x) * density(law, x), a, b, limit=200)
    return value


def normalization(law: LawSpec) -> float:
    """Total mass: quadrature of the density plus the exact atoms."""
    return _integrate(law, lambda x: 1.0) + sum(float(mass) for _, mass in atoms(law))


def numerical_moment(law: LawSpec, k: int) -> float:
    return _integrate(law, lambda x: x ** k) + sum(float(mass) * float(loc) ** k for loc, mass in atoms(law))


@dataclass
class DensityGrid:
    xs: np.ndarray
    values: np.ndarray
    atoms: List[Tuple[Fraction, Fraction]] = field(default_factory=list)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["x", "density"])
        for x, v in zip(self.xs, self.values):
            writer.writerow([f"{x:.{config.FLOAT_DIGITS}g}", f"{v:.{config.FLOAT_DIGITS}g}"])
        return buffer.getvalue()

    def to_json(self) -> Dict:
        return {
            "x": [float(f"{x:.{config.FLOAT_DIGITS}g}") for x in self.xs],
            "density": [float(f"{v:.{config.FLOAT_DIGITS}g}") for v in self.values],
            "atoms": [{"atom": render_value(a), "mass": render_value(m)} for a, m in self.atoms],
        }


def density_grid(law: LawSpec, a: float, b: float, step: float) -> DensityGrid:
    if step <= 0 or b < a:
        raise DomainError(f"Bad grid [{a}, {b}] with step {step}")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    xs = a + step * np.arange(count)
    return DensityGrid(xs, np.array([density(law, float(x)) for x in xs]), atoms(law))


# ============ BESSEL POINT MASSES ============

def poisson_pmf(t: float, k: int) -> float:
    if k < 0:
        return 0.0
    return math.exp(-t + k * math.log(t) - math.lgamma(k + 1)) if t > 0 else float(k == 0)


def bessel_pmf(s: int, t: float, k: int) -> float:
    """
    P(X = k) for the s-Bessel law with s in {1, 2}. For s = 2 the series
    e^{-t} sum_p (t/2)^{|k|+2p} / ((|k|+p)! p!) is summed until the geometric
    bound on the remaining terms drops below 1e-12.
    """
    t = float(t)
    if s == 1:
        return poisson_pmf(t, k)
    if s != 2:
        raise DomainError(f"Closed Bessel series exist for s in (1, 2), got {s}")
    if t == 0:
        return float(k == 0)
    m = abs(k)
    half = t / 2
    term = math.exp(-t + m * math.log(half) - math.lgamma(m + 1)) if m else math.exp(-t)
    total, p = 0.0, 0
    while True:
        total += term
        ratio = half * half / ((m + p + 1) * (p + 1))
        if ratio < 0.5 and term * ratio / (1 - ratio) < PMF_TAIL:
            break
        term *= ratio
        p += 1
    return total


def bessel_pmf_by_convolution(t: float, k: int, terms: int = 40) -> float:
    """P(a - b = k) for independent Poisson(t/2) a, b, truncated after `terms` terms."""
    half = float(t) / 2
    return sum(poisson_pmf(half, j + k) * poisson_pmf(half, j) for j in range(max(0, -k), max(0, -k) + terms))


# ============ STIELTJES INVERSION ============

def _moment_list(m: Union[MomentSequence, Sequence]) -> List[Fraction]:
    values = m.values if isinstance(m, MomentSequence) else tuple(m)
    out = [Fraction(1)]
    for v in values:
        if isinstance(v, Basic):
            v = sympify(v)
            if v.free_symbols:
                raise DomainError("Stieltjes inversion needs numeric moments")
        out.append(Fraction(str(v)) if isinstance(v, Basic) else Fraction(v))
    return out


def jacobi_coefficients(m: Union[MomentSequence, Sequence]) -> Tuple[List[Fraction], List[Fraction]]:
    """
    Exact recurrence coefficients (alpha_k, beta_k) of the orthogonal polynomials
    of the moment functional, by the Chebyshev algorithm. Stops early when the
    functional degenerates (finitely supported law).
    """
    mu = _moment_list(m)
    levels = len(mu) // 2
    if levels == 0:
        return [], []
    alpha = [mu[1] / mu[0]]
    beta = [mu[0]]
    prev = [Fraction(0)] * len(mu)
    cur = list(mu)
    for k in range(1, levels):
        nxt = [Fraction(0)] * len(mu)
        for l in range(k, len(mu) - k):
            nxt[l] = cur[l + 1] - alpha[k - 1] * cur[l] - beta[k - 1] * prev[l]
        if nxt[k] == 0:
            break
        alpha.append(nxt[k + 1] / nxt[k] - cur[k] / cur[k - 1])
        beta.append(nxt[k] / cur[k - 1])
        prev, cur = cur, nxt
    return alpha, beta


def _tail(xi: complex, a: float, b: float) -> complex:
    """Root T of b T^2 - (xi - a) T + 1 = 0 continuing the constant tail."""
    disc = np.sqrt(complex((xi - a) ** 2 - 4 * b))
    roots = [((xi - a) - disc) / (2 * b), ((xi - a) + disc) / (2 * b)]
    below = [r for r in roots if r.imag <= 0]
    if len(below) == 1:
        return below[0]
    return min(roots, key=abs)


def cauchy_transform(m: Union[MomentSequence, Sequence], xi: complex, terminate: bool = True) -> complex:
    """G(xi) through the Jacobi continued fraction, closed by the square-root tail."""
    alpha, beta = jacobi_coefficients(m)
    if not alpha:
        return 1 / xi
    a = [float(x) for x in alpha]
    b = [float(x) for x in beta]
    levels = len(a)
    saturated = len(_moment_list(m)) // 2 == levels
    frac = _tail(xi, a[-1], b[-1]) if terminate and saturated and levels > 1 else 0j
    for k in range(levels - 1, -1, -1):
        next_beta = b[k + 1] if k + 1 < levels else (b[-1] if frac else 0.0)
        frac = 1 / (xi - a[k] - next_beta * frac)
    return b[0] * frac


def cauchy_series_value(m: Union[MomentSequence, Sequence], xi: complex) -> complex:
    """Raw truncated series sum_k M_k xi^{-k-1}; diverges inside the support."""
    mu = _moment_list(m)
    return sum(complex(float(v)) * xi ** (-k - 1) for k, v in enumerate(mu))


def stieltjes_invert(m: Union[MomentSequence, Sequence], x: float, eps: float) -> float:
    """
    Density estimate -Im G(x + i eps) / pi. Error sources: smoothing by eps and
    the truncation of the continued fraction at len(m)/2 levels.

    G is evaluated through the Jacobi continued fraction built from the
    moments, not the raw series sum M_k / z^(k+1). The series only converges
    for |z| beyond the support radius, so near the real axis inside the
    support it diverges: with 60 moments at eps = 1e-3 it cannot get within
    0.02 of the density, while the continued fraction can. The price is an
    exact Chebyshev recursion over Fractions, quadratic in len(m), and a
    square-root tail that assumes the last recurrence coefficients have
    settled; for laws whose coefficients keep oscillating the tail is only
    a rough closure. See stieltjes_invert_series for the plain series.
    """
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return -cauchy_transform(m, complex(x, eps)).imag / math.pi


def stieltjes_invert_series(m: Union[MomentSequence, Sequence], x: float, eps: float) -> float:
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return -cauchy_series_value(m, complex(x, eps)).imag / math.pi
