"""
Partition Core
Colored set partitions of one or two rows of points: canonical form, enumeration,
lattice operations (order, join, Möbius function), kernels, block counting and
the fattening/shrinking bijection NC(k) <-> NC_2(2k).

Legs are addressed as (row, position) with 0-based positions; row 0 is the upper
row and row 1 the lower row. One-row partitions live on the lower row.
"""
import bisect
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb, factorial
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from sympy.utilities.iterables import partitions as integer_partitions

import config
from errors import CapacityError, DomainError, ShapeError

logger = logging.getLogger("PartitionCore")

WHITE = "o"
BLACK = "b"
UPPER = 0
LOWER = 1

_WHITE_ALIASES = {"o", "w", "∘", "+"}
_BLACK_ALIASES = {"b", "x", "•", "-"}

Leg = Tuple[int, int]
Block = Tuple[Leg, ...]


# ============ WORDS ============

@dataclass(frozen=True)
class ColoredWord:
    """
    Word over {white, black}. In uncolored mode every letter is white and
    color inversion is the identity.
    """
    letters: Tuple[str, ...] = ()
    colored: bool = True

    def __post_init__(self):
        letters = tuple(self.letters)
        for letter in letters:
            if letter not in (WHITE, BLACK):
                raise DomainError(f"Unknown color letter {letter!r}")
        if not self.colored and BLACK in letters:
            raise DomainError("An uncolored word carries white letters only")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "ColoredWord":
        """Parse 'oob', 'wwb', '∘••' and similar spellings."""
        letters = []
        for ch in text.replace(",", "").replace(" ", ""):
            if ch in _WHITE_ALIASES:
                letters.append(WHITE)
            elif ch in _BLACK_ALIASES:
                letters.append(BLACK)
            else:
                raise DomainError(f"Cannot read color {ch!r} in word {text!r}")
        return cls(tuple(letters))

    @classmethod
    def uncolored(cls, k: int) -> "ColoredWord":
        if k < 0:
            raise DomainError(f"Word length must be nonnegative, got {k}")
        return cls((WHITE,) * k, colored=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        return self.letters[index]

    def __str__(self) -> str:
        return "".join(self.letters)

    def inverted(self) -> "ColoredWord":
        if not self.colored:
            return self
        swap = {WHITE: BLACK, BLACK: WHITE}
        return ColoredWord(tuple(swap[c] for c in self.letters))

    def reversed(self) -> "ColoredWord":
        return ColoredWord(tuple(reversed(self.letters)), colored=self.colored)

    def concat(self, other: "ColoredWord") -> "ColoredWord":
        return ColoredWord(self.letters + other.letters, colored=self.colored or other.colored)

    def count(self, color: str) -> int:
        return self.letters.count(color)


def as_word(points: Union[int, str, ColoredWord]) -> ColoredWord:
    """Accept a point count (uncolored), a color string, or a word."""
    if isinstance(points, ColoredWord):
        return points
    if isinstance(points, str):
        return ColoredWord.parse(points)
    return ColoredWord.uncolored(int(points))


# ============ PARTITIONS ============

def _leg_token(leg: Leg) -> str:
    return f"{'u' if leg[0] == UPPER else 'l'}{leg[1]}"


def _parse_leg(token: str) -> Leg:
    if len(token) < 2 or token[0] not in "ul":
        raise DomainError(f"Bad leg token {token!r}")
    return (UPPER if token[0] == "u" else LOWER, int(token[1:]))


@dataclass(frozen=True)
class Partition:
    """
    Partition of the legs of a two-row diagram with k upper and l lower points.

    Canonical form: legs sorted within blocks, blocks sorted by least leg.
    Equality and hashing are structural on that form.
    """
    upper: ColoredWord
    lower: ColoredWord
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(tuple(leg) for leg in block)) for block in self.blocks))
        seen = [leg for block in canon for leg in block]
        expected = {(UPPER, i) for i in range(len(self.upper))} | {(LOWER, j) for j in range(len(self.lower))}
        if any(len(block) == 0 for block in canon):
            raise ShapeError("Blocks must be nonempty")
        if len(seen) != len(set(seen)) or set(seen) != expected:
            raise ShapeError(f"Blocks {canon} do not partition the legs of a ({len(self.upper)},{len(self.lower)}) diagram")
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def trusted(cls, upper: ColoredWord, lower: ColoredWord, blocks: Iterable[Iterable[Leg]]) -> "Partition":
        """Build from blocks known to cover the legs exactly (canonicalizes, skips validation)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "upper", upper)
        object.__setattr__(obj, "lower", lower)
        object.__setattr__(obj, "blocks", tuple(sorted(tuple(sorted(block)) for block in blocks)))
        return obj

    @classmethod
    def one_row(cls, blocks: Iterable[Iterable[int]], word: Optional[Union[ColoredWord, str]] = None) -> "Partition":
        """
        One-row partition from 0-based position blocks.

        Args:
            blocks: e.g. [[0, 2], [1]]
            word: colors of the points (uncolored when omitted)
        """
        blocks = [list(b) for b in blocks]
        n = sum(len(b) for b in blocks)
        lower = as_word(word) if word is not None else ColoredWord.uncolored(n)
        empty = ColoredWord((), colored=lower.colored)
        return cls(empty, lower, tuple(tuple((LOWER, p) for p in b) for b in blocks))

    @classmethod
    def from_json(cls, doc: Dict) -> "Partition":
        colored = doc.get("colored", True)
        upper = ColoredWord.parse(doc["upper"]) if colored else ColoredWord.uncolored(len(doc["upper"]))
        lower = ColoredWord.parse(doc["lower"]) if colored else ColoredWord.uncolored(len(doc["lower"]))
        return cls(upper, lower, tuple(tuple(_parse_leg(t) for t in block) for block in doc["blocks"]))

    @property
    def k(self) -> int:
        return len(self.upper)

    @property
    def l(self) -> int:
        return len(self.lower)

    @property
    def num_legs(self) -> int:
        return self.k + self.l

    @property
    def is_one_row(self) -> bool:
        return self.k == 0

    @cached_property
    def block_index(self) -> Dict[Leg, int]:
        return {leg: i for i, block in enumerate(self.blocks) for leg in block}

    def legs(self) -> List[Leg]:
        return [(UPPER, i) for i in range(self.k)] + [(LOWER, j) for j in range(self.l)]

    def color(self, leg: Leg) -> str:
        return self.upper[leg[1]] if leg[0] == UPPER else self.lower[leg[1]]

    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def positions(self) -> List[Tuple[int, ...]]:
        """Blocks of a one-row partition as tuples of lower positions."""
        if not self.is_one_row:
            raise ShapeError("positions() is defined on one-row partitions")
        return [tuple(p for _, p in block) for block in self.blocks]

    def to_json(self) -> Dict:
        return {
            "upper": str(self.upper),
            "lower": str(self.lower),
            "blocks": [[_leg_token(leg) for leg in block] for block in self.blocks],
            "colored": self.upper.colored or self.lower.colored,
        }

    def __str__(self) -> str:
        if self.is_one_row:
            return "".join("{" + ",".join(str(p + 1) for _, p in block) + "}" for block in self.blocks) or "∅"
        return "".join("{" + ",".join(_leg_token(leg) for leg in block) + "}" for block in self.blocks) or "∅"


# ============ FILTERS ============

_SIZE_RULES: Dict[str, Callable[[int], bool]] = {
    "any": lambda m: True,
    "even": lambda m: m % 2 == 0,
    "two": lambda m: m == 2,
    "at_most_two": lambda m: m <= 2,
}


def _meet_size_rules(a: str, b: str) -> str:
    if a == b or b == "any":
        return a
    if a == "any":
        return b
    # every remaining pair of distinct rules intersects in pairings
    return "two"


@dataclass(frozen=True)
class PartitionClassFilter:
    """Pure predicate on one-row partitions: block sizes, crossings, and an optional color rule."""
    name: str = "all"
    size_rule: str = "any"
    noncrossing: bool = False
    color_rule: Optional[Callable[[Partition], bool]] = None

    def __post_init__(self):
        if self.size_rule not in _SIZE_RULES:
            raise DomainError(f"Unknown size rule {self.size_rule!r}")

    def accepts(self, pi: Partition) -> bool:
        allowed = _SIZE_RULES[self.size_rule]
        if not all(allowed(len(block)) for block in pi.blocks):
            return False
        if self.noncrossing and not is_noncrossing(pi):
            return False
        return self.color_rule is None or bool(self.color_rule(pi))

    def conjoin(self, other: "PartitionClassFilter") -> "PartitionClassFilter":
        first, second = self.color_rule, other.color_rule
        if first is None or second is None:
            rule = first or second
        else:
            def rule(pi: Partition) -> bool:
                return first(pi) and second(pi)
        return PartitionClassFilter(
            name=f"{self.name}&{other.name}",
            size_rule=_meet_size_rules(self.size_rule, other.size_rule),
            noncrossing=self.noncrossing or other.noncrossing,
            color_rule=rule,
        )


ALL = PartitionClassFilter("all")
NONCROSSING = PartitionClassFilter("noncrossing", noncrossing=True)
PAIRINGS = PartitionClassFilter("pairings", size_rule="two")
NONCROSSING_PAIRINGS = PartitionClassFilter("noncrossing-pairings", size_rule="two", noncrossing=True)
EVEN_BLOCKS = PartitionClassFilter("even-blocks", size_rule="even")
SINGLETONS_AND_PAIRINGS = PartitionClassFilter("singletons-and-pairings", size_rule="at_most_two")

FILTERS: Dict[str, PartitionClassFilter] = {
    f.name: f for f in (ALL, NONCROSSING, PAIRINGS, NONCROSSING_PAIRINGS, EVEN_BLOCKS, SINGLETONS_AND_PAIRINGS)
}


# ============ ENUMERATION ============

def set_partitions(points: Tuple[int, ...], size_rule: str, noncrossing: bool) -> Iterator[List[Tuple[int, ...]]]:
    """
    Set partitions of `points`, recursing on the block of the first point.

    In noncrossing mode the points between consecutive legs of that block, and
    the tail after its last leg, are partitioned independently.
    """
    if not points:
        yield []
        return
    allowed = _SIZE_RULES[size_rule]
    first, rest = points[0], points[1:]
    for m in range(1, len(points) + 1):
        if not allowed(m):
            continue
        for companions in itertools.combinations(range(len(rest)), m - 1):
            block = (first,) + tuple(rest[i] for i in companions)
            if noncrossing:
                cuts = (-1,) + companions + (len(rest),)
                gaps = [rest[a + 1:b] for a, b in zip(cuts, cuts[1:])]
                options = [list(set_partitions(gap, size_rule, True)) for gap in gaps]
                for pieces in itertools.product(*options):
                    yield [block] + [b for piece in pieces for b in piece]
            else:
                taken = set(companions)
                remaining = tuple(p for i, p in enumerate(rest) if i not in taken)
                for tail in set_partitions(remaining, size_rule, False):
                    yield [block] + tail


def enumerate_partitions(points: Union[int, str, ColoredWord], filt: PartitionClassFilter = ALL) -> List[Partition]:
    """
    All one-row partitions of the given points accepted by the filter.

    Args:
        points: point count (uncolored) or colored word
        filt: partition class filter

    Returns:
        Partitions in canonical lexicographic order, without duplicates
    """
    word = as_word(points)
    n = len(word)
    if n > config.MAX_POINTS:
        raise CapacityError(f"Enumeration of {n} points exceeds the bound of {config.MAX_POINTS}")
    empty = ColoredWord((), colored=word.colored)
    found = []
    for grouping in set_partitions(tuple(range(n)), filt.size_rule, filt.noncrossing):
        pi = Partition.trusted(empty, word, [[(LOWER, p) for p in block] for block in grouping])
        if filt.color_rule is None or filt.color_rule(pi):
            found.append(pi)
    found.sort(key=lambda p: p.blocks)
    return found


def num_blocks(pi: Partition) -> int:
    return len(pi.blocks)


# ============ CROSSINGS ============

def boundary_positions(pi: Partition) -> Dict[Leg, int]:
    """
    Position of each leg on the boundary circle: lower row left to right,
    then the upper row right to left.
    """
    positions = {(LOWER, j): j for j in range(pi.l)}
    positions.update({(UPPER, i): pi.l + (pi.k - 1 - i) for i in range(pi.k)})
    return positions


def is_noncrossing(pi: Partition) -> bool:
    """No a<b<c<d (around the boundary) with a,c in one block and b,d in another."""
    where = boundary_positions(pi)
    blocks = [sorted(where[leg] for leg in block) for block in pi.blocks if len(block) > 1]
    for a, b in itertools.combinations(blocks, 2):
        gaps = {bisect.bisect(a, p) % len(a) for p in b}
        if len(gaps) > 1:
            return False
    return True


def has_even_blocks(pi: Partition) -> bool:
    return all(len(block) % 2 == 0 for block in pi.blocks)


# ============ LATTICE ============

def _require_same_points(pi: Partition, sigma: Partition):
    if pi.k != sigma.k or pi.l != sigma.l:
        raise ShapeError(f"Point sets differ: ({pi.k},{pi.l}) vs ({sigma.k},{sigma.l})")


def leq(pi: Partition, sigma: Partition) -> bool:
    """True iff every block of pi lies inside a block of sigma."""
    _require_same_points(pi, sigma)
    index = sigma.block_index
    return all(len({index[leg] for leg in block}) == 1 for block in pi.blocks)


def join(pi: Partition, sigma: Partition) -> Partition:
    """Least upper bound, by transitive closure of the union of the block relations."""
    _require_same_points(pi, sigma)
    sets = DisjointSet(pi.legs())
    for block in pi.blocks + sigma.blocks:
        for leg in block[1:]:
            sets.merge(block[0], leg)
    return Partition.trusted(pi.upper, pi.lower, [tuple(s) for s in sets.subsets()])


def kernel(indices: Sequence[int]) -> Partition:
    """One-row partition whose blocks collect the positions carrying equal indices."""
    if len(indices) == 0:
        raise DomainError("kernel() needs a nonempty index tuple")
    groups: Dict[int, List[int]] = {}
    for position, value in enumerate(indices):
        groups.setdefault(value, []).append(position)
    return Partition.one_row(groups.values())


def coarsenings(pi: Partition) -> Iterator[Partition]:
    """All sigma >= pi, pi itself included."""
    blocks = pi.blocks
    for grouping in set_partitions(tuple(range(len(blocks))), "any", False):
        merged = [tuple(leg for index in group for leg in blocks[index]) for group in grouping]
        yield Partition.trusted(pi.upper, pi.lower, merged)


def _type_count(parts: Dict[int, int]) -> int:
    """Number of set partitions with `parts[size]` blocks of each size."""
    n = sum(size * mult for size, mult in parts.items())
    denominator = 1
    for size, mult in parts.items():
        denominator *= factorial(size) ** mult * factorial(mult)
    return factorial(n) // denominator


@lru_cache(maxsize=None)
def _mobius_bottom_top(m: int) -> int:
    """
    mu(0_m, 1_m) on P(m) by the lattice recurrence, summing mu(0_m, tau) over
    tau < 1_m grouped by block type (each interval [0_m, tau] is a product of
    smaller full lattices).
    """
    if m <= 1:
        return 1
    total = 0
    for parts in integer_partitions(m):
        if parts.get(m) == 1:
            continue
        term = _type_count(parts)
        for size, mult in parts.items():
            term *= _mobius_bottom_top(size) ** mult
        total += term
    return -total


def mobius(pi: Partition, sigma: Partition) -> int:
    """
    Möbius function of the partition lattice.

    The interval [pi, sigma] factors over the blocks of sigma into full lattices
    P(m), m the number of pi-blocks inside the sigma-block.
    """
    _require_same_points(pi, sigma)
    if not leq(pi, sigma):
        return 0
    index = sigma.block_index
    counts = Counter(index[block[0]] for block in pi.blocks)
    value = 1
    for m in counts.values():
        value *= _mobius_bottom_top(m)
    return value


@lru_cache(maxsize=None)
def _mobius_top_down(pi: Partition, sigma: Partition) -> int:
    if pi == sigma:
        return 1
    total = 0
    for tau in coarsenings(pi):
        if tau == pi or not leq(tau, sigma):
            continue
        total += _mobius_top_down(tau, sigma)
    return -total


def noncrossing_interval(pi: Partition, sigma: Partition) -> List[Partition]:
    """
    All noncrossing tau with pi <= tau <= sigma. Covers in NC merge two blocks,
    so the interval is reached from pi by noncrossing two-block merges inside
    the blocks of sigma.
    """
    index = sigma.block_index
    seen = {pi}
    frontier = [pi]
    while frontier:
        grown = []
        for tau in frontier:
            blocks = tau.blocks
            for a, b in itertools.combinations(range(len(blocks)), 2):
                if index[blocks[a][0]] != index[blocks[b][0]]:
                    continue
                merged = [block for i, block in enumerate(blocks) if i not in (a, b)] + [blocks[a] + blocks[b]]
                rho = Partition.trusted(tau.upper, tau.lower, merged)
                if rho not in seen and is_noncrossing(rho):
                    seen.add(rho)
                    grown.append(rho)
        frontier = grown
    return sorted(seen, key=lambda p: (len(p.blocks), p.blocks))


def _mobius_noncrossing_recurrence(pi: Partition, sigma: Partition) -> int:
    # coarsest first: every rho > tau is settled before tau
    mu: Dict[Partition, int] = {}
    for tau in noncrossing_interval(pi, sigma):
        if tau == sigma:
            mu[tau] = 1
        else:
            mu[tau] = -sum(value for rho, value in mu.items() if leq(tau, rho))
    return mu[pi]


def mobius_in_poset(pi: Partition, sigma: Partition, noncrossing: bool = False) -> int:
    """
    Möbius function by the generic recurrence mu(pi, sigma) = -sum_{pi < tau <= sigma} mu(tau, sigma),
    on P (noncrossing=False) or on the noncrossing poset NC, whose interval is
    generated directly by noncrossing merges.
    """
    _require_same_points(pi, sigma)
    if noncrossing and not (is_noncrossing(pi) and is_noncrossing(sigma)):
        raise DomainError("Both partitions must be noncrossing")
    if not leq(pi, sigma):
        return 0
    if noncrossing:
        return _mobius_noncrossing_recurrence(pi, sigma)
    return _mobius_top_down(pi, sigma)


def _kreweras_cycles(blocks: Sequence[Sequence[int]], m: int) -> List[List[int]]:
    """Cycles of pi^{-1} gamma on 0..m-1, pi the cyclic permutation of each sorted block, gamma = (0 1 .. m-1)."""
    previous = {}
    for block in blocks:
        ordered = sorted(block)
        for a, b in zip(ordered, ordered[1:] + ordered[:1]):
            previous[b] = a
    seen = set()
    cycles = []
    for start in range(m):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = previous[(i + 1) % m]
        cycles.append(cycle)
    return cycles


def kreweras_complement(pi: Partition) -> Partition:
    """Kreweras complement K(pi) of a noncrossing one-row partition, |pi| + |K(pi)| = k + 1."""
    if not pi.is_one_row:
        raise ShapeError("kreweras_complement() is defined on one-row partitions")
    if not is_noncrossing(pi):
        raise DomainError(f"Kreweras complement needs a noncrossing partition, got {pi}")
    return Partition.one_row(_kreweras_cycles(pi.positions(), pi.l), pi.lower)


def _noncrossing_mobius_top(m: int) -> int:
    """mu_NC(0_m, 1_m) = (-1)^(m-1) Cat_(m-1)."""
    return (-1) ** (m - 1) * comb(2 * m - 2, m - 1) // m


def mobius_noncrossing(pi: Partition, sigma: Partition) -> int:
    """
    Möbius function of the NC lattice. Each block W of sigma contributes the
    relative Kreweras complement of pi restricted to W, and a complement block
    of size m is worth (-1)^(m-1) Cat_(m-1).
    """
    _require_same_points(pi, sigma)
    if not (is_noncrossing(pi) and is_noncrossing(sigma)):
        raise DomainError("Both partitions must be noncrossing")
    if not leq(pi, sigma):
        return 0
    where = boundary_positions(pi)
    index = sigma.block_index
    value = 1
    for w, block in enumerate(sigma.blocks):
        rank = {p: r for r, p in enumerate(sorted(where[leg] for leg in block))}
        inner = [[rank[where[leg]] for leg in b] for b in pi.blocks if index[b[0]] == w]
        for cycle in _kreweras_cycles(inner, len(block)):
            value *= _noncrossing_mobius_top(len(cycle))
    return value


def one_block(points: Union[int, ColoredWord]) -> Partition:
    word = as_word(points)
    if len(word) == 0:
        return Partition.one_row([], word)
    return Partition.one_row([range(len(word))], word)


def singletons(points: Union[int, ColoredWord]) -> Partition:
    word = as_word(points)
    return Partition.one_row([[p] for p in range(len(word))], word)


def adjacency_matrix(k: int) -> np.ndarray:
    """A_k(pi, sigma) = [pi <= sigma] over P(k) in canonical order."""
    members = enumerate_partitions(k)
    return np.array([[int(leq(p, s)) for s in members] for p in members], dtype=object)


def mobius_matrix(k: int) -> np.ndarray:
    """M_k(pi, sigma) = mu(pi, sigma) over P(k); satisfies A_k M_k = I."""
    members = enumerate_partitions(k)
    return np.array([[mobius(p, s) for s in members] for p in members], dtype=object)


# ============ BLOCK COUNTING ============

class _Ring(NamedTuple):
    zero: object
    one: object
    add: Callable
    mul: Callable
    times_t: Callable
    scale: Callable


def _polynomial_ring() -> _Ring:
    """Polynomials in t as object coefficient arrays (index = power of t)."""
    def add(a, b):
        size = max(len(a), len(b))
        out = np.zeros(size, dtype=object)
        out[:len(a)] += a
        out[:len(b)] += b
        return out
    return _Ring(
        zero=np.array([0], dtype=object),
        one=np.array([1], dtype=object),
        add=add,
        mul=lambda a, b: np.convolve(a, b),
        times_t=lambda a: np.concatenate((np.array([0], dtype=object), a)),
        scale=lambda a, c: a * c,
    )


def _scalar_ring(t) -> _Ring:
    return _Ring(zero=0, one=1, add=lambda a, b: a + b, mul=lambda a, b: a * b,
                 times_t=lambda a: a * t, scale=lambda a, c: a * c)


def _first_block_sums(n: int, size_rule: str, noncrossing: bool, ring: _Ring) -> List:
    """
    F[j] = sum over partitions of j points (restricted by the rules) of t^{#blocks}, j = 0..n.

    All partitions: F(j) = sum_m C(j-1, m-1) t F(j-m).
    Noncrossing: F(j) = sum_m t [x^{j-m}] F(x)^m (m gaps partitioned independently).
    """
    allowed = _SIZE_RULES[size_rule]
    sizes = [m for m in range(1, n + 1) if allowed(m)]
    F = [ring.one]
    if not noncrossing:
        for j in range(1, n + 1):
            total = ring.zero
            for m in sizes:
                if m > j:
                    break
                total = ring.add(total, ring.times_t(ring.scale(F[j - m], comb(j - 1, m - 1))))
            F.append(total)
        return F

    powers: Dict[Tuple[int, int], object] = {}

    def power_coefficient(m: int, d: int):
        # [x^d] F(x)^m, needs F[0..d]
        if m == 0:
            return ring.one if d == 0 else ring.zero
        key = (m, d)
        if key not in powers:
            total = ring.zero
            for i in range(d + 1):
                total = ring.add(total, ring.mul(F[i], power_coefficient(m - 1, d - i)))
            powers[key] = total
        return powers[key]

    for j in range(1, n + 1):
        total = ring.zero
        for m in sizes:
            if m > j:
                break
            total = ring.add(total, ring.times_t(power_coefficient(m, j - m)))
        F.append(total)
    return F


@lru_cache(maxsize=None)
def _counted_distribution(n: int, size_rule: str, noncrossing: bool) -> Tuple[int, ...]:
    if n > config.MAX_COUNTED_ORDER:
        raise CapacityError(f"Block counting for {n} points exceeds {config.MAX_COUNTED_ORDER}")
    poly = _first_block_sums(n, size_rule, noncrossing, _polynomial_ring())[n]
    return tuple(int(c) for c in poly)


@lru_cache(maxsize=None)
def weighted_partition_sums(n: int, size_rule: str, noncrossing: bool, t) -> Tuple:
    """(S_0, ..., S_n) with S_j = sum over the class on j points of t^{#blocks}, for numeric t."""
    if n > config.MAX_COUNTED_ORDER:
        raise CapacityError(f"Partition sums for {n} points exceed {config.MAX_COUNTED_ORDER}")
    return tuple(_first_block_sums(n, size_rule, noncrossing, _scalar_ring(t)))


def block_count_distribution(points: Union[int, ColoredWord], filt: PartitionClassFilter = ALL) -> Dict[int, int]:
    """
    {b: number of filtered partitions with b blocks}. Color-free filters are
    counted by recursion; color rules fall back to enumeration.
    """
    word = as_word(points)
    if filt.color_rule is None:
        counts = _counted_distribution(len(word), filt.size_rule, filt.noncrossing)
        return {b: c for b, c in enumerate(counts) if c}
    return dict(sorted(Counter(num_blocks(p) for p in enumerate_partitions(word, filt)).items()))


def count_by_blocks(points: Union[int, ColoredWord], b: int, filt: PartitionClassFilter = ALL) -> int:
    """Number of filtered partitions of the points with exactly b blocks."""
    n = len(as_word(points))
    if not 0 <= b <= n:
        raise DomainError(f"Block count {b} outside 0..{n}")
    return block_count_distribution(points, filt).get(b, 0)


# ============ FATTENING ============

def fatten(pi: Partition) -> Partition:
    """
    Double every point i into legs 2i, 2i+1 and join the right copy of each
    leg to the left copy of the next leg of its block, cyclically.
    """
    if not pi.is_one_row:
        raise ShapeError("fatten() is defined on one-row partitions")
    if not is_noncrossing(pi):
        raise DomainError(f"Cannot fatten crossing partition {pi}")
    pairs = []
    for block in pi.positions():
        for a, b in zip(block, block[1:] + block[:1]):
            pairs.append((2 * a + 1, 2 * b))
    return Partition.one_row(pairs)


def shrink(rho: Partition) -> Partition:
    """Inverse of fatten() on noncrossing pairings of an even number of points."""
    if not rho.is_one_row or rho.l % 2:
        raise ShapeError("shrink() needs a one-row partition on an even number of points")
    if any(len(block) != 2 for block in rho.blocks) or not is_noncrossing(rho):
        raise DomainError(f"{rho} is not a noncrossing pairing")
    sets = DisjointSet(range(rho.l // 2))
    for a, b in rho.positions():
        sets.merge(a // 2, b // 2)
    pi = Partition.one_row([sorted(s) for s in sets.subsets()])
    if fatten(pi) != rho:
        raise DomainError(f"{rho} is not the fattening of a noncrossing partition")
    return pi
