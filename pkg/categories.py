"""
Categories
Named categories of partitions: membership predicates, enumeration of members,
the categorical operations (horizontal and vertical concatenation with loop
count, upside-down turning) and exhaustive axiom verification.

Membership of a two-row partition is decided after rotating the upper legs
onto the lower row with their colors inverted; every color rule is stated on
the resulting signs (+1 white, -1 black).
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Union

from scipy.cluster.hierarchy import DisjointSet

from errors import DomainError, ShapeError
from partition_core import (
    BLACK, LOWER, UPPER, WHITE,
    ColoredWord, Partition, PartitionClassFilter,
    as_word, boundary_positions, enumerate_partitions, set_partitions,
)

logger = logging.getLogger("Categories")

_SIZE_RULE = {
    "p": "any", "p_even": "even", "cp_even": "even", "p_s": "any",
    "p2": "two", "cp2": "two", "p12": "at_most_two", "cp12": "at_most_two",
    "nc": "any", "nc_even": "even", "cnc_even": "even", "nc_s": "any",
    "nc2": "two", "cnc2": "two", "nc12": "at_most_two",
}

_COLOR_RULE = {
    "cp_even": "balanced", "cnc_even": "balanced",
    "p_s": "modular", "nc_s": "modular",
    "cp2": "matched", "cnc2": "matched", "cp12": "matched",
}

FAMILIES = tuple(_SIZE_RULE)


@dataclass(frozen=True)
class CategoryId:
    """
    One of the named categories. `s` parametrizes p_s / nc_s; None stands for
    s = infinity there (weighted equality in each block).
    """
    family: str
    s: Optional[int] = None

    def __post_init__(self):
        if self.family not in _SIZE_RULE:
            raise DomainError(f"Unknown category {self.family!r}")
        if self.family in ("p_s", "nc_s"):
            if self.s is not None and self.s < 1:
                raise DomainError(f"Category parameter must be >= 1, got {self.s}")
        elif self.s is not None:
            raise DomainError(f"Category {self.family} takes no parameter")

    @classmethod
    def parse(cls, token: str) -> "CategoryId":
        """Read 'p', 'nc2', 'p_s:4', 'nc_s:inf' and so on."""
        token = token.strip().lower()
        if ":" in token:
            family, raw = token.split(":", 1)
            if family not in ("p_s", "nc_s"):
                raise DomainError(f"Category {family!r} takes no parameter")
            if raw in ("inf", "infinity", "∞"):
                return cls(family, None)
            try:
                return cls(family, int(raw))
            except ValueError:
                raise DomainError(f"Bad category parameter {raw!r}")
        if token in ("p_s", "nc_s"):
            raise DomainError(f"Category {token} needs a parameter, e.g. {token}:4")
        return cls(token)

    @property
    def token(self) -> str:
        if self.family in ("p_s", "nc_s"):
            return f"{self.family}:{'inf' if self.s is None else self.s}"
        return self.family

    def __str__(self) -> str:
        return self.token

    @property
    def noncrossing(self) -> bool:
        return self.family.startswith(("nc", "cnc"))

    @property
    def is_colored(self) -> bool:
        return self.family in _COLOR_RULE

    @property
    def size_rule(self) -> str:
        return _SIZE_RULE[self.family]

    @cached_property
    def filter(self) -> PartitionClassFilter:
        rule = None
        if self.is_colored:
            def rule(pi: Partition, cat=self) -> bool:
                return _colors_ok(cat, pi)
        return PartitionClassFilter(self.token, self.size_rule, self.noncrossing, rule)


P = CategoryId("p")
P_EVEN = CategoryId("p_even")
CP_EVEN = CategoryId("cp_even")
P2 = CategoryId("p2")
CP2 = CategoryId("cp2")
P12 = CategoryId("p12")
CP12 = CategoryId("cp12")
NC = CategoryId("nc")
NC_EVEN = CategoryId("nc_even")
CNC_EVEN = CategoryId("cnc_even")
NC2 = CategoryId("nc2")
CNC2 = CategoryId("cnc2")
NC12 = CategoryId("nc12")


def ps(s: Optional[int]) -> CategoryId:
    return CategoryId("p_s", s)


def ncs(s: Optional[int]) -> CategoryId:
    return CategoryId("nc_s", s)


@dataclass(frozen=True)
class CompositionResult:
    result: Partition
    loops: int


# ============ MEMBERSHIP ============

def leg_signs(pi: Partition) -> Dict:
    """+1/-1 per leg after rotating the upper row down with color inversion."""
    signs = {}
    for leg in pi.legs():
        white = pi.color(leg) == WHITE
        signs[leg] = (1 if white else -1) if leg[0] == LOWER else (-1 if white else 1)
    return signs


def _colors_ok(cat: CategoryId, pi: Partition) -> bool:
    rule = _COLOR_RULE.get(cat.family)
    if rule is None:
        return True
    signs = leg_signs(pi)
    for block in pi.blocks:
        weight = sum(signs[leg] for leg in block)
        if rule == "balanced" and weight != 0:
            return False
        if rule == "matched" and len(block) == 2 and weight != 0:
            return False
        if rule == "modular":
            if cat.s is None and weight != 0:
                return False
            if cat.s is not None and weight % cat.s:
                return False
    return True


def contains(cat: CategoryId, pi: Partition) -> bool:
    """True iff pi satisfies the block, crossing and color predicate of the category."""
    return cat.filter.accepts(pi)


@lru_cache(maxsize=None)
def members(cat: CategoryId, word: ColoredWord) -> Tuple[Partition, ...]:
    """One-row members D(word) in canonical order."""
    return tuple(enumerate_partitions(word, cat.filter))


def category_members(cat: CategoryId, points: Union[int, str, ColoredWord]) -> List[Partition]:
    return list(members(cat, as_word(points)))


@lru_cache(maxsize=None)
def members_two_row(cat: CategoryId, upper: ColoredWord, lower: ColoredWord) -> Tuple[Partition, ...]:
    """Members of D(upper, lower), generated along the boundary circle."""
    shape = Partition.trusted(upper, lower, [])
    where = boundary_positions(shape)
    leg_at = {position: leg for leg, position in where.items()}
    found = []
    for grouping in set_partitions(tuple(range(len(leg_at))), cat.size_rule, cat.noncrossing):
        pi = Partition.trusted(upper, lower, [[leg_at[p] for p in block] for block in grouping])
        if _colors_ok(cat, pi):
            found.append(pi)
    found.sort(key=lambda p: p.blocks)
    return tuple(found)


# ============ OPERATIONS ============

def horizontal_concat(pi: Partition, sigma: Partition) -> Partition:
    """[pi sigma]: sigma placed to the right of pi on both rows."""
    shifted = [
        tuple((row, pos + (pi.k if row == UPPER else pi.l)) for row, pos in block)
        for block in sigma.blocks
    ]
    return Partition.trusted(pi.upper.concat(sigma.upper), pi.lower.concat(sigma.lower), list(pi.blocks) + shifted)


def vertical_concat(pi: Partition, sigma: Partition) -> CompositionResult:
    """
    Glue sigma on top of pi along the middle row, erase the middle points and
    count the closed loops removed.
    """
    if sigma.l != pi.k or sigma.lower.letters != pi.upper.letters:
        raise ShapeError(f"Middle rows do not match: {sigma.lower} over {pi.upper}")
    top = {leg: (("top", leg[1]) if leg[0] == UPPER else ("mid", leg[1])) for leg in sigma.legs()}
    bottom = {leg: (("mid", leg[1]) if leg[0] == UPPER else ("bottom", leg[1])) for leg in pi.legs()}
    sets = DisjointSet(list(top.values()) + [node for node in bottom.values() if node[0] == "bottom"])
    for block in sigma.blocks:
        for leg in block[1:]:
            sets.merge(top[block[0]], top[leg])
    for block in pi.blocks:
        for leg in block[1:]:
            sets.merge(bottom[block[0]], bottom[leg])
    blocks, loops = [], 0
    for component in sets.subsets():
        outer = [(UPPER, pos) if tag == "top" else (LOWER, pos) for tag, pos in component if tag != "mid"]
        if outer:
            blocks.append(outer)
        else:
            loops += 1
    return CompositionResult(Partition.trusted(sigma.upper, pi.lower, blocks), loops)


def involute(pi: Partition) -> Partition:
    """Upside-down turning: rows swapped, colors inverted."""
    flipped = [tuple((1 - row, pos) for row, pos in block) for block in pi.blocks]
    return Partition.trusted(pi.lower.inverted(), pi.upper.inverted(), flipped)


def identity(word: ColoredWord) -> Partition:
    """Through-strings joining upper i to lower i."""
    return Partition.trusted(word, word, [((UPPER, i), (LOWER, i)) for i in range(len(word))])


# ============ AXIOMS ============

@dataclass
class AxiomReport:
    category: str
    k_max: int
    passed: bool = True
    checked: int = 0
    counterexample: Optional[str] = None
    crossing_present: Optional[bool] = None

    def fail(self, message: str):
        if self.passed:
            self.passed = False
            self.counterexample = message
            logger.info(f"Axiom check for {self.category} failed: {message}")

    def to_json(self) -> Dict:
        return {
            "category": self.category,
            "k_max": self.k_max,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "crossing_present": self.crossing_present,
        }


def _words(n: int, colored: bool) -> List[ColoredWord]:
    if not colored:
        return [ColoredWord.uncolored(n)]
    return [ColoredWord(letters) for letters in itertools.product((WHITE, BLACK), repeat=n)]


def verify_axioms(cat: Union[CategoryId, Callable[[Partition], bool]], k_max: int = 6,
                  colored: bool = False, name: Optional[str] = None) -> AxiomReport:
    """
    Exhaustive check of the category axioms on members with at most k_max legs.

    Args:
        cat: a named category, or any predicate on two-row partitions
        k_max: leg budget (<= 6)
        colored: for predicates, whether to range over colored words
        name: label for predicate reports

    Returns:
        AxiomReport with the first counterexample on failure
    """
    if k_max > 6 or k_max < 0:
        raise DomainError(f"k_max must lie in 0..6, got {k_max}")
    if isinstance(cat, CategoryId):
        predicate = lambda pi: contains(cat, pi)
        colored = cat.is_colored
        label = cat.token
    else:
        predicate = cat
        label = name or getattr(cat, "__name__", "predicate")
    report = AxiomReport(label, k_max)

    by_shape: Dict[Tuple[ColoredWord, ColoredWord], List[Partition]] = {}
    for n in range(k_max + 1):
        for k in range(n + 1):
            for upper in _words(k, colored):
                for lower in _words(n - k, colored):
                    if isinstance(cat, CategoryId):
                        found = list(members_two_row(cat, upper, lower))
                    else:
                        found = [p for p in _all_two_row(upper, lower) if predicate(p)]
                    if found:
                        by_shape[(upper, lower)] = found
    everything = [p for group in by_shape.values() for p in group]
    by_legs: Dict[int, List[Partition]] = {}
    for p in everything:
        by_legs.setdefault(p.num_legs, []).append(p)

    for color in _words(1, colored):
        report.checked += 1
        if not predicate(identity(color)):
            report.fail(f"identity on {color} missing")
    semicircles = ["oo"] if not colored else ["ob", "bo"]
    for letters in semicircles:
        word = ColoredWord(tuple(letters), colored=colored)
        cup = Partition.trusted(ColoredWord((), colored=colored), word, [((LOWER, 0), (LOWER, 1))])
        report.checked += 1
        if not predicate(cup):
            report.fail(f"semicircle on {letters} missing")

    plain = ColoredWord((WHITE, WHITE), colored=colored)
    crossing = Partition.trusted(plain, plain, [((UPPER, 0), (LOWER, 1)), ((UPPER, 1), (LOWER, 0))])
    report.crossing_present = bool(predicate(crossing))
    if isinstance(cat, CategoryId) and not cat.noncrossing and not report.crossing_present:
        report.fail("crossing missing from a classical category")
    if isinstance(cat, CategoryId) and cat.noncrossing and report.crossing_present:
        report.fail("crossing present in a noncrossing category")

    for pi in everything:
        report.checked += 1
        if not predicate(involute(pi)):
            report.fail(f"involution: ({pi})* not a member")
            break

    pairs = (
        (pi, sigma)
        for pi in everything
        for n in range(k_max - pi.num_legs + 1)
        for sigma in by_legs.get(n, [])
    )
    for pi, sigma in pairs:
        report.checked += 1
        if not predicate(horizontal_concat(pi, sigma)):
            report.fail(f"horizontal: [{pi} {sigma}] not a member")
            break

    for sigma in everything:
        for (upper, lower), group in by_shape.items():
            if upper.letters != sigma.lower.letters or sigma.k + len(upper) + len(lower) > k_max:
                continue
            for pi in group:
                report.checked += 1
                if not predicate(vertical_concat(pi, sigma).result):
                    report.fail(f"vertical: {sigma} over {pi} not a member")
                    return report
    return report


def _all_two_row(upper: ColoredWord, lower: ColoredWord) -> List[Partition]:
    legs = [(UPPER, i) for i in range(len(upper))] + [(LOWER, j) for j in range(len(lower))]
    return [
        Partition.trusted(upper, lower, [[legs[p] for p in block] for block in grouping])
        for grouping in set_partitions(tuple(range(len(legs))), "any", False)
    ]
