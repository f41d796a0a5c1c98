"""
Group Oracle
Fully enumerated finite groups of generalized permutation matrices (cyclic,
dihedral, symmetric, alternating, hyperoctahedral, complex reflection) used as
ground truth: exact counting-measure integrals, character laws, truncated
character laws and fixed-point dimensions.

Root-of-unity entries are stored as exponents; sums are accumulated in the
group ring Z[x]/(x^s - 1) and reduced modulo Phi_s at the end.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

import config
from categories import P, P_EVEN, CategoryId, ps
from cyclotomic import CyclotomicValue
from errors import CapacityError, ConsistencyError, DomainError, ShapeError
from partition_core import BLACK, ColoredWord, as_word

logger = logging.getLogger("GroupOracle")

FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "hyperoctahedral", "reflection")


# ============ GROUPS ============

@dataclass(frozen=True)
class GroupSpec:
    """
    family: one of FAMILIES; s is the root order of the phases (hyperoctahedral
    has s = 2, the permutation families s = 1).
    """
    family: str
    N: int
    s: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"Unknown group family {self.family!r}")
        if self.N < 1 or self.s < 1:
            raise DomainError(f"Group parameters must be positive, got N={self.N}, s={self.s}")
        if self.family == "hyperoctahedral" and self.s != 2:
            object.__setattr__(self, "s", 2)
        elif self.family not in ("reflection", "hyperoctahedral") and self.s != 1:
            raise DomainError(f"The {self.family} family takes no phase order")

    @classmethod
    def parse(cls, token: str) -> "GroupSpec":
        """'symmetric:4', 'hyperoctahedral:3', 'reflection:2:3'."""
        parts = token.strip().lower().split(":")
        try:
            if parts[0] == "reflection":
                return cls("reflection", int(parts[1]), int(parts[2]))
            if len(parts) != 2:
                raise ValueError(token)
            return cls(parts[0], int(parts[1]))
        except (IndexError, ValueError):
            raise DomainError(f"Cannot read group {token!r}; expected e.g. symmetric:4 or reflection:2:3")

    @property
    def order(self) -> int:
        N = self.N
        return {
            "cyclic": N,
            "dihedral": 2 * N,
            "symmetric": factorial(N),
            "alternating": max(factorial(N) // 2, 1),
            "hyperoctahedral": 2 ** N * factorial(N),
            "reflection": self.s ** N * factorial(N),
        }[self.family]

    @property
    def token(self) -> str:
        if self.family == "reflection":
            return f"reflection:{self.N}:{self.s}"
        return f"{self.family}:{self.N}"

    def __str__(self) -> str:
        return self.token


def cyclic(N: int) -> GroupSpec:
    return GroupSpec("cyclic", N)


def dihedral(N: int) -> GroupSpec:
    return GroupSpec("dihedral", N)


def symmetric(N: int) -> GroupSpec:
    return GroupSpec("symmetric", N)


def alternating(N: int) -> GroupSpec:
    return GroupSpec("alternating", N)


def hyperoctahedral(N: int) -> GroupSpec:
    return GroupSpec("hyperoctahedral", N, 2)


def reflection(N: int, s: int) -> GroupSpec:
    return GroupSpec("reflection", N, s)


def easy_category(group: GroupSpec) -> CategoryId:
    """Category whose Gram ranks count the fixed points of the group's tensor powers."""
    if group.family == "symmetric":
        return P
    if group.family == "hyperoctahedral":
        return P_EVEN
    if group.family == "reflection":
        return ps(group.s)
    raise DomainError(f"No partition category attached to the {group.family} family")


@dataclass(frozen=True)
class GenPermMatrix:
    """Column j has its single nonzero entry zeta_s^{phases[j]} in row perm[j] (0-based)."""
    perm: Tuple[int, ...]
    phases: Tuple[int, ...]
    s: int = 1

    def entry_exponent(self, row: int, column: int) -> Optional[int]:
        """Exponent of the (row, column) entry, None for a zero entry."""
        return self.phases[column] % self.s if self.perm[column] == row else None

    def fixed_points(self) -> List[int]:
        return [j for j, image in enumerate(self.perm) if image == j]

    def trace_ring(self, conjugate: bool = False) -> List[int]:
        """Trace as a group-ring vector of length s."""
        counts = [0] * self.s
        for j in self.fixed_points():
            counts[(-self.phases[j] if conjugate else self.phases[j]) % self.s] += 1
        return counts

    def to_matrix(self) -> np.ndarray:
        """Dense exact matrix: ints for s <= 2, CyclotomicValue entries otherwise."""
        N = len(self.perm)
        out = np.zeros((N, N), dtype=object)
        if self.s > 2:
            out.fill(CyclotomicValue.zero(self.s))
        for j, row in enumerate(self.perm):
            if self.s <= 2:
                out[row, j] = -1 if self.phases[j] % self.s else 1
            else:
                out[row, j] = CyclotomicValue.root(self.s, self.phases[j])
        return out


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return inversions % 2


def _permutations(group: GroupSpec) -> List[Tuple[int, ...]]:
    N = group.N
    if group.family == "cyclic":
        return sorted(tuple((i + k) % N for i in range(N)) for k in range(N))
    if group.family == "dihedral":
        rotations = [tuple((i + k) % N for i in range(N)) for k in range(N)]
        symmetries = [tuple((k - i) % N for i in range(N)) for k in range(N)]
        return sorted(rotations + symmetries)
    perms = list(itertools.permutations(range(N)))
    if group.family == "alternating":
        return [p for p in perms if _parity(p) == 0]
    return perms


def enumerate_group(group: GroupSpec) -> Iterator[GenPermMatrix]:
    """
    All elements, permutations in lexicographic order, then phase vectors.

    Raises:
        CapacityError: when the order exceeds EASYGRAM_MAX_GROUP_ORDER
    """
    if group.order > config.MAX_GROUP_ORDER:
        raise CapacityError(f"{group} has {group.order} elements, above {config.MAX_GROUP_ORDER}")
    logger.info(f"Enumerating {group} ({group.order} elements)")
    phase_vectors = list(itertools.product(range(group.s), repeat=group.N))
    for perm in _permutations(group):
        for phases in phase_vectors:
            yield GenPermMatrix(perm, phases, group.s)


# ============ LAWS ============

Atom = Union[Fraction, CyclotomicValue]


def _atom(s: int, counts: Sequence[int]) -> Atom:
    value = CyclotomicValue.from_group_ring(s, counts)
    return value.to_fraction() if value.is_rational else value


def _atom_key(atom: Atom) -> Tuple:
    if isinstance(atom, CyclotomicValue):
        return (1, atom.sort_key())
    return (0, (atom,))


def _render(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass
class DiscreteLaw:
    """Finitely supported law: atoms with positive exact probabilities summing to 1."""
    atoms: List[Tuple[Atom, Fraction]]

    def __post_init__(self):
        merged: Dict = {}
        for atom, prob in self.atoms:
            if prob:
                merged[atom] = merged.get(atom, Fraction(0)) + Fraction(prob)
        if any(p < 0 for p in merged.values()):
            raise DomainError("Probabilities must be nonnegative")
        if sum(merged.values(), Fraction(0)) != 1:
            raise ConsistencyError(f"Probabilities sum to {sum(merged.values())}, not 1")
        self.atoms = sorted(merged.items(), key=lambda item: _atom_key(item[0]))

    def as_dict(self) -> Dict:
        return dict(self.atoms)

    def probability(self, atom) -> Fraction:
        return self.as_dict().get(atom, Fraction(0))

    def moment(self, k: int):
        """E[X^k]; a CyclotomicValue when some atom is irrational."""
        total = Fraction(0)
        for atom, prob in self.atoms:
            total = total + prob * atom ** k
        return total

    def to_json(self) -> List[Dict]:
        out = []
        for atom, prob in self.atoms:
            out.append({
                "atom": atom.to_json() if isinstance(atom, CyclotomicValue) else _render(atom),
                "prob": _render(prob),
            })
        return out

    def __str__(self) -> str:
        return " + ".join(f"({_render(p)})δ_{atom}" for atom, p in self.atoms)


def character_law(group: GroupSpec) -> DiscreteLaw:
    """Exact law of the trace over the counting measure."""
    counts: Counter = Counter()
    for g in enumerate_group(group):
        counts[tuple(g.trace_ring())] += 1
    order = group.order
    return DiscreteLaw([(_atom(group.s, ring), Fraction(n, order)) for ring, n in counts.items()])


def truncated_character_law(N: int, s: int) -> DiscreteLaw:
    """Law of g_11 + ... + g_ss over S_N, by enumeration and by the closed formula; they must agree."""
    if not 1 <= s <= N:
        raise DomainError(f"Truncation s must lie in 1..{N}, got {s}")
    counts: Counter = Counter()
    for g in enumerate_group(symmetric(N)):
        counts[sum(1 for j in range(s) if g.perm[j] == j)] += 1
    enumerated = DiscreteLaw([(Fraction(j), Fraction(n, factorial(N))) for j, n in counts.items()])
    closed = truncated_law_closed(N, s)
    if enumerated.atoms != closed.atoms:
        raise ConsistencyError(f"Truncated law of S_{N}, s={s}: enumeration {enumerated} vs closed {closed}")
    return enumerated


def truncated_law_closed(N: int, s: int) -> DiscreteLaw:
    """(s!/N!) sum_p (N-p)!/(s-p)! (delta_1 - delta_0)^{*p}/p!."""
    weights = []
    for j in range(s + 1):
        total = Fraction(0)
        for p in range(j, s + 1):
            total += Fraction(factorial(N - p), factorial(s - p) * factorial(p)) * comb(p, j) * (-1) ** (p - j)
        weights.append((Fraction(j), total * Fraction(factorial(s), factorial(N))))
    return DiscreteLaw(weights)


def cyclic_law_closed(N: int) -> DiscreteLaw:
    return DiscreteLaw([(Fraction(0), 1 - Fraction(1, N)), (Fraction(N), Fraction(1, N))])


def dihedral_law_closed(N: int) -> DiscreteLaw:
    if N % 2 == 0:
        return DiscreteLaw([
            (Fraction(0), Fraction(3, 4) - Fraction(1, 2 * N)),
            (Fraction(2), Fraction(1, 4)),
            (Fraction(N), Fraction(1, 2 * N)),
        ])
    return DiscreteLaw([
        (Fraction(0), Fraction(1, 2) - Fraction(1, 2 * N)),
        (Fraction(1), Fraction(1, 2)),
        (Fraction(N), Fraction(1, 2 * N)),
    ])


def symmetric_law_closed(N: int) -> DiscreteLaw:
    """P(chi = k) = (1/k!) sum_{p=0}^{N-k} (-1)^p / p!."""
    atoms = []
    for k in range(N + 1):
        tail = sum((Fraction((-1) ** p, factorial(p)) for p in range(N - k + 1)), Fraction(0))
        atoms.append((Fraction(k), tail / factorial(k)))
    return DiscreteLaw(atoms)


# ============ INTEGRALS ============

def _finish(group: GroupSpec, ring: Sequence[int]) -> Atom:
    value = CyclotomicValue.from_group_ring(group.s, ring) / group.order
    return value.to_fraction() if value.is_rational else value


def integrate_exact(group: GroupSpec, word: Union[int, str, ColoredWord],
                    i: Sequence[int], j: Sequence[int]) -> Atom:
    """
    (1/|G|) sum_g prod_m g_{i_m j_m}, conjugated on black letters; indices 1-based.
    """
    word = as_word(word)
    if len(i) != len(word) or len(j) != len(word):
        raise ShapeError(f"Exponent word of length {len(word)} with index tuples of lengths {len(i)}, {len(j)}")
    if any(not 1 <= x <= group.N for x in list(i) + list(j)):
        raise DomainError(f"Indices must lie in 1..{group.N}")
    signs = [-1 if letter == BLACK else 1 for letter in word.letters]
    ring = [0] * group.s
    for g in enumerate_group(group):
        exponent = 0
        for sign, row, column in zip(signs, i, j):
            e = g.entry_exponent(row - 1, column - 1)
            if e is None:
                break
            exponent += sign * e
        else:
            ring[exponent % group.s] += 1
    return _finish(group, ring)


def _ring_product(a: Sequence[int], b: Sequence[int], s: int) -> List[int]:
    out = [0] * s
    for x, ca in enumerate(a):
        if ca:
            for y, cb in enumerate(b):
                if cb:
                    out[(x + y) % s] += ca * cb
    return out


def fix_dim(group: GroupSpec, word: Union[int, str, ColoredWord]) -> int:
    """
    dim Fix(u^{(x)word}) = (1/|G|) sum_g prod of traces (conjugated on black letters).

    Raises:
        ConsistencyError: if the average is not a nonnegative integer
    """
    word = as_word(word)
    total = [0] * group.s
    for g in enumerate_group(group):
        plain, conj = g.trace_ring(), g.trace_ring(conjugate=True)
        acc = [1] + [0] * (group.s - 1)
        for letter in word.letters:
            acc = _ring_product(acc, conj if letter == BLACK else plain, group.s)
        total = [t + a for t, a in zip(total, acc)]
    value = _finish(group, total)
    if not isinstance(value, Fraction) or value.denominator != 1 or value < 0:
        raise ConsistencyError(f"Fixed-point dimension of {group} on {word} came out as {value}")
    return int(value)
