"""
Temperley-Lieb & Jones
Temperley-Lieb diagram algebra with a loop parameter, braid-word representations
(Kauffman and Jones maps), the Markov trace, and the Jones polynomial of braid
closures with Markov-move and skein checks.

Diagrams are noncrossing pairings in NC_2(k, k). The product x*y stacks x on
top of y; every closed loop is worth delta.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from scipy.cluster.hierarchy import DisjointSet

from categories import NC2, identity, involute, members_two_row, vertical_concat
from errors import ConsistencyError, DomainError, ShapeError
from partition_core import LOWER, UPPER, ColoredWord, Partition, join, num_blocks

logger = logging.getLogger("TLJones")

MAX_STABILIZED_STRANDS = 5

Number = Union[int, Fraction]


# ============ LAURENT POLYNOMIALS ============

def _render(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class LaurentPoly:
    """Finite sum of c * var^e with rational exponents e; zero coefficients are dropped."""

    __slots__ = ("terms", "var")

    def __init__(self, terms: Optional[Dict] = None, var: str = "A"):
        self.var = var
        clean = {}
        for exponent, coeff in (terms or {}).items():
            if coeff != 0:
                clean[Fraction(exponent)] = coeff
        self.terms = clean

    @classmethod
    def constant(cls, c: Number, var: str = "A") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, exponent, coeff: Number = 1, var: str = "A") -> "LaurentPoly":
        return cls({exponent: coeff}, var)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and not (other.is_constant or self.is_constant):
                raise DomainError(f"Mixing variables {self.var} and {other.var}")
            return other
        return LaurentPoly.constant(other, self.var)

    @property
    def is_constant(self) -> bool:
        return all(e == 0 for e in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var if self.terms else other.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        out: Dict[Fraction, Number] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        var = self.var if not self.is_constant else other.var
        return LaurentPoly(out, var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial:
                raise DomainError(f"Cannot invert the non-monomial {self}")
            (e, c), = self.terms.items()
            return LaurentPoly({-e * -n: Fraction(1) / Fraction(c) ** -n}, self.var)
        out = LaurentPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.var)
        if self.terms == other.terms:
            return self.var == other.var or self.is_constant
        return False

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def substitute(self, scale: Fraction, var: str) -> "LaurentPoly":
        """var_old^e -> var_new^(scale * e)."""
        return LaurentPoly({e * scale: c for e, c in self.terms.items()}, var)

    def evaluate(self, x) -> complex:
        return sum(c * complex(x) ** float(e) for e, c in self.terms.items())

    def to_json(self) -> Dict[str, Union[int, str]]:
        """{"q^1/2": 1, ...} sorted by exponent; non-integral coefficients as 'p/q'."""
        return {
            f"{self.var}^{_render(e)}": int(c) if Fraction(c).denominator == 1 else _render(c)
            for e, c in sorted(self.terms.items())
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            if e == 0:
                parts.append(_render(c))
                continue
            power = self.var if e == 1 else f"{self.var}^{_render(e)}"
            parts.append(power if c == 1 else (f"-{power}" if c == -1 else f"{_render(c)}{power}"))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _one(var: str) -> LaurentPoly:
    return LaurentPoly.constant(1, var)


# ============ LOOP PARAMETER ============

@dataclass(frozen=True)
class LoopParam:
    """delta as a Laurent polynomial: formal variable, integer, or the Kauffman/Jones value."""
    value: LaurentPoly
    name: str

    @classmethod
    def formal(cls) -> "LoopParam":
        return cls(LaurentPoly.monomial(1, var="δ"), "formal")

    @classmethod
    def integer(cls, N: int) -> "LoopParam":
        return cls(LaurentPoly.constant(N, "δ"), f"N={N}")

    @classmethod
    def kauffman(cls) -> "LoopParam":
        return cls(LaurentPoly({2: -1, -2: -1}, "A"), "kauffman")

    @classmethod
    def jones(cls) -> "LoopParam":
        return cls(LaurentPoly({Fraction(1, 2): 1, Fraction(-1, 2): 1}, "q"), "jones")

    def power(self, n: int) -> LaurentPoly:
        return self.value ** n

    @property
    def var(self) -> str:
        return self.value.var


# ============ TEMPERLEY-LIEB ============

def _strands(k: int) -> ColoredWord:
    return ColoredWord.uncolored(k)


def identity_diagram(k: int) -> Partition:
    return identity(_strands(k))


def epsilon_diagram(i: int, k: int) -> Partition:
    """epsilon_i (1-based): cap joining upper i, i+1 over a cup joining lower i, i+1."""
    if not 1 <= i <= k - 1:
        raise ShapeError(f"epsilon_{i} needs 1 <= i <= {k - 1}")
    blocks = [((UPPER, i - 1), (UPPER, i)), ((LOWER, i - 1), (LOWER, i))]
    blocks += [((UPPER, j), (LOWER, j)) for j in range(k) if j not in (i - 1, i)]
    return Partition.trusted(_strands(k), _strands(k), blocks)


def tl_basis(k: int) -> List[Partition]:
    """NC_2(k, k) in canonical order."""
    return list(members_two_row(NC2, _strands(k), _strands(k)))


@lru_cache(maxsize=None)
def _stack(top: Partition, bottom: Partition) -> Tuple[Partition, int]:
    glued = vertical_concat(bottom, top)
    return glued.result, glued.loops


@dataclass
class TLElement:
    """Formal sum of TL diagrams on k strands with Laurent coefficients."""
    k: int
    terms: Dict[Partition, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {d: c for d, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def diagram(cls, d: Partition, coeff: Optional[LaurentPoly] = None, var: str = "δ") -> "TLElement":
        return cls(d.k, {d: coeff if coeff is not None else _one(var)})

    @classmethod
    def identity(cls, k: int, var: str = "δ") -> "TLElement":
        return cls.diagram(identity_diagram(k), var=var)

    @classmethod
    def epsilon(cls, i: int, k: int, var: str = "δ") -> "TLElement":
        return cls.diagram(epsilon_diagram(i, k), var=var)

    def __add__(self, other: "TLElement") -> "TLElement":
        if self.k != other.k:
            raise ShapeError(f"Strand counts differ: {self.k} vs {other.k}")
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return TLElement(self.k, out)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + other.scale(-1)

    def scale(self, c) -> "TLElement":
        return TLElement(self.k, {d: coeff * c for d, coeff in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.k == other.k and (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def star(self) -> "TLElement":
        """Upside-down turning on every diagram."""
        return TLElement(self.k, {involute(d): c for d, c in self.terms.items()})

    def to_json(self) -> List[Dict]:
        return [{"diagram": str(d), "coefficient": c.to_json()} for d, c in sorted(self.terms.items(), key=lambda t: t[0].blocks)]


def tl_multiply(x: TLElement, y: TLElement, delta: LoopParam) -> TLElement:
    """x*y: x stacked on y, each closed loop replaced by delta."""
    if x.k != y.k:
        raise ShapeError(f"Strand counts differ: {x.k} vs {y.k}")
    out: Dict[Partition, LaurentPoly] = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            d, loops = _stack(dx, dy)
            coeff = cx * cy * delta.power(loops)
            out[d] = out[d] + coeff if d in out else coeff
    return TLElement(x.k, out)


def closure_loops(d: Partition) -> int:
    """Loops after joining upper i to lower i with parallel arcs on the right."""
    sets = DisjointSet(d.legs())
    for block in d.blocks:
        for leg in block[1:]:
            sets.merge(block[0], leg)
    for i in range(d.k):
        sets.merge((UPPER, i), (LOWER, i))
    return len(sets.subsets())


def markov_trace(x: TLElement, delta: LoopParam) -> LaurentPoly:
    """tr(D) = delta^{c(closure) - k}, extended linearly; tr(1) = 1."""
    total = LaurentPoly({}, delta.var)
    for d, c in x.terms.items():
        total = total + c * delta.power(closure_loops(d) - x.k)
    return total


def closure_value(x: TLElement, delta: LoopParam) -> LaurentPoly:
    """sum of coeff * delta^{c - 1}: the closure normalized so one circle is worth 1."""
    total = LaurentPoly({}, delta.var)
    for d, c in x.terms.items():
        total = total + c * delta.power(closure_loops(d) - 1)
    return total


def rotate_diagram(d: Partition) -> Partition:
    """TL diagram on k strands as a one-row pairing of 2k points: upper i -> i, lower j -> 2k-1-j."""
    k = d.k
    position = {(UPPER, i): i for i in range(k)}
    position.update({(LOWER, j): 2 * k - 1 - j for j in range(k)})
    return Partition.one_row([[position[leg] for leg in block] for block in d.blocks])


def gram_link_holds(k: int) -> bool:
    """delta^k tr(x y*) = delta^{|rot x v rot y|} on basis diagrams, formal delta."""
    delta = LoopParam.formal()
    basis = tl_basis(k)
    for x in basis:
        for y in basis:
            lhs = delta.power(k) * markov_trace(tl_multiply(TLElement.diagram(x), TLElement.diagram(y).star(), delta), delta)
            rhs = delta.power(num_blocks(join(rotate_diagram(x), rotate_diagram(y))))
            if lhs != rhs:
                logger.info(f"Gram link fails for {x}, {y}")
                return False
    return True


def epsilon_relations_hold(k: int, delta: Optional[LoopParam] = None) -> bool:
    """e_i^2 = delta e_i, e_i e_{i+-1} e_i = e_i, e_i e_j = e_j e_i for |i - j| >= 2."""
    delta = delta or LoopParam.formal()
    var = delta.var
    e = {i: TLElement.epsilon(i, k, var) for i in range(1, k)}

    def mul(*factors):
        out = factors[0]
        for f in factors[1:]:
            out = tl_multiply(out, f, delta)
        return out

    for i in range(1, k):
        if mul(e[i], e[i]) != e[i].scale(delta.value):
            return False
        for j in (i - 1, i + 1):
            if j in e and mul(e[i], e[j], e[i]) != e[i]:
                return False
        for j in range(i + 2, k):
            if mul(e[i], e[j]) != mul(e[j], e[i]):
                return False
    return True


def is_tracial(k: int) -> bool:
    """tr(xy) = tr(yx) on all basis pairs, formal delta."""
    delta = LoopParam.formal()
    basis = [TLElement.diagram(d) for d in tl_basis(k)]
    for x in basis:
        for y in basis:
            if markov_trace(tl_multiply(x, y, delta), delta) != markov_trace(tl_multiply(y, x, delta), delta):
                return False
    return True


# ============ BRAIDS ============

@dataclass(frozen=True)
class BraidWord:
    """Letters +-i (1 <= i <= strands-1) for g_i and g_i^{-1}."""
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ShapeError(f"A braid needs at least one strand, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise ShapeError(f"Letter {letter} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, strands: int, text: str) -> "BraidWord":
        try:
            return cls(strands, tuple(int(tok) for tok in text.replace(",", " ").split()))
        except ValueError:
            raise DomainError(f"Cannot read braid word {text!r}")

    @property
    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def __str__(self) -> str:
        return f"B_{self.strands}[{' '.join(str(x) for x in self.letters)}]"


MAPS = ("kauffman", "jones")


def _generator(letter: int, k: int, kind: str) -> Tuple[TLElement, LoopParam]:
    i = abs(letter)
    if kind == "kauffman":
        delta = LoopParam.kauffman()
        a = LaurentPoly.monomial(1 if letter > 0 else -1, var="A")
        a_inv = LaurentPoly.monomial(-1 if letter > 0 else 1, var="A")
        return TLElement.identity(k, "A").scale(a) + TLElement.epsilon(i, k, "A").scale(a_inv), delta
    if kind == "jones":
        delta = LoopParam.jones()
        t = LaurentPoly.monomial(Fraction(1, 2) if letter > 0 else Fraction(-1, 2), var="q")
        return TLElement.epsilon(i, k, "q").scale(t) - TLElement.identity(k, "q"), delta
    raise DomainError(f"Unknown braid map {kind!r}; expected one of {MAPS}")


def loop_param(kind: str) -> LoopParam:
    if kind == "kauffman":
        return LoopParam.kauffman()
    if kind == "jones":
        return LoopParam.jones()
    raise DomainError(f"Unknown braid map {kind!r}; expected one of {MAPS}")


def braid_to_tl(w: BraidWord, kind: str = "kauffman") -> TLElement:
    """Image of the braid word under the Kauffman or Jones map, multiplied left to right."""
    delta = loop_param(kind)
    out = TLElement.identity(w.strands, delta.var)
    for letter in w.letters:
        image, _ = _generator(letter, w.strands, kind)
        out = tl_multiply(out, image, delta)
    return out


def artin_relations_hold(k: int, kind: str) -> bool:
    """g_i g_i^-1 = 1, g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}, g_i g_j = g_j g_i for |i - j| >= 2."""
    def image(*letters):
        return braid_to_tl(BraidWord(k, letters), kind)

    one = image()
    for i in range(1, k):
        if image(i, -i) != one or image(-i, i) != one:
            return False
        if i + 1 < k and image(i, i + 1, i) != image(i + 1, i, i + 1):
            return False
        for j in range(i + 2, k):
            if image(i, j) != image(j, i):
                return False
    return True


def bracket(w: BraidWord) -> LaurentPoly:
    """Kauffman bracket of the closure, normalized so the unknot is 1."""
    return closure_value(braid_to_tl(w, "kauffman"), LoopParam.kauffman())


def jones_polynomial(w: BraidWord) -> LaurentPoly:
    """
    V = (-A)^{-3 writhe} <closure>, then A^e -> q^{-e/4}. With this chirality
    g_1^3 on two strands closes to q + q^3 - q^4.
    """
    correction = LaurentPoly.monomial(-3 * w.writhe, (-1) ** (w.writhe % 2), var="A")
    v = (bracket(w) * correction).substitute(Fraction(-1, 4), "q")
    for e in v.terms:
        if (2 * e).denominator != 1:
            raise ConsistencyError(f"Exponent q^{e} is not a half-integer")
    return v


# ============ MARKOV MOVES ============

@dataclass
class MarkovReport:
    braid: str
    trials: int
    seed: int
    passed: bool = True
    polynomial: Dict = field(default_factory=dict)
    failures: List[Dict] = field(default_factory=list)

    def to_json(self) -> Dict:
        return {
            "braid": self.braid, "trials": self.trials, "seed": self.seed, "passed": self.passed,
            "polynomial": self.polynomial, "failures": self.failures,
        }


def markov_move(w: BraidWord, rng: random.Random) -> Tuple[BraidWord, str]:
    """One random conjugation or stabilization."""
    can_stabilize = w.strands < MAX_STABILIZED_STRANDS
    can_conjugate = w.strands >= 2
    if can_conjugate and (not can_stabilize or rng.random() < 0.5):
        g = rng.choice([1, -1]) * rng.randint(1, w.strands - 1)
        return BraidWord(w.strands, (g,) + w.letters + (-g,)), f"conjugate({g})"
    sign = rng.choice([1, -1])
    return BraidWord(w.strands + 1, w.letters + (sign * w.strands,)), f"stabilize({sign * w.strands})"


def random_braid(rng: random.Random, max_strands: int = 4, max_letters: int = 8) -> BraidWord:
    strands = rng.randint(1, max_strands)
    if strands == 1:
        return BraidWord(1)
    letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(0, max_letters))]
    return BraidWord(strands, tuple(letters))


def markov_invariance_test(w: BraidWord, trials: int, seed: int = 0) -> MarkovReport:
    """Apply 1-3 random Markov moves per trial and compare Jones polynomials exactly."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    reference = jones_polynomial(w)
    report = MarkovReport(str(w), trials, seed, polynomial=reference.to_json())
    for trial in range(trials):
        current, moves = w, []
        for _ in range(rng.randint(1, 3)):
            current, move = markov_move(current, rng)
            moves.append(move)
        value = jones_polynomial(current)
        if value != reference:
            report.passed = False
            report.failures.append({"trial": trial, "moves": moves, "braid": str(current), "polynomial": value.to_json()})
            logger.error(f"Markov move sequence {moves} changed the Jones polynomial of {w}")
    return report


# ============ SKEIN ============

def _skein_candidates() -> List[Tuple[str, Tuple[int, int, int, int]]]:
    out = []
    for e in (1, -1):
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    label = (f"q^{-e} V+ {'+' if s1 > 0 else '-'} q^{e} V- = "
                             f"{'' if s2 > 0 else '-'}(q^1/2 {'+' if s3 > 0 else '-'} q^-1/2) V0")
                    out.append((label, (e, s1, s2, s3)))
    return out


@dataclass
class SkeinReport:
    braid: str
    position: int
    v_plus: Dict
    v_minus: Dict
    v_zero: Dict
    relations: List[str]

    @property
    def passed(self) -> bool:
        return bool(self.relations)

    def to_json(self) -> Dict:
        return {
            "braid": self.braid, "position": self.position, "V+": self.v_plus, "V-": self.v_minus,
            "V0": self.v_zero, "relations": self.relations, "passed": self.passed,
        }


SKEIN_RELATION = "q^-1 V+ - q^1 V- = (q^1/2 - q^-1/2) V0"


def skein_check(w: BraidWord, position: int) -> SkeinReport:
    """
    Form L+, L- (letter at `position`, 0-based, set to g_i and g_i^-1) and L0
    (letter deleted), and list every candidate relation
    q^-e V+ + s1 q^e V- = s2 (q^1/2 + s3 q^-1/2) V0 that holds.
    """
    if not 0 <= position < len(w.letters):
        raise DomainError(f"Position {position} outside the word {w}")
    i = abs(w.letters[position])
    before, after = w.letters[:position], w.letters[position + 1:]
    v_plus = jones_polynomial(BraidWord(w.strands, before + (i,) + after))
    v_minus = jones_polynomial(BraidWord(w.strands, before + (-i,) + after))
    v_zero = jones_polynomial(BraidWord(w.strands, before + after))
    half = LaurentPoly.monomial(Fraction(1, 2), var="q")
    half_inv = LaurentPoly.monomial(Fraction(-1, 2), var="q")
    holding = []
    for label, (e, s1, s2, s3) in _skein_candidates():
        lhs = LaurentPoly.monomial(-e, var="q") * v_plus + LaurentPoly.monomial(e, s1, var="q") * v_minus
        rhs = (half + half_inv * s3) * s2 * v_zero
        if lhs == rhs:
            holding.append(label)
    return SkeinReport(str(w), position, v_plus.to_json(), v_minus.to_json(), v_zero.to_json(), holding)
