"""
Acceptance Runner
The reproducibility checks behind `easygram verify`: each criterion is a named
check returning (passed, detail). Checks run concurrently on a thread pool; the
ledger keeps the declared order.
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Tuple

from sympy import Poly, Symbol, expand

import config
from categories import NC, NC12, NC2, NC_EVEN, P, P12, P2, P_EVEN, ps
from cumulants import (
    CumulantSequence, MomentSequence, bp_map, classical_convolve, cumulants_to_moments_classical,
    cumulants_to_moments_free, free_convolve, moments_to_cumulants_classical, moments_to_cumulants_free,
)
from errors import DomainError, EasyGramError
from gram_weingarten import (
    N_SYMBOL, asymptotic_moment, bn_det, difrancesco_det, gram_det_direct, gram_matrix, integrate_monomial,
    lindstrom_det, on_det, sn_truncated_closed, truncated_moment, weingarten_matrix,
)
from group_oracle import (
    character_law, cyclic, cyclic_law_closed, dihedral, dihedral_law_closed, fix_dim, hyperoctahedral,
    integrate_exact, reflection, symmetric, symmetric_law_closed, truncated_character_law,
)
from partition_core import BLACK, WHITE, ColoredWord
from prob_laws import (
    bessel, bessel_atoms, bessel_real, compound_poisson_moments, density, dirac, free_bessel_real,
    gaussian, marchenko_pastur, moments, poisson, semicircle, stieltjes_invert,
)
from tl_jones import (
    BraidWord, LaurentPoly, artin_relations_hold, epsilon_relations_hold, gram_link_holds, is_tracial,
    jones_polynomial, markov_invariance_test, random_braid,
)

logger = logging.getLogger("Acceptance")

SUITES = ("all", "gram", "weingarten", "oracle", "laws", "cumulants", "jones")
SAMPLE_N = (2, 3, 5, 7)

Outcome = Tuple[bool, str]


# ============ LEDGER ============

@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    suites: Tuple[str, ...]
    run: Callable[[], Outcome]


@dataclass
class LedgerEntry:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> Dict:
        return {
            "criterion": self.criterion, "name": self.name, "passed": self.passed,
            "detail": self.detail, "seconds": round(self.seconds, 3),
        }


@dataclass
class Ledger:
    suite: str
    entries: List[LedgerEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> Dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total": len(self.entries),
            "failed": sum(1 for e in self.entries if not e.passed),
            "checks": [e.to_json() for e in self.entries],
        }

    def to_rows(self) -> List[List[str]]:
        rows = [["criterion", "name", "passed", "seconds", "detail"]]
        rows += [[str(e.criterion), e.name, str(e.passed).lower(), f"{e.seconds:.3f}", e.detail] for e in self.entries]
        return rows


def _mismatches(items: Iterator[Tuple[str, object, object]]) -> Outcome:
    """(label, got, expected) triples; passes when all agree."""
    bad, total = [], 0
    for label, got, expected in items:
        total += 1
        if got != expected:
            bad.append(f"{label}: got {got}, expected {expected}")
    if bad:
        return False, f"{len(bad)}/{total} mismatches; first: {bad[0]}"
    return True, f"{total} values agree"


# ============ GRAM (1, 2) ============

_PRINTED_DETS = (
    (NC2, 4, N_SYMBOL ** 2 * (N_SYMBOL ** 2 - 1)),
    (NC2, 6, N_SYMBOL ** 5 * (N_SYMBOL ** 2 - 1) ** 4 * (N_SYMBOL ** 2 - 2)),
    (NC, 3, N_SYMBOL ** 5 * (N_SYMBOL - 1) ** 4 * (N_SYMBOL - 2)),
)


def check_printed_determinants() -> Outcome:
    def items():
        for cat, k, expr in _PRINTED_DETS:
            expected = Poly(expr, N_SYMBOL, domain="ZZ")
            yield f"{cat}({k}) symbolic", gram_det_direct(cat, k), expected
            yield f"{cat}({k}) closed", difrancesco_det(cat, k), expected
            for N in SAMPLE_N:
                yield f"{cat}({k}) N={N}", gram_det_direct(cat, k, N), int(expected.eval(N))
    return _mismatches(items())


def _formula_cases() -> Iterator[Tuple[str, Callable, object, int]]:
    for k in range(1, 6):
        yield "lindstrom", lambda k, N: lindstrom_det(P, k, N), P, k
    for k in range(1, 7):
        yield "lindstrom", lambda k, N: lindstrom_det(P_EVEN, k, N), P_EVEN, k
    for k in range(2, 9, 2):
        yield "young-on", on_det, P2, k
    for k in range(1, 6):
        yield "young-bn", bn_det, P12, k
    for k in range(2, 11, 2):
        yield "difrancesco", lambda k, N: difrancesco_det(NC2, k, N), NC2, k
    for k in range(1, 7):
        yield "difrancesco", lambda k, N: difrancesco_det(NC, k, N), NC, k
    for k in range(1, 7):
        yield "difrancesco", lambda k, N: difrancesco_det(NC12, k, N), NC12, k
    for k in range(2, 7, 2):
        yield "difrancesco", lambda k, N: difrancesco_det(NC_EVEN, k, N), NC_EVEN, k


def check_formula_vs_direct() -> Outcome:
    def items():
        for name, formula, cat, k in _formula_cases():
            for N in SAMPLE_N:
                logger.info(f"{name} vs direct on {cat}({k}), N={N}")
                yield f"{name} {cat}({k}) N={N}", formula(k, N), gram_det_direct(cat, k, N)
    return _mismatches(items())


# ============ WEINGARTEN / ORACLE (3, 4, 12) ============

def kernel_indices(k: int, N: int) -> Iterator[Tuple[int, ...]]:
    """Restricted growth strings with values in 1..N: one index tuple per kernel."""
    def extend(prefix: Tuple[int, ...], top: int):
        if len(prefix) == k:
            yield prefix
            return
        for v in range(1, min(top + 1, N) + 1):
            yield from extend(prefix + (v,), max(top, v))
    yield from extend((), 0)


def check_weingarten_vs_oracle() -> Outcome:
    # both integrals are invariant under independent relabeling of rows and of columns
    def items():
        for group, cat, sizes in ((symmetric, P, (3, 4, 5)), (hyperoctahedral, P_EVEN, (2, 3))):
            for N in sizes:
                g = group(N)
                for k in range(1, 5):
                    for i in kernel_indices(k, N):
                        for j in kernel_indices(k, N):
                            yield f"{g} i={i} j={j}", integrate_monomial(cat, N, k, i, j), integrate_exact(g, k, i, j)
    return _mismatches(items())


def check_truncated_characters() -> Outcome:
    def items():
        for N in range(1, 7):
            for s in range(1, N + 1):
                law = truncated_character_law(N, s)
                for k in range(1, 5):
                    value = truncated_moment(P, N, k, s)
                    yield f"S_{N} s={s} k={k} enumeration", value, law.moment(k)
                    yield f"S_{N} s={s} k={k} closed", value, sn_truncated_closed(N, s, k)
    return _mismatches(items())


def check_weingarten_identities() -> Outcome:
    def items():
        for k, N in ((3, 2), (4, 2), (4, 3), (4, 4), (3, 5)):
            g = gram_matrix(P, k, N)
            w = weingarten_matrix(P, k, N)
            yield f"P({k}) N={N} GWG", g @ w @ g == g, True
            yield f"P({k}) N={N} WGW", w @ g @ w == w, True
            yield f"P({k}) N={N} WG symmetric", (w @ g).transpose() == w @ g, True
    return _mismatches(items())


# ============ ORACLE (5, 6) ============

def check_character_laws() -> Outcome:
    def items():
        for N in range(1, 9):
            yield f"Z_{N}", character_law(cyclic(N)).atoms, cyclic_law_closed(N).atoms
        for N in range(3, 9):
            yield f"D_{N}", character_law(dihedral(N)).atoms, dihedral_law_closed(N).atoms
        for N in range(1, 7):
            yield f"S_{N}", character_law(symmetric(N)).atoms, symmetric_law_closed(N).atoms
    return _mismatches(items())


def _words_up_to(n: int, colored: bool) -> Iterator[ColoredWord]:
    for length in range(1, n + 1):
        if not colored:
            yield ColoredWord.uncolored(length)
            continue
        for mask in range(2 ** length):
            yield ColoredWord(tuple(BLACK if mask >> b & 1 else WHITE for b in range(length)))


_BELL = (1, 1, 2, 5, 15, 52)


def check_fixed_point_dimensions() -> Outcome:
    def items():
        for k in range(1, 6):
            yield f"fix(S_{k}, {k})", fix_dim(symmetric(k), k), _BELL[k]
        for N in range(1, 5):
            for group, cat in ((symmetric(N), P), (hyperoctahedral(N), P_EVEN)):
                for word in _words_up_to(4, colored=False):
                    yield f"{group} {word}", fix_dim(group, word), gram_matrix(cat, word, N).rank()
            for s in range(1, 5):
                g = reflection(N, s)
                for word in _words_up_to(4, colored=True):
                    yield f"{g} {word}", fix_dim(g, word), gram_matrix(ps(s), word, N).rank()
    return _mismatches(items())


# ============ CUMULANTS (7, 8) ============

ORDER = 10


def _repeat(pattern, n: int = ORDER) -> List:
    return [pattern(j) for j in range(1, n + 1)]


def check_cumulant_tables() -> Outcome:
    t, c = Symbol("t", positive=True), Symbol("c")
    zero = 0
    classical = (
        ("dirac", dirac(c), _repeat(lambda j: c if j == 1 else zero)),
        ("gaussian", gaussian(t), _repeat(lambda j: t if j == 2 else zero)),
        ("poisson", poisson(t), _repeat(lambda j: t)),
        ("bessel_real", bessel_real(t), _repeat(lambda j: t if j % 2 == 0 else zero)),
    )
    free = (
        ("dirac", dirac(c), _repeat(lambda j: c if j == 1 else zero)),
        ("semicircle", semicircle(t), _repeat(lambda j: t if j == 2 else zero)),
        ("marchenko_pastur", marchenko_pastur(t), _repeat(lambda j: t)),
        ("free_bessel_real", free_bessel_real(t), _repeat(lambda j: t if j % 2 == 0 else zero)),
    )

    def items():
        for name, law, expected in classical:
            got = moments_to_cumulants_classical(moments(law, ORDER), ORDER)
            yield f"classical {name}", got.equals(CumulantSequence(expected, False)), True
        for name, law, expected in free:
            got = moments_to_cumulants_free(moments(law, ORDER), ORDER)
            yield f"free {name}", got.equals(CumulantSequence(expected, True)), True
        rng = random.Random(config.SEED)
        for trial in range(10):
            m = MomentSequence([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(ORDER)])
            back = cumulants_to_moments_classical(moments_to_cumulants_classical(m, ORDER).values, ORDER)
            yield f"classical roundtrip {trial}", back.equals(m), True
            back = cumulants_to_moments_free(moments_to_cumulants_free(m, ORDER).values, ORDER)
            yield f"free roundtrip {trial}", back.equals(m), True
    return _mismatches(items())


_CATALAN = (1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796)
_BELL_FROM_ONE = (1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975)


def check_semigroups() -> Outcome:
    s, t = Symbol("s", positive=True), Symbol("t", positive=True)

    def items():
        for name, law in (("poisson", poisson), ("bessel_real", bessel_real)):
            got = classical_convolve(moments(law(s), ORDER), moments(law(t), ORDER), ORDER)
            yield f"{name}_s * {name}_t", got.equals(moments(law(s + t), ORDER)), True
        for name, law in (("semicircle", semicircle), ("marchenko_pastur", marchenko_pastur)):
            got = free_convolve(moments(law(s), ORDER), moments(law(t), ORDER), ORDER)
            yield f"{name}_s [+] {name}_t", got.equals(moments(law(s + t), ORDER)), True
        yield "bercovici-pata bell -> catalan", bp_map(list(_BELL_FROM_ONE), ORDER).values, _CATALAN
    return _mismatches(items())


# ============ LAWS (9, 10) ============

def check_bessel_identity() -> Outcome:
    t = Symbol("t", positive=True)

    def items():
        difference = compound_poisson_moments([(t / 2, Fraction(1)), (t / 2, Fraction(-1))], 6)
        for k in range(1, 7):
            yield f"P_even({k})", expand(asymptotic_moment(P_EVEN, k, t) - difference[k]) == 0, True
        for s in (3, 4):
            for value in (Fraction(1, 2), Fraction(2)):
                words = list(_words_up_to(4, colored=True))
                partition_side = moments(bessel(s, value), words)
                poisson_side = compound_poisson_moments(bessel_atoms(s, value), words)
                for word in words:
                    key = str(word)
                    yield f"bessel s={s} t={value} {key}", poisson_side.colored[key], partition_side.colored[key]
    return _mismatches(items())


STIELTJES_MOMENTS = 60
STIELTJES_EPS = 1e-3


def _max_density_error(law, a: float, b: float, points: int = 101) -> float:
    m = moments(law, STIELTJES_MOMENTS)
    worst = 0.0
    for i in range(points):
        x = a + (b - a) * i / (points - 1)
        worst = max(worst, abs(stieltjes_invert(m, x, STIELTJES_EPS) - density(law, x)))
    return worst


def check_stieltjes_inversion() -> Outcome:
    errors = {
        "semicircle": (_max_density_error(semicircle(1), -1.8, 1.8), 0.02),
        "marchenko_pastur": (_max_density_error(marchenko_pastur(1), 0.2, 3.8), 0.05),
    }
    passed = all(err < bound for err, bound in errors.values())
    detail = ", ".join(f"{name} max error {err:.4g} (bound {bound})" for name, (err, bound) in errors.items())
    return passed, detail


# ============ JONES (11, 12) ============

def _q(pairs) -> LaurentPoly:
    return LaurentPoly({Fraction(e): c for e, c in pairs}, "q")


HOPF_SIGN = -1

JONES_GOLDENS = (
    ("unknot", BraidWord(1), _q([(0, 1)])),
    ("unlink", BraidWord(2), _q([("1/2", -1), ("-1/2", -1)])),
    ("trefoil", BraidWord(2, (1, 1, 1)), _q([(1, 1), (3, 1), (4, -1)])),
    ("hopf", BraidWord(2, (1, 1)), _q([("1/2", HOPF_SIGN), ("5/2", HOPF_SIGN)])),
)

MARKOV_BASES = 20
MARKOV_TRIALS = 25


def check_jones_goldens() -> Outcome:
    def items():
        for name, braid, expected in JONES_GOLDENS:
            yield name, jones_polynomial(braid), expected
        rng = random.Random(config.SEED)
        for base in range(MARKOV_BASES):
            braid = random_braid(rng)
            report = markov_invariance_test(braid, MARKOV_TRIALS, seed=config.SEED + base)
            yield f"markov {braid}", report.passed, True
    return _mismatches(items())


def check_algebra_relations() -> Outcome:
    def items():
        for k in range(2, 5):
            yield f"epsilon relations k={k}", epsilon_relations_hold(k), True
            yield f"tracial k={k}", is_tracial(k), True
            yield f"gram link k={k}", gram_link_holds(k), True
            for kind in ("kauffman", "jones"):
                yield f"artin {kind} k={k}", artin_relations_hold(k, kind), True
    return _mismatches(items())


# ============ REGISTRY ============

CHECKS: Tuple[Check, ...] = (
    Check(1, "printed Gram determinants", ("gram",), check_printed_determinants),
    Check(2, "closed formulas vs direct determinants", ("gram",), check_formula_vs_direct),
    Check(3, "Weingarten integrals vs group averages", ("weingarten",), check_weingarten_vs_oracle),
    Check(4, "truncated character moments", ("weingarten", "oracle"), check_truncated_characters),
    Check(5, "character laws", ("oracle",), check_character_laws),
    Check(6, "fixed-point dimensions", ("oracle",), check_fixed_point_dimensions),
    Check(7, "cumulant tables and roundtrips", ("cumulants",), check_cumulant_tables),
    Check(8, "convolution semigroups and Bercovici-Pata", ("cumulants",), check_semigroups),
    Check(9, "Bessel laws as compound Poisson", ("laws",), check_bessel_identity),
    Check(10, "Stieltjes inversion", ("laws",), check_stieltjes_inversion),
    Check(11, "Jones values and Markov invariance", ("jones",), check_jones_goldens),
    Check(12, "Weingarten pseudo-inverse identities", ("weingarten",), check_weingarten_identities),
    Check(12, "Temperley-Lieb and Artin relations", ("jones",), check_algebra_relations),
)


def _timed(check: Check) -> LedgerEntry:
    logger.info(f"[{check.criterion}] {check.name}...")
    start = time.perf_counter()
    try:
        passed, detail = check.run()
    except EasyGramError as e:
        passed, detail = False, f"{type(e).__name__}: {e}"
    except Exception as e:
        logger.exception(f"Check {check.name} crashed")
        passed, detail = False, f"crash: {type(e).__name__}: {e}"
    seconds = time.perf_counter() - start
    logger.info(f"[{check.criterion}] {check.name}: {'PASS' if passed else 'FAIL'} in {seconds:.2f}s")
    return LedgerEntry(check.criterion, check.name, passed, detail, seconds)


def select(suite: str = "all") -> List[Check]:
    if suite not in SUITES:
        raise DomainError(f"Unknown suite {suite!r}; expected one of {SUITES}")
    return [c for c in CHECKS if suite == "all" or suite in c.suites]


def run_suite(suite: str = "all", threads: int = None) -> Ledger:
    """Run the selected checks concurrently; entries come back in declared order."""
    checks = select(suite)
    with ThreadPoolExecutor(max_workers=threads or config.THREADS) as pool:
        futures = [pool.submit(_timed, check) for check in checks]
        entries = [f.result() for f in futures]
    return Ledger(suite, entries)
