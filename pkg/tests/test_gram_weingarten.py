#!/usr/bin/env python3
"""
Gram / Weingarten Tests
Direct and closed Gram determinants, Young diagram counts, triangular
factorization, fattening, Weingarten matrices and truncated moments
"""
import sys
from fractions import Fraction

from sympy import Poly, Symbol

from harness import check, print_header, raises, run_tests

from categories import NC, NC12, NC2, NC_EVEN, P, P12, P2, P_EVEN
from errors import CapacityError, DomainError
from gram_weingarten import (
    N_SYMBOL, YoungDiagram, asymptotic_moment, binomial_exponents, bn_det, chebyshev_p, closed_det,
    difrancesco_conventions, difrancesco_det, factor_report, fattening_gram_relation, gram_det_direct,
    gram_matrix, integrate_monomial, lindstrom_det, on_det, sn_truncated_closed, standard_tableaux_count,
    triangular_factors, truncated_moment, weingarten_matrix, young_diagrams,
)

N = N_SYMBOL


def _poly(expr):
    return Poly(expr, N, domain="ZZ")


def test_gram_matrices():
    print_header("GRAM MATRICES")
    g = gram_matrix(P, 2, 4)
    check("P(2) at N=4", g.to_rows() == [["16", "4"], ["4", "4"]])
    check("Symmetric", g.transpose() == g)
    check("Diagonal is N^|pi|", all(g.entry(p, p) == 4 ** len(p.blocks) for p in g.rows))
    empty = gram_matrix(P_EVEN, 3, 2)
    check("Odd k has no even-block members", empty.shape == (0, 0) and empty.det() == 1)


def test_direct_determinants():
    print_header("DIRECT DETERMINANTS")
    check("nc2(4) symbolic", gram_det_direct(NC2, 4) == _poly(N ** 2 * (N ** 2 - 1)))
    check("nc2(4) at N=3", gram_det_direct(NC2, 4, 3) == 72)
    check("nc2(6) at N=3", gram_det_direct(NC2, 6, 3) == 6967296)
    check("nc(3) symbolic", gram_det_direct(NC, 3) == _poly(N ** 5 * (N - 1) ** 4 * (N - 2)))
    report = factor_report(gram_det_direct(NC2, 4))
    check("Factor list", ["N", 2] in report["factors"], str(report))
    check("Symbolic size bound", raises(CapacityError, gram_det_direct, NC, 5))


def test_closed_formulas():
    print_header("CLOSED FORMULAS")
    check("O_N at k=4", on_det(4) == _poly(N ** 3 * (N - 1) ** 2 * (N + 2)))
    check("B_N at k=2", bn_det(2) == _poly(N ** 2 * (N - 1)))
    for cat, k in ((P, 3), (P_EVEN, 4), (P2, 4), (P12, 3), (NC2, 6), (NC, 4), (NC12, 4), (NC_EVEN, 4)):
        for value in (2, 3, 5):
            closed, direct = closed_det(cat, k, value), gram_det_direct(cat, k, value)
            check(f"{cat}({k}) at N={value}", closed == direct, f"closed {closed}, direct {direct}")
    check("Falling factorials at N=3", lindstrom_det(P, 3, 3) == gram_det_direct(P, 3, 3))
    conventions = difrancesco_conventions(NC, 3, 2)
    check("Noncrossing exponent convention matches", conventions["noncrossing"] == conventions["direct"],
          str(conventions))
    check("Odd k for pairings", raises(DomainError, on_det, 3))
    check("Odd k for even blocks", raises(DomainError, difrancesco_det, NC_EVEN, 3))
    check("Falling factorials only for p and p_even", raises(DomainError, lindstrom_det, NC, 3))


def test_young_diagrams():
    print_header("YOUNG DIAGRAMS")
    check("Five diagrams with four cells", len(young_diagrams(4)) == 5)
    check("Largest first row first", young_diagrams(4)[0].rows == (4,))
    check("Hook lengths of (2,1)", sorted(YoungDiagram((2, 1)).hook_lengths()) == [1, 1, 3])
    check("f^(2,1) = 2", standard_tableaux_count(YoungDiagram((2, 1))) == 2)
    check("f^(3,2,1) = 16", standard_tableaux_count(YoungDiagram((3, 2, 1))) == 16)
    check("Doubling", YoungDiagram((2, 1)).doubled().rows == (4, 2))
    check("Increasing rows rejected", raises(DomainError, YoungDiagram, (1, 2)))
    x = Symbol("x")
    check("P_2 = X^2 - 1", chebyshev_p(2) == Poly(x ** 2 - 1, x, domain="ZZ"))
    check("P_3 = X^3 - 2X", chebyshev_p(3) == Poly(x ** 3 - 2 * x, x, domain="ZZ"))
    check("Ballot exponents", binomial_exponents(2, 1) == (3, 2))
    check("Half-integer k contributes nothing", binomial_exponents(Fraction(1, 2), 1) == (0, 0))


def test_factorizations():
    print_header("FACTORIZATIONS")
    for k in range(1, 5):
        for value in (2, 3, 5):
            check(f"G = A L on P({k}), N={value}", triangular_factors(k, value)["holds"])
    for k in range(1, 5):
        for n in (2, 3):
            check(f"Fattening relation k={k}, n={n}", fattening_gram_relation(k, n))


def test_weingarten():
    print_header("WEINGARTEN")
    w = weingarten_matrix(P, 2, 4)
    expected = [[Fraction(1, 12), Fraction(-1, 12)], [Fraction(-1, 12), Fraction(1, 3)]]
    check("P(2) at N=4", [list(r) for r in w.entries] == expected, str(w.to_rows()))
    g = gram_matrix(P, 3, 2)
    wp = weingarten_matrix(P, 3, 2)
    check("Singular Gram matrix: G W G = G", g @ wp @ g == g)
    check("Singular Gram matrix: W G W = W", wp @ g @ wp == wp)
    check("u_11^2 over S_3", integrate_monomial(P, 3, 2, (1, 1), (1, 1)) == Fraction(1, 3))
    check("u_11 u_22 over S_3", integrate_monomial(P, 3, 2, (1, 2), (1, 2)) == Fraction(1, 6))
    check("u_11 u_12 over S_3", integrate_monomial(P, 3, 2, (1, 1), (1, 2)) == 0)
    check("Index range checked", raises(DomainError, integrate_monomial, P, 3, 1, (4,), (1,)))


def test_moments():
    print_header("TRUNCATED AND ASYMPTOTIC MOMENTS")
    check("E[chi_1] over S_3", truncated_moment(P, 3, 1, 1) == Fraction(1, 3))
    check("E[chi^2] over S_4", truncated_moment(P, 4, 2, 4) == 2)
    for s in range(1, 5):
        for k in range(1, 4):
            check(f"S_4 s={s} k={k} closed", truncated_moment(P, 4, k, s) == sn_truncated_closed(4, s, k))
    t = Symbol("t", positive=True)
    check("Pairings give 3t^2", asymptotic_moment(P2, 4, t) == 3 * t ** 2)
    check("Noncrossing at t=1 gives Catalan", asymptotic_moment(NC, 3, 1) == 5)
    half = Fraction(1, 2)
    limit = asymptotic_moment(P2, 4, half)
    check("Pairing limit at t=1/2 is 3/4", limit == Fraction(3, 4))
    check("O_8 truncated at s=4", truncated_moment(P2, 8, 4, 4) == Fraction(51, 70))
    gaps = [abs(truncated_moment(P2, size, 4, size // 2) - limit) for size in (8, 16, 32)]
    check("Truncated pairing moments approach the limit as N grows",
          gaps[0] > gaps[1] > gaps[2] > 0, ", ".join(str(g) for g in gaps))
    check("Truncation range checked", raises(DomainError, truncated_moment, P, 3, 1, 4))


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
