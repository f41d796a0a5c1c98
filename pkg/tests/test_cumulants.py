#!/usr/bin/env python3
"""
Cumulant Tests
Classical and free moment-cumulant transforms, convolutions, the
Bercovici-Pata map, limit theorems and truncated transform series
"""
import sys
from fractions import Fraction

from sympy import Symbol

from harness import check, print_header, raises, run_tests

from cumulants import (
    CumulantSequence, FormalSeries, MomentSequence, bp_inverse, bp_map, cauchy_series,
    central_limit_moments, check_inversion, classical_convolve, cumulants_to_moments_classical,
    cumulants_to_moments_free, free_compound_poisson_moments, free_convolve, moments_to_cumulants_classical,
    moments_to_cumulants_free, multiplicative_extension, poisson_limit_moments, r_series,
)
from errors import CapacityError, DomainError, ShapeError
from partition_core import Partition

BELL = (1, 2, 5, 15, 52, 203)
CATALAN = (1, 2, 5, 14, 42, 132)
SEMICIRCLE = (0, 1, 0, 2, 0, 5)


def test_transforms():
    print_header("MOMENT-CUMULANT TRANSFORMS")
    check("Bell numbers have unit classical cumulants", moments_to_cumulants_classical(BELL, 6).values == (1,) * 6)
    check("Catalan numbers have unit free cumulants", moments_to_cumulants_free(CATALAN, 6).values == (1,) * 6)
    check("Semicircle free cumulants", moments_to_cumulants_free(SEMICIRCLE, 6).values == (0, 1, 0, 0, 0, 0))
    check("Gaussian classical cumulants", moments_to_cumulants_classical((0, 1, 0, 3, 0, 15), 6).values == (0, 1, 0, 0, 0, 0))
    check("Inverse classical transform", cumulants_to_moments_classical((1,) * 6, 6).values == BELL)
    check("Inverse free transform", cumulants_to_moments_free((0, 1), 2).values == (0, 1))
    t = Symbol("t", positive=True)
    symbolic = moments_to_cumulants_classical([t, t + t ** 2], 2)
    check("Symbolic Poisson cumulants", symbolic.equals(CumulantSequence([t, t])))
    check("Multiplicative extension", multiplicative_extension([1, 2, 3], Partition.one_row([[0, 1], [2]])) == 2)
    check("Order bound enforced", raises(CapacityError, moments_to_cumulants_classical, [1] * 11, 11))
    check("Too few moments rejected", raises(ShapeError, moments_to_cumulants_free, [1, 2], 3))


def test_convolutions():
    print_header("CONVOLUTIONS")
    gaussian = (0, 1, 0, 3)
    check("Gaussian variances add", classical_convolve(gaussian, gaussian, 4).values == (0, 2, 0, 12))
    check("Semicircle variances add", free_convolve(SEMICIRCLE, SEMICIRCLE, 6).values == (0, 2, 0, 8, 0, 40))
    check("Bercovici-Pata sends Poisson to Marchenko-Pastur", bp_map(BELL, 6).values == CATALAN)
    check("Inverse map", bp_inverse(CATALAN, 6).values == BELL)
    check("Free compound Poisson with one atom", free_compound_poisson_moments([(1, 1)], 3).values == (1, 2, 5))
    a = CumulantSequence([1, 2], free=False)
    check("Cumulant kinds do not mix", raises(DomainError, lambda: a + CumulantSequence([1, 2], free=True)))


def test_limit_theorems():
    print_header("LIMIT THEOREMS")
    check("Binomial second moment", poisson_limit_moments(1, 10, 2).values == (1, Fraction(19, 10)))
    check("Free binomial second moment", poisson_limit_moments(1, 10, 2, free=True).values == (1, Fraction(19, 10)))
    check("Rademacher sum fourth moment", central_limit_moments(4, 4).values == (0, 1, 0, Fraction(5, 2)))
    check("Free Rademacher sum fourth moment",
          central_limit_moments(4, 4, free=True).values == (0, 1, 0, Fraction(7, 4)))
    check("Summand count checked", raises(DomainError, poisson_limit_moments, 1, 0, 2))


def test_sequences():
    print_header("MOMENT SEQUENCES")
    m = MomentSequence([0, 1])
    check("Shift", m.shifted(1).values == (1, 2))
    check("Scale", m.scaled(2).values == (0, 4))
    check("M_0 = 1", m[0] == 1)
    check("Missing order rejected", raises(DomainError, lambda: m[3]))
    check("JSON form", MomentSequence([Fraction(1, 2)], label="x").to_json() == {"label": "x", "moments": ["1/2"]})


def test_series():
    print_header("TRANSFORM SERIES")
    check("Semicircle R-series", r_series(SEMICIRCLE, 4).coeffs == (0, 1, 0, 0))
    check("Cauchy series coefficients", cauchy_series(CATALAN, 3).coeffs == (1, 1, 2, 5))
    check("Reciprocal series", FormalSeries([1, 1], 4).reciprocal().coeffs == (1, -1, 1, -1))
    check("K(G(x)) = x for Marchenko-Pastur", check_inversion(CATALAN, 6))
    check("K(G(x)) = x for the semicircle", check_inversion(SEMICIRCLE, 6))
    check("Reciprocal needs constant term 1", raises(DomainError, FormalSeries([2, 1], 3).reciprocal))


def test_order_ten():
    print_header("ORDER TEN")
    catalan = (1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796)
    semicircle = (0, 1, 0, 2, 0, 5, 0, 14, 0, 42)
    check("Catalan numbers have unit free cumulants to order 10",
          moments_to_cumulants_free(catalan, 10).values == (1,) * 10)
    check("Unit free cumulants give the Catalan numbers", cumulants_to_moments_free((1,) * 10, 10).values == catalan)
    check("Semicircle free cumulants to order 10",
          moments_to_cumulants_free(semicircle, 10).values == (0, 1) + (0,) * 8)
    check("Semicircle variances add to order 10",
          free_convolve(semicircle, semicircle, 10).values == tuple(m * 2 ** (j // 2) for j, m in enumerate(semicircle, 1)))
    check("Bercovici-Pata to order 10", bp_map(BELL + (877, 4140, 21147, 115975), 10).values == catalan)


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
