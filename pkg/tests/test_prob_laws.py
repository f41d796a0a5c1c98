#!/usr/bin/env python3
"""
Probability Law Tests
Exact moments of the limit laws, compound Poisson identities, densities,
Bessel point masses and Stieltjes inversion
"""
import math
import sys
from fractions import Fraction

from sympy import Symbol, expand

from harness import check, print_header, raises, run_tests

from cumulants import MomentSequence
from errors import DomainError
from prob_laws import (
    ARCSINE, LawSpec, bessel, bessel_atoms, bessel_pmf, bessel_pmf_by_convolution, cauchy_series_value, compound_poisson,
    compound_poisson_moments, compound_poisson_via_cumulants, complex_gaussian, density, density_grid,
    dirac, gaussian, jacobi_coefficients, marchenko_pastur, moments, normalization, numerical_moment,
    poisson, poisson_pmf, semicircle, stieltjes_invert, stieltjes_invert_series,
)


def test_law_specs():
    print_header("LAW SPECS")
    spec = LawSpec.parse("bessel:3:1/2")
    check("Bessel token", spec.s == 3 and spec.t == Fraction(1, 2))
    check("Symbolic parameter", LawSpec.parse("poisson:t").t == Symbol("t", positive=True))
    cp = LawSpec.parse("compound_poisson:1/2@1,1/2@-1")
    check("Compound Poisson atoms", cp.atoms == ((Fraction(1, 2), Fraction(1)), (Fraction(1, 2), Fraction(-1))))
    check("Unknown law rejected", raises(DomainError, LawSpec.parse, "cauchy:1"))
    check("Nonpositive parameter rejected", raises(DomainError, poisson, 0))
    check("Complex kinds", complex_gaussian(1).is_complex and not gaussian(1).is_complex)


def test_moments():
    print_header("MOMENTS")
    expected = {
        "poisson(1)": (poisson(1), (1, 2, 5, 15, 52, 203)),
        "gaussian(1)": (gaussian(1), (0, 1, 0, 3, 0, 15)),
        "semicircle(1)": (semicircle(1), (0, 1, 0, 2, 0, 5)),
        "marchenko_pastur(1)": (marchenko_pastur(1), (1, 2, 5, 14, 42, 132)),
        "semicircle(2)": (semicircle(2), (0, 2, 0, 8, 0, 40)),
        "arcsine": (ARCSINE, (2, 6, 20, 70, 252, 924)),
        "dirac(2)": (dirac(2), (2, 4, 8, 16, 32, 64)),
        "bessel(2, 1)": (bessel(2, 1), (0, 1, 0, 4, 0, 31)),
    }
    for name, (law, values) in expected.items():
        got = moments(law, 6).values
        check(name, got == values, f"got {got}")
    t = Symbol("t", positive=True)
    check("Symbolic Poisson", expand(moments(poisson(t), 2).values[1] - (t + t ** 2)) == 0)
    colored = moments(complex_gaussian(1), ["ob", "oo", "oobb"])
    check("Complex Gaussian colored moments", colored.colored == {"ob": 1, "oo": 0, "oobb": 2}, str(colored.colored))


def test_compound_poisson():
    print_header("COMPOUND POISSON")
    cp = compound_poisson([(1, 1)])
    check("One atom at 1 is Poisson(1)", moments(cp, 5).values == (1, 2, 5, 15, 52))
    atoms = [(Fraction(1, 2), Fraction(1)), (Fraction(1, 2), Fraction(-1))]
    direct = compound_poisson_moments(atoms, 5)
    check("Direct and cumulant computations agree", direct.equals(compound_poisson_via_cumulants(atoms, 5)))
    check("Symmetric atoms give the real Bessel law", direct.equals(moments(bessel(2, 1), 5)))
    words = ["ooo", "ob", "oobb"]
    via_atoms = compound_poisson_moments(bessel_atoms(3, 1), words)
    via_category = moments(bessel(3, 1), words)
    check("Cyclotomic atoms match the category sums",
          all(via_atoms.colored[w] == via_category.colored[w] for w in words),
          f"{via_atoms.colored} vs {via_category.colored}")


def test_densities():
    print_header("DENSITIES")
    check("Semicircle at 0", abs(density(semicircle(1), 0.0) - 1 / math.pi) < 1e-12)
    check("Outside the support", density(semicircle(1), 3.0) == 0.0)
    check("Semicircle mass", abs(normalization(semicircle(1)) - 1) < 1e-8)
    check("Marchenko-Pastur mass with atom", abs(normalization(marchenko_pastur(Fraction(1, 2))) - 1) < 1e-6)
    check("Semicircle second moment", abs(numerical_moment(semicircle(1), 2) - 1) < 1e-8)
    grid = density_grid(semicircle(1), -2.0, 2.0, 0.5)
    check("Grid has nine points", len(grid.xs) == 9)
    check("Grid CSV header", grid.to_csv().splitlines()[0] == "x,density")
    check("Symbolic parameter has no density", raises(DomainError, density, semicircle("t"), 0.0))


def test_point_masses():
    print_header("BESSEL POINT MASSES")
    check("Poisson mass", abs(poisson_pmf(2.0, 3) - math.exp(-2) * 8 / 6) < 1e-12)
    check("Bessel mass at 0", abs(bessel_pmf(2, 1.0, 0) - 0.46575960759364043) < 1e-12)
    for k in (-2, 0, 1, 3):
        check(f"Series matches convolution at k={k}",
              abs(bessel_pmf(2, 1.5, k) - bessel_pmf_by_convolution(1.5, k)) < 1e-10)
    check("Masses sum to 1", abs(sum(bessel_pmf(2, 1.0, k) for k in range(-30, 31)) - 1) < 1e-10)
    check("Only s in (1, 2)", raises(DomainError, bessel_pmf, 3, 1.0, 0))


def test_stieltjes():
    print_header("STIELTJES INVERSION")
    alpha, beta = jacobi_coefficients(moments(semicircle(1), 10))
    check("Semicircle recurrence", alpha == [0] * 5 and beta == [1] * 5, f"{alpha} {beta}")
    alpha, beta = jacobi_coefficients(MomentSequence([2, 4, 8, 16]))
    check("Point mass stops after one level", alpha == [2] and beta == [1])
    estimate = stieltjes_invert(moments(semicircle(1), 40), 0.0, 1e-3)
    check("Semicircle density recovered at 0", abs(estimate - 1 / math.pi) < 0.02, f"{estimate:.5f}")
    estimate = stieltjes_invert(moments(marchenko_pastur(1), 40), 1.0, 1e-3)
    check("Marchenko-Pastur density recovered at 1", abs(estimate - density(marchenko_pastur(1), 1.0)) < 0.05,
          f"{estimate:.5f}")
    outside = cauchy_series_value(moments(semicircle(1), 30), 10.0)
    check("Raw series converges outside the support", abs(outside - (10 - math.sqrt(96)) / 2) < 1e-12, str(outside))
    check("Raw series sees no mass at 3", abs(stieltjes_invert_series(moments(semicircle(1), 40), 3.0, 1e-3)) < 1e-3)
    check("eps must be positive", raises(DomainError, stieltjes_invert, [0, 1], 0.0, 0.0))


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
