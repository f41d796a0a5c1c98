#!/usr/bin/env python3
"""
Group Oracle Tests
Group enumeration, exact character laws, integrals and fixed-point dimensions
"""
import itertools
import sys
from fractions import Fraction

from harness import check, print_header, raises, run_tests

from categories import P, P_EVEN, ps
from cyclotomic import CyclotomicValue
from errors import CapacityError, DomainError, ShapeError
from gram_weingarten import gram_matrix, integrate_monomial
from group_oracle import (
    GroupSpec, alternating, character_law, cyclic, cyclic_law_closed, dihedral, dihedral_law_closed,
    easy_category, enumerate_group, fix_dim, hyperoctahedral, integrate_exact, reflection, symmetric,
    symmetric_law_closed, truncated_character_law, truncated_law_closed,
)
from partition_core import ColoredWord, block_count_distribution


def test_group_specs():
    print_header("GROUP SPECS")
    check("Reflection group read", GroupSpec.parse("reflection:2:3") == reflection(2, 3))
    check("Reflection order s^N N!", reflection(2, 3).order == 18)
    check("Hyperoctahedral phase order is 2", GroupSpec.parse("hyperoctahedral:3").s == 2)
    check("Bad token rejected", raises(DomainError, GroupSpec.parse, "symmetric"))
    check("Stray phase order rejected", raises(DomainError, GroupSpec, "cyclic", 3, 2))
    check("Easy categories", easy_category(symmetric(3)) == P and easy_category(hyperoctahedral(2)) == P_EVEN
          and easy_category(reflection(2, 3)) == ps(3))
    check("No category for cyclic groups", raises(DomainError, easy_category, cyclic(3)))


def test_enumeration():
    print_header("ENUMERATION")
    for group in (cyclic(5), dihedral(5), symmetric(4), alternating(4), hyperoctahedral(2), reflection(2, 3)):
        elements = list(enumerate_group(group))
        check(f"{group} has {group.order} elements", len(elements) == group.order == len(set(elements)))
    check("Order bound enforced", raises(CapacityError, lambda: list(enumerate_group(symmetric(12)))))


def test_character_laws():
    print_header("CHARACTER LAWS")
    law = character_law(cyclic(5))
    check("Z_5", law.atoms == [(Fraction(0), Fraction(4, 5)), (Fraction(5), Fraction(1, 5))], str(law))
    check("Z_5 closed form", law.atoms == cyclic_law_closed(5).atoms)
    for N in (4, 5):
        check(f"D_{N} closed form", character_law(dihedral(N)).atoms == dihedral_law_closed(N).atoms)
    check("S_5 closed form", character_law(symmetric(5)).atoms == symmetric_law_closed(5).atoms)
    check("E[chi^4] over S_5 is B_4", character_law(symmetric(5)).moment(4) == 15)
    roots = character_law(reflection(1, 3))
    check("Reflection group H_1^3 puts mass 1/3 on each root",
          all(p == Fraction(1, 3) for _, p in roots.atoms) and len(roots.atoms) == 3)
    check("Phases appear as cyclotomic atoms",
          any(isinstance(atom, CyclotomicValue) for atom, _ in roots.atoms))


def test_truncated_laws():
    print_header("TRUNCATED LAWS")
    law = truncated_character_law(3, 2)
    expected = [(Fraction(0), Fraction(1, 2)), (Fraction(1), Fraction(1, 3)), (Fraction(2), Fraction(1, 6))]
    check("S_3 with s=2", law.atoms == expected, str(law))
    check("Closed form", truncated_law_closed(4, 3).atoms == truncated_character_law(4, 3).atoms)
    check("Truncation range checked", raises(DomainError, truncated_character_law, 3, 4))


def test_integrals():
    print_header("INTEGRALS")
    check("u_11^2 over S_3", integrate_exact(symmetric(3), 2, (1, 1), (1, 1)) == Fraction(1, 3))
    check("u_11^2 over H_2", integrate_exact(hyperoctahedral(2), 2, (1, 1), (1, 1)) == Fraction(1, 2))
    check("u_11 over H_2 vanishes", integrate_exact(hyperoctahedral(2), 1, (1,), (1,)) == 0)
    check("u_11 conj(u_11) over H_1^3", integrate_exact(reflection(1, 3), "ob", (1, 1), (1, 1)) == 1)
    check("u_11^2 over H_1^3 vanishes", integrate_exact(reflection(1, 3), "oo", (1, 1), (1, 1)) == 0)
    for i, j in (((1, 1), (1, 1)), ((1, 2), (2, 1)), ((1, 1), (2, 2))):
        check(f"Oracle matches Weingarten on S_4 at i={i}, j={j}",
              integrate_exact(symmetric(4), 2, i, j) == integrate_monomial(P, 4, 2, i, j))
    check("Index tuple length checked", raises(ShapeError, integrate_exact, symmetric(3), 2, (1,), (1, 1)))


def test_fixed_points():
    print_header("FIXED-POINT DIMENSIONS")
    check("fix(S_4, 4) = B_4", fix_dim(symmetric(4), 4) == 15)
    check("fix(S_2, 3) = 4", fix_dim(symmetric(2), 3) == 4)
    check("fix(H_3, 4) = 4", fix_dim(hyperoctahedral(3), 4) == 4)
    for word in ("ob", "oob", "obob", "ooo"):
        expected = gram_matrix(ps(3), word, 2).rank()
        check(f"H_2^3 on {word} matches the Gram rank", fix_dim(reflection(2, 3), word) == expected)
    for k in range(1, 6):
        bounded = [sum(c for b, c in block_count_distribution(k).items() if b <= N) for N in range(1, 8)]
        dims = [fix_dim(symmetric(N), k) for N in range(1, 8)]
        check(f"fix(S_N, {k}) counts partitions with at most N blocks for N <= 7", dims == bounded, str(dims))
        check(f"fix(S_N, {k}) is constant for N >= {k}", len(set(dims[k - 1:])) == 1)
    for N in range(1, 5):
        for length in range(1, 4):
            plain = ColoredWord.uncolored(length)
            check(f"S_{N} on {length} points matches the Gram rank",
                  fix_dim(symmetric(N), plain) == gram_matrix(P, plain, N).rank())
            check(f"H_{N} on {length} points matches the Gram rank",
                  fix_dim(hyperoctahedral(N), plain) == gram_matrix(P_EVEN, plain, N).rank())
            for s in (3, 4):
                agrees = all(
                    fix_dim(reflection(N, s), word) == gram_matrix(ps(s), word, N).rank()
                    for word in (ColoredWord(letters) for letters in itertools.product("ob", repeat=length))
                )
                check(f"H_{N}^{s} on colored words of length {length} matches the Gram rank", agrees)


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
