#!/usr/bin/env python3
"""
Partition Core Tests
Words, partitions, enumeration filters, lattice operations, Möbius functions,
block counting and fattening
"""
import itertools
import sys
from math import comb

from harness import check, print_header, raises, run_tests

import config
from errors import CapacityError, DomainError, ShapeError
from partition_core import (
    ALL, EVEN_BLOCKS, LOWER, NONCROSSING, NONCROSSING_PAIRINGS, PAIRINGS, SINGLETONS_AND_PAIRINGS, UPPER,
    ColoredWord, Partition, adjacency_matrix, block_count_distribution, boundary_positions, coarsenings,
    count_by_blocks, enumerate_partitions, fatten, is_noncrossing, join, kernel, kreweras_complement, leq, mobius,
    mobius_in_poset, mobius_matrix, mobius_noncrossing, noncrossing_interval, one_block, shrink, singletons,
    weighted_partition_sums,
)


def test_words():
    print_header("COLORED WORDS")
    word = ColoredWord.parse("∘•w")
    check("Aliases read", word.letters == ("o", "b", "o"), str(word))
    check("Inversion swaps colors", str(word.inverted()) == "bob")
    check("Uncolored inversion is the identity", ColoredWord.uncolored(3).inverted() == ColoredWord.uncolored(3))
    check("Unknown letter rejected", raises(DomainError, ColoredWord.parse, "oz"))
    check("Black letter in uncolored word rejected", raises(DomainError, ColoredWord, ("o", "b"), False))


def test_partition_validation():
    print_header("PARTITION VALIDATION")
    empty, two = ColoredWord.uncolored(0), ColoredWord.uncolored(2)
    check("Missing leg rejected", raises(ShapeError, Partition, empty, two, [((LOWER, 0),)]))
    check("Repeated leg rejected", raises(ShapeError, Partition, empty, two, [((LOWER, 0), (LOWER, 1)), ((LOWER, 1),)]))
    pi = Partition.one_row([[2, 0], [1]])
    check("Canonical block order", pi.blocks == (((LOWER, 0), (LOWER, 2)), ((LOWER, 1),)))
    check("One-row rendering is 1-based", str(pi) == "{1,3}{2}", str(pi))
    check("JSON document reads back", Partition.from_json(pi.to_json()) == pi)


def test_enumeration_counts():
    print_header("ENUMERATION")
    counts = {
        "all(4)": (len(enumerate_partitions(4)), 15),
        "noncrossing(4)": (len(enumerate_partitions(4, NONCROSSING)), 14),
        "pairings(4)": (len(enumerate_partitions(4, PAIRINGS)), 3),
        "noncrossing pairings(6)": (len(enumerate_partitions(6, NONCROSSING_PAIRINGS)), 5),
        "even blocks(4)": (len(enumerate_partitions(4, EVEN_BLOCKS)), 4),
        "singletons and pairings(3)": (len(enumerate_partitions(3, SINGLETONS_AND_PAIRINGS)), 4),
        "all(5)": (len(enumerate_partitions(5, ALL)), 52),
    }
    for name, (got, expected) in counts.items():
        check(name, got == expected, f"got {got}, expected {expected}")
    listed = enumerate_partitions(4)
    check("No duplicates", len(set(listed)) == len(listed))
    check("Sorted canonically", [p.blocks for p in listed] == sorted(p.blocks for p in listed))
    check("Bound enforced", raises(CapacityError, enumerate_partitions, config.MAX_POINTS + 1))


def test_crossings():
    print_header("CROSSINGS")
    check("{1,3}{2,4} crosses", not is_noncrossing(Partition.one_row([[0, 2], [1, 3]])))
    check("{1,4}{2,3} is noncrossing", is_noncrossing(Partition.one_row([[0, 3], [1, 2]])))
    one = ColoredWord.uncolored(1)
    strand = Partition(one, one, [((UPPER, 0), (LOWER, 0))])
    check("Boundary order runs lower row then upper row",
          boundary_positions(strand) == {(LOWER, 0): 0, (UPPER, 0): 1})
    two = ColoredWord.uncolored(2)
    swap = Partition(two, two, [((UPPER, 0), (LOWER, 1)), ((UPPER, 1), (LOWER, 0))])
    straight = Partition(two, two, [((UPPER, 0), (LOWER, 0)), ((UPPER, 1), (LOWER, 1))])
    check("Crossed strands cross", not is_noncrossing(swap))
    check("Parallel strands do not", is_noncrossing(straight))


def test_lattice():
    print_header("LATTICE")
    pi = Partition.one_row([[0], [1, 2]])
    sigma = Partition.one_row([[0, 1], [2]])
    check("Join of overlapping blocks is one block", join(pi, sigma) == one_block(3))
    check("Singletons below everything", all(leq(singletons(3), p) for p in enumerate_partitions(3)))
    check("Kernel groups equal indices", kernel((1, 2, 1)) == Partition.one_row([[0, 2], [1]]))
    check("Coarsenings of 0_3 are all of P(3)", len(list(coarsenings(singletons(3)))) == 5)
    check("Mismatched points rejected", raises(ShapeError, leq, singletons(2), singletons(3)))


def test_lattice_axioms():
    print_header("LATTICE AXIOMS")
    for k in range(1, 7):
        members = enumerate_partitions(k)
        ups = {p: frozenset(s for s in members if leq(p, s)) for p in members}
        reflexive = all(p in ups[p] for p in members)
        antisymmetric = all(p == s for p in members for s in ups[p] if p in ups[s])
        transitive = all(ups[s] <= ups[p] for p in members for s in ups[p])
        check(f"leq is a partial order on P({k})", reflexive and antisymmetric and transitive)
        least = True
        for p, s in itertools.combinations(members, 2):
            j = join(p, s)
            if j not in ups[p] or j not in ups[s] or ups[j] != ups[p] & ups[s]:
                least = False
                break
        check(f"join is the least upper bound on P({k})", least)


def test_kernel_criterion():
    print_header("KERNELS")
    members = enumerate_partitions(4)
    agree = True
    for indices in itertools.product((1, 2, 3), repeat=4):
        ker = kernel(indices)
        for pi in members:
            constant = all(len({indices[p] for p in block}) == 1 for block in pi.positions())
            if leq(pi, ker) != constant:
                agree = False
    check("kernel(i) >= pi iff i is constant on the blocks of pi, {1,2,3}^4 x P(4)", agree)


def test_mobius():
    print_header("MÖBIUS FUNCTIONS")
    check("mu(0_4, 1_4) = -6", mobius(singletons(4), one_block(4)) == -6)
    check("mu_NC(0_4, 1_4) = -5", mobius_noncrossing(singletons(4), one_block(4)) == -5)
    members = enumerate_partitions(3)
    agree = all(mobius(p, s) == mobius_in_poset(p, s) for p in members for s in members)
    check("Closed form matches the recurrence on P(3)", agree)
    product = adjacency_matrix(3).dot(mobius_matrix(3))
    identity = all(product[i, j] == int(i == j) for i in range(5) for j in range(5))
    check("A_3 M_3 = I", identity)
    crossing = Partition.one_row([[0, 2], [1, 3]])
    check("Noncrossing poset rejects crossing input",
          raises(DomainError, mobius_noncrossing, crossing, one_block(4)))
    members = enumerate_partitions(5, NONCROSSING)
    agree = all(mobius_noncrossing(p, s) == mobius_in_poset(p, s, noncrossing=True)
                for p in members for s in members if leq(p, s))
    check("Kreweras product matches the recurrence on NC(5)", agree)
    check("Noncrossing interval [0_4, 1_4] is NC(4)",
          set(noncrossing_interval(singletons(4), one_block(4))) == set(enumerate_partitions(4, NONCROSSING)))
    for m in range(1, 11):
        expected = (-1) ** (m - 1) * comb(2 * m - 2, m - 1) // m
        check(f"mu_NC(0_{m}, 1_{m}) = (-1)^{m - 1} Cat_{m - 1}",
              mobius_noncrossing(singletons(m), one_block(m)) == expected)


def test_kreweras():
    print_header("KREWERAS COMPLEMENT")
    check("K(0_4) = 1_4", kreweras_complement(singletons(4)) == one_block(4))
    check("K(1_4) = 0_4", kreweras_complement(one_block(4)) == singletons(4))
    check("K({1,3}{2}) = {1,2}{3}",
          kreweras_complement(Partition.one_row([[0, 2], [1]])) == Partition.one_row([[0, 1], [2]]))
    for k in range(1, 8):
        members = enumerate_partitions(k, NONCROSSING)
        images = [kreweras_complement(p) for p in members]
        check(f"|pi| + |K(pi)| = {k + 1} and K is a bijection on NC({k})",
              all(len(p.blocks) + len(q.blocks) == k + 1 for p, q in zip(members, images))
              and set(images) == set(members))
    check("Crossing input rejected",
          raises(DomainError, kreweras_complement, Partition.one_row([[0, 2], [1, 3]])))


def test_block_counting():
    print_header("BLOCK COUNTING")
    check("Stirling row 4", block_count_distribution(4) == {1: 1, 2: 7, 3: 6, 4: 1})
    check("Narayana row 4", block_count_distribution(4, NONCROSSING) == {1: 1, 2: 6, 3: 6, 4: 1})
    check("S(5, 2) = 15", count_by_blocks(5, 2) == 15)
    check("Bell numbers", weighted_partition_sums(5, "any", False, 1) == (1, 1, 2, 5, 15, 52))
    check("Catalan count of noncrossing pairings", weighted_partition_sums(6, "two", True, 1)[6] == 5)
    check("Weighted noncrossing sum at t=2", weighted_partition_sums(4, "any", True, 2)[4] == 90)
    counted = block_count_distribution(6, EVEN_BLOCKS)
    enumerated = {}
    for p in enumerate_partitions(6, EVEN_BLOCKS):
        enumerated[len(p.blocks)] = enumerated.get(len(p.blocks), 0) + 1
    check("Recursion matches enumeration", counted == enumerated, str(counted))
    check("Block count out of range", raises(DomainError, count_by_blocks, 3, 4))
    bell = weighted_partition_sums(10, "any", False, 1)
    check("Bell recurrence B_(n+1) = sum C(n, i) B_i up to B_10",
          all(bell[n + 1] == sum(comb(n, i) * bell[i] for i in range(n + 1)) for n in range(10)), str(bell))
    check("Bell numbers match enumeration up to 8 points",
          all(len(enumerate_partitions(n)) == bell[n] for n in range(1, 9)))


def test_fattening():
    print_header("FATTENING")
    fat = fatten(one_block(2))
    check("Fattened 1_2 is {1,4}{2,3}", fat == Partition.one_row([[0, 3], [1, 2]]), str(fat))
    images = [fatten(p) for p in enumerate_partitions(3, NONCROSSING)]
    check("Bijection NC(3) -> NC2(6)", set(images) == set(enumerate_partitions(6, NONCROSSING_PAIRINGS)))
    check("Shrink inverts fatten",
          all(shrink(fatten(p)) == p for p in enumerate_partitions(3, NONCROSSING)))
    check("Crossing input rejected", raises(DomainError, fatten, Partition.one_row([[0, 2], [1, 3]])))
    for k in range(1, 8):
        members = enumerate_partitions(k, NONCROSSING)
        images = {fatten(p) for p in members}
        pairings = set(enumerate_partitions(2 * k, NONCROSSING_PAIRINGS))
        check(f"fatten is a bijection NC({k}) -> NC2({2 * k})",
              len(images) == len(members) and images == pairings, f"{len(images)} vs {len(pairings)}")


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
