#!/usr/bin/env python3
"""
Category Tests
Membership rules, diagram operations and the category axioms
"""
import itertools
import sys

from harness import check, print_header, raises, run_tests

from categories import (
    CNC2, CP2, NC, NC12, NC2, NC_EVEN, P, P12, P2, P_EVEN,
    CategoryId, category_members, contains, horizontal_concat, identity, involute, members_two_row,
    ncs, ps, verify_axioms, vertical_concat,
)
from errors import DomainError, ShapeError
from partition_core import LOWER, UPPER, ColoredWord, Partition, is_noncrossing


def test_category_ids():
    print_header("CATEGORY IDS")
    check("Parameter read", CategoryId.parse("P_S:4") == ps(4))
    check("Infinite parameter", CategoryId.parse("nc_s:inf").s is None)
    check("Token", ps(None).token == "p_s:inf")
    check("Missing parameter rejected", raises(DomainError, CategoryId.parse, "p_s"))
    check("Stray parameter rejected", raises(DomainError, CategoryId, "p", 3))
    check("Unknown family rejected", raises(DomainError, CategoryId.parse, "q2"))
    check("Noncrossing flag", NC_EVEN.noncrossing and not P_EVEN.noncrossing)


def test_member_counts():
    print_header("MEMBER COUNTS")
    counts = {
        "nc2(6)": (CategoryId.parse("nc2"), 6, 5),
        "p2(4)": (P2, 4, 3),
        "p12(3)": (P12, 3, 4),
        "nc12(4)": (NC12, 4, 9),
        "p_even(4)": (P_EVEN, 4, 4),
        "nc_even(4)": (NC_EVEN, 4, 3),
        "nc(4)": (NC, 4, 14),
        "p(4)": (P, 4, 15),
        "cp2(oobb)": (CP2, "oobb", 2),
        "cnc2(oobb)": (CNC2, "oobb", 1),
        "cp2(oo)": (CP2, "oo", 0),
        "p_3(ooo)": (ps(3), "ooo", 1),
        "p_inf(ooo)": (ps(None), "ooo", 0),
        "p_inf(ob)": (ps(None), "ob", 1),
    }
    for name, (cat, points, expected) in counts.items():
        got = len(category_members(cat, points))
        check(name, got == expected, f"got {got}, expected {expected}")


def test_color_rules():
    print_header("COLOR RULES")
    check("White-black pair allowed", contains(CP2, Partition.one_row([[0, 1]], "ob")))
    check("White-white pair refused", not contains(CP2, Partition.one_row([[0, 1]], "oo")))
    white = ColoredWord.parse("o")
    strand = Partition(white, white, [((UPPER, 0), (LOWER, 0))])
    check("Through-string of equal colors allowed", contains(CP2, strand))
    check("Two-row members of nc2(2, 2)",
          len(members_two_row(NC2, ColoredWord.uncolored(2), ColoredWord.uncolored(2))) == 2)
    check("Two-row members of p2(2, 2)",
          len(members_two_row(P2, ColoredWord.uncolored(2), ColoredWord.uncolored(2))) == 3)


def test_operations():
    print_header("DIAGRAM OPERATIONS")
    one, two = ColoredWord.uncolored(1), ColoredWord.uncolored(2)
    check("Tensor of identities", horizontal_concat(identity(one), identity(one)) == identity(two))

    cap = Partition(two, ColoredWord.uncolored(0), [((UPPER, 0), (UPPER, 1))])
    cup = Partition.one_row([[0, 1]])
    closed = vertical_concat(cap, cup)
    check("Cup under cap closes one loop", closed.loops == 1 and closed.result.num_legs == 0)

    swap = Partition(two, two, [((UPPER, 0), (LOWER, 1)), ((UPPER, 1), (LOWER, 0))])
    glued = vertical_concat(identity(two), swap)
    check("Identity is neutral", glued.result == swap and glued.loops == 0)
    twice = vertical_concat(swap, swap)
    check("Crossing squared is the identity", twice.result == identity(two))
    check("Middle rows must match", raises(ShapeError, vertical_concat, identity(one), swap))

    colored = Partition.one_row([[0, 1]], "ob")
    turned = involute(colored)
    check("Involution moves legs to the upper row", turned.k == 2 and turned.l == 0)
    check("Involution inverts colors", str(turned.upper) == "bo")
    check("Involution is an involution", involute(turned) == colored)


def test_axioms():
    print_header("CATEGORY AXIOMS")
    for cat in (NC2, P, P12, NC_EVEN):
        report = verify_axioms(cat, k_max=4)
        check(f"{cat} closed", report.passed, report.counterexample or f"{report.checked} checks")
    colored = verify_axioms(CP2, k_max=4)
    check("cp2 closed", colored.passed, colored.counterexample or "")
    at_most_one_block = verify_axioms(lambda pi: len(pi.blocks) <= 1, k_max=4, name="one-block")
    check("One-block diagrams are not a category", not at_most_one_block.passed,
          at_most_one_block.counterexample or "")
    check("Leg budget enforced", raises(DomainError, verify_axioms, P, 7))


def test_parametrized_families():
    print_header("PARAMETRIZED FAMILIES")
    words = [ColoredWord(letters) for n in range(1, 7) for letters in itertools.product("ob", repeat=n)]

    def same(a, b):
        return all(set(category_members(a, w)) == set(category_members(b, w)) for w in words)

    check("P_1 equals P on colored words up to 6 points", same(ps(1), P))
    check("P_2 equals P_even on colored words up to 6 points", same(ps(2), P_EVEN))
    for s in (1, 2, 3, 4, None):
        agrees = all(
            set(category_members(ncs(s), w)) == {p for p in category_members(ps(s), w) if is_noncrossing(p)}
            for w in words
        )
        check(f"{ncs(s)} is the noncrossing part of {ps(s)}", agrees)


def test_inclusions():
    print_header("INCLUSIONS")
    chains = [
        (NC2, NC_EVEN, P_EVEN, P), (NC2, P2, P_EVEN), (NC2, NC12, NC, P),
        (P2, P12, P), (NC12, P12), (NC_EVEN, NC),
    ]
    for k in range(1, 7):
        sets = {cat: set(category_members(cat, k)) for cat in (P, P_EVEN, P2, P12, NC, NC_EVEN, NC2, NC12)}
        for chain in chains:
            nested = all(sets[a] <= sets[b] for a, b in zip(chain, chain[1:]))
            check(f"{' < '.join(str(c) for c in chain)} on {k} points", nested)
        check(f"NC on {k} points is the noncrossing part of P",
              sets[NC] == {p for p in sets[P] if is_noncrossing(p)})


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
