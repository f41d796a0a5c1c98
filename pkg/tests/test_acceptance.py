#!/usr/bin/env python3
"""
Acceptance Runner Tests
Suite selection, ledger bookkeeping and a sample of the cheaper checks
"""
import sys

from harness import check, print_header, raises, run_tests

import acceptance
from acceptance import CHECKS, SUITES, Check, Ledger, kernel_indices, select
from errors import DomainError


def test_selection():
    print_header("SUITE SELECTION")
    check("All checks in the full suite", len(select("all")) == len(CHECKS))
    check("Gram suite", [c.criterion for c in select("gram")] == [1, 2])
    check("Shared criterion listed under both suites", 4 in [c.criterion for c in select("oracle")]
          and 4 in [c.criterion for c in select("weingarten")])
    check("Every criterion covered", {c.criterion for c in CHECKS} == set(range(1, 13)))
    check("Every suite non-empty", all(select(s) for s in SUITES))
    check("Unknown suite rejected", raises(DomainError, select, "everything"))


def test_kernel_indices():
    print_header("KERNEL REPRESENTATIVES")
    check("k=3, N=2", list(kernel_indices(3, 2)) == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)])
    check("k=4, N=4 gives B_4", len(list(kernel_indices(4, 4))) == 15)


def test_ledger():
    print_header("LEDGER")

    def broken():
        raise DomainError("out of range")

    good = acceptance._timed(Check(1, "good", ("gram",), lambda: (True, "fine")))
    bad = acceptance._timed(Check(2, "bad", ("gram",), broken))
    crash = acceptance._timed(Check(3, "crash", ("gram",), lambda: 1 / 0))
    check("Passing check recorded", good.passed and good.detail == "fine")
    check("Library errors become failures", not bad.passed and "DomainError" in bad.detail, bad.detail)
    check("Crashes become failures", not crash.passed and crash.detail.startswith("crash"), crash.detail)
    ledger = Ledger("gram", [good, bad])
    doc = ledger.to_json()
    check("Ledger fails when one entry fails", not ledger.passed and doc["failed"] == 1 and doc["total"] == 2)
    check("CSV rows", ledger.to_rows()[0] == ["criterion", "name", "passed", "seconds", "detail"])


def test_sample_checks():
    print_header("SAMPLE CHECKS")
    for fn in (acceptance.check_printed_determinants, acceptance.check_character_laws,
               acceptance.check_truncated_characters, acceptance.check_weingarten_identities,
               acceptance.check_fixed_point_dimensions, acceptance.check_cumulant_tables):
        passed, detail = fn()
        check(fn.__name__, passed, detail)


if __name__ == "__main__":
    sys.exit(run_tests(globals()))
