"""
Shared test helpers: colored pass/fail reporting and a runner for the
test_* functions of a module. Checks also assert, so the files run under
pytest as well as standalone.
"""
import os
import sys
import logging
import traceback

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

logging.basicConfig(level=logging.WARNING, format='%(asctime)s - %(levelname)s - %(message)s')

# Colors for output
GREEN = "\033[92m"
RED = "\033[91m"
YELLOW = "\033[93m"
BLUE = "\033[94m"
RESET = "\033[0m"


def print_header(msg):
    print(f"\n{BLUE}{'='*60}{RESET}")
    print(f"{BLUE}{msg}{RESET}")
    print(f"{BLUE}{'='*60}{RESET}\n")


def print_result(test_name, passed, details=""):
    status = f"{GREEN}✅ PASS{RESET}" if passed else f"{RED}❌ FAIL{RESET}"
    print(f"{status} - {test_name}")
    if details:
        print(f"    {details}")


def check(name, condition, details=""):
    """Report one check and fail the enclosing test when it does not hold."""
    passed = bool(condition)
    print_result(name, passed, details)
    assert passed, f"{name} {details}".strip()


def raises(exc_type, fn, *args, **kwargs) -> bool:
    """True iff fn(*args, **kwargs) raises exc_type."""
    try:
        fn(*args, **kwargs)
    except exc_type:
        return True
    except Exception as e:
        print(f"    {YELLOW}unexpected {type(e).__name__}: {e}{RESET}")
        return False
    return False


def run_tests(namespace) -> int:
    """Run every test_* function in the namespace, print a summary, return an exit code."""
    tests = [(name, fn) for name, fn in namespace.items() if name.startswith("test_") and callable(fn)]
    results = {}
    for name, fn in tests:
        try:
            fn()
            results[name] = True
        except AssertionError as e:
            print_result(name, False, str(e))
            results[name] = False
        except Exception as e:
            print_result(name, False, f"{type(e).__name__}: {e}")
            traceback.print_exc()
            results[name] = False

    print_header("TEST SUMMARY")
    passed = sum(results.values())
    total = len(results)
    for test_name, ok in results.items():
        status = f"{GREEN}✅{RESET}" if ok else f"{RED}❌{RESET}"
        print(f"{status} {test_name}")
    print(f"\n{BLUE}FINAL RESULT: {passed}/{total} tests passed{RESET}\n")
    return 0 if passed == total else 1
