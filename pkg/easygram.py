#!/usr/bin/env python3
"""
EasyGram Command Line
Front end over the library: partitions, Gram and Weingarten matrices, the
group oracle, probability laws, cumulants, the Jones polynomial and the
acceptance runner. Standard output carries one data document per call;
progress and diagnostics go to standard error.

Exit codes: 0 success, 1 library error, 2 failed verification, 64 usage error.
"""
import argparse
import csv
import io
import json
import logging
import re
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Basic, Poly, Symbol, sympify

import acceptance
import config
from categories import CategoryId, category_members
from cumulants import bp_map, moments_to_cumulants_classical, moments_to_cumulants_free, r_series, render_value
from cyclotomic import CyclotomicValue
from errors import DomainError, EasyGramError
from exact_linalg import render_scalar
from gram_weingarten import (
    A_CONVENTIONS, asymptotic_moment, bn_det, closed_det, difrancesco_conventions, difrancesco_det, factor_report,
    gram_det_direct, gram_matrix, integrate_monomial, lindstrom_det, on_det, sn_truncated_closed, truncated_moment,
    weingarten_matrix,
)
from group_oracle import (
    GroupSpec, character_law, cyclic_law_closed, dihedral_law_closed, easy_category, enumerate_group, fix_dim,
    integrate_exact, symmetric_law_closed, truncated_character_law,
)
from partition_core import BLACK, WHITE, ColoredWord, block_count_distribution, num_blocks
from prob_laws import LawSpec, density_grid, moments, stieltjes_invert
from tl_jones import BraidWord, bracket, jones_polynomial, markov_invariance_test, skein_check

logger = logging.getLogger("EasyGram")

USAGE_EXIT = 64
VERIFY_EXIT = 2
ERROR_EXIT = 1

GROUP_FAMILIES = {
    "zn": "cyclic",
    "dn": "dihedral",
    "sn": "symmetric",
    "an": "alternating",
    "hn": "hyperoctahedral",
    "hns": "reflection",
}

FORMULAS = ("direct", "lindstrom", "young-on", "young-bn", "difrancesco")

JONES_HELP = (
    "Braid letters are signed generator indices: i for g_i, -i for its inverse. "
    "Chirality is fixed so that '1 1 1' on 2 strands closes to q + q^3 - q^4."
)


class EasyGramParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


# ============ VALUE PARSING ============

def _value(token: str):
    """Exact scalar from 'p/q', an integer, or a sympy expression such as 't' or '2*t'."""
    token = token.strip()
    try:
        return Fraction(token)
    except ValueError:
        pass
    try:
        expr = sympify(token)
    except Exception:
        raise DomainError(f"Cannot read value {token!r}")
    return expr.subs({s: Symbol(str(s), positive=True) for s in expr.free_symbols})


def _values(text: str) -> List:
    return [_value(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok]


def _indices(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok)
    except ValueError:
        raise DomainError(f"Cannot read index list {text!r}")


def _word(cat: CategoryId, k: Optional[int], colors: Optional[str]) -> ColoredWord:
    if colors:
        word = ColoredWord.parse(colors)
        if cat.is_colored:
            return word
        if BLACK in word.letters:
            raise DomainError(f"Category {cat} is uncolored; got the colored word {colors!r}")
        return ColoredWord.uncolored(len(word))
    if k is None:
        raise DomainError("Give a point count or a color word")
    return ColoredWord((WHITE,) * k) if cat.is_colored else ColoredWord.uncolored(k)


def _grid(text: str) -> Tuple[float, float, float]:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise DomainError(f"Grid must read A:B:STEP, got {text!r}")
    return a, b, step


# ============ RENDERING ============

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def _float(x: float) -> float:
    return float(f"{x:.{config.FLOAT_DIGITS}g}")


def _floatify(doc):
    """Rationals rendered as 'p/q' become floats; integers become ints."""
    if isinstance(doc, dict):
        return {k: _floatify(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_floatify(v) for v in doc]
    if isinstance(doc, str) and _RATIONAL.match(doc):
        value = Fraction(doc)
        return int(value) if value.denominator == 1 else _float(float(value))
    return doc


def _scalar(x):
    if isinstance(x, Poly):
        return render_scalar(x)
    if isinstance(x, (CyclotomicValue, Fraction, int, Basic)):
        return render_value(x)
    return str(x)


def _csv(rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def _flat_rows(payload, prefix: str = "") -> List[List[str]]:
    if isinstance(payload, dict):
        rows = []
        for k, v in payload.items():
            rows += _flat_rows(v, f"{prefix}.{k}" if prefix else str(k))
        return rows
    if isinstance(payload, list):
        rows = []
        for i, v in enumerate(payload):
            rows += _flat_rows(v, f"{prefix}[{i}]")
        return rows
    return [[prefix, "" if payload is None else str(payload)]]


def emit(args, payload, rows: Optional[List[List]] = None):
    if args.float:
        payload = _floatify(payload)
        if rows is not None:
            rows = [_floatify(list(r)) for r in rows]
    if args.format == "csv":
        text = _csv(rows if rows is not None else [["key", "value"]] + _flat_rows(payload))
    else:
        doc = {"schema_version": config.SCHEMA_VERSION, "command": args.command_path, "payload": payload}
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote {args.out}")
    else:
        sys.stdout.write(text)


# ============ COMMANDS ============

def cmd_partitions(args) -> int:
    cat = CategoryId.parse(args.cls)
    word = _word(cat, args.points, args.colors)
    if args.action == "count":
        distribution = block_count_distribution(word, cat.filter)
        total = distribution.get(args.blocks, 0) if args.blocks is not None else sum(distribution.values())
        payload = {
            "category": cat.token, "word": str(word), "blocks": args.blocks, "count": total,
            "by_blocks": {str(b): c for b, c in sorted(distribution.items())},
        }
        emit(args, payload, [["blocks", "count"]] + [[b, c] for b, c in sorted(distribution.items())])
        return 0
    found = category_members(cat, word)
    if args.blocks is not None:
        found = [pi for pi in found if num_blocks(pi) == args.blocks]
    payload = {"category": cat.token, "word": str(word), "count": len(found), "partitions": [str(pi) for pi in found]}
    emit(args, payload, [["index", "partition", "blocks"]] + [[i, str(pi), num_blocks(pi)] for i, pi in enumerate(found)])
    return 0


def _formula_det(formula: str, cat: CategoryId, k: int, N: Optional[int], convention: str):
    if formula == "direct":
        return gram_det_direct(cat, k, N)
    if formula == "lindstrom":
        return lindstrom_det(cat, k, N)
    if formula == "young-on":
        if cat.family != "p2":
            raise DomainError("The orthogonal Young formula applies to p2")
        return on_det(k, N)
    if formula == "young-bn":
        if cat.family != "p12":
            raise DomainError("The bistochastic Young formula applies to p12")
        return bn_det(k, N)
    return difrancesco_det(cat, k, N, convention)


def cmd_gram(args) -> int:
    cat = CategoryId.parse(args.category)
    N = None if args.symbolic else args.n
    if N is None and not args.symbolic:
        raise DomainError("Give --n or --symbolic")
    word = _word(cat, args.k, args.colors)
    if args.action == "matrix":
        m = gram_matrix(cat, word, N)
        emit(args, {"category": cat.token, "word": str(word), "N": N, **m.to_json()}, _matrix_rows(m))
        return 0
    if args.action == "rank":
        if N is None:
            raise DomainError("Rank needs a numeric --n")
        m = gram_matrix(cat, word, N)
        emit(args, {"category": cat.token, "word": str(word), "N": N, "size": m.shape[0], "rank": m.rank()})
        return 0

    k = len(word)
    if args.formula != "direct" and cat.is_colored:
        raise DomainError("Closed determinant formulas cover uncolored categories")
    value = _formula_det(args.formula, cat, k, N, args.convention)
    payload = {"category": cat.token, "k": k, "N": N, "formula": args.formula, "determinant": _scalar(value)}
    polynomial = value if isinstance(value, Poly) else _closed_polynomial(cat, k)
    if polynomial is not None:
        payload["polynomial"] = _scalar(polynomial)
        payload["factors"] = factor_report(polynomial)
    if args.formula == "difrancesco" and cat.family in ("nc", "nc_even"):
        payload["conventions"] = {c: _scalar(v) for c, v in difrancesco_conventions(cat, k, N).items()}
    emit(args, payload)
    return 0


def _closed_polynomial(cat: CategoryId, k: int) -> Optional[Poly]:
    try:
        return closed_det(cat, k)
    except EasyGramError:
        pass
    try:
        return gram_det_direct(cat, k)
    except EasyGramError:
        return None


def _matrix_rows(m) -> List[List[str]]:
    return [[""] + [str(p) for p in m.columns]] + [[str(r)] + row for r, row in zip(m.rows, m.to_rows())]


def cmd_wg(args) -> int:
    cat = CategoryId.parse(args.category)
    if args.action == "matrix":
        word = _word(cat, args.k, args.colors)
        m = weingarten_matrix(cat, word, args.n)
        emit(args, {"category": cat.token, "word": str(word), "N": args.n, **m.to_json()}, _matrix_rows(m))
        return 0
    if args.action == "integrate":
        if not args.exponents:
            raise DomainError("wg integrate needs --exponents")
        word = _word(cat, int(args.exponents), None) if args.exponents.isdigit() else _word(cat, None, args.exponents)
        i, j = _indices(args.rows), _indices(args.cols)
        value = integrate_monomial(cat, args.n, word, i, j)
        emit(args, {"category": cat.token, "N": args.n, "exponents": str(word), "rows": list(i), "cols": list(j),
                    "integral": _scalar(value)})
        return 0
    word = _word(cat, args.k, args.colors)
    s = args.s if args.s is not None else args.n
    payload = {"category": cat.token, "N": args.n, "word": str(word), "s": s,
               "moment": _scalar(truncated_moment(cat, args.n, word, s))}
    if cat.family == "p" and not word.colored:
        payload["closed"] = _scalar(sn_truncated_closed(args.n, s, len(word)))
    if args.asymptotic:
        t = _value(args.t) if args.t else Fraction(s, args.n)
        payload["t"] = _scalar(t)
        payload["asymptotic"] = _scalar(asymptotic_moment(cat, word, t))
    emit(args, payload)
    return 0


def _group(args) -> GroupSpec:
    family = GROUP_FAMILIES[args.group]
    if family == "reflection":
        if args.s is None:
            raise DomainError("Group hns needs --s")
        return GroupSpec(family, args.n, args.s)
    return GroupSpec(family, args.n)


_CLOSED_LAWS = {"cyclic": cyclic_law_closed, "dihedral": dihedral_law_closed, "symmetric": symmetric_law_closed}


def _law_rows(law) -> List[List[str]]:
    return [["atom", "prob"]] + [[json.dumps(a["atom"]) if isinstance(a["atom"], dict) else a["atom"], a["prob"]]
                                 for a in law.to_json()]


def cmd_oracle(args) -> int:
    if args.action == "trunc-law":
        if args.group != "sn":
            raise DomainError("Truncated characters are defined for sn")
        s = args.s if args.s is not None else args.n
        law = truncated_character_law(args.n, s)
        emit(args, {"group": f"symmetric:{args.n}", "s": s, "law": law.to_json()}, _law_rows(law))
        return 0
    group = _group(args)
    if args.action == "elements":
        rows = [["perm", "phases"]]
        elements = []
        for g in enumerate_group(group):
            perm = [p + 1 for p in g.perm]
            elements.append({"perm": perm, "phases": list(g.phases)})
            rows.append([" ".join(map(str, perm)), " ".join(map(str, g.phases))])
        emit(args, {"group": group.token, "order": group.order, "elements": elements}, rows)
        return 0
    if args.action == "law":
        law = character_law(group)
        payload = {"group": group.token, "law": law.to_json()}
        if group.family in _CLOSED_LAWS:
            payload["closed_agrees"] = _CLOSED_LAWS[group.family](group.N).atoms == law.atoms
        emit(args, payload, _law_rows(law))
        return 0
    word = _oracle_word(args)
    if args.action == "integrate":
        i, j = _indices(args.rows), _indices(args.cols)
        value = integrate_exact(group, word, i, j)
        emit(args, {"group": group.token, "exponents": str(word), "rows": list(i), "cols": list(j),
                    "integral": _scalar(value)})
        return 0
    payload = {"group": group.token, "word": str(word), "dimension": fix_dim(group, word)}
    try:
        cat = easy_category(group)
    except DomainError:
        cat = None
    if cat is not None:
        payload["category"] = cat.token
        payload["gram_rank"] = gram_matrix(cat, _word(cat, len(word), str(word)), group.N).rank()
    emit(args, payload)
    return 0


def _oracle_word(args) -> ColoredWord:
    if args.exponents:
        return ColoredWord.parse(args.exponents) if not args.exponents.isdigit() else ColoredWord.uncolored(int(args.exponents))
    if args.k is not None:
        return ColoredWord.uncolored(args.k)
    raise DomainError("Give --exponents or --k")


def _law(args) -> LawSpec:
    token = args.law if args.t is None else f"{args.law}:{args.t}"
    return LawSpec.parse(token)


def cmd_law(args) -> int:
    law = _law(args)
    if args.action == "moments":
        if args.words:
            seq = moments(law, [w for w in re.split(r"[,\s]+", args.words) if w])
            rows = [["word", "moment"]] + [[w, _scalar(v)] for w, v in seq.colored.items()]
        else:
            seq = moments(law, args.order or 8)
            rows = [["k", "moment"]] + [[k, _scalar(v)] for k, v in enumerate(seq.values, 1)]
        emit(args, {"law": law.token, **seq.to_json()}, rows)
        return 0
    a, b, step = _grid(args.grid) if args.grid else (-2.0, 2.0, 0.1)
    if args.action == "density":
        grid = density_grid(law, a, b, step)
        payload = {"law": law.token, **grid.to_json()}
        if args.format == "csv":
            _write_text(args, grid.to_csv())
            return 0
        emit(args, payload)
        return 0
    order = args.order or 60
    eps = args.eps if args.eps is not None else 1e-3
    m = moments(law, order)
    grid = density_grid(law, a, b, step)
    estimate = [_float(stieltjes_invert(m, float(x), eps)) for x in grid.xs]
    rows = [["x", "estimate", "density"]]
    rows += [[f"{x:.{config.FLOAT_DIGITS}g}", f"{e:.{config.FLOAT_DIGITS}g}", f"{d:.{config.FLOAT_DIGITS}g}"]
             for x, e, d in zip(grid.xs, estimate, grid.values)]
    emit(args, {"law": law.token, "moments": order, "eps": eps, "x": [_float(x) for x in grid.xs],
                "estimate": estimate, "density": [_float(d) for d in grid.values]}, rows)
    return 0


def _write_text(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_cum(args) -> int:
    m = _values(args.moments)
    order = args.order or len(m)
    if args.action == "classical":
        result = moments_to_cumulants_classical(m, order)
        values = result.values
    elif args.action == "free":
        result = moments_to_cumulants_free(m, order)
        values = result.values
    elif args.action == "bp":
        result = bp_map(m, order)
        values = result.values
    else:
        result = r_series(m, order)
        values = result.coeffs
    rows = [["n", "value"]] + [[n, _scalar(v)] for n, v in enumerate(values, 1)]
    emit(args, {"input": [_scalar(v) for v in m[:order]], "order": order, "result": result.to_json()}, rows)
    return 0


def cmd_jones(args) -> int:
    braid = BraidWord.parse(args.strands, args.braid)
    payload: Dict = {"braid": str(braid), "strands": braid.strands, "writhe": braid.writhe}
    status = 0
    if args.bracket_only:
        payload["bracket"] = bracket(braid).to_json()
    else:
        payload["jones"] = jones_polynomial(braid).to_json()
    if args.skein is not None:
        report = skein_check(braid, args.skein)
        payload["skein"] = report.to_json()
        status = status or (0 if report.passed else VERIFY_EXIT)
    if args.check_markov:
        report = markov_invariance_test(braid, args.check_markov, args.seed)
        payload["markov"] = report.to_json()
        status = status or (0 if report.passed else VERIFY_EXIT)
    emit(args, payload)
    return status


def cmd_verify(args) -> int:
    ledger = acceptance.run_suite(args.suite)
    emit(args, ledger.to_json(), ledger.to_rows())
    return 0 if ledger.passed else VERIFY_EXIT


# ============ PARSER ============

def build_parser() -> EasyGramParser:
    output = EasyGramParser(add_help=False)
    output.add_argument("--format", choices=("json", "csv"), default="json", help="Output format")
    output.add_argument("--float", action="store_true", help="Render rationals as decimals")
    output.add_argument("--out", help="Write the document to FILE instead of standard output")

    parser = EasyGramParser(prog="easygram", description="Exact partition combinatorics for easy quantum groups")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=EasyGramParser)

    p = sub.add_parser("partitions", parents=[output], help="List or count category members")
    p.add_argument("action", choices=("list", "count"))
    p.add_argument("--points", type=int, help="Number of uncolored points")
    p.add_argument("--colors", help="Color word, e.g. oob")
    p.add_argument("--class", dest="cls", default="p", help="Category, e.g. p, nc2, p_s:3")
    p.add_argument("--blocks", type=int, help="Keep partitions with exactly B blocks")
    p.set_defaults(handler=cmd_partitions)

    p = sub.add_parser("gram", parents=[output], help="Gram matrices and determinants")
    p.add_argument("action", choices=("matrix", "det", "rank"))
    p.add_argument("--category", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--colors")
    p.add_argument("--n", type=int)
    p.add_argument("--formula", choices=FORMULAS, default="direct")
    p.add_argument("--convention", choices=A_CONVENTIONS, default="noncrossing",
                   help="Index set of the a_k exponent in the Chebyshev formulas")
    p.add_argument("--symbolic", action="store_true", help="Keep N as a variable")
    p.set_defaults(handler=cmd_gram)

    p = sub.add_parser("wg", parents=[output], help="Weingarten matrices and integrals")
    p.add_argument("action", choices=("matrix", "integrate", "char-moment"))
    p.add_argument("--category", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--colors")
    p.add_argument("--exponents", help="Exponent word (colors) or a degree")
    p.add_argument("--rows", help="Row indices, 1-based")
    p.add_argument("--cols", help="Column indices, 1-based")
    p.add_argument("--s", type=int, help="Truncation of the character")
    p.add_argument("--asymptotic", action="store_true")
    p.add_argument("--t", help="Asymptotic parameter P/Q")
    p.set_defaults(handler=cmd_wg)

    p = sub.add_parser("oracle", parents=[output], help="Brute-force finite group oracle")
    p.add_argument("action", choices=("elements", "law", "trunc-law", "integrate", "fixdim"))
    p.add_argument("--group", choices=tuple(GROUP_FAMILIES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, help="Phase order for hns, truncation for trunc-law")
    p.add_argument("--exponents", help="Exponent word (colors) or a degree")
    p.add_argument("--k", type=int)
    p.add_argument("--rows")
    p.add_argument("--cols")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("law", parents=[output], help="Moments, densities and Stieltjes inversion")
    p.add_argument("action", choices=("moments", "density", "invert"))
    p.add_argument("--law", required=True, help="poisson, semicircle, bessel:3, compound_poisson:1/2@1, ...")
    p.add_argument("--t", help="Parameter P/Q or a symbol name")
    p.add_argument("--order", type=int)
    p.add_argument("--words", help="Colored words for colored moments, e.g. oo,ob")
    p.add_argument("--grid", help="A:B:STEP")
    p.add_argument("--eps", type=float)
    p.set_defaults(handler=cmd_law)

    p = sub.add_parser("cum", parents=[output], help="Cumulants and the Bercovici-Pata map")
    p.add_argument("action", choices=("classical", "free", "bp", "rseries"))
    p.add_argument("--moments", required=True, help="M_1,M_2,... as comma-separated values")
    p.add_argument("--order", type=int)
    p.set_defaults(handler=cmd_cum)

    p = sub.add_parser("jones", parents=[output], help="Jones polynomial of a braid closure", description=JONES_HELP)
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--braid", default="", help="Signed generator indices, e.g. '1 1 1'")
    p.add_argument("--bracket-only", action="store_true", help="Print the Kauffman bracket in A")
    p.add_argument("--check-markov", type=int, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=config.SEED)
    p.add_argument("--skein", type=int, metavar="POSITION", help="Skein triple at a 0-based letter position")
    p.set_defaults(handler=cmd_jones)

    p = sub.add_parser("verify", parents=[output], help="Run the acceptance suites")
    p.add_argument("--suite", choices=acceptance.SUITES, default="all")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    args.command_path = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    try:
        return args.handler(args)
    except EasyGramError as e:
        logger.error(f"{args.command_path}: {e}")
        doc = {"error": type(e).__name__, "detail": str(e)}
        sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")
        return ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
