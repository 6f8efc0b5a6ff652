"""solchiral command line.

Exit status: 0 success, 1 unparsable input, 2 mathematically invalid input,
3 file system failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import cache, genus, intarith, qform, shimizu, solman, survey
from .errors import DomainError
from .mat2 import MatrixParseError, parse_matrix

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _matrix(words):
    return parse_matrix(" ".join(words))


def _form(Q):
    return list(Q.coeffs())


def _rows(m):
    return [list(r) for r in m.rows()]


def _orientable_data(phi):
    data = solman.discriminant_of(phi)
    G = cache.class_group(data.D)
    cls = qform.class_of(data.form)
    cover = solman.double_covers_semibundle(phi)
    return {
        "u": data.u,
        "D": data.D,
        "form": _form(data.form),
        "class_representative": _form(cls.canonical),
        "class_number": G.class_number,
        "class_order": G.order(cls),
        "achiral": solman.is_achiral_bundle(phi),
        "double_covers_semibundle": bool(cover),
    }


def cmd_analyze(args):
    phi = _matrix(args.matrix)
    solman.check_anosov(phi)
    out = {"matrix": _rows(phi), "det": phi.det, "trace": phi.trace, "orientable": phi.det == 1}
    if phi.det == 1:
        out.update(_orientable_data(phi))
    else:
        out["double_cover"] = {"matrix": _rows(phi @ phi), **_orientable_data(phi @ phi)}
    D = solman.bundle_discriminant(phi)
    f = intarith.fundamental_discriminant(D)
    out["fundamental_discriminant"] = f
    out["achiral_commensurability_class"] = genus.achiral_class(f)
    out["class_contains_nonorientable"] = solman.class_contains_nonorientable(f)
    return out


def cmd_classify(args):
    p1, p2 = parse_matrix(args.matrix1), parse_matrix(args.matrix2)
    solman.check_anosov(p1)
    solman.check_anosov(p2)
    oriented = None
    if p1.det == 1 and p2.det == 1:
        oriented = solman.oriented_homeomorphic(p1, p2)
    return {
        "matrix1": _rows(p1),
        "matrix2": _rows(p2),
        "oriented_homeomorphic": oriented,
        "unoriented_homeomorphic": solman.unoriented_homeomorphic(p1, p2),
        "commensurable": solman.commensurable(p1, p2),
    }


def cmd_classgroup(args):
    intarith.check_discriminant(args.D)
    G = cache.class_group(args.D)
    return {
        "D": args.D,
        "class_number": G.class_number,
        "classes": [
            {"form": _form(c.canonical), "order": G.order(c), "double": _form(G.double(c).canonical)}
            for c in G
        ],
        "principal_equals_negative": qform.class_of(qform.negate(qform.principal_form(args.D))) == G.identity,
    }


def cmd_genus(args):
    ctx = genus.genus_context(args.D)
    fund = intarith.is_fundamental_discriminant(args.D)
    return {
        "D": args.D,
        "odd_prime_divisors": list(ctx.odd_prime_divisors),
        "two_adic_case": ctx.two_adic_case,
        "minus_one_in_H": genus.minus_one_in_H(args.D),
        "achiral_discriminant": genus.achiral_discriminant(args.D),
        "fundamental": fund,
        "achiral_class": genus.achiral_class(args.D) if fund else None,
    }


def cmd_pell(args):
    sol = intarith.pell(args.D, args.kind)
    return {"D": sol.D, "kind": sol.equation_kind.value, "solvable": sol.solvable, "x": sol.x, "y": sol.y}


def cmd_shimizu(args):
    phi = _matrix(args.matrix)
    table = shimizu.orbit_counts(phi, args.N, args.box)
    out = {
        "matrix": _rows(phi),
        "N": args.N,
        "box_bound": table.box_bound,
        "coefficients": table.coefficients(),
        "zero_upto_N": not any(table.coefficients()),
    }
    if args.s is not None:
        out["l_value"] = shimizu.l_eval(phi, args.s, args.N).__dict__
    out["_csv"] = table.to_csv()
    return out


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_sweep(args):
    if args.max < 5:
        raise DomainError("--max must be at least 5")
    opts = survey.SweepOptions(class_numbers=args.class_numbers, full_pell=args.full_pell, jobs=args.jobs)
    records, report = survey.sweep(args.max, opts)
    if args.no_timing:
        records = [survey.SweepRecord(r.D, r.achiral_class, r.nonorientable, r.class_number, 0) for r in records]
    if args.format == "json":
        _write_text(args.out, survey.records_to_json(records, report))
    else:
        _write_text(args.out, survey.records_to_csv(records))
        if args.report:
            _write_text(args.report, report.to_json())
        if args.format == "human" and args.out not in (None, "-"):
            for k, v in sorted(vars(report).items()):
                print(f"{k}: {v}")
    return None


def _human(obj, indent=0):
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_human(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{pad}{k}:")
            for x in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={b}" for a, b in x.items()))
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def _flat(obj, prefix=""):
    out = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flat(v, key + "."))
        else:
            out[key] = json.dumps(v) if isinstance(v, (list, bool)) or v is None else v
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        flat = _flat(report)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(flat.values())
        return buf.getvalue()
    return "\n".join(_human(report)) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="solchiral", description="Achirality and commensurability of Sol torus bundles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("human", "json", "csv"), default="human")
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "invariants and verdicts for one monodromy")
    sp.add_argument("matrix", nargs="+", help='"a b c d" row-major or a JSON object')
    sp = add("classify", cmd_classify, "compare two monodromies")
    sp.add_argument("matrix1")
    sp.add_argument("matrix2")
    sp = add("classgroup", cmd_classgroup, "class group C(D)")
    sp.add_argument("D", type=int)
    sp = add("genus", cmd_genus, "genus data and achirality tests for D")
    sp.add_argument("D", type=int)
    sp = add("pell", cmd_pell, "least solution of a Pell equation")
    sp.add_argument("D", type=int)
    sp.add_argument("--kind", choices=[k.value for k in intarith.PellKind], default="minus4")
    sp = add("shimizu", cmd_shimizu, "truncated Shimizu L-series coefficients")
    sp.add_argument("matrix", nargs="+")
    sp.add_argument("-N", type=int, default=100)
    sp.add_argument("--s", type=float, default=None, help="also evaluate the partial sum at s > 1")
    sp.add_argument("--box", type=int, default=None, help="override the enumeration box")
    sp = add("sweep", cmd_sweep, "sweep fundamental discriminants below --max")
    sp.set_defaults(format="csv")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--out", default=None, help="output file (default stdout)")
    sp.add_argument("--report", default=None, help="also write the JSON density report here (csv mode)")
    sp.add_argument("--class-numbers", action="store_true")
    sp.add_argument("--full-pell", action="store_true", help="run the Pell test on every D")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-timing", action="store_true", help="zero the timing column")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"solchiral: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = args.func(args)
        if report is not None:
            table = report.pop("_csv", None)
            if args.format == "csv" and table is not None:
                sys.stdout.write(table)
            else:
                sys.stdout.write(render(report, args.format))
    except MatrixParseError as exc:
        print(f"solchiral: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"solchiral: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"solchiral: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
