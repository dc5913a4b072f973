"""
Command-line interface.

Every command prints one JSON object (``verify`` can also emit CSV). Integers
in results are decimal strings so that nothing is ever rounded through floats.

Exit status: 0 on success, 1 when ``verify`` finds a disagreement, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import classes, genfunc, oracle, trees
from .classes import ClassId, canonical_class, format_pattern_set, parse_pattern_set
from .compositions import parse_composition
from .perm import format_perm, parse_perm

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _record(command: str, params: dict, result, **extra) -> dict:
    return {"command": command, "parameters": params, "result": result, **extra}


def _canonical_info(patterns) -> dict:
    cid, word = canonical_class(patterns)
    return {"class": cid.value, "word": "".join(word)}


def _stringify(obj):
    # every integer leaves as a decimal string; bools and floats stay as they are
    if isinstance(obj, bool) or not isinstance(obj, (int, dict, list, tuple)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    return [_stringify(v) for v in obj]


def _str_ints(values) -> list[str]:
    return [str(v) for v in values]


def _parse_pattern(text: str) -> tuple[int, ...]:
    p = parse_perm(text)
    if len(p) != 3:
        raise UsageError(f"pattern {text!r} is not of length 3")
    return p


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


def cmd_enumerate(args) -> tuple[dict, int]:
    patterns = parse_pattern_set(args.avoid)
    if args.method == "structural":
        perms = list(classes.generate(patterns, args.n))
    else:
        perms = list(oracle.filter_avoiders(args.n, patterns))
    params = {"n": args.n, "avoid": format_pattern_set(patterns), "method": args.method}
    return _record("enumerate", params, [format_perm(p) for p in perms],
                   count=str(len(perms)), canonical=_canonical_info(patterns)), EXIT_OK


def cmd_count(args) -> tuple[dict, int]:
    patterns = parse_pattern_set(args.avoid)
    q = _parse_pattern(args.pattern)
    value = oracle.count_total(patterns, q, args.n, args.method, shards=args.shards)
    params = {"n": args.n, "avoid": format_pattern_set(patterns),
              "pattern": args.pattern, "method": args.method}
    return _record("count", params, str(value), canonical=_canonical_info(patterns),
                   methods=oracle.methods_for(patterns, q)), EXIT_OK


def _parse_class_list(text: str) -> list:
    keys: list = []
    for chunk in text.split(";"):
        tokens = [t.strip() for t in chunk.split(",") if t.strip()]
        if tokens and all(t in ClassId.__members__ for t in tokens):
            keys.extend(ClassId(t) for t in tokens)
        elif tokens:
            keys.append(parse_pattern_set(chunk))
    return keys


def cmd_verify(args) -> tuple[dict | str, int]:
    keys = _parse_class_list(args.classes) if args.classes else None
    report = oracle.verify_all(
        args.max_n, classes=keys, oracle_max=args.oracle_max,
        structural_max=args.structural_max, shards=args.shards,
    )
    status = EXIT_OK if report.ok else EXIT_FAIL
    for cell in report.failures():
        print(f"FAIL {cell.label}: {cell.values}", file=sys.stderr)
    if args.format == "csv":
        return report.to_csv(), status
    params = {"max_n": args.max_n, "classes": args.classes}
    return _record("verify", params, report.as_dict()), status


def _bijection(args) -> dict:
    name, text, inv = args.name, args.input, args.inverse
    if name in ("phi1", "phi2", "phi4"):
        fwd = {"phi1": classes.phi1, "phi2": classes.phi2, "phi4": classes.phi4}[name]
        bwd = {"phi1": classes.phi1_inv, "phi2": classes.phi2_inv, "phi4": classes.phi4_inv}[name]
        if inv:
            return {"composition": "+".join(map(str, bwd(parse_perm(text))))}
        return {"permutation": format_perm(fwd(parse_composition(text)))}
    if name == "phi5":
        if inv:
            k, m = classes.phi5_inv(parse_perm(text))
            return {"k": str(k), "m": str(m)}
        if args.n is None:
            raise UsageError("phi5 needs --n")
        k, m = _parse_ints(text)
        return {"permutation": format_perm(classes.phi5(k, m, args.n))}
    if name == "psi1":
        if inv:
            return {"word": "".join(map(str, classes.psi1_inv(parse_perm(text))))}
        if set(text) - {"0", "1"}:
            raise UsageError("psi1 input must be a 0/1 word")
        return {"permutation": format_perm(classes.psi1([int(b) for b in text]))}
    if args.occ is None:
        raise UsageError(f"{name} needs --occ")
    sigma, occ = parse_perm(text), _parse_ints(args.occ)
    if name in ("rho", "varrho"):
        q = {("rho", False): (2, 1, 3), ("rho", True): (1, 2, 3),
             ("varrho", False): (2, 3, 1), ("varrho", True): (1, 2, 3)}[(name, inv)]
        fn = {("rho", False): trees.rho, ("rho", True): trees.rho_inv,
              ("varrho", False): trees.varrho, ("varrho", True): trees.varrho_inv}[(name, inv)]
        t = trees.tree_of(sigma)
        t2, colors = fn(t, trees.occurrence_vertices(t, occ, q))
        out_perm, out_occ = trees.colored_key(t2, colors)
        out = {"permutation": format_perm(out_perm), "occurrence": _str_ints(out_occ)}
        if args.dot:
            out["dot"] = trees.to_dot(t2, colors)
        return out
    if name == "swap":
        if not (args.class_id and args.q_from and args.q_to):
            raise UsageError("swap needs --class, --from and --to")
        new, new_occ = classes.structural_swap(
            args.class_id, sigma, occ, _parse_pattern(args.q_from), _parse_pattern(args.q_to))
        return {"permutation": format_perm(new), "occurrence": _str_ints(new_occ)}
    raise UsageError(f"unknown bijection {name!r}")


def cmd_bijection(args) -> tuple[dict, int]:
    params = {"name": args.name, "input": args.input, "inverse": args.inverse}
    for extra in ("n", "occ", "class_id", "q_from", "q_to"):
        if getattr(args, extra) is not None:
            params[extra] = str(getattr(args, extra))
    return _record("bijection", params, _bijection(args)), EXIT_OK


def cmd_gf(args) -> tuple[dict, int]:
    if args.name == "custom":
        if args.num is None or args.den is None:
            raise UsageError("custom series need --num and --den")
        gf = genfunc.RationalGF(genfunc.parse_poly(args.num), genfunc.parse_poly(args.den))
    else:
        gf = genfunc.NAMED_GFS[args.name]
    coeffs = genfunc.gf_coefficients(gf, args.terms)
    params = {"name": args.name, "terms": args.terms,
              "num": ",".join(map(str, gf.numerator)), "den": ",".join(map(str, gf.denominator))}
    return _record("gf", params, _str_ints(coeffs)), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patterncount",
        description="Exact pattern counts on permutations avoiding sets of length-3 patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list S_n(R)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", required=True, help="comma-separated patterns, e.g. 123,132")
    p.add_argument("--method", choices=("structural", "filter"), default="structural")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="total occurrences of a pattern over S_n(R)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--method", choices=oracle.METHODS, default="formula")
    p.add_argument("--shards", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="cross-check every method on every class")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--classes", help="class ids (D1,T3) or pattern sets separated by ';'")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--oracle-max", type=int)
    p.add_argument("--structural-max", type=int)
    p.add_argument("--shards", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", help="apply one of the bijections")
    p.add_argument("--name", required=True,
                   choices=("phi1", "phi2", "phi4", "phi5", "psi1", "rho", "varrho", "swap"))
    p.add_argument("--input", required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--occ", help="1-based positions of the colored occurrence")
    p.add_argument("--class", dest="class_id", choices=("T2", "T3", "T4"))
    p.add_argument("--from", dest="q_from")
    p.add_argument("--to", dest="q_to")
    p.add_argument("--dot", action="store_true", help="include Graphviz source of the output tree")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("gf", help="expand a rational generating function")
    p.add_argument("--name", required=True, choices=(*genfunc.NAMED_GFS, "custom"))
    p.add_argument("--num", help="numerator coefficients, ascending, comma-separated")
    p.add_argument("--den", help="denominator coefficients, ascending, comma-separated")
    p.add_argument("--terms", type=int, required=True)
    p.set_defaults(func=cmd_gf)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "n", None) is not None and args.n < 1:
        print("error: --n must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload, status = args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(payload if isinstance(payload, str) else json.dumps(_stringify(payload), indent=2))
    return status


run = main


if __name__ == "__main__":
    sys.exit(main())
