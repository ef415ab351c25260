"""Command-line interface: ``localdegree <command> [options]``.

Exit codes: 0 success, 1 failed checks or other input errors, 2 parse
error, 3 zero not isolated (or cap exceeded), 4 invalid field,
5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ekl import EKLResult, ekl_class, milnor_form
from .errors import FieldError, InternalInvariantViolation, LocalDegreeError, NotIsolatedError
from .experiments import SurveyConfig, worked_suite, suite_to_json, survey
from .field import Field
from .gw import REAL, classify_string, invariants, witt_decompose
from .localalg import DEFAULT_K_CAP
from .mapfile import MapDocument, MapParseError, parse_field, parse_map_file, render_map
from .poly import PolyMap
from .transforms import compose, recover_unit, reduce_dimension

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_NOT_ISOLATED, EXIT_FIELD, EXIT_INTERNAL = 0, 1, 2, 3, 4, 5


def _num(K: Field, a) -> str:
    return K.format(a)


def _place(v: int) -> str:
    return "inf" if v == REAL else str(v)


def form_report(K: Field, form) -> dict:
    inv = invariants(form)
    wd = witt_decompose(form)
    out_inv = {"rank": inv.rank, "disc": str(inv.disc)}
    if K.is_rational:
        out_inv["signature"] = inv.signature
        out_inv["hasse"] = {_place(v): c for v, c in sorted(inv.hasse.items())}
    return {
        "diagonal": [_num(K, d) for d in form.diagonal],
        "invariants": out_inv,
        "witt_index": wd.witt_index,
        "anisotropic_rank": wd.anisotropic.rank,
        "classification": classify_string(form),
    }


def ekl_report(f: PolyMap, res: EKLResult) -> dict:
    K = f.field
    ring = f.ring
    out = {
        "field": str(K),
        "n": f.n,
        "dimension": res.rank,
        "basis": [ring.format_monomial(m) for m in res.algebra.basis],
        "socle": str(res.socle.poly),
        "gram": [[_num(K, a) for a in row] for row in res.gram.entries],
    }
    out.update(form_report(K, res.form))
    return out


def _print_ekl(report: dict, out):
    print(f"field: {report['field']}   variables: {report['n']}", file=out)
    print(f"dimension: {report['dimension']}", file=out)
    print(f"basis: {', '.join(report['basis'])}", file=out)
    print(f"socle element E: {report['socle']}", file=out)
    print("Gram matrix:", file=out)
    width = max((len(a) for row in report["gram"] for a in row), default=1)
    for row in report["gram"]:
        print("  [" + " ".join(a.rjust(width) for a in row) + "]", file=out)
    _print_form(report, out)


def _print_form(report: dict, out):
    print(f"diagonal form: <{', '.join(report['diagonal'])}>", file=out)
    inv = report["invariants"]
    line = f"invariants: rank {inv['rank']}, disc {inv['disc']}"
    if "signature" in inv:
        hasse = ", ".join(f"{v}:{c:+d}" for v, c in inv["hasse"].items())
        line += f", signature {inv['signature']}, hasse {{{hasse}}}"
    print(line, file=out)
    print(f"witt index: {report['witt_index']}   anisotropic rank: {report['anisotropic_rank']}", file=out)
    print(f"classification: {report['classification']}", file=out)


def _read_doc(path: str | None, field_override: str | None) -> MapDocument:
    text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    doc = parse_map_file(text)
    if field_override:
        K = parse_field(field_override)
        doc = parse_map_file(render_map(K, doc.variables, doc.components))
    return doc


def _emit(args, report: dict, printer):
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        printer(report, sys.stdout)


def cmd_ekl(args) -> int:
    f = _read_doc(args.file, args.field).to_map()
    _emit(args, ekl_report(f, ekl_class(f, args.k_cap)), _print_ekl)
    return EXIT_OK


def cmd_compose(args) -> int:
    f = _read_doc(args.outer, args.field).to_map()
    g = _read_doc(args.inner, args.field).to_map()
    h = compose(f, g)
    report = ekl_report(h, ekl_class(h, args.k_cap))
    report["map"] = str(h)

    def show(r, out):
        print(f"composite map: {r['map']}", file=out)
        _print_ekl(r, out)

    _emit(args, report, show)
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = _read_doc(args.file, args.field).to_map()
    big = ekl_class(f, args.k_cap)
    g = reduce_dimension(f, big.algebra)
    small = ekl_class(g, args.k_cap)
    report = ekl_report(g, small)
    report["map"] = str(g)
    report["units"] = [str(u) for u in recover_unit(big.form, small.form)]
    report["original_classification"] = classify_string(big.form)

    def show(r, out):
        print(f"reduced map: {r['map']}", file=out)
        _print_ekl(r, out)
        print(f"original class {r['original_classification']} = <u> * reduced class for u in {{{', '.join(r['units'])}}}",
              file=out)

    _emit(args, report, show)
    return EXIT_OK


def cmd_milnor(args) -> int:
    doc = _read_doc(args.file, args.field)
    F = doc.single()
    form = milnor_form(F, args.k_cap)
    report = {"field": str(F.field), "n": F.ring.nvars, "polynomial": str(F), "dimension": form.rank}
    report.update(form_report(F.field, form))

    def show(r, out):
        print(f"polynomial: {r['polynomial']}", file=out)
        print(f"Milnor number (rank): {r['dimension']}", file=out)
        _print_form(r, out)

    _emit(args, report, show)
    return EXIT_OK


def cmd_survey(args) -> int:
    K = parse_field(args.field or "F3")
    cfg = SurveyConfig(K, n=args.n, max_degree=args.max_degree, samples=args.samples, seed=args.seed,
                       target_rank=args.target_rank, min_degree=args.min_degree, k_cap=args.k_cap,
                       retries=args.retries)
    rep = survey(cfg)
    if args.json:
        print(rep.to_json())
    else:
        d = rep.to_dict()
        print(f"survey over {K}: n={cfg.n}, degrees {cfg.min_degree}..{cfg.max_degree}, seed {cfg.seed}")
        print(f"accepted {d['accepted']} of {cfg.samples}; rejections {d['rejections']}")
        for N, info in d["ranks"].items():
            print(f"rank {N}: {info['count']} samples, min witt index {info['min_witt_index']}")
            for cls, c in info["classes"].items():
                print(f"    {cls}: {c}")
        if d["staircases"]:
            print(f"rank-5 staircase types: {d['staircases']}")
        print(f"audit: {d['audit']['checked']} instances, {len(d['audit']['violations'])} violations")
    return EXIT_OK if rep.audit.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    results = worked_suite(include_random=not args.quick, include_rank64=args.rank64)
    if args.json:
        print(suite_to_json(results))
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP, help="largest m^K tried (default 64)")
    common.add_argument("--field", help="override the field: Q or F<p>")

    p = argparse.ArgumentParser(prog="localdegree", description="EKL forms of polynomial maps at the origin")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ekl", parents=[common], help="EKL class of a map file")
    s.add_argument("file", nargs="?", help="map file (default: stdin)")
    s.set_defaults(run=cmd_ekl)

    s = sub.add_parser("compose", parents=[common], help="EKL class of outer(inner(x))")
    s.add_argument("outer")
    s.add_argument("inner")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("reduce", parents=[common], help="eliminate one variable")
    s.add_argument("file", nargs="?")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("milnor", parents=[common], help="EKL class of the gradient of one polynomial")
    s.add_argument("file", nargs="?")
    s.set_defaults(run=cmd_milnor)

    s = sub.add_parser("survey", parents=[common], help="random survey over F_p")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--min-degree", type=int, default=1)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--target-rank", type=int)
    s.add_argument("--retries", type=int, default=100)
    s.set_defaults(run=cmd_survey)

    s = sub.add_parser("verify-suite", parents=[common], help="run the worked-example checks")
    s.add_argument("--quick", action="store_true", help="skip the randomized checks")
    s.add_argument("--rank64", action="store_true", help="include the rank-64 iterate")
    s.set_defaults(run=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except FieldError as exc:
        print(f"error: invalid field: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except MapParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotIsolatedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ISOLATED
    except InternalInvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (LocalDegreeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
