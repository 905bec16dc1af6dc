"""Command-line front end: every module surface as a subcommand.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage error.  Rational numbers serialise as
"p/q" strings; identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cases as cases_mod
from . import modcurve, orbifold, qseries
from .cartan import parse_kind
from .kacaut import admits_fixed_subalgebra, enumerate_classes, inner_from_coweight
from .liealg import build_root_system


def _frac_str(x):
    """Integers stay JSON numbers; proper fractions become 'p/q' strings."""
    x = Fraction(x)
    return str(x) if x.denominator > 1 else int(x)


def _emit(payload, fmt: str, table_rows=None, headers=None):
    if fmt == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    elif fmt == "csv":
        rows = table_rows or []
        print(",".join(headers or []))
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        if table_rows is None:
            print(json.dumps(payload, indent=1, sort_keys=True))
            return
        widths = [max(len(str(h)), *(len(str(r[i])) for r in table_rows)) if table_rows else len(str(h))
                  for i, h in enumerate(headers)]
        print("  ".join(str(h).ljust(w) for h, w in zip(headers, widths)))
        for row in table_rows:
            print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))


def cmd_coeffs(args) -> int:
    try:
        coeffs = orbifold.c_coefficients(args.n)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2
    payload = {str(d): _frac_str(c) for d, c in sorted(coeffs.items())}
    _emit(payload, args.format, [(d, _frac_str(c)) for d, c in sorted(coeffs.items())],
          ["d", "c_d"])
    return 0


def cmd_dcoeff(args) -> int:
    try:
        value = orbifold.d_coefficient(args.n, args.i, args.j, args.k)
    except (ValueError, KeyError) as err:
        print(str(err), file=sys.stderr)
        return 2
    print(value)
    return 0


def cmd_cusps(args) -> int:
    if args.n < 1:
        print("n must be positive", file=sys.stderr)
        return 2
    reps = modcurve.cusp_classes(args.n)
    rows = [(c.label(), c.width) for c in reps]
    payload = [{"cusp": c.label(), "width": c.width} for c in reps]
    _emit(payload, args.format, rows, ["cusp", "width"])
    return 0


def cmd_hauptmodul(args) -> int:
    try:
        t = modcurve.hauptmodul(args.n)
        series = qseries.etaq_expand(t, Fraction(args.prec))
    except (NotImplementedError, ValueError) as err:
        print(str(err), file=sys.stderr)
        return 2
    print(f"t_{args.n} = eta quotient {t.label()}")
    print(series.to_text())
    return 0


def cmd_fs(args) -> int:
    try:
        a_str, c_str = args.cusp.split("/")
        cusp = modcurve.find_cusp(args.n, int(a_str), int(c_str))
        f = modcurve.cusp_function(args.n, cusp)
    except (NotImplementedError, ValueError) as err:
        print(str(err), file=sys.stderr)
        return 2
    print(f"f_{cusp.label()} = eta quotient {f.quotient.label()}")
    if args.divisor:
        rows = [(s.label(), s.width, _frac_str(modcurve.divisor_order(f.quotient, s)))
                for s in modcurve.cusp_classes(args.n)]
        _emit([{"cusp": a, "width": b, "order": c} for a, b, c in rows],
              args.format, rows, ["cusp", "width", "order"])
    else:
        series = qseries.etaq_expand(f.quotient, Fraction(args.prec))
        print(series.to_text())
    return 0


def cmd_eta(args) -> int:
    try:
        f = qseries.parse_eta_quotient(args.quotient)
        series = qseries.etaq_expand(f, Fraction(args.prec))
    except (ValueError, ZeroDivisionError) as err:
        print(str(err), file=sys.stderr)
        return 2
    print(series.to_text())
    return 0


def cmd_kac(args) -> int:
    try:
        kind = parse_kind(args.algebra)
        classes = enumerate_classes(kind, args.order)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2
    for cls in classes:
        print(cls.label())
    return 0


def cmd_inner(args) -> int:
    try:
        kind = parse_kind(args.algebra)
        rs = build_root_system(kind)
        h = tuple(Fraction(x) for x in args.h.split(","))
        if len(h) != rs.rank:
            raise ValueError(f"need {rs.rank} coordinates for {args.algebra}")
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2
    order, (comps, ab), dim = inner_from_coweight(rs, h)
    fixed = " ".join(f"{k[0]}{k[1]}" for k in comps) or "-"
    if ab:
        fixed += f" C^{ab}"
    print(f"order={order}; fixed={fixed}; dim={dim}")
    return 0


def cmd_screen(args) -> int:
    try:
        case = next(c for c in cases_mod.load_cases() if c.id == args.case)
    except StopIteration:
        print(f"no case with id {args.case}", file=sys.stderr)
        return 2
    reps = cases_mod.representative_for_power(case, args.i)
    cap = args.rho_cap if args.rho_cap is not None else orbifold.safe_rho_cap(
        case.source, reps, floor=Fraction(args.floor))
    found = orbifold.screen_problematic_modules(case.source, reps,
                                                floor=Fraction(args.floor), rho_cap=cap)
    payload = [{"weights": orbifold.render_weight_tuple(lams),
                "rho": _frac_str(rho), "twisted": _frac_str(tw)}
               for lams, rho, tw in found]
    _emit(payload, args.format,
          [(p["weights"], p["rho"], p["twisted"]) for p in payload],
          ["weights", "rho(M)", "rho(M^h)"])
    return 0


def cmd_case_run(args) -> int:
    all_cases = cases_mod.load_cases()
    table = cases_mod.load_schellekens()
    if args.id == "--all" or args.all:
        selected = all_cases
    else:
        selected = [c for c in all_cases if c.id == args.id]
        if not selected:
            print(f"no case with id {args.id}", file=sys.stderr)
            return 2
    reports = [cases_mod.verify_case(c, table) for c in selected]
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=1, sort_keys=True))
    else:
        for case, report in zip(selected, reports):
            print(f"case {case.id}: V1 = {case.source.label()}, n = {case.n}, "
                  f"d = {case.expected_d} ... {'PASS' if report.passed else 'FAIL'}")
            for step in report.steps:
                mark = "ok" if step.passed else "FAIL"
                suffix = f" [{step.provenance}]" if step.provenance != "computed" else ""
                print(f"  {mark:4} {step.name}{suffix}")
                if not step.passed:
                    print(f"       expected {step.expected}, got {step.actual}")
    return 0 if all(r.passed for r in reports) else 1


def _parse_fixed_spec(spec: str):
    comps = []
    abelian = 0
    for chunk in spec.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk.lower().startswith("ab:"):
            abelian += int(chunk[3:])
        else:
            comps.append(parse_kind(chunk))
    return comps, abelian


def cmd_schellekens_scan(args) -> int:
    table = cases_mod.load_schellekens()
    try:
        comps, abelian = _parse_fixed_spec(args.fixed)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2
    survivors = []
    for entry in table:
        if entry.dim != args.dim:
            continue
        found, _ = admits_fixed_subalgebra(entry.structure.kinds(), comps, abelian, args.order)
        if found:
            survivors.append(entry)
    payload = [{"no": e.no, "structure": e.label(), "dim": e.dim} for e in survivors]
    _emit(payload, args.format, [(e.no, e.label(), e.dim) for e in survivors],
          ["no", "structure", "dim"])
    return 0


GOLDEN_FILES = ("coefficient_table.json", "d_tables.json", "case_summary.json",
                "fixed_ranks.json", "screening_lists.json")


def regenerate_tables():
    """Recompute the five machine-readable reference tables."""
    out = {}
    out["coefficient_table.json"] = {
        str(n): {str(d): _frac_str(c) for d, c in sorted(orbifold.c_coefficients(n).items())}
        for n in sorted(modcurve.GENUS_ZERO_LEVELS)
    }
    dtables = {}
    for n in sorted(modcurve.GENUS_ZERO_LEVELS - {1}):
        dtables[str(n)] = {f"{i},{j},{k}": v
                           for (i, j, k), v in sorted(orbifold.all_tabulated_triples(n).items())}
    out["d_tables.json"] = dtables
    all_cases = cases_mod.load_cases()
    table = cases_mod.load_schellekens()
    rows = []
    ranks = []
    screening = {}
    for case in all_cases:
        profile = cases_mod.fixed_dims_profile(case)
        d_val = orbifold.dim_orbifold(profile)
        rows.append({
            "case": case.id, "V1": case.source.label(), "n": case.n,
            "fixed": case.fixed_label(), "hNormSq": _frac_str(case.h_norm_sq),
            "d": int(d_val), "orbifold": case.target.label(),
        })
        for record in case.shapes:
            ranks.append({
                "case": case.id, "variant": record.variant or case.id,
                "shape": record.shape.label(), "fixedRank": record.shape.fixed_rank(),
                "vacuumWeight": _frac_str(orbifold.vacuum_anomaly(record.shape)),
            })
        if case.id in ("11", "15"):
            found = orbifold.screen_problematic_modules(
                case.source, case.h, floor=1,
                rho_cap=orbifold.safe_rho_cap(case.source, case.h))
            screening[case.id] = [
                {"weights": orbifold.render_weight_tuple(lams),
                 "rho": _frac_str(rho), "twisted": _frac_str(tw)}
                for lams, rho, tw in found]
    out["case_summary.json"] = rows
    out["fixed_ranks.json"] = ranks
    out["screening_lists.json"] = screening
    return out


def cmd_tables_regen(args) -> int:
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        print(f"cannot create output directory: {err}", file=sys.stderr)
        return 1
    tables = regenerate_tables()
    manifest = {}
    diffs = []
    from importlib import resources
    for name in GOLDEN_FILES:
        text = json.dumps(tables[name], indent=1, sort_keys=True) + "\n"
        try:
            (out_dir / name).write_text(text)
        except OSError as err:
            print(f"cannot write {name}: {err}", file=sys.stderr)
            return 1
        manifest[name] = hashlib.sha256(text.encode()).hexdigest()
        golden_path = resources.files("orbdim.data").joinpath("goldens").joinpath(name)
        try:
            golden = golden_path.read_text()
        except FileNotFoundError:
            diffs.append(f"{name}: no golden file")
            continue
        if golden != text:
            diffs.append(f"{name}: regenerated output differs from the golden file")
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    if diffs:
        for d in diffs:
            print(d, file=sys.stderr)
        return 1
    print(f"wrote {len(GOLDEN_FILES)} tables + manifest to {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbdim",
                                     description="exact genus-zero orbifold dimension toolkit")
    sub = parser.add_subparsers(dest="command")

    def add_format(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("coeffs", help="closed-form orbifold dimension coefficients")
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("dcoeff", help="low-order correction coefficient d_{i,j,k}")
    for flag in ("--n", "--i", "--j", "--k"):
        p.add_argument(flag, type=int, required=True)
    p.set_defaults(func=cmd_dcoeff)

    p = sub.add_parser("cusps", help="cusp classes and widths of Gamma0(n)")
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_cusps)

    p = sub.add_parser("hauptmodul", help="eta-quotient Hauptmodul expansion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prec", default="10")
    p.set_defaults(func=cmd_hauptmodul)

    p = sub.add_parser("fs", help="distinguished cusp function f_s")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cusp", required=True, help="a/c")
    p.add_argument("--divisor", action="store_true", help="print the full divisor instead")
    p.add_argument("--prec", default="6")
    add_format(p)
    p.set_defaults(func=cmd_fs)

    p = sub.add_parser("eta", help="expand an eta quotient")
    p.add_argument("--quotient", required=True, help="comma-separated d:r factors")
    p.add_argument("--prec", default="6")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("kac", help="order-n automorphism classes of a simple algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_kac)

    p = sub.add_parser("inner", help="order and fixed points of an inner automorphism")
    p.add_argument("--algebra", required=True)
    p.add_argument("--h", required=True, help="comma-separated fundamental-coweight coords")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("screen", help="problematic modules of a case")
    p.add_argument("--case", required=True)
    p.add_argument("--i", type=int, default=1, help="power of the automorphism")
    p.add_argument("--floor", default="1")
    p.add_argument("--rho-cap", type=int, default=None, dest="rho_cap")
    add_format(p)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("case", help="run the verification pipeline")
    case_sub = p.add_subparsers(dest="case_command")
    run = case_sub.add_parser("run")
    run.add_argument("id", nargs="?", default="--all")
    run.add_argument("--all", action="store_true")
    add_format(run)
    run.set_defaults(func=cmd_case_run)

    p = sub.add_parser("schellekens", help="scan the weight-one structure table")
    sch_sub = p.add_subparsers(dest="sch_command")
    scan = sch_sub.add_parser("scan")
    scan.add_argument("--dim", type=int, required=True)
    scan.add_argument("--fixed", required=True,
                      help="components joined by '+', abelian rank as ab:r; e.g. A5+C5+D5+ab:1")
    scan.add_argument("--order", type=int, required=True)
    add_format(scan)
    scan.set_defaults(func=cmd_schellekens_scan)

    p = sub.add_parser("tables", help="regenerate the machine-readable reference tables")
    tab_sub = p.add_subparsers(dest="tables_command")
    regen = tab_sub.add_parser("regen")
    regen.add_argument("--out", required=True)
    regen.set_defaults(func=cmd_tables_regen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = getattr(args, "func", None)
    if func is None:
        parser.print_usage(sys.stderr)
        return 2
    return func(args)


if __name__ == "__main__":
    sys.exit(main())
