"""Command line entry point: ``frobsesh <command> --input FILE ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import cartier, jetoracle, seshadri, svg
from .catalog import CATALOG
from .io import FanInvalid, InputSpec, ParseError, SchemaError, parse_input, to_jsonable
from .scan import ScanConfig, format_report, run_scan
from .toric import (
    adjoint_divisor,
    ampleness_witness,
    chart_at,
    is_ample,
    is_gg_at,
    is_globally_generated,
    is_nef,
    polytope_of,
    validate_fan,
)


class NotAmple(ValueError):
    pass


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(to_jsonable(payload), indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _load(args, validate: bool = True) -> InputSpec:
    if not args.input:
        raise SchemaError("--input FILE is required")
    spec = parse_input(Path(args.input).read_text(encoding="utf-8"), validate=validate)
    over = {}
    for flag, key in [("p", "p"), ("m_max", "m_max"), ("e_cap", "e_cap"), ("cone", "cone"), ("seed", "seed")]:
        v = getattr(args, flag, None)
        if v is not None:
            over[key] = v
    if over:
        if "p" in over and not seshadri.is_prime(over["p"]):
            raise SchemaError(f"p: p must be prime, got {over['p']}")
        spec = replace(spec, **over)
    return spec


def _cones(spec: InputSpec) -> list[int]:
    return [spec.cone] if spec.cone is not None else list(range(len(spec.max_cones)))


def _require_ample(spec: InputSpec):
    d = spec.toric_divisor()
    witness = ampleness_witness(d)
    if witness is not None:
        raise NotAmple(f"divisor is not ample: {witness}")
    return d


def cmd_validate(args) -> int:
    spec = _load(args, validate=False)
    diag = validate_fan(spec.fan)
    text = f"smooth: {diag.smooth}\ncomplete: {diag.complete}\n" + "".join(
        f"  {item}\n" for item in diag.offending_items
    )
    _emit(args, diag, text)
    return 0 if diag.ok else 1


def cmd_polytope(args) -> int:
    spec = _load(args)
    d = spec.toric_divisor()
    poly = polytope_of(d)
    lines = ["inequalities (<u, v> >= -a):"]
    lines += [f"  {v} >= {-b}" for v, b in zip(poly.normals, poly.bounds)]
    lines.append("vertices:")
    lines += ["  (" + ", ".join(map(str, v)) + ")" for v in poly.vertices]
    lines.append(f"nef: {is_nef(d)}  ample: {is_ample(d)}  globally generated: {is_globally_generated(d)}")
    payload = {"polytope": poly, "nef": is_nef(d), "ample": is_ample(d), "globally_generated": is_globally_generated(d)}
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_seshadri(args) -> int:
    spec = _load(args)
    d = _require_ample(spec)
    reports = [seshadri.report_at(d, k) for k in _cones(spec)]
    lines = []
    for r in reports:
        lines.append(
            f"cone {r.cone_index}: epsilon={r.epsilon} epsilon_F={r.epsilon_frobenius} "
            f"binding classical=ray {r.binding_facet_classical.facet} at {r.binding_facet_classical.vertex} "
            f"frobenius=ray {r.binding_facet_frobenius.facet} at {r.binding_facet_frobenius.vertex}"
        )
    _emit(args, reports, "\n".join(lines))
    return 0


def cmd_jets(args) -> int:
    spec = _load(args)
    d = _require_ample(spec)
    cone = spec.cone or 0
    _, cp = chart_at(d, cone)
    rows = seshadri.ratio_sequence(cp, spec.p, spec.m_max)
    eps_f = seshadri.frobenius_seshadri(cp)
    best = max(rows, key=lambda r: r.ratio)
    lines = ["m s_classical e_frobenius ratio"]
    lines += [f"{r.m} {r.s_classical} {r.e_frobenius} {r.ratio}" for r in rows]
    lines.append(f"sup ratio over m<={spec.m_max}: {best.ratio} (first at m={best.m}); epsilon_F={eps_f}")
    _emit(args, {"cone": cone, "p": spec.p, "epsilon_frobenius": eps_f, "rows": rows}, "\n".join(lines))
    return 0


def cmd_oracle(args) -> int:
    spec = _load(args)
    d = _require_ample(spec)
    points = [int(x) for x in args.points.split(",")] if args.points else [spec.cone or 0]
    sections = jetoracle.enumerate_sections(d, args.m)
    orders = [args.order] if args.order is not None else list(range(1, spec.e_cap + 1))
    results, ranks_q, lines, agree = [], [], [], True
    for order in orders:
        mat = jetoracle.restriction_matrix(d, args.m, points, args.kind, order, spec.p, sections)
        rank = jetoracle.matrix_rank(mat)
        res = jetoracle.JetInstanceResult(
            args.m, order, args.kind, spec.p, tuple(points), mat.nrows, mat.ncols, rank, rank == mat.nrows
        )
        results.append(res)
        # rank over Q is reported next to the F_p rank, never compared
        ranks_q.append(jetoracle.matrix_rank(mat, None))
        if args.dump:
            Path(f"{args.dump}.{order}.txt").write_text(mat.to_triplets(), encoding="utf-8")
        lines.append(
            f"m={res.m} {res.kind} order={order} p={res.p} Z={list(res.points)} "
            f"matrix {res.rows}x{res.cols} rank={res.rank} rank_Q={ranks_q[-1]} surjective={res.surjective}"
        )
    if args.kind == "frobenius" and len(points) == 1:
        _, cp = chart_at(d, points[0])
        closed = seshadri.frobenius_jet_number(cp, args.m, spec.p)
        oracle = max([r.order for r in results if r.surjective], default=0)
        if args.order is None:
            agree = oracle == min(closed, spec.e_cap)
        else:
            agree = results[0].surjective == (closed >= args.order)
        lines.append(f"oracle e={oracle} closed-form e={closed} agree={agree}")
    _emit(args, {"results": results, "rank_q": ranks_q, "agree": agree}, "\n".join(lines))
    return 0 if agree else 1


def cmd_adjoint(args) -> int:
    spec = _load(args)
    d = _require_ample(spec)
    adj = adjoint_divisor(d)
    rows, lines, ok = [], [], True
    for k in _cones(spec):
        eps_f = seshadri.report_at(d, k).epsilon_frobenius
        gg = is_gg_at(adj, k)
        if eps_f > 1 and not gg:
            ok = False
        rows.append({"cone": k, "epsilon_frobenius": eps_f, "adjoint_gg": gg})
        lines.append(f"cone {k}: epsilon_F={eps_f} adjoint gg at point: {gg}")
    summary = {
        "adjoint_coeffs": adj.coeffs,
        "globally_generated": is_globally_generated(adj),
        "very_ample": is_ample(adj),
        "points": rows,
        "criterion_ok": ok,
    }
    lines.insert(0, f"adjoint coefficients: {list(adj.coeffs)}")
    lines.append(f"adjoint globally generated: {summary['globally_generated']}  very ample: {summary['very_ample']}")
    _emit(args, summary, "\n".join(lines))
    return 0 if ok else 1


def cmd_trace(args) -> int:
    form = cartier.parse_form(args.form, args.p, args.n)
    out = cartier.trace_iterate(form, args.e)
    _emit(args, {"input": cartier.format_form(form), "output": cartier.format_form(out)}, cartier.format_form(out))
    return 0


def cmd_scan(args) -> int:
    names = tuple(x for x in args.catalog.split(",") if x) if args.catalog else ()
    cfg = ScanConfig(
        catalog=names,
        count=args.count if names else 0,
        seed=args.seed if args.seed is not None else 0,
        lo=args.lo,
        hi=args.hi,
        oracle_m_max=args.oracle_m_max,
        e_cap=args.e_cap if args.e_cap is not None else 2,
        workers=args.workers,
    )
    report = run_scan(cfg)
    if args.json:
        text = json.dumps(to_jsonable({"rows": report.rows, "summary": report.summary}), indent=2, sort_keys=True) + "\n"
    else:
        text = format_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def cmd_svg(args) -> int:
    spec = _load(args)
    d = _require_ample(spec)
    text = svg.render(d, spec.cone or 0)
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file")
    common.add_argument("--p", type=int, help="prime characteristic (overrides the file)")
    common.add_argument("--m-max", type=int, dest="m_max")
    common.add_argument("--e-cap", type=int, dest="e_cap")
    common.add_argument("--cone", type=int, help="maximal cone index (fixed point)")
    common.add_argument("--seed", type=int)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="frobsesh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the fan is smooth and complete").set_defaults(
        func=cmd_validate
    )
    sub.add_parser("polytope", parents=[common], help="H- and V-representation of P_D").set_defaults(
        func=cmd_polytope
    )
    sub.add_parser("seshadri", parents=[common], help="exact constants at fixed points").set_defaults(
        func=cmd_seshadri
    )
    sub.add_parser("jets", parents=[common], help="jet numbers and ratio table").set_defaults(func=cmd_jets)

    o = sub.add_parser("oracle", parents=[common], help="brute-force separation by rank over F_p")
    o.add_argument("--m", type=int, default=1)
    o.add_argument("--points", help="comma-separated cone indices (default: --cone or 0)")
    o.add_argument("--kind", choices=[k.value for k in jetoracle.QuotientKind], default="frobenius")
    o.add_argument("--order", type=int, help="single e (or l for classical); default 1..e_cap")
    o.add_argument("--dump", help="write sparse triplet files PREFIX.<order>.txt")
    o.set_defaults(func=cmd_oracle)

    sub.add_parser("adjoint", parents=[common], help="global generation of K + D").set_defaults(func=cmd_adjoint)

    t = sub.add_parser("trace", parents=[common], help="apply the trace map to a form")
    t.add_argument("form", help='e.g. "y^3 dy" or "y1^2*y2 dy + 2 dy"')
    t.add_argument("--e", type=int, default=1)
    t.add_argument("--n", type=int, help="number of variables (default: inferred)")
    t.set_defaults(func=cmd_trace, p=2)

    s = sub.add_parser("scan", parents=[common], help="seeded corpus scan")
    s.add_argument("--catalog", default="P2,P1xP1,F1,Bl3P2", help=f"comma list from: hexagon, {', '.join(CATALOG)}")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--lo", type=int, default=0)
    s.add_argument("--hi", type=int, default=3)
    s.add_argument("--oracle-m-max", type=int, default=4, dest="oracle_m_max")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="write the report here instead of stdout")
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("svg", parents=[common], help="draw the inscribed square and triangle")
    v.add_argument("--out", required=True)
    v.set_defaults(func=cmd_svg)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SchemaError, FanInvalid, NotAmple, svg.DimensionUnsupported, jetoracle.SizeLimit) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
