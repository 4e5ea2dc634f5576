"""Command-line surface: run computations, emit tables and JSON reports."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import catalog, cdga_slice, fss_engine, hermitian, products
from .complex_model import (
    ComplexModel,
    ModelError,
    parse_form_expr,
    parse_model,
    parse_param_binding,
    emit_model,
)
from .exact_linalg import stats
from .hermitian import MetricError, parse_metric
from .cdga_slice import CDGAError

SCHEMA = "fsslab/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _jobs(args) -> int:
    if getattr(args, "jobs", None):
        return args.jobs
    env = os.environ.get("FSSLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _bindings(args) -> dict:
    out = {}
    for item in getattr(args, "param", None) or []:
        name, value = parse_param_binding(item)
        out[name] = value
    return out


def _load_model(path: str, bindings) -> ComplexModel:
    return parse_model(Path(path).read_text(encoding="utf-8"), bindings)


def _report(args, payload: dict, started: float) -> dict:
    rep = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": payload.pop("inputs", []),
        "params": {k: str(v) for k, v in sorted(_bindings(args).items())}
        if hasattr(args, "param")
        else {},
        "outputs": payload,
        "timing_seconds": round(time.monotonic() - started, 6),
        "arithmetic": {"max_numerator_bits": stats.max_numerator_bits},
    }
    return rep


def _emit(args, report: dict, human_lines) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True, default=str))
    else:
        for line in human_lines:
            print(line)


def _write_csv(path: str, table: fss_engine.PageTable) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("r,p,q,e\n")
        for r, p, q, e in table.rows():
            fh.write(f"{r},{p},{q},{e}\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_pages(args) -> int:
    started = time.monotonic()
    model = _load_model(args.model, _bindings(args))
    rmax = args.rmax if args.rmax else model.n + 1
    human = [f"model {model.name} (n={model.n}), pages 1..{rmax}"]
    if args.bidegree:
        p, q = (int(t) for t in args.bidegree.split(","))
        eng = fss_engine.engine_for(model)
        dims = {r: eng.entry(r, p, q) for r in range(1, rmax + 1)}
        payload = {
            "inputs": [args.model],
            "model": model.name,
            "bidegree": [p, q],
            "entries": {str(r): e for r, e in dims.items()},
        }
        human += [f"  e_{r}^({p},{q}) = {e}" for r, e in dims.items()]
        _emit(args, _report(args, payload, started), human)
        return EXIT_OK
    table = fss_engine.page_dims(model, r_max=rmax, jobs=_jobs(args))
    if args.csv:
        _write_csv(args.csv, table)
    payload = {
        "inputs": [args.model],
        "model": model.name,
        "n": model.n,
        "betti": table.betti,
        "entries": {f"{r},{p},{q}": e for (r, p, q), e in sorted(table.entries.items())},
    }
    for r in range(1, rmax + 1):
        human.append(f"page r={r}  (rows p=0..{model.n}, cols q=0..{model.n})")
        for p in range(model.n + 1):
            human.append("  " + " ".join(f"{table.e(r, p, q):3d}" for q in range(model.n + 1)))
    _emit(args, _report(args, payload, started), human)
    return EXIT_OK


def cmd_betti(args) -> int:
    started = time.monotonic()
    model = _load_model(args.model, _bindings(args))
    betti = model.de_rham_betti()
    payload = {"inputs": [args.model], "model": model.name, "betti": betti}
    _emit(args, _report(args, payload, started),
          [f"model {model.name}: b_k = {betti}"])
    return EXIT_OK


def cmd_check_metric(args) -> int:
    started = time.monotonic()
    model = _load_model(args.model, _bindings(args))
    metric = parse_metric(Path(args.metric).read_text(encoding="utf-8"))
    checks = {}
    if not hermitian.is_positive_definite(metric):
        payload = {"inputs": [args.model, args.metric], "positive_definite": False}
        _emit(args, _report(args, payload, started),
              ["metric is not positive definite"])
        return EXIT_CHECK_FAILED
    checks["positive_definite"] = True
    requested = False
    if args.balanced:
        requested = True
        checks["balanced"] = hermitian.is_balanced(model, metric)
    if args.skt:
        requested = True
        checks["skt"] = hermitian.is_skt(model, metric)
    if args.gauduchon is not None:
        requested = True
        checks[f"gauduchon_{args.gauduchon}"] = hermitian.is_kth_gauduchon(
            model, metric, args.gauduchon
        )
    if args.standard:
        requested = True
        checks["standard"] = hermitian.is_standard(model, metric)
    if args.c1:
        requested = True
        checks["c1"] = hermitian.c1_constant(model, metric)
    if not requested:
        raise ModelError("no check requested; pass --balanced/--skt/--gauduchon K/--standard/--c1")
    payload = {"inputs": [args.model, args.metric], "model": model.name,
               "metric": metric.name, "checks": {k: str(v) for k, v in checks.items()}}
    human = [f"model {model.name}, metric {metric.name}"]
    human += [f"  {k}: {v}" for k, v in checks.items()]
    _emit(args, _report(args, payload, started), human)
    failed = any(v is False for v in checks.values())
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_class(args) -> int:
    started = time.monotonic()
    model = _load_model(args.model, _bindings(args))
    form = parse_form_expr(model.n, args.form, _bindings(args))
    p, q = (int(t) for t in args.bidegree.split(","))
    in_x, in_y = fss_engine.class_membership(model, form, args.page, p, q)
    payload = {
        "inputs": [args.model],
        "model": model.name,
        "form": repr(form),
        "page": args.page,
        "bidegree": [p, q],
        "in_X": in_x,
        "in_Y": in_y,
    }
    _emit(args, _report(args, payload, started),
          [f"form {form!r} at r={args.page}, (p,q)=({p},{q}): in_X={in_x} in_Y={in_y}"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    started = time.monotonic()
    if args.catalog_action == "list":
        names = [
            f"{name}: {catalog.CATALOG[name][0]}" for name in catalog.catalog_names()
        ]
        payload = {"inputs": [], "models": catalog.catalog_names()}
        _emit(args, _report(args, payload, started), names)
        return EXIT_OK
    model = catalog.catalog_build(args.name, _bindings(args))
    text = emit_model(model)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        human = [f"wrote {args.output}"]
    else:
        human = [text.rstrip("\n")]
    payload = {"inputs": [], "model": model.name, "file": text}
    _emit(args, _report(args, payload, started), human)
    return EXIT_OK


def cmd_product(args) -> int:
    started = time.monotonic()
    bindings = _bindings(args)
    m1 = _load_model(args.model1, bindings)
    m2 = _load_model(args.model2, bindings)
    prod = products.product_model(m1, m2)
    text = emit_model(prod)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        human = [f"wrote {args.output}"]
    else:
        human = [text.rstrip("\n")]
    payload = {"inputs": [args.model1, args.model2], "model": prod.name, "file": text}
    _emit(args, _report(args, payload, started), human)
    return EXIT_OK


def cmd_kunneth(args) -> int:
    started = time.monotonic()
    bindings = _bindings(args)
    m1 = _load_model(args.model1, bindings)
    m2 = _load_model(args.model2, bindings)
    r = args.page
    t1 = fss_engine.page_dims(m1, r_max=r)
    t2 = fss_engine.page_dims(m2, r_max=r)
    conv = products.kunneth_page(t1, t2, r)
    payload = {
        "inputs": [args.model1, args.model2],
        "page": r,
        "entries": {f"{p},{q}": e for (p, q), e in sorted(conv.items()) if e},
    }
    human = [f"Kunneth page r={r} of {m1.name} x {m2.name}:"]
    human += [f"  e^({p},{q}) = {e}" for (p, q), e in sorted(conv.items()) if e]
    _emit(args, _report(args, payload, started), human)
    return EXIT_OK


def cmd_cdga(args) -> int:
    started = time.monotonic()
    if args.cdga_action != "so9-verify":
        raise CDGAError(f"unknown cdga action {args.cdga_action!r}")
    report = cdga_slice.verify_so9_d2()
    payload = {
        "inputs": [],
        "checks": {c.name: {"passed": c.passed, "detail": c.detail} for c in report.checks},
        "all_passed": report.all_passed,
    }
    human = [
        f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in report.checks
    ]
    _emit(args, _report(args, payload, started), human)
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def cmd_tables(args) -> int:
    started = time.monotonic()
    rows = catalog.TABLE1_ROWS if args.table == 1 else catalog.TABLE2_ROWS
    results = []
    ok = True
    for row in rows:
        model = row.model()
        eng = fss_engine.engine_for(model)
        got = tuple(eng.entry(r, 0, 2) for r in (1, 2, 3))
        match = got == row.expected_e02
        ok = ok and match
        results.append((row, got, match))
    payload = {
        "inputs": [],
        "table": args.table,
        "rows": [
            {
                "label": row.label,
                "nla": row.nla,
                "expected": list(row.expected_e02),
                "computed": list(got),
                "match": match,
            }
            for row, got, match in results
        ],
        "all_match": ok,
    }
    human = [f"table {args.table} reproduction:"]
    for row, got, match in results:
        human.append(
            f"  [{'PASS' if match else 'FAIL'}] {row.label:32s} expected {row.expected_e02} got {got}"
        )
    human.append("all rows matched" if ok else "MISMATCH")
    _emit(args, _report(args, payload, started), human)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_param(sp):
    sp.add_argument("--param", action="append", metavar="name=p/q",
                    help="bind a model parameter to an exact rational")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fsslab",
        description="Exact spectral-sequence pages and Hermitian metric checks "
                    "for invariant complex structures",
    )
    ap.add_argument("--json", action="store_true", help="machine-readable report")
    ap.add_argument("--jobs", type=int, default=None,
                    help="worker pool size (default: FSSLAB_THREADS or CPU count)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pages", help="page table e_r^{p,q} of a model file")
    sp.add_argument("model")
    sp.add_argument("--rmax", type=int, default=None)
    sp.add_argument("--bidegree", metavar="p,q", default=None)
    sp.add_argument("--csv", metavar="PATH", default=None)
    _add_param(sp)
    sp.set_defaults(func=cmd_pages)

    sp = sub.add_parser("betti", help="Betti numbers of the underlying algebra")
    sp.add_argument("model")
    _add_param(sp)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("check-metric", help="special-metric predicates")
    sp.add_argument("model")
    sp.add_argument("metric")
    sp.add_argument("--balanced", action="store_true")
    sp.add_argument("--skt", action="store_true")
    sp.add_argument("--gauduchon", type=int, metavar="K", default=None)
    sp.add_argument("--standard", action="store_true")
    sp.add_argument("--c1", action="store_true")
    _add_param(sp)
    sp.set_defaults(func=cmd_check_metric)

    sp = sub.add_parser("class", help="zig-zag membership of a form")
    sp.add_argument("model")
    sp.add_argument("form", help="form expression, e.g. '(0,1) w[-1,-2] + (-1,0) w[-2,-4]'")
    sp.add_argument("--page", type=int, required=True)
    sp.add_argument("--bidegree", metavar="p,q", required=True)
    _add_param(sp)
    sp.set_defaults(func=cmd_class)

    sp = sub.add_parser("catalog", help="list or emit built-in models")
    sub2 = sp.add_subparsers(dest="catalog_action", required=True)
    spl = sub2.add_parser("list")
    spl.set_defaults(func=cmd_catalog)
    spe = sub2.add_parser("emit")
    spe.add_argument("name")
    spe.add_argument("-o", "--output", default=None)
    _add_param(spe)
    spe.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("product", help="direct-sum model of two model files")
    sp.add_argument("model1")
    sp.add_argument("model2")
    sp.add_argument("-o", "--output", default=None)
    _add_param(sp)
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("kunneth", help="page convolution of two model files")
    sp.add_argument("model1")
    sp.add_argument("model2")
    sp.add_argument("--page", type=int, required=True)
    _add_param(sp)
    sp.set_defaults(func=cmd_kunneth)

    sp = sub.add_parser("cdga", help="graded-commutative slice checks")
    sp.add_argument("cdga_action", choices=["so9-verify"])
    sp.set_defaults(func=cmd_cdga)

    sp = sub.add_parser("tables", help="reproduce the embedded expected tables")
    sp.add_argument("tables_action", choices=["reproduce"])
    sp.add_argument("table", type=int, choices=[1, 2])
    sp.set_defaults(func=cmd_tables)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    stats.reset()
    try:
        return args.func(args)
    except (ModelError, MetricError, CDGAError, FileNotFoundError, KeyError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
