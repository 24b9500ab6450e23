"""Command-line front end.

Commands: ``ap`` (proportion check / equation solve), ``evaluate``
(cross-validated classifier studies), ``explain`` (contrastive
explanations), ``deps`` (dependency analysis of a relation) and
``generate`` (synthetic datasets).  Output goes to stdout as human text
or canonical JSON (sorted keys, two-space indent); diagnostics such as
wall time go to stderr so JSON reruns are byte-identical.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 a no-solution / abstention / unsupported-explanation outcome.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import classify, data, explain, relational
from .core import SchemaError, ap_holds, solve
from .data import DataError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NO_SOLUTION = 3

PROFILES = {
    # Reproduction profiles bundle the published experimental settings.
    "table2": {"strategy": "selected", "folds": 10, "radius": 2,
               "subsample": 0.5, "seed": 7},
    "table3": {"strategy": "bongard", "folds": 10, "seed": 7,
               "grid": "1,3,5,7,9,11"},
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


def _emit(payload: dict, fmt: str, human: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise _UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


# ---------------------------------------------------------------------------
# ap
# ---------------------------------------------------------------------------

def _cmd_ap(args) -> int:
    domain = args.domain.split(",") if args.domain else None
    if args.action == "check":
        if len(args.values) != 4:
            raise _UsageError("ap check needs exactly 4 values")
        a, b, c, d = args.values
        holds = ap_holds(a, b, c, d, domain)
        _emit({"command": "ap-check", "values": args.values, "holds": holds},
              args.format, "true" if holds else "false")
        return EXIT_OK
    if len(args.values) != 3:
        raise _UsageError("ap solve needs exactly 3 values")
    a, b, c = args.values
    x = solve(a, b, c, domain)
    payload = {"command": "ap-solve", "values": args.values, "solution": x}
    if x is None:
        _emit(payload, args.format, "NO-SOLUTION")
        return EXIT_NO_SOLUTION
    _emit(payload, args.format, x)
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def _apply_profile(args) -> None:
    if not args.profile:
        return
    if args.profile not in PROFILES:
        raise _UsageError(f"unknown profile {args.profile!r}; "
                          f"available: {sorted(PROFILES)}")
    for key, value in PROFILES[args.profile].items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _cmd_evaluate(args) -> int:
    _apply_profile(args)
    if args.seed is None:
        raise _UsageError("evaluate is seeded; pass --seed (or a profile that sets it)")
    if args.strategy is None:
        args.strategy = "baseline"
    try:  # config problems are usage errors, found before any work starts
        config = classify.CvConfig(
            strategy=args.strategy,
            folds=args.folds if args.folds is not None else 10,
            seed=args.seed,
            radius=args.radius if args.radius is not None else 2,
            neighbor_budget=args.neighbor_budget or 1,
            max_literals=args.max_literals or 2,
            k=args.k or 1,
            min_support=args.min_support if args.min_support is not None else 2,
            min_confidence=(args.min_confidence
                            if args.min_confidence is not None else 0.9),
            subsample=args.subsample,
            fallback=args.fallback or "knn1",
            workers=args.workers or 1,
        )
    except DataError as exc:
        raise _UsageError(str(exc)) from exc
    if args.grid and config.strategy not in ("bongard", "knn"):
        raise _UsageError("--grid applies to the bongard and knn strategies")
    dataset = data.load_dataset(args.data, delimiter=args.delimiter,
                                class_column=args.class_column,
                                schema_file=args.schema)
    started = time.perf_counter()
    payload: dict = {"command": "evaluate", "data": str(args.data)}
    if args.grid:
        grid = _parse_int_list(args.grid)
        best, reports = classify.cross_validate_grid(dataset, config, grid)
        payload["grid"] = grid
        payload["grid_parameter"] = ("neighbor_budget"
                                     if config.strategy == "bongard" else "k")
        payload["reports"] = [r.canonical() for r in reports]
        payload["best"] = best.canonical()
        headline = best
    else:
        report = classify.cross_validate(dataset, config)
        payload["report"] = report.canonical()
        headline = report
    elapsed = time.perf_counter() - started
    print(f"[evaluate] {args.data}: strategy={config.strategy} "
          f"wall_time={elapsed:.2f}s", file=sys.stderr)
    human = (f"{config.strategy} on {args.data}: "
             f"{headline.mean_accuracy:.2f} +/- {headline.std_accuracy:.2f} "
             f"({config.folds}-fold, seed {config.seed}, "
             f"abstention {100 * headline.abstention_rate:.2f}%)")
    if args.grid:
        param = payload["grid_parameter"]
        value = (headline.config.neighbor_budget
                 if param == "neighbor_budget" else headline.config.k)
        human += f" [best {param}={value} of grid {payload['grid']}]"
    _emit(payload, args.format, human)
    return EXIT_OK


# ---------------------------------------------------------------------------
# explain
# ---------------------------------------------------------------------------

def _parse_query(rel: data.Relation, args) -> tuple[str, ...]:
    if (args.query is None) == (args.query_index is None):
        raise _UsageError("pass exactly one of --query or --query-index")
    if args.query_index is not None:
        if not 0 <= args.query_index < len(rel):
            raise DataError(f"query index {args.query_index} out of range "
                            f"[0, {len(rel) - 1}]")
        return rel.tuples[args.query_index]
    row = tuple(v.strip() for v in args.query.split(","))
    rel.schema.validate_item(row)
    return row


def _adverse_payload(rel: data.Relation, ae: explain.AdverseExample) -> dict:
    names = rel.schema.names
    return {
        "row_index": ae.row_index,
        "row": list(ae.row),
        "change": [
            {"attribute": names[j], "adverse_value": fr, "query_value": to}
            for j, fr, to in ae.change
        ],
    }


def _cmd_explain(args) -> int:
    rel = data.load_relation(args.data, delimiter=args.delimiter,
                             schema_file=args.schema)
    if rel.duplicates_dropped:
        print(f"[explain] dropped {rel.duplicates_dropped} duplicate rows",
              file=sys.stderr)
    query = _parse_query(rel, args)
    if (args.why is None) == (args.why_not is None):
        raise _UsageError("pass exactly one of --why or --why-not")
    if args.why is not None:
        result_attr, question, target = args.why, "why", None
    else:
        if "=" not in args.why_not:
            raise _UsageError("--why-not takes ATTRIBUTE=VALUE")
        result_attr, target = args.why_not.split("=", 1)
        question = "why-not"
    exp = explain.contrastive_explain(rel, query, result_attr,
                                      question=question, target=target)
    payload = {
        "command": "explain",
        "data": str(args.data),
        "question": exp.question,
        "result_attribute": exp.result_attribute,
        "target": exp.target,
        "actual": exp.actual,
        "supported": exp.supported,
        "adverse_example": (_adverse_payload(rel, exp.adverse)
                            if exp.adverse else None),
        "alternatives": [_adverse_payload(rel, ae) for ae in exp.alternatives],
        "change_attributes": ([
            rel.schema.names[j] for j, _, _ in exp.adverse.change
        ] if exp.adverse else []),
        "supporting_pairs": exp.supporting_pairs,
        "exception_pairs": exp.exception_pairs,
        "strength": exp.strength,
        "sentence": exp.sentence,
    }
    _emit(payload, args.format, exp.sentence)
    return EXIT_OK if exp.supported else EXIT_NO_SOLUTION


# ---------------------------------------------------------------------------
# deps
# ---------------------------------------------------------------------------

def _witness_payload(witness) -> Optional[list]:
    if witness is None:
        return None
    return [list(t) for t in witness]


def _cmd_deps(args) -> int:
    rel = data.load_relation(args.data, delimiter=args.delimiter,
                             schema_file=args.schema)
    if rel.duplicates_dropped:
        print(f"[deps] dropped {rel.duplicates_dropped} duplicate rows",
              file=sys.stderr)
    payload: dict = {
        "command": "deps",
        "data": str(args.data),
        "attributes": list(rel.schema.names),
        "rows": len(rel),
        "mode": args.mode,
    }
    if args.mode == "single":
        if not args.x or not args.y:
            raise _UsageError("single mode needs --x and --y attribute lists")
        x = tuple(args.x.split(","))
        y = tuple(args.y.split(","))
        mvd_w = relational.mvd_witness(rel, x, y)
        weak_w = relational.weak_mvd_witness(rel, x, y)
        finding = {
            "x": sorted(x, key=rel.schema.index),
            "y": sorted(y, key=rel.schema.index),
            "fd": relational.fd_holds(rel, x, y),
            "mvd": mvd_w is None,
            "weak_mvd": weak_w is None,
            "trivial": relational.is_trivial_mvd(rel.schema, x, y),
            "lossless_join": relational.lossless_join_check(rel, x, y),
            "mvd_witness": _witness_payload(mvd_w),
            "weak_mvd_witness": _witness_payload(weak_w),
            "ap_witness": _witness_payload(
                relational.ap_witness(rel, tuple(x), tuple(y))
                if mvd_w is None else None
            ),
        }
        payload["finding"] = finding
        human_lines = [
            f"X={','.join(finding['x'])} Y={','.join(finding['y'])}: "
            f"FD={finding['fd']} MVD={finding['mvd']} "
            f"weak-MVD={finding['weak_mvd']} trivial={finding['trivial']} "
            f"lossless-join={finding['lossless_join']}"
        ]
        if mvd_w is not None:
            human_lines.append(f"  MVD fails: exchanging {list(mvd_w[0])} and "
                               f"{list(mvd_w[1])} needs missing {list(mvd_w[2])}")
        _emit(payload, args.format, "\n".join(human_lines))
        return EXIT_OK
    findings = relational.discover_dependencies(rel)
    payload["findings"] = [
        {
            "x": list(f.x),
            "y": list(f.y),
            "fd": f.fd,
            "mvd": f.mvd,
            "weak_mvd": f.weak_mvd,
            "trivial": f.trivial,
            "lossless_join": f.lossless_join,
            "ap_witness": _witness_payload(f.ap_witness),
        }
        for f in findings
    ]
    lines = []
    for f in findings:
        if f.mvd and not f.trivial:
            lines.append(f"{{{','.join(f.x)}}} ->> {{{','.join(f.y)}}}"
                         f" (FD={f.fd}, lossless join={f.lossless_join})")
    human = "\n".join(lines) if lines else "no non-trivial multivalued dependencies"
    _emit(payload, args.format, human)
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def _load_spec(args) -> dict:
    if not args.spec:
        return {}
    with open(args.spec, encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_generate(args) -> int:
    kind = args.kind
    spec = _load_spec(args)
    if kind in ("monk1", "monk2", "monk3"):
        ds = data.generate_monk(int(kind[-1]))
        data.write_dataset(ds, args.out)
        rows = len(ds)
    elif kind == "affine":
        n = args.n if args.n is not None else spec.get("n")
        if n is None:
            raise _UsageError("affine generation needs --n")
        coeffs = None
        if args.coeffs:
            coeffs = _parse_int_list(args.coeffs)
        elif "coefficients" in spec:
            coeffs = spec["coefficients"]
        ds = data.generate_affine(n, coeffs, args.seed)
        data.write_dataset(ds, args.out)
        rows = len(ds)
    elif kind == "planted-rule":
        raw_rules = spec.get("rules")
        if not raw_rules:
            raise _UsageError("planted-rule generation needs --spec with a 'rules' list")
        rules = [data.PlantedRule(**r) for r in raw_rules]
        ds, _ = data.generate_planted_rules(rules)
        data.write_dataset(ds, args.out)
        rows = len(ds)
    elif kind == "random-relation":
        attrs = spec.get("attributes")
        if not attrs:
            raise _UsageError("random-relation generation needs --spec with 'attributes'")
        if args.seed is None:
            raise _UsageError("random-relation generation is seeded; pass --seed")
        schema = data.Schema.from_pairs((a["name"], tuple(a["domain"])) for a in attrs)
        count = args.tuples if args.tuples is not None else spec.get("tuples")
        if count is None:
            raise _UsageError("random-relation generation needs --tuples")
        rel = data.generate_random_relation(schema, count, args.seed)
        data.write_relation(rel, args.out)
        rows = len(rel)
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError(f"unknown kind {kind!r}")
    if args.emit_schema and kind != "random-relation":
        sidecar = Path(args.out).with_suffix(".schema.json")
        full = data.Schema(ds.schema.attributes + (ds.class_attr,))
        data.write_sidecar_schema(full, sidecar, class_name=ds.class_attr.name)
    payload = {"command": "generate", "kind": kind, "out": str(args.out),
               "rows": rows}
    _emit(payload, args.format, f"wrote {rows} rows to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("human", "json"), default="human",
                        help="output format on stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="anaprop",
                     description="Analogical-proportion reasoning toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ap = sub.add_parser("ap", help="check a proportion or solve its equation")
    p_ap.add_argument("action", choices=("check", "solve"))
    p_ap.add_argument("values", nargs="+",
                      help="4 values for check, 3 for solve")
    p_ap.add_argument("--domain", help="comma-separated domain to validate against")
    _add_format(p_ap)
    p_ap.set_defaults(func=_cmd_ap)

    p_ev = sub.add_parser("evaluate", help="cross-validated classifier study")
    p_ev.add_argument("--data", required=True)
    p_ev.add_argument("--schema", help="JSON sidecar schema file")
    p_ev.add_argument("--delimiter", default=",",
                      help="cell delimiter (default comma; use $'\\t' for tab)")
    p_ev.add_argument("--class-column")
    p_ev.add_argument("--strategy", choices=classify.STRATEGIES)
    p_ev.add_argument("--profile", choices=sorted(PROFILES),
                      help="named bundle of published experimental settings")
    p_ev.add_argument("--folds", type=int)
    p_ev.add_argument("--seed", type=int)
    p_ev.add_argument("--radius", type=int,
                      help="Hamming bound on c around the query (selected)")
    p_ev.add_argument("--neighbor-budget", type=int,
                      help="voting neighbors per query (bongard)")
    p_ev.add_argument("--max-literals", type=int,
                      help="separation conjunction size bound (bongard)")
    p_ev.add_argument("--k", type=int, help="neighbor count (knn)")
    p_ev.add_argument("--min-support", type=int)
    p_ev.add_argument("--min-confidence", type=float)
    p_ev.add_argument("--subsample", type=float,
                      help="pair-mining fraction of each training fold")
    p_ev.add_argument("--fallback", choices=classify.FALLBACKS,
                      help="classifier for abstained queries (default knn1)")
    p_ev.add_argument("--grid",
                      help="comma-separated neighbor grid (bongard/knn)")
    p_ev.add_argument("--workers", type=int)
    _add_format(p_ev)
    p_ev.set_defaults(func=_cmd_evaluate)

    p_ex = sub.add_parser("explain", help="contrastive explanation for a row")
    p_ex.add_argument("--data", required=True)
    p_ex.add_argument("--schema", help="JSON sidecar schema file")
    p_ex.add_argument("--delimiter", default=",",
                      help="cell delimiter (default comma; use $'\\t' for tab)")
    p_ex.add_argument("--query", help="comma-separated full row")
    p_ex.add_argument("--query-index", type=int, help="0-based row number")
    p_ex.add_argument("--why", metavar="ATTRIBUTE",
                      help="explain the query's value of this attribute")
    p_ex.add_argument("--why-not", metavar="ATTRIBUTE=VALUE",
                      help="explain why the attribute does not take this value")
    _add_format(p_ex)
    p_ex.set_defaults(func=_cmd_explain)

    p_dep = sub.add_parser("deps", help="dependency analysis of a relation")
    p_dep.add_argument("--data", required=True)
    p_dep.add_argument("--schema", help="JSON sidecar schema file")
    p_dep.add_argument("--delimiter", default=",",
                       help="cell delimiter (default comma; use $'\\t' for tab)")
    p_dep.add_argument("--mode", choices=("exhaustive", "single"),
                       default="exhaustive")
    p_dep.add_argument("--x", help="comma-separated attribute names")
    p_dep.add_argument("--y", help="comma-separated attribute names")
    _add_format(p_dep)
    p_dep.set_defaults(func=_cmd_deps)

    p_gen = sub.add_parser("generate", help="write a synthetic dataset")
    p_gen.add_argument("--kind", required=True,
                       choices=("affine", "planted-rule", "random-relation",
                                "monk1", "monk2", "monk3"))
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--n", type=int, help="attribute count (affine)")
    p_gen.add_argument("--coeffs", help="comma-separated 0/1 coefficients (affine)")
    p_gen.add_argument("--tuples", type=int, help="tuple count (random-relation)")
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--spec", help="JSON generator spec file")
    p_gen.add_argument("--emit-schema", action="store_true",
                       help="also write a sidecar schema next to the output")
    _add_format(p_gen)
    p_gen.set_defaults(func=_cmd_generate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, SchemaError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
