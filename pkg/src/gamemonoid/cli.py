"""Command-line entry point.

Exit status: 0 success, 1 a validation or verification FAIL, 2 bad input
(unknown ids, unreadable or inconsistent files).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .abstraction import (
    build_abstract_model,
    check_square,
    composed_abstract_model,
    pattern_abstract_model,
    verify_simulation,
)
from .behavlets import detect, quantify
from .composition import compose_restricted, PatternMonoid, validate_restrictions
from .profiler import profile, simulate
from .registry import (
    UnknownId,
    abstraction_by_id,
    agent,
    behavlet_by_id,
    build_model,
    composed_by_spec,
)
from .traceio import TraceFormatError, read_trace, write_report, write_trace

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _ids(values: list[str]) -> list[str]:
    return [v for item in values for v in item.split(",") if v]


def _trace_paths(values: list[str]) -> list[Path]:
    paths = []
    for v in values:
        p = Path(v)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.trace")))
        elif p.exists():
            paths.append(p)
        else:
            raise InputError(f"no such trace file or directory: {v}")
    if not paths:
        raise InputError("no trace files given")
    return paths


def _load(values: list[str]):
    return [read_trace(p) for p in _trace_paths(values)]


def _require_model(traces, model_id: str, what: str) -> None:
    for t in traces:
        if t.model_id != model_id:
            raise InputError(f"{t.meta['id']} is a {t.model_id} trace; {what} expects {model_id}")


def _require_behavlets(traces, behavlets) -> None:
    for b in behavlets:
        for t in traces:
            if not b.accepts(t.model_id):
                raise InputError(f"behavlet {b.id} does not apply to {t.meta['id']} ({t.model_id})")


def _model_params(args) -> dict:
    params = {}
    if args.model == "pacman":
        # absolute path so the trace header resolves from any working directory
        params["maze"] = str(Path(args.maze).resolve()) if args.maze and args.maze != "default" else "default"
        if args.power_ticks is not None:
            params["power_ticks"] = args.power_ticks
        if args.ghost_weight is not None:
            params["ghost_weight"] = args.ghost_weight
    return params


def _emit(doc: dict, out: str | None) -> None:
    text = write_report(doc, out)
    if out is None:
        sys.stdout.write(text)


def cmd_simulate(args) -> int:
    model = build_model(args.model, _model_params(args))
    spec = agent(args.agent)
    if spec.model_id != model.id:
        raise InputError(f"agent {spec.id} plays {spec.model_id}, not {model.id}")
    encoding = "hash" if args.hash_states else "full"
    seeds = range(args.seed, args.seed + args.count)
    out = Path(args.out)
    for seed in seeds:
        trace = simulate(model, spec, seed, args.ticks)
        target = out if args.count == 1 else out / f"{spec.id.replace('/', '-').replace(':', '-')}-{seed}.trace"
        write_trace(trace, target, encoding)
    return EXIT_OK


def cmd_detect(args) -> int:
    behavlets = [behavlet_by_id(b) for b in _ids(args.behavlet)]
    traces = _load(args.traces)
    _require_behavlets(traces, behavlets)
    sections = {}
    for b in behavlets:
        rows = []
        for t in traces:
            ds = detect(b, t)
            rows.append({
                "trace": t.meta["id"],
                "detections": [[d.start_tick, d.end_tick] for d in ds],
                "quantity": quantify(b, ds, t),
            })
        sections[b.id] = {"trait": b.trait_label, "quantifier": b.quantifier.value, "traces": rows}
    _emit({"command": "detect", "detections": sections}, args.out)
    return EXIT_OK


def cmd_profile(args) -> int:
    behavlets = [behavlet_by_id(b) for b in _ids(args.behavlets)]
    traces = _load(args.traces)
    _require_behavlets(traces, behavlets)
    _emit({"command": "profile", "profile": profile(traces, behavlets)}, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    traces = _load(args.traces)
    params = traces[0].meta.get("params") or {}
    cm = composed_by_spec(args.composed, params)
    _require_model(traces, cm.base.id, f"composition {args.composed}")
    rows = []
    ok = True
    for t in traces:
        rep = validate_restrictions(cm, t)
        ok = ok and rep.passed
        failed = [op for op, good in (("R1", rep.r1), ("R2", rep.r2), ("R3", rep.r3)) if not good]
        rows.append({"trace": t.meta["id"], "failed_operators": failed, **rep.to_json()})
    _emit({"command": "validate", "composed": cm.id, "passed": ok, "traces": rows}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_abstract(args) -> int:
    f = abstraction_by_id(args.map)
    traces = _load(args.traces)
    _require_model(traces, args.model, "--model")
    model = build_model(args.model, traces[0].meta.get("params") or {})
    am = build_abstract_model(model, f, traces)
    doc = {"command": "abstract", "map": f.name, "model": model.id, "build_traces": len(traces),
           "abstract_model": am.to_json()}
    ok = True
    if args.verify:
        fresh = _load(args.verify)
        rep = verify_simulation(model, am, f, fresh)
        doc["simulation"] = rep
        ok = ok and rep.passed
    if args.pattern:
        patterns = [PatternMonoid(behavlet_by_id(b)) for b in _ids(args.pattern)]
        cm = compose_restricted(model, patterns)
        # all four corners come from the build sample
        parts = [pattern_abstract_model(cm, p.id, f, traces) for p in cm.patterns]
        rep = check_square(am, parts, composed_abstract_model(cm, f, traces), f)
        doc["square"] = rep
        ok = ok and rep.passed
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gamemonoid", description="Game models as monoid actions, Behavlet detection")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="play a built-in agent and write trace files")
    s.add_argument("--model", required=True)
    s.add_argument("--agent", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--ticks", type=int, default=400)
    s.add_argument("--count", type=int, default=1, help="number of consecutive seeds; --out is then a directory")
    s.add_argument("--out", required=True)
    s.add_argument("--maze", help="maze file for pacman (default: bundled maze)")
    s.add_argument("--power-ticks", type=int)
    s.add_argument("--ghost-weight", type=float)
    s.add_argument("--hash-states", action="store_true", help="record 64-bit state hashes instead of states")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("detect", help="run Behavlets over traces")
    s.add_argument("--behavlet", action="append", required=True)
    s.add_argument("--traces", nargs="+", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("profile", help="trait profile of a trace batch")
    s.add_argument("--traces", nargs="+", required=True)
    s.add_argument("--behavlets", action="append", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("validate", help="check restriction operators R1-R3 on traces")
    s.add_argument("--composed", required=True, help="model:behavlet[,behavlet...]")
    s.add_argument("--traces", nargs="+", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("abstract", help="build and verify an abstract simulation")
    s.add_argument("--model", required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--traces", nargs="+", required=True)
    s.add_argument("--verify", nargs="+")
    s.add_argument("--pattern", action="append", help="also check the composition square for these Behavlets")
    s.add_argument("--out")
    s.set_defaults(func=cmd_abstract)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "count", 1) < 1 or getattr(args, "ticks", 1) < 1:
        print("error: --count and --ticks must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except UnknownId as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, TraceFormatError, OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
