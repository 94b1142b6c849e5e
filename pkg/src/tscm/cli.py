"""Command-line interface: ``mine``, ``ego``, ``genbench``, ``eval`` and ``sweep``.

Exit codes: 0 success, 2 usage/validation error, 3 runtime error.
``TSCM_LOG`` (error, warning, info, debug) sets the stderr log level.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from .benchgen import BenchmarkConfig, InfeasibleConfig, generate, write_benchmark
from .evaluation import quality_q, quality_ss, read_communities
from .expansion import ActionCapExceeded, FitnessError
from .metrics import InvalidSubspaceError, Subspace
from .netio import NetworkFormatError, load_network
from .pipeline import tscm
from .seeding import SeedingError
from .subspace import SubspaceError
from .targeting import TargetingError, ego_analysis

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 2, 3

log = logging.getLogger("tscm")


class UsageError(Exception):
    """Bad flags or inputs detected before any computation."""


def _probability(text: str) -> float:
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return x


def _positive_int(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return x


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=1) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load(args):
    try:
        return load_network(args.graph, args.attrs)
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _resolve(net, node_id: str) -> int:
    if node_id not in net.index:
        raise UsageError(f"unknown node id {node_id!r}")
    return net.index[node_id]


def cmd_mine(args) -> int:
    samples = [s.strip() for s in args.samples.split(",") if s.strip()]
    if len(samples) < 2:
        raise UsageError("--samples needs at least two node ids")
    if len(set(samples)) != len(samples):
        raise UsageError("duplicate sample node")
    net = _load(args)
    idx = [_resolve(net, s) for s in samples]
    t0 = time.perf_counter()
    res = tscm(net, idx, args.beta, args.seed, args.threads)
    elapsed = 1e3 * (time.perf_counter() - t0)
    ids = net.ids
    out = {
        "subspace": res.subspace.tolist(),
        "exemplars": sorted([ids[v] for v in res.exemplars]),
        "communities": [
            {"members": sorted([ids[v] for v in c.members]), "fitness": c.fitness}
            for c in res.communities
        ],
        "meta": {
            "seed": args.seed,
            "beta": args.beta,
            "samples": samples,
            "n_seeds": res.meta["n_seeds"],
            "elapsed_ms": elapsed,
            "timings": res.meta["timings"],
        },
    }
    _dump(out, args.out)
    log.info("mined %d communities in %.1f ms", len(res.communities), elapsed)
    return EXIT_OK


def cmd_ego(args) -> int:
    net = _load(args)
    v = _resolve(net, args.node)
    ids = net.ids
    pairs = ego_analysis(net, v, args.seed, args.threads)
    _dump([
        {"subspace": l.tolist(), "members": sorted([ids[u] for u in c.members]), "fitness": c.fitness}
        for l, c in pairs
    ], args.out)
    return EXIT_OK


def _config_from_args(args) -> BenchmarkConfig:
    fields = {f.name for f in dataclasses.fields(BenchmarkConfig)}
    kw = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    cfg = BenchmarkConfig(**kw)
    try:
        cfg.validate()
    except (InfeasibleConfig, NetworkFormatError) as exc:
        raise UsageError(str(exc)) from exc
    return cfg


def cmd_genbench(args) -> int:
    cfg = _config_from_args(args)
    try:
        inst = generate(cfg)
    except InfeasibleConfig as exc:
        raise UsageError(str(exc)) from exc
    paths = write_benchmark(inst, args.out_dir, args.prefix)
    for key, path in paths.items():
        print(f"{key}\t{path}")
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        truth = read_communities(args.truth)
        result = json.loads(Path(args.result).read_text(encoding="utf-8"))
        sidecar = json.loads(Path(args.truth_subspace).read_text(encoding="utf-8")) if args.truth_subspace else None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    if not truth:
        raise UsageError("truth file holds no communities")
    if sidecar and not args.all_communities:
        try:
            truth = [truth[i] for i in sidecar["target_communities"]]
        except (KeyError, IndexError) as exc:
            raise UsageError("subspace sidecar does not match the truth file") from exc
    try:
        detected = [c["members"] for c in result["communities"]]
    except (KeyError, TypeError) as exc:
        raise UsageError("result file lacks a communities list") from exc
    report = quality_q(truth, detected)
    if sidecar:
        try:
            mined = Subspace.normalized(result["subspace"])
            planted = Subspace.normalized(sidecar["target_subspace"])
            report.ss = quality_ss(mined, planted)
        except (KeyError, InvalidSubspaceError) as exc:
            raise UsageError(f"subspace mismatch: {exc}") from exc
    report.meta = {"truth": str(args.truth), "result": str(args.result), "n_truth": len(truth), "n_detected": len(detected)}
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
    if report.ss is not None:
        print(f"SS={report.ss:.6f}")
    print(f"Q={report.q:.6f}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    from . import harness, plotting

    base = _config_from_args(args)
    field_types = {f.name: f.type for f in dataclasses.fields(BenchmarkConfig)}
    if args.param not in field_types or args.param in ("attr_kind", "rng_seed"):
        raise UsageError(f"cannot sweep {args.param!r}")
    cast = int if field_types[args.param] in (int, "int") else float
    try:
        values = [cast(v) for v in args.values.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    kinds = [k.strip() for k in args.kinds.split(",")]
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        rows = harness.sweep(base, args.param, values, kinds, args.instances, args.trials, args.seed, args.beta, args.threads)
    except InfeasibleConfig as exc:
        raise UsageError(str(exc)) from exc
    summary = harness.summarize(rows)
    harness.write_csv(rows, out / "trials.csv", harness.TRIAL_FIELDS)
    harness.write_csv(summary, out / "summary.csv")
    plotting.plot_quality(summary, out / f"quality_vs_{args.param}.png")
    plotting.plot_runtime(summary, out / "runtime_vs_m.png")
    for row in summary:
        print(f"{row['param']}={row['value']}\t{row['kind']}\tSS={row['ss_mean']:.4f}\tQ={row['q_mean']:.4f}\tt={row['runtime_s_mean']:.3f}s")
    return EXIT_OK


def _add_network_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge list file")
    p.add_argument("--attrs", required=True, help="attribute table (TSV)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)


def _add_bench_args(p: argparse.ArgumentParser) -> None:
    d = BenchmarkConfig()
    p.add_argument("--tau1", type=float, default=d.tau1)
    p.add_argument("--tau2", type=float, default=d.tau2)
    p.add_argument("-n", "--n", type=int, default=d.n)
    p.add_argument("--d-avg", dest="d_avg", type=float, default=d.d_avg)
    p.add_argument("--d-max", dest="d_max", type=int, default=d.d_max)
    p.add_argument("--c-min", dest="c_min", type=int, default=d.c_min)
    p.add_argument("--c-max", dest="c_max", type=int, default=d.c_max)
    p.add_argument("--mu", type=_probability, default=d.mu)
    p.add_argument("-r", "--r", type=int, default=d.r)
    p.add_argument("-t", "--t", type=int, default=d.t)
    p.add_argument("-b", "--b", type=int, default=d.b)
    p.add_argument("-p", "--p", type=_probability, default=d.p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tscm", description="Target subspace and community mining on attributed networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine the target subspace and communities from sample nodes")
    _add_network_args(p)
    p.add_argument("--samples", required=True, help="comma-separated node ids (two, or three and more)")
    p.add_argument("--beta", type=_probability, default=0.5, help="redundancy overlap threshold")
    _add_common(p)
    p.add_argument("--out", default="-", help="output JSON path ('-' for stdout)")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("ego", help="subspaces and communities around one node")
    _add_network_args(p)
    p.add_argument("--node", required=True)
    _add_common(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_ego)

    p = sub.add_parser("genbench", help="generate an attributed LFR-style benchmark")
    _add_bench_args(p)
    p.add_argument("--kind", dest="attr_kind", choices=["num", "bin", "cat"], default="num")
    p.add_argument("--seed", dest="rng_seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--prefix", default="bench")
    p.set_defaults(func=cmd_genbench)

    p = sub.add_parser("eval", help="score a mining result against ground truth")
    p.add_argument("--truth", required=True, help="ground-truth communities file")
    p.add_argument("--truth-subspace", help="benchmark subspace JSON sidecar")
    p.add_argument("--result", required=True, help="JSON written by 'mine'")
    p.add_argument("--all-communities", action="store_true", help="score every truth community, not only targets")
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="vary one benchmark parameter; write CSV tables and figures")
    _add_bench_args(p)
    p.add_argument("--param", required=True, help="benchmark field to vary, e.g. p, mu, n")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--kinds", default="num,bin", help="attribute kinds, comma-separated")
    p.add_argument("--instances", type=_positive_int, default=2)
    p.add_argument("--trials", type=_positive_int, default=10)
    p.add_argument("--beta", type=_probability, default=0.5)
    _add_common(p)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def _setup_logging() -> None:
    level = os.environ.get("TSCM_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Sequence[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, NetworkFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TargetingError, SubspaceError, SeedingError, FitnessError, ActionCapExceeded, InvalidSubspaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
