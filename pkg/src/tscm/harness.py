"""Seeded experiment sweeps over generated benchmarks.

A sweep varies one :class:`BenchmarkConfig` field, generates a few instances
per value and attribute kind, runs the miner on random sample pairs drawn
from target communities and records SS, Q and runtime per trial.
"""
from __future__ import annotations

import csv
import dataclasses
import logging
import statistics
import time
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .benchgen import BenchmarkConfig, BenchmarkInstance, generate
from .evaluation import quality_q, quality_ss
from .pipeline import tscm
from .targeting import derive_seed

log = logging.getLogger(__name__)

TRIAL_FIELDS = [
    "param", "value", "kind", "instance", "trial", "n", "m",
    "sample1", "sample2", "ss", "q", "n_communities", "runtime_s",
]


def sample_pair(inst: BenchmarkInstance, rng: np.random.Generator) -> list[int]:
    """Two distinct nodes of one randomly chosen target community."""
    members = inst.targets[int(rng.integers(len(inst.targets)))]
    return [int(v) for v in rng.choice(members, size=2, replace=False)]


def run_trials(
    inst: BenchmarkInstance,
    trials: int,
    rng_seed: int,
    beta: float = 0.5,
    threads: int = 1,
) -> list[dict]:
    rng = np.random.default_rng(rng_seed)
    rows = []
    for k in range(trials):
        samples = sample_pair(inst, rng)
        t0 = time.perf_counter()
        res = tscm(inst.network, samples, beta, derive_seed(rng_seed, k), threads)
        elapsed = time.perf_counter() - t0
        rows.append({
            "trial": k,
            "n": inst.network.n,
            "m": inst.network.m,
            "sample1": inst.network.ids[samples[0]],
            "sample2": inst.network.ids[samples[1]],
            "ss": quality_ss(res.subspace, inst.target_subspace),
            "q": quality_q(inst.targets, [c.members for c in res.communities]).q,
            "n_communities": len(res.communities),
            "runtime_s": elapsed,
        })
    return rows


def sweep(
    base: BenchmarkConfig,
    param: str,
    values: Sequence,
    kinds: Iterable[str] = ("num",),
    instances: int = 1,
    trials: int = 10,
    rng_seed: int = 0,
    beta: float = 0.5,
    threads: int = 1,
) -> list[dict]:
    """Trial rows for every (value, kind, instance) combination."""
    names = {f.name for f in dataclasses.fields(BenchmarkConfig)}
    if param not in names:
        raise ValueError(f"unknown benchmark parameter {param!r}")
    rows = []
    for vi, value in enumerate(values):
        for ki, kind in enumerate(kinds):
            for inst_i in range(instances):
                cfg = dataclasses.replace(
                    base, **{param: value}, attr_kind=kind,
                    rng_seed=derive_seed(rng_seed, vi, ki, inst_i),
                )
                inst = generate(cfg)
                log.info("%s=%s kind=%s instance %d: %s", param, value, kind, inst_i, inst.stats)
                for row in run_trials(inst, trials, derive_seed(rng_seed, 99, vi, ki, inst_i), beta, threads):
                    rows.append({"param": param, "value": value, "kind": kind, "instance": inst_i, **row})
    return rows


def summarize(rows: Sequence[dict]) -> list[dict]:
    """Mean and standard deviation of SS, Q and runtime per (value, kind)."""
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault((row["param"], row["value"], row["kind"]), []).append(row)
    out = []
    for (param, value, kind), grp in groups.items():
        entry = {"param": param, "value": value, "kind": kind, "trials": len(grp)}
        for key in ("ss", "q", "runtime_s", "m"):
            xs = [float(r[key]) for r in grp]
            entry[f"{key}_mean"] = statistics.fmean(xs)
            entry[f"{key}_std"] = statistics.pstdev(xs)
        out.append(entry)
    return out


def write_csv(rows: Sequence[dict], path: str | Path, fields: Sequence[str] | None = None) -> None:
    fields = list(fields or (rows[0].keys() if rows else TRIAL_FIELDS))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    return float(np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)[0])
