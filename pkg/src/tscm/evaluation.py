"""Detection-quality metrics: set F1, the averaged best-match score Q, and SS."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Collection, Sequence

from .metrics import Subspace, subspace_cosine


def f1(truth: Collection, detected: Collection) -> float:
    truth, detected = set(truth), set(detected)
    if not truth:
        raise ValueError("truth community is empty")
    overlap = len(truth & detected)
    if overlap == 0:
        return 0.0
    precision = overlap / len(detected)
    recall = overlap / len(truth)
    return 2 * precision * recall / (precision + recall)


@dataclass
class EvalReport:
    ss: float | None = None
    qi: list[float] = field(default_factory=list)
    q: float | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True)


def quality_q(truth_sets: Sequence[Collection], detected_sets: Sequence[Collection]) -> EvalReport:
    """Mean over truth communities of their best F1 against any detected one."""
    if not truth_sets:
        raise ValueError("no truth communities given")
    detected = [set(d) for d in detected_sets]
    qi = [max((f1(t, d) for d in detected), default=0.0) for t in truth_sets]
    return EvalReport(qi=qi, q=sum(qi) / len(qi))


def quality_ss(mined: Subspace, planted: Subspace) -> float:
    return subspace_cosine(mined, planted)


def read_communities(path: str | Path) -> list[list[str]]:
    """One community per line, whitespace-separated node IDs; blank lines skipped."""
    with open(path, encoding="utf-8") as fh:
        return [line.split() for line in fh if line.strip() and not line.startswith("#")]
