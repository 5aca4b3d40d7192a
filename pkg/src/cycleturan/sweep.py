"""Parameter sweeps over (n, x) producing empirical log_n ex curves.

Each cell samples G^r_{n,p} at p = n^{-r+x}. Hosts with a common seed are
nested in p, so the curves move monotonically with x rather than jumping
between unrelated samples. The lower bound is the best of the star, greedy,
deletion and middle-range constructions. The upper bound comes from branch
and bound when the copy set is small enough, and is e(H) otherwise.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import yaml

from .cycles import CycleFamily
from .errors import CycleTuranError, TooManyCopies, ValidationError
from .hypergraph import gen_gnrp
from .turan import (
    best_star,
    construction_deletion,
    construction_middle,
    exact_random_turan,
    greedy_free_subgraph,
    middle_range_p_prime,
)

log = logging.getLogger(__name__)

ESTIMATORS = ("auto", "exact", "lower")
RECORDS_JSONL = "records.jsonl"
RECORDS_CSV = "records.csv"
CURVE_SVG = "curve.svg"

DEFAULT_BUDGETS = {"nodes": 20_000, "copy_cap": 20_000, "exact_edges": 30}


@dataclass
class SweepConfig:
    r: int
    ell: int
    n_list: list[int]
    x_list: list[float]
    family: str = "linear"
    reps: int = 1
    seeds: int = 0
    estimator: str = "auto"
    budgets: dict = field(default_factory=dict)
    output_dir: str | None = None
    timing: bool = False

    def __post_init__(self):
        if not self.n_list or not self.x_list:
            raise ValidationError("sweep grids must be nonempty")
        if self.reps < 1:
            raise ValidationError("reps must be >= 1")
        if self.estimator not in ESTIMATORS:
            raise ValidationError(f"unknown estimator {self.estimator!r}")
        if self.family not in ("linear", "berge"):
            raise ValidationError(f"unknown family {self.family!r}")
        for x in self.x_list:
            if not 0 < x <= self.r:
                raise ValidationError(f"x must lie in (0, {self.r}], got {x}")
        for n in self.n_list:
            if n < self.r:
                raise ValidationError(f"n = {n} is below r = {self.r}")
        self.budgets = {**DEFAULT_BUDGETS, **(self.budgets or {})}

    @property
    def cycle_family(self) -> CycleFamily:
        length = 2 * self.ell
        if self.family == "linear":
            return CycleFamily.linear(self.r, length)
        return CycleFamily.berge(self.r, length)

    @classmethod
    def from_dict(cls, obj: dict) -> "SweepConfig":
        known = {k: obj[k] for k in cls.__dataclass_fields__ if k in obj}
        extra = set(obj) - set(known)
        if extra:
            raise ValidationError(f"unknown config keys: {sorted(extra)}")
        return cls(**known)

    @classmethod
    def load(cls, path) -> "SweepConfig":
        with open(path, encoding="utf-8") as fh:
            obj = yaml.safe_load(fh)
        if not isinstance(obj, dict):
            raise ValidationError("config must be a mapping")
        return cls.from_dict(obj)


@dataclass
class ExperimentRecord:
    r: int
    ell: int
    n: int
    p: float
    x: float
    seed: int
    estimator: str
    ex_lower: int
    ex_upper: int
    edges: int
    lower_sources: dict = field(default_factory=dict)
    raw_sources: dict = field(default_factory=dict)
    elapsed: float | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.ex_lower > self.ex_upper:
            raise ValidationError(f"lower {self.ex_lower} exceeds upper {self.ex_upper}")

    @property
    def key(self) -> tuple:
        return (self.n, self.x, self.seed)

    def log_lower(self) -> float:
        return math.log(self.ex_lower) / math.log(self.n) if self.ex_lower > 0 else float("-inf")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentRecord":
        return cls(**obj)


def cell_seed(base: int, rep: int) -> int:
    # independent of n and x so that hosts nest in p
    return base * 1_000_003 + rep


def run_cell(
    cfg: SweepConfig, n: int, x: float, rep: int, carry: Sequence[tuple[int, ...]] = ()
) -> tuple[ExperimentRecord, list[tuple[int, ...]]]:
    """One cell, plus the edges of its largest free witness.

    ``carry`` is a free edge set from a sparser host with the same seed; since
    hosts nest in p it survives here and is completed greedily.
    """
    r, ell = cfg.r, cfg.ell
    fam = cfg.cycle_family
    seed = cell_seed(cfg.seeds, rep)
    p = min(1.0, n ** (-r + x))
    start = time.perf_counter()
    notes: list[str] = []
    H = gen_gnrp(n, r, p, seed)
    cap = cfg.budgets["copy_cap"]
    witnesses: dict[str, list[tuple[int, ...]]] = {
        "star": list(best_star(H).edges),
        "greedy": [H.edges[i] for i in greedy_free_subgraph(H, fam, seed)],
    }
    try:
        witnesses["deletion"] = list(construction_deletion(H, fam, cap).edges)
    except TooManyCopies:
        notes.append("deletion skipped: copy cap")
    if fam.kind == "linear" and middle_range_p_prime(n, r, ell, p) < 1.0:
        try:
            witnesses["middle"] = list(construction_middle(H, fam, ell, p, seed, cap).edges)
        except TooManyCopies:
            notes.append("middle skipped: copy cap")
    if carry:
        ids = [i for i in (H.edge_id(e) for e in carry) if i is not None]
        if len(ids) < len(carry):
            notes.append("carried witness not nested in host")
        witnesses["carried"] = [H.edges[i] for i in greedy_free_subgraph(H, fam, seed, start=ids)]
    upper = len(H)
    tag = "lower"
    if cfg.estimator != "lower" and (cfg.estimator == "exact" or len(H) <= cfg.budgets["exact_edges"]):
        try:
            b = exact_random_turan(H, fam, budget=cfg.budgets["nodes"], copy_cap=cap, seed=seed)
            witnesses["search"] = [H.edges[i] for i in b.witness]
            upper = b.upper
            tag = "exact" if b.exact else "bnb"
        except TooManyCopies:
            notes.append("branch and bound skipped: copy cap")
    raw = {k: len(v) for k, v in witnesses.items()}
    # every witness is completed to a maximal free subgraph before comparison
    for k in list(witnesses):
        ids = [H.edge_id(e) for e in witnesses[k]]
        witnesses[k] = [H.edges[i] for i in greedy_free_subgraph(H, fam, seed, start=ids)]
    sources = {k: len(v) for k, v in witnesses.items()}
    best = max(witnesses, key=lambda k: len(witnesses[k]))
    lower = sources[best]
    elapsed = time.perf_counter() - start if cfg.timing else None
    rec = ExperimentRecord(r, ell, n, p, x, seed, tag, lower, upper, len(H), sources, raw, elapsed, notes)
    return rec, witnesses[best]


def _failed(cfg: SweepConfig, n: int, x: float, rep: int, exc: Exception) -> ExperimentRecord:
    p = min(1.0, n ** (-cfg.r + x))
    return ExperimentRecord(cfg.r, cfg.ell, n, p, x, cell_seed(cfg.seeds, rep), "failed",
                            0, 0, 0, {}, {}, None, [f"{type(exc).__name__}: {exc}"])


def cells(cfg: SweepConfig) -> list[tuple[int, float, int]]:
    """Cells ordered so that x increases within each (n, rep) pair."""
    return [(n, x, rep) for n in sorted(cfg.n_list) for rep in range(cfg.reps) for x in sorted(cfg.x_list)]


def read_records(path) -> list[ExperimentRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(ExperimentRecord.from_json(json.loads(line)))
    return out


def sweep(cfg: SweepConfig, resume: bool = True) -> list[ExperimentRecord]:
    """Run every cell; with an output directory, append records as they finish."""
    jsonl = Path(cfg.output_dir) / RECORDS_JSONL if cfg.output_dir else None
    done: dict[tuple, ExperimentRecord] = {}
    if jsonl is not None:
        jsonl.parent.mkdir(parents=True, exist_ok=True)
        if resume and jsonl.exists():
            # resumed cells carry no witness, so later cells restart their chain
            done = {rec.key: rec for rec in read_records(jsonl)}
        elif jsonl.exists():
            jsonl.unlink()
    records = []
    carry: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for n, x, rep in cells(cfg):
        key = (n, x, cell_seed(cfg.seeds, rep))
        if key in done:
            records.append(done[key])
            carry.pop((n, rep), None)
            continue
        try:
            rec, witness = run_cell(cfg, n, x, rep, carry.get((n, rep), ()))
            carry[(n, rep)] = witness
        except CycleTuranError as exc:
            log.warning("cell n=%d x=%.3f rep=%d failed: %s", n, x, rep, exc)
            rec = _failed(cfg, n, x, rep, exc)
        records.append(rec)
        if jsonl is not None:
            with open(jsonl, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
    records.sort(key=lambda rec: rec.key)
    if jsonl is not None:
        # rewrite in sorted order so output never depends on resume history
        write_jsonl(records, jsonl)
        write_csv(records, jsonl.with_name(RECORDS_CSV))
    return records


CSV_FIELDS = ["r", "ell", "n", "p", "x", "seed", "estimator", "ex_lower", "ex_upper", "edges",
              "elapsed", "notes"]


def write_jsonl(records: Iterable[ExperimentRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")


def write_csv(records: Iterable[ExperimentRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for rec in records:
            row = rec.to_json()
            row["notes"] = "; ".join(rec.notes)
            w.writerow(["" if row[k] is None else row[k] for k in CSV_FIELDS])


def curve(records: Iterable[ExperimentRecord]) -> dict[int, list[tuple[float, float]]]:
    """Per n, the points (x, log_n of the mean lower bound over repetitions)."""
    groups: dict[tuple[int, float], list[int]] = {}
    for rec in records:
        if rec.estimator == "failed":
            continue
        groups.setdefault((rec.n, rec.x), []).append(rec.ex_lower)
    out: dict[int, list[tuple[float, float]]] = {}
    for (n, x), vals in sorted(groups.items()):
        mean = sum(vals) / len(vals)
        y = math.log(mean) / math.log(n) if mean > 0 else float("-inf")
        out.setdefault(n, []).append((x, y))
    return out
