"""Seeded Monte Carlo runs over the G(n, p) regimes.

Each sample is an independent task seeded by ``derive_seed(seed, index)``,
so the output does not depend on how many workers run it.  Records are
written as CSV with a fixed column order; skipped widths are -1.
"""

from __future__ import annotations

import csv
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError
from .expansion import CHEEGER_CAP, best_certificate, core_candidate
from .graph import Graph, GnpConfig, complement, component_labels, derive_seed, sample_gnp
from .width import DEFAULT_CAP, rank_width, tree_width

REGIMES = ("dense", "neardense", "supercritical", "critical", "subcritical")


@dataclass(frozen=True)
class RegimeConfig:
    regime: str
    n: int
    p: float | None = None
    c: float | None = None
    samples: int = 20
    seed: int = 0
    exact_width_cap: int = DEFAULT_CAP
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}; choose from {', '.join(REGIMES)}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        if self.regime == "dense":
            if self.p is None or not 0 < self.p < 1:
                raise ValueError("dense regime needs a constant p in (0, 1)")
        elif self.regime == "neardense":
            if self.p is not None and not 0 < self.p <= 1:
                raise ValueError("neardense regime needs p in (0, 1]")
        else:
            if self.c is None:
                raise ValueError(f"{self.regime} regime needs c (p = c/n)")
            if self.regime == "supercritical" and not self.c > 1:
                raise ValueError("supercritical regime needs c > 1")
            if self.regime == "critical" and self.c != 1:
                raise ValueError("critical regime needs c = 1")
            if self.regime == "subcritical" and not 0 <= self.c < 1:
                raise ValueError("subcritical regime needs 0 <= c < 1")

    @property
    def edge_probability(self) -> float:
        if self.regime == "dense":
            return self.p
        if self.regime == "neardense":
            # default keeps the expected degree at sqrt(n)
            return self.p if self.p is not None else min(1.0, self.n ** -0.5)
        return min(1.0, self.c / self.n)


@dataclass(frozen=True)
class ExperimentRecord:
    regime: str
    n: int
    p: float
    seed: int
    sample_index: int
    rw: int
    tw: int
    ceil_n3: int
    gap: int
    largest_component: int
    all_simple: bool
    certified_lb: int
    runtime_ms: int
    rw_complement: int

    def check(self) -> None:
        if self.rw >= 0 and self.rw > self.ceil_n3:
            raise AssertionError(f"rw {self.rw} exceeds ceil(n/3) = {self.ceil_n3}")
        if self.rw >= 0 and self.all_simple and self.rw > 2:
            raise AssertionError(f"tree/unicyclic graph with rw {self.rw} > 2")
        if self.rw >= 0 and self.rw_complement >= 0 and abs(self.rw - self.rw_complement) > 1:
            raise AssertionError("rank-width of complement differs by more than 1")
        if self.certified_lb > 0 and self.rw >= 0 and self.certified_lb > self.rw:
            raise AssertionError("certified lower bound exceeds exact rank-width")


COLUMNS = [f.name for f in fields(ExperimentRecord)]
_TYPES = {f.name: f.type for f in fields(ExperimentRecord)}


# -- per-sample analysis --------------------------------------------------------------

@dataclass
class _ComponentView:
    count: int
    labels: np.ndarray
    sizes: np.ndarray
    edge_counts: np.ndarray


def _component_view(g: Graph) -> _ComponentView:
    k, labels = component_labels(g)
    sizes = np.bincount(labels, minlength=k)
    if g.m:
        edge_counts = np.bincount(labels[g.edges[:, 0]], minlength=k)
    else:
        edge_counts = np.zeros(k, dtype=np.int64)
    return _ComponentView(k, labels, sizes, edge_counts)


def rank_width_by_components(g: Graph, cap: int, view: _ComponentView | None = None) -> int:
    """rw(g) as the max over components, without touching most of them.

    A component of size k has rw <= ceil(k/3), and a tree or unicyclic
    component has rw <= 2; only components whose upper bound beats the
    running maximum are solved exactly.  Tree/unicyclic components larger
    than ``cap`` are charged their bound 2.  Returns -1 when a component
    that could matter is neither small nor simple.
    """
    if view is None:
        view = _component_view(g)
    if g.n == 0:
        return 0
    sizes, ecount = view.sizes, view.edge_counts
    simple = ecount <= sizes
    upper = np.minimum((sizes + 2) // 3, np.where(simple, 2, sizes))
    upper = np.where(ecount == 0, 0, upper)
    best = 1 if g.m else 0
    order = np.argsort(-upper, kind="stable")
    candidates = [int(i) for i in order if upper[i] > best]
    if not candidates:
        return best

    # local vertex numbering inside each component, computed once
    vorder = np.argsort(view.labels, kind="stable")
    starts = np.concatenate([[0], np.cumsum(sizes)])
    local = np.empty(g.n, dtype=np.int64)
    local[vorder] = np.arange(g.n) - starts[view.labels[vorder]]
    eorder = np.argsort(view.labels[g.edges[:, 0]], kind="stable")
    estarts = np.concatenate([[0], np.cumsum(ecount)])
    memo: dict[tuple, int] = {}
    for comp in candidates:
        if upper[comp] <= best:
            break
        k = int(sizes[comp])
        if k > cap:
            if not simple[comp]:
                return -1
            best = max(best, 2)
            continue
        e = local[g.edges[eorder[estarts[comp]:estarts[comp + 1]]]]
        key = (k, np.sort(e, axis=1).tobytes() if len(e) else b"")
        if key not in memo:
            memo[key] = rank_width(Graph(k, e), cap=cap)[0]
        best = max(best, memo[key])
    return best


def run_sample(cfg: RegimeConfig, index: int) -> ExperimentRecord:
    start = time.perf_counter()
    seed = derive_seed(cfg.seed, index)
    p = cfg.edge_probability
    g = sample_gnp(GnpConfig(cfg.n, p, seed))
    cap = cfg.exact_width_cap
    small = g.n <= cap
    view = _component_view(g)

    if small:
        rw = rank_width(g, cap=cap)[0]
        tw = tree_width(g, cap=cap)
    else:
        rw = rank_width_by_components(g, cap, view)
        tw = -1

    rw_comp = -1
    if cfg.regime in ("dense", "neardense") and small:
        rw_comp = rank_width(complement(g), cap=cap)[0]

    certified = -1
    if cfg.regime == "supercritical":
        core = core_candidate(g, CHEEGER_CAP)
        certified = best_certificate(g, core).bound if len(core) >= 2 else 0

    ceil_n3 = math.ceil(cfg.n / 3)
    elapsed = int(round((time.perf_counter() - start) * 1000)) if cfg.timing else -1
    rec = ExperimentRecord(
        regime=cfg.regime,
        n=cfg.n,
        p=p,
        seed=seed,
        sample_index=index,
        rw=rw,
        tw=tw,
        ceil_n3=ceil_n3,
        gap=ceil_n3 - rw if rw >= 0 else -1,
        largest_component=int(view.sizes.max()) if view.count else 0,
        all_simple=bool(np.all(view.edge_counts <= view.sizes)),
        certified_lb=certified,
        runtime_ms=elapsed,
        rw_complement=rw_comp,
    )
    rec.check()
    return rec


def _run_chunk(args) -> list[ExperimentRecord]:
    cfg, indices = args
    return [run_sample(cfg, i) for i in indices]


def run(cfg: RegimeConfig) -> list[ExperimentRecord]:
    """All samples of one configuration, ordered by sample index."""
    indices = list(range(cfg.samples))
    if cfg.workers <= 1 or cfg.samples <= 1:
        records = [run_sample(cfg, i) for i in indices]
    else:
        chunks = [(cfg, indices[w::cfg.workers]) for w in range(cfg.workers)]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = [r for part in pool.map(_run_chunk, chunks) for r in part]
    return sorted(records, key=lambda r: r.sample_index)


def run_dense(cfg: RegimeConfig) -> list[ExperimentRecord]:
    if cfg.regime not in ("dense", "neardense"):
        raise ValueError("run_dense expects the dense or neardense regime")
    if cfg.n > cfg.exact_width_cap:
        raise CapacityError("run_dense", cfg.n, cfg.exact_width_cap)
    return run(cfg)


def run_subcritical(cfg: RegimeConfig) -> list[ExperimentRecord]:
    if cfg.regime != "subcritical":
        raise ValueError("run_subcritical expects the subcritical regime")
    return run(cfg)


def run_critical(cfg: RegimeConfig) -> list[ExperimentRecord]:
    if cfg.regime != "critical":
        raise ValueError("run_critical expects the critical regime")
    return run(cfg)


def run_supercritical(cfg: RegimeConfig) -> list[ExperimentRecord]:
    if cfg.regime != "supercritical":
        raise ValueError("run_supercritical expects the supercritical regime")
    return run(cfg)


# -- summaries -----------------------------------------------------------------------

def gap_summary(records: Sequence[ExperimentRecord]) -> tuple[float, int]:
    """(median, max) of ceil(n/3) - rw over samples with rw computed."""
    gaps = [r.gap for r in records if r.rw >= 0]
    if not gaps:
        return float("nan"), -1
    return statistics.median(gaps), max(gaps)


def critical_ratios(records: Sequence[ExperimentRecord]) -> list[float]:
    """largest component / n^(2/3) per sample."""
    return [r.largest_component / r.n ** (2 / 3) for r in records]


# -- CSV -------------------------------------------------------------------------------

def _format(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse(name: str, text: str):
    kind = _TYPES[name]
    if kind in ("bool", bool):
        return text == "1"
    if kind in ("int", int):
        return int(text)
    if kind in ("float", float):
        return float(text)
    return text


def format_records(records: Iterable[ExperimentRecord]) -> str:
    lines = [",".join(COLUMNS)]
    for r in sorted(records, key=lambda r: r.sample_index):
        lines.append(",".join(_format(v) for v in astuple(r)))
    return "\n".join(lines) + "\n"


def write_records(records: Iterable[ExperimentRecord], path: str | os.PathLike) -> None:
    text = format_records(records)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write records to {os.fspath(path)}: {exc}") from exc


def read_records(path: str | os.PathLike) -> list[ExperimentRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != COLUMNS:
            raise ValueError(f"unexpected CSV columns in {os.fspath(path)}")
        return [ExperimentRecord(**{k: _parse(k, v) for k, v in row.items()}) for row in reader]
