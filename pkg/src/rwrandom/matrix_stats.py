"""Random 0-1 vectors and matrices over GF(2).

Covers the subspace-membership probability of a biased random vector, the
rank-defect tail of random ``ceil(n/3) x ceil(n/2)`` matrices, and the
dense G(n, p) rank-width sweep that those bounds feed into.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import astuple, dataclass, fields
from itertools import product
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .errors import CapacityError
from .gf2 import BitMatrix, Gf2Basis, echelonize, rank, rank_of_rows
from .graph import GnpConfig, derive_seed, make_rng, sample_gnp
from .width import rank_width

SPAN_CAP = 24
DENSE_SWEEP_C = 12.6
DENSE_SWEEP_EXPONENT = 0.015


@dataclass(frozen=True)
class BiasedVectorModel:
    n: int
    p: float

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")

    @property
    def eta(self) -> float:
        return max(self.p, 1 - self.p)


@dataclass(frozen=True)
class DefectTailConfig:
    n: int
    p: float
    C: float
    samples: int
    seed: int = 0

    @property
    def eta(self) -> float:
        return max(self.p, 1 - self.p)

    @property
    def alpha(self) -> int:
        return math.ceil(self.C / math.log2(1 / self.eta))

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")
        if math.ceil(self.n / 3) - self.alpha < 0:
            raise ValueError(f"ceil(n/3) - alpha is negative (alpha={self.alpha})")


@dataclass(frozen=True)
class TailRecord:
    """One row of the rank-defect CSV tables."""

    n: int
    p: float
    C: float
    alpha: int
    samples: int
    empirical_freq: float
    clopper_pearson_ucl: float
    paper_bound: float


CSV_COLUMNS = [f.name for f in fields(TailRecord)]


def _span_weights(basis: Gf2Basis) -> np.ndarray:
    """Hamming weight of every element of the span."""
    if basis.length <= 63:
        span = np.zeros(1, dtype=np.int64)
        for b in basis.vectors:
            span = np.concatenate([span, span ^ np.int64(b)])
        return np.bitwise_count(span).astype(np.int64)
    return np.array([x.bit_count() for x in basis.span()], dtype=np.int64)


def membership_probability(model: BiasedVectorModel, basis: Gf2Basis) -> float:
    """P(v in span(basis)) for v with independent Bernoulli(p) entries.

    Sums ``p^wt(u) (1-p)^(n-wt(u))`` over the ``2^k`` span elements,
    grouped by weight and added with ``math.fsum``.  The relative error is
    a few ulps per weight class; at p = 1/2 every term is an exact power of
    two and so is the result.
    """
    if basis.length != model.n:
        raise ValueError("basis length must equal the vector length n")
    k = basis.dimension
    if k > SPAN_CAP:
        raise CapacityError("membership_probability", k, SPAN_CAP)
    counts = np.bincount(_span_weights(basis), minlength=model.n + 1)
    p, q, n = model.p, 1 - model.p, model.n
    return math.fsum(int(c) * p**w * q ** (n - w) for w, c in enumerate(counts) if c)


def check_membership_bound(model: BiasedVectorModel, basis: Gf2Basis) -> tuple[float, float, bool]:
    """(probability, eta^(n-k), probability <= bound + 1e-12)."""
    prob = membership_probability(model, basis)
    bound = model.eta ** (model.n - basis.dimension)
    return prob, bound, prob <= bound + 1e-12


def random_subspace(n: int, k: int, rng: np.random.Generator) -> Gf2Basis:
    """Span of k uniform vectors in GF(2)^n, resampled until independent."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    while True:
        m = BitMatrix.from_array(rng.random((k, n)) < 0.5)
        if rank(m) == k:
            return echelonize(m)


def _pack_rows(bits: np.ndarray) -> list[tuple[int, ...]]:
    """(batch, k1, k2) booleans -> per-matrix tuples of int rows."""
    packed = np.packbits(bits, axis=-1, bitorder="little")
    return [tuple(int.from_bytes(r.tobytes(), "little") for r in mat) for mat in packed]


def sample_random_matrix(k1: int, k2: int, p: float, seed: int) -> BitMatrix:
    """``k1 x k2`` matrix with independent Bernoulli(p) entries, drawn row-major."""
    rng = make_rng(seed)
    bits = rng.random((1, k1, k2)) < p
    rows = _pack_rows(bits)[0] if k1 and k2 else (0,) * k1
    return BitMatrix(k1, k2, rows)


def _matrix_ranks(k1: int, k2: int, p: float, samples: int, seed: int) -> np.ndarray:
    """Ranks of samples ``i = 0..samples-1``, each drawn from ``derive_seed(seed, i)``.

    Sample ``i`` is exactly ``sample_random_matrix(k1, k2, p, derive_seed(seed, i))``,
    so any split of the index range over workers gives the same ranks.
    """
    out = np.empty(samples, dtype=np.int64)
    for i in range(samples):
        out[i] = rank_of_rows(sample_random_matrix(k1, k2, p, derive_seed(seed, i)).rows)
    return out


def clopper_pearson_upper(successes: int, trials: int, level: float = 0.99) -> float:
    """One-sided upper confidence limit for a binomial proportion."""
    if trials <= 0:
        return 1.0
    if successes >= trials:
        return 1.0
    return float(stats.beta.ppf(level, successes + 1, trials - successes))


def defect_tail_experiment(cfg: DefectTailConfig) -> TailRecord:
    """Monte Carlo frequency of ``rank <= ceil(n/3) - alpha`` for M(ceil(n/3), ceil(n/2); p).

    Reported next to the analytic bound ``2^((1/2 - C/6) n)`` and a 99%
    Clopper-Pearson upper limit on the true probability.
    """
    k1, k2 = math.ceil(cfg.n / 3), math.ceil(cfg.n / 2)
    ranks = _matrix_ranks(k1, k2, cfg.p, cfg.samples, cfg.seed)
    hits = int(np.sum(ranks <= k1 - cfg.alpha))
    return TailRecord(
        n=cfg.n,
        p=cfg.p,
        C=cfg.C,
        alpha=cfg.alpha,
        samples=cfg.samples,
        empirical_freq=hits / cfg.samples if cfg.samples else 0.0,
        clopper_pearson_ucl=clopper_pearson_upper(hits, cfg.samples),
        paper_bound=2.0 ** ((0.5 - cfg.C / 6) * cfg.n),
    )


def exhaustive_rank_distribution(k1: int, k2: int) -> dict[int, int]:
    """Number of ``k1 x k2`` 0-1 matrices of each rank (all 2^(k1*k2) enumerated)."""
    if k1 * k2 > 20:
        raise CapacityError("exhaustive_rank_distribution", k1 * k2, 20)
    counts: dict[int, int] = {}
    for rows in product(range(1 << k2), repeat=k1):
        r = rank_of_rows(rows)
        counts[r] = counts.get(r, 0) + 1
    return dict(sorted(counts.items()))


def sampler_chi_square(k1: int, k2: int, samples: int, seed: int) -> tuple[float, float, dict[int, int]]:
    """Chi-square statistic of sampled ranks at p = 1/2 against exhaustive counts.

    Returns ``(statistic, 99.9% critical value, observed counts)``.
    """
    exact = exhaustive_rank_distribution(k1, k2)
    total = sum(exact.values())
    ranks = _matrix_ranks(k1, k2, 0.5, samples, seed)
    observed = {r: int(np.sum(ranks == r)) for r in exact}
    expected = {r: samples * c / total for r, c in exact.items()}
    stat = sum((observed[r] - expected[r]) ** 2 / expected[r] for r in exact)
    crit = float(stats.chi2.ppf(0.999, len(exact) - 1))
    return stat, crit, observed


def dense_defect_sweep(n_list: Sequence[int], p: float, C: float = DENSE_SWEEP_C,
                       samples: int = 100, seed: int = 0, cap: int = 20) -> list[TailRecord]:
    """Frequency of ``rw(G(n,p)) <= ceil(n/3) - C / log2(1/eta)`` per n.

    Listed beside ``2^(-0.015 n)``; at these sizes the bound is near 1 and
    nothing is asserted.  When the threshold is negative the frequency is 0
    without sampling, since rank-width is nonnegative.
    """
    eta = max(p, 1 - p)
    alpha = math.ceil(C / math.log2(1 / eta))
    out = []
    for n in n_list:
        threshold = math.ceil(n / 3) - alpha
        hits = 0
        if threshold >= 0:
            for i in range(samples):
                g = sample_gnp(GnpConfig(n, p, derive_seed(seed, i)))
                if rank_width(g, cap=cap)[0] <= threshold:
                    hits += 1
        out.append(TailRecord(n, p, C, alpha, samples, hits / samples if samples else 0.0,
                              clopper_pearson_upper(hits, samples),
                              2.0 ** (-DENSE_SWEEP_EXPONENT * n)))
    return out


def write_tail_csv(records: Iterable[TailRecord], path: str | os.PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([repr(x) if isinstance(x, float) else x for x in astuple(r)])
