import csv
import math
from itertools import product

import numpy as np
import pytest

from rwrandom.errors import CapacityError
from rwrandom.gf2 import BitMatrix, echelonize
from rwrandom.graph import derive_seed
from rwrandom.matrix_stats import (
    CSV_COLUMNS,
    BiasedVectorModel,
    DefectTailConfig,
    check_membership_bound,
    clopper_pearson_upper,
    defect_tail_experiment,
    dense_defect_sweep,
    exhaustive_rank_distribution,
    membership_probability,
    random_subspace,
    sample_random_matrix,
    sampler_chi_square,
    write_tail_csv,
)


def membership_by_enumeration(n, p, basis):
    """Sum of P(v) over all 2^n vectors v that lie in the span."""
    span = set(basis.span())
    total = 0.0
    for bits in product((0, 1), repeat=n):
        v = sum(b << i for i, b in enumerate(bits))
        if v in span:
            w = sum(bits)
            total += p**w * (1 - p) ** (n - w)
    return total


def test_membership_examples():
    n, p = 6, 0.3
    empty = echelonize(BitMatrix.zeros(0, n))
    assert membership_probability(BiasedVectorModel(n, p), empty) == pytest.approx((1 - p) ** n, rel=1e-14)
    full = echelonize(BitMatrix.identity(n))
    prob, bound, holds = check_membership_bound(BiasedVectorModel(n, p), full)
    assert prob == pytest.approx(1.0, rel=1e-14) and bound == 1 and holds
    e1 = echelonize(BitMatrix.from_strings(["10"]))
    prob, bound, holds = check_membership_bound(BiasedVectorModel(2, 0.3), e1)
    assert prob == pytest.approx(0.7, rel=1e-14) and bound == pytest.approx(0.7) and holds


def test_membership_validation():
    with pytest.raises(ValueError):
        BiasedVectorModel(3, 0.0)
    with pytest.raises(ValueError):
        membership_probability(BiasedVectorModel(3, 0.5), echelonize(BitMatrix.identity(4)))
    with pytest.raises(CapacityError):
        membership_probability(BiasedVectorModel(25, 0.5), echelonize(BitMatrix.identity(25)))


def test_membership_matches_enumeration(rng):
    for _ in range(60):
        n = int(rng.integers(1, 11))
        k = int(rng.integers(0, n + 1))
        p = float(rng.uniform(0.05, 0.95))
        basis = random_subspace(n, k, rng)
        assert basis.dimension == k
        got = membership_probability(BiasedVectorModel(n, p), basis)
        assert got == pytest.approx(membership_by_enumeration(n, p, basis), rel=1e-12)


def test_membership_at_half_is_exact_power_of_two(rng):
    for n in range(1, 16):
        for k in range(0, n + 1):
            basis = random_subspace(n, k, rng)
            prob, bound, holds = check_membership_bound(BiasedVectorModel(n, 0.5), basis)
            assert prob == 2.0 ** (k - n) == bound
            assert holds


def test_sample_random_matrix_extremes():
    assert sample_random_matrix(3, 5, 0.0, 1) == BitMatrix.zeros(3, 5)
    assert sample_random_matrix(3, 5, 1.0, 1) == BitMatrix.ones(3, 5)
    assert sample_random_matrix(0, 4, 0.5, 1).n_rows == 0
    assert sample_random_matrix(2, 0, 0.5, 1) == BitMatrix.zeros(2, 0)
    assert sample_random_matrix(4, 4, 0.5, 9) == sample_random_matrix(4, 4, 0.5, 9)


def test_sample_random_matrix_mean():
    counts = np.array([sample_random_matrix(4, 4, 0.5, derive_seed(3, i)).nnz() for i in range(10_000)])
    sd = math.sqrt(16 * 0.25 / 10_000)
    assert abs(counts.mean() - 8) <= 4 * sd


def test_exhaustive_rank_distribution():
    assert exhaustive_rank_distribution(2, 2) == {0: 1, 1: 9, 2: 6}
    dist = exhaustive_rank_distribution(3, 3)
    assert sum(dist.values()) == 512
    # invertible 3x3 matrices over GF(2): (8-1)(8-2)(8-4)
    assert dist[3] == 168
    with pytest.raises(CapacityError):
        exhaustive_rank_distribution(5, 5)


def test_sampler_chi_square_small():
    stat, crit, observed = sampler_chi_square(2, 3, 20_000, seed=4)
    assert sum(observed.values()) == 20_000
    assert stat < crit


def test_clopper_pearson():
    assert clopper_pearson_upper(0, 0) == 1.0
    assert clopper_pearson_upper(5, 5) == 1.0
    # zero successes: 1 - 0.01^(1/N)
    assert clopper_pearson_upper(0, 100) == pytest.approx(1 - 0.01 ** (1 / 100), rel=1e-9)
    assert clopper_pearson_upper(3, 100) > 0.03


def test_defect_config_validation():
    cfg = DefectTailConfig(60, 0.5, 12.6, 10)
    assert cfg.alpha == 13 and cfg.eta == 0.5
    with pytest.raises(ValueError):
        DefectTailConfig(12, 0.5, 12.6, 10)
    with pytest.raises(ValueError):
        DefectTailConfig(12, 1.0, 1.0, 10)
    with pytest.raises(ValueError):
        DefectTailConfig(12, 0.5, -1.0, 10)


def test_defect_tail_small_n_vacuous_bound():
    rec = defect_tail_experiment(DefectTailConfig(12, 0.5, 1.0, 500, seed=2))
    assert rec.alpha == 1
    assert 0 <= rec.empirical_freq <= 1
    assert rec.paper_bound == 2.0 ** ((0.5 - 1 / 6) * 12)


def test_defect_tail_frequency_respects_bound():
    # bound below 1 needs C > 3; the check is bound + 3 standard errors
    for n, C, p in [(24, 4.0, 0.5), (30, 3.5, 0.5), (45, 4.0, 0.3)]:
        samples = 2000
        rec = defect_tail_experiment(DefectTailConfig(n, p, C, samples, seed=n))
        assert rec.paper_bound <= 1
        se = math.sqrt(max(rec.paper_bound * (1 - rec.paper_bound), 1e-12) / samples)
        assert rec.empirical_freq <= rec.paper_bound + 3 * se
        assert rec.clopper_pearson_ucl >= rec.empirical_freq


def test_defect_tail_is_deterministic():
    cfg = DefectTailConfig(20, 0.5, 4.0, 300, seed=8)
    assert defect_tail_experiment(cfg) == defect_tail_experiment(cfg)


def test_dense_sweep_records():
    recs = dense_defect_sweep([12, 15], 0.5, samples=5, seed=1)
    assert [r.n for r in recs] == [12, 15]
    for r in recs:
        assert r.empirical_freq == 0.0
        assert r.paper_bound == 2.0 ** (-0.015 * r.n)
        assert r.alpha == 13


def test_tail_csv(tmp_path):
    recs = dense_defect_sweep([12], 0.5, samples=3)
    path = tmp_path / "tail.csv"
    write_tail_csv(recs, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_COLUMNS == [
        "n", "p", "C", "alpha", "samples", "empirical_freq", "clopper_pearson_ucl", "paper_bound",
    ]
    assert float(rows[1][-1]) == 2.0 ** (-0.015 * 12)
