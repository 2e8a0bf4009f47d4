from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rwrandom.errors import CapacityError
from rwrandom.expansion import (
    best_certificate,
    certified_rw_lower_bound,
    cheeger_alternative,
    cheeger_exact,
    core_candidate,
    degree_tail_sum,
    degree_tail_threshold,
    high_degree_filter,
)
from rwrandom.graph import (
    GnpConfig,
    Graph,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    path_graph,
    sample_gnp,
    star_graph,
)
from rwrandom.width import rank_width

from conftest import random_graph


def phi_by_enumeration(g: Graph) -> Fraction:
    """min e(S, S^c) / min(d(S), d(S^c)) over all proper nonempty S."""
    edges = g.edges.tolist()
    deg = [0] * g.n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    best = None
    for s in range(1, (1 << g.n) - 1):
        cut = sum(1 for u, v in edges if ((s >> u) & 1) != ((s >> v) & 1))
        d_s = sum(deg[v] for v in range(g.n) if (s >> v) & 1)
        val = Fraction(cut, min(d_s, sum(deg) - d_s))
        if best is None or val < best:
            best = val
    return best


def connected_random_graph(rng, n):
    while True:
        g = random_graph(rng, n)
        if len(components(g)) == 1:
            return g


def tail_oracle(c, M):
    """Closed form c(c+1)e^c minus the first M-1 terms, in 60-digit arithmetic."""
    with mpmath.workdps(60):
        c = mpmath.mpf(c)
        head = mpmath.fsum(k * c**k / mpmath.factorial(k - 1) for k in range(1, M))
        return c * (c + 1) * mpmath.e**c - head


def test_cheeger_examples():
    assert cheeger_exact(complete_graph(2)).phi == 1
    assert cheeger_exact(complete_graph(4)).phi == Fraction(2, 3)
    assert cheeger_exact(cycle_graph(6)).phi == Fraction(1, 3)
    assert phi_by_enumeration(complete_graph(4)) == Fraction(2, 3)
    assert phi_by_enumeration(cycle_graph(6)) == Fraction(1, 3)
    assert cheeger_alternative(complete_graph(4)) == Fraction(2, 3)
    assert cheeger_alternative(cycle_graph(6)) == Fraction(1, 3)
    # a path split in the middle: one edge against degree sum 3
    assert cheeger_exact(path_graph(4)).phi == Fraction(1, 3)


def test_cheeger_witness_is_consistent():
    r = cheeger_exact(cycle_graph(6))
    assert 0 in r.witness
    s = set(r.witness)
    cut = sum(1 for u, v in cycle_graph(6).edges.tolist() if (u in s) != (v in s))
    assert cut == r.cut_edges
    assert Fraction(r.cut_edges, min(r.d_S, r.d_comp)) == r.phi


def test_cheeger_rejects_bad_input():
    with pytest.raises(ValueError):
        cheeger_exact(Graph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        cheeger_exact(Graph(1))
    with pytest.raises(CapacityError):
        cheeger_exact(cycle_graph(25))
    with pytest.raises(ValueError):
        cheeger_alternative(disjoint_union(complete_graph(2), complete_graph(2)))


def test_cheeger_matches_enumeration_and_random_walk_form(rng):
    for _ in range(200):
        g = connected_random_graph(rng, int(rng.integers(2, 11)))
        phi = cheeger_exact(g).phi
        assert phi == phi_by_enumeration(g)
        assert phi == cheeger_alternative(g)
        assert 0 < phi <= 1


def test_degree_tail_examples():
    assert degree_tail_threshold(2, 100) == 1
    assert degree_tail_threshold(2, 0.1) == 10
    assert float(tail_oracle(2, 10)) < 0.05 <= float(tail_oracle(2, 9))
    with pytest.raises(ValueError):
        degree_tail_threshold(1, 0.1)
    with pytest.raises(ValueError):
        degree_tail_threshold(2, 0)


@pytest.mark.parametrize("c", [1.5, 2.0, 3.7, 5.0])
def test_degree_tail_sum_matches_closed_form(c):
    for M in (1, 2, 5, 12, 30):
        exact = float(tail_oracle(c, M))
        assert degree_tail_sum(c, M) == pytest.approx(exact, rel=1e-9, abs=1e-300)


@given(st.floats(1.01, 5.0), st.floats(1e-9, 50.0), st.floats(1e-9, 50.0))
def test_threshold_is_monotone_in_eps(c, e1, e2):
    lo, hi = sorted((e1, e2))
    assert degree_tail_threshold(c, hi) <= degree_tail_threshold(c, lo)


def test_high_degree_filter_examples():
    g = sample_gnp(GnpConfig(30, 0.2, 5))
    top = int(g.degrees.max())
    assert high_degree_filter(g, top + 1) == ([], 0)
    x, e = high_degree_filter(g, 1)
    assert x == [v for v in range(g.n) if g.degrees[v] > 0] and e == g.m
    assert high_degree_filter(star_graph(4), 2) == ([0], 4)
    with pytest.raises(ValueError):
        high_degree_filter(g, 0)


def test_certificate_examples():
    k6 = complete_graph(6)
    cert = certified_rw_lower_bound(k6, range(6), 6)
    assert cert.alpha == Fraction(3, 5)
    assert cert.filtered_edge_count == 0
    assert cert.bound == 1 and cert.applicable
    # M = 2 filters every edge of K6, far above the budget
    assert certified_rw_lower_bound(k6, range(6), 2).bound == 0
    cert = certified_rw_lower_bound(complete_graph(2), [0, 1], 2)
    assert (cert.alpha, cert.filtered_edge_count, cert.bound) == (1, 0, 1)
    text = cert.to_text()
    assert text.startswith("certificate\n") and text.endswith("bound 1\n")
    with pytest.raises(ValueError):
        certified_rw_lower_bound(k6, range(6), 0)


def test_certificate_chain_arithmetic():
    cert = certified_rw_lower_bound(complete_graph(6), range(6), 6)
    chain = cert.chain()
    assert chain["balanced_cut_edges_at_least"] == Fraction(6, 5)
    assert chain["filter_budget"] == Fraction(3, 5)
    assert chain["cutrank_at_least"] == Fraction(3, 5) * 6 / (6 * 36)


def test_best_certificate_picks_first_applicable_cap(rng):
    for _ in range(30):
        g = connected_random_graph(rng, int(rng.integers(3, 10)))
        best = best_certificate(g, range(g.n))
        assert best.applicable
        for M in range(1, best.degree_cap):
            assert not certified_rw_lower_bound(g, range(g.n), M).applicable


def test_certificate_is_sound(rng):
    checked = 0
    for _ in range(150):
        n = int(rng.integers(4, 13))
        g = random_graph(rng, n)
        w = core_candidate(g)
        if len(w) < 2:
            continue
        cert = best_certificate(g, w)
        assert cert.bound <= rank_width(g)[0]
        checked += 1
    assert checked > 100


def test_core_candidate():
    assert core_candidate(Graph(0)) == []
    assert core_candidate(path_graph(6)) == []
    g = disjoint_union(cycle_graph(5), Graph(3, [(0, 1)]))
    assert core_candidate(g) == [0, 1, 2, 3, 4]
    big = sample_gnp(GnpConfig(400, 4 / 400, 1))
    w = core_candidate(big)
    assert len(w) == 24
    assert len(components(big.induced(w))) == 1
