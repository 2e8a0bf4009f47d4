"""Edge expansion and the linear rank-width lower-bound certificate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import CapacityError
from .graph import Graph, component_labels, k_core

CHEEGER_CAP = 24


@dataclass(frozen=True)
class ExpansionReport:
    phi: Fraction
    witness: tuple[int, ...]
    cut_edges: int
    d_S: int
    d_comp: int


@dataclass(frozen=True)
class Certificate:
    core: tuple[int, ...]
    alpha: Fraction
    delta: Fraction
    degree_cap: int
    filtered_edge_count: int
    bound: int

    @property
    def applicable(self) -> bool:
        return self.bound > 0

    def chain(self) -> dict[str, Fraction]:
        """The intermediate quantities of the argument, for auditing."""
        k = len(self.core)
        balanced_cut = self.alpha * k / 3
        return {
            "balanced_cut_edges_at_least": balanced_cut,
            "after_filter_at_least": balanced_cut - self.filtered_edge_count,
            "filter_budget": self.alpha * k / 6,
            "cutrank_at_least": self.alpha * k / (6 * self.degree_cap**2),
        }

    def to_text(self) -> str:
        lines = [
            "certificate",
            f"core_size {len(self.core)}",
            "core " + " ".join(map(str, self.core)),
            f"alpha {self.alpha}",
            f"delta {self.delta}",
            f"degree_cap {self.degree_cap}",
            f"filtered_edge_count {self.filtered_edge_count}",
            f"applicable {int(self.applicable)}",
        ]
        lines += [f"{key} {val} ({float(val):.6g})" for key, val in self.chain().items()]
        lines.append(f"bound {self.bound}")
        return "\n".join(lines) + "\n"


def _require_connected(g: Graph, what: str) -> None:
    if g.n > CHEEGER_CAP:
        raise CapacityError(what, g.n, CHEEGER_CAP)
    if g.n < 2:
        raise ValueError(f"{what} needs at least two vertices")
    k, _ = component_labels(g)
    if k != 1:
        raise ValueError(f"{what} needs a connected graph")


def cheeger_exact(g: Graph) -> ExpansionReport:
    """Exact edgewise Cheeger constant by enumerating every cut.

    ``S`` and its complement give the same ratio, so only sets containing
    vertex 0 are scanned; the witness is the smallest such mask attaining
    the minimum.
    """
    _require_connected(g, "cheeger_exact")
    adj = np.array(g.rows, dtype=np.int64)
    deg = np.asarray(g.degrees, dtype=np.int64)
    cut, den, s = _kernels.cheeger_min(adj, deg, g.n)
    s = int(s)
    witness = tuple(v for v in range(g.n) if (s >> v) & 1)
    d_s = int(deg[list(witness)].sum())
    d_comp = int(deg.sum()) - d_s
    return ExpansionReport(Fraction(int(cut), int(den)), witness, int(cut), d_s, d_comp)


def cheeger_alternative(g: Graph) -> Fraction:
    """Cheeger constant through the random-walk form.

    Minimises ``(1 / pi(S)) * sum_{i in S, j not in S} pi_i * p_ij`` over
    ``0 < pi(S) <= 1/2``, with stationary weights ``pi_v = deg(v) / 2|E|``
    and transition probabilities ``p_ij = 1 / deg(i)`` along edges.  Every
    subset is visited, so both sides of a ``pi(S) = 1/2`` split are seen.
    """
    _require_connected(g, "cheeger_alternative")
    n = g.n
    deg = [int(d) for d in g.degrees]
    two_m = sum(deg)
    pi = [Fraction(d, two_m) for d in deg]
    step = [Fraction(1, d) for d in deg]
    rows = g.rows
    half = Fraction(1, 2)
    best = None
    for s in range(1, (1 << n) - 1):
        mass = sum((pi[v] for v in range(n) if (s >> v) & 1), Fraction(0))
        if mass > half:
            continue
        flow = Fraction(0)
        for i in range(n):
            if (s >> i) & 1:
                out = (rows[i] & ~s).bit_count()
                flow += pi[i] * step[i] * out
        val = flow / mass
        if best is None or val < best:
            best = val
    return best


# -- degree tail ------------------------------------------------------------------

def _tail_terms(c: float, eps: float, min_len: int = 0) -> tuple[list[float], float]:
    """Terms k c^k / (k-1)! for k = 1..K and an upper bound on the sum past K.

    K is extended until k > 2c, the term ratio is below 1/2 and the
    geometric remainder is negligible next to eps.
    """
    log_c = math.log(c)
    terms = []
    k = 0
    while True:
        k += 1
        terms.append(math.exp(math.log(k) + k * log_c - math.lgamma(k)))
        ratio = (k + 1) * c / (k * k)  # t_{k+1}/t_k, decreasing in k
        if k >= min_len and k > 2 * c and ratio < 0.5:
            remainder = terms[-1] * ratio / (1 - ratio)
            if terms[-1] / (1 - ratio) < eps / 2 and remainder < eps * 1e-16:
                return terms, remainder


def degree_tail_sum(c, M: int) -> float:
    """Upper estimate of sum_{k >= M} k c^k / (k-1)!, accurate to rounding."""
    terms, remainder = _tail_terms(float(c), 1e-300, min_len=M)
    return math.fsum(terms[M - 1:]) + remainder


def degree_tail_threshold(c, eps) -> int:
    """Smallest M >= 1 with sum_{k >= M} k c^k / (k-1)! < eps / 2.

    Past ``k > 2c`` consecutive terms shrink by more than half, so the
    series beyond the last computed term is bounded by a geometric tail.
    """
    c = float(c)
    eps = float(eps)
    if not c > 1:
        raise ValueError("c must exceed 1")
    if not eps > 0:
        raise ValueError("eps must be positive")
    terms, remainder = _tail_terms(c, eps)
    for m in range(1, len(terms) + 1):
        if math.fsum(terms[m - 1:]) + remainder < eps / 2:
            return m
    return len(terms) + 1


def high_degree_filter(g: Graph, M: int) -> tuple[list[int], int]:
    """Vertices of degree >= M and the number of edges touching them."""
    if M < 1:
        raise ValueError("M must be at least 1")
    deg = g.degrees
    heavy = deg >= M
    x = np.flatnonzero(heavy).tolist()
    if g.m == 0:
        return x, 0
    touched = heavy[g.edges[:, 0]] | heavy[g.edges[:, 1]]
    return x, int(touched.sum())


def _core_alpha(g: Graph, w: Iterable[int]) -> tuple[tuple[int, ...], Fraction]:
    core = tuple(sorted(set(int(v) for v in w)))
    h = g.induced(core)
    _require_connected(h, "certified_rw_lower_bound")
    return core, cheeger_exact(h).phi


def _certificate(g: Graph, core: tuple[int, ...], alpha: Fraction, M: int) -> Certificate:
    if M < 1:
        raise ValueError("M must be at least 1")
    _, e_x = high_degree_filter(g, M)
    k = len(core)
    if e_x <= alpha * k / 6:
        bound = math.ceil(alpha * k / (6 * M * M))
    else:
        bound = 0
    return Certificate(core, alpha, Fraction(k, g.n), M, e_x, bound)


def certified_rw_lower_bound(g: Graph, w: Iterable[int], M: int) -> Certificate:
    """Rank-width lower bound from an edge-expanding core ``w``.

    With ``alpha = Phi(G[w])``, every split of ``w`` into two parts of size
    at least ``|w|/3`` crosses at least ``alpha |w| / 3`` edges.  If the
    edges touching vertices of degree >= M number at most ``alpha |w| / 6``,
    at least ``alpha |w| / 6`` ones survive in the cut matrix between the
    remaining low-degree vertices, whose rows and columns have fewer than M
    ones; its rank is then at least ``alpha |w| / (6 M^2)``.  Every
    rank-decomposition of ``G[w]`` has such a balanced edge, and rank-width
    does not grow on induced subgraphs, so the rounded-up value bounds
    ``rw(g)``.  When the filter budget is exceeded the bound is 0.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    core, alpha = _core_alpha(g, w)
    return _certificate(g, core, alpha, M)


def best_certificate(g: Graph, w: Iterable[int]) -> Certificate:
    """Certificate for the smallest degree cap M that makes it applicable.

    The bound only shrinks as M grows while the filter budget only gets
    easier to meet, so the first applicable M gives the largest bound.
    M = max degree + 1 filters nothing and is always applicable.
    """
    core, alpha = _core_alpha(g, w)
    top = int(g.degrees.max()) + 1 if g.n else 1
    for M in range(1, top + 1):
        cert = _certificate(g, core, alpha, M)
        if cert.applicable:
            return cert
    return cert


def core_candidate(g: Graph, max_size: int = CHEEGER_CAP) -> list[int]:
    """Heuristic expander candidate: BFS ball in the 2-core of the largest component.

    The ball is rooted at a maximum-degree core vertex (lowest index on
    ties) and visits neighbours in ascending order, so it is connected and
    deterministic.  Returns [] if the largest component has no 2-core.
    """
    if g.n == 0:
        return []
    k, labels = component_labels(g)
    sizes = np.bincount(labels, minlength=k)
    giant = int(np.argmax(sizes))
    members = np.flatnonzero(labels == giant)
    core = k_core(g, 2, members)
    if len(core) < 2:
        return []
    in_core = np.zeros(g.n, dtype=bool)
    in_core[core] = True
    core_arr = np.array(core)
    core_deg = np.array([int(in_core[g.neighbors(v)].sum()) for v in core])
    root = int(core_arr[np.argmax(core_deg)])
    ball = [root]
    seen = {root}
    for v in ball:
        for u in sorted(int(x) for x in g.neighbors(v)):
            if in_core[u] and u not in seen and len(ball) < max_size:
                seen.add(u)
                ball.append(u)
        if len(ball) >= max_size:
            break
    return sorted(ball)
