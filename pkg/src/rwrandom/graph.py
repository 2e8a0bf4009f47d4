"""Simple undirected graphs, G(n, p) sampling, cut matrices and edge-list I/O."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .gf2 import BitMatrix, rank_of_rows

# Upper limit on the block of pair gaps drawn at once; the block size is a
# function of (n, p) only, so the stream consumed per seed is fixed.
_GAP_BLOCK = 1 << 20


class GraphFormatError(ValueError):
    """Malformed edge-list input; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Graph:
    """Simple graph on vertices ``0..n-1``.

    Stored as a sorted ``(m, 2)`` edge array with ``u < v``; the packed
    adjacency rows (one Python int per vertex) are built on first use, so
    huge sparse graphs never pay for them.
    """

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self-loops are not allowed")
            e = np.sort(e, axis=1)
            key = np.unique(e[:, 0] * n + e[:, 1])
            e = np.stack([key // n, key % n], axis=1)
        self.n = int(n)
        self.edges = e
        self.edges.setflags(write=False)

    @classmethod
    def _from_sorted(cls, n: int, edges: np.ndarray) -> "Graph":
        # caller guarantees: int64, u < v, lexicographically sorted, unique
        g = cls.__new__(cls)
        g.n = int(n)
        g.edges = edges
        g.edges.setflags(write=False)
        return g

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        n = len(rows)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (rows[u] >> v) & 1]
        return cls(n, edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def rows(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges.tolist():
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)
        deg.setflags(write=False)
        return deg

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        e = self.edges
        data = np.ones(2 * len(e), dtype=np.int8)
        ij = (np.concatenate([e[:, 0], e[:, 1]]), np.concatenate([e[:, 1], e[:, 0]]))
        return sparse.csr_matrix((data, ij), shape=(self.n, self.n))

    def neighbors(self, v: int) -> np.ndarray:
        a = self.csr
        return a.indices[a.indptr[v]:a.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled ``0..k-1`` in ascending vertex order."""
        vs = np.array(sorted(set(int(v) for v in vertices)), dtype=np.int64)
        index = np.full(self.n, -1, dtype=np.int64)
        index[vs] = np.arange(len(vs))
        e = index[self.edges]
        keep = (e[:, 0] >= 0) & (e[:, 1] >= 0)
        return Graph(len(vs), e[keep])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GnpConfig:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide generator: numpy's counter-based Philox keyed by ``seed``."""
    return np.random.Generator(np.random.Philox(int(seed)))


def derive_seed(master: int, index: int) -> int:
    """Per-task seed: first 64-bit word of ``SeedSequence(master, spawn_key=(index,))``."""
    ss = np.random.SeedSequence(int(master), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _pair_from_index(idx: np.ndarray, n: int) -> np.ndarray:
    # row-major order over pairs (i, j), i < j; row i starts at i*n - i*(i+1)/2
    i = np.arange(n, dtype=np.int64)
    starts = i * n - i * (i + 1) // 2
    u = np.searchsorted(starts, idx, side="right") - 1
    v = idx - starts[u] + u + 1
    return np.stack([u, v], axis=1)


def sample_gnp(cfg: GnpConfig) -> Graph:
    """Sample G(n, p).

    Pairs ``(i, j)``, ``i < j``, are scanned in row-major order and the gaps
    between successive edges are geometric with parameter ``p``, which is
    the same law as one independent coin per pair but costs O(edges).
    """
    n, p = cfg.n, cfg.p
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph(n)
    rng = make_rng(cfg.seed)
    mean = total * p
    block = int(min(_GAP_BLOCK, mean + 6 * mean**0.5 + 16))
    chunks = []
    pos = -1
    while True:
        gaps = rng.geometric(p, size=block)
        idx = pos + np.cumsum(gaps)
        hit = idx < total
        chunks.append(idx[hit])
        if not hit.all():
            break
        pos = int(idx[-1])
    idx = np.concatenate(chunks)
    return Graph._from_sorted(n, _pair_from_index(idx, n))


def _check_disjoint(v1, v2) -> tuple[list[int], list[int]]:
    a = sorted(set(int(x) for x in v1))
    b = sorted(set(int(x) for x in v2))
    if set(a) & set(b):
        raise ValueError("vertex sets must be disjoint")
    return a, b


def cut_matrix(g: Graph, v1: Iterable[int], v2: Iterable[int]) -> BitMatrix:
    """Adjacency matrix between disjoint sets, rows/columns in ascending vertex order."""
    a, b = _check_disjoint(v1, v2)
    for x in a + b:
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} out of range")
    rows = []
    for u in a:
        r = g.rows[u]
        rows.append(sum(1 << j for j, w in enumerate(b) if (r >> w) & 1))
    return BitMatrix(len(a), len(b), tuple(rows))


def cutrank(g: Graph, v1: Iterable[int], v2: Iterable[int]) -> int:
    a, b = _check_disjoint(v1, v2)
    mask = 0
    for w in b:
        mask |= 1 << w
    return rank_of_rows(g.rows[u] & mask for u in a)


def cutrank_mask(g: Graph, s: int) -> int:
    """Cutrank of the bipartition ``(S, V - S)`` with ``S`` given as a bitmask."""
    comp = ((1 << g.n) - 1) ^ s
    rows = g.rows
    out = []
    x = s
    while x:
        low = x & -x
        out.append(rows[low.bit_length() - 1] & comp)
        x ^= low
    return rank_of_rows(out)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = tuple((full ^ r) & ~(1 << v) for v, r in enumerate(g.rows))
    return Graph.from_rows(rows)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, listed by smallest vertex."""
    if g.n == 0:
        return []
    _, labels = connected_components(g.csr, directed=False)
    order = np.argsort(labels, kind="stable")
    splits = np.flatnonzero(np.diff(labels[order])) + 1
    comps = [c.tolist() for c in np.split(order, splits)]
    comps.sort(key=lambda c: c[0])
    return comps


def component_labels(g: Graph) -> tuple[int, np.ndarray]:
    if g.n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    return connected_components(g.csr, directed=False)


def classify_component(g: Graph, comp: Iterable[int]) -> str:
    """``"tree"``, ``"unicyclic"`` or ``"complex"`` for a connected vertex set."""
    comp = sorted(set(int(v) for v in comp))
    if not comp:
        raise ValueError("empty component")
    h = g.induced(comp)
    k, _ = component_labels(h)
    if k != 1:
        raise ValueError("vertex set is not connected")
    if h.m == h.n - 1:
        return "tree"
    if h.m == h.n:
        return "unicyclic"
    return "complex"


def degree_stats(g: Graph) -> tuple[tuple[int, ...], int, int, int]:
    """(degree sequence, max degree, min degree, degree sum)."""
    deg = g.degrees
    if g.n == 0:
        return (), 0, 0, 0
    return tuple(deg.tolist()), int(deg.max()), int(deg.min()), int(deg.sum())


def k_core(g: Graph, k: int, vertices: Iterable[int] | None = None) -> list[int]:
    """Vertices of the k-core of ``g`` (restricted to ``vertices`` if given)."""
    alive = np.zeros(g.n, dtype=bool)
    if vertices is None:
        alive[:] = True
    else:
        alive[list(vertices)] = True
    a = g.csr
    deg = np.asarray(a[:, alive].sum(axis=1)).ravel() * alive
    stack = list(np.flatnonzero(alive & (deg < k)))
    removed = np.zeros(g.n, dtype=bool)
    while stack:
        v = stack.pop()
        if removed[v]:
            continue
        removed[v] = True
        alive[v] = False
        for w in a.indices[a.indptr[v]:a.indptr[v + 1]]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < k:
                    stack.append(w)
    return np.flatnonzero(alive).tolist()


# -- edge-list files ---------------------------------------------------------

def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    seen = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative vertex or edge count", lineno)
            header = lineno
            n, m = a, b
            continue
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex index out of range for n={n}", lineno)
        if a > b:
            raise GraphFormatError(f"edge must be written as 'u v' with u < v", lineno)
        if (a, b) in seen:
            raise GraphFormatError(f"duplicate edge {a} {b}", lineno)
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header line")
    if len(edges) != m:
        raise GraphFormatError(f"declared {m} edges but found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges.tolist()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


# -- small named graphs used by tests and the CLI ------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges.tolist())
        off += h.n
    return Graph(off, edges)
