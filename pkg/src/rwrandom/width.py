"""Exact rank-width and treewidth for small graphs.

Rank-width is computed by a DP over vertex subsets on the cutrank
connectivity function ``f(S) = cutrank(S, V - S)``; the optimal
rank-decomposition is rebuilt from the stored splits.  A brute-force
enumerator over all subcubic trees serves as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import CapacityError
from .graph import Graph, components, cutrank, cutrank_mask

DEFAULT_CAP = 20
# bitmask kernels index 2**n tables; beyond this the tables alone exceed memory
HARD_CAP = 32
BRUTE_FORCE_MAX = 7


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class RankDecomposition:
    """Subcubic tree with a bijection from graph vertices to its leaves."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    leaf_map: dict = field(hash=False)

    def validate(self, n_vertices: int | None = None) -> None:
        nodes = self.n_nodes
        if nodes < 2:
            raise DecompositionError("a rank-decomposition needs at least two leaves")
        if len(self.edges) != nodes - 1:
            raise DecompositionError("tree must have exactly n_nodes - 1 edges")
        adj = [[] for _ in range(nodes)]
        for a, b in self.edges:
            if not (0 <= a < nodes and 0 <= b < nodes) or a == b:
                raise DecompositionError(f"bad tree edge ({a}, {b})")
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != nodes:
            raise DecompositionError("tree is not connected")
        for x in range(nodes):
            if len(adj[x]) not in (1, 3):
                raise DecompositionError(f"node {x} has degree {len(adj[x])}, not 1 or 3")
        leaves = {x for x in range(nodes) if len(adj[x]) == 1}
        targets = list(self.leaf_map.values())
        if len(set(targets)) != len(targets) or set(targets) != leaves:
            raise DecompositionError("leaf_map is not a bijection onto the leaves")
        keys = set(self.leaf_map)
        expected = set(range(n_vertices if n_vertices is not None else len(keys)))
        if keys != expected:
            raise DecompositionError("leaf_map must cover exactly the vertices 0..n-1")

    def edge_sides(self) -> list[int]:
        """For each tree edge, the vertex bitmask on the side of its second endpoint."""
        nodes = self.n_nodes
        adj = [[] for _ in range(nodes)]
        for i, (a, b) in enumerate(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        vertex_of = {leaf: v for v, leaf in self.leaf_map.items()}
        parent = [-1] * nodes
        order = [0]
        parent[0] = 0
        for x in order:
            for y in adj[x]:
                if parent[y] == -1:
                    parent[y] = x
                    order.append(y)
        below = [0] * nodes
        for x in reversed(order):
            if x in vertex_of:
                below[x] |= 1 << vertex_of[x]
            if x != 0:
                below[parent[x]] |= below[x]
        full = (1 << len(self.leaf_map)) - 1
        sides = []
        for a, b in self.edges:
            if parent[b] == a:
                sides.append(below[b])
            else:
                sides.append(full ^ below[a])
        return sides

    def to_text(self) -> str:
        lines = [f"{a} {b}" for a, b in self.edges]
        lines += [f"leaf {leaf} {v}" for v, leaf in sorted(self.leaf_map.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RankDecomposition":
        edges, leaf_map = [], {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if parts[0] == "leaf" and len(parts) == 3:
                    leaf_map[int(parts[2])] = int(parts[1])
                elif len(parts) == 2:
                    edges.append((int(parts[0]), int(parts[1])))
                else:
                    raise ValueError
            except ValueError:
                raise DecompositionError(f"line {lineno}: cannot parse {line!r}") from None
        n_nodes = 1 + max((max(e) for e in edges), default=-1)
        return cls(n_nodes, tuple(edges), leaf_map)


@dataclass(frozen=True)
class WidthReport:
    rank_width: int
    tree_width: int
    cw_lower: int
    cw_upper: int
    decomposition: RankDecomposition | None = None


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if cap > HARD_CAP:
        raise CapacityError(f"{what} cap", cap, HARD_CAP)
    if g.n > cap:
        raise CapacityError(what, g.n, cap)


def _adjacency(g: Graph) -> np.ndarray:
    return np.array(g.rows, dtype=np.int64) if g.n else np.zeros(0, np.int64)


def _rooted_to_decomposition(root, n_vertices: int) -> RankDecomposition:
    # leaves keep their vertex index as node id; internal nodes follow
    edges: list[tuple[int, int]] = []
    next_id = n_vertices

    def build(t) -> int:
        nonlocal next_id
        if isinstance(t, int):
            return t
        a = build(t[0])
        b = build(t[1])
        x = next_id
        next_id += 1
        edges.append((x, a))
        edges.append((x, b))
        return x

    left, right = build(root[0]), build(root[1])
    # the root would have degree 2; suppress it by joining its children
    edges.append((left, right))
    return RankDecomposition(next_id, tuple(edges), {v: v for v in range(n_vertices)})


def _component_rank_width(g: Graph, comp: list[int], want_tree: bool):
    if len(comp) == 1:
        return 0, comp[0]
    h = g.induced(comp)
    cut = _kernels.cut_table(_adjacency(h), h.n)
    width, split = _kernels.rank_width_dp(cut, h.n)
    full = (1 << h.n) - 1
    w = int(width[full])
    if not want_tree:
        return w, None

    def back(s: int):
        if s & (s - 1) == 0:
            return comp[s.bit_length() - 1]
        t = int(split[s])
        return (back(t), back(s ^ t))

    return w, back(full)


def rank_width(g: Graph, want_tree: bool = False, cap: int = DEFAULT_CAP):
    """Exact rank-width; returns ``(width, decomposition or None)``.

    Components are solved separately and their rooted trees are joined under
    new binary nodes; every tree edge that separates whole components has
    cutrank 0, so the width is the maximum over components.
    """
    _check_cap(g, cap, "rank_width")
    if g.n <= 1:
        return 0, None
    best = 0
    roots = []
    for comp in components(g):
        w, root = _component_rank_width(g, comp, want_tree)
        best = max(best, w)
        roots.append(root)
    if not want_tree:
        return best, None
    root = roots[0]
    for other in roots[1:]:
        root = (root, other)
    return best, _rooted_to_decomposition(root, g.n)


def width_of_decomposition(g: Graph, d: RankDecomposition) -> int:
    d.validate(g.n)
    return max(cutrank_mask(g, s) for s in d.edge_sides())


def balanced_separation(g: Graph, d: RankDecomposition):
    """Extract disjoint ``v1, v2`` with ``|v1| = ceil(n/2)``, ``|v2| = ceil(n/3)``.

    Walks the decomposition tree: every edge without a balanced bipartition
    has a side holding fewer than n/3 leaves, and the walk always steps off
    the current node across an edge whose small side contains it.  A tree has
    no directed cycles, so the walk ends at a balanced edge; reaching a node
    with no such edge would contradict the leaf count and is reported.

    Returns ``(v1, v2, rho)`` where ``rho = cutrank(g, v1, v2)``.
    """
    n = g.n
    if n < 2:
        raise ValueError("balanced separation needs at least two vertices")
    d.validate(n)
    sides = d.edge_sides()
    full = (1 << n) - 1
    adj: dict[int, list[tuple[int, int]]] = {}
    for i, (a, b) in enumerate(d.edges):
        adj.setdefault(a, []).append((i, b))
        adj.setdefault(b, []).append((i, a))

    def side_of(i: int, node: int) -> int:
        # vertex mask on the side of edge i that contains `node`
        return sides[i] if node == d.edges[i][1] else full ^ sides[i]

    chosen = None
    node = d.leaf_map[0]
    prev = -1
    for _ in range(d.n_nodes):
        step = None
        for i, other in sorted(adj[node]):
            here = side_of(i, node)
            if 3 * here.bit_count() >= n and 3 * (full ^ here).bit_count() >= n:
                chosen = i
                break
            if 3 * here.bit_count() < n and other != prev:
                step = other
        if chosen is not None:
            break
        if step is None:
            raise RuntimeError("no balanced edge found: decomposition tree is inconsistent")
        prev, node = node, step
    if chosen is None:
        raise RuntimeError("walk did not terminate on a balanced edge")

    a = sides[chosen]
    b = full ^ a
    if 2 * a.bit_count() < n:
        a, b = b, a
    a_list = [v for v in range(n) if (a >> v) & 1]
    b_list = [v for v in range(n) if (b >> v) & 1]
    v1 = a_list[: ceil(n / 2)]
    v2 = b_list[: ceil(n / 3)]
    return v1, v2, cutrank(g, v1, v2)


def tree_width(g: Graph, cap: int = DEFAULT_CAP) -> int:
    _check_cap(g, cap, "tree_width")
    if g.n == 0:
        return 0
    return max(0, int(_kernels.tree_width_dp(_adjacency(g), g.n)))


def width_report(g: Graph, cap: int = DEFAULT_CAP, want_tree: bool = False) -> WidthReport:
    rw, dec = rank_width(g, want_tree=want_tree, cap=cap)
    tw = tree_width(g, cap=cap)
    if rw > ceil(g.n / 3) or rw > tw + 1:
        raise RuntimeError(f"width invariants violated: rw={rw}, tw={tw}, n={g.n}")
    return WidthReport(rw, tw, rw, 2 ** (rw + 1) - 1, dec)


# -- brute-force oracle ---------------------------------------------------------

@lru_cache(maxsize=None)
def _all_tree_sides(n: int) -> tuple[tuple[int, ...], ...]:
    """Edge bipartitions (as leaf masks) of every subcubic tree with leaves 0..n-1.

    Trees are grown by attaching leaf k to the middle of each edge of every
    tree on leaves 0..k-1, which produces each labelled tree exactly once.
    """
    if n == 2:
        trees = [[(0, 1)]]
    else:
        trees = [[(0, n), (1, n), (2, n)]]
        for k in range(3, n):
            grown = []
            for t in trees:
                x = n + k - 2
                for i, (a, b) in enumerate(t):
                    grown.append(t[:i] + t[i + 1:] + [(a, x), (x, b), (x, k)])
            trees = grown
    out = []
    for t in trees:
        d = RankDecomposition(2 * n - 2, tuple(t), {v: v for v in range(n)})
        out.append(tuple(d.edge_sides()))
    return tuple(out)


def brute_force_rank_width(g: Graph) -> int:
    """Minimum over every subcubic tree and leaf labelling of the max edge cutrank."""
    if not 2 <= g.n <= BRUTE_FORCE_MAX:
        raise ValueError(f"brute force supports 2 <= n <= {BRUTE_FORCE_MAX}, got {g.n}")
    memo: dict[int, int] = {}

    def f(s: int) -> int:
        if s not in memo:
            memo[s] = cutrank_mask(g, s)
        return memo[s]

    return min(max(f(s) for s in sides) for sides in _all_tree_sides(g.n))


def count_subcubic_trees(n: int) -> int:
    return len(_all_tree_sides(n))


def induced_rank_width(g: Graph, vertices: Iterable[int], cap: int = DEFAULT_CAP) -> int:
    return rank_width(g.induced(vertices), cap=cap)[0]
