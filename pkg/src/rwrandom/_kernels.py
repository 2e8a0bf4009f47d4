"""numba kernels for the exponential subset loops.

Vertex sets are int64 bitmasks, so every kernel assumes n <= 62.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _rank_rows(rows, k):
    # eliminate on the lowest set bit; vec[j] is zero at every earlier pivot
    vec = np.empty(k, np.int64)
    piv = np.empty(k, np.int64)
    cnt = 0
    for i in range(k):
        r = rows[i]
        for j in range(cnt):
            if r & piv[j]:
                r ^= vec[j]
        if r:
            vec[cnt] = r
            piv[cnt] = r & (-r)
            cnt += 1
    return cnt


@njit(cache=True)
def cut_table(adj, n):
    """cutrank(S, V - S) for every subset S, one byte each."""
    size = np.int64(1) << n
    full = size - 1
    table = np.zeros(size, np.int8)
    rows = np.empty(n, np.int64)
    for s in range(1, size - 1):
        c = full ^ s
        if c < s:
            table[s] = table[c]
            continue
        k = 0
        x = s
        while x:
            low = x & (-x)
            v = 0
            while (np.int64(1) << v) != low:
                v += 1
            rows[k] = adj[v] & c
            k += 1
            x ^= low
        table[s] = _rank_rows(rows, k)
    return table


@njit(cache=True)
def rank_width_dp(cut, n):
    """Subset DP for rank-width.

    width[S] is the best width of a rooted binary tree on leaves S, counting
    the edge above S.  The split stored for S is the smallest mask T (it never
    contains the top bit of S) among the optimal splits.
    """
    size = np.int64(1) << n
    width = np.zeros(size, np.int8)
    split = np.zeros(size, np.int64)
    for s in range(1, size):
        rho = cut[s]
        if s & (s - 1) == 0:
            width[s] = rho
            continue
        top = np.int64(1)
        while top * 2 <= s:
            top *= 2
        rest = s ^ top
        best = 127
        best_t = 0
        t = rest & (-rest)
        while True:
            a = width[t]
            b = width[s ^ t]
            v = a if a > b else b
            if v < best:
                best = v
                best_t = t
                if best <= rho:
                    break
            if t == rest:
                break
            t = (t - rest) & rest
        width[s] = best if best > rho else rho
        split[s] = best_t
    return width, split


@njit(cache=True)
def tree_width_dp(adj, n):
    """f[S] = min over v in S of max(f[S - v], |Q(S - v, v)|), f[0] = -1."""
    size = np.int64(1) << n
    full = size - 1
    f = np.empty(size, np.int8)
    f[0] = -1
    for s in range(1, size):
        best = 127
        x = s
        while x:
            low = x & (-x)
            x ^= low
            r = s ^ low
            if f[r] >= best:
                continue
            # component of v inside G[R + v], then its outside neighbourhood
            reach = low
            nb = 0
            while True:
                nb = 0
                y = reach
                while y:
                    lb = y & (-y)
                    u = 0
                    while (np.int64(1) << u) != lb:
                        u += 1
                    nb |= adj[u]
                    y ^= lb
                grown = reach | (nb & r)
                if grown == reach:
                    break
                reach = grown
            q = _popcount(nb & full & ~(r | low))
            val = f[r] if f[r] > q else q
            if val < best:
                best = val
        f[s] = best
    return f[full]


@njit(cache=True)
def cheeger_min(adj, deg, n):
    """Minimise cut(S) / min(d(S), d(V - S)) over S containing vertex 0.

    Returns (cut, denominator, mask) of the first minimiser in increasing
    mask order; fractions are compared by cross-multiplication.
    """
    size = np.int64(1) << n
    full = size - 1
    best_num = np.int64(-1)
    best_den = np.int64(1)
    best_s = np.int64(0)
    total = np.int64(0)
    for v in range(n):
        total += deg[v]
    for s in range(1, size - 1, 2):
        c = full ^ s
        cut = np.int64(0)
        ds = np.int64(0)
        x = s
        while x:
            low = x & (-x)
            v = 0
            while (np.int64(1) << v) != low:
                v += 1
            cut += _popcount(adj[v] & c)
            ds += deg[v]
            x ^= low
        den = ds if ds < total - ds else total - ds
        if best_num < 0 or cut * best_den < best_num * den:
            best_num = cut
            best_den = den
            best_s = s
    return best_num, best_den, best_s
