"""Shared corpus builders and naive reference implementations."""

from __future__ import annotations

from itertools import combinations

from kgc import Graph, SplitMix64, random_connected, random_tree


def small_graph_corpus(count: int, max_n: int, seed: int, max_m: int | None = None):
    """Deterministic mix of random connected graphs with n in [4, max_n]."""
    rng = SplitMix64(seed)
    out = []
    while len(out) < count:
        n = 4 + rng.below(max_n - 3)
        cap = n * (n - 1) // 2
        if max_m is not None:
            cap = min(cap, max_m)
        m = (n - 1) + rng.below(cap - (n - 1) + 1)
        out.append(random_connected(n, m, rng.next_u64()))
    return out


def tree_corpus(count: int, min_n: int, max_n: int, seed: int):
    rng = SplitMix64(seed)
    return [
        random_tree(min_n + rng.below(max_n - min_n + 1), rng.next_u64())
        for _ in range(count)
    ]


def naive_delta_doubled(D) -> int:
    """Reference four-point hyperbolicity: plain quadruple loop."""
    d = D.d
    best = 0
    for u, v, w, x in combinations(range(D.n), 4):
        sums = sorted(
            (
                int(d[u, v]) + int(d[w, x]),
                int(d[u, w]) + int(d[v, x]),
                int(d[u, x]) + int(d[v, w]),
            )
        )
        best = max(best, sums[2] - sums[1])
    return best


def naive_family_eccentricity(D, paths) -> int:
    members = [v for p in paths for v in p]
    return max(min(int(D.d[v, x]) for x in members) for v in range(D.n))


def graph_key(g: Graph):
    return (g.n, tuple(g.edges()))
