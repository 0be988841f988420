"""Shallow pairings: partitioning an even vertex profile into pairs that all
look "close to geodesic" from one apex vertex.

A pairing of an even profile is gamma-shallow when some apex v satisfies
(x|y)_v <= gamma for every pair {x,y}; small Gromov products mean v lies
near a geodesic between x and y, so the k pair-geodesics inherit the
coverage of 2k-1 paths rooted anywhere near v.  Profiles may repeat
vertices; positions are paired, not values, and (x|x)_v = d(x,v) falls
out of the product formula with no special case.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph_core import DistanceMatrix, Graph, HalfInteger
from .geodesics import VertexPath, shortest_path

Profile = Sequence[int]


@dataclass(frozen=True)
class Pairing:
    """A partition of an even profile into pairs, valid at one apex."""

    apex: int
    gamma: HalfInteger
    pairs: tuple[tuple[int, int], ...]


def _check_profile(pi: Profile) -> None:
    if len(pi) < 2 or len(pi) % 2 != 0:
        raise ValueError(f"profile length must be even and >= 2, got {len(pi)}")


def fiber(
    D: DistanceMatrix, u: int, x: int, pi: Profile, tau_hat: HalfInteger
) -> tuple[int, ...]:
    """Profile members y with (x|y)_u >= 2*tau_hat + 1, in profile order.

    Large products flag members whose geodesics to x all steer far from u;
    a good apex is one where every fiber stays small.  One occurrence of x
    itself is skipped (a member is never in its own fiber); any further
    duplicates count, with (x|x)_u = d(x,u).
    """
    d = D.d
    threshold = 2 * tau_hat.doubled + 2  # doubled form of 2*tau_hat + 1
    out = []
    skipped_self = False
    for y in pi:
        if y == x and not skipped_self:
            skipped_self = True
            continue
        if int(d[x, u]) + int(d[u, y]) - int(d[x, y]) >= threshold:
            out.append(y)
    return tuple(out)


def pairing_graph(
    D: DistanceMatrix, v: int, pi: Profile, gamma: HalfInteger
) -> np.ndarray:
    """Boolean adjacency over profile positions: i ~ j iff (pi[i]|pi[j])_v <= gamma.

    Distinct positions holding the same vertex x get (x|x)_v = d(x,v).
    The diagonal is False.
    """
    members = np.asarray(pi, dtype=np.int64)
    dv = D.d[members, v].astype(np.int64)
    cross = D.d[np.ix_(members, members)].astype(np.int64)
    doubled = dv[:, None] + dv[None, :] - cross
    adj = doubled <= gamma.doubled
    np.fill_diagonal(adj, False)
    return adj


def _max_matching(adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum-cardinality matching on a general graph (blossom contraction).

    Deterministic: scan order follows vertex ids and the given adjacency
    order.  Returns mate[v] (-1 if unmatched).
    """
    n = len(adj)
    match = [-1] * n

    def try_augment(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lowest_common_base(a: int, b: int) -> int:
            on_path = [False] * n
            while True:
                a = base[a]
                on_path[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if on_path[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
            while base[v] != b:
                in_blossom[base[v]] = True
                in_blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom to its base
                    cur_base = lowest_common_base(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur_base, to, in_blossom)
                    mark_path(to, cur_base, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur_base
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        u = to
                        while u != -1:
                            pv = parent[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            try_augment(v)
    return match


def _has_perfect_matching(H: np.ndarray, active: Sequence[int]) -> bool:
    if len(active) % 2 != 0:
        return False
    if not active:
        return True
    index = {v: i for i, v in enumerate(active)}
    adj = [[index[w] for w in active if w != v and H[v, w]] for v in active]
    mate = _max_matching(adj)
    return all(x != -1 for x in mate)


def perfect_matching(H: np.ndarray) -> tuple[tuple[int, int], ...] | None:
    """Lexicographically least perfect matching of the position graph, or
    None when no perfect matching exists.

    Existence is decided exactly by blossom matching; the least matching is
    then extracted by fixing, for the lowest free position, the smallest
    partner that keeps the rest matchable.
    """
    size = int(H.shape[0])
    remaining = list(range(size))
    if not _has_perfect_matching(H, remaining):
        return None
    pairs: list[tuple[int, int]] = []
    while remaining:
        i = remaining[0]
        for j in remaining[1:]:
            if H[i, j]:
                rest = [v for v in remaining if v != i and v != j]
                if _has_perfect_matching(H, rest):
                    pairs.append((i, j))
                    remaining = rest
                    break
        else:  # pragma: no cover - excluded by the feasibility invariant
            return None
    return tuple(pairs)


def _pairing_from_positions(
    pi: Profile, apex: int, gamma: HalfInteger, matched: Iterable[tuple[int, int]]
) -> Pairing:
    pairs = sorted(tuple(sorted((pi[i], pi[j]))) for i, j in matched)
    return Pairing(apex=apex, gamma=gamma, pairs=tuple(pairs))


def find_shallow_pairing(
    D: DistanceMatrix, pi: Profile, gamma: HalfInteger
) -> Pairing | None:
    """First vertex (in id order) whose pairing graph at ``gamma`` has a
    perfect matching, together with that matching; None if no vertex works."""
    _check_profile(pi)
    for v in range(D.n):
        H = pairing_graph(D, v, pi, gamma)
        if not H.any(axis=1).all():  # some position isolated: no matching
            continue
        matched = perfect_matching(H)
        if matched is not None:
            return _pairing_from_positions(pi, v, gamma, matched)
    return None


def min_gamma_pairing(D: DistanceMatrix, pi: Profile) -> Pairing:
    """Shallowest pairing: the least gamma (over ascending half-integers)
    admitting an apex and a perfect matching.

    Feasibility only changes at achieved Gromov-product values, so only
    those are probed; the largest product always succeeds (the pairing
    graph is then complete at any apex).
    """
    _check_profile(pi)
    members = np.asarray(pi, dtype=np.int64)
    dv = D.d[members, :].astype(np.int64)  # 2k x n
    cross = D.d[np.ix_(members, members)].astype(np.int64)
    prod = dv[:, None, :] + dv[None, :, :] - cross[:, :, None]  # (i, j, v)
    iu = np.triu_indices(len(members), k=1)
    candidates = np.unique(prod[iu])
    for doubled in candidates:
        pairing = find_shallow_pairing(D, pi, HalfInteger(int(doubled)))
        if pairing is not None:
            return pairing
    raise AssertionError("unreachable: complete pairing graph at max product")


def paths_of_pairing(g: Graph, D: DistanceMatrix, pairing: Pairing) -> tuple[VertexPath, ...]:
    """One canonical geodesic per pair, aligned with ``pairing.pairs``;
    a pair {u,u} yields the single-vertex path (u,)."""
    return tuple(shortest_path(g, D, x, y) for x, y in pairing.pairs)


def total_distance(D: DistanceMatrix, pi: Profile, v: int) -> int:
    """Sum of distances from v to every profile member."""
    return int(sum(int(D.d[v, x]) for x in pi))


def pairing_distance(D: DistanceMatrix, pairing: Pairing | Iterable[tuple[int, int]]) -> int:
    """Sum of pair distances; never exceeds total_distance at any vertex."""
    pairs = pairing.pairs if isinstance(pairing, Pairing) else tuple(pairing)
    return int(sum(int(D.d[x, y]) for x, y in pairs))
