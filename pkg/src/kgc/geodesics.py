"""Isometric paths: construction, queries, and the rooted covering test.

A path is *isometric* (a geodesic) when its length equals the hop
distance between its endpoints; an *r-path* is an isometric path with r
as one endpoint.  The solver repeatedly needs the predicate

    some r-path comes within distance R of both u and w.

Quantifying over paths directly is hopeless, but the predicate collapses
to a condition on vertex pairs:

    exists a in B_R(u), b in B_R(w) with d(a,b) = |d(r,a) - d(r,b)|.

If such a pair exists, say with d(r,a) + d(a,b) = d(r,b), then gluing a
geodesic r->a to a geodesic a->b yields an isometric r-path through both
a and b, which is within R of u and w.  Conversely, given a witnessing
r-path P, pick on P a vertex a with d(u,a) <= R and a vertex b with
d(w,b) <= R; every vertex of P sits at distance from r equal to its
index, so d(a,b) = |d(r,a) - d(r,b)|.  Hence the reduction is exact.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .graph_core import CapExceededError, DistanceMatrix, Graph

# A path is a tuple of pairwise-adjacent vertex ids; single vertices are
# valid length-0 paths.
VertexPath = tuple[int, ...]


def shortest_path(g: Graph, D: DistanceMatrix, u: int, v: int) -> VertexPath:
    """The canonical u->v geodesic: always step to the smallest-id neighbor
    that gets one hop closer to v."""
    d = D.d
    path = [u]
    cur = u
    while cur != v:
        target = d[cur, v] - 1
        for w in g.adjacency[cur]:  # ascending, so first hit is smallest id
            if d[w, v] == target:
                path.append(w)
                cur = w
                break
    return tuple(path)


def is_isometric(D: DistanceMatrix, path: Sequence[int]) -> bool:
    """True iff consecutive vertices are adjacent and the endpoint distance
    equals the edge count (which forces all intermediate distances too)."""
    if len(path) == 0:
        return False
    d = D.d
    for a, b in zip(path, path[1:]):
        if d[a, b] != 1:
            return False
    return int(d[path[0], path[-1]]) == len(path) - 1


def path_through(g: Graph, D: DistanceMatrix, r: int, a: int, b: int) -> VertexPath:
    """Geodesic from r to b through a; requires d(r,a) + d(a,b) = d(r,b)."""
    d = D.d
    if int(d[r, a]) + int(d[a, b]) != int(d[r, b]):
        raise ValueError(f"{a} does not lie between {r} and {b}")
    return shortest_path(g, D, r, a) + shortest_path(g, D, a, b)[1:]


def covering_reach(
    g: Graph,
    D: DistanceMatrix,
    r: int,
    w: int,
    radius: int,
    aligned: np.ndarray | None = None,
) -> np.ndarray:
    """Boolean vector over vertices u of ``exists_covering_rpath(r, u, w, radius)``.

    ``aligned`` may carry the precomputed n x n matrix
    ``d(a,b) == |d(r,a) - d(r,b)|`` (True when a and b lie on a common
    geodesic through r); callers probing one root many times cache it.
    """
    d = D.d
    dr = d[r]
    ball_w = np.flatnonzero(d[w] <= radius)
    if aligned is not None:
        candidates = aligned[:, ball_w].any(axis=1)
    else:
        sub = d[:, ball_w] == np.abs(dr[:, None] - dr[ball_w][None, :])
        candidates = sub.any(axis=1)
    # u qualifies iff its radius-ball meets the candidate set
    cand_idx = np.flatnonzero(candidates)
    return (d[:, cand_idx] <= radius).any(axis=1)


def exists_covering_rpath(
    g: Graph, D: DistanceMatrix, r: int, u: int, w: int, radius: int
) -> bool:
    """True iff some isometric path ending at r passes within ``radius`` of
    both u and w (via the vertex-pair reduction in the module docstring)."""
    d = D.d
    dr = d[r]
    ball_u = np.flatnonzero(d[u] <= radius)
    ball_w = np.flatnonzero(d[w] <= radius)
    sub = d[np.ix_(ball_u, ball_w)] == np.abs(dr[ball_u][:, None] - dr[ball_w][None, :])
    return bool(sub.any())


def geodesic_alignment(D: DistanceMatrix, r: int) -> np.ndarray:
    """Matrix aligned[a,b] = (a and b lie on a common geodesic through r)."""
    d = D.d
    dr = d[r]
    return d == np.abs(dr[:, None] - dr[None, :])


def family_eccentricity(g: Graph, paths: Iterable[Sequence[int]]) -> int:
    """Smallest R such that the R-balls around the paths' vertices cover the
    whole graph: one multi-source BFS seeded with every path vertex."""
    seeds = {v for p in paths for v in p}
    if not seeds:
        raise ValueError("family_eccentricity needs at least one path")
    dist = [-1] * g.n
    queue = deque()
    for v in sorted(seeds):
        dist[v] = 0
        queue.append(v)
    reached = len(seeds)
    farthest = 0
    while queue:
        u = queue.popleft()
        du = dist[u]
        for x in g.adjacency[u]:
            if dist[x] < 0:
                dist[x] = du + 1
                farthest = du + 1
                reached += 1
                queue.append(x)
    if reached != g.n:
        raise ValueError("paths contain out-of-range vertices")
    return farthest


def enumerate_geodesics(
    g: Graph, D: DistanceMatrix, s: int, t: int, cap: int = 1_000_000
) -> list[VertexPath]:
    """All distinct s->t geodesics in lexicographic vertex order.

    Depth-first over the shortest-path DAG; raises CapExceededError as soon
    as more than ``cap`` paths would be produced.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    d = D.d
    out: list[VertexPath] = []
    prefix = [s]

    def descend(cur: int) -> None:
        if cur == t:
            if len(out) >= cap:
                raise CapExceededError(
                    f"more than {cap} geodesics between {s} and {t}"
                )
            out.append(tuple(prefix))
            return
        nxt = d[cur, t] - 1
        for w in g.adjacency[cur]:
            if d[w, t] == nxt:
                prefix.append(w)
                descend(w)
                prefix.pop()

    descend(s)
    return out
