"""Rooted cover-or-packing greedy and the per-root radius search.

For a root r and radius R, the greedy repeatedly grabs a farthest
still-alive vertex v, records the canonical geodesic r -> v, and kills
every vertex u such that a single r-path passes within R of both u and
v.  Two exits are possible:

* everything dies within 2k-1 picks: the recorded geodesics form a
  rooted cover whose eccentricity exceeds R by at most twice the graph's
  thinness;
* 2k vertices get picked: they form an (r, R)-packing -- no r-path's
  R-ball contains two of them (each pick survived all earlier kill
  sets), so no family of 2k-1 rooted paths can cover at radius R.

Packings survive any radius decrease (balls only shrink), which is what
makes the per-root binary search sound without assuming the greedy is
monotone in R: the packing found just below the returned radius
certifies that every smaller radius fails, for this root and for the
best root overall.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph_core import DistanceMatrix, Graph
from .geodesics import (
    VertexPath,
    exists_covering_rpath,
    geodesic_alignment,
    shortest_path,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootedOutcome:
    """Result of one greedy run: exactly one of cover / packing is set."""

    cover: tuple[VertexPath, ...] | None
    packing: tuple[int, ...] | None

    @property
    def is_cover(self) -> bool:
        return self.cover is not None


@dataclass(frozen=True)
class PackingWitness:
    radius: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class RootedSolution:
    root: int
    radius: int
    cover: tuple[VertexPath, ...]
    packing_witness: PackingWitness | None

    def as_dict(self) -> dict:
        witness = None
        if self.packing_witness is not None:
            witness = {
                "R": self.packing_witness.radius,
                "vertices": list(self.packing_witness.vertices),
            }
        return {
            "root": self.root,
            "R": self.radius,
            "cover": [list(p) for p in self.cover],
            "packing_witness": witness,
        }


class _BallCache:
    """Per-solve cache of boolean ball matrices d <= R, shared across roots."""

    def __init__(self, D: DistanceMatrix):
        self._d = D.d
        self._lock = threading.Lock()
        self._mats: dict[int, np.ndarray] = {}

    def at(self, radius: int) -> np.ndarray:
        with self._lock:
            mat = self._mats.get(radius)
            if mat is None:
                mat = self._d <= radius
                self._mats[radius] = mat
            return mat


def cover_or_packing(
    g: Graph,
    D: DistanceMatrix,
    r: int,
    radius: int,
    k: int,
    *,
    aligned: np.ndarray | None = None,
    ball: np.ndarray | None = None,
) -> RootedOutcome:
    """One greedy run at (root, radius): a rooted cover of at most 2k-1
    geodesics, or a packing of exactly 2k vertices.

    Farthest-first picks, ties to the smallest id.  If the 2k-th pick
    happens the packing is returned even when it emptied the graph; the
    packing is always valid and the cover branch stays below 2k.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k must be in [1, {g.n}], got {k}")
    d = D.d
    if aligned is None:
        aligned = geodesic_alignment(D, r)
    if ball is None:
        ball = d <= radius
    dr = d[r].astype(np.int64)
    alive = np.ones(g.n, dtype=bool)
    picks: list[int] = []
    sigmas: list[VertexPath] = []
    while alive.any() and len(picks) < 2 * k:
        v = int(np.where(alive, dr, -1).argmax())  # argmax takes the lowest id
        picks.append(v)
        sigmas.append(shortest_path(g, D, r, v))
        if len(picks) == 2 * k:
            break  # outcome decided; the kill set no longer matters
        near_geodesic = (aligned & ball[v][None, :]).any(axis=1)
        killed = (ball & near_geodesic[None, :]).any(axis=1)
        alive &= ~killed
    if len(picks) == 2 * k:
        return RootedOutcome(cover=None, packing=tuple(sorted(picks)))
    return RootedOutcome(cover=tuple(sigmas), packing=None)


def verify_packing(
    g: Graph, D: DistanceMatrix, r: int, radius: int, vertices
) -> bool:
    """True iff no single r-path's radius-ball reaches two of the vertices."""
    members = sorted(set(vertices))
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            if exists_covering_rpath(g, D, r, x, y, radius):
                return False
    return True


def scan_root(g: Graph, D: DistanceMatrix, r: int, k: int, upto: int | None = None) -> list[bool]:
    """Linear scan diagnostic: greedy outcome (cover?) for each radius 0..upto."""
    aligned = geodesic_alignment(D, r)
    limit = g.n if upto is None else upto
    return [
        cover_or_packing(g, D, r, radius, k, aligned=aligned).is_cover
        for radius in range(limit + 1)
    ]


def _search_root(
    g: Graph,
    D: DistanceMatrix,
    r: int,
    k: int,
    balls: _BallCache,
    stop_lo=None,
    first_probe: int | None = None,
):
    """Binary search for the least radius at which the greedy covers from r.

    Bracket invariant: packing observed at lo (lo = -1 counts vacuously),
    cover observed at hi (hi = n holds a priori: at radius n a single
    trivial path reaches everything).  Returns (radius, cover, witness),
    or None when ``stop_lo()`` tells us the root cannot win anymore.
    """
    aligned = geodesic_alignment(D, r)
    lo, hi = -1, g.n
    cover_at_hi: tuple[VertexPath, ...] | None = None
    packing_at_lo: tuple[int, ...] | None = None
    while hi - lo > 1:
        if stop_lo is not None:
            threshold = stop_lo()
            if threshold is not None and lo >= threshold:
                return None
        if first_probe is not None and lo < first_probe < hi:
            mid = first_probe
        else:
            mid = (lo + hi) // 2
        first_probe = None
        out = cover_or_packing(g, D, r, mid, k, aligned=aligned, ball=balls.at(mid))
        if out.is_cover:
            hi, cover_at_hi = mid, out.cover
        else:
            lo, packing_at_lo = mid, out.packing
    if cover_at_hi is None:
        out = cover_or_packing(g, D, r, hi, k, aligned=aligned, ball=balls.at(hi))
        cover_at_hi = out.cover
        if cover_at_hi is None:  # pragma: no cover - radius n always covers
            raise AssertionError(f"no cover at radius {hi} from root {r}")
    witness = None
    if hi > 0:
        witness = PackingWitness(radius=hi - 1, vertices=packing_at_lo)
    return hi, cover_at_hi, witness


def min_radius_for_root(
    g: Graph, D: DistanceMatrix, r: int, k: int, *, debug_scan: bool = False
):
    """Least greedy-covering radius for one root, the cover found there,
    and the packing witness one step below (None when the radius is 0)."""
    balls = _BallCache(D)
    radius, cover, witness = _search_root(g, D, r, k, balls)
    if debug_scan:
        outcomes = scan_root(g, D, r, k)
        first = outcomes.index(True)
        if any(
            not outcomes[i] and outcomes[i - 1] for i in range(1, len(outcomes))
        ):
            log.warning("greedy outcome not monotone in radius for root %d", r)
        if first != radius:
            log.warning(
                "root %d: binary search radius %d vs first covering radius %d",
                r,
                radius,
                first,
            )
    return radius, cover, witness


class _Incumbent:
    """Thread-safe (radius, root) minimum with lexicographic replacement."""

    def __init__(self):
        self._lock = threading.Lock()
        self.snapshot: tuple[int, int] | None = None
        self._payload = None

    def offer(self, radius: int, root: int, payload) -> None:
        with self._lock:
            if self.snapshot is None or (radius, root) < self.snapshot:
                self.snapshot = (radius, root)
                self._payload = payload

    def best(self):
        return self._payload


def best_root(
    g: Graph,
    D: DistanceMatrix,
    k: int,
    *,
    prune: bool = True,
    threads: int = 1,
) -> RootedSolution:
    """Search every root; return the minimum radius, ties to the lowest id.

    With pruning on, a root is abandoned once its bracket proves it cannot
    beat the incumbent -- also accounting for ids, so ties still resolve
    exactly as in the unpruned search.  Thread count never changes the
    result, only the schedule.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k must be in [1, {g.n}], got {k}")
    balls = _BallCache(D)
    incumbent = _Incumbent()

    def run_root(r: int) -> None:
        stop_fn = None
        first_probe = None
        if prune:

            def stop_fn() -> int | None:
                snap = incumbent.snapshot
                if snap is None:
                    return None
                radius, holder = snap
                # larger ids lose ties, so they may stop one step earlier
                return radius - 1 if r > holder else radius

            snap = incumbent.snapshot
            if snap is not None:
                first_probe = snap[0] - 1
        res = _search_root(g, D, r, k, balls, stop_fn, first_probe)
        if res is not None:
            radius, cover, witness = res
            incumbent.offer(radius, r, (radius, r, cover, witness))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_root, range(g.n)))
    else:
        for r in range(g.n):
            run_root(r)
    radius, root, cover, witness = incumbent.best()
    return RootedSolution(root=root, radius=radius, cover=cover, packing_witness=witness)
