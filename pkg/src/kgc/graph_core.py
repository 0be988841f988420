"""Graph representation, I/O, generators, the hop metric, Gromov products,
and four-point hyperbolicity.

Everything here is exact integer arithmetic.  Half-integral quantities
(Gromov products, hyperbolicity, shallowness thresholds) are carried as
doubled integers via :class:`HalfInteger`, so comparisons against
thresholds like ``2*tau + 1/2`` never involve floats.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

import numpy as np

DELTA_VERTEX_CAP = 512

_MASK64 = (1 << 64) - 1


class GraphFormatError(ValueError):
    """Edge-list input that cannot be parsed."""


class GraphValidationError(ValueError):
    """Parsed input that violates the graph invariants."""


class CapExceededError(RuntimeError):
    """An operation would exceed its configured resource cap."""


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An exact multiple of 1/2, stored as its doubled integer value."""

    doubled: int

    @classmethod
    def from_int(cls, value: int) -> HalfInteger:
        return cls(2 * value)

    def __add__(self, other: HalfInteger | int) -> HalfInteger:
        if isinstance(other, HalfInteger):
            return HalfInteger(self.doubled + other.doubled)
        return HalfInteger(self.doubled + 2 * other)

    __radd__ = __add__

    def __sub__(self, other: HalfInteger | int) -> HalfInteger:
        if isinstance(other, HalfInteger):
            return HalfInteger(self.doubled - other.doubled)
        return HalfInteger(self.doubled - 2 * other)

    def __mul__(self, factor: int) -> HalfInteger:
        return HalfInteger(self.doubled * factor)

    __rmul__ = __mul__

    def floor(self) -> int:
        return self.doubled // 2

    def ceil(self) -> int:
        return -((-self.doubled) // 2)

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.doubled // 2)
        return f"{self.doubled}/2"


@dataclass(frozen=True)
class Graph:
    """Immutable simple connected undirected graph on vertices 0..n-1.

    Neighbor lists are sorted ascending; every deterministic tie-break in
    this package leans on that ordering.
    """

    n: int
    m: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 1:
            raise GraphValidationError("graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphValidationError(f"duplicate edge {key}")
            seen.add(key)
            neighbors[u].append(v)
            neighbors[v].append(u)
        g = cls(n=n, m=len(seen), adjacency=tuple(tuple(sorted(ns)) for ns in neighbors))
        if not g._is_connected():
            raise GraphValidationError("graph is not connected")
        return g

    def _is_connected(self) -> bool:
        reached = [False] * self.n
        reached[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if not reached[w]:
                    reached[w] = True
                    count += 1
                    queue.append(w)
        return count == self.n

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for w in self.adjacency[u]:
                if u < w:
                    yield (u, w)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_tree(self) -> bool:
        return self.m == self.n - 1


def load_graph(source: str | bytes | IO) -> Graph:
    """Parse a graph from edge-list text.

    Format: optional '#' comment lines, a header line ``n m``, then one
    ``u v`` line per edge with ``0 <= u < v < n``.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln.strip() for ln in text.splitlines()]
    data = [ln for ln in lines if ln and not ln.startswith("#")]
    if not data:
        raise GraphFormatError("empty input")
    header = data[0].split()
    if len(header) != 2:
        raise GraphFormatError(f"header must be 'n m', got {data[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"non-integer header {data[0]!r}") from exc
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for ln in data[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"non-integer edge line {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphValidationError(f"loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphValidationError(f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    """Edge-list text for ``g``; inverse of :func:`load_graph`."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


class SplitMix64:
    """Tiny splittable 64-bit PRNG; output is stable across Python versions."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def split(self) -> SplitMix64:
        return SplitMix64(self.next_u64())

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphValidationError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphValidationError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0 and leaves 1..leaves."""
    if leaves < 0:
        raise GraphValidationError("star needs leaves >= 0")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(width: int, height: int) -> Graph:
    """width x height grid; vertex (row, col) has id row*width + col."""
    if width < 1 or height < 1:
        raise GraphValidationError("grid needs width, height >= 1")
    edges = []
    for r in range(height):
        for c in range(width):
            v = r * width + c
            if c + 1 < width:
                edges.append((v, v + 1))
            if r + 1 < height:
                edges.append((v, v + width))
    return Graph.from_edges(width * height, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree, decoded from a random Pruefer sequence."""
    if n < 1:
        raise GraphValidationError("tree needs n >= 1")
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = SplitMix64(seed)
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_connected(n: int, m: int, seed: int) -> Graph:
    """Random connected graph: a uniform spanning tree plus m-(n-1) extra edges."""
    if n < 1:
        raise GraphValidationError("graph needs n >= 1")
    if m < n - 1:
        raise GraphValidationError(f"m={m} < n-1={n - 1}: cannot be connected")
    if m > n * (n - 1) // 2:
        raise GraphValidationError(f"m={m} exceeds simple-graph maximum for n={n}")
    rng = SplitMix64(seed)
    tree = random_tree(n, rng.split().next_u64())
    tree_edges = set(tree.edges())
    spare = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in tree_edges
    ]
    rng.shuffle(spare)
    extra = spare[: m - (n - 1)]
    return Graph.from_edges(n, list(tree_edges) + extra)


_GENERATORS = {
    "path": lambda p: path_graph(int(p["n"])),
    "cycle": lambda p: cycle_graph(int(p["n"])),
    "star": lambda p: star_graph(int(p["leaves"])),
    "grid": lambda p: grid_graph(int(p["w"]), int(p["h"])),
    "random_tree": lambda p: random_tree(int(p["n"]), int(p.get("seed", 0))),
    "random_connected": lambda p: random_connected(
        int(p["n"]), int(p["m"]), int(p.get("seed", 0))
    ),
}


def generate(kind: str, **params) -> Graph:
    """Build a named graph family member; deterministic given parameters."""
    if kind not in _GENERATORS:
        raise GraphValidationError(
            f"unknown family {kind!r}; choose from {sorted(_GENERATORS)}"
        )
    try:
        return _GENERATORS[kind](params)
    except KeyError as exc:
        raise GraphValidationError(f"family {kind!r} missing parameter {exc}") from exc


def subdivide(g: Graph, length: int) -> Graph:
    """Replace every edge by a path of ``length`` edges.

    Original vertices keep their ids; chain vertices are appended
    edge-by-edge in lexicographic edge order, so the result is
    reproducible byte-for-byte.
    """
    if length < 1:
        raise GraphValidationError("subdivision length must be >= 1")
    if length == 1:
        return Graph.from_edges(g.n, list(g.edges()))
    edges = []
    nxt = g.n
    for u, v in g.edges():
        prev = u
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph.from_edges(nxt, edges)


# ---------------------------------------------------------------------------
# Metric layer
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop distances as a read-only int32 array."""

    n: int
    d: np.ndarray

    def dist(self, u: int, v: int) -> int:
        return int(self.d[u, v])


def apsp(g: Graph) -> DistanceMatrix:
    """Exact hop distances via one BFS per source."""
    n = g.n
    d = np.full((n, n), -1, dtype=np.int32)
    adj = g.adjacency
    for s in range(n):
        row = d[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = row[u]
            for w in adj[u]:
                if row[w] < 0:
                    row[w] = du + 1
                    queue.append(w)
    d.setflags(write=False)
    return DistanceMatrix(n=n, d=d)


def gromov_product(D: DistanceMatrix, x: int, y: int, z: int) -> HalfInteger:
    """(x|y)_z = (d(x,z) + d(z,y) - d(x,y)) / 2, exactly."""
    d = D.d
    return HalfInteger(int(d[x, z]) + int(d[z, y]) - int(d[x, y]))


def four_point_delta(
    D: DistanceMatrix, *, max_vertices: int = DELTA_VERTEX_CAP
) -> HalfInteger:
    """Smallest delta such that, over every vertex quadruple, the two larger
    of the three pairing distance-sums differ by at most 2*delta.

    Brute force over quadruples, vectorized per fixed pair.  For any
    quadruple the doubled delta is at most twice the distance of either
    half of its largest-sum pairing, so once outer pairs (scanned in
    decreasing distance order) fall below the running maximum nothing can
    improve and the scan stops.
    """
    n = D.n
    if n > max_vertices:
        raise CapExceededError(
            f"four_point_delta cap: n={n} exceeds max_vertices={max_vertices}"
        )
    if n < 4:
        return HalfInteger(0)
    d = D.d.astype(np.int64)
    pairs = [(int(d[a, b]), a, b) for a in range(n) for b in range(a + 1, n)]
    pairs.sort(key=lambda t: -t[0])
    best = 0
    for dab, a, b in pairs:
        if 2 * dab <= best:
            break
        p1 = dab + d
        p2 = d[a][:, None] + d[b][None, :]
        p3 = p2.T
        mx = np.maximum(p1, np.maximum(p2, p3))
        mn = np.minimum(p1, np.minimum(p2, p3))
        # mx - mid, where mid is the middle sum
        diff = int((2 * mx + mn - (p1 + p2 + p3)).max())
        if diff > best:
            best = diff
    return HalfInteger(best)


def tau_hat_from_delta(delta: HalfInteger) -> HalfInteger:
    """Certified thinness upper bound: four times the four-point delta."""
    return HalfInteger(4 * delta.doubled)
