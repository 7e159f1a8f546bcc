"""Small labeled simple graphs stored as adjacency bitmasks.

Vertices are ``0..n-1``; the 1-based label of vertex ``v`` is ``v + 1``.
A :class:`Graph` is an immutable value: every mutating helper returns a new
graph, and equality/hash are exact labeled edge-set equality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_ORDER = 12


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph of order ``n`` with bitmask adjacency rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 < self.n <= MAX_ORDER:
            raise ValueError(f"graph order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges ``(i, j)`` with ``i < j`` in lexicographic order."""
        for i, row in enumerate(self.adj):
            for j in _bits(row >> (i + 1)):
                yield i, i + 1 + j

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degrees(self) -> tuple[int, ...]:
        """Degrees indexed by vertex (not sorted)."""
        return tuple(row.bit_count() for row in self.adj)

    def with_edges(self, add=(), remove=()) -> "Graph":
        rows = list(self.adj)
        for i, j in remove:
            rows[i] &= ~(1 << j)
            rows[j] &= ~(1 << i)
        for i, j in add:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return Graph(self.n, tuple(rows))

    def relabel(self, perm) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            mask = 0
            for u in _bits(row):
                mask |= 1 << perm[u]
            rows[perm[v]] = mask
        return Graph(self.n, tuple(rows))

    def to_graph6(self) -> str:
        from .graph6 import encode

        return encode(self)

    @classmethod
    def from_graph6(cls, text: str) -> "Graph":
        from .graph6 import decode

        return decode(text)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def _bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def degree_sequence(g: Graph) -> tuple[int, ...]:
    """Degrees of ``g`` sorted non-increasing."""
    return tuple(sorted(g.degrees(), reverse=True))


def s_metric(g: Graph) -> int:
    """Sum over edges of the product of endpoint degrees."""
    deg = g.degrees()
    total = 0
    for i, row in enumerate(g.adj):
        nb = 0
        for j in _bits(row >> (i + 1)):
            nb += deg[i + 1 + j]
        total += deg[i] * nb
    return total


def assortativity_eq2(g: Graph) -> float | None:
    """Assortativity with vertex-uniform degree moments.

    ``(s(G)/m - E[d_w]^2) / Var(d_w)`` where ``w`` is a uniformly random
    vertex. Returns ``None`` when the variance vanishes (regular graphs) or
    the graph has no edges.
    """
    deg = g.degrees()
    m = g.num_edges
    n = g.n
    mean = sum(deg) / n
    var = sum(d * d for d in deg) / n - mean * mean
    if m == 0 or var <= 1e-12:
        return None
    return (s_metric(g) / m - mean * mean) / var


def assortativity_newman(g: Graph) -> float | None:
    """Pearson correlation of degrees at the two ends of a uniform edge.

    Returns ``None`` when there are no edges or all endpoint degrees agree.
    """
    deg = g.degrees()
    m = g.num_edges
    if m == 0:
        return None
    # each edge is counted in both orientations, so moments use 2m endpoints
    s1 = sum(d * d for d in deg) / (2 * m)
    s2 = sum(d ** 3 for d in deg) / (2 * m)
    var = s2 - s1 * s1
    if var <= 1e-12:
        return None
    return (s_metric(g) / m - s1 * s1) / var


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= g.adj[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    left = set(range(g.n))
    out = []
    while left:
        start = min(left)
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        left -= comp
        out.append(sorted(comp))
    return out
