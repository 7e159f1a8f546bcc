"""Degree-preserving double-edge rewiring and the meta-graphs it induces.

A move takes two disjoint edges ``ij`` and ``kl`` and replaces them by either
``ik, jl`` or ``il, jk``. Moves that create a multi-edge or disconnect the
graph are invalid. Heuristics filter the valid moves by the change in the
S-metric:

* ``A`` keeps moves with non-negative change,
* ``B`` keeps moves attaining the largest change (even if negative),
* ``C`` keeps moves that satisfy both.
"""

from __future__ import annotations

import enum
import json
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations

from ._parallel import pmap
from .canonical import canonical_labeling
from .enumeration import DegreeClass, GraphCatalog, degree_classes, get_catalog
from .graph import Graph, assortativity_eq2, assortativity_newman, is_connected, s_metric

log = logging.getLogger(__name__)


class Heuristic(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"


HEURISTICS = (Heuristic.A, Heuristic.B, Heuristic.C)


@dataclass(frozen=True)
class RewireMove:
    """Replace edges ``(i, j)`` and ``(k, l)``.

    ``swap=False`` adds ``(i, k), (j, l)``; ``swap=True`` adds ``(i, l), (j, k)``.
    """

    removed: tuple[tuple[int, int], tuple[int, int]]
    swap: bool = False

    @property
    def added(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (i, j), (k, l) = self.removed
        if self.swap:
            return (i, l), (j, k)
        return (i, k), (j, l)

    def apply(self, g: Graph) -> Graph:
        return g.with_edges(add=self.added, remove=self.removed)


def delta(g: Graph, move: RewireMove) -> int:
    """Change in S-metric caused by ``move``, from endpoint degrees only."""
    deg = g.degrees()
    (i, j), (k, l) = move.removed
    before = deg[i] * deg[j] + deg[k] * deg[l]
    if move.swap:
        return deg[i] * deg[l] + deg[j] * deg[k] - before
    return deg[i] * deg[k] + deg[j] * deg[l] - before


def _simple_moves(g: Graph):
    """Moves over disjoint edge pairs whose new edges are both absent."""
    adj = g.adj
    deg = g.degrees()
    for (i, j), (k, l) in combinations(list(g.edges()), 2):
        if len({i, j, k, l}) < 4:
            continue
        before = deg[i] * deg[j] + deg[k] * deg[l]
        if not (adj[i] >> k & 1 or adj[j] >> l & 1):
            yield RewireMove(((i, j), (k, l)), False), deg[i] * deg[k] + deg[j] * deg[l] - before
        if not (adj[i] >> l & 1 or adj[j] >> k & 1):
            yield RewireMove(((i, j), (k, l)), True), deg[i] * deg[l] + deg[j] * deg[k] - before


def valid_rewirings(g: Graph) -> list[tuple[RewireMove, Graph, int]]:
    """All valid moves of ``g`` with the rewired (labeled) graph and its delta."""
    out = []
    for move, d in _simple_moves(g):
        h = move.apply(g)
        if is_connected(h):
            out.append((move, h, d))
    return out


def _heuristic_moves(g: Graph, heuristics):
    """Valid moves retained by any of ``heuristics``, tagged with their set.

    Only the moves that can matter are checked for connectivity: those with
    non-negative delta, plus the best valid delta found by scanning in
    descending order.
    """
    cand = sorted(_simple_moves(g), key=lambda md: -md[1])
    want_a = Heuristic.A in heuristics or Heuristic.C in heuristics
    want_b = Heuristic.B in heuristics or Heuristic.C in heuristics
    best = None
    kept = []
    for move, d in cand:
        if best is not None and d < best and (not want_a or d < 0):
            break
        if d < 0 and not want_b:
            break
        h = move.apply(g)
        if not is_connected(h):
            continue
        if best is None:
            best = d
        kept.append((move, h, d))
    out = []
    for move, h, d in kept:
        tags = set()
        if d >= 0 and Heuristic.A in heuristics:
            tags.add(Heuristic.A)
        if d == best and Heuristic.B in heuristics:
            tags.add(Heuristic.B)
        if d >= 0 and d == best and Heuristic.C in heuristics:
            tags.add(Heuristic.C)
        if tags:
            out.append((move, h, d, tags))
    return out


def neighborhood(g: Graph, h: Heuristic) -> set[Graph]:
    """Labeled graphs reachable from ``g`` by one move approved by ``h``."""
    h = Heuristic(h)
    return {res for _, res, _, tags in _heuristic_moves(g, {h}) if h in tags}


@dataclass
class MetaGraph:
    """Rewiring meta-graph on one degree class.

    Vertex ``v`` stands for catalog entry ``cls.members[v]``. Undirected edges
    map an unordered vertex pair (loops included) to the number of labeled
    moves realising it, counted from both ends. Directed edges per heuristic
    are simple ordered pairs, loops included.
    """

    cls: DegreeClass
    graphs: list[Graph]
    undirected_edges: Counter = field(default_factory=Counter)
    directed_edges: dict = field(default_factory=dict)
    s: list[int] = field(default_factory=list)
    alpha_eq2: list = field(default_factory=list)
    alpha_newman: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.graphs)

    targets: list[int] | None = None

    @property
    def optimal(self) -> list[int]:
        """Members maximizing the S-metric (or the overriding ``targets``)."""
        if self.targets is not None:
            return list(self.targets)
        best = max(self.s)
        return [v for v, s in enumerate(self.s) if s == best]

    def successors(self, h: Heuristic, v: int) -> list[int]:
        return sorted(b for a, b in self.directed_edges[Heuristic(h)] if a == v)

    def to_dot(self, h: Heuristic | None = None, alpha: str = "eq2") -> str:
        """DOT text; undirected Taylor meta-graph when ``h`` is None."""
        labels = self.alpha_eq2 if alpha == "eq2" else self.alpha_newman
        name = "metagraph" if h is None else f"metagraph_{Heuristic(h).value}"
        kind, arrow = ("graph", "--") if h is None else ("digraph", "->")
        lines = [f"{kind} {name} {{"]
        for v in range(self.order):
            a = "undef" if labels[v] is None else f"{labels[v]:.5f}"
            lines.append(f'  {v + 1} [label="{v + 1}:{a}"];')
        if h is None:
            edges = sorted(self.undirected_edges)
        else:
            edges = sorted(self.directed_edges[Heuristic(h)])
        for a, b in edges:
            lines.append(f"  {a + 1} {arrow} {b + 1};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        def fmt(x):
            return None if x is None else round(x, 10)

        doc = {
            "n": self.graphs[0].n,
            "degree_sequence": list(self.cls.key),
            "members": [
                {
                    "id": v + 1,
                    "graph6": g.to_graph6(),
                    "s_metric": self.s[v],
                    "alpha_eq2": fmt(self.alpha_eq2[v]),
                    "alpha_newman": fmt(self.alpha_newman[v]),
                    "optimal": v in self.optimal,
                }
                for v, g in enumerate(self.graphs)
            ],
            "undirected_edges": [
                [a + 1, b + 1, m] for (a, b), m in sorted(self.undirected_edges.items())
            ],
            "directed_edges": {
                h.value: [[a + 1, b + 1] for a, b in sorted(self.directed_edges[h])]
                for h in HEURISTICS
            },
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_meta_graph(cls: DegreeClass, catalog: GraphCatalog, full: bool = True) -> MetaGraph:
    """Meta-graph of ``cls``; with ``full=False`` the Taylor edges are skipped.

    The lean variant only canonicalizes rewirings some heuristic keeps, which
    is all the counterexample search needs.
    """
    graphs = [catalog.graphs[p] for p in cls.members]
    local = {catalog.codes[p]: v for v, p in enumerate(cls.members)}
    mg = MetaGraph(cls, graphs)
    mg.s = list(cls.s_values)
    mg.alpha_eq2 = [assortativity_eq2(g) for g in graphs]
    mg.alpha_newman = [assortativity_newman(g) for g in graphs]
    mg.directed_edges = {h: set() for h in HEURISTICS}
    for v, g in enumerate(graphs):
        if full:
            for _, res, _ in valid_rewirings(g):
                w = local[canonical_labeling(res)[1]]
                mg.undirected_edges[(min(v, w), max(v, w))] += 1
        for _, res, _, tags in _heuristic_moves(g, set(HEURISTICS)):
            w = local[canonical_labeling(res)[1]]
            for h in tags:
                mg.directed_edges[h].add((v, w))
    return mg


def unreachable_members(mg: MetaGraph, h: Heuristic) -> set[int]:
    """Vertices with no directed ``h``-path to an optimal vertex."""
    h = Heuristic(h)
    preds: dict[int, list[int]] = {}
    for a, b in mg.directed_edges[h]:
        if a != b:
            preds.setdefault(b, []).append(a)
    seen = set(mg.optimal)
    queue = deque(seen)
    while queue:
        b = queue.popleft()
        for a in preds.get(b, ()):
            if a not in seen:
                seen.add(a)
                queue.append(a)
    return set(range(mg.order)) - seen


@dataclass(frozen=True)
class RewiringRow:
    """One row of the rewiring counterexample table."""

    n: int
    num_graphs: int
    num_sequences: int
    counts: dict  # Heuristic -> (#graphs, #sequences)

    def csv(self) -> str:
        vals = [self.n, self.num_graphs, self.num_sequences]
        for h in HEURISTICS:
            vals.extend(self.counts[h])
        return ",".join(str(v) for v in vals)


RewiringRow.CSV_HEADER = "n,graphs,sequences,A_graphs,A_sequences,B_graphs,B_sequences,C_graphs,C_sequences"


_WORKER: dict = {}


def _init_worker(n, codes):
    _WORKER["catalog"] = GraphCatalog(n, codes)


def _stuck_counts(task):
    cls, targets = task
    mg = build_meta_graph(cls, _WORKER["catalog"], full=False)
    if targets is not None:
        mg.targets = list(targets)
    return [len(unreachable_members(mg, h)) for h in HEURISTICS]


def count_rewiring_counterexamples(n: int, catalog: GraphCatalog | None = None, progress=None,
                                   optimal: dict | None = None, jobs: int = 1) -> RewiringRow:
    """Count graphs (and their degree classes) stuck under each heuristic.

    ``optimal`` optionally maps a degree sequence to the local member indices
    to use as targets instead of the full argmax set, which is handy for
    studying how tie-breaking among equally good members changes the table.
    """
    if catalog is None:
        catalog = get_catalog(n)
    classes = degree_classes(catalog)
    optimal = optimal or {}
    tasks = [(c, optimal.get(c.key)) for c in classes if len(c.members) > 1]
    stuck = pmap(_stuck_counts, tasks, jobs, _init_worker, (catalog.n, catalog.codes), progress)
    counts = {}
    for k, h in enumerate(HEURISTICS):
        counts[h] = (sum(r[k] for r in stuck), sum(1 for r in stuck if r[k]))
    return RewiringRow(n, len(catalog), len(classes), counts)
