"""Greedy wiring heuristic with exhaustive tie-breaking.

The heuristic wires potential edges ("pedges") ``(i, j)``, ``i < j``, in order
of decreasing degree product. Ties left after preferring the most free stubs
at ``i`` and then at ``j`` are all explored breadth-first, and every final
graph is collected.

Two layers implement the same transition rules. :class:`WiringState` with
:func:`wiring_step_candidates` and :func:`apply_pedge` is the readable
step-by-step form; :func:`wire_branches` runs a bitmask version of it that is
fast enough for whole tables.

Guard semantics: a pedge from an attached vertex ``i`` to a detached ``j`` is
always wired and attaches ``j``. Any other pedge is wired only if the tree
condition ``d_Q != 2|Q| - delta_R`` and the cluster condition
``delta_R != 2`` hold on the pre-wiring state. Both conditions talk about
connecting the detached set Q, so by default they are waived once Q is empty;
``guard_empty_q=True`` applies them unconditionally.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, replace
from functools import lru_cache

from ._parallel import pmap
from .enumeration import degree_classes, enumerate_sequences, get_catalog, is_graphical_connected
from .graph import Graph, assortativity_eq2, assortativity_newman, is_connected, s_metric

log = logging.getLogger(__name__)

GUARDS = ("ne", "lt")


class Classification(str, enum.Enum):
    FEASIBLE_OPTIMAL = "feasible-optimal"
    FEASIBLE_SUBOPTIMAL = "feasible-suboptimal"
    INFEASIBLE = "infeasible"


def _check_guard(guard):
    if guard not in GUARDS:
        raise ValueError(f"guard must be one of {GUARDS}, got {guard!r}")


def _guard_allows(d_q, n_q, free_r, guard, guard_empty_q) -> bool:
    if n_q == 0 and not guard_empty_q:
        return True
    if guard == "ne":
        tree_ok = d_q != 2 * n_q - free_r
    else:
        # strict reading of the prose: refuse when wiring leaves d_Q < 2|Q| - delta_R
        tree_ok = not d_q < 2 * n_q - (free_r - 2)
    return tree_ok and free_r != 2


@dataclass(frozen=True)
class WiringState:
    """Partial wiring. ``attached`` is R as a vertex bitmask; Q is its complement.

    ``pool`` is the set of remaining pedges.
    """

    target: tuple[int, ...]
    adj: tuple[int, ...]
    attached: int
    pool: frozenset

    @classmethod
    def initial(cls, target) -> "WiringState":
        target = tuple(target)
        n = len(target)
        pool = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
        return cls(target, (0,) * n, 1, pool)

    @property
    def n(self) -> int:
        return len(self.target)

    @property
    def residual(self) -> tuple[int, ...]:
        return tuple(d - row.bit_count() for d, row in zip(self.target, self.adj))

    @property
    def detached(self) -> int:
        return ((1 << self.n) - 1) & ~self.attached

    def in_attached(self, v: int) -> bool:
        return bool(self.attached >> v & 1)

    @property
    def wired_edges(self) -> frozenset:
        return frozenset(Graph(self.n, self.adj).edges())

    def graph(self) -> Graph:
        return Graph(self.n, self.adj)


def wiring_step_candidates(state: WiringState) -> tuple[WiringState, list[tuple[int, int]]]:
    """One selection round.

    Returns the state with saturated maximum-product pedges dropped from the
    pool, and the tie set left after preferring free stubs at ``i`` then at
    ``j``. An empty tie set means the round only pruned the pool.
    """
    d = state.target
    top = max(d[i] * d[j] for i, j in state.pool)
    best = [p for p in state.pool if d[p[0]] * d[p[1]] == top]
    free = state.residual
    dead = {p for p in best if free[p[0]] * free[p[1]] == 0}
    live = [p for p in best if p not in dead]
    if dead:
        state = replace(state, pool=state.pool - dead)
    if not live:
        return state, []
    hi = max(free[i] for i, _ in live)
    live = [p for p in live if free[p[0]] == hi]
    hj = max(free[j] for _, j in live)
    return state, sorted(p for p in live if free[p[1]] == hj)


def apply_pedge(state: WiringState, p: tuple[int, int], guard: str = "ne",
                guard_empty_q: bool = False) -> WiringState:
    """Consider pedge ``p``: wire it if allowed, and always drop it from the pool."""
    i, j = p
    pool = state.pool - {p}
    if state.in_attached(i) and not state.in_attached(j):
        return WiringState(state.target, _wire(state.adj, i, j), state.attached | 1 << j, pool)
    free = state.residual
    q = [k for k in range(state.n) if not state.in_attached(k)]
    d_q = sum(state.target[k] for k in q)
    free_r = sum(free[k] for k in range(state.n) if state.in_attached(k))
    if _guard_allows(d_q, len(q), free_r, guard, guard_empty_q):
        return WiringState(state.target, _wire(state.adj, i, j), state.attached, pool)
    return replace(state, pool=pool)


def _wire(adj, i, j):
    rows = list(adj)
    rows[i] |= 1 << j
    rows[j] |= 1 << i
    return tuple(rows)


def wire_branches_reference(d, guard: str = "ne", guard_empty_q: bool = False) -> set[Graph]:
    """Straightforward BFS over :class:`WiringState`; slow, used as a cross-check."""
    _check_guard(guard)
    start = WiringState.initial(d)
    seen = {(start.adj, start.attached, start.pool)}
    queue = deque([start])
    results = set()
    while queue:
        state = queue.popleft()
        while state.pool:
            state, ties = wiring_step_candidates(state)
            if not ties:
                continue
            if len(ties) == 1:
                state = apply_pedge(state, ties[0], guard, guard_empty_q)
                continue
            for p in ties:
                child = apply_pedge(state, p, guard, guard_empty_q)
                key = (child.adj, child.attached, child.pool)
                if key not in seen:
                    seen.add(key)
                    queue.append(child)
            state = None
            break
        if state is not None:
            results.add(state.graph())
    return results


class _Engine:
    """Bitmask form of the tie-break search.

    Pedges are numbered by decreasing degree product (then lexicographically),
    so the maximum-product set of a pool is the run of its lowest set bit's
    product level.
    """

    def __init__(self, d, guard="ne", guard_empty_q=False):
        _check_guard(guard)
        self.d = d = tuple(d)
        self.n = n = len(d)
        pedges = sorted(((i, j) for i in range(n) for j in range(i + 1, n)),
                        key=lambda p: (-d[p[0]] * d[p[1]], p))
        prod = [d[i] * d[j] for i, j in pedges]
        level = {}
        for k, pr in enumerate(prod):
            level[pr] = level.get(pr, 0) | 1 << k
        self.level = [level[pr] for pr in prod]
        self.pi = [p[0] for p in pedges]
        self.pj = [p[1] for p in pedges]
        self.touch = [0] * n
        for k, (i, j) in enumerate(pedges):
            self.touch[i] |= 1 << k
            self.touch[j] |= 1 << k
        self.npedges = len(pedges)
        self.guard = guard
        self.guard_empty_q = guard_empty_q

    def _children(self, adj, attached, pool):
        """Advance deterministically to the next real branching point.

        Returns ``(None, final_adj)`` when the pool runs out, otherwise
        ``(children, None)`` with at least two child states.
        """
        d, n, pi, pj = self.d, self.n, self.pi, self.pj
        free = [d[v] - adj[v].bit_count() for v in range(n)]
        while pool:
            low = (pool & -pool).bit_length() - 1
            m = pool & self.level[low]
            live = []
            while m:
                b = m & -m
                k = b.bit_length() - 1
                m ^= b
                if free[pi[k]] and free[pj[k]]:
                    live.append(k)
                else:
                    pool &= ~b
            if not live:
                continue
            hi = max(free[pi[k]] for k in live)
            live = [k for k in live if free[pi[k]] == hi]
            hj = max(free[pj[k]] for k in live)
            ties = [k for k in live if free[pj[k]] == hj]
            allowed = None
            kids = []
            for k in ties:
                i, j = pi[k], pj[k]
                rest = pool & ~(1 << k)
                if attached >> i & 1 and not attached >> j & 1:
                    kids.append((_wire(adj, i, j), attached | 1 << j, self._prune(rest, free, i, j)))
                    continue
                if allowed is None:
                    allowed = self._allowed(attached, free)
                if allowed:
                    kids.append((_wire(adj, i, j), attached, self._prune(rest, free, i, j)))
                else:
                    kids.append((adj, attached, rest))
            if len(kids) > 1:
                return kids, None
            adj, attached, pool = kids[0]
            free = [d[v] - adj[v].bit_count() for v in range(n)]
        return None, adj

    def _allowed(self, attached, free):
        """Guard verdict for non-attaching pedges; it depends on the state only."""
        d_q = n_q = free_r = 0
        for v in range(self.n):
            if attached >> v & 1:
                free_r += free[v]
            else:
                d_q += self.d[v]
                n_q += 1
        return _guard_allows(d_q, n_q, free_r, self.guard, self.guard_empty_q)

    def _prune(self, pool, free, i, j):
        # Pedges at a vertex that just filled up can never be wired; the loop
        # would only discard them later. Dropping them now merges states that
        # differ in nothing else.
        if free[i] == 1:
            pool &= ~self.touch[i]
        if free[j] == 1:
            pool &= ~self.touch[j]
        return pool

    def run(self, stop=None) -> set[tuple[int, ...]]:
        """All final adjacency tuples; returns early once ``stop(adj)`` holds.

        The full search is breadth-first. With ``stop`` it goes depth-first so
        that leaves show up early; the complete result set does not depend on
        the exploration order because states are deduplicated.
        """
        start = ((0,) * self.n, 1, (1 << self.npedges) - 1)
        seen = {start}
        queue = deque([start])
        take = queue.popleft if stop is None else queue.pop
        results = set()
        while queue:
            kids, final = self._children(*take())
            if kids is None:
                if final not in results:
                    results.add(final)
                    if stop is not None and stop(final):
                        return results
                continue
            for kid in kids:
                if kid not in seen:
                    seen.add(kid)
                    queue.append(kid)
        return results


def wire_branches(d, guard: str = "ne", guard_empty_q: bool = False) -> set[Graph]:
    """Final graphs of every tie-breaking branch of the heuristic for ``d``."""
    n = len(d)
    return {Graph(n, adj) for adj in _Engine(d, guard, guard_empty_q).run()}


@lru_cache(maxsize=None)
def _class_max_s(n: int) -> dict:
    return {c.key: c.max_s for c in degree_classes(get_catalog(n))}


def class_max_s(d) -> int:
    """Largest S-metric over connected graphs with degree sequence ``d``."""
    d = tuple(sorted(d, reverse=True))
    return _class_max_s(len(d))[d]


def _feasible(g: Graph, d) -> bool:
    # Feasibility is judged on degrees alone. The guards do not fully rule out
    # disconnected results, so optimality additionally asks for connectivity.
    return g.degrees() == d


def _optimal(g: Graph, d, max_s) -> bool:
    return g.degrees() == d and s_metric(g) == max_s and is_connected(g)


@dataclass(frozen=True)
class WiringOutcome:
    target: tuple[int, ...]
    results: frozenset
    classification: Classification
    feasible: tuple = ()
    max_s: int | None = None

    @property
    def best(self) -> Graph | None:
        """Most assortative feasible result, connected ones first.

        Ties are broken by the smaller edge list.
        """
        if not self.feasible:
            return None
        return min(self.feasible, key=lambda g: (not is_connected(g), -s_metric(g), list(g.edges())))


def _validated(d) -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if list(d) != sorted(d, reverse=True):
        raise ValueError(f"degree sequence must be non-increasing: {d}")
    if not is_graphical_connected(d):
        raise ValueError(f"no simple connected graph has degree sequence {d}")
    return d


def greedy_wire_all(d, max_s: int | None = None, guard: str = "ne",
                    guard_empty_q: bool = False) -> WiringOutcome:
    """Run the heuristic on ``d`` over all tie-breaks and classify the outcome.

    ``max_s`` is the class optimum; it is looked up from the enumerated
    catalog when not given.
    """
    d = _validated(d)
    results = wire_branches(d, guard, guard_empty_q)
    feasible = tuple(sorted((g for g in results if _feasible(g, d)), key=lambda g: list(g.edges())))
    if not feasible:
        cls = Classification.INFEASIBLE
    else:
        if max_s is None:
            max_s = class_max_s(d)
        if any(_optimal(g, d, max_s) for g in feasible):
            cls = Classification.FEASIBLE_OPTIMAL
        else:
            cls = Classification.FEASIBLE_SUBOPTIMAL
    return WiringOutcome(d, frozenset(results), cls, feasible, max_s)


def classify(d, max_s: int | None = None, guard: str = "ne",
             guard_empty_q: bool = False) -> Classification:
    """Classification only; stops exploring once an optimal result turns up."""
    d = _validated(d)
    if max_s is None:
        max_s = class_max_s(d)
    n = len(d)

    def optimal(adj):
        return _optimal(Graph(n, adj), d, max_s)

    results = _Engine(d, guard, guard_empty_q).run(stop=optimal)
    graphs = [Graph(n, a) for a in results]
    if any(optimal(g.adj) for g in graphs):
        return Classification.FEASIBLE_OPTIMAL
    if any(_feasible(g, d) for g in graphs):
        return Classification.FEASIBLE_SUBOPTIMAL
    return Classification.INFEASIBLE


@dataclass(frozen=True)
class WiringRow:
    n: int
    num_sequences: int
    feasibility: int
    optimality: int

    CSV_HEADER = "n,sequences,feasibility,optimality"

    def csv(self) -> str:
        return f"{self.n},{self.num_sequences},{self.feasibility},{self.optimality}"


def _classify_task(task):
    d, max_s, guard, guard_empty_q = task
    return classify(d, max_s, guard, guard_empty_q)


def count_wiring_counterexamples(n: int, guard: str = "ne", guard_empty_q: bool = False,
                                 progress=None, jobs: int = 1) -> WiringRow:
    """Count infeasible and feasible-but-suboptimal sequences of order ``n``."""
    _check_guard(guard)
    seqs = enumerate_sequences(n)
    table = _class_max_s(n)
    tasks = [(d, table[d], guard, guard_empty_q) for d in seqs]
    found = pmap(_classify_task, tasks, jobs, progress=progress)
    infeasible = sum(c is Classification.INFEASIBLE for c in found)
    suboptimal = sum(c is Classification.FEASIBLE_SUBOPTIMAL for c in found)
    return WiringRow(n, len(seqs), infeasible, suboptimal)


def alpha_pair(g: Graph) -> tuple[float | None, float | None]:
    return assortativity_eq2(g), assortativity_newman(g)
