import itertools
import json
from collections import deque

import networkx as nx
import pytest

from assortlab.canonical import canonical_form, is_isomorphic
from assortlab.enumeration import degree_classes, enumerate_connected
from assortlab.graph import (
    Graph,
    assortativity_eq2,
    assortativity_newman,
    degree_sequence,
    s_metric,
)
from assortlab.rewiring import (
    HEURISTICS,
    Heuristic,
    RewireMove,
    build_meta_graph,
    count_rewiring_counterexamples,
    delta,
    neighborhood,
    unreachable_members,
    valid_rewirings,
)

from conftest import G0A_TABLE, g0a_edges

G0A = Graph.from_edges(7, [(i - 1, j - 1) for i, j in g0a_edges()])


def find_class(catalog, key):
    return next(c for c in degree_classes(catalog(len(key))) if c.key == key)


def brute_force_rewirings(g):
    """Independent oracle: every 2-edge swap checked with networkx."""
    G = nx.Graph(list(g.edges()))
    G.add_nodes_from(range(g.n))
    out = []
    for e, f in itertools.combinations(sorted(G.edges()), 2):
        if len(set(e) | set(f)) < 4:
            continue
        (i, j), (k, l) = e, f
        for new in (((i, k), (j, l)), ((i, l), (j, k))):
            if any(G.has_edge(*x) for x in new):
                continue
            H = G.copy()
            H.remove_edges_from([e, f])
            H.add_edges_from(new)
            if nx.is_connected(H):
                out.append(frozenset(tuple(sorted(x)) for x in H.edges()))
    return out


# --- delta ---------------------------------------------------------------


def test_g0a_delta_examples():
    # (43,57) -> (45,37), labels are 1-based
    move = RewireMove(((3, 2), (4, 6)), swap=False)
    assert move.added == ((3, 4), (2, 6))
    assert delta(G0A, move) == -2
    move = RewireMove(((3, 6), (5, 2)), swap=False)
    assert move.added == ((3, 5), (6, 2))
    assert delta(G0A, move) == -1


def test_delta_factorization():
    # (d_i d_k + d_j d_l) - (d_i d_j + d_k d_l) = (d_i - d_l)(d_k - d_j)
    g = Graph.path(6)  # degrees 1,2,2,2,2,1
    move = RewireMove(((0, 1), (3, 4)), swap=False)  # d_j = d_k
    assert delta(g, move) == 0
    star_path = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
    deg = star_path.degrees()
    for (i, j), (k, l) in itertools.permutations(list(star_path.edges()), 2):
        if len({i, j, k, l}) == 4:
            m = RewireMove(((i, j), (k, l)))
            assert delta(star_path, m) == (deg[i] - deg[l]) * (deg[k] - deg[j])


@pytest.mark.parametrize("n", range(4, 8))
def test_rewiring_preserves_degrees_and_delta(n, catalog):
    for g in catalog(n).graphs:
        s0 = s_metric(g)
        d0 = degree_sequence(g)
        for move, h, dlt in valid_rewirings(g):
            assert h.degrees() == g.degrees()
            assert degree_sequence(h) == d0
            assert s_metric(h) - s0 == dlt == delta(g, move)


@pytest.mark.parametrize("n", range(4, 7))
def test_valid_rewirings_match_brute_force(n, catalog):
    for g in catalog(n).graphs:
        ours = sorted(sorted(h.edges()) for _, h, _ in valid_rewirings(g))
        ref = sorted(sorted(e) for e in brute_force_rewirings(g))
        assert ours == ref


def test_small_graphs():
    assert valid_rewirings(Graph.complete(3)) == []
    # the 4-cycle: one option per disjoint pair doubles an edge, the other
    # yields another 4-cycle
    moves = valid_rewirings(Graph.cycle(4))
    assert len(moves) == 2
    assert all(is_isomorphic(h, Graph.cycle(4)) and d == 0 for _, h, d in moves)
    assert len(brute_force_rewirings(Graph.cycle(4))) == 2


def g0a_moves():
    for ((i, j), (k, l)), dlt in G0A_TABLE:
        yield RewireMove(((i - 1, j - 1), (k - 1, l - 1))), dlt


def test_g0a_rows():
    rows = valid_rewirings(G0A)
    assert len(rows) == 12
    assert sorted(d for _, _, d in rows) == [-2] * 6 + [-1] * 6
    valid = {h for _, h, _ in rows}
    listed = set()
    for move, dlt in g0a_moves():
        h = move.apply(G0A)
        assert delta(G0A, move) == dlt
        assert h in valid
        listed.add(h)
        other = RewireMove(move.removed, swap=True)
        (i, j), (k, l) = other.added
        assert G0A.has_edge(i, j) or G0A.has_edge(k, l)
    assert listed == valid


# --- heuristics ----------------------------------------------------------------


def test_g0a_neighborhoods():
    assert neighborhood(G0A, Heuristic.A) == set()
    assert neighborhood(G0A, Heuristic.C) == set()
    best = neighborhood(G0A, Heuristic.B)
    assert best
    assert all(s_metric(h) - s_metric(G0A) == -1 for h in best)


def test_g0b_b_neighborhood_is_itself(catalog):
    cls = find_class(catalog, (4, 4, 3, 3, 2, 1, 1))
    mg = build_meta_graph(cls, catalog(7))
    (stuck,) = unreachable_members(mg, Heuristic.B)
    g0b = mg.graphs[stuck]
    nb = neighborhood(g0b, Heuristic.B)
    assert nb and all(is_isomorphic(h, g0b) for h in nb)


@pytest.mark.parametrize("n", [5, 6])
def test_neighborhoods_against_definition(n, catalog):
    for g in catalog(n).graphs:
        moves = valid_rewirings(g)
        if not moves:
            assert all(neighborhood(g, h) == set() for h in HEURISTICS)
            continue
        top = max(d for _, _, d in moves)
        a = {h for _, h, d in moves if d >= 0}
        b = {h for _, h, d in moves if d == top}
        assert neighborhood(g, "A") == a
        assert neighborhood(g, "B") == b
        assert neighborhood(g, "C") == (a & b)


# --- meta-graphs -----------------------------------------------------------------


def undirected_components(mg):
    adj = {v: set() for v in range(mg.order)}
    for a, b in mg.undirected_edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    seen, queue = {0}, deque([0])
    while queue:
        for w in adj[queue.popleft()] - seen:
            seen.add(w)
            queue.append(w)
    return len(seen) == mg.order


@pytest.mark.parametrize("n", range(3, 8))
def test_meta_graph_invariants(n, catalog):
    cat = catalog(n)
    for cls in degree_classes(cat):
        mg = build_meta_graph(cls, cat)
        assert undirected_components(mg)
        und = set(mg.undirected_edges)
        for h in HEURISTICS:
            for a, b in mg.directed_edges[h]:
                assert (min(a, b), max(a, b)) in und
        assert mg.directed_edges[Heuristic.C] <= mg.directed_edges[Heuristic.A]
        assert mg.directed_edges[Heuristic.C] <= mg.directed_edges[Heuristic.B]
        opt = set(mg.optimal)
        for a, b in mg.directed_edges[Heuristic.A]:
            if a in opt:
                assert mg.s[b] >= mg.s[a] and b in opt
        for h in HEURISTICS:
            assert not (unreachable_members(mg, h) & opt)


@pytest.mark.parametrize("n", range(3, 8))
def test_argmax_sets_coincide(n, catalog):
    cat = catalog(n)
    for cls in degree_classes(cat):
        if len(set(cls.key)) == 1:
            continue
        graphs = [cat.graphs[p] for p in cls.members]
        for f in (s_metric, assortativity_eq2, assortativity_newman):
            vals = [f(g) for g in graphs]
            best = max(vals)
            picked = {p for p, v in zip(cls.members, vals) if abs(v - best) < 1e-9}
            assert picked == set(cls.optimal_members), (cls.key, f.__name__)


def test_singleton_class_meta_graph():
    cat = enumerate_connected(3)
    cls = next(c for c in degree_classes(cat) if c.key == (2, 2, 2))
    mg = build_meta_graph(cls, cat)
    assert mg.order == 1 and not mg.undirected_edges
    assert all(not e for e in mg.directed_edges.values())


def test_counterexample_one_meta_graph(catalog):
    cls = find_class(catalog, (5, 5, 5, 4, 4, 3, 2))
    mg = build_meta_graph(cls, catalog(7))
    assert mg.order == 7
    assert len(mg.optimal) == 1
    stuck_a = unreachable_members(mg, Heuristic.A)
    assert stuck_a == unreachable_members(mg, Heuristic.C)
    (v,) = stuck_a
    assert is_isomorphic(mg.graphs[v], G0A)
    assert unreachable_members(mg, Heuristic.B) == set()
    assert not any(a == v and b != v for a, b in mg.directed_edges[Heuristic.A])


def test_counterexample_two_meta_graph(catalog):
    cls = find_class(catalog, (4, 4, 3, 3, 2, 1, 1))
    mg = build_meta_graph(cls, catalog(7))
    assert len(mg.optimal) == 1
    (v,) = unreachable_members(mg, Heuristic.B)
    assert (v, v) in mg.directed_edges[Heuristic.B]
    assert mg.successors(Heuristic.B, v) == [v]


def test_meta_graph_exports(catalog):
    cls = find_class(catalog, (5, 5, 5, 4, 4, 3, 2))
    mg = build_meta_graph(cls, catalog(7))
    dot = mg.to_dot(Heuristic.A)
    assert dot.startswith("digraph metagraph_A {")
    assert dot.count("label=") == 7
    assert mg.to_dot(alpha="newman").startswith("graph metagraph {")
    doc = json.loads(mg.to_json())
    assert doc["degree_sequence"] == [5, 5, 5, 4, 4, 3, 2]
    assert [Graph.from_graph6(m["graph6"]) for m in doc["members"]] == mg.graphs
    assert set(doc["directed_edges"]) == {"A", "B", "C"}


def test_regular_class_exports_undef():
    cat = enumerate_connected(4)
    cls = next(c for c in degree_classes(cat) if c.key == (3, 3, 3, 3))
    mg = build_meta_graph(cls, cat)
    assert 'label="1:undef"' in mg.to_dot(Heuristic.B)
    assert json.loads(mg.to_json())["members"][0]["alpha_eq2"] is None


# --- counts ----------------------------------------------------------------------


def test_count_rows_small(catalog):
    assert count_rewiring_counterexamples(6, catalog(6)).csv() == "6,112,68,0,0,0,0,0,0"
    assert count_rewiring_counterexamples(7, catalog(7)).csv() == "7,853,236,2,2,1,1,2,2"


def test_count_row_parallel_matches_serial(catalog):
    serial = count_rewiring_counterexamples(6, catalog(6))
    assert count_rewiring_counterexamples(6, catalog(6), jobs=2) == serial


def test_optimal_override_changes_targets(catalog):
    cls = find_class(catalog, (5, 5, 5, 4, 4, 3, 2))
    # pretend the least assortative member were the target
    worst = min(range(len(cls.members)), key=lambda v: cls.s_values[v])
    row = count_rewiring_counterexamples(7, catalog(7), optimal={cls.key: [worst]})
    assert row.counts[Heuristic.A] != (2, 2)
