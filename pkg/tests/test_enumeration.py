import itertools

import networkx as nx
import pytest

from assortlab.canonical import canonical_form
from assortlab.enumeration import (
    CacheMissingError,
    CorruptCacheError,
    cache_path,
    degree_classes,
    enumerate_connected,
    enumerate_sequences,
    is_graphical,
    is_graphical_connected,
    load_catalog,
    store_catalog,
)
from assortlab.graph import Graph, degree_sequence, is_connected

KNOWN = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def brute_force_classes(n):
    """Canonical forms of all connected labeled graphs on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
        if is_connected(g):
            forms.add(canonical_form(g)[1])
    return forms


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_catalog_matches_brute_force(n):
    cat = enumerate_connected(n)
    assert set(cat.codes) == brute_force_classes(n)
    assert len(cat) == KNOWN[n]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_catalog_matches_networkx_atlas(n, catalog):
    atlas = [G for G in nx.graph_atlas_g() if G.number_of_nodes() == n and nx.is_connected(G)]
    assert len(catalog(n)) == len(atlas) == KNOWN[n]
    forms = {canonical_form(Graph.from_edges(n, G.edges()))[1] for G in atlas}
    assert forms == set(catalog(n).codes)


def test_catalog_entries_are_connected_canonical_and_sorted(catalog):
    cat = catalog(7)
    assert list(cat.codes) == sorted(cat.codes)
    for code, g in zip(cat.codes, cat.graphs):
        assert is_connected(g)
        assert canonical_form(g) == (7, code)
        assert cat.position(g.relabel([6, 5, 4, 3, 2, 1, 0])) == cat.index[code]


def test_enumerate_range():
    with pytest.raises(ValueError):
        enumerate_connected(0)
    with pytest.raises(ValueError):
        enumerate_connected(13)
    assert enumerate_connected(1).codes == (0,)


# --- degree classes ----------------------------------------------------------


@pytest.mark.parametrize("n,count", [(3, 2), (4, 6), (5, 19), (6, 68), (7, 236)])
def test_class_counts(n, count, catalog):
    assert len(degree_classes(catalog(n))) == count


def test_class_partition_properties(catalog):
    cat = catalog(7)
    classes = degree_classes(cat)
    assert sum(len(c.members) for c in classes) == len(cat)
    for c in classes:
        assert all(degree_sequence(cat.graphs[p]) == c.key for p in c.members)
        assert c.optimal_members and set(c.optimal_members) <= set(c.members)
    keys = [c.key for c in classes]
    assert keys == sorted(keys, reverse=True)


def test_counterexample_one_class_has_seven_members(catalog):
    cls = next(c for c in degree_classes(catalog(7)) if c.key == (5, 5, 5, 4, 4, 3, 2))
    assert len(cls.members) == 7


def test_triangle_class():
    (cls,) = [c for c in degree_classes(enumerate_connected(3)) if c.key == (2, 2, 2)]
    assert len(cls.members) == 1 and cls.optimal_members == cls.members


@pytest.mark.parametrize("n", range(1, 9))
def test_class_keys_equal_sequences(n, catalog):
    assert [c.key for c in degree_classes(catalog(n))] == enumerate_sequences(n)


# --- realizability -------------------------------------------------------------


def test_is_graphical_connected_examples():
    assert is_graphical_connected((5, 4, 4, 4, 4, 3))
    assert not is_graphical_connected((3, 1))
    assert is_graphical((1, 1, 1, 1))
    assert not is_graphical_connected((1, 1, 1, 1))
    assert is_graphical_connected((0,))
    assert not is_graphical_connected(())


@pytest.mark.parametrize("n", range(1, 8))
def test_graphical_predicates_match_networkx(n):
    for d in itertools.combinations_with_replacement(range(n), n):
        d = tuple(sorted(d, reverse=True))
        assert is_graphical(d) == nx.is_graphical(list(d), method="eg")


@pytest.mark.parametrize("n,count", [(2, 1), (5, 19), (6, 68), (7, 236), (8, 863)])
def test_sequence_counts(n, count):
    seqs = enumerate_sequences(n)
    assert len(seqs) == count
    assert seqs == sorted(seqs, reverse=True)
    if n == 2:
        assert seqs == [(1, 1)]


# --- cache ---------------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    cat = enumerate_connected(6)
    path = store_catalog(cat, tmp_path)
    assert path == cache_path(6, tmp_path)
    first = path.read_bytes()
    assert load_catalog(6, tmp_path) == cat
    store_catalog(load_catalog(6, tmp_path), tmp_path)
    assert path.read_bytes() == first
    assert first.splitlines()[0].startswith(b"# n=6 count=112 sha256=")


def test_cache_missing(tmp_path):
    with pytest.raises(CacheMissingError):
        load_catalog(5, tmp_path)
    assert not cache_path(5, tmp_path).exists()


def test_cache_truncated(tmp_path):
    path = store_catalog(enumerate_connected(5), tmp_path)
    data = path.read_text()
    path.write_text(data[: len(data) // 2])
    with pytest.raises(CorruptCacheError):
        load_catalog(5, tmp_path)


def test_cache_bad_header(tmp_path):
    path = cache_path(4, tmp_path)
    path.write_text("garbage\nC~\n")
    with pytest.raises(CorruptCacheError):
        load_catalog(4, tmp_path)


def test_corrupt_cache_regenerates(tmp_path, caplog):
    path = store_catalog(enumerate_connected(5), tmp_path)
    path.write_text(path.read_text().replace("D", "E", 1))
    assert len(enumerate_connected(5, tmp_path)) == 21
    assert "corrupt" in caplog.text
    assert len(load_catalog(5, tmp_path)) == 21


def test_enumerate_populates_cache(tmp_path):
    enumerate_connected(5, tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"catalog-n{k}.g6" for k in range(1, 6)]
