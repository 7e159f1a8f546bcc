"""Non-isomorphic connected graphs, degree classes and realizable sequences."""

from __future__ import annotations

import hashlib
import logging
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path

from .canonical import canonical_labeling, graph_from_code, leaf_code
from .graph import MAX_ORDER, Graph, _bits, degree_sequence, s_metric

log = logging.getLogger(__name__)


class CacheMissingError(FileNotFoundError):
    """No cache file exists for the requested order."""


class CorruptCacheError(ValueError):
    """A cache file failed its header or checksum validation."""


@dataclass(frozen=True)
class GraphCatalog:
    """One canonical representative per isomorphism class, sorted by code."""

    n: int
    codes: tuple[int, ...]

    def __len__(self):
        return len(self.codes)

    @cached_property
    def graphs(self) -> list[Graph]:
        return [graph_from_code(self.n, c) for c in self.codes]

    @cached_property
    def index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.codes)}

    def position(self, g: Graph) -> int:
        """Catalog index of the class containing ``g`` (KeyError if absent)."""
        return self.index[canonical_labeling(g)[1]]


@dataclass(frozen=True)
class DegreeClass:
    key: tuple[int, ...]
    members: tuple[int, ...]
    optimal_members: tuple[int, ...]
    s_values: tuple[int, ...] = field(repr=False)

    @property
    def max_s(self) -> int:
        return max(self.s_values)


def _connected_without(rows, n, drop) -> bool:
    full = ((1 << n) - 1) & ~(1 << drop)
    seen = frontier = full & -full
    while frontier:
        reach = 0
        m = frontier
        while m:
            b = m & -m
            reach |= rows[b.bit_length() - 1]
            m ^= b
        frontier = reach & full & ~seen
        seen |= frontier
    return seen == full


def _extend(parent_codes, n):
    """Children of order ``n`` from connected parents of order ``n - 1``.

    A child ``P + v`` is kept only if no non-cut vertex beats ``v`` on the
    invariant (degree, sorted neighbour degrees). Every connected graph keeps
    at least one such construction, since deleting a minimal non-cut vertex
    leaves a connected parent; duplicates are removed by canonical code.
    """
    v = n - 1
    bit = 1 << v
    found = set()
    for code in parent_codes:
        base = graph_from_code(n - 1, code).adj
        for nbrs in range(1, 1 << v):
            rows = list(base)
            rows.append(nbrs)
            for u in _bits(nbrs):
                rows[u] |= bit
            deg = [r.bit_count() for r in rows]
            dv = deg[v]
            fv = None
            keep = True
            for u in range(v):
                du = deg[u]
                if du > dv:
                    continue
                if du == dv:
                    if fv is None:
                        fv = sorted(deg[w] for w in _bits(nbrs))
                    if sorted(deg[w] for w in _bits(rows[u])) >= fv:
                        continue
                if _connected_without(rows, n, u):
                    keep = False
                    break
            if keep:
                found.add(canonical_labeling(Graph(n, tuple(rows)))[1])
    return found


def enumerate_connected(n: int, cache_dir=None) -> GraphCatalog:
    """All simple connected graphs of order ``n`` up to isomorphism.

    With ``cache_dir`` set, existing catalogs are loaded and any order built
    along the way is stored.
    """
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order {n} outside supported range 1..{MAX_ORDER}")
    if cache_dir is not None:
        try:
            return load_catalog(n, cache_dir)
        except CacheMissingError:
            pass
        except CorruptCacheError:
            log.warning("corrupt cache for n=%d, regenerating", n)
    if n == 1:
        catalog = GraphCatalog(1, (0,))
    else:
        parent = enumerate_connected(n - 1, cache_dir)
        log.info("extending %d graphs of order %d", len(parent), n - 1)
        catalog = GraphCatalog(n, tuple(sorted(_extend(parent.codes, n))))
    if cache_dir is not None:
        store_catalog(catalog, cache_dir)
    return catalog


def degree_classes(catalog: GraphCatalog) -> list[DegreeClass]:
    """Partition the catalog by degree sequence, keys in descending order."""
    groups: dict[tuple[int, ...], list[int]] = {}
    svals: dict[tuple[int, ...], list[int]] = {}
    for pos, g in enumerate(catalog.graphs):
        key = degree_sequence(g)
        groups.setdefault(key, []).append(pos)
        svals.setdefault(key, []).append(s_metric(g))
    out = []
    for key in sorted(groups, reverse=True):
        members = groups[key]
        s = svals[key]
        best = max(s)
        opt = tuple(p for p, v in zip(members, s) if v == best)
        out.append(DegreeClass(key, tuple(members), opt, tuple(s)))
    return out


def is_graphical(d) -> bool:
    """Erdos-Gallai test for a simple-graph realization."""
    d = sorted(d, reverse=True)
    n = len(d)
    if sum(d) % 2 or any(x < 0 or x >= max(n, 1) for x in d):
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def is_graphical_connected(d) -> bool:
    """True iff some simple connected graph has degree sequence ``d``."""
    n = len(d)
    if n == 0:
        return False
    if n == 1:
        return tuple(d) == (0,)
    return min(d) >= 1 and sum(d) >= 2 * (n - 1) and is_graphical(d)


def _non_increasing(n, hi):
    if n == 0:
        yield ()
        return
    for first in range(hi, 0, -1):
        for rest in _non_increasing(n - 1, first):
            yield (first,) + rest


def enumerate_sequences(n: int) -> list[tuple[int, ...]]:
    """Connected-realizable non-increasing sequences, in descending lex order."""
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order {n} outside supported range 1..{MAX_ORDER}")
    if n == 1:
        return [(0,)]
    return [d for d in _non_increasing(n, n - 1) if is_graphical_connected(d)]


# --- on-disk cache ---------------------------------------------------------


def cache_path(n: int, cache_dir) -> Path:
    return Path(cache_dir) / f"catalog-n{n}.g6"


def _body(catalog: GraphCatalog) -> str:
    return "".join(g.to_graph6() + "\n" for g in catalog.graphs)


def store_catalog(catalog: GraphCatalog, cache_dir) -> Path:
    """Write ``catalog-n{n}.g6`` atomically (temp file then rename)."""
    path = cache_path(catalog.n, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = _body(catalog)
    digest = hashlib.sha256(body.encode()).hexdigest()
    header = f"# n={catalog.n} count={len(catalog)} sha256={digest}\n"
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    with open(tmp, "w", newline="\n") as fh:
        fh.write(header)
        fh.write(body)
    os.replace(tmp, path)
    return path


def load_catalog(n: int, cache_dir) -> GraphCatalog:
    path = cache_path(n, cache_dir)
    if not path.exists():
        raise CacheMissingError(str(path))
    text = path.read_text()
    header, _, body = text.partition("\n")
    try:
        fields = dict(tok.split("=", 1) for tok in header.lstrip("# ").split())
        hn, count, digest = int(fields["n"]), int(fields["count"]), fields["sha256"]
    except (KeyError, ValueError) as exc:
        raise CorruptCacheError(f"{path}: bad header") from exc
    if hn != n or hashlib.sha256(body.encode()).hexdigest() != digest:
        raise CorruptCacheError(f"{path}: checksum mismatch")
    lines = body.splitlines()
    if len(lines) != count:
        raise CorruptCacheError(f"{path}: expected {count} graphs, found {len(lines)}")
    order = list(range(n))
    codes = []
    for line in lines:
        g = Graph.from_graph6(line)
        codes.append(leaf_code(g.adj, order))
    if codes != sorted(codes):
        raise CorruptCacheError(f"{path}: entries out of canonical order")
    return GraphCatalog(n, tuple(codes))


@lru_cache(maxsize=None)
def get_catalog(n: int) -> GraphCatalog:
    """Process-wide memoized :func:`enumerate_connected` (honours ``ASSORTLAB_CACHE``)."""
    return enumerate_connected(n, os.environ.get("ASSORTLAB_CACHE") or None)
