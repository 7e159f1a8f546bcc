"""Canonical labeling by partition refinement and individualization.

The search tree is the usual one: refine the degree partition to an equitable
one, individualize each vertex of the first non-singleton cell in turn, refine
again, recurse. Each leaf (a discrete partition) orders the vertices; the
canonical form is the smallest upper-triangle adjacency code over all leaves.
Automorphisms found when two leaves share a code prune sibling branches.
"""

from __future__ import annotations

from .graph import Graph, _bits


def refine(adj, cells):
    """Split ``cells`` until every vertex in a cell sees each cell equally often.

    Cell order depends only on isomorphism-invariant data, so the refinement
    commutes with relabeling.
    """
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups = {}
            for v in c:
                row = adj[v]
                key = tuple([(row & m).bit_count() for m in masks])
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new.append(c)
            else:
                for key in sorted(groups):
                    new.append(groups[key])
        if len(new) == len(cells):
            return new
        cells = new


def _individualize(cells, idx, v):
    c = cells[idx]
    rest = [u for u in c if u != v]
    return cells[:idx] + [[v], rest] + cells[idx + 1:]


def leaf_code(adj, order) -> int:
    """Upper-triangle bits in graph6 column order, first pair most significant."""
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for j in range(1, n):
        row = adj[order[j]]
        col = 0
        for u in _bits(row):
            p = pos[u]
            if p < j:
                col |= 1 << (j - 1 - p)
        code = (code << j) | col
    return code


def _orbit_rep(gens, n, fixed):
    """Union-find orbit representatives under generators fixing ``fixed``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[v] != v for v in fixed):
            continue
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return find


class _Search:
    def __init__(self, adj, n):
        self.adj = adj
        self.n = n
        self.best_code = None
        self.best_order = None
        self.first_order = None
        self.first_code = None
        self.gens = []

    def run(self, cells, prefix):
        cells = refine(self.adj, cells)
        if len(cells) == self.n:
            return self._leaf([c[0] for c in cells], prefix)
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        tried = []
        for v in sorted(cells[idx]):
            if tried and self.gens:
                find = _orbit_rep(self.gens, self.n, prefix)
                rv = find(v)
                if any(find(w) == rv for w in tried):
                    continue
            tried.append(v)
            jump = self.run(_individualize(cells, idx, v), prefix + [v])
            if jump is not None and jump < len(prefix):
                return jump
        return None

    def _leaf(self, order, prefix):
        code = leaf_code(self.adj, order)
        if self.first_order is None:
            self.first_order, self.first_code = order, code
            self.first_prefix = prefix
            self.best_order, self.best_code = order, code
            self.best_prefix = prefix
            return None
        for ref_order, ref_code, ref_prefix in (
            (self.first_order, self.first_code, self.first_prefix),
            (self.best_order, self.best_code, self.best_prefix),
        ):
            if code == ref_code:
                gamma = [0] * self.n
                for a, b in zip(ref_order, order):
                    gamma[a] = b
                self.gens.append(gamma)
                # abandon the child subtree below the common ancestor
                common = 0
                while common < len(prefix) and prefix[common] == ref_prefix[common]:
                    common += 1
                return common
        if code < self.best_code:
            self.best_order, self.best_code = order, code
            self.best_prefix = prefix
        return None


def canonical_labeling(g: Graph) -> tuple[list[int], int, list[list[int]]]:
    """Return ``(order, code, generators)``.

    ``order[i]`` is the vertex placed at canonical position ``i``; ``code`` is
    the minimal leaf code; ``generators`` are automorphisms found on the way
    (not necessarily generating the whole group).
    """
    n = g.n
    if n == 1:
        return [0], 0, []
    s = _Search(g.adj, n)
    s.run([list(range(n))], [])
    return s.best_order, s.best_code, s.gens


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism-class key ``(n, code)``; totally ordered."""
    return g.n, canonical_labeling(g)[1]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)[0]
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def graph_from_code(n: int, code: int) -> Graph:
    """Inverse of :func:`leaf_code` for the identity order."""
    rows = [0] * n
    for j in range(n - 1, 0, -1):
        col = code & ((1 << j) - 1)
        code >>= j
        for p in range(j):
            if col >> (j - 1 - p) & 1:
                rows[p] |= 1 << j
                rows[j] |= 1 << p
    return Graph(n, tuple(rows))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
