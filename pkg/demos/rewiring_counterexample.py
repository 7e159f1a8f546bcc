"""Walk through the stuck member of class (5,5,5,4,4,3,2).

Prints every valid rewiring of the stuck graph with its change in S-metric,
then the directed meta-graph under each heuristic.
"""

from assortlab.enumeration import degree_classes, get_catalog
from assortlab.graph import s_metric
from assortlab.rewiring import HEURISTICS, build_meta_graph, unreachable_members, valid_rewirings

KEY = (5, 5, 5, 4, 4, 3, 2)


def main():
    cat = get_catalog(7)
    cls = next(c for c in degree_classes(cat) if c.key == KEY)
    mg = build_meta_graph(cls, cat)
    print(f"class {KEY}: {mg.order} members, S-metric {mg.s}, optimum {mg.optimal}")
    for h in HEURISTICS:
        stuck = sorted(unreachable_members(mg, h))
        print(f"  heuristic {h.value}: edges {sorted(mg.directed_edges[h])}, stuck {stuck}")

    v = sorted(unreachable_members(mg, "A"))[0]
    g = mg.graphs[v]
    print(f"\nstuck member {v} (s={s_metric(g)}), edges (1-based):")
    print("  " + " ".join(f"{i + 1}{j + 1}" for i, j in g.edges()))
    print("valid rewirings:")
    for move, _, d in sorted(valid_rewirings(g), key=lambda r: r[2]):
        (a, b), (c, e) = move.removed
        added = " ".join(f"{x + 1}{y + 1}" for x, y in move.added)
        print(f"  remove {a + 1}{b + 1},{c + 1}{e + 1}  add {added}  delta {d:+d}")
    print("every move lowers s, so heuristic A never leaves this graph")


if __name__ == "__main__":
    main()
