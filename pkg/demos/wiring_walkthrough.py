"""Replay one branch of the greedy wiring heuristic step by step.

Usage: python demos/wiring_walkthrough.py [degree,sequence]
"""

import sys

from assortlab.graph import assortativity_newman, s_metric
from assortlab.wiring import WiringState, apply_pedge, greedy_wire_all, wiring_step_candidates


def show(p):
    return f"({p[0] + 1},{p[1] + 1})"


def main(argv):
    d = tuple(int(x) for x in argv[0].split(",")) if argv else (5, 4, 4, 4, 4, 3)
    st = WiringState.initial(d)
    step = 0
    while st.pool:
        st, ties = wiring_step_candidates(st)
        if not ties:
            continue
        nxt = apply_pedge(st, ties[0])
        step += 1
        verdict = "wired" if nxt.adj != st.adj else "refused"
        print(f"{step:2d}. ties {' '.join(map(show, ties))} -> {show(ties[0])} {verdict}")
        st = nxt
    print(f"first branch ends with residual stubs {st.residual}")

    out = greedy_wire_all(d)
    print(f"\nall branches: {len(out.results)} distinct graphs, {out.classification.value}")
    if out.best is not None:
        print(f"best: s={s_metric(out.best)} (class max {out.max_s}), "
              f"newman alpha {assortativity_newman(out.best)}")


if __name__ == "__main__":
    main(sys.argv[1:])
