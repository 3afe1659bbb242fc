"""Compile the reference hardness targets and replay them on small graphs.

Prints each compiled pipeline and the oracle answer for K3, C5, P3 and K4,
which should track 3-colorability exactly (yes, yes, yes, no).
"""

import argparse
import sys
import time

from cosetint import (
    FiniteAbelianGroup,
    SubsetS,
    apply_pipeline,
    compile_hardness,
    complete_graph,
    cycle_graph,
    format_pipeline,
    oracle_solve,
    path_graph,
    verify_certificate,
)

TARGETS = [
    ("P", (4,), ((0,), (1,))),
    ("P", (4,), ((0,), (1,), (2,))),
    ("P", (2, 2), ((0, 1), (1, 0), (1, 1))),
    ("Pi", (5,), ((1,), (2,), (4,))),
    ("Pi", (6,), ((1,), (2,), (4,))),
]

GRAPHS = [
    ("K3", complete_graph(3), (1, 2, 3)),
    ("C5", cycle_graph(5), (1, 2, 1, 2, 3)),
    ("P3", path_graph(3), (1, 2, 1)),
    ("K4", complete_graph(4), None),
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=10 ** 7,
                    help="oracle node budget per replayed instance")
    ap.add_argument("--no-selfcheck", action="store_true",
                    help="skip the K3/K4 self-check during compilation")
    args = ap.parse_args(argv)

    failures = 0
    for variant, mods, elems in TARGETS:
        G = FiniteAbelianGroup(mods)
        S = SubsetS.of(G, elems)
        t0 = time.monotonic()
        pipe = compile_hardness(G, S, variant, selfcheck=not args.no_selfcheck)
        dt = time.monotonic() - t0
        print("=" * 72)
        print(f"target: {variant} over {mods}, S = {sorted(S.elements)}  "
              f"(compiled in {dt:.2f}s)")
        print("-" * 72)
        sys.stdout.write(format_pipeline(pipe))
        print("-" * 72)
        for name, graph, coloring in GRAPHS:
            inst, cert = apply_pipeline(pipe, graph, coloring=coloring)
            t0 = time.monotonic()
            res = oracle_solve(inst, S, budget=args.budget)
            dt = time.monotonic() - t0
            want = "yes" if coloring is not None else "no"
            ok = res.kind == want
            certnote = ""
            if cert is not None:
                certnote = (", threaded cert verifies"
                            if verify_certificate(inst, S, cert)
                            else ", THREADED CERT REJECTED")
            print(f"  {name}: t={inst.t:4d}, {len(inst.hgens):3d} gens -> "
                  f"{res.kind} (expected {want}{certnote}) [{dt:.2f}s]")
            if not ok or "REJECTED" in certnote:
                failures += 1
    print("=" * 72)
    if failures:
        print(f"{failures} mismatches")
        return 1
    print("all replayed answers track 3-colorability")
    return 0


if __name__ == "__main__":
    sys.exit(main())
