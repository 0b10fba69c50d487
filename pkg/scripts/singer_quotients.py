"""Structure of the Singer block quotient for the two orthogonal families.

Prints, for the perpendicularity graph, the number of cells, the internal
degrees and cross degrees that occur, the empty cell pairs, the row of the
cell containing α = <(1,0,...,0)> and the closed-form values it should
match, then tries the lift used by the Hamilton pipeline.

    python3 scripts/singer_quotients.py            # both families
    python3 scripts/singer_quotients.py --family minus
"""

import argparse
import time
from collections import Counter

from hamprim.constructions.geometric import (PERP, base_cell, block_quotient_cycle, perp_block_degrees,
                                             singer_blocks, singular_graph)
from hamprim.hamsearch import verify_cycle
from hamprim.quolift import quotient

FAMILIES = {"minus": (-1, 4, 3), "plus": (1, 5, 2)}


def report(name, sign, m, q):
    t0 = time.perf_counter()
    g = singular_graph(sign, m, q, PERP)
    bs = singer_blocks(sign, m, q)
    qg = quotient(g, bs)
    internal, cross = perp_block_degrees(sign, m, q)
    a = base_cell(sign, m, q, bs)
    inner = Counter(qg.internal(x) for x in range(qg.m))
    between = Counter(qg.d(x, y) for x in range(qg.m) for y in range(x + 1, qg.m))
    print(f"{name}: n={g.n} valency={g.valency} cells={qg.m} of size {bs.p}")
    print(f"  internal degrees {dict(sorted(inner.items()))}")
    print(f"  cross degrees {dict(sorted(between.items()))}  empty pairs {between.get(0, 0)}")
    row = [qg.d(a, y) for y in range(qg.m) if y != a]
    print(f"  base cell {a}: internal {qg.internal(a)} (expected {internal}), "
          f"cross {sorted(set(row))} (expected {cross})")
    print(f"  complete quotient: {qg.is_complete()}, connected: {qg.is_connected()}")
    cyc = block_quotient_cycle(g, bs)
    print(f"  lifted Hamilton cycle verified: {verify_cycle(g, cyc)} "
          f"({time.perf_counter() - t0:.1f} s)")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=sorted(FAMILIES), action="append")
    args = ap.parse_args()
    for name in args.family or sorted(FAMILIES):
        report(name, *FAMILIES[name])


if __name__ == "__main__":
    main()
