"""Block-degree tables for the two dihedral coset actions of PSL(2,q).

For the pairs action (q = 3 mod 4) prints, per orbital graph, the case and
d(B_1, B_i) for i = 1..(q-1)/2 together with the B_∞ entries.  For the
cosets of the dihedral group of order q+1 (q = 4r+1) prints the neighbour
counts of the base coset per block, marking primed blocks, and a parity
survey: how many primed blocks have an odd count and whether every odd
count comes from the degenerate conic points.

    python3 scripts/dihedral_block_degrees.py --dminus 19 43 --dplus 13 29
    python3 scripts/dihedral_block_degrees.py --survey 400
"""

import argparse

from hamprim.ff import is_prime
from hamprim.psl2 import (NSP_SHORT, SP_SHORT, block_degrees_dminus, block_degrees_dplus, check_dplus,
                          classify_suborbit_dminus, dminus_representatives, dplus_representatives)


def dminus_table(q):
    print(f"q={q}: pairs action, {q * (q + 1) // 2} vertices")
    for k, j in enumerate(dminus_representatives(q)):
        d = classify_suborbit_dminus(q, j)
        bd = block_degrees_dminus(q, j)
        row = " ".join(str(bd.cross[i]) for i in sorted(bd.cross))
        print(f"  [{k:2d}] j={j:3d} {d.case:9s} len={d.length:3d}  B1->Bi: {row}  "
              f"B1->Binf={bd.to_inf} Binf->Bi={bd.inf_to} Binf={bd.inf_internal}")


def dplus_table(q):
    r = (q - 1) // 4
    print(f"q={q}: cosets of D_{q + 1}, {q * (q - 1) // 2} vertices, blocks 0..{r - 1} plain, "
          f"{r}..{2 * r - 1} primed")
    for k, d in enumerate(dplus_representatives(q)):
        bd = block_degrees_dplus(q, d)
        plain, primed = bd.counts[:r], bd.counts[r:]
        print(f"  [{k:2d}] {d.case:9s} plain={plain} primed={primed} primed-sum={sum(primed)} "
              f"degenerate={bd.degenerate[r:]}")


def dplus_orders(qmax):
    out = []
    for q in range(5, qmax + 1, 4):
        if not is_prime(q):
            continue
        try:
            check_dplus(q)
        except ValueError:
            continue
        out.append(q)
    return out


def survey(qmax):
    print(f"{'q':>5} {'SP-short':>9} {'one odd':>8} {'min sum':>8} {'NSP-short':>10} {'all even':>9} {'min sum':>8}")
    for q in dplus_orders(qmax):
        r = (q - 1) // 4
        sp, sp_odd, sp_min, nsp, nsp_even, nsp_min = 0, 0, None, 0, 0, None
        for d in dplus_representatives(q):
            bd = block_degrees_dplus(q, d)
            primed = bd.counts[r:]
            odd = sum(c % 2 for c in primed)
            if d.case == SP_SHORT:
                sp += 1
                sp_odd += odd == 1 and sum(bd.degenerate[r:]) == 1
                sp_min = sum(primed) if sp_min is None else min(sp_min, sum(primed))
            elif d.case == NSP_SHORT:
                nsp += 1
                nsp_even += odd == 0
                nsp_min = sum(primed) if nsp_min is None else min(nsp_min, sum(primed))
        print(f"{q:5d} {sp:9d} {sp_odd:8d} {sp_min!s:>8} {nsp:10d} {nsp_even:9d} {nsp_min!s:>8}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dminus", type=int, nargs="*", default=[])
    ap.add_argument("--dplus", type=int, nargs="*", default=[])
    ap.add_argument("--survey", type=int, help="parity survey for every admissible q up to this bound")
    args = ap.parse_args()
    if not (args.dminus or args.dplus or args.survey):
        args.dminus, args.dplus = [19], [13]
    for q in args.dminus:
        dminus_table(q)
    for q in args.dplus:
        dplus_table(q)
    if args.survey:
        survey(args.survey)


if __name__ == "__main__":
    main()
