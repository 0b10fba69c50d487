"""Orbital graphs of PSL(2,q) on the cosets of its two dihedral subgroups.

Both pipelines quotient by the unipotent element u, which acts
semiregularly with cells of prime size q, find a Hamilton cycle of the
quotient that uses at least one double edge, and lift it.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..hamsearch import DEFAULT_BUDGET
from ..orbital import Graph, orbital_graph
from ..permgrp import Action, orbit
from ..psl2 import (NSP_SHORT, SP_LONG, SP_SHORT, DplusModel, block_degrees_dminus,
                    classify_suborbit_dminus, dminus_representatives, dplus_action,
                    dplus_representatives, pair_block, pair_index, pairs_action, std_elements)
from ..quolift import (BlockSystem, LiftOutcome, QuotientGraph, circulant_hcycle_through_edge,
                       lift_cycle, lift_first, quotient, quotient_cycles)
from .common import QUOTIENT_LIFT, CaseResult, ConstructionFailed, run_ladder

QUOTIENT_BUDGET = 10**6


@dataclass
class DihedralInstance:
    q: int
    index: int
    case: str
    action: Action
    graph: Graph
    blocks: BlockSystem
    cell_label: list  # block name per cell
    quotient: QuotientGraph


def _instance(q, index, case, act, pts, partner_pts, label_of_cell) -> DihedralInstance:
    g = orbital_graph(act, points=pts, partner_points=partner_pts)
    bs = BlockSystem.from_semiregular(act.generators[0])
    labels = [label_of_cell(cell[0]) for cell in bs.cells]
    return DihedralInstance(q, index, case, act, g, bs, labels, quotient(g, bs))


def dminus_instance(q: int, index: int) -> DihedralInstance:
    """The ``index``-th orbital graph (see dminus_representatives) on the q(q+1)/2 pairs."""
    reps = dminus_representatives(q)
    if not 0 <= index < len(reps):
        raise ValueError(f"suborbit index {index} out of range 0..{len(reps) - 1}")
    j = reps[index]
    act = pairs_action(q)
    d = classify_suborbit_dminus(q, j)
    pts = orbit([pair_index(q, j, (j + 1) % q)], act.stabilizer_generators)
    pp = orbit([pair_index(q, *d.partner)], act.stabilizer_generators) if d.partner else []
    return _instance(q, index, d.case, act, pts, pp, lambda v: pair_block(q, v))


def dplus_instance(q: int, index: int) -> DihedralInstance:
    """The ``index``-th orbital graph (see dplus_representatives) on the q(q-1)/2 cosets."""
    reps = dplus_representatives(q)
    if not 0 <= index < len(reps):
        raise ValueError(f"suborbit index {index} out of range 0..{len(reps) - 1}")
    d = reps[index]
    model = DplusModel(q)
    act = dplus_action(q)
    pts = orbit([model.index(d.representative)], act.stabilizer_generators)
    pp = orbit([model.index(d.partner)], act.stabilizer_generators) if d.partner else []
    return _instance(q, index, d.case, act, pts, pp, model.block)


def dminus_block_check(inst: DihedralInstance) -> bool:
    """Closed-form block degrees agree with the quotient computed from edges."""
    q = inst.q
    j = dminus_representatives(q)[inst.index]
    pred = block_degrees_dminus(q, j).matrix()
    order = sorted(range(inst.blocks.m), key=lambda c: inst.cell_label[c])
    return all(inst.quotient.d(a, b) == pred[x][y]
               for x, a in enumerate(order) for y, b in enumerate(order))


def dminus_cycle(inst: DihedralInstance, budget: int = QUOTIENT_BUDGET):
    """Cycle through a double edge of the quotient off B_∞, with B_∞ spliced in, then lifted."""
    qg, bs = inst.quotient, inst.blocks
    inf = inst.cell_label.index(0)
    b1 = inst.cell_label.index(1)
    rest = [c for c in range(qg.m) if c != inf]
    if len(rest) < 3:
        raise ConstructionFailed("too few cells")
    doubles = [c for c in rest if c != b1 and qg.d(b1, c) >= 2]
    if not doubles:
        raise ConstructionFailed("no double edge at B_1")
    if not qg.is_connected(rest):
        raise ConstructionFailed("quotient off B_inf is disconnected")
    for bi in doubles:
        cyc = circulant_hcycle_through_edge(qg, rest, (b1, bi), budget=budget)
        if cyc is None:
            continue
        bj = cyc[-1]
        if not (qg.d(bj, inf) and qg.d(inf, b1)):
            continue
        res = lift_cycle(cyc + [inf], inst.graph, bs)
        if res.outcome is LiftOutcome.CYCLE:
            return list(res.certificate.cycle)
    raise ConstructionFailed("no liftable quotient cycle through a double edge")


def _cell_map(bs: BlockSystem, perm) -> list[int]:
    where = {v: k for k, cell in enumerate(bs.cells) for v in cell}
    return [where[perm[cell[0]]] for cell in bs.cells]


def dplus_alternating_cycle(inst: DihedralInstance):
    """Short suborbits: the alternating cycle A, P, A^σe, P^σe, ... lifted.

    P is the cell of the base coset, A a primed cell and σ the cell
    permutation induced by the diagonal element l.
    """
    q, qg, bs = inst.q, inst.quotient, inst.blocks
    model = DplusModel(q)
    r = model.r
    lperm = model.permutation(std_elements(q).l).images
    sigma = _cell_map(bs, lperm)
    P = next(k for k, cell in enumerate(bs.cells) if model.base in cell)
    primed = [k for k, lab in enumerate(inst.cell_label) if lab >= r]

    def power(c, e):
        for _ in range(e):
            c = sigma[c]
        return c

    for A in primed:
        if not qg.d(A, P):
            continue
        for e in range(1, 2 * r):
            cyc = []
            a, p = A, P
            for _ in range(r):
                cyc += [a, p]
                a, p = power(a, e), power(p, e)
            if sorted(cyc) != list(range(qg.m)) or (a, p) != (A, P):
                continue
            if not all(qg.d(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))):
                continue
            res = lift_cycle(cyc, inst.graph, bs)
            if res.outcome is LiftOutcome.CYCLE:
                return list(res.certificate.cycle)
    raise ConstructionFailed("no alternating quotient cycle lifts")


def dplus_quotient_search(inst: DihedralInstance, budget: int = QUOTIENT_BUDGET):
    res = lift_first(inst.quotient, inst.graph, inst.blocks,
                     quotient_cycles(inst.quotient, limit=200, budget=budget))
    if res is None:
        raise ConstructionFailed("no quotient cycle lifts")
    return list(res.certificate.cycle)


def dminus_pipeline(q: int, index: int, budget: int = DEFAULT_BUDGET, override=None) -> CaseResult:
    inst = dminus_instance(q, index)
    checks = {"block-degrees": dminus_block_check(inst),
              "valency": inst.graph.valency == _expected_valency_dminus(q, index)}
    case_id = f"psl2-dminus q={q} suborbit={index} ({inst.case})"
    return run_ladder(case_id, inst.graph, lambda: dminus_cycle(inst), QUOTIENT_LIFT,
                      budget=budget, override=override, checks=checks)


def _expected_valency_dminus(q, index):
    d = classify_suborbit_dminus(q, dminus_representatives(q)[index])
    return d.length * (1 if d.self_paired else 2)


def dplus_pipeline(q: int, index: int, budget: int = DEFAULT_BUDGET, override=None) -> CaseResult:
    inst = dplus_instance(q, index)
    d = dplus_representatives(q)[index]
    checks = {"valency": inst.graph.valency == d.length * (1 if d.self_paired else 2)}
    if inst.case in (SP_SHORT, NSP_SHORT):
        build = lambda: dplus_alternating_cycle(inst)
    else:
        build = lambda: dplus_quotient_search(inst)
    case_id = f"psl2-dplus q={q} suborbit={index} ({inst.case})"
    return run_ladder(case_id, inst.graph, build, QUOTIENT_LIFT,
                      budget=budget, override=override, checks=checks)
