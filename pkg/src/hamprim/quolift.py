"""Quotients by semiregular automorphisms and lifting quotient cycles.

A semiregular automorphism ρ of prime order p partitions the vertices into m
cells.  Each cell is listed as x, xρ, xρ^2, ... from its least point x, so a
vertex is addressed as (cell, offset).  If a vertex of cell k is adjacent to
the vertex at offset s in cell k+1, every vertex at offset a is adjacent to
offset a+s; following a quotient Hamilton cycle and adding up the chosen
offsets either returns to the start after one round (sum 0) or, when the sum
is nonzero mod p, sweeps all p offsets of every cell before closing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .hamsearch import certificate_for, iter_hamilton_cycles, HamiltonCertificate
from .ff import is_prime
from .orbital import Graph, _bits
from .permgrp import Permutation, is_semiregular


@dataclass(frozen=True)
class BlockSystem:
    cells: tuple[tuple[int, ...], ...]
    rho: Permutation

    @classmethod
    def from_semiregular(cls, rho: Permutation) -> "BlockSystem":
        if is_semiregular(rho) is None:
            raise ValueError("permutation is not semiregular")
        cells = []
        seen = set()
        for x in range(rho.degree):
            if x in seen:
                continue
            cyc = [x]
            y = rho.images[x]
            while y != x:
                cyc.append(y)
                y = rho.images[y]
            seen.update(cyc)
            cells.append(tuple(cyc))
        return cls(tuple(cells), rho)

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def p(self) -> int:
        return len(self.cells[0])

    def position(self) -> dict[int, tuple[int, int]]:
        return {v: (k, s) for k, cell in enumerate(self.cells) for s, v in enumerate(cell)}

    def masks(self) -> list[int]:
        out = []
        for cell in self.cells:
            m = 0
            for v in cell:
                m |= 1 << v
            out.append(m)
        return out


@dataclass(frozen=True)
class QuotientGraph:
    m: int
    mult: tuple[tuple[int, ...], ...]  # mult[a][b] = d(B_a, B_b); diagonal = internal degree

    def d(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def internal(self, a: int) -> int:
        return self.mult[a][a]

    def adjacency(self, cells=None) -> list[int]:
        """Bitset rows of the simple quotient (d >= 1) restricted to ``cells``, reindexed."""
        cells = list(range(self.m)) if cells is None else list(cells)
        rows = []
        for a in cells:
            row = 0
            for k, b in enumerate(cells):
                if b != a and self.mult[a][b]:
                    row |= 1 << k
            rows.append(row)
        return rows

    def is_complete(self, cells=None) -> bool:
        cells = list(range(self.m)) if cells is None else list(cells)
        return all(self.mult[a][b] for a in cells for b in cells if a != b)

    def is_connected(self, cells=None) -> bool:
        rows = self.adjacency(cells)
        if not rows:
            return True
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << len(rows)) - 1


def quotient(g: Graph, bs: BlockSystem) -> QuotientGraph:
    """Per-vertex neighbour counts between cells, checked to be constant on each cell."""
    if not g.is_automorphism(bs.rho.images):
        raise ValueError("rho is not an automorphism of the graph")
    masks = bs.masks()
    rows = []
    for a, cell in enumerate(bs.cells):
        ref = None
        for v in cell:
            counts = tuple((g.adj[v] & mk).bit_count() for mk in masks)
            if ref is None:
                ref = counts
            elif counts != ref:
                raise ValueError(f"cell {a} has unequal neighbour counts")
        rows.append(ref)
    return QuotientGraph(bs.m, tuple(rows))


class LiftOutcome(str, enum.Enum):
    CYCLE = "cycle"
    SPLIT = "split"


@dataclass
class LiftResult:
    outcome: LiftOutcome
    certificate: HamiltonCertificate | None = None
    cycles: list | None = None  # the p disjoint cycles when the lift splits


def _voltages(g: Graph, bs: BlockSystem, a: int, b: int) -> list[int]:
    """Offsets s with cells[a][0] adjacent to cells[b][s]."""
    x = bs.cells[a][0]
    return [s for s, y in enumerate(bs.cells[b]) if g.has_edge(x, y)]


def lift_cycle(qc, g: Graph, bs: BlockSystem) -> LiftResult:
    """Lift a Hamilton cycle of the quotient (a sequence of cell indices)."""
    qc = list(qc)
    m, p = bs.m, bs.p
    if not is_prime(p):
        raise ValueError(f"cell size {p} is not prime")
    if m < 3:
        raise ValueError("quotient cycles need at least three cells")
    if sorted(qc) != list(range(m)):
        raise ValueError("not a Hamilton cycle of the quotient")
    volts = []
    for k in range(m):
        V = _voltages(g, bs, qc[k], qc[(k + 1) % m])
        if not V:
            raise ValueError(f"cells {qc[k]} and {qc[(k + 1) % m]} are not adjacent")
        volts.append(V)
    choice = [V[0] for V in volts]
    if sum(choice) % p == 0:
        for k, V in enumerate(volts):
            if len(V) > 1:
                choice[k] = V[1]
                break
    total = sum(choice) % p
    pos = [0] * m
    acc = 0
    for k in range(m):
        pos[k] = acc
        acc += choice[k]
    if total == 0:
        if any(len(V) > 1 for V in volts):
            raise AssertionError("a double edge should always allow a nonzero sum")
        cycles = []
        for a in range(p):
            cycles.append([bs.cells[qc[k]][(a + pos[k]) % p] for k in range(m)])
        return LiftResult(LiftOutcome.SPLIT, cycles=cycles)
    walk = []
    for t in range(p):
        base = t * total
        for k in range(m):
            walk.append(bs.cells[qc[k]][(base + pos[k]) % p])
    return LiftResult(LiftOutcome.CYCLE, certificate_for(g, walk))


def quotient_cycles(qg: QuotientGraph, cells=None, first_edge=None, limit=None, budget=10**7):
    """Hamilton cycles of the simple quotient on ``cells``, as lists of original cell indices."""
    cells = list(range(qg.m)) if cells is None else list(cells)
    rows = qg.adjacency(cells)
    fe = None
    if first_edge is not None:
        fe = (cells.index(first_edge[0]), cells.index(first_edge[1]))
    for cyc in iter_hamilton_cycles(rows, len(cells), fe, limit, budget):
        yield [cells[k] for k in cyc]


def lift_first(qg: QuotientGraph, g: Graph, bs: BlockSystem, cycles) -> LiftResult | None:
    """Lift the first quotient cycle that does not split."""
    for qc in cycles:
        res = lift_cycle(qc, g, bs)
        if res.outcome is LiftOutcome.CYCLE:
            return res
        # a split lift only happens when every edge of the cycle is simple
        assert all(qg.d(qc[k], qc[(k + 1) % len(qc)]) == 1 for k in range(len(qc)))
    return None


def circulant_hcycle_through_edge(qg: QuotientGraph, cells, forced_edge, budget=10**7):
    """A Hamilton cycle of the quotient restricted to ``cells`` that uses ``forced_edge``."""
    if not qg.is_connected(cells):
        raise ValueError("restricted quotient is disconnected")
    for cyc in quotient_cycles(qg, cells, forced_edge, limit=1, budget=budget):
        return cyc
    return None


class DensityTag(str, enum.Enum):
    DIRAC = "Dirac"
    JACKSON = "Jackson"


def is_two_connected(g: Graph) -> bool:
    """Connected with no articulation point (iterative low-link search)."""
    n = g.n
    if n < 3 or not g.is_connected():
        return False
    nbrs = [g.neighbors(v) for v in range(n)]
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    timer = 0
    disc[0] = low[0] = 0
    root_children = 0
    stack = [(0, iter(nbrs[0]))]
    while stack:
        v, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if parent[v] == u and u != 0 and low[v] >= disc[u]:
                    return False
            continue
        if disc[w] == -1:
            timer += 1
            disc[w] = low[w] = timer
            parent[w] = v
            if v == 0:
                root_children += 1
            stack.append((w, iter(nbrs[w])))
        elif w != parent[v]:
            low[v] = min(low[v], disc[w])
    return root_children <= 1


def density_hamiltonian(g: Graph) -> DensityTag | None:
    val = min(g.degrees())
    if 2 * val >= g.n and g.n >= 3:
        return DensityTag.DIRAC
    if 3 * val >= g.n and g.is_regular() and is_two_connected(g):
        return DensityTag.JACKSON
    return None
