import pytest
from hypothesis import given, strategies as st

from hamprim.constructions.combinatorial import kneser_graph
from hamprim.orbital import Graph, circulant_graph, complete_graph, cycle_graph, petersen_graph
from hamprim.permgrp import Permutation
from hamprim.quolift import (BlockSystem, DensityTag, LiftOutcome, QuotientGraph, circulant_hcycle_through_edge,
                             density_hamiltonian, is_two_connected, lift_cycle, quotient, quotient_cycles)

from oracles import is_hamilton_cycle


def rotation(n, k):
    return Permutation((i + k) % n for i in range(n))


def test_c6_over_c3():
    g = cycle_graph(6)
    bs = BlockSystem.from_semiregular(rotation(6, 3))
    assert (bs.m, bs.p) == (3, 2)
    qg = quotient(g, bs)
    assert qg.is_complete()
    res = lift_cycle([0, 1, 2], g, bs)
    assert res.outcome is LiftOutcome.CYCLE
    assert is_hamilton_cycle(6, g.edges(), list(res.certificate.cycle)) is None


def test_prism_lift_splits():
    # two triangles joined by a matching; the matching swap is the automorphism
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    g = Graph.from_edges(6, edges)
    bs = BlockSystem.from_semiregular(Permutation([3, 4, 5, 0, 1, 2]))
    res = lift_cycle([0, 1, 2], g, bs)
    assert res.outcome is LiftOutcome.SPLIT
    assert sorted(map(sorted, res.cycles)) == [[0, 1, 2], [3, 4, 5]]


def test_lift_rejects_bad_inputs():
    with pytest.raises(ValueError):
        lift_cycle([0, 1], cycle_graph(6), BlockSystem.from_semiregular(rotation(6, 2)))
    with pytest.raises(ValueError):
        lift_cycle([0, 1, 2], cycle_graph(12), BlockSystem.from_semiregular(rotation(12, 3)))
    with pytest.raises(ValueError):
        BlockSystem.from_semiregular(Permutation([1, 0, 2, 3]))
    with pytest.raises(ValueError):
        quotient(cycle_graph(6), BlockSystem.from_semiregular(Permutation([1, 0, 3, 2, 5, 4])))


@given(st.sampled_from([5, 7, 11, 13]), st.sampled_from([3, 4, 5]), st.data())
def test_circulant_lifts_are_hamilton_cycles(p, m, data):
    n = p * m
    conn = data.draw(st.lists(st.integers(1, n - 1), min_size=1, max_size=3, unique=True))
    g = circulant_graph(n, conn + [1])
    bs = BlockSystem.from_semiregular(rotation(n, m))
    qg = quotient(g, bs)
    for qc in quotient_cycles(qg, limit=4):
        res = lift_cycle(qc, g, bs)
        if res.outcome is LiftOutcome.CYCLE:
            assert is_hamilton_cycle(n, g.edges(), list(res.certificate.cycle)) is None
        else:
            assert len(res.cycles) == p
            assert sorted(v for c in res.cycles for v in c) == list(range(n))


def _circulant_quotient(m, conn):
    rows = []
    for a in range(m):
        rows.append(tuple(1 if (b - a) % m in conn else 0 for b in range(m)))
    return QuotientGraph(m, tuple(rows))


def _uses_edge(cyc, a, b):
    return any({cyc[k], cyc[k - 1]} == {a, b} for k in range(len(cyc)))


def test_forced_edge_cycles():
    k9 = _circulant_quotient(9, set(range(1, 9)))
    cyc = circulant_hcycle_through_edge(k9, range(9), (0, 3))
    assert sorted(cyc) == list(range(9)) and _uses_edge(cyc, 0, 3)
    z21 = _circulant_quotient(21, {1, 20, 4, 17})
    cyc = circulant_hcycle_through_edge(z21, range(21), (0, 4))
    assert sorted(cyc) == list(range(21)) and _uses_edge(cyc, 0, 4)
    assert all(z21.d(cyc[k - 1], cyc[k]) for k in range(21))


def test_forced_edge_rejects_disconnected():
    two = _circulant_quotient(6, {2, 4})
    with pytest.raises(ValueError):
        circulant_hcycle_through_edge(two, range(6), (0, 2))


def test_density_tags():
    assert density_hamiltonian(complete_graph(7)) is DensityTag.DIRAC
    assert density_hamiltonian(kneser_graph(7)) is DensityTag.JACKSON
    assert density_hamiltonian(petersen_graph()) is None
    assert density_hamiltonian(cycle_graph(5)) is DensityTag.JACKSON
    assert density_hamiltonian(cycle_graph(8)) is None


def test_two_connectivity():
    assert is_two_connected(cycle_graph(5))
    assert not is_two_connected(Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]))
    assert not is_two_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_two_connected(petersen_graph())
