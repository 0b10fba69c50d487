import networkx as nx
import pytest

from hamprim.constructions.combinatorial import johnson_case, johnson_graph, johnson_splice, kneser_case, kneser_graph
from hamprim.constructions.common import (DENSITY, HAMILTONIAN, NON_HAMILTONIAN, QUOTIENT_LIFT, SEARCH, SPLICE,
                                          TIMEOUT, CaseDescriptor, ConstructionFailed, run_ladder)
from hamprim.constructions.dihedral import dminus_pipeline, dplus_pipeline
from hamprim.constructions.families import FAMILIES, expand_case, get_family, length_multiset, table_case_runner
from hamprim.constructions.geometric import (MEET, grassmann_case, line_graph, meet_valency, singer_line_classes,
                                             singer_partition, star_cycle, stated_meet_valency)
from hamprim.hamsearch import verify_certificate, verify_cycle
from hamprim.orbital import complete_graph, cycle_graph, petersen_graph

from oracles import is_hamilton_cycle


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@pytest.mark.parametrize("c", [5, 6, 9])
def test_johnson_and_kneser_graphs(c):
    assert nx.is_isomorphic(to_nx(johnson_graph(c)), nx.line_graph(nx.complete_graph(c)))
    assert nx.is_isomorphic(to_nx(kneser_graph(c)), nx.complement(nx.line_graph(nx.complete_graph(c))))
    assert johnson_graph(c).valency == 2 * (c - 2)


def test_kneser_5_is_petersen():
    assert nx.is_isomorphic(to_nx(kneser_graph(5)), nx.petersen_graph())


@pytest.mark.parametrize("c", range(5, 16))
def test_splice_is_a_hamilton_cycle(c):
    g = johnson_graph(c)
    assert is_hamilton_cycle(g.n, g.edges(), johnson_splice(c)) is None


def test_splice_needs_five_points():
    with pytest.raises(ValueError):
        johnson_splice(4)


def test_case_strategies():
    assert johnson_case(8).strategy == SPLICE
    k5 = kneser_case(5)
    assert (k5.verdict, k5.strategy) == (NON_HAMILTONIAN, SEARCH)
    k7 = kneser_case(7)
    assert k7.verdict == HAMILTONIAN and k7.strategy == DENSITY
    assert any("Jackson" in n for n in k7.notes)


def test_ladder_falls_through_failed_construction():
    def broken():
        raise ConstructionFailed("nope")

    res = run_ladder("k6", complete_graph(6), broken, SPLICE)
    assert res.verdict == HAMILTONIAN and res.strategy == DENSITY
    assert res.notes[0].startswith("splice not applicable")
    assert verify_certificate(res.graph, res.certificate)


def test_ladder_outcomes():
    assert run_ladder("c7", cycle_graph(7)).verdict == HAMILTONIAN
    assert run_ladder("petersen", petersen_graph()).verdict == NON_HAMILTONIAN
    timed = run_ladder("petersen", petersen_graph(), budget=2, allow_exhaustive=False)
    assert timed.verdict == TIMEOUT


def test_ladder_rejects_a_bad_constructive_cycle():
    with pytest.raises(AssertionError):
        run_ladder("c5", cycle_graph(5), lambda: [0, 2, 4, 1, 3], SPLICE)


@pytest.mark.parametrize("q,k", [(19, 0), (19, 3), (43, 5)])
def test_dminus_pipeline(q, k):
    res = dminus_pipeline(q, k)
    assert res.verdict == HAMILTONIAN and res.strategy == QUOTIENT_LIFT
    assert res.n == q * (q + 1) // 2
    assert all(res.checks.values())
    assert verify_certificate(res.graph, res.certificate)


@pytest.mark.parametrize("k", range(7))
def test_dplus_pipeline_q13(k):
    res = dplus_pipeline(13, k)
    assert res.verdict == HAMILTONIAN and res.strategy == QUOTIENT_LIFT
    assert res.n == 78
    assert verify_certificate(res.graph, res.certificate)


def test_lines_of_pg3_3():
    g = line_graph(4, 3, MEET)
    assert g.n == 130 and g.valency == meet_valency(4, 3) == 48
    assert stated_meet_valency(3) == 13
    assert verify_cycle(g, star_cycle(3))
    res = grassmann_case(4, 3, MEET)
    assert res.strategy == SPLICE and res.checks == {"valency": True, "stated-valency": False}


def test_singer_classes_pg4_2():
    s, classes = singer_line_classes(5, 2)
    assert s == 31
    s, part = singer_partition(5, 2)
    assert sorted(part) == [1, 2, 4, 7, 8]
    covered = sorted(x for v in part.values() for x in v)
    assert covered == list(range(155))
    g = line_graph(5, 2, MEET)
    for lines in part.values():
        assert all(g.has_edge(lines[k - 1], lines[k]) for k in range(len(lines)))


def test_family_indices_are_zero_based():
    fam = FAMILIES["psl4-lines"]
    assert fam.graph({"q": 3}, 0).valency == 48
    assert fam.graph({"q": 3}, 1).valency == 81
    with pytest.raises(ValueError):
        fam.graph({"q": 3}, 2)


def test_family_registry():
    assert len(FAMILIES) == 16
    with pytest.raises(ValueError):
        get_family("nope")
    with pytest.raises(ValueError):
        FAMILIES["psl2-dminus"].resolve({})
    with pytest.raises(ValueError):
        FAMILIES["m11-cosets"].resolve({"q": 3})
    assert FAMILIES["psl4-lines"].resolve({}) == {"q": 3}


def test_suborbit_multisets():
    assert length_multiset(FAMILIES["psl3-5-flags"]) == [10, 50, 125]
    assert length_multiset(FAMILIES["m11-cosets"]) == [15, 20, 30]
    assert length_multiset(FAMILIES["psl4-lines"]) == [48, 81]
    assert sum(length_multiset(FAMILIES["psl2-17-s4"])) == 101


def test_expand_and_run_cases():
    descs = expand_case(CaseDescriptor("alt-2sets-johnson", {"c": 6}))
    assert [d.suborbit for d in descs] == [0]
    out = table_case_runner(CaseDescriptor("m11-cosets", {}, 0))
    assert len(out) == 1 and out[0].verdict == HAMILTONIAN
    assert out[0].case == "m11-cosets suborbit=0"
