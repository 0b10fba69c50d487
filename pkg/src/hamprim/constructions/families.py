"""Registry of case families: suborbit listings, orbital graphs and Hamilton runs.

Every family exposes the same three operations over 0-based suborbit
indices, so the command line and the case matrix treat all rows alike.
Families driven by a permutation group (polyhedral cosets, flags, the
sporadic groups) try a quotient by a semiregular element of prime order
before falling back to density and search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..ff import prime_factors
from ..geometry import line_permutation, point_permutation as gl_point_permutation
from ..geometry import projective_lines, projective_points, sl_generators
from ..hamsearch import DEFAULT_BUDGET
from ..orbital import Graph, orbital_graph
from ..permgrp import (Action, CosetAction, Permutation, PermGroup, action_from_cosets,
                       is_semiregular, load_subgroup, orbital_classes, orbit)
from ..psl2 import (DplusModel, brute_suborbit_dminus, classify_suborbit_dminus, classify_suborbits_dplus,
                    dminus_representatives, dplus_representatives, find_polyhedral_subgroup,
                    dplus_action, point_permutation, psl2_group)
from ..quolift import BlockSystem, lift_first, quotient, quotient_cycles
from . import combinatorial, dihedral, geometric
from .common import QUOTIENT_LIFT, CaseDescriptor, CaseResult, ConstructionFailed, run_ladder


@dataclass(frozen=True)
class SuborbitInfo:
    index: int
    length: int          # length of the suborbit (the graph merges it with its partner)
    self_paired: bool
    valency: int
    representative: object = None
    check: bool | None = None  # closed form agrees with the orbit oracle, where one exists


@dataclass
class Family:
    name: str
    description: str
    params: dict                                  # parameter name -> default (None = required)
    suborbits: Callable[[dict], list]             # params -> [SuborbitInfo]
    graph: Callable[[dict, int], Graph]
    run: Callable[[dict, int, int, str | None], CaseResult]
    expected_lengths: tuple | None = None          # nontrivial suborbit lengths, where stated

    def resolve(self, given: dict) -> dict:
        out = {}
        for k, default in self.params.items():
            v = given.get(k, default)
            if v is None:
                raise ValueError(f"family {self.name} needs --{k}")
            out[k] = int(v)
        extra = set(given) - set(self.params) - {"suborbit"}
        if extra:
            raise ValueError(f"family {self.name} does not take {sorted(extra)}")
        return out


# --- generic permutation-group families -------------------------------------------

def _action_suborbits(act: Action) -> list[SuborbitInfo]:
    subs = act.suborbits()
    out = []
    for k, s in enumerate(orbital_classes(subs)):
        val = s.length if s.self_paired else 2 * s.length
        out.append(SuborbitInfo(k, s.length, s.self_paired, val, s.representative))
    return out


def _action_graph(act: Action, index: int) -> Graph:
    classes = orbital_classes(act.suborbits())
    if not 0 <= index < len(classes):
        raise ValueError(f"suborbit index {index} out of range 0..{len(classes) - 1}")
    return orbital_graph(act, classes[index])


def semiregular_element(act: Action, seed: int = 0) -> Permutation | None:
    """An element of prime order p (largest prime dividing the degree) with all cycles of length p."""
    G = PermGroup(act.generators, act.degree)
    rng = random.Random(seed)
    for p in sorted(prime_factors(act.degree), reverse=True):
        if p < 3:
            continue
        for _ in range(200):
            g = G.chain.random_element(rng)
            o = g.order()
            if o % p:
                continue
            h = g ** (o // p)
            if is_semiregular(h) == (act.degree // p, p):
                return h
    return None


def semiregular_lift(g: Graph, rho: Permutation | None, budget: int = 10**6):
    if rho is None:
        raise ConstructionFailed("no semiregular element of prime order")
    bs = BlockSystem.from_semiregular(rho)
    if bs.m < 3:
        raise ConstructionFailed("fewer than three cells")
    qg = quotient(g, bs)
    if not qg.is_connected():
        raise ConstructionFailed("quotient is disconnected")
    res = lift_first(qg, g, bs, quotient_cycles(qg, limit=200, budget=budget))
    if res is None:
        raise ConstructionFailed("no quotient cycle lifts")
    return list(res.certificate.cycle)


def action_family(name, description, make_action, expected=None) -> Family:
    def subs(params):
        return _action_suborbits(make_action())

    def graph(params, index):
        return _action_graph(make_action(), index)

    def run(params, index, budget=DEFAULT_BUDGET, override=None):
        act = make_action()
        g = _action_graph(act, index)
        info = _action_suborbits(act)[index]
        rho = semiregular_element(act)
        checks = {"valency": g.valency == info.valency}
        return run_ladder(f"{name} suborbit={index}", g, lambda: semiregular_lift(g, rho),
                          QUOTIENT_LIFT, budget=budget, override=override, checks=checks)

    return Family(name, description, {}, subs, graph, run, expected)


@lru_cache(maxsize=None)
def polyhedral_action(q: int, kind: str) -> Action:
    a, b = find_polyhedral_subgroup(q, kind)
    G = psl2_group(q)
    H = PermGroup([point_permutation(a, q), point_permutation(b, q)], q + 1)
    return action_from_cosets(CosetAction(G, H), ["u", "t"])


@lru_cache(maxsize=None)
def sporadic_action(subfile: str) -> Action:
    parent, sub = load_subgroup(subfile)
    G = PermGroup(parent)
    H = PermGroup(sub, G.degree)
    return action_from_cosets(CosetAction(G, H))


@lru_cache(maxsize=None)
def flag_action(p: int = 5) -> Action:
    """PSL(3,p) extended by the standard polarity, acting on the flags of PG(2,p)."""
    pts = projective_points(3, p)
    lines = projective_lines(3, p)
    lidx = {L: k for k, L in enumerate(lines)}
    flags = [(x, k) for k, L in enumerate(lines) for x in sorted(L)]
    fidx = {f: i for i, f in enumerate(flags)}
    perp_pt = [lidx[frozenset(y for y, w in enumerate(pts) if sum(a * b for a, b in zip(v, w)) % p == 0)]
               for v in pts]
    perp_line = {k: x for x, k in enumerate(perp_pt)}
    gens = []
    for A in sl_generators(3, p):
        pp = gl_point_permutation(A, 3, p)
        lp = line_permutation(A, 3, p)
        gens.append(Permutation(fidx[(pp[x], lp[k])] for x, k in flags))
    gens.append(Permutation(fidx[(perp_line[k], perp_pt[x])] for x, k in flags))
    G = PermGroup(gens, len(flags))
    return Action(len(flags), gens, 0, G.stabilizer_generators(0), flags, ["x", "y", "polarity"])


# --- dihedral families ---------------------------------------------------------------

def _dminus_suborbits(params):
    q = params["q"]
    out = []
    for k, j in enumerate(dminus_representatives(q)):
        d = classify_suborbit_dminus(q, j)
        brute = brute_suborbit_dminus(q, j)
        ok = (brute.length, brute.self_paired, brute.partner) == (d.length, d.self_paired, d.partner)
        out.append(SuborbitInfo(k, d.length, d.self_paired, d.length * (1 if d.self_paired else 2),
                                f"j={j} {d.case}", ok))
    return out


def _dplus_suborbits(params):
    q = params["q"]
    act = dplus_action(q)
    model = DplusModel(q)
    out = []
    for k, d in enumerate(dplus_representatives(q)):
        pts = orbit([model.index(d.representative)], act.stabilizer_generators)
        ok = len(pts) == d.length
        if not d.self_paired:
            ppts = orbit([model.index(d.partner)], act.stabilizer_generators)
            ok = ok and len(ppts) == d.length and set(ppts) != set(pts)
        out.append(SuborbitInfo(k, d.length, d.self_paired, d.length * (1 if d.self_paired else 2),
                                f"{d.representative} {d.case}", ok))
    return out


def _dminus_family():
    return Family("psl2-dminus", "PSL(2,q) on cosets of D_{q-1} (unordered pairs of PG(1,q))",
                  {"q": None}, _dminus_suborbits,
                  lambda p, k: dihedral.dminus_instance(p["q"], k).graph,
                  lambda p, k, budget=DEFAULT_BUDGET, override=None:
                      dihedral.dminus_pipeline(p["q"], k, budget, override))


def _dplus_family():
    return Family("psl2-dplus", "PSL(2,q) on cosets of D_{q+1}", {"q": None}, _dplus_suborbits,
                  lambda p, k: dihedral.dplus_instance(p["q"], k).graph,
                  lambda p, k, budget=DEFAULT_BUDGET, override=None:
                      dihedral.dplus_pipeline(p["q"], k, budget, override))


# --- geometric and combinatorial families -----------------------------------------------

def _two_graphs(name, description, params, graph_of, run_of, labels):
    def subs(p):
        out = []
        for k in range(2):
            g = graph_of(p, k + 1)
            out.append(SuborbitInfo(k, g.valency, True, g.valency, labels[k]))
        return out

    def graph(p, k):
        if k not in (0, 1):
            raise ValueError("suborbit index must be 0 or 1")
        return graph_of(p, k + 1)

    def run(p, k, budget=DEFAULT_BUDGET, override=None):
        if k not in (0, 1):
            raise ValueError("suborbit index must be 0 or 1")
        return run_of(p, k + 1, budget, override)

    return Family(name, description, params, subs, graph, run)


def _johnson_family():
    def subs(p):
        c = p["c"]
        return [SuborbitInfo(0, 2 * (c - 2), True, 2 * (c - 2), "meet in one point")]

    def one(k):
        if k != 0:
            raise ValueError("suborbit index must be 0")

    return Family("alt-2sets-johnson", "A_c on 2-subsets, sets meeting in a point (Johnson J(c,2))",
                  {"c": None}, subs,
                  lambda p, k: (one(k), combinatorial.johnson_graph(p["c"]))[1],
                  lambda p, k, budget=DEFAULT_BUDGET, override=None:
                      (one(k), combinatorial.johnson_case(p["c"], budget, override))[1])


def _kneser_family():
    def subs(p):
        c = p["c"]
        v = (c - 2) * (c - 3) // 2
        return [SuborbitInfo(0, v, True, v, "disjoint")]

    def one(k):
        if k != 0:
            raise ValueError("suborbit index must be 0")

    return Family("alt-2sets-kneser", "A_c on 2-subsets, disjoint sets (Kneser K(c,2))",
                  {"c": None}, subs,
                  lambda p, k: (one(k), combinatorial.kneser_graph(p["c"]))[1],
                  lambda p, k, budget=DEFAULT_BUDGET, override=None:
                      (one(k), combinatorial.kneser_case(p["c"], budget, override))[1])


def _build_registry() -> dict[str, Family]:
    fams = [
        _dminus_family(),
        _dplus_family(),
        action_family("psl2-17-s4", "PSL(2,17) on cosets of S4 (102 points)",
                      lambda: polyhedral_action(17, "S4")),
        action_family("psl2-41-a5", "PSL(2,41) on cosets of A5 (574 points)",
                      lambda: polyhedral_action(41, "A5")),
        action_family("psl2-47-s4", "PSL(2,47) on cosets of S4 (2162 points)",
                      lambda: polyhedral_action(47, "S4")),
        _two_graphs("psl4-lines", "PSL(4,q) on lines of PG(3,q)", {"q": 3},
                    lambda p, s: geometric.line_graph(4, p["q"], s),
                    lambda p, s, b, o: geometric.grassmann_case(4, p["q"], s, b, o),
                    ["meet in a point", "disjoint"]),
        _two_graphs("psl5-lines", "PSL(5,q) on lines of PG(4,q) (structural test)", {"q": 2},
                    lambda p, s: geometric.line_graph(5, p["q"], s),
                    lambda p, s, b, o: geometric.grassmann_case(5, p["q"], s, b, o),
                    ["meet in a point", "disjoint"]),
        _two_graphs("pomega-minus", "PΩ-(8,q) on totally singular points", {"q": 3},
                    lambda p, s: geometric.singular_graph(-1, 4, p["q"], s),
                    lambda p, s, b, o: geometric.orthogonal_case(-1, 4, p["q"], s, b, o),
                    ["perpendicular", "not perpendicular"]),
        _two_graphs("pomega-plus", "PΩ+(2m,q) on totally singular points (structural test)",
                    {"q": 2, "m": 5},
                    lambda p, s: geometric.singular_graph(1, p["m"], p["q"], s),
                    lambda p, s, b, o: geometric.orthogonal_case(1, p["m"], p["q"], s, b, o),
                    ["perpendicular", "not perpendicular"]),
        action_family("psl3-5-flags", "PSL(3,5) with a polarity on the 186 flags of PG(2,5)",
                      flag_action, (10, 50, 125)),
        _johnson_family(),
        _kneser_family(),
        action_family("m11-cosets", "M11 on cosets of S5 (66 points)",
                      lambda: sporadic_action("m11_s5.sub"), (15, 20, 30)),
        action_family("m12-cosets", "M12 on cosets of M10:2 (66 points)",
                      lambda: sporadic_action("m12_m10.sub"), (20, 45)),
        action_family("m23-cosets", "M23 on cosets of A8 (506 points)",
                      lambda: sporadic_action("m23_a8.sub"), (15, 210, 280)),
        action_family("j1-cosets", "J1 on cosets of L2(11) (266 points)",
                      lambda: sporadic_action("j1_l2_11.sub"), (11, 12, 110, 132)),
    ]
    return {f.name: f for f in fams}


FAMILIES = _build_registry()


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None


def expand_case(desc: CaseDescriptor) -> list[CaseDescriptor]:
    """One descriptor per suborbit when none is selected."""
    fam = get_family(desc.family)
    params = fam.resolve(desc.params)
    if desc.suborbit is not None:
        return [CaseDescriptor(desc.family, params, desc.suborbit, desc.strategy)]
    n = len(fam.suborbits(params))
    return [CaseDescriptor(desc.family, params, k, desc.strategy) for k in range(n)]


def table_case_runner(desc: CaseDescriptor, budget: int = DEFAULT_BUDGET) -> list[CaseResult]:
    """Run every selected suborbit of a case; results carry graph, strategy and verdict."""
    fam = get_family(desc.family)
    out = []
    for d in expand_case(desc):
        res = fam.run(d.params, d.suborbit, budget, d.strategy)
        res.case = " ".join([d.family] + [f"{k}={v}" for k, v in sorted(d.params.items())]
                            + [f"suborbit={d.suborbit}"])
        out.append(res)
    return out


def length_multiset(fam: Family, params=None) -> list[int]:
    return sorted(s.length for s in fam.suborbits(fam.resolve(params or {})))
