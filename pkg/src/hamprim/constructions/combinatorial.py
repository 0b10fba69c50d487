"""The alternating group on 2-subsets: Johnson graph J(c,2) and Kneser graph K(c,2)."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ..hamsearch import DEFAULT_BUDGET
from ..orbital import Graph
from ..permgrp import Action, Permutation, PermGroup
from .common import SPLICE, CaseResult, run_ladder


@lru_cache(maxsize=None)
def two_subsets(c: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(c), 2))


def _index(c: int) -> dict:
    return {s: k for k, s in enumerate(two_subsets(c))}


def johnson_graph(c: int) -> Graph:
    """2-subsets of {0..c-1}, adjacent when they share exactly one point."""
    subs = two_subsets(c)
    idx = _index(c)
    nbrs = []
    for a, b in subs:
        row = [idx[tuple(sorted((x, y)))] for x in (a, b) for y in range(c)
               if y not in (a, b)]
        nbrs.append(row)
    return Graph.from_neighbor_lists(nbrs, labels=list(subs), check=False)


def kneser_graph(c: int) -> Graph:
    """2-subsets of {0..c-1}, adjacent when disjoint."""
    subs = two_subsets(c)
    idx = _index(c)
    nbrs = [[idx[s] for s in subs if a not in s and b not in s] for a, b in subs]
    return Graph.from_neighbor_lists(nbrs, labels=list(subs), check=False)


def johnson_splice(c: int) -> list[int]:
    """Hamilton cycle of J(c,2) spliced from star paths; no search involved.

    With points numbered 1..c, start from the spine {1,2},{2,3},...,{c,1}.
    For p = 2..c-1 the spine edge {p-1,p}{p,p+1} is replaced by a path
    through the 2-subsets containing p that no earlier star has used, that
    is, {p,k} for k = 1 or k >= p+2.  Each star is a clique, so any order of
    its middle vertices works.
    """
    if c < 5:
        raise ValueError("c must be at least 5")
    key = lambda x, y: (min(x, y) - 1, max(x, y) - 1)
    seq = [key(1, 2)]
    for p in range(2, c):
        seq += [key(p, k) for k in [1] + list(range(p + 2, c + 1)) if k != p - 1]
        seq.append(key(p, p + 1))
    seq.append(key(c, 1))
    idx = _index(c)
    cycle = [idx[s] for s in seq]
    if sorted(cycle) != list(range(len(idx))):
        raise AssertionError("splice did not visit every 2-subset exactly once")
    return cycle


def alternating_generators(c: int) -> list[Permutation]:
    """(0 1 2) and an (c or c-1)-cycle; together they generate A_c."""
    g1 = Permutation.from_cycles(c, [(0, 1, 2)])
    if c % 2:
        g2 = Permutation.from_cycles(c, [tuple(range(c))])
    else:
        g2 = Permutation.from_cycles(c, [tuple(range(1, c))])
    return [g1, g2]


def alternating_action(c: int) -> Action:
    """A_c on 2-subsets with base {0,1}."""
    subs = two_subsets(c)
    idx = _index(c)
    pts = alternating_generators(c)
    gens = [Permutation([idx[tuple(sorted((g(a), g(b))))] for a, b in subs]) for g in pts]
    G = PermGroup(gens, len(subs))
    return Action(len(subs), gens, 0, G.stabilizer_generators(0), list(subs), ["a", "b"])


def johnson_case(c: int, budget: int = DEFAULT_BUDGET, override=None) -> CaseResult:
    g = johnson_graph(c)
    checks = {"valency": g.valency == 2 * (c - 2)}
    return run_ladder(f"alt-2sets-johnson c={c}", g, lambda: johnson_splice(c), SPLICE,
                      budget=budget, override=override, checks=checks)


def kneser_case(c: int, budget: int = DEFAULT_BUDGET, override=None) -> CaseResult:
    """Density plus search; exhaustive search settles the small cases (c=5 is Petersen)."""
    if c < 5:
        raise ValueError("c must be at least 5")
    g = kneser_graph(c)
    checks = {"valency": g.valency == (c - 2) * (c - 3) // 2}
    return run_ladder(f"alt-2sets-kneser c={c}", g, budget=budget, override=override, checks=checks)
