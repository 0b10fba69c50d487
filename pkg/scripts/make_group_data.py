"""Regenerate the shipped generator and subgroup files in src/hamprim/data.

Each parent group is written in cycle notation and its subgroup as words
in the parent generators.  Every group and subgroup order is checked, and
so is the index of the resulting coset action.

  M11 on 11 points, subgroup S5 (index 66)
  M12 on 12 points, subgroup M10:2 = stabilizer of a 2-set (index 66)
  M23 on 23 points, subgroup A8 = stabilizer of an octad avoiding the
      fixed point of M23 inside M24 (index 506)
  J1 on 266 points (built from the 7-dimensional representation over F_11),
      subgroup L2(11) (index 266)
  The Coxeter graph as an edge list.
"""

import argparse
import random
import time
from itertools import combinations
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from hamprim.orbital import Graph
from hamprim.permgrp import (CosetAction, Permutation, PermGroup, format_word, orbit,
                             stabilizer_words, word_element_signed)

DATA = Path(__file__).resolve().parents[1] / "src" / "hamprim" / "data"


def cycles_1based(n, text):
    """Parse 1-based cycle notation into a 0-based permutation."""
    p = Permutation.parse(n + 1, text)
    return Permutation(p.images[1:][i] - 1 for i in range(n))


def write_gens(path, gens):
    lines = [f"degree {gens[0].degree}"] + [g.cycle_string() for g in gens]
    path.write_text("\n".join(lines) + "\n")


def subgroup_words(gens, action_gens, point, order):
    """Words (in gens) for the stabilizer of ``point`` in a transitive action, grown until ``order``."""
    n = gens[0].degree
    chosen, elts = [], []
    for w in stabilizer_words(action_gens, point):
        e = word_element_signed(gens, w, n)
        if elts and PermGroup(elts, n).contains(e):
            continue
        chosen.append(w)
        elts.append(e)
        if PermGroup(elts, n).order() == order:
            return chosen
    raise AssertionError("stabilizer words do not reach the expected order")


def write_sub(path, parent_name, words):
    lines = [f"parent {parent_name}"] + [format_word(w) for w in words]
    path.write_text("\n".join(lines) + "\n")


def set_action(gens, sets):
    idx = {s: k for k, s in enumerate(sets)}
    return [Permutation(idx[frozenset(g.images[x] for x in s)] for s in sets) for g in gens]


def set_orbit(gens, start):
    seen = {start: 0}
    out = [start]
    for s in out:
        for g in gens:
            t = frozenset(g.images[x] for x in s)
            if t not in seen:
                seen[t] = len(out)
                out.append(t)
    return out


# --- the four groups ----------------------------------------------------------------

def m11(rng):
    gens = [cycles_1based(11, "(1,2,3,4,5,6,7,8,9,10,11)"), cycles_1based(11, "(3,7,11,8)(4,10,5,6)")]
    G = PermGroup(gens, 11)
    assert G.order() == 7920
    while True:
        a = G.chain.random_element(rng)
        b = G.chain.random_element(rng)
        oa, ob = a.order(), b.order()
        if oa % 2 or ob % 5:
            continue
        a, b = a ** (oa // 2), b ** (ob // 5)
        if (a * b).order() == 4 and PermGroup([a, b], 11).order() == 120:
            break
    ca = CosetAction(G, PermGroup([a, b], 11))
    assert ca.degree == 66
    return gens, subgroup_words(gens, ca.generators, 0, 120)


def m12():
    q = 11
    inf = q

    def mob(f):
        return Permutation([f(x) if x != inf else inf for x in range(q)] + [inf])

    a = mob(lambda x: (x + 1) % q)
    b = Permutation([(-pow(x, -1, q)) % q if x else inf for x in range(q)] + [0])
    c = mob(lambda x: (4 * x * x - 3 * pow(x, 7, q)) % q)
    gens = [a, b, c]
    assert PermGroup(gens, 12).order() == 95040
    pairs = [frozenset(p) for p in combinations(range(12), 2)]
    act = set_action(gens, pairs)
    return gens, subgroup_words(gens, act, pairs.index(frozenset({0, 1})), 1440)


def m23():
    gens = [cycles_1based(23, "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)"),
            cycles_1based(23, "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)")]
    assert PermGroup(gens, 23).order() == 10200960
    ext = [Permutation(list(g.images) + [23]) for g in gens]
    ext.append(cycles_1based(24, "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)"))
    M24 = PermGroup(ext, 24, base_prefix=(0, 1, 2, 3, 4))
    assert M24.order() == 244823040
    # the pointwise stabilizer of five points has orbits of size 3 (rest of their octad) and 16
    lv = M24.chain.levels[5]
    rest = [x for x in range(5, 24)]
    orbs = {}
    for x in rest:
        o = frozenset(orbit([x], lv.gens)) if lv.gens else frozenset([x])
        orbs[o] = len(o)
    octad = frozenset(range(5)) | next(o for o, k in orbs.items() if k == 3)
    octads = set_orbit(ext, octad)
    assert len(octads) == 759
    avoid = [o for o in octads if 23 not in o]
    assert len(avoid) == 506
    start = min(avoid, key=sorted)
    sets = set_orbit(gens, start)
    assert len(sets) == 506
    act = set_action(gens, sets)
    return gens, subgroup_words(gens, act, 0, 20160)


JANKO_Y = np.roll(np.eye(7, dtype=np.int64), 1, axis=1)
JANKO_Z = np.array([[-3, 2, -1, -1, -3, -1, -3], [-2, 1, 1, 3, 1, 3, 3], [-1, -1, -3, -1, -3, -3, 2],
                    [-1, -3, -1, -3, -3, 2, -1], [-3, -1, -3, -3, 2, -1, -1], [1, 3, 3, -2, 1, 1, 3],
                    [3, 3, -2, 1, 1, 3, 1]], dtype=np.int64) % 11


def _projective_points(p, m):
    """Normalized vectors grouped by leading position, built without the full p^m array."""
    chunks = []
    for lead in range(m):
        k = m - lead - 1
        tail = np.indices((p,) * k).reshape(k, -1).T if k else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(tail), m), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        chunks.append(block)
    return np.concatenate(chunks)


def j1(rng):
    p, m = 11, 7
    pts = _projective_points(p, m)
    weights = p ** np.arange(m - 1, -1, -1)
    codes = pts @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    inv = np.array([pow(i, -1, p) if i else 0 for i in range(p)])

    def act(M):
        out = np.empty(len(pts), dtype=np.int64)
        for lo in range(0, len(pts), 200_000):
            V = pts[lo:lo + 200_000] @ M % p
            f = np.argmax(V != 0, axis=1)
            V = V * inv[V[np.arange(len(V)), f]][:, None] % p
            out[lo:lo + 200_000] = order[np.searchsorted(sorted_codes, V @ weights)]
        return out

    pY, pZ = act(JANKO_Y), act(JANKO_Z)
    N = len(pts)
    graph = coo_matrix((np.ones(2 * N), (np.tile(np.arange(N), 2), np.concatenate([pY, pZ]))), shape=(N, N))
    _, lab = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(lab)
    comp = int(np.flatnonzero(sizes == 1540)[0])
    orb = np.flatnonzero(lab == comp)
    loc = np.full(N, -1)
    loc[orb] = np.arange(len(orb))
    gens = [Permutation(loc[pY[orb]].tolist()), Permutation(loc[pZ[orb]].tolist())]
    G = PermGroup(gens, 1540)
    assert G.order() == 175560
    while True:
        x = G.chain.random_element(rng)
        y = G.chain.random_element(rng)
        ox, oy = x.order(), y.order()
        if ox % 2 or oy % 3:
            continue
        a, b = x ** (ox // 2), y ** (oy // 3)
        if (a * b).order() == 11 and PermGroup([a, b], 1540).order() == 660:
            break
    ca = CosetAction(G, PermGroup([a, b], 1540))
    assert ca.degree == 266
    g266 = ca.generators
    assert PermGroup(g266, 266).order() == 175560
    return g266, subgroup_words(g266, g266, 0, 660)


def coxeter_graph() -> Graph:
    """3-subsets of a 7-set that are not lines of a Fano plane, adjacent when disjoint."""
    fano = {frozenset(((i) % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7)}
    verts = [frozenset(s) for s in combinations(range(7), 3) if frozenset(s) not in fano]
    edges = [(i, j) for i, j in combinations(range(len(verts)), 2) if not verts[i] & verts[j]]
    g = Graph.from_edges(len(verts), edges)
    assert g.n == 28 and g.valency == 3
    return g


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--only", nargs="*", default=["m11", "m12", "m23", "j1", "coxeter"])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    jobs = {
        "m11": (lambda: m11(rng), "m11.gens", "m11_s5.sub"),
        "m12": (m12, "m12.gens", "m12_m10.sub"),
        "m23": (m23, "m23.gens", "m23_a8.sub"),
        "j1": (lambda: j1(rng), "j1.gens", "j1_l2_11.sub"),
    }
    for name in args.only:
        t0 = time.time()
        if name == "coxeter":
            coxeter_graph().write(args.out / "coxeter.el")
        else:
            build, gfile, sfile = jobs[name]
            gens, words = build()
            write_gens(args.out / gfile, gens)
            write_sub(args.out / sfile, gfile, words)
        print(f"{name}: {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
