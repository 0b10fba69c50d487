"""Projective lines under PSL(m,q) and totally singular points under PΩ±(2m,q).

Line graphs: Δ1 joins lines meeting in a point, Δ2 joins disjoint lines.
Singular-point graphs: Δ1 joins perpendicular points, Δ2 the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from ..ff import is_prime
from ..hamsearch import DEFAULT_BUDGET
from ..orbital import Graph
from ..permgrp import Action, Permutation, PermGroup
from ..geometry import (block_diag, identity, mat_inv, mat_pow, normalize, point_index,
                        projective_lines, projective_points, line_permutation,
                        singer_matrix, sl_generators, span_points, transpose, vec_mat)
from ..quolift import BlockSystem, LiftOutcome, lift_cycle, lift_first, quotient, quotient_cycles
from .common import QUOTIENT_LIFT, SINGER_COVER, SPLICE, CaseResult, ConstructionFailed, run_ladder

VERTEX_CAP = 5000
MEET, DISJOINT = 1, 2
PERP, NONPERP = 1, 2


def _check_prime(q):
    if not is_prime(q):
        raise ValueError(f"q={q}: only prime fields are supported")


def gaussian_binomial_2(m: int, q: int) -> int:
    """Number of 2-spaces of F_q^m."""
    return (q ** m - 1) * (q ** (m - 1) - 1) // ((q ** 2 - 1) * (q - 1))


# --- lines of projective space -----------------------------------------------------

@lru_cache(maxsize=None)
def line_graph(m: int, q: int, suborbit: int) -> Graph:
    """Δ1 (meet in a point) or Δ2 (disjoint) on the lines of PG(m-1, q)."""
    _check_prime(q)
    if gaussian_binomial_2(m, q) > VERTEX_CAP:
        raise ValueError(f"{gaussian_binomial_2(m, q)} lines exceeds the cap {VERTEX_CAP}")
    lines = projective_lines(m, q)
    want = 1 if suborbit == MEET else 0
    nbrs = [[k for k, M in enumerate(lines) if k != j and len(L & M) == want]
            for j, L in enumerate(lines)]
    return Graph.from_neighbor_lists(nbrs, labels=[tuple(sorted(L)) for L in lines], check=False)


def line_action(m: int, q: int) -> Action:
    """SL(m,q) on lines (the kernel acts trivially), base line 0."""
    gens = [Permutation(line_permutation(A, m, q)) for A in sl_generators(m, q)]
    G = PermGroup(gens, len(gens[0].images))
    return Action(G.degree, gens, 0, G.stabilizer_generators(0), None, ["x", "y"])


def meet_valency(m: int, q: int) -> int:
    """Lines meeting a fixed line in exactly one point: (q+1) * (lines per point - 1)."""
    per_point = (q ** (m - 1) - 1) // (q - 1)
    return (q + 1) * (per_point - 1)


def stated_meet_valency(q: int) -> int:
    """The value (q^4 - q)/(q^2 - q) that some accounts give for the 4-dimensional case."""
    return (q ** 4 - q) // (q ** 2 - q)


def star_cycle(q: int) -> list[int]:
    """Hamilton cycle of Δ1 on the lines of PG(3,q) from stars through a Singer orbit.

    α = (1,0,0,0) is off the plane U = {x0 = 0}; β_i = β_0 h^i runs over the
    points of U for a Singer element h of U.  The lines not in U through β_i
    form a clique X_i that contains ⟨α, β_i⟩, and the lines ⟨β_{i-1}, β_i⟩
    are exactly the lines of U.  The cycle visits, for i = 1, ..., s-1, 0:
    ⟨β_{i-1}, β_i⟩, the rest of X_i, then ⟨α, β_i⟩.
    """
    _check_prime(q)
    lines = projective_lines(4, q)
    lidx = {L: k for k, L in enumerate(lines)}
    pidx = point_index(4, q)
    pts = projective_points(4, q)
    h = singer_matrix(3, q)
    s = q * q + q + 1
    alpha = (1, 0, 0, 0)
    beta = []
    v = (1, 0, 0)
    for _ in range(s):
        beta.append((0,) + normalize(v, q))
        v = vec_mat(v, h, q)
    if len(set(beta)) != s:
        raise ConstructionFailed("Singer orbit does not cover the plane")
    in_u = lambda L: all(pts[x][0] == 0 for x in L)
    cycle = []
    for i in list(range(1, s)) + [0]:
        prev, cur = beta[i - 1], beta[i]
        b = pidx[cur]
        cycle.append(lidx[span_points([prev, cur], q)])
        last = lidx[span_points([alpha, cur], q)]
        cycle += [k for k, L in enumerate(lines) if b in L and not in_u(L) and k != last]
        cycle.append(last)
    return cycle


def singer_line_classes(m: int, q: int):
    """Singer orbit P_k = α h^k and, per difference class μ, the lines ⟨P_kμ, P_(k+1)μ⟩ in order of k."""
    h = singer_matrix(m, q)
    s = (q ** m - 1) // (q - 1)
    pidx = point_index(m, q)
    P = []
    v = tuple(int(i == 0) for i in range(m))
    for _ in range(s):
        P.append(normalize(v, q))
        v = vec_mat(v, h, q)
    if len({pidx[x] for x in P}) != s:
        raise ConstructionFailed("Singer orbit is not regular on points")
    lidx = {L: k for k, L in enumerate(projective_lines(m, q))}
    classes = {}
    for mu in range(1, s // 2 + 1):
        classes[mu] = [lidx[span_points([P[k * mu % s], P[(k + 1) * mu % s]], q)] for k in range(s)]
    return s, classes


def singer_partition(m: int, q: int):
    """Difference classes μ whose line sets partition all lines (q^2+1 classes for m = 5)."""
    s, classes = singer_line_classes(m, q)
    total = gaussian_binomial_2(m, q)
    sets = {mu: frozenset(v) for mu, v in classes.items() if len(set(v)) == s}
    keys = sorted(sets)
    need = total // s
    if need * s != total:
        raise ConstructionFailed("line count is not a multiple of the Singer orbit length")
    chosen = []

    def extend(start, used):
        if len(chosen) == need:
            return len(used) == total
        for k in range(start, len(keys)):
            S = sets[keys[k]]
            if used & S:
                continue
            chosen.append(keys[k])
            if extend(k + 1, used | S):
                return True
            chosen.pop()
        return False

    if not extend(0, frozenset()):
        raise ConstructionFailed("no Singer partition of the lines")
    return s, {mu: classes[mu] for mu in chosen}


def singer_cover_cycle(m: int, q: int) -> list[int]:
    """Chain the Singer classes of a partition; each class is a cycle through α's orbit.

    The class of μ is visited as ⟨P_0,P_μ⟩, ⟨P_μ,P_2μ⟩, ..., ⟨P_{-μ},P_0⟩;
    consecutive lines share a point and every class starts and ends at a
    line through P_0 = α, so the classes join into one cycle.
    """
    s, part = singer_partition(m, q)
    cycle = []
    for mu, lines in part.items():
        cycle += lines
    return cycle


def grassmann_case(m: int, q: int, suborbit: int, budget: int = DEFAULT_BUDGET, override=None) -> CaseResult:
    g = line_graph(m, q, suborbit)
    val = g.valency
    checks = {}
    notes = []
    if suborbit == MEET:
        checks["valency"] = val == meet_valency(m, q)
        if m == 4:
            stated = stated_meet_valency(q)
            checks["stated-valency"] = val == stated
            if val != stated:
                notes.append(f"enumerated meet valency {val} differs from (q^4-q)/(q^2-q) = {stated}")
            build, tag = (lambda: star_cycle(q)), SPLICE
        else:
            build, tag = (lambda: singer_cover_cycle(m, q)), SINGER_COVER
    else:
        build, tag = None, None
        checks["valency"] = val == gaussian_binomial_2(m, q) - 1 - meet_valency(m, q)
    family = {4: "psl4-lines", 5: "psl5-lines"}.get(m, f"psl{m}-lines")
    res = run_ladder(f"{family} q={q} suborbit={suborbit}", g, build, tag,
                     budget=budget, override=override, checks=checks)
    res.notes[:0] = notes
    return res


# --- totally singular points ------------------------------------------------------

def _least_nonsquare(q):
    return next(t for t in range(2, q) if pow(t, (q - 1) // 2, q) == q - 1)


@dataclass(frozen=True)
class OrthogonalSpace:
    sign: int  # -1 or +1
    m: int     # half the dimension
    q: int

    @property
    def dim(self):
        return 2 * self.m

    def gram(self):
        """Bilinear form: hyperbolic pairs x_i, x_{i+k}, plus diag(1, -t) for the minus type."""
        q, d = self.q, self.dim
        k = self.m if self.sign > 0 else self.m - 1
        J = np.zeros((d, d), dtype=np.int64)
        for i in range(k):
            J[i, i + k] = J[i + k, i] = 1
        if self.sign < 0:
            if q == 2:
                raise ValueError("minus type is only implemented for odd q")
            J[d - 2, d - 2] = 1
            J[d - 1, d - 1] = -_least_nonsquare(q) % q
        return J

    def quadratic(self, X):
        """Q(x) for rows of X (hyperbolic part x_i x_{i+k}, anisotropic part (x^2 - t y^2)/2)."""
        q = self.q
        k = self.m if self.sign > 0 else self.m - 1
        Qv = (X[:, :k] * X[:, k:2 * k]).sum(axis=1)
        if self.sign < 0:
            t = _least_nonsquare(q)
            half = pow(2, -1, q)
            Qv = Qv + half * (X[:, -2] ** 2 - t * X[:, -1] ** 2)
        return Qv % q

    def expected_points(self) -> int:
        q, m = self.q, self.m
        if self.sign < 0:
            return (q ** m + 1) * (q ** (m - 1) - 1) // (q - 1)
        return (q ** m - 1) * (q ** (m - 1) + 1) // (q - 1)


@lru_cache(maxsize=None)
def singular_points(sign: int, m: int, q: int):
    """Totally singular 1-spaces as normalized vectors, checked against the closed-form count."""
    _check_prime(q)
    sp = OrthogonalSpace(sign, m, q)
    if sp.expected_points() > VERTEX_CAP:
        raise ValueError(f"{sp.expected_points()} points exceeds the cap {VERTEX_CAP}")
    vecs = [v for v in product(range(q), repeat=sp.dim) if any(v) and normalize(v, q) == v]
    X = np.array(vecs, dtype=np.int64)
    pts = X[sp.quadratic(X) == 0]
    if len(pts) != sp.expected_points():
        raise AssertionError(f"found {len(pts)} singular points, expected {sp.expected_points()}")
    return sp, pts


def singular_graph(sign: int, m: int, q: int, suborbit: int) -> Graph:
    sp, pts = singular_points(sign, m, q)
    G = pts @ sp.gram() @ pts.T % q
    perp = G == 0
    np.fill_diagonal(perp, False)
    adj = perp if suborbit == PERP else ~perp
    if suborbit != PERP:
        np.fill_diagonal(adj, False)
    nbrs = [np.flatnonzero(row).tolist() for row in adj]
    return Graph.from_neighbor_lists(nbrs, labels=[tuple(map(int, v)) for v in pts], check=False)


def singer_block_element(sign: int, m: int, q: int):
    """B = C ⊕ (C^T)^{-1} (⊕ E_2 for the minus type) with C = A^{q-1}, A a Singer cycle of GL(k,q)."""
    k = m if sign > 0 else m - 1
    A = singer_matrix(k, q)
    C = mat_pow(A, q - 1, q)
    parts = [C, mat_inv(transpose(C), q)]
    if sign < 0:
        parts.append(identity(2))
    return block_diag(*parts)


def singer_blocks(sign: int, m: int, q: int) -> BlockSystem:
    sp, pts = singular_points(sign, m, q)
    B = np.array(singer_block_element(sign, m, q), dtype=np.int64)
    J = sp.gram()
    if not np.array_equal(B @ J @ B.T % q, J % q):
        raise AssertionError("B does not preserve the form")
    where = {tuple(map(int, v)): k for k, v in enumerate(pts)}
    img = pts @ B % q
    perm = [where[normalize(tuple(map(int, v)), q)] for v in img]
    return BlockSystem.from_semiregular(Permutation(perm))


def perp_valency(sign: int, m: int, q: int) -> int:
    if sign < 0:
        return q ** 5 + q ** 4 + q ** 2 + q if m == 4 else None
    return (q ** (m - 1) + q) * (q ** (m - 1) - 1) // (q - 1)


def perp_block_degrees(sign: int, m: int, q: int) -> tuple[int, int]:
    """(internal, cross) neighbour counts of the Singer block quotient."""
    k = m if sign > 0 else m - 1
    if sign < 0:
        return q * q + q, q + 1
    return (q ** k - 1) // (q - 1) - 1, (q ** (k - 1) - 1) // (q - 1)


def base_cell(sign: int, m: int, q: int, bs: BlockSystem) -> int:
    """Cell of α = <(1, 0, ..., 0)>."""
    sp, pts = singular_points(sign, m, q)
    alpha = tuple(int(i == 0) for i in range(sp.dim))
    a = next(k for k, v in enumerate(pts) if tuple(map(int, v)) == alpha)
    return next(k for k, cell in enumerate(bs.cells) if a in cell)


def block_quotient_cycle(g: Graph, bs: BlockSystem, budget: int = 10**6):
    """Lift 0, 1, ..., m-1 when the block quotient is complete, else a searched quotient cycle."""
    qg = quotient(g, bs)
    if qg.is_complete():
        res = lift_cycle(list(range(qg.m)), g, bs)
        if res.outcome is LiftOutcome.CYCLE:
            return list(res.certificate.cycle)
    if not qg.is_connected():
        raise ConstructionFailed("block quotient is disconnected")
    res = lift_first(qg, g, bs, quotient_cycles(qg, limit=100, budget=budget))
    if res is None:
        raise ConstructionFailed("no quotient cycle lifts")
    return list(res.certificate.cycle)


def orthogonal_case(sign: int, m: int, q: int, suborbit: int, budget: int = DEFAULT_BUDGET,
                    override=None) -> CaseResult:
    """Δ1 via the Singer block quotient and a lift, Δ2 via density plus search.

    The base row of the quotient (the cell of α) has the closed-form
    degrees; the other rows generally do not, so completeness of the
    quotient is reported as a separate check.
    """
    g = singular_graph(sign, m, q, suborbit)
    sp = OrthogonalSpace(sign, m, q)
    checks = {"points": g.n == sp.expected_points()}
    family = "pomega-minus" if sign < 0 else "pomega-plus"
    case_id = f"{family} m={m} q={q} suborbit={suborbit}"
    if suborbit != PERP:
        checks["valency"] = g.valency == q ** (2 * m - 2)
        return run_ladder(case_id, g, budget=budget, override=override, checks=checks)
    bs = singer_blocks(sign, m, q)
    qg = quotient(g, bs)
    internal, cross = perp_block_degrees(sign, m, q)
    a = base_cell(sign, m, q, bs)
    others = [b for b in range(qg.m) if b != a]
    checks["valency"] = g.valency == perp_valency(sign, m, q)
    checks["base-row"] = qg.internal(a) == internal and all(qg.d(a, b) == cross for b in others)
    checks["degree-identity"] = perp_valency(sign, m, q) == internal + len(others) * cross
    checks["quotient-complete"] = qg.is_complete()
    checks["uniform-degrees"] = all(qg.internal(x) == internal for x in range(qg.m)) and all(
        qg.d(x, y) == cross for x in range(qg.m) for y in range(qg.m) if x != y)
    res = run_ladder(case_id, g, lambda: block_quotient_cycle(g, bs), QUOTIENT_LIFT,
                     budget=budget, override=override, checks=checks)
    missing = sum(1 for x in range(qg.m) for y in range(x + 1, qg.m) if qg.d(x, y) == 0)
    res.notes.append(f"block quotient on {qg.m} cells, base row internal {qg.internal(a)} "
                     f"cross {sorted({qg.d(a, b) for b in others})}, {missing} empty cell pairs")
    return res
