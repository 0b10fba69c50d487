"""Explicit models of two PSL(2,q) actions and their suborbit structure.

Matrices are 4-tuples ``(a, b, c, d)`` over F_q (q prime) acting on row
vectors from the right.  The projective point of ``(x, y)`` is ``y/x``; the
point at infinity is encoded as the integer ``q``.  With this convention
``u = (1,1,0,1)`` is z -> z+1, ``l = (θ,0,0,θ^-1)`` is z -> θ^-2 z and
``t = (0,-1,1,0)`` is z -> -1/z.

Two actions are modelled:

* ``pairs_action``: unordered pairs of projective points (q ≡ 3 mod 4), where
  the stabilizer of {0, ∞} is dihedral of order q-1.  Blocks under ⟨u⟩ are
  B_∞ = {{∞, x}} and B_j = {{x, x+j}} for j = 1..(q-1)/2.
* ``dplus_action``: right cosets of the dihedral subgroup of order q+1
  (q ≡ 1 mod 4).  A coset Hg is identified with the line spanned by the
  traceless matrix g^-1 M0 g, M0 = [[0, θ], [1, 0]]; normalizing its lower-left
  entry to 1 gives a canonical key.  Labels (side, j, i) name the cosets
  H u^j l^i (plain) and H t u^j l^i (primed) with i in 1..(q-1)/4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ff import is_prime, make_field
from .permgrp import Action, PermGroup, Permutation, orbit

SP_SHORT = "SP-short"
NSP_SHORT = "NSP-short"
SP_LONG = "SP-long"
NSP_LONG = "NSP-long"


# --- matrices -----------------------------------------------------------------

def mat_mul(M, N, q):
    a, b, c, d = M
    e, f, g, h = N
    return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)


def mat_inv(M, q):
    a, b, c, d = M
    det = (a * d - b * c) % q
    inv = pow(det, -1, q)
    return (d * inv % q, -b * inv % q, -c * inv % q, a * inv % q)


def mat_pow(M, e, q):
    if e < 0:
        M, e = mat_inv(M, q), -e
    out = (1, 0, 0, 1)
    while e:
        if e & 1:
            out = mat_mul(out, M, q)
        M = mat_mul(M, M, q)
        e >>= 1
    return out


def psl_canonical(M, q):
    """Representative of ±M whose first nonzero entry lies in 1..(q-1)/2."""
    for x in M:
        if x:
            return M if x <= (q - 1) // 2 else tuple(-y % q for y in M)
    raise ValueError("zero matrix")


def psl_order(M, q) -> int:
    ident = {(1, 0, 0, 1), (q - 1, 0, 0, q - 1)}
    g, k = M, 1
    while g not in ident:
        g = mat_mul(g, M, q)
        k += 1
    return k


def mobius(M, z, q):
    """Image of projective point z (q encodes ∞) under M."""
    a, b, c, d = M
    x, y = (0, 1) if z == q else (1, z)
    x2 = (x * a + y * c) % q
    y2 = (x * b + y * d) % q
    if x2 == 0:
        return q
    return y2 * pow(x2, -1, q) % q


def point_permutation(M, q) -> Permutation:
    return Permutation(mobius(M, z, q) for z in range(q + 1))


@dataclass(frozen=True)
class StdElements:
    q: int
    theta: int
    u: tuple
    u_prime: tuple
    l: tuple
    t: tuple


@lru_cache(maxsize=None)
def std_elements(q: int) -> StdElements:
    th = make_field(q).theta
    return StdElements(q, th, (1, 1, 0, 1), (1, 0, 1, 1), (th, 0, 0, pow(th, -1, q)), (0, q - 1, 1, 0))


def psl2_group(q: int) -> PermGroup:
    """PSL(2,q) on the q+1 projective points, generated by u and t."""
    e = std_elements(q)
    return PermGroup([point_permutation(e.u, q), point_permutation(e.t, q)], q + 1)


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // 2


def find_polyhedral_subgroup(q: int, kind: str):
    """Matrices (a, b) generating S4 or A5 inside PSL(2,q).

    ``a`` is t (all involutions are conjugate); ``b`` runs over order-3
    elements in a fixed enumeration order until ab has order 4 (S4) or 5 (A5)
    and ⟨a, b⟩ has the right order.
    """
    target = {"S4": (4, 24), "A5": (5, 60)}[kind]
    a = std_elements(q).t
    G = psl2_group(q)
    pa = point_permutation(a, q)
    for b0 in range(q):
        for b1 in range(q):
            for b2 in range(q):
                # trace ±1 and det 1 give order 3 in PSL(2,q)
                for tr in (1, q - 1):
                    b3 = (tr - b0) % q
                    if (b0 * b3 - b1 * b2) % q != 1:
                        continue
                    b = (b0, b1, b2, b3)
                    if psl_order(b, q) != 3 or psl_order(mat_mul(a, b, q), q) != target[0]:
                        continue
                    H = PermGroup([pa, point_permutation(b, q)], q + 1)
                    if H.order() == target[1]:
                        assert all(G.contains(h) for h in H.generators)
                        return a, b
    raise ValueError(f"no {kind} found in PSL(2,{q})")


# --- shared suborbit record ------------------------------------------------------

@dataclass(frozen=True)
class SuborbitDescriptor:
    representative: object
    length: int
    self_paired: bool
    partner: object = None
    case: str = ""


def _odd_prime(n: int) -> bool:
    return n > 2 and is_prime(n)


# --- pairs of projective points (stabilizer D_{q-1}) -----------------------------

def check_dminus(q: int) -> None:
    if not is_prime(q) or q % 4 != 3:
        raise ValueError(f"q={q} must be a prime congruent to 3 mod 4")
    r = (q + 1) // 4
    if not (_odd_prime(r) and r != q):
        raise ValueError(f"q(q+1)/2 = {q * (q + 1) // 2} is not 2rs for q={q}")


def pair_index(q: int, a: int, b: int) -> int:
    if a == b:
        raise ValueError("pair needs distinct points")
    if a == q:
        return b
    if b == q:
        return a
    d = (b - a) % q
    if d <= (q - 1) // 2:
        j, i = d, a
    else:
        j, i = q - d, b
    return q + (j - 1) * q + i


def pair_label(q: int, v: int) -> tuple[int, int]:
    """Canonical pair for vertex v; ∞ (encoded as q) first, otherwise ascending."""
    if v < q:
        return (q, v)
    j, i = divmod(v - q, q)
    a, b = i, (i + j + 1) % q
    return (min(a, b), max(a, b))


def pair_block(q: int, v: int) -> int:
    """0 for B_∞, j for B_j."""
    return 0 if v < q else (v - q) // q + 1


def pairs_action(q: int) -> Action:
    check_dminus(q)
    n = q * (q + 1) // 2
    e = std_elements(q)
    labels = [pair_label(q, v) for v in range(n)]
    gens = []
    for M in (e.u, e.u_prime, e.l, e.t):
        img = [pair_index(q, mobius(M, a, q), mobius(M, b, q)) for a, b in labels]
        gens.append(Permutation(img))
    u, up, l, t = gens
    base = pair_index(q, q, 0)
    return Action(n, [u, up, l, t], base, [l, t], labels, ["u", "u'", "l", "t"])


def pairs_blocks(q: int) -> list[list[int]]:
    h = (q - 1) // 2
    return [list(range(q))] + [list(range(q + (j - 1) * q, q + j * q)) for j in range(1, h + 1)]


def classify_suborbit_dminus(q: int, j: int) -> SuborbitDescriptor:
    """Suborbit of the pair {j, j+1} from quadratic-residue tests alone.

    Length (q-1)/2 when j^2+j is a non-square, q-1 when it is a square or 0.
    The suborbit is self-paired exactly when j+1 is a non-square or j is a
    nonzero square; otherwise its partner is the suborbit of {-j, -j-1}.
    """
    check_dminus(q)
    F = make_field(q)
    j %= q
    s = (j * j + j) % q
    length = (q - 1) // 2 if F.eta(s) == -1 else q - 1
    self_paired = F.eta((j + 1) % q) == -1 or F.eta(j) == 1
    rep = pair_label(q, pair_index(q, j, (j + 1) % q))
    partner = None
    if not self_paired:
        partner = pair_label(q, pair_index(q, -j % q, (-j - 1) % q))
    short = length == (q - 1) // 2
    case = {(True, True): SP_SHORT, (False, True): NSP_SHORT,
            (True, False): SP_LONG, (False, False): NSP_LONG}[(self_paired, short)]
    return SuborbitDescriptor(rep, length, self_paired, partner, case)


def brute_suborbit_dminus(q: int, j: int, action: Action | None = None) -> SuborbitDescriptor:
    """Same record computed by orbit closure under the stabilizer ⟨l, t⟩."""
    act = action or pairs_action(q)
    j %= q
    v = pair_index(q, j, (j + 1) % q)
    orb = set(orbit([v], act.stabilizer_generators))
    w = pair_index(q, -j % q, (-j - 1) % q)
    # the pair of {j, j+1} is the orbit of the image of {0,∞} under g^-1, g mapping {0,∞} to v
    g = _element_to(act, v)
    back = g.inverse().images[act.base]
    paired_orb = set(orbit([back], act.stabilizer_generators))
    self_paired = paired_orb == orb
    partner = None if self_paired else pair_label(q, w if w in paired_orb else min(paired_orb))
    short = len(orb) == (q - 1) // 2
    case = {(True, True): SP_SHORT, (False, True): NSP_SHORT,
            (True, False): SP_LONG, (False, False): NSP_LONG}[(self_paired, short)]
    return SuborbitDescriptor(pair_label(q, v), len(orb), self_paired, partner, case)


def _element_to(act: Action, v: int) -> Permutation:
    from .permgrp import schreier_tree, tree_word, word_element
    tree = schreier_tree(act.base, act.generators)
    return word_element(act.generators, tree_word(tree, v), act.degree)


def dminus_representatives(q: int) -> list[int]:
    """One j per orbital graph (non-self-paired suborbits merged with their partner).

    j runs through 0..q-1 in increasing order and is kept when its suborbit
    (or the partner) has not been seen yet.
    """
    check_dminus(q)
    act = pairs_action(q)
    seen = set()
    reps = []
    for j in range(q):
        v = pair_index(q, j, (j + 1) % q)
        if v in seen:
            continue
        d = classify_suborbit_dminus(q, j)
        orb = orbit([v], act.stabilizer_generators)
        seen.update(orb)
        if not d.self_paired:
            w = pair_index(q, *d.partner)
            seen.update(orbit([w], act.stabilizer_generators))
        reps.append(j)
    return reps


@dataclass(frozen=True)
class DminusBlockDegrees:
    q: int
    j: int
    case: str
    cross: dict    # i in 1..(q-1)/2 -> d(B_1, B_i); i = 1 is the internal degree
    to_inf: int    # d(B_1, B_∞)
    inf_to: int    # d(B_∞, B_i), the same for every i
    inf_internal: int  # d(B_∞)

    def matrix(self) -> list[list[int]]:
        """d(B_a, B_b) over blocks ordered B_∞, B_1, ..., B_h, using ⟨l⟩-regularity."""
        q, h = self.q, (self.q - 1) // 2
        rows = [[self.inf_internal] + [self.inf_to] * h]
        for a in range(1, h + 1):
            inv = pow(a, -1, q)
            row = [self.to_inf]
            for b in range(1, h + 1):
                k = b * inv % q
                row.append(self.cross[min(k, q - k)])
            rows.append(row)
        return rows


def _nroots(F, disc: int) -> int:
    return 1 + F.eta(disc)


def block_degrees_dminus(q: int, j: int) -> DminusBlockDegrees:
    """Block degrees of the orbital graph of {j, j+1} from discriminant tests.

    For a vertex of B_1 the neighbours in B_i come from the two quadratics
    i j(j+1) u^2 + (2ij + i ∓ 1) u + i = 0 with discriminants
    δ1 = i^2 - (2+4j) i + 1 and δ2 = i^2 + (2+4j) i + 1.  In the short
    self-paired case only roots u in S* give edges and the two roots of each
    quadratic have opposite residue class (their product 1/(j^2+j) is a
    non-square), so each quadratic contributes [δ ∈ S*].  In the other cases
    both residue classes of u contribute, so every root counts.  When
    j(j+1) = 0 the quadratics degenerate and the quotient off B_∞ is complete
    with constant degree 4.
    """
    check_dminus(q)
    F = make_field(q)
    j %= q
    case = classify_suborbit_dminus(q, j).case
    h = (q - 1) // 2
    c = (2 + 4 * j) % q
    cross = {}
    if case == NSP_LONG:
        for i in range(1, h + 1):
            cross[i] = 2 if i == 1 else 4
        return DminusBlockDegrees(q, j, case, cross, 2, 2, q - 1)
    for i in range(1, h + 1):
        d1 = (i * i - c * i + 1) % q
        d2 = (i * i + c * i + 1) % q
        if case == SP_SHORT:
            cross[i] = (F.eta(d1) == 1) + (F.eta(d2) == 1)
        else:
            cross[i] = _nroots(F, d1) + _nroots(F, d2)
    if case == SP_SHORT:
        return DminusBlockDegrees(q, j, case, cross, 1, 1, 0)
    return DminusBlockDegrees(q, j, case, cross, 2, 2, 0)


# --- cosets of the dihedral subgroup of order q+1 -------------------------------

def check_dplus(q: int) -> None:
    if not is_prime(q) or q % 4 != 1:
        raise ValueError(f"q={q} must be a prime congruent to 1 mod 4")
    r = (q - 1) // 4
    if not (_odd_prime(r) and r != q):
        raise ValueError(f"q(q-1)/2 = {q * (q - 1) // 2} is not 2rs for q={q}")


@dataclass(frozen=True)
class CosetVertex:
    side: int  # 0 plain, 1 primed
    j: int
    i: int

    def __str__(self):
        return f"({self.j},{self.i})" + ("'" if self.side else "")


class DplusModel:
    """Closed-form labelling of the cosets of H ≅ D_{q+1} in PSL(2,q)."""

    def __init__(self, q: int):
        check_dplus(q)
        self.q = q
        self.r = (q - 1) // 4
        F = make_field(q)
        self.theta = th = F.theta
        self.log = {pow(th, k, q): k for k in range(q - 1)}
        self.sqrt_m1 = pow(th, self.r, q)
        self.n = q * (q - 1) // 2
        self.labels = [self.vertex_label(v) for v in range(self.n)]

    # vertex indexing
    def index(self, lab: CosetVertex) -> int:
        return lab.side * self.q * self.r + (lab.i - 1) * self.q + lab.j

    def vertex_label(self, v: int) -> CosetVertex:
        side, rest = divmod(v, self.q * self.r)
        i, j = divmod(rest, self.q)
        return CosetVertex(side, j, i + 1)

    def block(self, v: int) -> int:
        """Plain blocks B_1..B_r are 0..r-1; primed blocks B'_1..B'_r are r..2r-1."""
        return v // self.q

    # keys
    def key_of_label(self, lab: CosetVertex) -> tuple[int, int]:
        q, th = self.q, self.theta
        a = -lab.j * pow(th, -2 * lab.i, q) % q
        e = 1 - 4 * lab.i if lab.side == 0 else -1 - 4 * lab.i
        return a, (pow(th, e % (q - 1), q) - a * a) % q

    def label_of_key(self, key) -> CosetVertex:
        q, th = self.q, self.theta
        a, b = key
        e = self.log[(a * a + b) % q]
        if e % 4 == 1:
            side, i = 0, (1 - e) // 4
        elif e % 4 == 3:
            side, i = 1, (-1 - e) // 4
        else:
            raise AssertionError("key determinant is not a non-square")
        i %= self.r
        if i == 0:
            i = self.r
        j = -a * pow(th, 2 * i, q) % q
        return CosetVertex(side, j, i)

    def key_of_element(self, g) -> tuple[int, int]:
        q = self.q
        M = mat_mul(mat_mul(mat_inv(g, q), (0, self.theta, 1, 0), q), g, q)
        return self._normalize(M)

    def _normalize(self, M) -> tuple[int, int]:
        a, b, c, _ = M
        inv = pow(c, -1, self.q)
        return a * inv % self.q, b * inv % self.q

    def conjugate_key(self, key, s) -> tuple[int, int]:
        a, b = key
        q = self.q
        M = mat_mul(mat_mul(mat_inv(s, q), (a, b, 1, -a % q), q), s, q)
        return self._normalize(M)

    def vertex_of(self, g) -> int:
        return self.index(self.label_of_key(self.key_of_element(g)))

    def element_of(self, lab: CosetVertex):
        e = std_elements(self.q)
        g = mat_mul(mat_pow(e.u, lab.j, self.q), mat_pow(e.l, lab.i, self.q), self.q)
        return mat_mul(e.t, g, self.q) if lab.side else g

    def permutation(self, s) -> Permutation:
        keys = [self.key_of_label(lab) for lab in self.labels]
        return Permutation(self.index(self.label_of_key(self.conjugate_key(k, s))) for k in keys)

    @property
    def base(self) -> int:
        return self.index(CosetVertex(0, 0, self.r))

    def subgroup_elements(self, with_y: bool = False) -> list:
        """All 2(q+1) matrices t(x,y) and t'(x,y) of SL(2,q) over H (x^2 - θ y^2 = 1).

        With ``with_y`` each entry is ``(matrix, y)``.
        """
        q, th, s = self.q, self.theta, self.sqrt_m1
        out = []
        for x in range(q):
            for y in range(q):
                if (x * x - th * y * y) % q == 1:
                    out.append(((x, y * th % q, y, x), y))
                    out.append(((s * x % q, -s * y * th % q, s * y % q, -s * x % q), y))
        return out if with_y else [m for m, _ in out]

    def subgroup_generators(self) -> list[tuple]:
        """A generator of the cyclic part t(x,y) and the involution t'(1,0)."""
        q, th = self.q, self.theta
        for x in range(q):
            for y in range(1, q):
                if (x * x - th * y * y) % q == 1:
                    M = (x, y * th % q, y, x)
                    if psl_order(M, q) == (q + 1) // 2:
                        s = self.sqrt_m1
                        return [M, (s, 0, 0, -s % q)]
        raise AssertionError("no generator of the torus")


def dplus_action(q: int) -> Action:
    model = DplusModel(q)
    e = std_elements(q)
    gens = [model.permutation(M) for M in (e.u, e.l, e.t)]
    stab = [model.permutation(M) for M in model.subgroup_generators()]
    return Action(model.n, gens, model.base, stab, model.labels, ["u", "l", "t"])


def dplus_blocks(q: int) -> list[list[int]]:
    r = (q - 1) // 4
    return [list(range(b * q, (b + 1) * q)) for b in range(2 * r)]


def classify_suborbits_dplus(q: int) -> list[SuborbitDescriptor]:
    """Suborbits of H from their double-coset representatives.

    H l^i t H (i = 1..r) are self-paired of length (q+1)/2; H l^i H
    (i = 1..r-1) have length (q+1)/2 and pair i with r-i; H u^i H, with i^2 a
    nonzero square lying in 4θ + N and i taken up to sign, are self-paired of
    length q+1.
    """
    model = DplusModel(q)
    e = std_elements(q)
    F = make_field(q)
    r, th = model.r, model.theta
    out = []
    for i in range(1, r + 1):
        g = mat_mul(mat_pow(e.l, i, q), e.t, q)
        out.append(SuborbitDescriptor(model.labels[model.vertex_of(g)], (q + 1) // 2, True, None, SP_SHORT))
    for i in range(1, r):
        g = mat_pow(e.l, i, q)
        p = mat_pow(e.l, r - i, q)
        out.append(SuborbitDescriptor(model.labels[model.vertex_of(g)], (q + 1) // 2, False,
                                      model.labels[model.vertex_of(p)], NSP_SHORT))
    for i in range(1, (q - 1) // 2 + 1):
        sq = i * i % q
        if F.eta((sq - 4 * th) % q) == -1:
            g = mat_pow(e.u, i, q)
            out.append(SuborbitDescriptor(model.labels[model.vertex_of(g)], q + 1, True, None, SP_LONG))
    total = 1 + sum(d.length for d in out)
    if total != model.n or 1 + (q - 3) // 2 * (q + 1) // 2 + (q - 1) // 4 * (q + 1) != model.n:
        raise AssertionError("suborbit lengths do not account for every coset")
    return out


def dplus_representatives(q: int) -> list[SuborbitDescriptor]:
    """One descriptor per orbital graph: NSP pairs reduced to i < r - i."""
    out = []
    r = (q - 1) // 4
    nsp_seen = 0
    for d in classify_suborbits_dplus(q):
        if d.case == NSP_SHORT:
            nsp_seen += 1
            if nsp_seen > (r - 1) // 2:
                continue
        out.append(d)
    return out


@dataclass(frozen=True)
class DplusBlockDegrees:
    q: int
    case: str
    source: int              # vertex whose neighbours were counted
    counts: tuple[int, ...]  # all neighbours per block, blocks as in DplusModel.block
    family: tuple[int, ...]  # neighbours reached by some conic point with y != 0

    @property
    def degenerate(self) -> tuple[int, ...]:
        """Neighbours reached only through y = 0, i.e. h = ±1 or t'(±1, 0)."""
        return tuple(a - b for a, b in zip(self.counts, self.family))


def block_degrees_dplus(q: int, rep: SuborbitDescriptor, source_side: int = 0,
                        source: CosetVertex | None = None) -> DplusBlockDegrees:
    """Neighbour counts per block for the base coset (side 0), H t (side 1) or any ``source``.

    The neighbours of Hx in the orbital graph of H g0 H are the cosets
    H g0 h x with h = t(x1, y1) or t'(x1, y1) running over the conic
    x1^2 - θ y1^2 = 1; each is labelled in closed form and tallied by block.
    Solving for the block label divides by y1, so the neighbours coming only
    from y1 = 0 are reported separately.  Non-self-paired suborbits contribute
    the partner's double coset as well.
    """
    model = DplusModel(q)
    e = std_elements(q)
    if source is not None:
        x = model.element_of(source)
    else:
        x = (1, 0, 0, 1) if source_side == 0 else e.t
    reps = [model.element_of(rep.representative)]
    if not rep.self_paired:
        reps.append(model.element_of(rep.partner))
    hs = model.subgroup_elements(with_y=True)
    generic, special = set(), set()
    for g0 in reps:
        for h, y in hs:
            v = model.vertex_of(mat_mul(mat_mul(g0, h, q), x, q))
            (generic if y else special).add(v)
    counts = [0] * (2 * model.r)
    family = [0] * (2 * model.r)
    for v in generic | special:
        counts[model.block(v)] += 1
    for v in generic:
        family[model.block(v)] += 1
    return DplusBlockDegrees(q, rep.case, model.vertex_of(x), tuple(counts), tuple(family))
