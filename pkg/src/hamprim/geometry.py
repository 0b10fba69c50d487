"""Projective geometry over prime fields: points, lines, matrices, Singer cycles.

Works for every prime p, including p = 2, with plain modular arithmetic; the
field module is only needed for odd characteristic.  Vectors are tuples,
matrices are tuples of row tuples, and the group acts on row vectors from
the right.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .ff import is_prime, prime_factors


def normalize(v, p):
    """Projective representative: first nonzero coordinate scaled to 1."""
    for x in v:
        if x % p:
            inv = pow(x, -1, p)
            return tuple(y * inv % p for y in v)
    raise ValueError("zero vector")


@lru_cache(maxsize=None)
def projective_points(m: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Points of PG(m-1, p) in lexicographic order of normalized vectors."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pts = []
    for v in product(range(p), repeat=m):
        if any(v) and normalize(v, p) == v:
            pts.append(v)
    return tuple(pts)


@lru_cache(maxsize=None)
def point_index(m: int, p: int) -> dict:
    return {v: k for k, v in enumerate(projective_points(m, p))}


def vec_mat(v, M, p):
    return tuple(sum(v[i] * M[i][j] for i in range(len(v))) % p for j in range(len(M[0])))


def mat_mul(A, B, p):
    return tuple(vec_mat(row, B, p) for row in A)


def identity(m):
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def transpose(A):
    return tuple(zip(*A))


def mat_inv(A, p):
    m = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity(m))]
    for c in range(m):
        piv = next((r for r in range(c, m) if aug[r][c] % p), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(m):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[m:]) for row in aug)


def mat_pow(A, e, p):
    if e < 0:
        A, e = mat_inv(A, p), -e
    out = identity(len(A))
    while e:
        if e & 1:
            out = mat_mul(out, A, p)
        A = mat_mul(A, A, p)
        e >>= 1
    return out


def block_diag(*blocks):
    m = sum(len(b) for b in blocks)
    out = [[0] * m for _ in range(m)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return tuple(tuple(r) for r in out)


def companion(coeffs, p):
    """Companion matrix of x^m + c_{m-1} x^{m-1} + ... + c_0 (coeffs low degree first)."""
    m = len(coeffs)
    rows = []
    for i in range(m - 1):
        rows.append(tuple(int(j == i + 1) for j in range(m)))
    rows.append(tuple(-c % p for c in coeffs))
    return tuple(rows)


def matrix_order_divides(A, e, p) -> bool:
    return mat_pow(A, e, p) == identity(len(A))


@lru_cache(maxsize=None)
def singer_matrix(m: int, p: int):
    """Companion matrix of the least primitive polynomial of degree m (order p^m - 1)."""
    N = p ** m - 1
    for code in range(p ** m):
        coeffs = tuple((code // p ** i) % p for i in range(m))
        if coeffs[0] == 0:
            continue
        A = companion(coeffs, p)
        if not matrix_order_divides(A, N, p):
            continue
        if all(not matrix_order_divides(A, N // r, p) for r in prime_factors(N)):
            return A
    raise AssertionError(f"no primitive polynomial of degree {m} over F_{p}")


def point_permutation(A, m: int, p: int) -> list[int]:
    pts = projective_points(m, p)
    idx = point_index(m, p)
    return [idx[normalize(vec_mat(v, A, p), p)] for v in pts]


def span_points(vectors, p) -> frozenset:
    """Indices of the projective points in the span of the given vectors."""
    m = len(vectors[0])
    idx = point_index(m, p)
    out = set()
    for coeffs in product(range(p), repeat=len(vectors)):
        if not any(coeffs):
            continue
        v = tuple(sum(c * vec[j] for c, vec in zip(coeffs, vectors)) % p for j in range(m))
        if any(v):
            out.add(idx[normalize(v, p)])
    return frozenset(out)


@lru_cache(maxsize=None)
def projective_lines(m: int, p: int) -> tuple[frozenset, ...]:
    """All 2-spaces of F_p^m as sets of point indices, sorted by their point tuples."""
    pts = projective_points(m, p)
    seen = set()
    lines = []
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            L = span_points([pts[a], pts[b]], p)
            if L not in seen:
                seen.add(L)
                lines.append(L)
    lines.sort(key=lambda L: tuple(sorted(L)))
    return tuple(lines)


def line_index(m: int, p: int) -> dict:
    return {L: k for k, L in enumerate(projective_lines(m, p))}


def line_permutation(A, m: int, p: int) -> list[int]:
    perm = point_permutation(A, m, p)
    lidx = line_index(m, p)
    return [lidx[frozenset(perm[x] for x in L)] for L in projective_lines(m, p)]


def elementary_generators(m: int, p: int):
    """Transvections I + E_ij (i != j), which generate SL(m, p)."""
    gens = []
    for i in range(m):
        for j in range(m):
            if i != j:
                rows = [list(r) for r in identity(m)]
                rows[i][j] = 1
                gens.append(tuple(tuple(r) for r in rows))
    return gens


def sl_generators(m: int, p: int):
    """Two generators of SL(m, p): a transvection and a monomial m-cycle."""
    t = [list(r) for r in identity(m)]
    t[0][1] = 1
    c = [[0] * m for _ in range(m)]
    for i in range(m - 1):
        c[i][i + 1] = 1
    c[m - 1][0] = (-1) ** (m - 1) % p
    return [tuple(map(tuple, t)), tuple(map(tuple, c))]
