"""Counting identities for quadratic residues in prime fields.

Every count here is produced by exhaustive enumeration over F_q; the closed
forms and inequalities they are compared with live in ``closed_*`` helpers and
in the ``check_*`` functions, so the enumerations double as test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ff import is_prime

S, N = "S", "N"

# (class of x-a, class of x-b, class of x, bound direction)
BOUND_PATTERNS: tuple[tuple[str, str, str, str], ...] = (
    (S, S, N, "le"),
    (S, N, N, "le"),
    (S, N, S, "ge"),
    (N, N, S, "ge"),
)


def _check_prime(q: int) -> None:
    if q < 3 or not is_prime(q):
        raise ValueError(f"q={q} is not an odd prime")


def eta_table(q: int) -> np.ndarray:
    """eta[x] for x in 0..q-1, with eta(0) = 0."""
    eta = -np.ones(q, dtype=np.int64)
    sq = (np.arange(1, q, dtype=np.int64) ** 2) % q
    eta[sq] = 1
    eta[0] = 0
    return eta


@dataclass(frozen=True)
class ResidueCounts:
    q: int
    c_sp1_minus_s: int  # |(S*+1) ∩ (-S*)|
    c_ss: int           # |S* ∩ (S*+1)|
    c_nn: int           # |N ∩ (N+1)|
    c_sn_plus: int      # |S* ∩ (N+1)|
    c_sn_minus: int     # |S* ∩ (N-1)|


def residue_intersection_counts(q: int) -> ResidueCounts:
    _check_prime(q)
    eta = eta_table(q)
    x = np.arange(q)
    sq = eta == 1
    ns = eta == -1
    minus1 = (x - 1) % q
    plus1 = (x + 1) % q
    return ResidueCounts(
        q=q,
        c_sp1_minus_s=int(np.sum(sq[minus1] & sq[(-x) % q])),
        c_ss=int(np.sum(sq & sq[minus1])),
        c_nn=int(np.sum(ns & ns[minus1])),
        c_sn_plus=int(np.sum(sq & ns[minus1])),
        c_sn_minus=int(np.sum(sq & ns[plus1])),
    )


def closed_sp1_minus_s(q: int) -> int:
    return (q - 5) // 4 if q % 4 == 1 else (q + 1) // 4


def check_residue_counts(rc: ResidueCounts) -> list[str]:
    """Names of the closed forms that the counts violate (empty when all hold)."""
    q = rc.q
    bad = []
    if rc.c_sp1_minus_s != closed_sp1_minus_s(q):
        bad.append("sp1_minus_s")
    if q % 4 == 1:
        if rc.c_ss != (q - 5) // 4:
            bad.append("ss")
        if rc.c_nn != (q - 1) // 4:
            bad.append("nn")
        if rc.c_sn_plus != (q - 1) // 4:
            bad.append("sn_plus")
        if rc.c_sn_minus != (q - 1) // 4:
            bad.append("sn_minus")
    return bad


def upper_bound(q: int) -> int:
    return math.ceil((q + 11 + 2 * math.sqrt(q)) / 8)


def lower_bound(q: int) -> int:
    return math.floor((q - 11 - 2 * math.sqrt(q)) / 8)


def _class_mask(eta: np.ndarray, cls: str) -> np.ndarray:
    return eta == (1 if cls == S else -1)


def triple_count(q: int, a: int, b: int, pattern: tuple[str, str, str]) -> int:
    """|{x : x-a in C1, x-b in C2, x in C3}| by direct enumeration."""
    _check_prime(q)
    a, b = a % q, b % q
    if a == 0 or b == 0 or a == b:
        raise ValueError("need a, b nonzero and distinct")
    eta = eta_table(q)
    c1, c2, c3 = (_class_mask(eta, c) for c in pattern[:3])
    x = np.arange(q)
    return int(np.sum(c1[(x - a) % q] & c2[(x - b) % q] & c3))


def triple_count_matrix(q: int, pattern: tuple[str, str, str]) -> np.ndarray:
    """Counts for all (a, b) at once; entry [a, b] matches triple_count(q, a, b, ...)."""
    eta = eta_table(q)
    c1, c2, c3 = (_class_mask(eta, c).astype(np.int64) for c in pattern[:3])
    x = np.arange(q)
    shift = (x[None, :] - x[:, None]) % q  # shift[a, x] = x - a
    left = c1[shift]
    right = c2[shift] * c3[None, :]
    return left @ right.T


@dataclass(frozen=True)
class BoundReport:
    q: int
    pattern: tuple[str, str, str]
    direction: str
    bound: int
    extreme: int  # max count for "le" patterns, min for "ge"
    holds: bool


def check_triple_bounds(q: int) -> list[BoundReport]:
    _check_prime(q)
    out = []
    mask = np.ones((q, q), dtype=bool)
    mask[0, :] = mask[:, 0] = False
    np.fill_diagonal(mask, False)
    for *pattern, direction in BOUND_PATTERNS:
        pattern = tuple(pattern)
        counts = triple_count_matrix(q, pattern)[mask]
        if direction == "le":
            bound, extreme = upper_bound(q), int(counts.max())
            holds = extreme <= bound
        else:
            bound, extreme = lower_bound(q), int(counts.min())
            holds = extreme >= bound
        out.append(BoundReport(q, pattern, direction, bound, extreme, holds))
    return out


def eta_sum(q: int) -> int:
    return int(eta_table(q).sum())


def eta_quadratic_sums(q: int) -> np.ndarray:
    """sums[A, B] = sum_x eta(x^2 + A x + B) for all A, B in F_q."""
    eta = eta_table(q)
    x = np.arange(q)
    out = np.empty((q, q), dtype=np.int64)
    for A in range(q):
        base = (x * x + A * x) % q
        vals = (base[None, :] + x[:, None]) % q  # row B
        out[A] = eta[vals].sum(axis=1)
    return out


def eta_quadratic_expected(q: int) -> np.ndarray:
    A = np.arange(q)[:, None]
    B = np.arange(q)[None, :]
    disc = (A * A - 4 * B) % q
    return np.where(disc == 0, q - 1, -1)


def eta_cubic_sum(q: int, t: int) -> int:
    """sum over x in F_q of eta(x (x-1) (x-t))."""
    eta = eta_table(q)
    x = np.arange(q, dtype=np.int64)
    return int(eta[(x * (x - 1) % q) * ((x - t) % q) % q].sum())


def eta_cubic_sums(q: int) -> np.ndarray:
    eta = eta_table(q)
    x = np.arange(q, dtype=np.int64)
    base = x * (x - 1) % q
    vals = base[None, :] * ((x[None, :] - x[:, None]) % q) % q  # row t
    return eta[vals].sum(axis=1)
