"""Exact arithmetic in F_q and small extensions F_{p^k} (k <= 4).

Elements are plain integers.  For a prime field the integer is the residue;
for an extension it encodes the coordinate vector ``(c_0, ..., c_{k-1})`` over
F_p as ``sum(c_i * p**i)``, i.e. the polynomial ``c_0 + c_1 x + ...`` reduced
modulo the field's irreducible modulus.  Most callers only need the prime
case and work with ``FieldContext`` methods directly on ints; ``FieldElement``
wraps an int for operator-style code.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

SCAN_SQRT_LIMIT = 10_000
MAX_DEGREE = 4


class Residue(enum.Enum):
    ZERO = 0
    SQUARE = 1
    NONSQUARE = -1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in prime_factors(q)[:1]:
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1:
            return p, k
    return None


# --- polynomials over F_p as coefficient lists, low degree first ------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _poly_trim(a)
    return a


def _poly_has_root(m: list[int], p: int) -> bool:
    for x in range(p):
        v = 0
        for c in reversed(m):
            v = (v * x + c) % p
        if v == 0:
            return True
    return False


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    if k <= 1:
        return k == 1
    if _poly_has_root(m, p):
        return False
    if k <= 3:
        return True
    # k == 4: also rule out products of two monic irreducible quadratics
    for c0 in range(p):
        for c1 in range(p):
            quad = [c0, c1, 1]
            if _poly_has_root(quad, p):
                continue
            if not _poly_mod(list(m), quad, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k (by integer encoding)."""
    for code in range(p ** k):
        coeffs = [(code // p ** i) % p for i in range(k)] + [1]
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldContext:
    p: int
    k: int
    modulus: tuple[int, ...] | None
    theta: int = field(default=0, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # --- coordinate conversion ------------------------------------------------
    def to_coords(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p ** i) % self.p for i in range(self.k))

    def from_coords(self, coords) -> int:
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coords))

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self.reduce(value), self)

    def reduce(self, value: int) -> int:
        if self.is_prime_field:
            return value % self.p
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element encoding of F_{self.q}")
        return value

    # --- arithmetic ------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.is_prime_field:
            return (a + b) % self.p
        ca, cb = self.to_coords(a), self.to_coords(b)
        return self.from_coords([x + y for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        if self.is_prime_field:
            return -a % self.p
        return self.from_coords([-c for c in self.to_coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.is_prime_field:
            return a * b % self.p
        ca, cb = self.to_coords(a), self.to_coords(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.from_coords(_poly_mod(prod, list(self.modulus), self.p))

    def pow(self, a: int, e: int) -> int:
        if self.is_prime_field:
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.is_prime_field:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in prime_factors(n):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    # --- quadratic character ---------------------------------------------------
    def residue_class(self, a: int) -> Residue:
        if a == 0:
            return Residue.ZERO
        return Residue.SQUARE if self.pow(a, (self.q - 1) // 2) == 1 else Residue.NONSQUARE

    def eta(self, a: int) -> int:
        """Quadratic character with eta(0) = 0."""
        return self.residue_class(a).value

    def is_square(self, a: int) -> bool:
        """Membership in S (zero included)."""
        return self.residue_class(a) is not Residue.NONSQUARE

    def sqrt(self, a: int) -> int | None:
        """A square root of a, the one with the smaller encoding, or None."""
        if a == 0:
            return 0
        if self.residue_class(a) is Residue.NONSQUARE:
            return None
        if self.q < SCAN_SQRT_LIMIT:
            for t in range(1, self.q):
                if self.mul(t, t) == a:
                    return min(t, self.neg(t))
            raise AssertionError("square with no root found")
        r = self._tonelli_shanks(a)
        return min(r, self.neg(r))

    def _tonelli_shanks(self, a: int) -> int:
        s, d = 0, self.q - 1
        while d % 2 == 0:
            s += 1
            d //= 2
        z = next(x for x in range(2, self.q) if self.residue_class(x) is Residue.NONSQUARE)
        m, c = s, self.pow(z, d)
        t, r = self.pow(a, d), self.pow(a, (d + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (m - i - 1))
            m, c = i, self.mul(b, b)
            t, r = self.mul(t, c), self.mul(r, b)
        return r

    def squares(self) -> list[int]:
        """S* in increasing encoding order."""
        return sorted({self.mul(x, x) for x in range(1, self.q)})

    def nonsquares(self) -> list[int]:
        sq = set(self.squares())
        return [x for x in range(1, self.q) if x not in sq]


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldContext:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    p, k = pk
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if k > MAX_DEGREE:
        raise ValueError(f"extension degree {k} exceeds {MAX_DEGREE}")
    modulus = None if k == 1 else least_irreducible(p, k)
    ctx = FieldContext(p, k, modulus)
    theta = next(x for x in range(1, q) if ctx.mult_order(x) == q - 1)
    object.__setattr__(ctx, "theta", theta)
    return ctx


class FieldElement:
    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: FieldContext):
        self.value = value
        self.ctx = ctx

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.value
        return self.ctx.reduce(other)

    def __add__(self, other):
        return FieldElement(self.ctx.add(self.value, self._coerce(other)), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx.sub(self.value, self._coerce(other)), self.ctx)

    def __rsub__(self, other):
        return FieldElement(self.ctx.sub(self._coerce(other), self.value), self.ctx)

    def __mul__(self, other):
        return FieldElement(self.ctx.mul(self.value, self._coerce(other)), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx.div(self.value, self._coerce(other)), self.ctx)

    def __neg__(self):
        return FieldElement(self.ctx.neg(self.value), self.ctx)

    def __pow__(self, e: int):
        return FieldElement(self.ctx.pow(self.value, e), self.ctx)

    def __eq__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.value == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.q))

    def __repr__(self):
        return f"F{self.ctx.q}({self.value})"

    def residue_class(self) -> Residue:
        return self.ctx.residue_class(self.value)

    def sqrt(self) -> "FieldElement | None":
        r = self.ctx.sqrt(self.value)
        return None if r is None else FieldElement(r, self.ctx)


def residue_class(x: FieldElement) -> Residue:
    return x.residue_class()


def sqrt_in_field(x: FieldElement) -> FieldElement | None:
    return x.sqrt()
