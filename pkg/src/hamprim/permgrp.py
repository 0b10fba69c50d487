"""Permutation groups: orbits, Schreier-Sims, coset actions and suborbits.

Permutations act on the right: ``x ** (p * q) == (x ** p) ** q``.  The images
are stored as a tuple so that composition is a single ``itemgetter`` call.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from operator import itemgetter
from pathlib import Path

DEFAULT_INDEX_CAP = 100_000


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        if len(set(img)) != n:
            raise ValueError("cycles overlap")
        return cls(img)

    @classmethod
    def parse(cls, n: int, text: str) -> "Permutation":
        """Parse disjoint-cycle notation such as ``(0 1 2)(3 4)``; ``()`` is the identity."""
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(t) for t in body.replace(",", " ").split()]
            if len(pts) > 1:
                cycles.append(pts)
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __rpow__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not self.images:
            return other
        return Permutation(itemgetter(*self.images)(other.images) if len(self.images) > 1
                           else (other.images[self.images[0]],))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm
        return lcm(*(len(c) for c in self.cycles())) if self.images else 1

    def cycle_string(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"


def orbit(points, gens) -> list[int]:
    """Closure of ``points`` under ``gens`` in breadth-first order."""
    seen = set(points)
    out = sorted(seen)
    queue = deque(out)
    imgs = [g.images for g in gens]
    while queue:
        x = queue.popleft()
        for im in imgs:
            y = im[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def orbits(n: int, gens) -> list[list[int]]:
    seen = [False] * n
    out = []
    for x in range(n):
        if not seen[x]:
            orb = orbit([x], gens)
            for y in orb:
                seen[y] = True
            out.append(orb)
    return out


def schreier_tree(root: int, gens) -> dict[int, tuple[int, int]]:
    """Breadth-first Schreier vector: point -> (parent, generator index); root -> (-1, -1)."""
    tree = {root: (-1, -1)}
    queue = deque([root])
    imgs = [g.images for g in gens]
    while queue:
        x = queue.popleft()
        for k, im in enumerate(imgs):
            y = im[x]
            if y not in tree:
                tree[y] = (x, k)
                queue.append(y)
    return tree


def tree_word(tree, point: int) -> list[int]:
    """Generator indices whose product maps the tree root to ``point``."""
    word = []
    while tree[point][0] != -1:
        point, k = tree[point]
        word.append(k)
    word.reverse()
    return word


def word_element(gens, word, n: int) -> Permutation:
    g = Permutation.identity(n)
    for k in word:
        g = g * gens[k]
    return g


def is_semiregular(g: Permutation) -> tuple[int, int] | None:
    lengths = {len(c) for c in g.cycles()}
    if len(lengths) != 1:
        return None
    (length,) = lengths
    if length <= 1:
        return None
    return g.degree // length, length


# --- stabilizer chains ---------------------------------------------------------

@dataclass
class _Level:
    point: int
    gens: list  # strong generators fixing all earlier base points
    transversal: dict = field(default_factory=dict)  # orbit point -> element mapping point

    def rebuild(self, n: int) -> None:
        self.transversal = {self.point: Permutation.identity(n)}
        queue = deque([self.point])
        while queue:
            x = queue.popleft()
            ux = self.transversal[x]
            for g in self.gens:
                y = g.images[x]
                if y not in self.transversal:
                    self.transversal[y] = ux * g
                    queue.append(y)


class StabilizerChain:
    def __init__(self, degree: int, gens, base_prefix=()):
        self.degree = degree
        self.levels: list[_Level] = []
        gens = [g for g in gens if not g.is_identity()]
        for b in base_prefix:
            self.levels.append(_Level(b, []))
        self._build(gens)

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.transversal)
        return out

    def strip(self, g: Permutation) -> tuple[Permutation, int]:
        for i, lv in enumerate(self.levels):
            x = g.images[lv.point]
            u = lv.transversal.get(x)
            if u is None:
                return g, i
            g = g * u.inverse()
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, i = self.strip(g)
        return i == len(self.levels) and h.is_identity()

    def _first_moved(self, g: Permutation) -> int:
        base = set(self.base)
        for x, y in enumerate(g.images):
            if x != y and x not in base:
                return x
        raise AssertionError("element fixes every point")

    def _build(self, gens) -> None:
        n = self.degree
        for g in gens:
            if all(g.images[b] == b for b in self.base):
                self.levels.append(_Level(self._first_moved(g), []))
        for i, lv in enumerate(self.levels):
            lv.gens = [g for g in gens if all(g.images[b] == b for b in self.base[:i])]
            lv.rebuild(n)
        i = len(self.levels) - 1
        while i >= 0:
            restart = False
            lv = self.levels[i]
            for beta in list(lv.transversal):
                u_beta = lv.transversal[beta]
                for s in lv.gens:
                    img = s.images[beta]
                    schreier = u_beta * s * lv.transversal[img].inverse()
                    if schreier.is_identity():
                        continue
                    h, j = self._strip_from(schreier, i + 1)
                    if j < len(self.levels) or not h.is_identity():
                        if j == len(self.levels):
                            self.levels.append(_Level(self._first_moved(h), []))
                        for lj in range(i + 1, j + 1):
                            self.levels[lj].gens.append(h)
                            self.levels[lj].rebuild(n)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def _strip_from(self, g: Permutation, start: int) -> tuple[Permutation, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            u = lv.transversal.get(g.images[lv.point])
            if u is None:
                return g, i
            g = g * u.inverse()
        return g, len(self.levels)

    def random_element(self, rng: random.Random) -> Permutation:
        g = Permutation.identity(self.degree)
        for lv in reversed(self.levels):
            g = g * rng.choice(list(lv.transversal.values()))
        return g


class PermGroup:
    def __init__(self, generators, degree: int | None = None, base_prefix=()):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("need a degree for the trivial group")
            degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise ValueError("generators of mixed degree")
        self.generators = generators
        self.degree = degree
        self._base_prefix = tuple(base_prefix)
        self._chain = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators, self._base_prefix)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def orbit(self, x: int) -> list[int]:
        return orbit([x], self.generators)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer_generators(self, point: int) -> list[Permutation]:
        """Strong generators of the point stabilizer (chain rebuilt with ``point`` first)."""
        chain = StabilizerChain(self.degree, self.generators, (point,))
        if len(chain.levels) < 2:
            return []
        return list(chain.levels[1].gens)

    def sanity_check(self, trials: int = 20, seed: int = 0) -> bool:
        """Products of random generator words must sift through the chain."""
        rng = random.Random(seed)
        for _ in range(trials):
            g = Permutation.identity(self.degree)
            for _ in range(rng.randint(1, 30)):
                g = g * rng.choice(self.generators)
            if not self.contains(g):
                return False
        return True


def stabilizer_words(gens, point: int, limit: int | None = None) -> list[list[int]]:
    """Schreier generators of the stabilizer of ``point`` as words in ``gens``.

    Words use signed 1-based generator indices (``-k`` is the inverse of generator
    ``k``).  Trivial and repeated elements are dropped; ``limit`` caps the output.
    """
    n = gens[0].degree
    tree = schreier_tree(point, gens)
    words = []
    seen = set()
    for x in sorted(tree, key=lambda y: (len(tree_word(tree, y)), y)):
        wx = tree_word(tree, x)
        for k, g in enumerate(gens):
            y = g.images[x]
            wy = tree_word(tree, y)
            word = [i + 1 for i in wx] + [k + 1] + [-(i + 1) for i in reversed(wy)]
            elt = word_element_signed(gens, word, n)
            if elt.is_identity() or elt in seen:
                continue
            seen.add(elt)
            words.append(word)
            if limit and len(words) >= limit:
                return words
    return words


def word_element_signed(gens, word, n: int) -> Permutation:
    g = Permutation.identity(n)
    invs = {}
    for k in word:
        if k > 0:
            g = g * gens[k - 1]
        else:
            if -k not in invs:
                invs[-k] = gens[-k - 1].inverse()
            g = g * invs[-k]
    return g


# --- coset actions ------------------------------------------------------------

class CosetAction:
    """Right multiplication of G on the right cosets of H, canonically indexed.

    Coset ``Hg`` is keyed by the lexicographically least base image among its
    elements, computed greedily through H's chain built on G's base.  Index 0 is
    H itself; further cosets are numbered in breadth-first order over G's
    generators.
    """

    def __init__(self, G: PermGroup, H: PermGroup, cap: int = DEFAULT_INDEX_CAP):
        for h in H.generators:
            if not G.contains(h):
                raise ValueError("H is not a subgroup of G")
        self.parent = G
        self.subgroup = H
        base = G.chain.base
        self._base = base
        self._hchain = StabilizerChain(G.degree, H.generators, base)
        index = G.order() // self._hchain.order()
        if index > cap:
            raise ValueError(f"index {index} exceeds cap {cap}")
        n = G.degree
        ident = Permutation.identity(n)
        reps = [self._canonical(ident)]
        keys = {self._key(reps[0]): 0}
        images = [[0] * index for _ in G.generators]
        queue = deque([0])
        while queue:
            c = queue.popleft()
            rep = reps[c]
            for k, s in enumerate(G.generators):
                g = self._canonical(rep * s)
                key = self._key(g)
                d = keys.get(key)
                if d is None:
                    d = len(reps)
                    keys[key] = d
                    reps.append(g)
                    queue.append(d)
                images[k][c] = d
        if len(reps) != index:
            raise AssertionError("coset enumeration disagrees with the group order")
        self.degree = index
        self.representatives = reps
        self._keys = keys
        self.generators = [Permutation(im) for im in images]

    def _key(self, g: Permutation) -> tuple[int, ...]:
        return tuple(g.images[b] for b in self._base)

    def _canonical(self, g: Permutation) -> Permutation:
        for lv in self._hchain.levels:
            best = None
            for x, u in lv.transversal.items():
                y = g.images[x]
                if best is None or y < best[0]:
                    best = (y, u)
            g = best[1] * g
        return g

    def coset_of(self, g: Permutation) -> int:
        return self._keys[self._key(self._canonical(g))]

    def image(self, g: Permutation) -> Permutation:
        """The permutation of cosets induced by an element of G."""
        return Permutation(self.coset_of(r * g) for r in self.representatives)

    def stabilizer_generators(self) -> list[Permutation]:
        """Generators of H acting on the cosets (the stabilizer of coset 0)."""
        return [self.image(h) for h in self.subgroup.generators]


def coset_action(G: PermGroup, H: PermGroup, cap: int = DEFAULT_INDEX_CAP) -> CosetAction:
    return CosetAction(G, H, cap)


# --- suborbits ----------------------------------------------------------------

@dataclass(frozen=True)
class Suborbit:
    index: int
    points: tuple[int, ...]
    paired: int
    representative: int

    @property
    def length(self) -> int:
        return len(self.points)

    @property
    def self_paired(self) -> bool:
        return self.paired == self.index


def suborbits(gens, base: int, stabilizer_gens=None) -> list[Suborbit]:
    """Orbits of the stabilizer of ``base``, trivial one first, with pairing.

    Nontrivial suborbits are ordered by (length, least point).  When
    ``stabilizer_gens`` is omitted it is computed by Schreier-Sims.
    """
    gens = list(gens)
    n = gens[0].degree
    if stabilizer_gens is None:
        stabilizer_gens = PermGroup(gens, n).stabilizer_generators(base)
    stabilizer_gens = list(stabilizer_gens)
    seen = {base}
    parts = []
    for x in range(n):
        if x in seen:
            continue
        orb = orbit([x], stabilizer_gens) if stabilizer_gens else [x]
        seen.update(orb)
        parts.append(tuple(sorted(orb)))
    parts.sort(key=lambda p: (len(p), p[0]))
    parts.insert(0, (base,))
    where = {}
    for k, p in enumerate(parts):
        for x in p:
            where[x] = k
    tree = schreier_tree(base, gens)
    if len(tree) != n:
        raise ValueError("action is not transitive")
    out = []
    for k, p in enumerate(parts):
        x = p[0]
        g = word_element(gens, tree_word(tree, x), n)
        back = g.inverse().images[base]
        out.append(Suborbit(k, p, where[back], x))
    return out


# --- generator data files -----------------------------------------------------

DATA_DIR = Path(__file__).resolve().parent / "data"


def load_generators(path) -> list[Permutation]:
    path = Path(path)
    if not path.is_absolute() and not path.exists():
        path = DATA_DIR / path
    lines = [ln.strip() for ln in path.read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    head = lines[0].split()
    if head[0] != "degree":
        raise ValueError(f"{path}: missing degree header")
    n = int(head[1])
    return [Permutation.parse(n, ln) for ln in lines[1:]]


_WORD_TOKEN = re.compile(r"^([a-z])(?:\^(-?\d+))?$")


def parse_word(text: str) -> list[int]:
    """``a b a^-1 b^2`` -> signed 1-based generator indices."""
    out = []
    for tok in text.split():
        m = _WORD_TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        k = ord(m.group(1)) - ord("a") + 1
        e = int(m.group(2) or 1)
        out.extend([k if e > 0 else -k] * abs(e))
    return out


def format_word(word) -> str:
    toks = []
    for k in word:
        letter = chr(ord("a") + abs(k) - 1)
        e = 1 if k > 0 else -1
        if toks and toks[-1][0] == letter:
            toks[-1][1] += e
            if toks[-1][1] == 0:
                toks.pop()
        else:
            toks.append([letter, e])
    return " ".join(l if e == 1 else f"{l}^{e}" for l, e in toks)


def load_subgroup(path) -> tuple[list[Permutation], list[Permutation]]:
    """Read a subgroup file; returns (parent generators, subgroup generators)."""
    path = Path(path)
    if not path.is_absolute() and not path.exists():
        path = DATA_DIR / path
    lines = [ln.strip() for ln in path.read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    head = lines[0].split()
    if head[0] != "parent":
        raise ValueError(f"{path}: missing parent header")
    parent = load_generators(path.parent / head[1])
    n = parent[0].degree
    sub = [word_element_signed(parent, parse_word(ln), n) for ln in lines[1:]]
    return parent, sub


# --- actions with a distinguished base point ----------------------------------

@dataclass
class Action:
    """A transitive action: generators, a base point and its stabilizer's generators."""

    degree: int
    generators: list
    base: int
    stabilizer_generators: list
    labels: list | None = None
    names: list | None = None

    def label(self, v: int):
        return self.labels[v] if self.labels is not None else v

    def suborbits(self) -> list[Suborbit]:
        return suborbits(self.generators, self.base, self.stabilizer_generators)


def action_from_cosets(ca: CosetAction, names=None) -> Action:
    return Action(ca.degree, list(ca.generators), 0, ca.stabilizer_generators(), None, names)


def orbital_classes(subs: list[Suborbit]) -> list[Suborbit]:
    """Nontrivial suborbits with each non-self-paired pair reduced to its first member."""
    out = []
    for s in subs[1:]:
        if s.paired >= s.index:
            out.append(s)
    return out
