"""Immutable bitset graphs and orbital graphs of transitive actions."""

from __future__ import annotations

from collections import deque
from pathlib import Path

from .permgrp import Action, Suborbit

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MASK64 = (1 << 64) - 1
MAX_VERTICES = 65_536


def fnv1a64(data: bytes, h: int = FNV_OFFSET) -> int:
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & MASK64
    return h


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph on 0..n-1 with adjacency rows stored as int bitsets."""

    __slots__ = ("n", "adj", "labels", "_hash", "_edges")

    def __init__(self, n: int, adj, labels=None, check: bool = True):
        if n > MAX_VERTICES:
            raise ValueError(f"{n} vertices exceeds the {MAX_VERTICES} cap")
        self.n = n
        self.adj = tuple(adj)
        self.labels = labels
        self._hash = None
        self._edges = None
        if check:
            for v, row in enumerate(self.adj):
                if row >> v & 1:
                    raise ValueError(f"loop at {v}")
                for w in _bits(row):
                    if not self.adj[w] >> v & 1:
                        raise ValueError(f"adjacency not symmetric at {v},{w}")

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels, check=False)

    @classmethod
    def from_neighbor_lists(cls, nbrs, labels=None, check: bool = True) -> "Graph":
        adj = []
        for row in nbrs:
            m = 0
            for w in row:
                m |= 1 << w
            adj.append(m)
        return cls(len(adj), adj, labels, check=check)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    @property
    def valency(self) -> int:
        degs = set(self.degrees())
        if len(degs) != 1:
            raise ValueError("graph is not regular")
        return degs.pop()

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            out = []
            for u, row in enumerate(self.adj):
                out.extend((u, w) for w in _bits(row >> (u + 1) << (u + 1)))
            self._edges = out
        return self._edges

    @property
    def content_hash(self) -> int:
        """64-bit FNV-1a over sorted (u, v), u < v, each endpoint as little-endian u32."""
        if self._hash is None:
            h = FNV_OFFSET
            buf = bytearray()
            for u, v in self.edges():
                buf += u.to_bytes(4, "little")
                buf += v.to_bytes(4, "little")
            h = fnv1a64(bytes(buf), h)
            self._hash = h
        return self._hash

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def is_automorphism(self, images) -> bool:
        for u, v in self.edges():
            if not self.has_edge(images[u], images[v]):
                return False
        return True

    def induced(self, vertices) -> "Graph":
        vertices = list(vertices)
        pos = {v: k for k, v in enumerate(vertices)}
        edges = [(pos[u], pos[w]) for u in vertices for w in self.neighbors(u) if w in pos and u < w]
        return Graph.from_edges(len(vertices), edges)

    # --- edge-list interchange ---------------------------------------------------
    def to_text(self) -> str:
        lines = [f"{self.n} {self.num_edges()}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != m:
            raise ValueError(f"header says {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)

    @classmethod
    def read(cls, path) -> "Graph":
        return cls.from_text(Path(path).read_text())

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()})"


def orbital_graph(action: Action, suborbit: Suborbit | None = None, points=None, partner_points=None) -> Graph:
    """Orbital graph of a suborbit, unioned with its paired suborbit when needed.

    Either pass a ``Suborbit`` (its pair is found among the action's suborbits)
    or explicit base-neighbour ``points``.
    """
    if suborbit is not None:
        subs = action.suborbits()
        if suborbit.index == 0:
            raise ValueError("trivial suborbit")
        base_nbrs = set(suborbit.points) | set(subs[suborbit.paired].points)
    else:
        base_nbrs = set(points or ()) | set(partner_points or ())
    if not base_nbrs or action.base in base_nbrs:
        raise ValueError("trivial suborbit")
    n = action.degree
    nbrs: list = [None] * n
    nbrs[action.base] = sorted(base_nbrs)
    queue = deque([action.base])
    imgs = [g.images for g in action.generators]
    while queue:
        v = queue.popleft()
        row = nbrs[v]
        for im in imgs:
            w = im[v]
            if nbrs[w] is None:
                nbrs[w] = [im[x] for x in row]
                queue.append(w)
    if any(r is None for r in nbrs):
        raise ValueError("action is not transitive")
    g = Graph.from_neighbor_lists(nbrs, action.labels, check=True)
    return g


def orbital_graphs(action: Action) -> list[tuple[Suborbit, Graph]]:
    """One orbital graph per self-paired suborbit or non-self-paired pair."""
    subs = action.suborbits()
    out = []
    for s in subs[1:]:
        if s.paired < s.index:
            continue
        pts = set(s.points) | set(subs[s.paired].points)
        out.append((s, orbital_graph(action, points=pts)))
    return out


def is_connected(g: Graph) -> bool:
    return g.is_connected()


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)], check=False)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def circulant_graph(n: int, connection) -> Graph:
    edges = set()
    for i in range(n):
        for s in connection:
            j = (i + s) % n
            if j != i:
                edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(n, sorted(edges))
