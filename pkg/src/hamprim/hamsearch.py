"""Hamilton cycle certificates: exact backtracking search and an independent checker."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .orbital import Graph, _bits

DEFAULT_BUDGET = 10**8
NONHAM_CAP = 40


class Status(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class HamiltonCertificate:
    graph_hash: int
    cycle: tuple[int, ...]

    def to_text(self) -> str:
        return f"hash {self.graph_hash:016x}\n" + " ".join(map(str, self.cycle)) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "HamiltonCertificate":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        key, hexval = lines[0].split()
        if key != "hash":
            raise ValueError("certificate must start with a hash line")
        cycle = tuple(int(t) for t in lines[1].split()) if len(lines) > 1 else ()
        return cls(int(hexval, 16), cycle)

    @classmethod
    def read(cls, path) -> "HamiltonCertificate":
        return cls.from_text(Path(path).read_text())


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str | None = None  # "hash" | "permutation" | "adjacency"

    def __bool__(self):
        return self.ok


def verify_certificate(g: Graph, cert: HamiltonCertificate) -> Verification:
    if cert.graph_hash != g.content_hash:
        return Verification(False, "hash")
    cyc = cert.cycle
    if len(cyc) != g.n or sorted(cyc) != list(range(g.n)):
        return Verification(False, "permutation")
    if g.n < 3:
        return Verification(False, "adjacency")
    adj = g.adj
    for k in range(g.n):
        if not adj[cyc[k]] >> cyc[k - 1] & 1:
            return Verification(False, "adjacency")
    return Verification(True)


def verify_cycle(g: Graph, cycle) -> bool:
    return verify_certificate(g, HamiltonCertificate(g.content_hash, tuple(cycle))).ok


def certificate_for(g: Graph, cycle) -> HamiltonCertificate:
    """Wrap a cycle after checking it; raises if the cycle is not Hamiltonian."""
    cert = HamiltonCertificate(g.content_hash, tuple(cycle))
    res = verify_certificate(g, cert)
    if not res:
        raise AssertionError(f"invalid Hamilton cycle ({res.reason})")
    return cert


@dataclass
class SearchResult:
    status: Status
    certificate: HamiltonCertificate | None
    expansions: int

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def _dfs(adj, n, path, budget):
    """Depth-first extension of ``path`` to a Hamilton cycle.

    Returns (cycle or None, expansions, exhausted).  Candidate successors are
    tried in increasing order of their number of unvisited neighbours.  After
    each move every unvisited neighbour of the vertex just left must keep at
    least two usable neighbours (unvisited, the new endpoint, or the start),
    and an unvisited neighbour of the new endpoint with exactly two usable
    neighbours forces the next move.
    """
    start = path[0]
    sbit = 1 << start
    unvisited = (1 << n) - 1
    for v in path:
        unvisited &= ~(1 << v)
    path = list(path)
    if len(path) == n:
        ok = n >= 3 and bool(adj[path[-1]] & sbit)
        return (tuple(path) if ok else None), 0, not ok

    def candidates(w, unv):
        cand = adj[w] & unv
        scored = []
        forced = []
        extra = (1 << w) | sbit
        for x in _bits(cand):
            ax = adj[x]
            if w != start and (ax & (unv | extra)).bit_count() == 2:
                forced.append(x)
            scored.append(((ax & unv).bit_count(), x))
        if forced:
            return forced if len(forced) == 1 else []
        scored.sort()
        return [x for _, x in scored]

    expansions = 0
    stack = [[candidates(path[-1], unvisited), 0]]
    while stack:
        frame = stack[-1]
        cands, k = frame
        if k >= len(cands):
            stack.pop()
            if stack:
                unvisited |= 1 << path.pop()
            continue
        frame[1] = k + 1
        w = cands[k]
        expansions += 1
        if expansions > budget:
            return None, expansions, False
        v = path[-1]
        unv = unvisited & ~(1 << w)
        if not unv:
            if adj[w] & sbit:
                return tuple(path) + (w,), expansions, False
            continue
        usable = unv | (1 << w) | sbit
        ok = bool(adj[start] & (unv | (1 << w)))
        if ok:
            for x in _bits(adj[v] & unv):
                if (adj[x] & usable).bit_count() < 2:
                    ok = False
                    break
        if not ok:
            continue
        path.append(w)
        unvisited = unv
        stack.append([candidates(w, unv), 0])
    return None, expansions, True


def find_hcycle(g: Graph, budget: int = DEFAULT_BUDGET, hint=None, jobs: int = 1) -> SearchResult:
    """Search for a Hamilton cycle anchored at vertex 0 (or at the hint's first vertex)."""
    n = g.n
    if n < 3:
        return SearchResult(Status.EXHAUSTED, None, 0)
    path = list(hint) if hint else [0]
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError("hint is not a path")
    if len(set(path)) != len(path):
        raise ValueError("hint repeats a vertex")
    if jobs > 1 and len(path) == 1:
        return _parallel_search(g, budget, path[0], jobs)
    cycle, exp, exhausted = _dfs(g.adj, n, path, budget)
    if cycle is not None:
        return SearchResult(Status.FOUND, certificate_for(g, cycle), exp)
    return SearchResult(Status.EXHAUSTED if exhausted else Status.TIMEOUT, None, exp)


def _branch_worker(args):
    adj, n, path, budget = args
    return _dfs(adj, n, path, budget)


def _parallel_search(g: Graph, budget: int, root: int, jobs: int) -> SearchResult:
    """Split on the first edge; every branch gets the full budget and the lowest branch wins."""
    first = sorted(g.neighbors(root), key=lambda x: (g.degree(x), x))
    tasks = [(g.adj, g.n, [root, w], budget) for w in first]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_branch_worker, tasks))
    total = sum(r[1] for r in results)
    for cycle, _, _ in results:
        if cycle is not None:
            return SearchResult(Status.FOUND, certificate_for(g, cycle), total)
    if all(r[2] for r in results):
        return SearchResult(Status.EXHAUSTED, None, total)
    return SearchResult(Status.TIMEOUT, None, total)


class Verdict(str, enum.Enum):
    HAMILTONIAN = "Hamiltonian"
    NON_HAMILTONIAN = "NonHamiltonian"
    UNKNOWN = "Unknown"


@dataclass
class NonHamiltonianProof:
    verdict: Verdict
    expansions: int
    certificate: HamiltonCertificate | None = None


def prove_nonhamiltonian(g: Graph, cap: int = NONHAM_CAP) -> NonHamiltonianProof:
    """Exhaustive search rooted at vertex 0; only pruning that never loses a cycle is used."""
    if g.n > cap:
        raise ValueError(f"{g.n} vertices exceeds the exhaustive-search cap {cap}")
    res = find_hcycle(g, budget=float("inf"))
    if res.found:
        return NonHamiltonianProof(Verdict.HAMILTONIAN, res.expansions, res.certificate)
    return NonHamiltonianProof(Verdict.NON_HAMILTONIAN, res.expansions)


def iter_hamilton_cycles(adj, n: int, first_edge=None, limit: int | None = None, budget: int = 10**7):
    """Yield Hamilton cycles of a small graph given by bitset rows, as vertex tuples.

    Cycles start at vertex 0 (or at ``first_edge[0]`` followed by
    ``first_edge[1]``); each undirected cycle may appear in both directions.
    Used on quotient graphs, which have at most a few dozen vertices.
    """
    if n < 3:
        return
    path = list(first_edge) if first_edge else [0]
    used = 0
    for v in path:
        used |= 1 << v
    full = (1 << n) - 1
    start = path[0]
    count = 0
    steps = 0
    stack = [iter(sorted(_bits(adj[path[-1]] & ~used)))]
    while stack:
        steps += 1
        if steps > budget:
            return
        w = next(stack[-1], None)
        if w is None:
            stack.pop()
            if len(path) > (len(first_edge) if first_edge else 1):
                used &= ~(1 << path.pop())
            continue
        path.append(w)
        used |= 1 << w
        if used == full:
            if adj[w] >> start & 1:
                yield tuple(path)
                count += 1
                if limit is not None and count >= limit:
                    return
            used &= ~(1 << path.pop())
            continue
        # cheap dead-end test: every unused vertex keeps two usable neighbours
        usable = (full & ~used) | (1 << w) | (1 << start)
        dead = False
        for x in _bits(full & ~used):
            if (adj[x] & usable).bit_count() < 2:
                dead = True
                break
        if dead:
            used &= ~(1 << path.pop())
            continue
        stack.append(iter(sorted(_bits(adj[w] & ~used))))
