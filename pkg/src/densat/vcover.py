"""Vertex cover under a cover-density promise.

vc_branch is the classic exact search: branch on a degree->=3 vertex v
into "take v" / "take N(v)" (weight vector (1,3), branching number
rho = tau(1,3)), solving degree-<=2 residuals exactly.  vc_bfs_promise
explores the same tree floor by floor, where floor l holds partial
covers of size l, and stops early: once rho^l * C(n-l, k-l) drops to
eps * C(n,k), greedy completion of a floor node must succeed if at
least an eps fraction of all k-subsets are covers.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .errors import (
    DomainError,
    MalformedGraph,
    NodeBudgetExceeded,
    PromiseViolated,
)

Adjacency = dict[int, set[int]]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise MalformedGraph(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise MalformedGraph(f"edge ({u},{v}) outside 1..{self.n}")
            if u > v:
                raise MalformedGraph(f"edge ({u},{v}) not in sorted order")
            if (u, v) in seen:
                raise MalformedGraph(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @staticmethod
    def from_edges(n: int, pairs) -> "Graph":
        uniq = sorted({(min(u, v), max(u, v)) for u, v in pairs})
        return Graph(n=n, edges=tuple(uniq))

    def adjacency(self) -> Adjacency:
        adj: Adjacency = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_cover(self, vertices) -> bool:
        s = set(vertices)
        return all(u in s or v in s for u, v in self.edges)


def parse_graph(text: str) -> Graph:
    """DIMACS edge format: one "p edge n m" header, then m "e u v" lines."""
    n = m = None
    pairs: list[tuple[int, int]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise MalformedGraph(f"line {ln}: second header")
            if len(parts) != 4 or parts[1] != "edge":
                raise MalformedGraph(f"line {ln}: expected 'p edge n m'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedGraph(f"line {ln}: non-integer header fields")
            if n < 0 or m < 0:
                raise MalformedGraph(f"line {ln}: negative header fields")
        elif parts[0] == "e":
            if n is None:
                raise MalformedGraph(f"line {ln}: edge before header")
            if len(parts) != 3:
                raise MalformedGraph(f"line {ln}: expected 'e u v'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedGraph(f"line {ln}: non-integer endpoints")
            pairs.append((min(u, v), max(u, v)))
        else:
            raise MalformedGraph(f"line {ln}: unrecognized line {line!r}")
    if n is None:
        raise MalformedGraph("missing 'p edge' header")
    if len(pairs) != m:
        raise MalformedGraph(f"header declares {m} edges, found {len(pairs)}")
    if len(set(pairs)) != len(pairs):
        raise MalformedGraph("duplicate edges")
    return Graph(n=n, edges=tuple(sorted(pairs)))


def write_graph(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {len(graph.edges)}"]
    lines += [f"e {u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# exact search


def _live(adj: Adjacency):
    return {v: ns for v, ns in adj.items() if ns}


def _max_degree_vertex(adj: Adjacency) -> int:
    return min(adj, key=lambda v: (-len(adj[v]), v))


def _without(adj: Adjacency, removed) -> Adjacency:
    gone = set(removed)
    out: Adjacency = {}
    for v, ns in adj.items():
        if v in gone:
            continue
        left = ns - gone
        if left:
            out[v] = left
    return out


def _components(adj: Adjacency) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _cover_low_degree(adj: Adjacency) -> set[int]:
    """Exact minimum cover of a graph with max degree <= 2.

    Components are paths and cycles; a path on p vertices needs
    floor(p/2) (every second vertex along the walk), a cycle needs
    ceil(p/2) (lowest vertex plus every second along the rest).
    """
    cover: set[int] = set()
    for comp in _components(adj):
        degs = {v: len(adj[v]) for v in comp}
        ends = sorted(v for v in comp if degs[v] == 1)
        if ends:
            start = ends[0]  # path
            extra = None
        else:
            start = min(comp)  # cycle; its own edges get covered by `extra`
            extra = start
        walk = [start]
        prev, cur = None, start
        while True:
            nxt = sorted(w for w in adj[cur] if w != prev)
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            if cur == start:
                break
            walk.append(cur)
        if extra is not None:
            cover.add(extra)
            walk = walk[1:]
        cover.update(walk[i] for i in range(1, len(walk), 2))
    return cover


def _vc(adj: Adjacency, k: int) -> set[int] | None:
    adj = _live(adj)
    if not adj:
        return set()
    if k <= 0:
        return None
    v = _max_degree_vertex(adj)
    if len(adj[v]) <= 2:
        cover = _cover_low_degree(adj)
        return cover if len(cover) <= k else None
    take_v = _vc(_without(adj, (v,)), k - 1)
    if take_v is not None:
        take_v.add(v)
        return take_v
    neigh = sorted(adj[v])
    if len(neigh) > k:
        return None
    rest = _vc(_without(adj, [v, *neigh]), k - len(neigh))
    if rest is not None:
        rest.update(neigh)
        return rest
    return None


def vc_branch(graph: Graph, k: int) -> set[int] | None:
    """A vertex cover of size <= k, or None if none exists."""
    if k < 0:
        raise DomainError(f"cover budget must be nonnegative, got {k}")
    cover = _vc(graph.adjacency(), k)
    if cover is not None:
        assert graph.is_cover(cover) and len(cover) <= k
    return cover


def gen_random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph with exactly m edges on 1..n."""
    pool = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    if not 0 <= m <= len(pool):
        raise DomainError(f"need 0 <= m <= {len(pool)} edges, got {m}")
    rng = random.Random(f"graph:{n}:{m}:{seed}")
    return Graph.from_edges(n, rng.sample(pool, m))


def brute_min_cover(graph: Graph) -> int:
    """Minimum cover size by exhausting subsets in size order."""
    if graph.n > 24:
        raise DomainError("brute_min_cover is limited to n <= 24")
    verts = range(1, graph.n + 1)
    for size in range(graph.n + 1):
        for subset in itertools.combinations(verts, size):
            if graph.is_cover(subset):
                return size
    raise AssertionError("the full vertex set always covers")


def count_covers(graph: Graph, k: int) -> int:
    """Number of vertex subsets of size exactly k that are covers."""
    if graph.n > 24:
        raise DomainError("count_covers is limited to n <= 24")
    verts = range(1, graph.n + 1)
    return sum(
        1 for subset in itertools.combinations(verts, k) if graph.is_cover(subset)
    )


# ---------------------------------------------------------------------------
# promise search


def greedy_complete(graph: Graph, partial, k: int | None = None) -> set[int] | None:
    """Extend partial to a cover by repeatedly taking a max-degree endpoint
    of an uncovered edge (ties: lowest index); None once size exceeds k."""
    cover = set(partial)
    while True:
        deg: dict[int, int] = {}
        for u, v in graph.edges:
            if u not in cover and v not in cover:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
        if not deg:
            assert graph.is_cover(cover)
            return cover
        if k is not None and len(cover) >= k:
            return None
        cover.add(min(deg, key=lambda v: (-deg[v], v)))


@dataclass
class PromiseCoverResult:
    cover: tuple[int, ...]
    floor_reached: int
    fired: bool
    census: dict[int, int]
    rho: float
    ell_star: float | None
    epsilon: float
    k: int

    def as_dict(self) -> dict:
        return {
            "cover": list(self.cover),
            "size": len(self.cover),
            "floor_reached": self.floor_reached,
            "stopping_test_fired": self.fired,
            "census": {l: c for l, c in sorted(self.census.items())},
            "rho": self.rho,
            "ell_star": self.ell_star,
            "epsilon": self.epsilon,
            "k": self.k,
        }


def vc_bfs_promise(
    graph: Graph, k: int, epsilon: float, max_nodes: int = 500_000
) -> PromiseCoverResult:
    """Floor search that stops early under the cover-density promise.

    Floor l holds partial covers of size l.  The stopping test compares
    rho^l * C(n-l, k-l) (a bound on covers reachable below one floor
    node) against eps * C(n, k) with exact binomials; non-strict, so
    eps = 1 fires at floor 0.  Once it fires, greedy completion of a
    floor node must succeed -- if none does, the promise was broken.
    """
    from .analysis import branching_number

    if k < 0:
        raise DomainError(f"cover budget must be nonnegative, got {k}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon {epsilon} outside (0, 1]")
    rho = branching_number((1.0, 3.0))
    n = graph.n
    ell_star = None
    if k > 0 and rho * k < n:
        ell_star = math.log(1.0 / epsilon) / math.log(n / (rho * k))

    def result(cover, floor, fired, census):
        cover = tuple(sorted(cover))
        assert graph.is_cover(cover) and len(cover) <= k
        return PromiseCoverResult(
            cover=cover,
            floor_reached=floor,
            fired=fired,
            census=census,
            rho=rho,
            ell_star=ell_star,
            epsilon=epsilon,
            k=k,
        )

    floors: dict[int, list[tuple[Adjacency, frozenset[int]]]] = {
        0: [(_live(graph.adjacency()), frozenset())]
    }
    census: dict[int, int] = {}
    stored = 1
    target = epsilon * math.comb(n, k)
    while floors:
        ell = min(floors)
        nodes = floors.pop(ell)
        census[ell] = len(nodes)
        assert len(nodes) <= rho**ell + 1e-9, (ell, len(nodes))
        if ell > k:
            continue
        if rho**ell * math.comb(n - ell, k - ell) <= target:
            for adj, chosen in nodes:
                done = greedy_complete(graph, chosen, k)
                if done is not None:
                    return result(done, ell, True, census)
            raise PromiseViolated(
                f"stopping test fired at floor {ell} but no greedy completion fits {k}"
            )
        for adj, chosen in nodes:
            if not adj:
                return result(chosen, ell, False, census)
            v = _max_degree_vertex(adj)
            if len(adj[v]) <= 2:
                rest = _cover_low_degree(adj)
                if len(chosen) + len(rest) <= k:
                    return result(chosen | rest, ell, False, census)
                continue
            if ell + 1 <= k:
                floors.setdefault(ell + 1, []).append(
                    (_without(adj, (v,)), chosen | {v})
                )
                stored += 1
            neigh = adj[v]
            if ell + len(neigh) <= k:
                floors.setdefault(ell + len(neigh), []).append(
                    (_without(adj, [v, *neigh]), chosen | neigh)
                )
                stored += 1
            if stored > max_nodes:
                raise NodeBudgetExceeded(f"floor storage exceeded {max_nodes} nodes")
    raise PromiseViolated(
        f"no cover of size {k} found and the stopping test never fired"
    )
