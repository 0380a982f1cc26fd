"""Pointed multigraph core: connectivity, boundary divisors, BFS variable order.

Vertices are 0-based everywhere inside the library; the CLI file formats are
1-based.  A divisor is a plain tuple of ints of length n, used both as a chip
configuration and as a monomial exponent vector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class BadVertex(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class EmptySet(GraphError):
    pass


class Overlap(GraphError):
    pass


@dataclass(frozen=True)
class PointedGraph:
    n: int
    mult: tuple[tuple[int, ...], ...]  # symmetric, zero diagonal
    q: int

    @property
    def m(self) -> int:
        return sum(sum(row) for row in self.mult) // 2

    def degree(self, v: int) -> int:
        return sum(self.mult[v])

    def neighbors(self, v: int):
        return [w for w in range(self.n) if self.mult[v][w]]

    def vertices(self):
        return range(self.n)

    def adjacent_pairs(self):
        """Sorted (u, v) pairs with u < v and at least one edge."""
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.mult[u][v]]


def build_graph(n, edges, q) -> PointedGraph:
    if n <= 0:
        raise EmptyGraph("graph must have at least one vertex")
    if not 0 <= q < n:
        raise BadVertex(f"q={q} out of range for n={n}")
    mult = [[0] * n for _ in range(n)]
    for edge in edges:
        if len(edge) == 2:
            u, v = edge
            w = 1
        else:
            u, v, w = edge
        if not (0 <= u < n and 0 <= v < n):
            raise BadVertex(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if w < 1:
            raise GraphError(f"multiplicity {w} < 1")
        mult[u][v] += w
        mult[v][u] += w
    g = PointedGraph(n, tuple(tuple(row) for row in mult), q)
    if n > 1 and len(_bfs_component(g, q)) != n:
        raise Disconnected("graph is not connected")
    return g


def _bfs_component(g: PointedGraph, start: int) -> set:
    seen = {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for v in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def induced_connected(g: PointedGraph, s) -> bool:
    s = frozenset(s)
    if not s:
        raise EmptySet("connectivity of the empty set is undefined")
    start = next(iter(s))
    seen = {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for v in g.neighbors(u):
            if v in s and v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == len(s)


def boundary_divisor(g: PointedGraph, a, b):
    """D(a,b): for v in a, the number of edges from v into b; zero off a."""
    a, b = frozenset(a), frozenset(b)
    if a & b:
        raise Overlap(f"sets overlap: {sorted(a & b)}")
    d = [0] * g.n
    for v in a:
        d[v] = sum(g.mult[v][w] for w in b)
    return tuple(d)


def edge_count_between(g: PointedGraph, a, b) -> int:
    return divisor_deg(boundary_divisor(g, a, b))


# ---------------------------------------------------------------------------
# divisor helpers (tuples of ints)

def zero_divisor(n):
    return (0,) * n


def divisor_deg(d) -> int:
    return sum(d)


def divisor_add(d1, d2):
    return tuple(a + b for a, b in zip(d1, d2))


def divisor_sub(d1, d2):
    return tuple(a - b for a, b in zip(d1, d2))


def divisor_max(d1, d2):
    return tuple(max(a, b) for a, b in zip(d1, d2))


def is_effective(d) -> bool:
    return all(a >= 0 for a in d)


def divisor_supp(d):
    return frozenset(v for v, a in enumerate(d) if a)


# ---------------------------------------------------------------------------
# term order

@dataclass(frozen=True)
class TermOrder:
    """Degrevlex with variable ranks given by `priority` (rank 0 smallest)."""

    priority: tuple[int, ...]

    def rank(self, v: int) -> int:
        return self.priority.index(v)

    def monomial_key(self, exps):
        # Degrevlex: higher total degree wins; on ties the monomial with the
        # smaller exponent at the smallest-ranked differing variable wins.
        return (sum(exps), tuple(-exps[v] for v in self.priority))

    def greater(self, e1, e2) -> bool:
        return self.monomial_key(e1) > self.monomial_key(e2)


def bfs_distances(g: PointedGraph, start: int):
    dist = [None] * g.n
    dist[start] = 0
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for v in g.neighbors(u):
            if dist[v] is None:
                dist[v] = dist[u] + 1
                todo.append(v)
    return dist


def bfs_order(g: PointedGraph, start: int):
    """Vertices sorted by (BFS distance from start, index)."""
    dist = bfs_distances(g, start)
    return sorted(range(g.n), key=lambda v: (dist[v], v))


def bfs_term_order(g: PointedGraph) -> TermOrder:
    return TermOrder(tuple(bfs_order(g, g.q)))


# ---------------------------------------------------------------------------
# partial orientations

UNORIENTED = 0
FORWARD = 1   # u -> v for the stored pair (u, v), u < v
BACKWARD = 2  # v -> u


@dataclass(frozen=True)
class PartialOrientation:
    """Edge state per adjacent pair; parallel edges always share a state."""

    states: tuple[tuple[int, int, int], ...]  # sorted (u, v, state), u < v

    @classmethod
    def from_dict(cls, state_map):
        return cls(tuple((u, v, s) for (u, v), s in sorted(state_map.items())))

    def as_dict(self):
        return {(u, v): s for u, v, s in self.states}

    def arcs(self):
        """Directed pairs (tail, head), one per oriented adjacent pair."""
        out = []
        for u, v, s in self.states:
            if s == FORWARD:
                out.append((u, v))
            elif s == BACKWARD:
                out.append((v, u))
        return out

    def is_total(self) -> bool:
        return all(s != UNORIENTED for _, _, s in self.states)

    def indegree_divisor(self, g: PointedGraph):
        d = [0] * g.n
        for tail, head in self.arcs():
            d[head] += g.mult[tail][head]
        return tuple(d)


def total_orientations(g: PointedGraph):
    """All total orientations (each adjacent pair oriented one way)."""
    pairs = g.adjacent_pairs()
    out = []
    for bits in range(1 << len(pairs)):
        state = {}
        for idx, (u, v) in enumerate(pairs):
            state[(u, v)] = FORWARD if bits >> idx & 1 else BACKWARD
        out.append(PartialOrientation.from_dict(state))
    return out


def orientation_is_acyclic(o: PartialOrientation, node_count: int) -> bool:
    """No directed cycle among the oriented pairs (unoriented pairs ignored,
    which is only meaningful for total orientations; flag machinery handles
    quotients itself)."""
    return digraph_is_acyclic(node_count, o.arcs())


def digraph_is_acyclic(node_count: int, arcs) -> bool:
    out = [[] for _ in range(node_count)]
    indeg = [0] * node_count
    for t, h in arcs:
        out[t].append(h)
        indeg[h] += 1
    todo = deque(v for v in range(node_count) if indeg[v] == 0)
    seen = 0
    while todo:
        u = todo.popleft()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                todo.append(v)
    return seen == node_count
