"""Simple undirected graphs, bipartitions and BFS distances.

Graphs are immutable. Adjacency is kept both as neighbor tuples and as
integer bitmasks, which the canonical labeling and the enumerator use
directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class GraphError(ValueError):
    """Invalid graph data or a graph outside an operation's domain."""


class DisconnectedGraphError(GraphError):
    """The operation needs a connected graph."""


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_nbrs", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        adj = [0] * n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(adj)
        self._nbrs = tuple(tuple(_bits(a)) for a in adj)

    @classmethod
    def from_adjacency_masks(cls, masks: Iterable[int]) -> "Graph":
        masks = list(masks)
        edges = [(u, v) for u, a in enumerate(masks) for v in _bits(a) if u < v]
        return cls(len(masks), edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self._nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    def is_irregular(self) -> bool:
        return not self.is_regular()

    @cached_property
    def _components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._nbrs[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def components(self) -> tuple[tuple[int, ...], ...]:
        return self._components

    def is_connected(self) -> bool:
        return self.n > 0 and len(self._components) == 1

    def bfs_distances(self, source: int) -> list[int]:
        """Edge-count distances from ``source``; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    @cached_property
    def diameter(self) -> int:
        if not self.is_connected():
            raise DisconnectedGraphError("diameter of a disconnected graph")
        return max(max(self.bfs_distances(s)) for s in range(self.n))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(edges))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        missing = drop - self.edges
        if missing:
            raise GraphError(f"edges not present: {sorted(missing)}")
        return Graph(self.n, self.edges - drop)

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, vertices renumbered in increasing order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), [(index[u], index[v]) for u, v in self.edges
                               if u in index and v in index])

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def laplacian_matrix(self):
        import numpy as np

        a = self.adjacency_matrix()
        return np.diag(a.sum(axis=1)) - a

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Bipartition:
    X: frozenset[int]
    Y: frozenset[int]
    X_star: frozenset[int]
    Y_star: frozenset[int]

    @property
    def unsaturated(self) -> frozenset[int]:
        return self.X_star | self.Y_star

    def is_balanced(self) -> bool:
        return len(self.X) == len(self.Y)


def two_coloring(g: Graph) -> list[int] | None:
    """0/1 coloring of every component (root of each component gets 0), or None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def bipartition(g: Graph) -> Bipartition | None:
    """Bipartition of a connected graph with vertex 0 in ``X``; None if not bipartite."""
    if not g.is_connected():
        raise DisconnectedGraphError("bipartition needs a connected graph")
    color = two_coloring(g)
    if color is None:
        return None
    delta = g.max_degree
    X = frozenset(v for v in range(g.n) if color[v] == 0)
    Y = frozenset(v for v in range(g.n) if color[v] == 1)
    return Bipartition(
        X=X,
        Y=Y,
        X_star=frozenset(v for v in X if g.degree(v) < delta),
        Y_star=frozenset(v for v in Y if g.degree(v) < delta),
    )


def distance(g: Graph, u: int, v: int) -> int:
    for w in (u, v):
        if not 0 <= w < g.n:
            raise GraphError(f"vertex {w} out of range")
    d = g.bfs_distances(u)[v]
    if d < 0:
        raise DisconnectedGraphError(f"vertices {u} and {v} are not connected")
    return d


def has_odd_cycle(g: Graph) -> bool:
    """Odd closed walk search by parity-layered BFS; independent of ``two_coloring``."""
    for s in range(g.n):
        # state (vertex, parity) reachable from (s, 0); odd cycle iff (s, 1) reachable
        seen = {(s, 0)}
        queue = deque([(s, 0)])
        while queue:
            u, p = queue.popleft()
            for w in g.neighbors(u):
                state = (w, 1 - p)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
        if (s, 1) in seen:
            return True
    return False
