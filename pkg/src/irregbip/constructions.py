"""Builders for the named graph families.

Vertex labels are fixed so that tests can refer to specific vertices:
complete bipartite graphs put part ``X`` first, ``B_n`` appends one vertex
per growth step, and ``H_{n,Delta}`` reuses the ``K_{Delta,Delta} - e``
labeling of ``B_6``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError

FAMILIES = ("path", "complete_bipartite", "H", "B")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    delta: int | None = None
    parts: tuple[int, int] | None = field(default=None)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}; expected one of {FAMILIES}")

    def build(self) -> Graph:
        if self.family == "path":
            return path(self.n)
        if self.family == "B":
            return b_graph(self.n)
        if self.family == "H":
            if self.delta is None:
                raise GraphError("family H needs delta")
            return h_graph(self.n, self.delta)
        if self.parts is not None:
            a, b = self.parts
        elif self.delta is not None:
            a, b = self.delta, self.n - self.delta
        else:
            raise GraphError("complete_bipartite needs part sizes or delta")
        return complete_bipartite(a, b)


def path(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"path needs n >= 2, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError(f"complete_bipartite needs both parts >= 1, got ({a}, {b})")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def h_graph(n: int, delta: int) -> Graph:
    """``H_{n,Delta}`` for ``Delta >= floor(n/2)``.

    2*Delta > n gives ``K_{Delta,n-Delta}``; 2*Delta == n gives
    ``K_{Delta,Delta}`` minus the edge between the last vertex of each part;
    2*Delta == n - 1 additionally hangs a pendant vertex on the ``X`` end of
    the deleted edge.
    """
    if n < 4:
        raise GraphError(f"h_graph needs n >= 4, got {n}")
    if delta < n // 2 or n - delta < 1:
        raise GraphError(f"h_graph needs floor(n/2) <= delta <= n-1, got n={n}, delta={delta}")
    if 2 * delta > n:
        return complete_bipartite(delta, n - delta)
    k = delta
    edges = [(i, k + j) for i in range(k) for j in range(k) if (i, j) != (k - 1, k - 1)]
    if 2 * delta == n:
        return Graph(n, edges)
    return Graph(n, edges + [(k - 1, 2 * k)])


def b_graph(n: int) -> Graph:
    """``B_n``: grown from ``K_{3,3} - e`` one vertex at a time.

    When the current graph is balanced the new vertex is joined to the
    lowest-index unsaturated vertex of the part containing vertex 0 (falling
    back to the other part if that part is saturated); otherwise it is joined
    to every unsaturated vertex.
    """
    if n < 6:
        raise GraphError(f"b_graph needs n >= 6, got {n}")
    adj: list[set[int]] = [set() for _ in range(6)]
    side = [0, 0, 0, 1, 1, 1]
    for i in range(3):
        for j in range(3, 6):
            if (i, j) != (2, 5):
                adj[i].add(j)
                adj[j].add(i)
    while len(adj) < n:
        v = len(adj)
        unsat = [u for u in range(v) if len(adj[u]) < 3]
        balanced = side.count(0) == side.count(1)
        if balanced:
            in_x = [u for u in unsat if side[u] == 0]
            targets = [in_x[0]] if in_x else [unsat[0]]
        else:
            targets = unsat
        parts = {side[u] for u in targets}
        if len(parts) != 1:
            raise AssertionError("B_n growth step would break bipartiteness")
        adj.append(set(targets))
        side.append(1 - parts.pop())
        for u in targets:
            adj[u].add(v)
    return Graph(n, [(u, w) for u in range(n) for w in adj[u] if u < w])


def b_graph_mirror_labels(k: int) -> tuple[list[int], list[int]]:
    """Vertices ``(u_1..u_k, v_1..v_k)`` of ``B_{2k}`` in the mirror labeling.

    ``u_i`` and ``v_i`` are swapped by the mirror automorphism, ``u_1`` and
    ``u_2`` share their neighborhood, and ``u_k``, ``v_k`` are the two
    degree-2 vertices.
    """
    if k < 3:
        raise GraphError(f"B_2k labeling needs k >= 3, got {k}")
    us = [0, 1, 2] + [2 * i - 1 for i in range(4, k + 1)]
    vs = [3, 4, 5] + [2 * i - 2 for i in range(4, k + 1)]
    return us, vs
