"""Canonical labeling by equitable refinement and individualization.

The search tree follows the usual individualization-refinement scheme:
refine the ordered partition to an equitable one, individualize each
vertex of the first smallest non-singleton cell, recurse. Every leaf is a
vertex ordering; the canonical ordering is the one whose relabeled
adjacency certificate is largest. Leaves with equal certificates yield
automorphisms, which prune siblings lying in the same orbit of the
pointwise stabilizer of the current path.
"""

from __future__ import annotations

from collections import deque

from .graph import Graph, GraphError

MAX_CANON_N = 64


def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Fragments of a split cell are ordered by neighbor count into the
    splitter, so the result is invariant under relabeling.
    """
    cells = [list(c) for c in cells]
    queue = deque()
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        queue.append(m)
    n_single = sum(1 for c in cells if len(c) == 1)
    while queue and n_single < len(adj):
        smask = queue.popleft()
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            for k in sorted(groups):
                frag = groups[k]
                out.append(frag)
                if len(frag) == 1:
                    n_single += 1
                m = 0
                for v in frag:
                    m |= 1 << v
                queue.append(m)
        cells = out
    return cells


def _certificate(adj: list[int], order: list[int]) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    for i, v in enumerate(order):
        row = 0
        a = adj[v]
        while a:
            low = a & -a
            w = low.bit_length() - 1
            a ^= low
            row |= 1 << (n - 1 - pos[w])
        cert = (cert << n) | row
    return cert


def _orbits_under(gens: list[list[int]], fixed: tuple[int, ...], n: int) -> list[int]:
    """Union-find parent array of orbits of the group generated by the
    generators that fix every vertex of ``fixed``."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[v] != v for v in fixed):
            continue
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


def canonical_labeling(adj: list[int]) -> tuple[list[int], int, list[list[int]]]:
    """Return ``(order, certificate, automorphism_generators)``.

    ``order[i]`` is the vertex placed at canonical position ``i``.
    """
    n = len(adj)
    if n == 0:
        return [], 0, []
    degrees = [a.bit_count() for a in adj]
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(degrees[v], []).append(v)
    root = _refine(adj, [by_deg[d] for d in sorted(by_deg)])

    best_cert = -1
    best_order: list[int] = []
    first_order: list[int] | None = None
    first_cert = -1
    gens: list[list[int]] = []

    def record_auto(o1: list[int], o2: list[int]) -> None:
        g = [0] * n
        for a, b in zip(o1, o2):
            g[a] = b
        if any(g[v] != v for v in range(n)):
            gens.append(g)

    def search(cells: list[list[int]], path: tuple[int, ...]) -> None:
        nonlocal best_cert, best_order, first_order, first_cert
        target = -1
        size = n + 1
        for i, c in enumerate(cells):
            if 1 < len(c) < size:
                target, size = i, len(c)
        if target < 0:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            if first_order is None:
                first_order, first_cert = order, cert
            elif cert == first_cert:
                record_auto(first_order, order)
            if cert > best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert and order is not best_order:
                record_auto(best_order, order)
            return
        explored: list[int] = []
        orb: list[int] = []
        known = -1
        for v in sorted(cells[target]):
            if explored and gens:
                if known != len(gens):
                    orb, known = _orbits_under(gens, path, n), len(gens)
                if any(orb[v] == orb[u] for u in explored):
                    continue
            explored.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, child), path + (v,))

    search(root, ())
    return best_order, best_cert, gens


def canonical_form_masks(adj: list[int]) -> bytes:
    n = len(adj)
    _, cert, _ = canonical_labeling(adj)
    nbytes = (n * n + 7) // 8
    return n.to_bytes(2, "big") + cert.to_bytes(nbytes, "big")


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic."""
    if g.n > MAX_CANON_N:
        raise GraphError(f"canonical form supports n <= {MAX_CANON_N}, got {g.n}")
    return canonical_form_masks(list(g.adj))


def canonical_graph(g: Graph) -> Graph:
    """The relabeled copy of ``g`` in canonical vertex order."""
    if g.n > MAX_CANON_N:
        raise GraphError(f"canonical form supports n <= {MAX_CANON_N}, got {g.n}")
    order, _, _ = canonical_labeling(list(g.adj))
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g) == canonical_form(h)
