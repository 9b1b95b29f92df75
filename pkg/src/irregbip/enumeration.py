"""Isomorph-free generation of bipartite graphs and extremal search.

Connected bipartite graphs with maximum degree at most ``Delta`` are grown
one vertex at a time. A child is the parent plus a new vertex joined to a
nonempty set of parent vertices in one color class. Each isomorphism class
is emitted once: a child is kept only if the new vertex has the minimal
(degree, neighbor degrees) signature among non-cut vertices and deleting
the canonical deletion vertex (the minimal-signature non-cut vertex placed
last in canonical order) gives the parent's class; isomorphic children of
one parent are merged. Since the
class of ``child - w`` is unique and every parent class appears once, no
class is produced twice.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .canon import canonical_form, canonical_form_masks, canonical_graph, canonical_labeling
from .dense import jacobi_eigvalsh
from .graph import DisconnectedGraphError, Graph, GraphError, bipartition, distance
from .spectral import (DEFAULT_TOL, algebraic_connectivity, spectral_radius,
                       spectral_radius_any)

MAX_SEARCH_N = 12
TIE_MARGIN = 1e-9
TIE_MARGIN_DENSE = 1e-14

OBJECTIVES = ("max_spectral_radius", "min_algebraic_connectivity")


class EmptySearchSpaceError(LookupError):
    """No graph satisfies the search constraints."""


@dataclass(frozen=True)
class SearchSpec:
    n: int
    delta_max: int
    require_irregular: bool = True
    require_bipartite: bool = True
    require_connected: bool = True
    regularity_mode: str | None = None
    objective: str = "max_spectral_radius"
    exact_max_degree: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 1 <= self.delta_max < self.n:
            raise ValueError(f"need 1 <= Delta < n, got Delta={self.delta_max}, n={self.n}")
        if self.n > MAX_SEARCH_N:
            raise ValueError(f"search limited to n <= {MAX_SEARCH_N}, got {self.n}")
        if not self.require_bipartite:
            raise ValueError("only bipartite generation is supported")
        if self.regularity_mode not in (None, "k-regular"):
            raise ValueError(f"unknown regularity mode {self.regularity_mode!r}")
        if self.regularity_mode and self.require_irregular:
            raise ValueError("k-regular mode contradicts require_irregular")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")


# ---------------------------------------------------------------------------
# generation


def _is_connected_masks(adj: tuple[int, ...], skip: int = -1) -> bool:
    n = len(adj)
    full = ((1 << n) - 1) & ~(1 << skip if skip >= 0 else 0)
    if not full:
        return True
    start = full & -full
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= full & ~seen
        seen |= nxt
        frontier = nxt
    return seen == full


def _delete_vertex(adj: tuple[int, ...], w: int) -> list[int]:
    low = (1 << w) - 1
    out = []
    for v, a in enumerate(adj):
        if v == w:
            continue
        out.append((a & low) | ((a >> (w + 1)) << w))
    return out


def _deletion_candidates(adj: tuple[int, ...]) -> set[int]:
    """Non-cut vertices minimizing (degree, sorted neighbor degrees).

    The canonical deletion vertex is the candidate placed last in canonical
    order; restricting to an invariant-minimal set lets most children be
    rejected before any canonical labeling is computed.
    """
    deg = [a.bit_count() for a in adj]
    best = None
    cands: set[int] = set()
    for v, a in enumerate(adj):
        key = (deg[v], sorted(deg[w] for w in range(len(adj)) if a >> w & 1))
        if best is not None and key > best:
            continue
        if not _is_connected_masks(adj, v):
            continue
        if best is None or key < best:
            best, cands = key, {v}
        else:
            cands.add(v)
    return cands


def _children(parent: tuple[tuple[int, ...], int], delta: int) -> list[tuple[tuple[int, ...], int]]:
    """Accepted children of one parent ``(adjacency masks, color-0 mask)``."""
    adj, xmask = parent
    n = len(adj)
    parent_cf = canonical_form_masks(list(adj))
    seen: set[bytes] = set()
    out = []
    for side_mask in (xmask, ((1 << n) - 1) & ~xmask):
        avail = [v for v in range(n) if side_mask >> v & 1 and adj[v].bit_count() < delta]
        for size in range(1, min(delta, len(avail)) + 1):
            for S in itertools.combinations(avail, size):
                smask = 0
                for v in S:
                    smask |= 1 << v
                child = list(adj)
                for v in S:
                    child[v] |= 1 << n
                child.append(smask)
                child_t = tuple(child)
                cands = _deletion_candidates(child_t)
                if n not in cands:
                    continue
                order, cert, _ = canonical_labeling(child)
                if len(cands) > 1:
                    w = next(v for v in reversed(order) if v in cands)
                    if w != n and canonical_form_masks(_delete_vertex(child_t, w)) != parent_cf:
                        continue
                if cert in seen:
                    continue
                seen.add(cert)
                # new vertex takes the color opposite to S
                child_x = xmask if side_mask == xmask else xmask | (1 << n)
                out.append((child_t, child_x))
    return out


def _expand(level: list, delta: int, workers: int) -> list:
    if workers > 1 and len(level) > 64:
        chunk = max(1, len(level) // (4 * workers))
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_children, level, itertools.repeat(delta), chunksize=chunk))
    else:
        parts = [_children(p, delta) for p in level]
    return [c for part in parts for c in part]


_LEVELS: dict[tuple[int, int], tuple] = {}


def _connected_level(n: int, delta: int, workers: int = 1) -> tuple:
    """All connected bipartite graphs on ``n`` vertices with max degree <= delta."""
    key = (n, delta)
    if key not in _LEVELS:
        # a capped tree is the uncapped tree filtered by max degree, order included
        wider = sorted(d for (m, d) in _LEVELS if m == n and d > delta)
        if wider:
            _LEVELS[key] = tuple(e for e in _LEVELS[(n, wider[0])]
                                 if max(a.bit_count() for a in e[0]) <= delta)
        elif n == 1:
            _LEVELS[key] = (((0,), 1),)
        else:
            parents = list(_connected_level(n - 1, delta, workers))
            _LEVELS[key] = tuple(_expand(parents, delta, workers))
    return _LEVELS[key]


def connected_bipartite_classes(n: int, delta: int, workers: int = 1) -> list[Graph]:
    """One representative per class of connected bipartite graphs, max degree <= delta."""
    if n > MAX_SEARCH_N:
        raise ValueError(f"generation limited to n <= {MAX_SEARCH_N}, got {n}")
    if n < 1:
        return []
    delta = min(delta, n - 1) if n > 1 else 0
    if 2 * delta >= n and delta < n - 1:
        # large caps prune little; share one uncapped tree across them
        _connected_level(n, n - 1, workers)
    return [Graph.from_adjacency_masks(adj) for adj, _ in _connected_level(n, delta, workers)]


def _accept(g: Graph, spec: SearchSpec) -> bool:
    if spec.exact_max_degree and g.max_degree != spec.delta_max:
        return False
    if spec.require_irregular and g.is_regular():
        return False
    if spec.regularity_mode == "k-regular" and not (g.is_regular() and g.max_degree == spec.delta_max):
        return False
    return True


def _disjoint_union(parts: list[Graph]) -> Graph:
    edges = []
    off = 0
    for p in parts:
        edges.extend((u + off, v + off) for u, v in p.sorted_edges())
        off += p.n
    return Graph(off, edges)


def _component_multisets(n: int, max_size: int, delta: int):
    """Sorted multisets of connected classes whose sizes sum to ``n``."""
    if n == 0:
        yield []
        return
    for size in range(min(n, max_size), 0, -1):
        classes = connected_bipartite_classes(size, delta)
        for idx in range(len(classes)):
            for rest in _component_multisets_bounded(n - size, size, idx, delta):
                yield [classes[idx]] + rest


def _component_multisets_bounded(n: int, size: int, idx: int, delta: int):
    # components listed by nonincreasing (size, -index) to avoid permuted duplicates
    if n == 0:
        yield []
        return
    for s in range(min(n, size), 0, -1):
        classes = connected_bipartite_classes(s, delta)
        top = idx if s == size else len(classes) - 1
        for j in range(top + 1):
            for rest in _component_multisets_bounded(n - s, s, j, delta):
                yield [classes[j]] + rest


def generate(spec: SearchSpec, workers: int = 1) -> Iterator[Graph]:
    """Every isomorphism class satisfying ``spec`` exactly once, in a fixed order."""
    if spec.require_connected:
        pool = connected_bipartite_classes(spec.n, spec.delta_max, workers)
    else:
        pool = (_disjoint_union(parts) for parts in _component_multisets(spec.n, spec.n, spec.delta_max))
    for g in pool:
        if _accept(g, spec):
            yield g


# ---------------------------------------------------------------------------
# structure certificates


@dataclass
class StructureCertificate:
    n: int
    delta: int
    X: list[int]
    Y: list[int]
    X_star: list[int]
    Y_star: list[int]
    unsaturated_ok: bool
    complete_bipartite_applicable: bool
    complete_bipartite_ok: bool
    nonadjacent_witness: tuple[int, int] | None
    w_hat: int
    w_check: int
    distance: int
    distance_bound: float
    distance_ok: bool

    @property
    def ok(self) -> bool:
        return self.unsaturated_ok and self.complete_bipartite_ok and self.distance_ok

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def verify_extremal_structure(g: Graph, delta: int, tol: float = DEFAULT_TOL) -> StructureCertificate:
    """Check the unsaturated-set and max/min-entry distance properties of a candidate extremal graph."""
    if not g.is_connected():
        raise DisconnectedGraphError("structure check needs a connected graph")
    if g.max_degree != delta:
        raise GraphError(f"graph has max degree {g.max_degree}, expected {delta}")
    if g.is_regular():
        raise GraphError("structure check needs an irregular graph")
    bp = bipartition(g)
    if bp is None:
        raise GraphError("structure check needs a bipartite graph")
    xs, ys = sorted(bp.X_star), sorted(bp.Y_star)
    applicable = len(xs) >= 1 and len(ys) >= 1 and len(xs) + len(ys) >= 3
    witness = None
    if applicable:
        for a in xs:
            for b in ys:
                if not g.has_edge(a, b):
                    witness = (a, b)
                    break
            if witness:
                break
    res = spectral_radius(g, tol)
    dist = distance(g, res.w_hat, res.w_check)
    bound = 2 * (g.n - 1) / delta
    return StructureCertificate(
        n=g.n, delta=delta, X=sorted(bp.X), Y=sorted(bp.Y), X_star=xs, Y_star=ys,
        unsaturated_ok=len(xs) + len(ys) >= 2,
        complete_bipartite_applicable=applicable,
        complete_bipartite_ok=witness is None,
        nonadjacent_witness=witness,
        w_hat=res.w_hat, w_check=res.w_check,
        distance=dist, distance_bound=bound, distance_ok=dist <= bound,
    )


# ---------------------------------------------------------------------------
# extremal search


@dataclass
class ExtremalResult:
    spec: SearchSpec
    winner: Graph
    objective_value: float
    runner_up_value: float | None
    tie_set: list[Graph] = field(default_factory=list)
    graphs_considered: int = 0
    certificates: list[StructureCertificate] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return not self.tie_set

    def to_dict(self) -> dict:
        from .formats import graph6_encode

        return {
            "n": self.spec.n,
            "delta": self.spec.delta_max,
            "objective": self.spec.objective,
            "winner": graph6_encode(self.winner),
            "objective_value": self.objective_value,
            "runner_up_value": self.runner_up_value,
            "unique": self.unique,
            "tie_set": [graph6_encode(g) for g in self.tie_set],
            "graphs_considered": self.graphs_considered,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def _objective(g: Graph, spec: SearchSpec, tol: float) -> float:
    if spec.objective == "max_spectral_radius":
        if g.is_connected():
            return spectral_radius(g, tol).rho
        return spectral_radius_any(g, tol)
    if not g.is_connected():
        return 0.0
    return algebraic_connectivity(g, tol)


def _objective_dense(g: Graph, spec: SearchSpec) -> float:
    if spec.objective == "max_spectral_radius":
        return float(jacobi_eigvalsh(g.adjacency_matrix())[-1])
    return float(jacobi_eigvalsh(g.laplacian_matrix())[1])


def extremal_search(spec: SearchSpec, tol: float = DEFAULT_TOL, workers: int = 1) -> ExtremalResult:
    """Exact optimizer of the objective over all classes generated for ``spec``.

    Values within ``TIE_MARGIN`` of the optimum are recomputed with the
    Jacobi oracle; graphs still within ``TIE_MARGIN_DENSE`` are reported as
    ties, never silently dropped. The winner is the least canonical form
    among the tied optima.
    """
    graphs = list(generate(spec, workers))
    if not graphs:
        raise EmptySearchSpaceError(f"no graph satisfies {spec}")
    sign = 1.0 if spec.objective == "max_spectral_radius" else -1.0
    values = np.array([sign * _objective(g, spec, tol) for g in graphs])
    best = values.max()
    near = [i for i in range(len(graphs)) if values[i] >= best - TIE_MARGIN]
    dense = {i: sign * _objective_dense(graphs[i], spec) for i in near}
    best_dense = max(dense.values())
    top = [i for i in near if dense[i] >= best_dense - TIE_MARGIN_DENSE]
    keyed = sorted((canonical_form(graphs[i]), i) for i in top)
    win = keyed[0][1]
    ties = [canonical_graph(graphs[i]) for _, i in keyed[1:]]
    rest = [values[i] for i in range(len(graphs)) if i not in set(top)]
    runner = sign * max(rest) if rest else None
    winner = canonical_graph(graphs[win])
    certs = []
    if spec.objective == "max_spectral_radius" and spec.require_connected and spec.require_irregular:
        for g in [winner] + ties:
            certs.append(verify_extremal_structure(g, g.max_degree, tol))
    return ExtremalResult(
        spec=spec,
        winner=winner,
        objective_value=float(sign * values[win]),
        runner_up_value=None if runner is None else float(runner),
        tie_set=ties,
        graphs_considered=len(graphs),
        certificates=certs,
    )
