import itertools
import json
import math

import networkx as nx
import pytest

from conftest import to_nx
from irregbip import enumeration
from irregbip.canon import canonical_form, is_isomorphic
from irregbip.constructions import b_graph, complete_bipartite, h_graph, path
from irregbip.dense import jacobi_eigvalsh
from irregbip.enumeration import (EmptySearchSpaceError, SearchSpec,
                                  connected_bipartite_classes, extremal_search, generate,
                                  verify_extremal_structure)
from irregbip.graph import Graph, GraphError
from irregbip.spectral import spectral_radius

# connected bipartite graphs on n unlabeled vertices (OEIS A005142)
CONNECTED_BIPARTITE = [1, 1, 1, 3, 5, 17, 44, 182, 730, 4032]


def _naive_classes(n):
    """Filter all labeled graphs on n vertices, dedupe with networkx isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    buckets: dict = {}
    for mask in range(1 << len(pairs)):
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(p for i, p in enumerate(pairs) if mask >> i & 1)
        if not (nx.is_connected(h) and nx.is_bipartite(h)):
            continue
        key = tuple(sorted(d for _, d in h.degree()))
        bucket = buckets.setdefault(key, [])
        if not any(nx.is_isomorphic(h, o) for o in bucket):
            bucket.append(h)
    return [g for b in buckets.values() for g in b]


def _atlas_classes(n):
    return [h for h in nx.graph_atlas_g()
            if h.number_of_nodes() == n and nx.is_connected(h) and nx.is_bipartite(h)]


def _max_degree(h):
    return max((d for _, d in h.degree()), default=0)


@pytest.mark.parametrize("n", range(1, 11))
def test_class_counts(n):
    assert len(connected_bipartite_classes(n, max(n - 1, 0))) == CONNECTED_BIPARTITE[n - 1]


@pytest.mark.parametrize("n", range(2, 6))
def test_complete_against_naive_filter(n):
    oracle = _naive_classes(n)
    for delta in range(1, n):
        ours = connected_bipartite_classes(n, delta)
        expected = [h for h in oracle if _max_degree(h) <= delta]
        assert len(ours) == len(expected)


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_against_graph_atlas(n):
    atlas = _atlas_classes(n)
    for delta in range(1, n):
        ours = connected_bipartite_classes(n, delta)
        expected = [h for h in atlas if _max_degree(h) <= delta]
        assert len(ours) == len(expected)
        # every atlas class is hit exactly once
        hits = [sum(nx.is_isomorphic(to_nx(g), h) for g in ours) for h in expected]
        assert hits == [1] * len(expected)


@pytest.mark.parametrize("n", range(2, 10))
def test_generated_graphs_are_valid_and_distinct(n):
    graphs = connected_bipartite_classes(n, 3)
    forms = {canonical_form(g) for g in graphs}
    assert len(forms) == len(graphs)
    for g in graphs:
        assert g.n == n and g.is_connected() and g.max_degree <= 3
        assert nx.is_bipartite(to_nx(g))


def test_n4_delta2_is_p4():
    out = list(generate(SearchSpec(4, 2)))
    assert len(out) == 1 and is_isomorphic(out[0], path(4))


def test_n2():
    assert list(generate(SearchSpec(2, 1))) == []
    out = list(generate(SearchSpec(2, 1, require_irregular=False)))
    assert out == [path(2)]


@pytest.mark.parametrize("n,delta,count", [(6, 3, 9), (5, 2, 1), (6, 2, 1), (6, 4, 4), (4, 2, 1)])
def test_regression_counts(n, delta, count):
    # frozen from a brute-force networkx enumeration
    assert len(list(generate(SearchSpec(n, delta)))) == count


def test_n6_delta3_count_against_naive():
    expected = [h for h in _naive_classes(6)
                if _max_degree(h) == 3 and len({d for _, d in h.degree()}) > 1]
    assert len(expected) == 9


def test_delta2_only_paths():
    for n in range(3, 11):
        out = list(generate(SearchSpec(n, 2)))
        assert len(out) == 1 and is_isomorphic(out[0], path(n))


def test_disconnected_generation():
    spec = SearchSpec(4, 2, require_connected=False, require_irregular=False, exact_max_degree=False)
    out = list(generate(spec))
    # bipartite, max degree <= 2 on 4 vertices: empty, K2, 2K2, P3, P4, C4
    assert len(out) == 6
    assert len({canonical_form(g) for g in out}) == 6
    atlas = [h for h in nx.graph_atlas_g()
             if h.number_of_nodes() == 6 and nx.is_bipartite(h) and _max_degree(h) <= 3]
    spec6 = SearchSpec(6, 3, require_connected=False, require_irregular=False, exact_max_degree=False)
    assert len(list(generate(spec6))) == len(atlas)


def test_k_regular_mode():
    # connected cubic bipartite graphs: 1, 1, 2 on 6, 8, 10 vertices
    for n, count in ((6, 1), (8, 1), (10, 2)):
        spec = SearchSpec(n, 3, require_irregular=False, regularity_mode="k-regular")
        out = list(generate(spec))
        assert all(g.is_regular() and g.max_degree == 3 for g in out)
        assert len(out) == count
    # the cube is K_{4,4} minus a perfect matching
    (cube,) = generate(SearchSpec(8, 3, require_irregular=False, regularity_mode="k-regular"))
    assert is_isomorphic(cube, Graph(8, [(i, 4 + j) for i in range(4) for j in range(4) if i != j]))


def test_search_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(1, 1)
    with pytest.raises(ValueError):
        SearchSpec(5, 5)
    with pytest.raises(ValueError):
        SearchSpec(13, 3)
    with pytest.raises(ValueError):
        SearchSpec(6, 3, require_bipartite=False)
    with pytest.raises(ValueError):
        SearchSpec(6, 3, objective="max_energy")
    with pytest.raises(ValueError):
        SearchSpec(6, 3, regularity_mode="k-regular")
    with pytest.raises(ValueError):
        connected_bipartite_classes(13, 3)


def test_deterministic_order():
    a = list(generate(SearchSpec(8, 3)))
    b = list(generate(SearchSpec(8, 3)))
    assert a == b


def test_order_independent_of_cache_history(monkeypatch):
    monkeypatch.setattr(enumeration, "_LEVELS", {})
    direct = connected_bipartite_classes(8, 3)
    monkeypatch.setattr(enumeration, "_LEVELS", {})
    connected_bipartite_classes(8, 7)
    filtered = connected_bipartite_classes(8, 3)
    assert direct == filtered


def test_worker_pool_matches_serial(monkeypatch):
    serial = connected_bipartite_classes(9, 8)
    monkeypatch.setattr(enumeration, "_LEVELS", {})
    assert connected_bipartite_classes(9, 8, workers=2) == serial


def test_extremal_n6_delta3():
    res = extremal_search(SearchSpec(6, 3))
    assert res.unique and is_isomorphic(res.winner, b_graph(6))
    assert res.objective_value == pytest.approx(1 + math.sqrt(3), abs=1e-12)
    assert res.graphs_considered == 9
    assert res.runner_up_value < res.objective_value
    assert all(c.ok for c in res.certificates)


def test_extremal_n8_delta4():
    res = extremal_search(SearchSpec(8, 4))
    assert res.unique and is_isomorphic(res.winner, h_graph(8, 4))


def test_extremal_n7_delta3():
    res = extremal_search(SearchSpec(7, 3))
    assert res.unique
    assert is_isomorphic(res.winner, b_graph(7)) and is_isomorphic(res.winner, h_graph(7, 3))


def test_extremal_result_is_reproducible():
    a = extremal_search(SearchSpec(8, 3)).to_dict()
    b = extremal_search(SearchSpec(8, 3)).to_dict()
    assert a == b
    assert json.loads(json.dumps(a)) == a


def test_extremal_winner_beats_all():
    spec = SearchSpec(8, 3)
    res = extremal_search(spec)
    for g in generate(spec):
        assert spectral_radius(g).rho <= res.objective_value + 1e-12


def test_ties_are_reported():
    # both cubic bipartite graphs on 10 vertices have rho = 3
    spec = SearchSpec(10, 3, require_irregular=False, regularity_mode="k-regular")
    res = extremal_search(spec)
    assert not res.unique and len(res.tie_set) == 1
    assert res.runner_up_value is None
    assert res.certificates == []


def test_min_algebraic_connectivity_mode():
    spec = SearchSpec(10, 3, require_irregular=False, regularity_mode="k-regular",
                      objective="min_algebraic_connectivity")
    res = extremal_search(spec)
    values = sorted(float(jacobi_eigvalsh(g.laplacian_matrix())[1]) for g in generate(spec))
    assert values == pytest.approx([1.0, (5 - math.sqrt(5)) / 2], abs=1e-12)
    assert res.unique
    assert res.objective_value == pytest.approx(1.0, abs=1e-12)
    assert res.runner_up_value == pytest.approx((5 - math.sqrt(5)) / 2, abs=1e-12)


def test_empty_search_space():
    with pytest.raises(EmptySearchSpaceError):
        extremal_search(SearchSpec(3, 2, require_irregular=False, regularity_mode="k-regular"))


def test_verify_b6():
    cert = verify_extremal_structure(b_graph(6), 3)
    assert cert.ok
    assert sorted(cert.X_star + cert.Y_star) == [2, 5]
    assert not cert.complete_bipartite_applicable
    assert cert.distance <= cert.distance_bound


def test_verify_h73():
    cert = verify_extremal_structure(h_graph(7, 3), 3)
    assert cert.ok
    assert len(cert.X_star) + len(cert.Y_star) >= 2


def test_verify_reports_witness():
    # X* = {0, 2}, Y* = {5}; 0-5 missing so the complete-bipartite clause fails
    g = Graph(6, [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 5)])
    cert = verify_extremal_structure(g, 3)
    assert cert.complete_bipartite_applicable
    assert not cert.complete_bipartite_ok and cert.nonadjacent_witness is not None
    a, b = cert.nonadjacent_witness
    assert not g.has_edge(a, b)
    assert cert.to_dict()["ok"] is False


def test_verify_hypotheses():
    with pytest.raises(GraphError):
        verify_extremal_structure(complete_bipartite(3, 3), 3)
    with pytest.raises(GraphError):
        verify_extremal_structure(b_graph(6), 4)
    with pytest.raises(GraphError):
        verify_extremal_structure(Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), 3)


@pytest.mark.parametrize("n", range(6, 11))
def test_generated_family_obeys_rho_below_delta(n):
    for g in generate(SearchSpec(n, 3)):
        assert spectral_radius(g).rho < 3
