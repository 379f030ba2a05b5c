"""Multigraph structure, contraction, canonical forms, orientations."""

import random

import pytest

from tuttekit.combinatorics import DomainError
from tuttekit.graphs import (
    Multigraph,
    acyclic_orientations,
    broom,
    canonical_form,
    canonical_graph,
    canonical_star_forest,
    complement,
    complete,
    connected_partitions,
    contract_edge,
    contract_edge_set,
    contract_partition,
    cycle,
    delete_edges,
    disjoint_union,
    edgeless,
    graph_from_json_obj,
    graph_to_json_obj,
    internal_edge_count,
    is_bright_star_forest,
    is_isomorphic,
    path,
    relabel,
    right_endpoint_key,
    right_endpoint_precedes,
    star,
    star_forest_canonical_map,
    star_forest_shape,
    two_edge_connected,
)


def test_constructor_normalizes_and_validates():
    G = Multigraph(3, [(3, 1), (2, 2)])
    assert G.edges == ((1, 3), (2, 2))
    assert G.weights == (1, 1, 1)
    assert G.has_loop() and not G.has_multi_edge()
    with pytest.raises(DomainError):
        Multigraph(2, [(1, 3)])
    with pytest.raises(DomainError):
        Multigraph(2, [], weights=[1, 0])
    with pytest.raises(DomainError):
        Multigraph(2, [], weights=[1])


def test_families():
    assert complete(3).edges == ((1, 2), (1, 3), (2, 3))
    assert path(3).edges == ((1, 2), (2, 3))
    assert cycle(4).edges == ((1, 2), (1, 4), (2, 3), (3, 4))
    assert cycle(1).edges == ((1, 1),)
    assert cycle(2).edges == ((1, 2), (1, 2))
    assert star(4).edges == ((1, 4), (2, 4), (3, 4))
    assert star(1).edges == ()


def test_broom_shapes():
    assert broom(1, 2).edges == ((1, 3), (2, 3))
    assert broom(2, 1).edges == ((1, 2), (2, 3))
    assert broom(0, 3).edges == star(3).edges
    assert broom(3, 0).edges == path(3).edges
    assert broom(2, 3).edges == ((1, 2), (2, 5), (3, 5), (4, 5))


def test_delete_edges_multiset():
    G = Multigraph(2, [(1, 2), (1, 2)])
    assert delete_edges(G, [(1, 2)]).edges == ((1, 2),)
    assert delete_edges(G, [(1, 2), (2, 1)]).edges == ()
    with pytest.raises(DomainError):
        delete_edges(G, [(1, 2), (1, 2), (1, 2)])


def test_contract_single_edge_merges_and_keeps_parallels():
    H = contract_edge(complete(3), (1, 2))
    assert H == Multigraph(2, [(1, 2), (1, 2)], weights=[2, 1])


def test_contract_loop_is_deletion():
    G = Multigraph(1, [(1, 1)], weights=[3])
    assert contract_edge(G, (1, 1)) == Multigraph(1, [], weights=[3])


def test_contract_edge_set_drops_all_contracted_copies():
    # contracting the whole triangle: the third edge has merged endpoints by
    # then, i.e. is a loop, and contracting a loop deletes it
    H = contract_edge_set(complete(3), [(1, 2), (1, 3), (2, 3)])
    assert H == Multigraph(1, [], weights=[3])


def test_contract_edge_set_keeps_outside_loops():
    G = Multigraph(2, [(1, 2), (1, 2)])
    H = contract_edge_set(G, [(1, 2)])
    assert H == Multigraph(1, [(1, 1)], weights=[2])


def test_contract_edge_set_order_independent():
    G = Multigraph(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)], weights=[1, 2, 1, 3])
    S = [(1, 2), (3, 4)]
    assert contract_edge_set(G, S) == contract_edge_set(G, list(reversed(S)))
    assert contract_edge_set(G, S) == Multigraph(
        2, [(1, 2), (1, 2), (1, 2)], weights=[3, 4]
    )


def test_contract_partition_drops_internal_edges_and_loops():
    G = Multigraph(3, [(1, 2), (1, 2), (2, 3), (1, 1)])
    H = contract_partition(G, [[1, 2], [3]])
    assert H == Multigraph(2, [(1, 2)], weights=[2, 1])
    with pytest.raises(DomainError):
        contract_partition(path(3), [[1, 3], [2]])


def test_complement_and_relabel():
    assert complement(path(3)).edges == ((1, 3),)
    with pytest.raises(DomainError):
        complement(Multigraph(2, [(1, 2), (1, 2)]))
    G = Multigraph(3, [(1, 2)], weights=[5, 1, 1])
    H = relabel(G, [3, 1, 2])
    assert H == Multigraph(3, [(1, 3)], weights=[1, 1, 5])
    with pytest.raises(DomainError):
        relabel(G, [1, 1, 2])


def test_disjoint_union_and_internal_edges():
    G = disjoint_union(path(2), Multigraph(1, [(1, 1)], weights=[2]))
    assert G == Multigraph(3, [(1, 2), (3, 3)], weights=[1, 1, 2])
    assert internal_edge_count(G, [[1, 2], [3]]) == 2
    assert internal_edge_count(G, [[1], [2], [3]]) == 1


def test_connected_partitions_of_path():
    parts = list(connected_partitions(path(3)))
    assert ((1, 3), (2,)) not in parts
    assert len(parts) == 4


def test_two_edge_connected():
    assert two_edge_connected(cycle(3))
    assert two_edge_connected(cycle(2))
    assert not two_edge_connected(path(3))
    assert not two_edge_connected(Multigraph(2, []))
    # loops are never bridges
    assert two_edge_connected(Multigraph(1, [(1, 1)]))


def test_bright_star_forest_triples():
    ok, triple = is_bright_star_forest(Multigraph(3, [(1, 3), (2, 3)]))
    assert ok and triple is None
    ok, triple = is_bright_star_forest(Multigraph(3, [(1, 2), (1, 3)]))
    assert not ok and triple == (1, 2, 3)
    ok, triple = is_bright_star_forest(Multigraph(3, [(1, 2), (2, 3)]))
    assert not ok and triple == (1, 2, 3)
    ok, _ = is_bright_star_forest(complete(3))
    assert not ok
    with pytest.raises(DomainError):
        is_bright_star_forest(Multigraph(1, [(1, 1)]))


def test_canonical_star_forest_layout():
    R = canonical_star_forest((3, 2))
    assert R.edges == ((1, 3), (2, 3), (4, 5))
    assert star_forest_shape(R) == (3, 2)
    with pytest.raises(DomainError):
        canonical_star_forest((2, 1), n=4)


def test_star_forest_canonical_map():
    G = Multigraph(4, [(1, 4), (2, 4)])
    lam, perm = star_forest_canonical_map(G)
    assert lam == (3, 1)
    assert relabel(G, perm) == canonical_star_forest((3, 1))
    with pytest.raises(DomainError):
        star_forest_canonical_map(Multigraph(3, [(1, 2), (1, 3)]))


def test_canonical_form_invariant_under_relabelling():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 6)
        edges = []
        for _ in range(rng.randint(0, 8)):
            u = rng.randint(1, n)
            v = rng.randint(1, n)
            edges.append((u, v))
        weights = [rng.randint(1, 3) for _ in range(n)]
        G = Multigraph(n, edges, weights)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        H = relabel(G, perm)
        assert canonical_form(G) == canonical_form(H)
        assert is_isomorphic(G, H)


def test_isomorphism_pins():
    assert is_isomorphic(path(3), relabel(path(3), [2, 1, 3]))
    assert not is_isomorphic(path(4), star(4))
    assert not is_isomorphic(cycle(4), complete(4))
    # weights distinguish otherwise identical graphs
    assert not is_isomorphic(edgeless(1, [2]), edgeless(1, [1]))
    with pytest.raises(DomainError):
        canonical_graph(edgeless(13))


def chromatic_value(n, edges, x):
    """Deletion-contraction chromatic polynomial oracle, integers only."""
    edges = [tuple(sorted(e)) for e in edges]
    if any(u == v for u, v in edges):
        return 0
    edges = sorted(set(edges))
    if not edges:
        return x**n
    u, v = edges[0]
    deleted = edges[1:]
    merged = []
    for a, b in deleted:
        a2 = u if a == v else a
        b2 = u if b == v else b
        a2, b2 = (a2, b2) if a2 <= b2 else (b2, a2)
        merged.append((a2 - (a2 > v), b2 - (b2 > v)))
    return chromatic_value(n, deleted, x) - chromatic_value(n - 1, merged, x)


def test_acyclic_orientation_counts_match_chromatic_oracle():
    cases = [complete(3), cycle(4), path(3), star(4), complete(4)]
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = rng.randint(0, min(6, n * (n - 1) // 2))
        es = set()
        while len(es) < m:
            u, v = rng.randint(1, n), rng.randint(1, n)
            if u != v:
                es.add((min(u, v), max(u, v)))
        cases.append(Multigraph(n, sorted(es)))
    for G in cases:
        want = (-1) ** G.n * chromatic_value(G.n, G.edges, -1)
        got = sum(1 for _ in acyclic_orientations(G))
        assert got == want, G


def test_acyclic_orientation_details():
    assert sum(1 for _ in acyclic_orientations(complete(3))) == 6
    assert sum(1 for _ in acyclic_orientations(cycle(4))) == 14
    assert list(acyclic_orientations(Multigraph(1, [(1, 1)]))) == []
    out = sorted(acyclic_orientations(path(2)))
    assert out == [(((1, 2),), (2,)), (((2, 1),), (1,))]
    # parallel edges orient as one bundle
    assert sum(1 for _ in acyclic_orientations(cycle(2))) == 2
    for arcs, sinks in acyclic_orientations(complete(4)):
        assert len(sinks) == 1
        heads = {v for _, v in arcs}
        assert sinks[0] in heads


def test_right_endpoint_order():
    assert right_endpoint_key(complete(3)) == (-3, (2, 3, 3))
    assert right_endpoint_precedes(complete(3), path(3))
    # same edge count: compare larger endpoints lexicographically
    assert right_endpoint_precedes(path(3), Multigraph(3, [(1, 3), (2, 3)]))


def test_json_roundtrip():
    G = Multigraph(3, [(1, 2), (2, 2)], weights=[1, 2, 1])
    obj = graph_to_json_obj(G)
    assert obj == {"n": 3, "edges": [[1, 2], [2, 2]], "weights": [1, 2, 1]}
    assert graph_from_json_obj(obj) == G
    H = path(2)
    assert "weights" not in graph_to_json_obj(H)
    assert graph_from_json_obj(graph_to_json_obj(H)) == H
