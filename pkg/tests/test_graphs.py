import io

import networkx as nx
import numpy as np
import pytest

from crooked import gf2m, graphs, vbf
from crooked.errors import Disconnected, PreconditionFailed, TooLarge


@pytest.fixture(scope="module")
def G3(cube3):
    return graphs.build_crooked_graph(cube3)


@pytest.fixture(scope="module")
def gold5_graph(ctx5):
    return graphs.build_crooked_graph(vbf.from_power(ctx5, 5))


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.N))
    H.add_edges_from(G.edges())
    return H


def adjacent_by_definition(f, u, v, m):
    a, i, al = u >> (m + 1), (u >> m) & 1, u & ((1 << m) - 1)
    b, j, be = v >> (m + 1), (v >> m) & 1, v & ((1 << m) - 1)
    coeff = (i + j + 1) % 2
    return u != v and al ^ be == f(a ^ b) ^ (coeff * (f(a) ^ f(b)))


def test_build_m3(G3, cube3):
    assert G3.N == 128
    assert (G3.degrees == 15).all()
    for u in range(G3.N):
        for v in range(G3.N):
            assert G3.adjacent(u, v) == adjacent_by_definition(cube3, u, v, 3)


def test_build_random_matches_definition(random_tables3):
    for f in random_tables3[:5]:
        G = graphs.build_crooked_graph(f)
        for u in range(0, G.N, 3):
            for v in range(G.N):
                assert G.adjacent(u, v) == adjacent_by_definition(f, u, v, 3)


def test_same_fibre_never_adjacent(G3):
    for a in range(8):
        for i in (0, 1):
            fib = G3.fibre(a, i)
            assert len(fib) == 8
            assert not any(G3.adjacent(int(u), int(v)) for u in fib for v in fib)


def test_codec(G3):
    for v in range(G3.N):
        assert G3.index(*G3.decode(v)) == v
    assert G3.decode(G3.index(5, 1, 3)) == (5, 1, 3)


def test_build_m5(gold5_graph):
    assert gold5_graph.N == 2048
    assert (gold5_graph.degrees == 63).all()


def test_guard():
    f = vbf.from_power(gf2m.field_new(9), 3)
    with pytest.raises(TooLarge):
        graphs.build_crooked_graph(f)


def test_cover_structure(G3, ctx5):
    assert graphs.check_cover_structure(G3).ok
    kasami = graphs.build_crooked_graph(vbf.from_power(ctx5, 13))
    rep = graphs.check_cover_structure(kasami)
    assert rep.fibres_independent and rep.perfect_matchings


def test_cover_structure_detects_broken_graph():
    # rewiring one edge endpoint leaves some pair of fibres without a matching
    f = vbf.from_power(gf2m.field_new(3), 3)
    G = graphs.build_crooked_graph(f)
    nbr = G.nbr.copy()
    u, v = int(nbr[0, 0]), int(nbr[1, 0])
    nbr[0, 0], nbr[1, 0] = v, u
    broken = graphs.CoverGraph(f, nbr)
    assert not graphs.check_cover_structure(broken).perfect_matchings


def test_cover_structure_random(random_tables3):
    for f in random_tables3[:100]:
        rep = graphs.check_cover_structure(graphs.build_crooked_graph(f))
        assert rep.fibres_independent and rep.perfect_matchings and rep.fibre_distance_at_least_3


def test_fibre_distance_matches_networkx(random_tables3, G3):
    for f in random_tables3[:5]:
        G = graphs.build_crooked_graph(f)
        H = to_nx(G)
        lengths = dict(nx.all_pairs_shortest_path_length(H))
        expected = {
            lengths[u].get(v, -1)
            for u in range(G.N)
            for v in range((u // 8) * 8, (u // 8) * 8 + 8)
            if u != v
        }
        assert graphs.fibre_distances(G) == expected
    assert graphs.fibre_distances(G3) == {3}


def test_distance_partition(G3):
    L = graphs.distance_partition(G3, 0)
    assert L.layers[0].tolist() == [0]
    assert L.sizes == [1, 15, 105, 7]
    assert L.unreachable.size == 0
    for v in range(G3.N):
        L = graphs.distance_partition(G3, v)
        assert L.eccentricity == 3 and sum(L.sizes) == G3.N and L.sizes[3] == 7


def test_distance_partition_unreachable():
    G = graphs.Graph.from_edges(4, [(0, 1), (2, 3)])
    L = graphs.distance_partition(G, 0)
    assert L.sizes == [1, 1] and L.unreachable.tolist() == [2, 3]


def test_intersection_array_gold(G3, gold5_graph):
    assert graphs.intersection_array(G3) == graphs.IntersectionArray((15, 14, 1), (1, 2, 15))
    assert str(graphs.intersection_array(G3)) == "{15,14,1;1,2,15}"
    assert graphs.intersection_array(gold5_graph) == graphs.crooked_array(5)
    assert str(graphs.crooked_array(5)) == "{63,62,1;1,2,63}"


def test_intersection_array_matches_networkx(G3, random_tables3):
    H = to_nx(G3)
    assert nx.is_distance_regular(H)
    b, c = nx.intersection_array(H)
    assert (tuple(b), tuple(c)) == ((15, 14, 1), (1, 2, 15))
    for f in random_tables3[:10]:
        G = graphs.build_crooked_graph(f)
        got = graphs.intersection_array(G)
        assert (got is not None) == nx.is_distance_regular(to_nx(G))


def test_counterexample(ctx5):
    for d in (13, 30):
        G = graphs.build_crooked_graph(vbf.from_power(ctx5, d))
        arr, ce = graphs.distance_regularity(G)
        assert arr is None
        assert ce.recheck(G)
        assert ce.counts != ce.expected


def test_counterexample_recheck_rejects_tampering(ctx5):
    G = graphs.build_crooked_graph(vbf.from_power(ctx5, 13))
    _, ce = graphs.distance_regularity(G)
    fake = graphs.Counterexample(ce.v, ce.u, ce.d, ce.expected, ce.expected)
    assert not fake.recheck(G)


def test_disconnected():
    G = graphs.Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(Disconnected):
        graphs.intersection_array(G)


def test_irregular_graph():
    # path 0 - 1 - 2
    G = graphs.Graph.from_edges(3, [(0, 1), (1, 2)])
    arr, ce = graphs.distance_regularity(G)
    assert arr is None and ce.v == 1


def test_small_drgs():
    cycle = graphs.Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert graphs.intersection_array(cycle) == graphs.IntersectionArray((2, 1, 1), (1, 1, 2))
    petersen = nx.petersen_graph()
    P = graphs.Graph.from_edges(10, petersen.edges())
    assert graphs.intersection_array(P) == graphs.IntersectionArray((3, 2), (1, 1))


def test_antipodal(G3, gold5_graph):
    assert graphs.is_antipodal(G3)
    classes = graphs.antipodal_classes(G3)
    assert len(classes) == 16 and all(len(c) == 8 for c in classes)
    assert graphs.classes_are_fibres(G3)
    assert graphs.is_antipodal(gold5_graph)


def test_antipodal_precondition():
    K4 = graphs.Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    with pytest.raises(PreconditionFailed):
        graphs.is_antipodal(K4)


def test_non_antipodal_diameter3():
    # in C6 the distance-3 pairs form a perfect matching
    C6 = graphs.Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert graphs.is_antipodal(C6)
    # the Heawood graph has diameter 3 but distance 3 is not an equivalence relation
    heawood = nx.heawood_graph()
    Hw = graphs.Graph.from_edges(14, heawood.edges())
    assert not graphs.is_antipodal(Hw)


def test_two_common_neighbours(G3, random_tables3):
    assert graphs.two_common_neighbours(G3)
    bad = [f for f in random_tables3[:20] if not isinstance(vbf.is_crooked(f), vbf.Crooked)]
    assert bad and not any(graphs.two_common_neighbours(graphs.build_crooked_graph(f)) for f in bad)


def test_loop_common_neighbours_matches_matrix(G3):
    A = nx.to_numpy_array(to_nx(G3), nodelist=range(G3.N), dtype=np.int64) + np.eye(G3.N, dtype=np.int64)
    assert np.array_equal(graphs.loop_common_neighbours(G3), A @ A)


def test_edge_list_round_trip(G3):
    buf = io.StringIO()
    count = graphs.write_edge_list(G3, buf)
    assert count == 128 * 15 // 2
    buf.seek(0)
    header, G = graphs.read_edge_list(buf)
    assert header == {"schema": 1, "m": 3, "modulus": 11, "exponent": 3, "N": 128, "degree": 15}
    assert sorted(G.edges()) == sorted(G3.edges())
    buf.seek(0)
    H = nx.read_edgelist(buf, nodetype=int)
    assert H.number_of_edges() == count
    assert {frozenset(e) for e in H.edges()} == {frozenset(e) for e in G3.edges()}


def test_read_edge_list_requires_header():
    with pytest.raises(ValueError):
        graphs.read_edge_list(io.StringIO("0 1\n"))
