import itertools

import pytest
from hypothesis import given, settings

from sdscycle import graph_core as gc
from sdscycle.errors import CapExceeded, InvalidInput

from conftest import graphs


def brute_bridges(y):
    base = len(gc.connected_components(y))
    return {e for e in y.edges if len(gc.connected_components(gc.delete_edge(y, e))) > base}


class TestConstruction:
    def test_circ4_from_edge_list(self):
        y = gc.make_graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        assert y == gc.circle(4)

    def test_empty_graph(self):
        y = gc.make_graph(3, [])
        assert y.n == 3 and y.m == 0

    def test_duplicate_pair_collapses(self):
        y = gc.make_graph(2, [(1, 2), (2, 1)])
        assert y.edges == ((1, 2),)

    @pytest.mark.parametrize("edges", [[(1, 1)], [(0, 1)], [(1, 5)]])
    def test_bad_edges_rejected(self, edges):
        with pytest.raises(InvalidInput):
            gc.make_graph(4, edges)

    def test_families(self):
        assert (gc.circle(4).n, gc.circle(4).m) == (4, 4)
        c72 = gc.circulant_radius2(7)
        assert (c72.n, c72.m) == (7, 14)
        s3 = gc.star(3)
        assert (s3.n, s3.m) == (4, 3)
        assert s3.degree(1) == 3
        assert gc.complete(5).m == 10
        assert gc.hypercube(3).m == 12
        assert gc.circulant_radius2_open(7).m == 13

    @pytest.mark.parametrize("family", ["circle:2", "circulant2:4", "complete:0", "hypercube:0", "star:0"])
    def test_family_minimums(self, family):
        with pytest.raises(InvalidInput):
            gc.named_family(family)

    def test_named_family_syntax(self):
        assert gc.named_family("circle:5") == gc.circle(5)
        assert gc.named_family("circle", 5) == gc.circle(5)
        with pytest.raises(InvalidInput):
            gc.named_family("moebius:5")


class TestSurgery:
    def test_vertex_join(self):
        assert gc.vertex_join(gc.complete(3)) == gc.complete(4)
        w = gc.vertex_join(gc.circle(4))
        assert (w.n, w.m) == (5, 8)
        assert gc.vertex_join(gc.empty(1)) == gc.path(2)

    def test_contract(self):
        assert gc.contract_edge(gc.circle(4), (1, 2)) == gc.circle(3)
        assert gc.contract_edge(gc.complete(3), (1, 2)) == gc.path(2)

    def test_delete(self):
        assert gc.delete_edge(gc.circle(4), (1, 4)) == gc.path(4)

    def test_missing_edge_rejected(self):
        with pytest.raises(InvalidInput):
            gc.delete_edge(gc.circle(4), (1, 3))
        with pytest.raises(InvalidInput):
            gc.contract_edge(gc.circle(4), (1, 3))

    @given(graphs(min_n=2))
    def test_delete_then_add_round_trip(self, y):
        for e in y.edges:
            assert gc.add_edge(gc.delete_edge(y, e), e) == y

    @given(graphs(min_n=2))
    def test_contract_stays_simple(self, y):
        for e in y.edges:
            z = gc.contract_edge(y, e)
            assert z.n == y.n - 1
            assert all(u < v for u, v in z.edges)
            assert len(set(z.edges)) == len(z.edges)


class TestStructure:
    def test_bridges_examples(self):
        assert gc.bridges(gc.path(4)) == frozenset(gc.path(4).edges)
        assert gc.bridges(gc.circle(4)) == frozenset()
        two = gc.add_edge(gc.disjoint_union(gc.circle(3), gc.circle(3)), (3, 4))
        assert gc.bridges(two) == {(3, 4)} == brute_bridges(two)

    @given(graphs(max_n=7))
    def test_bridges_match_brute_force(self, y):
        b, c = gc.bridges(y), gc.cycle_edges(y)
        assert b == brute_bridges(y)
        assert b | c == set(y.edges) and not (b & c)

    def test_bipartite_examples(self):
        assert gc.is_bipartite(gc.circle(4))[0]
        assert not gc.is_bipartite(gc.complete(3))[0]
        assert gc.is_bipartite(gc.hypercube(3))[0]

    @given(graphs(max_n=7))
    def test_bipartite_coloring_is_proper(self, y):
        ok, col = gc.is_bipartite(y)
        if ok:
            assert all(col[u] != col[v] for u, v in y.edges)
        else:
            assert col is None
            # some odd cycle exists: no proper 2-colouring at all
            assert not any(all(bits[u - 1] != bits[v - 1] for u, v in y.edges)
                           for bits in itertools.product((0, 1), repeat=y.n))

    def test_components(self):
        assert gc.connected_components(gc.empty(3)) == [frozenset({1}), frozenset({2}), frozenset({3})]
        assert len(gc.connected_components(gc.circle(4))) == 1
        assert len(gc.connected_components(gc.disjoint_union(gc.circle(3), gc.circle(4)))) == 2


class TestAutomorphisms:
    def test_orders(self):
        assert len(gc.automorphisms(gc.star(3))) == 6
        assert len(gc.automorphisms(gc.hypercube(3))) == 48
        assert len(gc.automorphisms(gc.empty(2))) == 2
        assert len(gc.automorphisms(gc.circle(5))) == 10

    def test_identity_first(self):
        assert gc.automorphisms(gc.circle(4))[0].is_identity()

    def test_cap(self):
        with pytest.raises(CapExceeded, match="cap exceeded"):
            gc.automorphisms(gc.circle(11))
        assert len(gc.automorphisms(gc.circle(11), max_n=11)) == 22

    @settings(max_examples=40)
    @given(graphs(max_n=5))
    def test_group_axioms(self, y):
        autos = gc.automorphisms(y)
        group = set(autos)
        assert len(group) == len(autos)
        assert gc.VertexPermutation.identity(y.n) in group
        for a in autos:
            assert gc.is_automorphism(y, a)
            assert a.inverse() in group
            for b in autos:
                assert a.compose(b) in group

    def test_permutation_basics(self):
        g = gc.VertexPermutation((2, 3, 1))
        assert g(1) == 2 and g.inverse()(2) == 1
        assert g.compose(g.inverse()).is_identity()
        assert g.cycles() == [(1, 2, 3)]
        with pytest.raises(InvalidInput):
            gc.VertexPermutation((1, 1, 2))


class TestRandom:
    def test_random_tree_is_tree(self, rng):
        for n in range(1, 9):
            t = gc.random_tree(n, rng)
            assert t.m == n - 1 and gc.is_connected(t)

    def test_random_connected(self, rng):
        for _ in range(30):
            y = gc.random_connected_graph(int(rng.integers(2, 8)), rng, max_edges=14)
            assert gc.is_connected(y) and y.m <= 14
