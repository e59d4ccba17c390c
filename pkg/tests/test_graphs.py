"""Graph construction, homomorphism search, recognizers and enumeration."""

import itertools
import random

import pytest

from conftest import brute_class_subsets, brute_is_homomorphic
from hompoly import Graph, enumerate_subgraphs, hom_to_single_edge, is_homomorphic, recognize
from hompoly.graphs import (CLIQUE, CYCLE, OUTERPLANAR, PLANAR, TREE,
                            all_edges, genus_class, subset_in_class)

K2 = Graph.single_edge()


def test_edges_are_canonicalized():
    g = Graph.make(3, [(2, 1), (1, 2), (0, 2)])
    assert g.edges == frozenset({(1, 2), (0, 2)})
    with pytest.raises(ValueError):
        Graph.make(2, [(0, 0)])


def test_odd_cycle_not_homomorphic_to_edge():
    assert not is_homomorphic(Graph.cycle(3), K2)
    assert is_homomorphic(Graph.cycle(4), K2)


def test_everything_maps_to_a_looped_vertex():
    loop = Graph.looped_vertex()
    for g in (Graph.cycle(5), Graph.complete(4), Graph.path(4)):
        assert is_homomorphic(g, loop)


def test_hom_matches_brute_force_on_samples():
    rng = random.Random(7)
    hs = [K2, Graph.complete(3), Graph.looped_vertex(), Graph.path(3),
          Graph.make(2, [(0, 1)], loops=[0])]
    for _ in range(40):
        n = rng.randint(1, 5)
        edges = [e for e in all_edges(n) if rng.random() < 0.5]
        g = Graph.make(n, edges)
        for h in hs:
            assert is_homomorphic(g, h) == brute_is_homomorphic(g, h)


def test_hom_is_reflexive_and_composes():
    rng = random.Random(11)
    graphs = []
    for _ in range(12):
        n = rng.randint(2, 5)
        graphs.append(Graph.make(n, [e for e in all_edges(n) if rng.random() < 0.6]))
    for g in graphs:
        assert is_homomorphic(g, g)
    for g, h, k in itertools.islice(itertools.product(graphs, repeat=3), 200):
        if is_homomorphic(g, h) and is_homomorphic(h, k):
            assert is_homomorphic(g, k)


def test_hom_to_single_edge_is_bipartiteness():
    assert hom_to_single_edge(Graph.cycle(4))
    assert not hom_to_single_edge(Graph.cycle(5))
    ladder = Graph.make(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
    assert hom_to_single_edge(ladder)  # height-one grid folds onto an edge
    # exhaustive agreement with the search on every graph with <= 4 vertices,
    # sampled agreement up to 8
    for n in range(1, 5):
        edges = all_edges(n)
        for mask in range(1 << len(edges)):
            es = [edges[i] for i in range(len(edges)) if mask >> i & 1]
            g = Graph.make(n, es)
            assert hom_to_single_edge(g) == is_homomorphic(g, K2)
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(5, 8)
        g = Graph.make(n, [e for e in all_edges(n) if rng.random() < 0.4])
        assert hom_to_single_edge(g) == is_homomorphic(g, K2)


def test_recognize_examples():
    tri_plus_isolated = Graph.make(5, [(0, 1), (1, 2), (0, 2)])
    assert recognize(tri_plus_isolated, CYCLE)
    two_edges = Graph.make(4, [(0, 1), (2, 3)])
    assert not recognize(two_edges, CLIQUE)
    assert not recognize(Graph.complete(4), OUTERPLANAR)
    assert recognize(Graph.complete(4), PLANAR)
    assert recognize(Graph.complete(5), genus_class(1))
    assert not recognize(Graph.complete(5), PLANAR)
    assert not recognize(Graph.make(3, [(0, 1)], loops=[2]), TREE)


def test_recognize_rejects_extra_components():
    g = Graph.make(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert not recognize(g, CYCLE)


def collect(n, cls):
    seen = []
    enumerate_subgraphs(n, cls, seen.append)
    return seen


def test_enumeration_counts():
    assert len(collect(4, CYCLE)) == 7
    assert len(collect(4, CLIQUE)) == 11
    assert len(collect(3, TREE)) == 6


def test_enumeration_is_deterministic_and_bitmask_ordered():
    edges = all_edges(4)
    order = {e: i for i, e in enumerate(edges)}

    def mask(subset):
        return sum(1 << order[e] for e in subset)

    seen = collect(4, CYCLE)
    assert seen == collect(4, CYCLE)
    assert [mask(s) for s in seen] == sorted(mask(s) for s in seen)


@pytest.mark.parametrize("kind,genus_k", [("cycle", None), ("clique", None),
                                          ("tree", None), ("outerplanar", None),
                                          ("planar", None), ("genus", 0),
                                          ("genus", 1)])
def test_enumeration_matches_recognizer_and_brute(kind, genus_k):
    for n in (3, 4, 5):
        if kind == "genus" and genus_k == 1 and n < 5:
            continue
        cls = genus_class(genus_k) if kind == "genus" else \
            {"cycle": CYCLE, "clique": CLIQUE, "tree": TREE,
             "outerplanar": OUTERPLANAR, "planar": PLANAR}[kind]
        got = {frozenset(s) for s in collect(n, cls)}
        expected = set(brute_class_subsets(n, kind, genus_k))
        assert got == expected
        for s in got:
            assert recognize(Graph.make(n, s), cls)
            assert subset_in_class(n, list(s), cls)


def test_contract_edge():
    tri = Graph.cycle(3)
    assert tri.contract_edge((0, 1)) == Graph.make(2, [(0, 1)])
    p3 = Graph.path(3)
    assert p3.contract_edge((1, 2)) == Graph.make(2, [(0, 1)])
    with pytest.raises(ValueError):
        tri.contract_edge((0, 5))


def test_contract_edge_preserves_connectivity_and_shrinks():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(3, 7)
        es = [e for e in all_edges(n) if rng.random() < 0.5]
        g = Graph.make(n, es)
        if not g.edges:
            continue
        e = sorted(g.edges)[rng.randrange(len(g.edges))]
        c = g.contract_edge(e)
        assert c.n == g.n - 1
        assert len([x for x in c.components() if len(x) > 1]) \
            <= len([x for x in g.components() if len(x) > 1])


def test_contract_block_edge_gives_seven_vertices():
    from hompoly.gadgets import genus_block
    block = genus_block().graph
    contracted = block.contract_edge((4, 5))
    assert contracted.n == 7


def test_graph_json_roundtrip():
    g = Graph.make(4, [(0, 1), (2, 3)], loops=[1], labels={"center": 0})
    assert Graph.from_json_obj(g.to_json_obj()) == g


def test_labels_unique_per_role():
    with pytest.raises(ValueError):
        Graph.make(2, labels=(("a", 0), ("a", 1)))
