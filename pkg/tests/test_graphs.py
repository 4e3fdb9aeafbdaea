import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minorclass import graphs
from minorclass.graphs import LabelledGraph, graph6_decode, graph6_encode


@st.composite
def small_graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return LabelledGraph(n, [p for p, c in zip(pairs, chosen) if c])


def to_nx(g: LabelledGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u - 1, v - 1) for u, v in g.edges())
    return h


@given(small_graphs())
def test_graph6_matches_networkx(g):
    assert graph6_encode(g) == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert graph6_decode(graph6_encode(g)) == g


def test_graph6_large_size_forms():
    for n in (62, 63, 300):
        g = graphs.path_graph(n)
        text = graph6_encode(g)
        assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert graph6_decode(text) == g
    assert graph6_decode(">>graph6<<" + graph6_encode(graphs.triangle())) == graphs.triangle()


def test_graph6_rejects_garbage():
    with pytest.raises(ValueError):
        graph6_decode("B\x7f")


@given(small_graphs(max_n=9))
def test_edge_mask_round_trip(g):
    assert LabelledGraph.from_edge_mask(g.n, g.edge_mask()) == g


@given(small_graphs())
def test_json_round_trip(g):
    assert LabelledGraph.from_json(g.to_json()) == g
    assert g.to_dict()["n"] == g.n


@given(small_graphs())
def test_components_match_networkx(g):
    ours = sorted(sorted(v + 1 for v in range(g.n) if m >> v & 1) for m in g.components())
    theirs = sorted(sorted(v + 1 for v in c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
    assert g.is_connected() == (g.n > 0 and nx.is_connected(to_nx(g))) or g.n == 0


@given(small_graphs(), st.randoms(use_true_random=False))
def test_relabel_preserves_shape(g, rnd):
    perm = list(range(1, g.n + 1))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert sorted(h.degrees()) == sorted(g.degrees())
    assert nx.is_isomorphic(to_nx(g), to_nx(h))


def test_constructor_validation():
    with pytest.raises(ValueError):
        LabelledGraph(2, [(1, 1)])
    with pytest.raises(ValueError):
        LabelledGraph(2, [(1, 3)])


def test_patterns():
    assert graphs.triangle().edge_count == 3
    assert graphs.diamond().edge_count == 5 and graphs.diamond().n == 4
    assert graphs.bowtie().n == 5 and graphs.bowtie().edge_count == 6
    assert graphs.star_graph(3).n == 4 and max(graphs.star_graph(3).degrees()) == 3
    sp = graphs.spoon(2)
    assert sp.n == 5 and sp.edge_count == 5
    spider = graphs.spider(3, 2)
    assert spider.n == 7 and sorted(spider.degrees()) == [1, 1, 1, 2, 2, 2, 3]


@pytest.mark.parametrize("n", range(1, 8))
def test_labelled_tree_counts(n):
    trees = list(graphs.labelled_trees(n))
    assert len(trees) == n ** (n - 2) if n >= 2 else len(trees) == 1
    assert len(set(trees)) == len(trees)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23)])
def test_unlabelled_tree_counts(n, count):
    assert len(graphs.unlabelled_trees(n)) == count


def test_tree_canonical_form_is_isomorphism_invariant():
    rnd = random.Random(5)
    for _ in range(50):
        n = rnd.randint(2, 10)
        t = graphs.tree_from_pruefer([rnd.randint(1, n) for _ in range(n - 2)], n)
        perm = list(range(1, n + 1))
        rnd.shuffle(perm)
        assert graphs.tree_canonical_form(t) == graphs.tree_canonical_form(t.relabel(perm))
