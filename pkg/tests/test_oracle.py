import math
from fractions import Fraction

import pytest

from minorclass import classes, egf, oracle
from minorclass.classes import BOWTIE_FREE, FORESTS, MAX_DEGREE_TWO, PATH_FORESTS, all_classes_for_tests
from minorclass.dist import components_dist, largest_component_dist, root_component_dist
from minorclass.graphs import LabelledGraph, complete_graph, diamond, triangle


@pytest.mark.parametrize("n,count", [(2, 2), (3, 8), (4, 64)])
def test_enumerate_graphs(n, count):
    gs = list(oracle.enumerate_graphs(n))
    assert len(gs) == count and len(set(gs)) == count


def test_enumerate_range():
    with pytest.raises(ValueError):
        next(oracle.enumerate_graphs(9))
    with pytest.raises(ValueError):
        next(oracle.enumerate_graphs(0))


def test_has_minor_examples():
    assert oracle.has_minor(triangle(), triangle())
    assert not oracle.has_minor(LabelledGraph(4, [(1, 2), (2, 3), (2, 4)]), triangle())
    assert oracle.has_minor(complete_graph(4), diamond())
    with pytest.raises(ValueError):
        oracle.has_minor(LabelledGraph(11), triangle())


def test_count_examples():
    assert oracle.count_class(BOWTIE_FREE, 4)[0] == 64
    assert oracle.count_class(FORESTS, 3) == (7, 3)
    assert oracle.count_class(MAX_DEGREE_TWO, 3) == (8, 4)


def test_count_class_guards():
    with pytest.raises(ValueError):
        oracle.count_class(FORESTS, 7)
    with pytest.raises(ValueError):
        oracle.count_class(FORESTS, 8, allow_seven=True)


def test_forest_counts_match_series():
    series = egf.exp(egf.tree_substitute(egf.z(6) - (egf.z(6) * egf.z(6)).scale(Fraction(1, 2))))
    for n in range(1, 7):
        a, c = oracle.count_class(FORESTS, n)
        assert a == series.count(n)
        assert c == n ** (n - 2)


@pytest.mark.parametrize("cid", all_classes_for_tests(), ids=str)
def test_structural_and_minor_membership_agree(cid):
    for n in range(1, 7):
        oracle.member_masks(cid, n, method="both")


def test_exhaustive_distributions_path_forests():
    law = oracle.exhaustive_distributions(PATH_FORESTS, 4)
    assert law["N"] == components_dist(PATH_FORESTS, 4)
    assert law["S"] == root_component_dist(PATH_FORESTS, 4)
    assert law["L"] == largest_component_dist(PATH_FORESTS, 4)


def test_exhaustive_n_one_point_masses():
    law = oracle.exhaustive_distributions(BOWTIE_FREE, 1)
    for d in law.values():
        assert d.probs == (1,)


@pytest.mark.slow
def test_caterpillar_exclusion_at_seven():
    with pytest.warns(RuntimeWarning):
        a, c = oracle.count_class(classes.CATERPILLAR_FORESTS, 7, method="minor", allow_seven=True)
    series = classes.connected_egf(classes.CATERPILLAR_FORESTS, 7)
    assert c == series.count(7) == 15967
    assert a == classes.all_egf(classes.CATERPILLAR_FORESTS, 7).count(7)
