import math
from fractions import Fraction

import mpmath
import pytest

from minorclass import classes, egf, graphs
from minorclass.classes import (
    BOWTIE_FREE,
    CATERPILLAR_FORESTS,
    DIAMOND_BOWTIE_FREE,
    FORESTS,
    MAX_DEGREE_TWO,
    PATH_FORESTS,
    TWO_SPOON_FREE,
    ClassId,
    DomainError,
    UnsupportedClass,
    all_egf,
    bounded,
    connected_egf,
    eval_analytic,
    membership,
    parse_class,
    singularity_data,
    spoon_dbf,
    star_ray,
)
from minorclass.graphs import LabelledGraph


@pytest.mark.parametrize(
    "token",
    ["forests", "spoon-dbf:3", "two-spoon-free", "diamond-bowtie-free", "bounded:2", "path-forests",
     "caterpillar-forests", "max-degree-2", "bowtie-free", "star-ray:4", "star-ray:inf"],
)
def test_parse_round_trip(token):
    assert str(parse_class(token)) == token


@pytest.mark.parametrize("token", ["trees", "spoon-dbf:0", "bounded", "star-ray:1", "forests:2", "bounded:x"])
def test_parse_rejects(token):
    with pytest.raises(ValueError):
        parse_class(token)


def test_connected_examples():
    assert connected_egf(MAX_DEGREE_TWO, 3).count(3) == 4
    assert connected_egf(PATH_FORESTS, 5).count(5) == 60
    assert connected_egf(BOWTIE_FREE, 4).count(4) == 38
    assert connected_egf(DIAMOND_BOWTIE_FREE, 3).count(3) == 4
    assert connected_egf(CATERPILLAR_FORESTS, 4).count(4) == 16


def test_all_examples():
    assert all_egf(FORESTS, 3).count(3) == 7
    assert all_egf(bounded(2), 3).count(3) == 4
    assert all_egf(PATH_FORESTS, 2).count(2) == 2


def test_max_degree_two_formula():
    c = connected_egf(MAX_DEGREE_TWO, 50)
    assert c.count(1) == 1 and c.count(2) == 1
    for n in range(3, 51):
        assert c.count(n) == Fraction(math.factorial(n), 2) + Fraction(math.factorial(n - 1), 2)


def test_path_forest_formula():
    c = connected_egf(PATH_FORESTS, 40)
    assert all(c.count(n) == math.factorial(n) // 2 for n in range(2, 41))


def test_star_ray_two_is_paths():
    assert connected_egf(star_ray(2), 30) == connected_egf(PATH_FORESTS, 30)


def test_star_ray_limit():
    # at fixed order the k-degree series stabilise to the unbounded one once k >= order
    assert connected_egf(star_ray(12), 12) == connected_egf(star_ray(None), 12)


def test_spoon_series_approach_diamond_bowtie_free():
    order = 14
    target = connected_egf(DIAMOND_BOWTIE_FREE, order)
    prev = None
    for k in range(1, order + 2):
        cur = connected_egf(spoon_dbf(k), order)
        if prev is not None:
            assert all(a >= b for a, b in zip(cur.counts, prev.counts))
        prev = cur
    assert prev == target


def test_bounded_counts_and_refusal():
    assert connected_egf(bounded(3), 6).counts == (0, 1, 1, 4, 0, 0, 0)
    with pytest.raises(UnsupportedClass):
        connected_egf(bounded(7), 8)
    custom = bounded(7, (0, 1, 1, 4, 38, 728, 26704, 1866256))
    assert connected_egf(custom, 7).count(7) == 1866256


def test_tree_value():
    assert classes.tree_value(0) == 0
    assert classes.tree_value(mpmath.exp(-1)) == 1
    t = classes.tree_value(mpmath.mpf("0.2"))
    assert abs(t * mpmath.exp(-t) - mpmath.mpf("0.2")) < mpmath.mpf(10) ** -30
    with pytest.raises(DomainError):
        classes.tree_value(mpmath.mpf("0.4"))


def test_eval_analytic_examples():
    assert eval_analytic(PATH_FORESTS, 0)[0] == 0
    with mpmath.workprec(256):
        assert abs(eval_analytic(FORESTS, mpmath.exp(-1))[0] - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** -60
    with pytest.raises(DomainError):
        eval_analytic(PATH_FORESTS, 1)
    with pytest.raises(DomainError):
        eval_analytic(DIAMOND_BOWTIE_FREE, mpmath.exp(-1))


@pytest.mark.parametrize("cid", classes.all_classes_for_tests(), ids=str)
def test_series_and_closed_form_agree(cid):
    rho = singularity_data(cid).rho
    radius = mpmath.mpf(2) if rho == mpmath.inf else rho
    # order 200 keeps the truncation tail below tolerance except at 0.9 rho
    # with rho >= 1, where the (cheap) rational classes get order 1000
    points = [(0.1, 200), (0.5, 200)] + ([(0.9, 1000)] if radius >= 1 else [])
    with mpmath.workprec(256):
        for frac, order in points:
            series = connected_egf(cid, order)
            r = radius * mpmath.mpf(frac)
            vals = eval_analytic(cid, r, 3)
            for d in range(4):
                ser = egf.derivative(series, d) if d else series
                approx = ser.evaluate_float(r)
                if vals[d] == 0:
                    assert approx == 0
                else:
                    assert abs(approx / vals[d] - 1) < mpmath.mpf(10) ** -20, (cid, frac, d)


def test_singularity_examples():
    with mpmath.workprec(256):
        p = singularity_data(PATH_FORESTS)
        assert p.rho == 1 and p.kind == "simple-pole" and p.constants["alpha"] == 0.5 and p.constants["beta"] == 0
        c = singularity_data(CATERPILLAR_FORESTS)
        assert abs(c.rho * mpmath.exp(c.rho) - 1) < mpmath.mpf(10) ** -50
        assert abs(c.rho - 0.567) < 1e-3
        assert abs(c.constants["alpha"] - 0.06) < 0.005 and abs(c.constants["beta"] - 0.59) < 0.005
        f = singularity_data(FORESTS)
        assert f.kind == "convergent" and abs(f.rho - mpmath.exp(-1)) < mpmath.mpf(10) ** -60
        assert abs(f.constants["C(rho)"] - 0.5) < 1e-60 and abs(f.constants["A(rho)"] - mpmath.sqrt(mpmath.e)) < 1e-60
        b = singularity_data(BOWTIE_FREE)
        assert b.kind == "inverse-sqrt"
        assert abs(b.constants["c"] - (mpmath.e - 1.25) / mpmath.sqrt(2)) < 1e-60
        assert singularity_data(bounded(3)).rho == mpmath.inf


def test_membership_examples():
    assert membership(MAX_DEGREE_TWO, graphs.triangle())
    assert not membership(PATH_FORESTS, graphs.star_graph(3))
    assert not membership(BOWTIE_FREE, graphs.bowtie())
    assert membership(BOWTIE_FREE, graphs.complete_graph(4))
    assert membership(TWO_SPOON_FREE, graphs.complete_graph(4))
    assert not membership(TWO_SPOON_FREE, graphs.spoon(2))
    assert membership(CATERPILLAR_FORESTS, graphs.spider(3, 1))
    assert not membership(CATERPILLAR_FORESTS, graphs.spider(3, 2))


def test_bowtie_core_catalogue_members():
    # K4 with a subdivided edge, the book K_{1,1,3}, K_{2,3} plus a long chain are all bowtie-free
    k4sub = LabelledGraph(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (5, 4)])
    book = LabelledGraph(5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)])
    k23_chain = LabelledGraph(7, [(1, 3), (3, 2), (1, 4), (4, 2), (1, 5), (5, 6), (6, 7), (7, 2)])
    for g in (k4sub, book, k23_chain):
        assert membership(BOWTIE_FREE, g)
        assert classes.minor_membership(BOWTIE_FREE, g)
    two_triangles = LabelledGraph(7, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)])
    assert not membership(BOWTIE_FREE, two_triangles)


def test_class_spec_bundle():
    spec = classes.class_spec(FORESTS)
    assert spec.excluded_minors == (graphs.triangle(),)
    assert spec.connected_builder(4).count(4) == 16
    assert spec.membership(graphs.path_graph(4))


def test_classid_validation():
    with pytest.raises(ValueError):
        ClassId("forests", k=2)
    with pytest.raises(ValueError):
        ClassId("nonsense")
