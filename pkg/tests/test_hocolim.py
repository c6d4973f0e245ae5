import random

import pytest

from hck.cech import cech_of_cover, cech_of_map, extra_degeneracy
from hck.finite_space import ContinuousMap, FiniteSpace, IndexedCover
from hck.harness.fixtures import load_cover, load_space
from hck.harness.randomgen import random_cover
from hck.hocolim import (DiagramError, PosetDiagram, augmented_contraction_check,
                         cofinality_check, diagonal_cell_count, diagonal_homology, diagram_PA,
                         diagram_PU, hocolim_homology, nerve_bisimplicial,
                         simplicial_replacement, truncation_stable, undercategory)
from hck.simplicial import check_bisimplicial

from oracles import as_pairs, cyclic_group_homology, order_complex_homology

U = frozenset({"x1", "x2", "y1"})
V = frozenset({"x1", "x2", "y2"})


def s1():
    return load_space("S1min")


def test_pa_object_counts():
    X = s1()
    assert len(diagram_PA(IndexedCover(X, [("X", X.points)]))) == 1
    d2 = diagram_PA(load_cover("S1min", "UV"))
    assert len(d2) == 3 and len(d2.index.covering_pairs) == 2
    d3 = diagram_PA(load_cover("wedge", "three"))
    assert len(d3) == 7


def test_pu_examples():
    assert len(diagram_PU(load_cover("S1min", "UV"))) == 3
    X = s1()
    cech = IndexedCover(X, [("U", U), ("V", V), ("W", U & V)])
    pa, pu = diagram_PA(cech), diagram_PU(cech)
    assert set(pu.value.values()) == set(pa.value.values())
    assert len(pu) < len(pa)
    rep = IndexedCover(X, [("U", X.points), ("V", X.points)])
    assert len(diagram_PU(rep)) == 1 and len(diagram_PA(rep)) == 3


def test_diagram_must_be_functor():
    X = s1()
    index = FiniteSpace(["a", "b"], [("a", "b")])
    with pytest.raises(DiagramError):
        PosetDiagram(X, index, {"a": U, "b": U & V})


def test_one_object_replacement_is_constant():
    X = s1()
    rep = simplicial_replacement(diagram_PA(IndexedCover(X, [("X", X.points)])))
    assert [len(rep.summands(n)) for n in range(4)] == [1, 1, 1, 1]


def test_pa_replacement_level_one():
    d = diagram_PA(load_cover("S1min", "UV"))
    rep = simplicial_replacement(d)
    objs = d.objects()
    pairs = [(a, b) for a in objs for b in objs if d.index.leq(a, b)]
    # three identities plus the two arrows out of the intersection
    assert len(rep.summands(1)) == len(pairs) == 5
    for c, car in rep.summands(1):
        assert car == d.value[c[0]]
    assert rep.check_identities(3) == []


def test_undercategory_single_label():
    X = s1()
    cov = IndexedCover(X, [("X", X.points)])
    assert len(undercategory(cov, frozenset(X.points))) == 1


def test_cofinality_uv():
    reps = cofinality_check(load_cover("S1min", "UV"))
    assert len(reps) == 3
    assert all(r.contractible and r.method == "core" for r in reps)
    inter = next(r for r in reps if set(r.object) == {"x1", "x2"})
    assert inter.size == 3


@pytest.mark.parametrize("seed", range(10))
def test_cofinality_random(seed):
    X = load_space(["S1min", "S2min", "wedge", "disc"][seed % 4])
    cov = random_cover(X, random.Random(seed), max_entries=4)
    assert all(r.contractible for r in cofinality_check(cov))


def test_hocolim_contractible_whole():
    X = load_space("disc")
    res = hocolim_homology(cech_of_cover(IndexedCover(X, [("X", X.points)])), 2)
    assert as_pairs(res.homology) == [(1, ()), (0, ()), (0, ())]
    assert res.passed


def test_hocolim_uv():
    res = hocolim_homology(cech_of_cover(load_cover("S1min", "UV")), 2)
    assert as_pairs(res.homology) == order_complex_homology(s1(), 2) == [(1, ()), (1, ()), (0, ())]
    assert res.passed
    assert res.certificate.to_json()["status"] == "homology-certified through degree 2"


def test_eg_z2_contractible():
    G = FiniteSpace.discrete([0, 1])
    pt = FiniteSpace(["*"])
    res = hocolim_homology(cech_of_map(ContinuousMap(G, pt, {0: "*", 1: "*"})), 3)
    assert as_pairs(res.homology) == [(1, ())] + [(0, ())] * 3
    assert res.passed


def test_bar_construction_homology():
    from hck.harness.groups import bar_construction, cyclic_group, symmetric_group
    from hck.homology import sset_chain_complex
    for n in (2, 3, 4):
        got = sset_chain_complex(bar_construction(cyclic_group(n)), 4).homology_range(3)
        assert as_pairs(got) == cyclic_group_homology(n, 3)
    s3 = sset_chain_complex(bar_construction(symmetric_group()), 4).homology_range(3)
    assert as_pairs(s3) == [(1, ()), (0, (2,)), (0, ()), (0, (6,))]


@pytest.mark.parametrize("space, cover", [("S1min", "UV"), ("S2min", "hemispheres"),
                                          ("wedge", "three"), ("disc", "UVX")])
def test_truncation_stable(space, cover):
    assert truncation_stable(cech_of_cover(load_cover(space, cover)), 2)


@pytest.mark.parametrize("space, cover", [("S1min", "XU"), ("disc", "UVX"), ("disc", "whole")])
def test_augmented_contraction(space, cover):
    ed = extra_degeneracy(load_cover(space, cover))
    assert ed.identities_ok
    assert augmented_contraction_check(ed, 2)


def test_diagonal_cross_check_uv():
    h = cech_of_cover(load_cover("S1min", "UV"))
    assert check_bisimplicial(nerve_bisimplicial(h), 2) == []
    assert diagonal_cell_count(h, 3) < 5000
    assert diagonal_homology(h, 2) == hocolim_homology(h, 2, certificate=False).homology


def test_broken_hypercover_certificate_fails():
    from hck.harness.fixtures import load_hypercover
    res = hocolim_homology(load_hypercover("S1min-broken"), 2)
    assert not res.certificate.passed
    assert res.certificate.first_failure() in (0, 1)
    assert 1 in res.certificate.witnesses
    assert as_pairs(res.homology)[1] == (0, ())


def test_one_sided_omission_keeps_homology():
    # invalid as a hypercover, yet the x2 path survives through (V, U)
    from hck.harness.fixtures import load_hypercover
    res = hocolim_homology(load_hypercover("S1min-one-sided"), 2)
    assert res.certificate.passed
