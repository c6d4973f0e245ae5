import pytest
from hypothesis import given, settings, strategies as st

from hck.cech import cech_of_cover
from hck.finite_space import IndexedCover, order_complex
from hck.harness.fixtures import CORE_SPACES, load_cover, load_space
from hck.homology import (ChainComplex, ChainComplexError, ChainMap, HomologyGroup, IntMatrix,
                          augmentation_map, cone_certificate, invariant_factors, mapping_cone,
                          normalized_chains, pi0_compare, simplicial_chain_complex,
                          smith_normal_form, totalize)
from hck.simplicial import OrderedComplex

from oracles import (as_pairs, component_count, homology_from_boundaries, octahedron_boundary,
                     order_complex_homology, simplicial_homology, snf_diagonal)

FOUR_CYCLE = [(0, 1), (1, 2), (2, 3), (0, 3)]
# 6-vertex triangulation of the projective plane
RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
       (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def complex_of(faces):
    return OrderedComplex(sorted({v for f in faces for v in f}), faces)


def test_snf_identity():
    res = smith_normal_form(IntMatrix.identity(3), certificate=True)
    assert res.diagonal == [1, 1, 1]
    assert res.verify(IntMatrix.identity(3))


def test_snf_two_three():
    m = IntMatrix.from_dense([[2, 0], [0, 3]])
    res = smith_normal_form(m, certificate=True)
    assert res.diagonal == [1, 6]
    assert res.verify(m)


def test_invariant_factors_accepts_generators():
    assert invariant_factors(d for d in [2, 3, 1]) == [1, 1, 6]
    assert invariant_factors([4, 6]) == [2, 12]


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_property_snf_matches_sympy_and_certifies(rows):
    m = IntMatrix.from_dense(rows)
    res = smith_normal_form(m, certificate=True)
    assert sorted(res.diagonal) == snf_diagonal(rows)
    assert res.verify(m)


def test_point_complex():
    c = simplicial_chain_complex(complex_of([(0,)]))
    assert as_pairs(c.homology_range(0)) == [(1, ())]


def test_four_cycle():
    c = simplicial_chain_complex(complex_of(FOUR_CYCLE))
    assert as_pairs(c.homology_range(1)) == simplicial_homology(FOUR_CYCLE, 1) == [(1, ()), (1, ())]


def test_four_cycle_boundary_matrix():
    c = simplicial_chain_complex(complex_of(FOUR_CYCLE))
    res = c.smith(1, certificate=True)
    assert res.verify(c.boundary(1))
    assert c.rank(1) - res.rank == 1


def test_octahedron_via_order_complex():
    c = simplicial_chain_complex(order_complex(load_space("S2min")))
    want = simplicial_homology(octahedron_boundary(), 2)
    assert as_pairs(c.homology_range(2)) == want == [(1, ()), (0, ()), (1, ())]


def test_projective_plane_torsion():
    c = simplicial_chain_complex(complex_of(RP2))
    got = as_pairs(c.homology_range(2))
    assert got == simplicial_homology(RP2, 2) == [(1, ()), (0, (2,)), (0, ())]


@pytest.mark.parametrize("name", CORE_SPACES + ("circle6",))
def test_order_complex_homology_matches_oracle(name):
    X = load_space(name)
    c = simplicial_chain_complex(order_complex(X))
    assert c.check()
    top = min(2, c.max_degree())
    assert as_pairs(c.homology_range(top, certificate=True)) == order_complex_homology(X, top)
    assert c.verify_certificates()


def test_homology_group_validation():
    with pytest.raises(ValueError):
        HomologyGroup(0, (4, 2))
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"
    assert HomologyGroup(1).to_json(3) == {"degree": 3, "betti": 1, "torsion": []}


def test_truncated_complex_refuses_top_degree():
    c = ChainComplex({0: ["a"], 1: ["e"]}, {1: IntMatrix.zeros(1, 1)})
    with pytest.raises(ChainComplexError):
        c.homology(1)


@pytest.mark.parametrize("K", range(5))
def test_cone_of_identity_passes(K):
    c = simplicial_chain_complex(order_complex(load_space("S2min")))
    assert cone_certificate(ChainMap.identity(c), K).passed


def test_cone_detects_non_equivalence():
    a = simplicial_chain_complex(complex_of([(0,)]))
    b = simplicial_chain_complex(complex_of(FOUR_CYCLE))
    f = ChainMap(a, b, {0: IntMatrix((4, 1), {(0, 0): 1}), 1: IntMatrix.zeros(4, 0),
                        2: IntMatrix.zeros(0, 0)})
    cert = cone_certificate(f, 1, certificate=True)
    assert not cert.passed
    assert cert.first_failure() == 0
    # the cone carries H_1 of the circle
    assert list(cert.witnesses) == [1]
    assert cert.cone_homology[1].betti == 1


def test_mapping_cone_is_a_complex():
    c = simplicial_chain_complex(order_complex(load_space("disc")))
    assert mapping_cone(ChainMap.identity(c), 3).check()


def uv():
    return load_cover("S1min", "UV")


def test_double_complex_single_label_is_one_column():
    X = load_space("S1min")
    h = cech_of_cover(IndexedCover(X, [("X", X.points)]))
    dc = normalized_chains(h, 3, 3)
    assert all(not cells for (p, q), cells in dc.cells.items() if p > 0)
    assert [dc.rank(0, q) for q in range(2)] == order_complex(X).f_vector()


def test_double_complex_ranks_uv():
    h = cech_of_cover(uv())
    dc = normalized_chains(h, 4, 2)
    assert dc.check() == []
    # level 0: chains of U and V; level p >= 1: the two alternating tuples on {x1, x2}
    assert dc.rank(0, 0) == 6 and dc.rank(0, 1) == 4
    for p in range(1, 5):
        assert dc.rank(p, 0) == 4 and dc.rank(p, 1) == 0


@pytest.mark.parametrize("space, cover", [("S1min", "UV"), ("S2min", "hemispheres"),
                                          ("wedge", "three"), ("disc", "UVX")])
def test_double_complex_anticommutes(space, cover):
    dc = normalized_chains(cech_of_cover(load_cover(space, cover)), 4, 3)
    assert dc.check() == []


def test_total_homology_uv_against_dense_oracle():
    dc = normalized_chains(cech_of_cover(uv()), 6, 6)
    tot = totalize(dc, 6)
    assert tot.check()
    bounds = {n: tot.boundary(n).to_dense() for n in range(1, 7) if tot.rank(n) and tot.rank(n - 1)}
    want = homology_from_boundaries([tot.rank(n) for n in range(7)], bounds, 2)
    assert as_pairs(tot.homology_range(2)) == want == [(1, ()), (1, ()), (0, ())]


def test_augmentation_whole_cover_is_iso():
    X = load_space("disc")
    h = cech_of_cover(IndexedCover(X, [("X", X.points)]))
    dc = normalized_chains(h, 3, 3, total_bound=3)
    tot = totalize(dc, 3)
    eps = augmentation_map(dc, tot)
    assert eps.check()
    for n in range(4):
        m = eps.component(n)
        assert m.shape[0] == m.shape[1] and smith_normal_form(m).diagonal == [1] * m.shape[0]


def test_augmentation_uv_surjective_in_degree_zero():
    dc = normalized_chains(cech_of_cover(uv()), 3, 3, total_bound=3)
    tot = totalize(dc, 3)
    eps = augmentation_map(dc, tot)
    assert eps.check()
    m = eps.component(0)
    assert smith_normal_form(m).diagonal == [1] * m.shape[0]
    assert cone_certificate(eps, 1).passed


def test_pi0_examples():
    X = load_space("S1min")
    assert pi0_compare(cech_of_cover(IndexedCover(X, [("X", X.points)])))
    assert pi0_compare(cech_of_cover(uv()))
    assert component_count(X) == 1
    two = load_cover("two-points", "singletons")
    assert component_count(two.base) == 2
    assert pi0_compare(cech_of_cover(two))
