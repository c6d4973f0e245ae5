from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hck.finite_space import (ContinuousMap, FiniteSpace, IndexedCover, OpenSubset, SpaceError,
                              beat_point_core, chains, disjoint_union, find_local_section,
                              intersection, intersection_closure, is_cech_cover,
                              is_complete_cover, is_contractible_by_core, is_locally_split,
                              minimal_open, order_complex, pullback_cover)
from hck.harness.fixtures import load_map, load_space

from oracles import order_complex_homology, poset_chains


def brute_down_sets(space):
    pts = list(space.points)
    out = []
    for r in range(len(pts) + 1):
        for sub in combinations(pts, r):
            s = set(sub)
            if all(y in s for x in s for y in pts if space.leq(y, x)):
                out.append(frozenset(s))
    return out


def brute_minimal_open(space, x):
    return min((d for d in brute_down_sets(space) if x in d), key=len)


@pytest.fixture
def s1():
    return load_space("S1min")


def test_minimal_open_point():
    X = load_space("point")
    assert minimal_open(X, "*").carrier == {"*"}


@pytest.mark.parametrize("x, expect", [("y1", {"x1", "x2", "y1"}), ("x1", {"x1"})])
def test_minimal_open_s1min(s1, x, expect):
    assert minimal_open(s1, x).carrier == expect == brute_minimal_open(s1, x)


@pytest.mark.parametrize("name", ["S1min", "S2min", "wedge", "disc", "chain2", "circle6"])
def test_minimal_open_matches_brute_force(name):
    X = load_space(name)
    for x in X.points:
        assert minimal_open(X, x).carrier == brute_minimal_open(X, x)


def test_open_sets_are_down_sets(s1):
    assert sorted(map(sorted, s1.open_sets())) == sorted(map(sorted, brute_down_sets(s1)))


def test_intersection_cases(s1):
    U = OpenSubset(s1, {"x1", "x2", "y1"})
    V = OpenSubset(s1, {"x1", "x2", "y2"})
    empty = OpenSubset(s1, set())
    assert intersection(U, U) == U
    assert (U & V).carrier == {"x1", "x2"}
    assert intersection(U, empty).carrier == frozenset()


def test_non_open_subset_rejected(s1):
    with pytest.raises(SpaceError):
        OpenSubset(s1, {"y1"})


def test_antisymmetry_enforced():
    with pytest.raises(SpaceError):
        FiniteSpace(["a", "b"], [("a", "b"), ("b", "a")])


def test_transitive_closure():
    X = FiniteSpace("abc", [("a", "b"), ("b", "c")])
    assert X.leq("a", "c")
    assert set(X.covering_pairs) == {("a", "b"), ("b", "c")}
    assert ("a", "c") in X.relations


def test_cover_must_cover(s1):
    with pytest.raises(SpaceError, match="missing"):
        IndexedCover(s1, [("U", {"x1", "x2", "y1"})])


def test_cover_labels_distinct(s1):
    with pytest.raises(SpaceError):
        IndexedCover(s1, [("U", s1.points), ("U", s1.points)])


def test_complete_cover_examples(s1):
    U, V = {"x1", "x2", "y1"}, {"x1", "x2", "y2"}
    assert is_complete_cover(IndexedCover(s1, [("X", s1.points)]))
    assert not is_complete_cover(IndexedCover(s1, [("U", U), ("V", V)]))
    assert is_complete_cover(IndexedCover(s1, [("U", U), ("V", V), ("a", {"x1"}), ("b", {"x2"})]))


def test_cech_cover_examples(s1):
    U, V = {"x1", "x2", "y1"}, {"x1", "x2", "y2"}
    assert is_cech_cover(IndexedCover(s1, [("X", s1.points)]))
    assert not is_cech_cover(IndexedCover(s1, [("U", U), ("V", V)]))
    assert is_cech_cover(IndexedCover(s1, [("U", U), ("V", V), ("W", {"x1", "x2"})]))


def test_intersection_closure_fixpoint():
    sets = [frozenset("ab"), frozenset("bc"), frozenset("cd")]
    closed = set(intersection_closure(sets, keep_empty=True))
    assert all((a & b) in closed for a in closed for b in closed)
    assert frozenset() in closed


def test_locally_split_examples(s1):
    assert is_locally_split(ContinuousMap.identity(s1))
    G = FiniteSpace.discrete(["e", "g"])
    E = disjoint_union([("L", G), ("R", G)])
    assert is_locally_split(ContinuousMap(E, G, {e: e[1] for e in E.points}))
    pt = FiniteSpace(["a"])
    # a map whose image misses points has no section there
    inc = ContinuousMap(pt, s1, {"a": "x1"})
    assert not is_locally_split(inc)
    assert find_local_section(inc, "x1") == {"x1": "a"}
    assert find_local_section(inc, "y1") is None


def test_order_complex_examples(s1):
    assert order_complex(load_space("point")).f_vector() == [1]
    assert order_complex(s1).f_vector() == [4, 4]
    assert order_complex(load_space("chain2")).f_vector() == [2, 1]


@pytest.mark.parametrize("name", ["S1min", "S2min", "wedge", "disc", "circle6"])
def test_chains_match_brute_force(name):
    X = load_space(name)
    got = {frozenset(c) for c in chains(X, frozenset(X.points))}
    assert got == {frozenset(c) for c in poset_chains(X.points, X.leq)}


def test_beat_point_core_examples(s1):
    assert len(beat_point_core(load_space("chain2"))) == 1
    assert beat_point_core(s1) == s1
    cone = FiniteSpace(list(s1.points) + ["t"], list(s1.relations) + [(x, "t") for x in s1.points])
    assert is_contractible_by_core(cone)


def test_core_preserves_homology():
    for name in ("S1min", "S2min", "wedge", "disc", "circle6"):
        X = load_space(name)
        assert order_complex_homology(beat_point_core(X), 2) == order_complex_homology(X, 2)


def test_pullback_cover_examples(s1):
    cov = IndexedCover(s1, [("U", {"x1", "x2", "y1"}), ("V", {"x1", "x2", "y2"})])
    ident = pullback_cover(cov, ContinuousMap.identity(s1))
    assert [c.carrier for _, c in ident.entries] == [c.carrier for _, c in cov.entries]
    pt = load_space("point")
    pb = pullback_cover(cov, ContinuousMap(pt, s1, {"*": "x1"}))
    assert all(c.carrier == {"*"} for _, c in pb.entries)
    f = load_map("mccord")
    pb = pullback_cover(cov, f)
    for (l, c), (_, d) in zip(pb.entries, cov.entries):
        assert c.carrier == {y for y in f.source.points if f(y) in d.carrier}


def test_continuous_map_must_be_monotone(s1):
    with pytest.raises(SpaceError):
        ContinuousMap(s1, s1, {"x1": "y1", "x2": "x2", "y1": "x1", "y2": "y2"})


def test_json_round_trip():
    X = load_space("S2min")
    assert FiniteSpace.from_json(X.to_json()) == X


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 6))
    pts = [f"p{i}" for i in range(n)]
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    # orient edges by index so the relation is acyclic
    return FiniteSpace(pts, [(pts[min(a, b)], pts[max(a, b)]) for a, b in edges if a != b])


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_property_minimal_opens_and_covering_pairs(X):
    for x in X.points:
        assert minimal_open(X, x).carrier == brute_minimal_open(X, x)
    strict = {(a, b) for a in X.points for b in X.points if a != b and X.leq(a, b)}
    cover = {(a, b) for a, b in strict
             if not any((a, c) in strict and (c, b) in strict for c in X.points)}
    assert set(X.covering_pairs) == cover


@settings(max_examples=40, deadline=None)
@given(random_posets())
def test_property_core_is_homotopy_invariant(X):
    assert order_complex_homology(beat_point_core(X), 2) == order_complex_homology(X, 2)
