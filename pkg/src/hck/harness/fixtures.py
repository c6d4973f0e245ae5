"""Named spaces, covers, maps, hypercovers and groups used by scenarios and tests."""
from __future__ import annotations

from typing import Callable

from ..cech.core import SimplicialSpaceOverX
from ..cech.hypercover import bounded_hypercover
from ..finite_space import ContinuousMap, FiniteSpace, IndexedCover
from .groups import FiniteGroup, cyclic_group, symmetric_group


def _point() -> FiniteSpace:
    return FiniteSpace(["*"], name="point")


def _chain2() -> FiniteSpace:
    return FiniteSpace(["a", "b"], [("a", "b")], name="chain2")


def _s1min() -> FiniteSpace:
    return FiniteSpace(["x1", "x2", "y1", "y2"],
                       [(x, y) for x in ("x1", "x2") for y in ("y1", "y2")], name="S1min")


def _s2min() -> FiniteSpace:
    lo, mid, hi = ("a1", "a2"), ("b1", "b2"), ("c1", "c2")
    rel = [(x, y) for x in lo for y in mid] + [(x, y) for x in mid for y in hi]
    return FiniteSpace(lo + mid + hi, rel, name="S2min")


def _wedge() -> FiniteSpace:
    return FiniteSpace(["a", "b", "c", "d", "e"],
                       [(x, y) for x in "abc" for y in "de"], name="wedge")


def _disc() -> FiniteSpace:
    s = _s1min()
    return FiniteSpace(list(s.points) + ["t"], list(s.covering_pairs) + [(x, "t") for x in s.points],
                       name="disc")


def _circle6() -> FiniteSpace:
    rel = [("m0", "M0"), ("m1", "M0"), ("m1", "M1"), ("m2", "M1"), ("m2", "M2"), ("m0", "M2")]
    return FiniteSpace(["m0", "m1", "m2", "M0", "M1", "M2"], rel, name="circle6")


def _two_points() -> FiniteSpace:
    return FiniteSpace(["p", "q"], name="two-points")


SPACES: dict[str, Callable[[], FiniteSpace]] = {
    "point": _point,
    "chain2": _chain2,
    "S1min": _s1min,
    "S2min": _s2min,
    "wedge": _wedge,
    "disc": _disc,
    "circle6": _circle6,
    "two-points": _two_points,
}

# the corpus used for "all fixtures" sweeps
CORE_SPACES = ("point", "chain2", "S1min", "S2min", "wedge", "disc")

_U = {"x1", "x2", "y1"}
_V = {"x1", "x2", "y2"}

COVERS: dict[str, dict[str, list]] = {
    "point": {"whole": [("X", {"*"})]},
    "chain2": {"whole": [("X", {"a", "b"})], "nested": [("A", {"a"}), ("X", {"a", "b"})]},
    "S1min": {
        "UV": [("U", _U), ("V", _V)],
        "UV-complete": [("U", _U), ("V", _V), ("x1", {"x1"}), ("x2", {"x2"})],
        "XU": [("X", _U | _V), ("U", _U)],
        "UVV": [("U", _U), ("V", _V), ("W", _V)],
    },
    "S2min": {
        "hemispheres": [("N", {"a1", "a2", "b1", "b2", "c1"}), ("S", {"a1", "a2", "b1", "b2", "c2"})],
        "quarters": [("c1", {"a1", "a2", "b1", "b2", "c1"}), ("b1", {"a1", "a2", "b1"}),
                     ("c2", {"a1", "a2", "b1", "b2", "c2"})],
    },
    "wedge": {"three": [("D", {"a", "b", "c", "d"}), ("E", {"a", "b", "c", "e"}), ("L", {"a", "b", "c"})]},
    "disc": {
        "whole": [("X", {"x1", "x2", "y1", "y2", "t"})],
        "UVX": [("U", _U), ("V", _V), ("X", {"x1", "x2", "y1", "y2", "t"})],
    },
    "circle6": {"maximal": [("M0", {"m0", "m1", "M0"}), ("M1", {"m1", "m2", "M1"}),
                            ("M2", {"m2", "m0", "M2"})]},
    "two-points": {"singletons": [("p", {"p"}), ("q", {"q"})]},
}

# (space, cover) pairs the cech criterion names explicitly
NAMED_COVERS = (("S1min", "UV"), ("S2min", "hemispheres"), ("wedge", "three"))

MAPS: dict[str, tuple[str, str, dict]] = {
    "mccord": ("circle6", "S1min",
               {"m0": "x1", "m1": "x2", "m2": "x2", "M0": "y1", "M1": "x2", "M2": "y2"}),
    "point-to-S1min": ("point", "S1min", {"*": "x1"}),
    "S1min-identity": ("S1min", "S1min", {x: x for x in ("x1", "x2", "y1", "y2")}),
}

GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "S3": symmetric_group,
}


def load_space(name: str) -> FiniteSpace:
    try:
        return SPACES[name]()
    except KeyError:
        raise KeyError(f"unknown space fixture {name!r}; known: {', '.join(SPACES)}") from None


def load_cover(space: str, name: str, base: FiniteSpace | None = None) -> IndexedCover:
    base = base or load_space(space)
    if name == "whole":
        return IndexedCover(base, [("X", base.points)])
    if name == "maximal":
        maxima = [x for x in base.points if base.above(x) == {x}]
        return IndexedCover(base, [(str(x), base.below(x)) for x in maxima])
    try:
        entries = COVERS[space][name]
    except KeyError:
        raise KeyError(f"unknown cover {name!r} for {space!r}") from None
    return IndexedCover(base, entries)


def cover_names(space: str) -> list[str]:
    names = list(COVERS.get(space, {}))
    for extra in ("whole", "maximal"):
        if extra not in names:
            names.append(extra)
    return names


def load_map(name: str) -> ContinuousMap:
    try:
        src, tgt, assign = MAPS[name]
    except KeyError:
        raise KeyError(f"unknown map fixture {name!r}; known: {', '.join(MAPS)}") from None
    return ContinuousMap(load_space(src), load_space(tgt), assign)


def load_group(name: str) -> FiniteGroup:
    try:
        return GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown group fixture {name!r}; known: {', '.join(GROUPS)}") from None


def s1min_refinement(drop_x2: bool = False, one_sided: bool = False) -> SimplicialSpaceOverX:
    """Level 0 is {U, V}; level 1 splits each mixed intersection into {x1}, {x2}.

    With ``drop_x2`` the {x2} pieces over both mixed intersections are
    omitted; with ``one_sided`` only the one over (U, V).  Neither is a
    hypercover, but only the first changes the homology of the realization.
    """
    base = _s1min()
    lv0 = [("U", frozenset(_U)), ("V", frozenset(_V))]
    lv1 = [("UU", frozenset(_U)), ("VV", frozenset(_V)),
           ("UV1", frozenset({"x1"})), ("UV2", frozenset({"x2"})),
           ("VU1", frozenset({"x1"})), ("VU2", frozenset({"x2"}))]
    dropped = {"UV2", "VU2"} if drop_x2 else ({"UV2"} if one_sided else set())
    lv1 = [s for s in lv1 if s[0] not in dropped]
    labels = [l for l, _ in lv1]
    d0 = {l: l[1] for l in labels}
    d1 = {l: l[0] for l in labels}
    s0 = {"U": "UU", "V": "VV"}
    name = "S1min-broken" if drop_x2 else ("S1min-one-sided" if one_sided else "S1min-refinement")
    return bounded_hypercover(base, [lv0, lv1], [[], [d0, d1]], [[], [s0]], name=name)


HYPERCOVERS: dict[str, Callable[[], SimplicialSpaceOverX]] = {
    "S1min-refinement": s1min_refinement,
    "S1min-broken": lambda: s1min_refinement(drop_x2=True),
    "S1min-one-sided": lambda: s1min_refinement(one_sided=True),
}


def load_hypercover(name: str) -> SimplicialSpaceOverX:
    try:
        return HYPERCOVERS[name]()
    except KeyError:
        raise KeyError(f"unknown hypercover fixture {name!r}; known: {', '.join(HYPERCOVERS)}") from None


def listing() -> dict[str, list[str]]:
    return {
        "spaces": list(SPACES),
        "covers": [f"{s}:{c}" for s in SPACES for c in cover_names(s)],
        "maps": list(MAPS),
        "hypercovers": list(HYPERCOVERS),
        "groups": list(GROUPS),
    }
