"""Seeded random covers and bounded hypercovers of fixture spaces."""
from __future__ import annotations

import random

from ..cech.core import SimplicialSpaceOverX
from ..cech.hypercover import bounded_hypercover
from ..finite_space import FiniteSpace, IndexedCover, intersection_closure


def _random_down_set(space: FiniteSpace, rng: random.Random, k: int = 2) -> frozenset:
    pts = list(space.linear_extension)
    return space.down_closure(rng.sample(pts, min(k, len(pts))))


def random_cover(space: FiniteSpace, rng: random.Random, max_entries: int = 3) -> IndexedCover:
    """Up to ``max_entries`` random down-sets, the last one patching any gap."""
    entries: list[frozenset] = []
    for _ in range(rng.randint(1, max(1, max_entries - 1))):
        entries.append(_random_down_set(space, rng, rng.randint(1, 2)))
    covered = frozenset().union(*entries)
    gap = [x for x in space.linear_extension if x not in covered]
    if gap:
        entries.append(space.down_closure(gap))
    return IndexedCover(space, [(f"A{i}", c) for i, c in enumerate(entries)])


def random_complete_cover(space: FiniteSpace, rng: random.Random) -> IndexedCover:
    """Intersection closure of a random down-set and a down-set covering its complement."""
    a = _random_down_set(space, rng, rng.randint(1, 2))
    rest = [x for x in space.linear_extension if x not in a]
    b = space.down_closure(rest) if rest else _random_down_set(space, rng, 1)
    carriers = [c for c in intersection_closure([a, b]) if c]
    return IndexedCover(space, [(f"C{i}", c) for i, c in enumerate(carriers)])


def _maxima(space: FiniteSpace, carrier: frozenset) -> list:
    return [x for x in space.linear_extension
            if x in carrier and not any(y != x and y in carrier for y in space.above(x))]


def _split(space: FiniteSpace, carrier: frozenset, rng: random.Random, force: bool = False) -> list[frozenset]:
    """A random cover of ``carrier`` by one or two down-sets."""
    maxima = _maxima(space, carrier)
    if len(maxima) < 2 or (not force and rng.random() < 0.25):
        return [carrier]
    rng.shuffle(maxima)
    cut = rng.randint(1, len(maxima) - 1)
    return [space.down_closure(maxima[:cut]), space.down_closure(maxima[cut:])]


def random_bounded_hypercover(space: FiniteSpace, rng: random.Random,
                              cover: IndexedCover | None = None) -> SimplicialSpaceOverX:
    """Level 0 a random cover; level 1 refines each off-diagonal intersection;
    coskeletal above level 1.

    At least one intersection is genuinely split when any can be, so the
    result has dimension 1 whenever that is possible for the cover.
    """
    cover = cover or random_cover(space, rng)
    labels = cover.labels
    lv0 = [(a, cover.carrier(a)) for a in labels]
    splittable = [(a, b) for a in labels for b in labels
                  if a != b and len(_maxima(space, cover.intersection((a, b)))) >= 2]
    forced = rng.choice(splittable) if splittable else None
    lv1, d0, d1 = [], {}, {}
    for a in labels:
        for b in labels:
            c = cover.intersection((a, b))
            pieces = [c] if a == b else ([] if not c else _split(space, c, rng, (a, b) == forced))
            for k, piece in enumerate(pieces):
                lab = (a, b, k)
                lv1.append((lab, piece))
                d0[lab], d1[lab] = b, a
    s0 = {a: (a, a, 0) for a in labels}
    return bounded_hypercover(space, [lv0, lv1], [[], [d0, d1]], [[], [s0]], name="random-bounded")
