"""Finite T0 spaces as posets.

Convention used throughout the package: ``x <= y`` means ``x`` lies in the
closure of ``y``, so open sets are the *down*-sets of the order and the
smallest open neighbourhood of ``x`` is ``{y : y <= x}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .simplicial import OrderedComplex

Point = Hashable


class SpaceError(ValueError):
    """Malformed space, subset, cover or map."""


class FiniteSpace:
    """A finite T0 space given by its specialization order.

    ``leq`` pairs ``(a, b)`` mean ``a <= b``; the reflexive-transitive
    closure is taken here.  Antisymmetry is enforced.
    """

    def __init__(self, points: Iterable[Point], leq: Iterable[tuple[Point, Point]] = (),
                 name: str | None = None):
        pts = tuple(dict.fromkeys(points))
        index = {p: i for i, p in enumerate(pts)}
        up: dict[Point, set[Point]] = {p: set() for p in pts}
        for a, b in leq:
            if a not in index or b not in index:
                raise SpaceError(f"relation ({a!r}, {b!r}) mentions an unknown point")
            if a != b:
                up[a].add(b)
        below: dict[Point, set[Point]] = {p: {p} for p in pts}
        # transitive closure by DFS from each point along "<=" edges
        for p in pts:
            stack = list(up[p])
            seen = set()
            while stack:
                q = stack.pop()
                if q in seen:
                    continue
                seen.add(q)
                below[q].add(p)
                stack.extend(up[q])
        for p in pts:
            for q in below[p]:
                if q != p and p in below[q]:
                    raise SpaceError(f"order is not antisymmetric: {p!r} and {q!r}")
        self.points: tuple[Point, ...] = pts
        self.name = name
        self._index = index
        self._below = {p: frozenset(s) for p, s in below.items()}
        above: dict[Point, set[Point]] = {p: set() for p in pts}
        for p, s in below.items():
            for q in s:
                above[q].add(p)
        self._above = {p: frozenset(s) for p, s in above.items()}

    @classmethod
    def discrete(cls, points: Iterable[Point], name: str | None = None) -> "FiniteSpace":
        return cls(points, (), name=name)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        label = self.name or f"{len(self.points)} points"
        return f"FiniteSpace({label})"

    @cached_property
    def _key(self):
        return (frozenset(self.points),
                frozenset((a, b) for b in self.points for a in self._below[b]))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def _check(self, x: Point) -> None:
        if x not in self._index:
            raise SpaceError(f"unknown point {x!r}")

    def leq(self, x: Point, y: Point) -> bool:
        return x in self._below[y]

    def below(self, x: Point) -> frozenset:
        self._check(x)
        return self._below[x]

    def above(self, x: Point) -> frozenset:
        self._check(x)
        return self._above[x]

    def position(self, x: Point) -> int:
        return self._index[x]

    @cached_property
    def linear_extension(self) -> tuple[Point, ...]:
        # strict x < y forces |below(x)| < |below(y)|
        return tuple(sorted(self.points, key=lambda p: (len(self._below[p]), self._index[p])))

    @cached_property
    def relations(self) -> tuple[tuple[Point, Point], ...]:
        """All strict pairs ``a < b`` in point order."""
        idx = self._index
        return tuple((a, b) for b in self.points
                     for a in sorted(self._below[b], key=idx.__getitem__) if a != b)

    @cached_property
    def covering_pairs(self) -> tuple[tuple[Point, Point], ...]:
        # nothing strictly between a and b
        return tuple((a, b) for a, b in self.relations if len(self._below[b] & self._above[a]) == 2)

    def is_open(self, subset: Iterable[Point]) -> bool:
        s = set(subset)
        return all(x in self._index for x in s) and all(self._below[x] <= s for x in s)

    def down_closure(self, subset: Iterable[Point]) -> frozenset:
        out: set[Point] = set()
        for x in subset:
            out |= self.below(x)
        return frozenset(out)

    def subspace(self, subset: Iterable[Point], name: str | None = None) -> "FiniteSpace":
        keep = [p for p in self.points if p in set(subset)]
        ks = set(keep)
        pairs = [(a, b) for b in keep for a in self._below[b] if a in ks and a != b]
        return FiniteSpace(keep, pairs, name=name)

    def open_sets(self) -> list[frozenset]:
        """Every open subset (exponential; desk-scale only)."""
        opens = {frozenset()}
        for x in self.linear_extension:
            opens |= {o | self._below[x] for o in opens}
        return sorted(opens, key=lambda o: (len(o), sorted(self._index[p] for p in o)))

    def to_json(self) -> dict:
        return {"points": [str(p) for p in self.points],
                "leq": [[str(a), str(b)] for a, b in self.covering_pairs]}

    @classmethod
    def from_json(cls, data: Mapping, name: str | None = None) -> "FiniteSpace":
        if "points" not in data:
            raise SpaceError("space JSON needs a 'points' array")
        pts = list(data["points"])
        if len(set(pts)) != len(pts):
            raise SpaceError("duplicate point identifiers")
        pairs = []
        for i, pair in enumerate(data.get("leq", [])):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise SpaceError(f"leq[{i}] must be a pair [a, b]")
            pairs.append((pair[0], pair[1]))
        return cls(pts, pairs, name=name or data.get("name"))


@dataclass(frozen=True)
class OpenSubset:
    space: FiniteSpace
    carrier: frozenset

    def __post_init__(self):
        c = frozenset(self.carrier)
        object.__setattr__(self, "carrier", c)
        if not self.space.is_open(c):
            raise SpaceError(f"{sorted(map(str, c))} is not a down-set of {self.space!r}")

    def __contains__(self, x: object) -> bool:
        return x in self.carrier

    def __len__(self) -> int:
        return len(self.carrier)

    def __le__(self, other: "OpenSubset") -> bool:
        return self.carrier <= other.carrier

    def __and__(self, other: "OpenSubset") -> "OpenSubset":
        return intersection(self, other)

    def __or__(self, other: "OpenSubset") -> "OpenSubset":
        _same_base(self, other)
        return OpenSubset(self.space, self.carrier | other.carrier)

    def sorted_points(self) -> list:
        return [p for p in self.space.points if p in self.carrier]

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.sorted_points())) + "}"


def _same_base(u: OpenSubset, v: OpenSubset) -> None:
    if u.space is not v.space and u.space != v.space:
        raise SpaceError("open subsets live in different spaces")


def minimal_open(space: FiniteSpace, x: Point) -> OpenSubset:
    """Smallest open set containing ``x``."""
    return OpenSubset(space, space.below(x))


def intersection(u: OpenSubset, v: OpenSubset) -> OpenSubset:
    _same_base(u, v)
    return OpenSubset(u.space, u.carrier & v.carrier)


class IndexedCover:
    """Ordered family of labelled opens whose union is the whole space.

    Distinct labels may share a carrier.
    """

    def __init__(self, base: FiniteSpace, entries: Sequence[tuple[Hashable, Iterable[Point] | OpenSubset]]):
        ents: list[tuple[Hashable, OpenSubset]] = []
        for label, carrier in entries:
            if not isinstance(carrier, OpenSubset):
                carrier = OpenSubset(base, frozenset(carrier))
            elif carrier.space != base:
                raise SpaceError(f"entry {label!r} lives in another space")
            ents.append((label, carrier))
        labels = [l for l, _ in ents]
        if len(set(labels)) != len(labels):
            raise SpaceError("cover labels must be pairwise distinct")
        covered = frozenset().union(*(c.carrier for _, c in ents)) if ents else frozenset()
        if covered != frozenset(base.points):
            missing = [p for p in base.points if p not in covered]
            raise SpaceError(f"entries do not cover the space; missing {missing}")
        if ents and not any(len(c) for _, c in ents):
            raise SpaceError("a cover needs at least one nonempty entry")
        self.base = base
        self.entries: tuple[tuple[Hashable, OpenSubset], ...] = tuple(ents)
        self._by_label = dict(ents)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return "IndexedCover(" + ", ".join(f"{l}={c!r}" for l, c in self.entries) + ")"

    @property
    def labels(self) -> tuple:
        return tuple(l for l, _ in self.entries)

    def carrier(self, label: Hashable) -> frozenset:
        return self._by_label[label].carrier

    def intersection(self, labels: Iterable[Hashable]) -> frozenset:
        out = frozenset(self.base.points)
        for l in labels:
            out &= self._by_label[l].carrier
        return out

    def distinct_carriers(self) -> list[frozenset]:
        return list(dict.fromkeys(c.carrier for _, c in self.entries))

    def position(self, label: Hashable) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        return {"entries": [{"label": str(l), "carrier": [str(p) for p in c.sorted_points()]}
                            for l, c in self.entries]}

    @classmethod
    def from_json(cls, data: Mapping, base: FiniteSpace) -> "IndexedCover":
        if "entries" not in data:
            raise SpaceError("cover JSON needs an 'entries' array")
        entries = []
        for i, e in enumerate(data["entries"]):
            if "label" not in e or "carrier" not in e:
                raise SpaceError(f"entries[{i}] needs 'label' and 'carrier'")
            for p in e["carrier"]:
                if p not in base:
                    raise SpaceError(f"entries[{i}].carrier: unknown point {p!r}")
            entries.append((e["label"], e["carrier"]))
        return cls(base, entries)


class ContinuousMap:
    """Order-preserving map between finite spaces."""

    def __init__(self, source: FiniteSpace, target: FiniteSpace, assignment: Mapping[Point, Point]):
        for x in source:
            if x not in assignment:
                raise SpaceError(f"map is undefined on {x!r}")
            if assignment[x] not in target:
                raise SpaceError(f"{x!r} is sent to unknown point {assignment[x]!r}")
        for a, b in source.covering_pairs:
            if not target.leq(assignment[a], assignment[b]):
                raise SpaceError(f"map is not continuous: {a!r} <= {b!r} but images are not ordered")
        self.source = source
        self.target = target
        self.assignment = {x: assignment[x] for x in source}

    def __call__(self, x: Point) -> Point:
        return self.assignment[x]

    def preimage(self, subset: Iterable[Point]) -> frozenset:
        s = set(subset)
        return frozenset(x for x in self.source if self.assignment[x] in s)

    def fiber(self, y: Point) -> list:
        return [x for x in self.source.points if self.assignment[x] == y]

    @classmethod
    def identity(cls, space: FiniteSpace) -> "ContinuousMap":
        return cls(space, space, {x: x for x in space})

    def to_json(self) -> dict:
        return {"assignment": {str(k): str(v) for k, v in self.assignment.items()}}

    @classmethod
    def from_json(cls, data: Mapping, source: FiniteSpace, target: FiniteSpace) -> "ContinuousMap":
        if "assignment" not in data:
            raise SpaceError("map JSON needs an 'assignment' object")
        return cls(source, target, dict(data["assignment"]))


def disjoint_union(spaces: Sequence[tuple[Hashable, FiniteSpace]]) -> FiniteSpace:
    """Points are ``(tag, x)`` pairs."""
    pts = [(t, x) for t, s in spaces for x in s.points]
    pairs = [((t, a), (t, b)) for t, s in spaces for a, b in s.covering_pairs]
    return FiniteSpace(pts, pairs)


def cover_map(cover: IndexedCover) -> ContinuousMap:
    """The open covering map ``⊔ U_a -> X`` of a cover."""
    parts = [(l, cover.base.subspace(c.carrier)) for l, c in cover.entries]
    total = disjoint_union(parts)
    return ContinuousMap(total, cover.base, {p: p[1] for p in total.points})


def intersection_closure(carriers: Iterable[frozenset], keep_empty: bool = False) -> list[frozenset]:
    """Close a family of carriers under pairwise intersection (fixpoint)."""
    closed = list(dict.fromkeys(carriers))
    seen = set(closed)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c in seen or (not c and not keep_empty):
                    continue
                seen.add(c)
                closed.append(c)
                new.append(c)
        frontier = new
    return closed


def is_complete_cover(cover: IndexedCover) -> bool:
    return uncovered_intersection(cover) is None


def uncovered_intersection(cover: IndexedCover) -> frozenset | None:
    """First intersection of entries that is not a union of entries inside it."""
    carriers = cover.distinct_carriers()
    for w in intersection_closure(carriers):
        inside = [c for c in carriers if c <= w]
        if frozenset().union(*inside) != w:
            return w
    return None


def is_cech_cover(cover: IndexedCover) -> bool:
    # empty intersections are not required to appear
    carriers = set(cover.distinct_carriers())
    return all(not (a & b) or (a & b) in carriers for a in carriers for b in carriers)


def find_local_section(p: ContinuousMap, b: Point) -> dict | None:
    """A continuous section of ``p`` over ``minimal_open(b)``, or ``None``."""
    base = p.target
    order = [x for x in base.linear_extension if x in base.below(b)]
    fibers = {x: p.fiber(x) for x in order}
    src = p.source
    assigned: dict = {}

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        lower = [y for y in order[:k] if base.leq(y, x)]
        for e in fibers[x]:
            if all(src.leq(assigned[y], e) for y in lower):
                assigned[x] = e
                if extend(k + 1):
                    return True
                del assigned[x]
        return False

    return dict(assigned) if extend(0) else None


def is_locally_split(p: ContinuousMap) -> bool:
    return all(find_local_section(p, b) is not None for b in p.target.points)


def order_complex(space: FiniteSpace) -> OrderedComplex:
    """Simplicial complex of strict chains, vertices in a linear extension."""
    return OrderedComplex(space.linear_extension, chains(space, frozenset(space.points)))


_chain_cache: dict = {}


def chains(space: FiniteSpace, carrier: frozenset, max_len: int | None = None) -> tuple[tuple, ...]:
    """Strict chains ``x0 < ... < xk`` inside ``carrier`` listed by length.

    Chains are tuples in increasing order; the result is memoized on the
    carrier.
    """
    key = (space, carrier)
    hit = _chain_cache.get(key)
    if hit is None:
        ending: dict = {}
        for x in space.linear_extension:
            if x not in carrier:
                continue
            acc = [(x,)]
            for y in space.below(x):
                if y != x and y in carrier:
                    acc.extend(c + (x,) for c in ending[y])
            ending[x] = acc
        flat = [c for x in space.linear_extension if x in ending for c in ending[x]]
        pos = {x: i for i, x in enumerate(space.linear_extension)}
        flat.sort(key=lambda c: (len(c), [pos[v] for v in c]))
        hit = tuple(flat)
        if len(_chain_cache) > 50000:
            _chain_cache.clear()
        _chain_cache[key] = hit
    if max_len is None:
        return hit
    return tuple(c for c in hit if len(c) <= max_len)


def _beat_point(space: FiniteSpace) -> Point | None:
    for x in space.points:
        down = space.below(x) - {x}
        if down:
            tops = [y for y in down if all(space.leq(z, y) for z in down)]
            if tops:
                return x
        up = space.above(x) - {x}
        if up:
            bots = [y for y in up if all(space.leq(y, z) for z in up)]
            if bots:
                return x
    return None


def beat_point_core(space: FiniteSpace) -> FiniteSpace:
    """Remove beat points until none remain (the Stong core)."""
    current = space
    while True:
        x = _beat_point(current)
        if x is None:
            return current
        current = current.subspace([p for p in current.points if p != x])


def is_contractible_by_core(space: FiniteSpace) -> bool:
    return len(beat_point_core(space)) == 1


def pullback_cover(cover: IndexedCover, f: ContinuousMap) -> IndexedCover:
    if f.target != cover.base:
        raise SpaceError("map target differs from the cover's base")
    return IndexedCover(f.source, [(l, f.preimage(c.carrier)) for l, c in cover.entries])
