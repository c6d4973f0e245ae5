"""Simplicial spaces over a finite base and their chain-level interface.

A :class:`SimplicialSpaceOverX` has, in each level, a disjoint union of open
subsets of the base (labelled summands).  Structure maps send summands to
summands and are inclusions of carriers.  Points of a level are pairs
``(label, x)``.

Every simplicial space exposes the protocol consumed by
:class:`hck.homology.DoubleComplex`:

* ``chain_cells(p, max_q)`` -- basis of the normalized column ``p``
* ``cell_face(p, i, cell)`` -- image under ``d_i`` or ``None`` if it is zero
* ``cell_boundary(p, cell)`` -- order-complex boundary, ``[(coef, cell)]``
* ``cell_augment(cell)`` -- image chain in the base (column 0 only)
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from ..finite_space import ContinuousMap, FiniteSpace, chains, disjoint_union
from ..simplicial import LevelSSet

Label = Hashable
DEFAULT_CAP = 12


class GenerationCapError(RuntimeError):
    pass


class SimplicialSpace:
    """Simplicial finite space with an augmentation to ``base``.

    Subclasses provide ``level_space``, ``face_point``, ``degeneracy_point``
    and ``augment_point``; the chain protocol is derived from them.
    """

    base: FiniteSpace
    cap: int = DEFAULT_CAP

    def level_space(self, p: int) -> FiniteSpace:
        raise NotImplementedError

    def face_point(self, p: int, i: int, x):
        raise NotImplementedError

    def degeneracy_point(self, p: int, i: int, x):
        raise NotImplementedError

    def augment_point(self, x):
        raise NotImplementedError

    def _check_cap(self, p: int) -> None:
        if p > self.cap:
            raise GenerationCapError(f"level {p} requested beyond generation cap {self.cap}")

    def is_degenerate_chain(self, p: int, chain: Sequence) -> bool:
        for i in range(p):
            if all(self.degeneracy_point(p - 1, i, self.face_point(p, i, x)) == x for x in chain):
                return True
        return False

    def chain_cells(self, p: int, max_q: int) -> dict[int, list]:
        sp = self.level_space(p)
        out: dict[int, list] = {}
        for c in chains(sp, frozenset(sp.points), max_q + 1):
            if not self.is_degenerate_chain(p, c):
                out.setdefault(len(c) - 1, []).append(c)
        return out

    def cell_face(self, p: int, i: int, cell):
        img = tuple(self.face_point(p, i, x) for x in cell)
        if len(set(img)) < len(img) or self.is_degenerate_chain(p - 1, img):
            return None
        return img

    def cell_boundary(self, p: int, cell) -> list:
        if len(cell) < 2:
            return []
        out = []
        for j in range(len(cell)):
            f = cell[:j] + cell[j + 1:]
            if not self.is_degenerate_chain(p, f):
                out.append(((-1) ** j, f))
        return out

    def cell_augment(self, cell):
        img = tuple(self.augment_point(x) for x in cell)
        return None if len(set(img)) < len(img) else img


class SimplicialSpaceOverX(SimplicialSpace):
    """Levels of labelled open summands of ``base`` (generated on demand).

    ``level(n)`` yields ``(label, carrier)`` pairs; ``face(n, i, label)`` and
    ``degeneracy(n, i, label)`` act on labels.  Levels are memoized under a
    lock and never generated beyond ``cap``.
    """

    def __init__(self, base: FiniteSpace, level: Callable[[int], Iterable[tuple[Label, frozenset]]],
                 face: Callable[[int, int, Label], Label],
                 degeneracy: Callable[[int, int, Label], Label],
                 cap: int = DEFAULT_CAP, name: str = ""):
        self.base = base
        self._level = level
        self._face = face
        self._degen = degeneracy
        self.cap = cap
        self.name = name
        self._summands: dict[int, tuple] = {}
        self._carriers: dict[int, dict] = {}
        self._nondeg: dict[int, frozenset] = {}
        self._lock = threading.RLock()
        self.labels = LevelSSet(lambda n: [l for l, _ in self.summands(n)],
                                self.face, self.degeneracy, name=name)

    def __repr__(self) -> str:
        return f"SimplicialSpaceOverX({self.name or 'unnamed'} over {self.base!r})"

    def summands(self, n: int) -> tuple[tuple[Label, frozenset], ...]:
        self._check_cap(n)
        with self._lock:
            if n not in self._summands:
                items = tuple((l, frozenset(c)) for l, c in self._level(n))
                self._summands[n] = items
                self._carriers[n] = dict(items)
            return self._summands[n]

    def carrier(self, n: int, label: Label) -> frozenset:
        self.summands(n)
        return self._carriers[n][label]

    def has_label(self, n: int, label: Label) -> bool:
        self.summands(n)
        return label in self._carriers[n]

    def face(self, n: int, i: int, label: Label) -> Label:
        return self._face(n, i, label)

    def degeneracy(self, n: int, i: int, label: Label) -> Label:
        return self._degen(n, i, label)

    def is_degenerate(self, n: int, label: Label) -> bool:
        return any(self.degeneracy(n - 1, i, self.face(n, i, label)) == label for i in range(n))

    def nondegenerate(self, n: int) -> frozenset:
        with self._lock:
            if n not in self._nondeg:
                self._nondeg[n] = frozenset(l for l, _ in self.summands(n) if not self.is_degenerate(n, l))
            return self._nondeg[n]

    def level_over_x(self, n: int) -> "SpaceOverX":
        return SpaceOverX(self.base, self.summands(n))

    # point-level structure
    def level_space(self, p: int) -> FiniteSpace:
        parts = [(l, self.base.subspace(c)) for l, c in self.summands(p)]
        return disjoint_union(parts)

    def face_point(self, p, i, x):
        return self.face(p, i, x[0]), x[1]

    def degeneracy_point(self, p, i, x):
        return self.degeneracy(p, i, x[0]), x[1]

    def augment_point(self, x):
        return x[1]

    # chain protocol, summand by summand
    def chain_cells(self, p: int, max_q: int) -> dict[int, list]:
        nd = self.nondegenerate(p)
        out: dict[int, list] = {}
        for l, c in self.summands(p):
            if l not in nd or not c:
                continue
            for ch in chains(self.base, c, max_q + 1):
                out.setdefault(len(ch) - 1, []).append((l, ch))
        return out

    def cell_face(self, p, i, cell):
        l = self.face(p, i, cell[0])
        return (l, cell[1]) if l in self.nondegenerate(p - 1) else None

    def cell_boundary(self, p, cell):
        l, ch = cell
        if len(ch) < 2:
            return []
        return [((-1) ** j, (l, ch[:j] + ch[j + 1:])) for j in range(len(ch))]

    def cell_augment(self, cell):
        return cell[1]

    def check_identities(self, up_to: int) -> list[str]:
        """Simplicial identities on labels plus carrier compatibility."""
        from ..simplicial import check_identities
        bad = check_identities(self.labels, up_to)
        for n in range(1, up_to + 1):
            for l, c in self.summands(n):
                for i in range(n + 1):
                    f = self.face(n, i, l)
                    if not self.has_label(n - 1, f):
                        bad.append(f"d{i} of {l!r} is not a level-{n - 1} label")
                    elif not c <= self.carrier(n - 1, f):
                        bad.append(f"carrier of {l!r} not inside carrier of d{i}")
        for n in range(up_to):
            for l, c in self.summands(n):
                for i in range(n + 1):
                    s = self.degeneracy(n, i, l)
                    if not self.has_label(n + 1, s) or self.carrier(n + 1, s) != c:
                        bad.append(f"s{i} of {l!r} is not a summand with the same carrier")
        return bad


@dataclass(frozen=True)
class SpaceOverX:
    base: FiniteSpace
    summands: tuple[tuple[Label, frozenset], ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple((l, frozenset(c)) for l, c in self.summands))
        for l, c in self.summands:
            if not self.base.is_open(c):
                raise ValueError(f"summand {l!r} is not open in the base")

    @property
    def labels(self) -> list:
        return [l for l, _ in self.summands]

    def carrier(self, label: Label) -> frozenset:
        return dict(self.summands)[label]

    def points(self) -> set:
        return {(l, x) for l, c in self.summands for x in c}

    def __len__(self) -> int:
        return len(self.summands)


@dataclass
class OverXMap:
    """Summandwise map of spaces over X: ``assignment[source label] = target label``."""

    source: SpaceOverX
    target: SpaceOverX
    assignment: dict

    def __post_init__(self):
        tc = dict(self.target.summands)
        for l, c in self.source.summands:
            t = self.assignment.get(l)
            if t not in tc:
                raise ValueError(f"{l!r} is sent to unknown summand {t!r}")
            if not c <= tc[t]:
                raise ValueError(f"carrier of {l!r} is not inside carrier of {t!r}")

    def uncovered(self) -> tuple[Label, Hashable] | None:
        """A target point outside the image, or ``None``."""
        covered: dict = {}
        for l, c in self.source.summands:
            covered.setdefault(self.assignment[l], set()).update(c)
        for t, c in self.target.summands:
            missing = [x for x in self.target.base.points if x in c and x not in covered.get(t, ())]
            if missing:
                return t, missing[0]
        return None


def is_open_covering_map(f: OverXMap) -> bool:
    """Summands embed as opens (automatic here) and jointly cover the target."""
    return f.uncovered() is None


class SimplicialMapOverX:
    """Levelwise label map ``phi(n, label)`` between spaces over the same base."""

    def __init__(self, source: SimplicialSpaceOverX, target: SimplicialSpaceOverX,
                 phi: Callable[[int, Label], Label]):
        self.source = source
        self.target = target
        self.phi = phi

    def level(self, n: int) -> OverXMap:
        return OverXMap(self.source.level_over_x(n), self.target.level_over_x(n),
                        {l: self.phi(n, l) for l, _ in self.source.summands(n)})

    def map_cell(self, p, cell):
        l = self.phi(p, cell[0])
        return (l, cell[1]) if l in self.target.nondegenerate(p) else None

    def check(self, up_to: int) -> list[str]:
        bad = []
        S, T = self.source, self.target
        for n in range(up_to + 1):
            for l, c in S.summands(n):
                m = self.phi(n, l)
                if not T.has_label(n, m) or not c <= T.carrier(n, m):
                    bad.append(f"level {n}: {l!r} -> {m!r} is not a carrier inclusion")
                    continue
                if n:
                    for i in range(n + 1):
                        if self.phi(n - 1, S.face(n, i, l)) != T.face(n, i, m):
                            bad.append(f"level {n}: map does not commute with d{i} at {l!r}")
                if n < up_to:
                    for i in range(n + 1):
                        if self.phi(n + 1, S.degeneracy(n, i, l)) != T.degeneracy(n, i, m):
                            bad.append(f"level {n}: map does not commute with s{i} at {l!r}")
        return bad


class PointwiseMap:
    """Map of simplicial spaces given on points; used across different bases."""

    def __init__(self, source: SimplicialSpace, target: SimplicialSpace, f: Callable[[int, Hashable], Hashable]):
        self.source = source
        self.target = target
        self.f = f

    def map_cell(self, p, cell):
        if isinstance(self.source, SimplicialSpaceOverX):
            pts = tuple((cell[0], x) for x in cell[1])
        else:
            pts = cell
        img = tuple(self.f(p, x) for x in pts)
        if len(set(img)) < len(img):
            return None
        if isinstance(self.target, SimplicialSpaceOverX):
            labels = {y[0] for y in img}
            if len(labels) != 1:
                raise ValueError("a chain was split across summands")
            l = img[0][0]
            if l not in self.target.nondegenerate(p):
                return None
            return l, tuple(y[1] for y in img)
        if self.target.is_degenerate_chain(p, img):
            return None
        return img


# -- Cech constructions ----------------------------------------------------------------

def _tuples(labels: Sequence, n: int) -> list[tuple]:
    out = [()]
    for _ in range(n + 1):
        out = [t + (a,) for t in out for a in labels]
    return out


def cech_of_cover(cover, cap: int = DEFAULT_CAP) -> SimplicialSpaceOverX:
    """Level n: all (n+1)-tuples of labels with carrier the intersection."""
    labels = cover.labels

    def level(n):
        return [(t, cover.intersection(t)) for t in _tuples(labels, n)]

    return SimplicialSpaceOverX(cover.base, level,
                                lambda n, i, t: t[:i] + t[i + 1:],
                                lambda n, i, t: t[:i + 1] + t[i:],
                                cap=cap, name="cech")


def ordered_cech(cover, cap: int = DEFAULT_CAP) -> tuple[SimplicialSpaceOverX, SimplicialMapOverX]:
    """Weakly increasing tuples (entry order) and the inclusion into the full Cech complex."""
    labels = cover.labels
    pos = {l: i for i, l in enumerate(labels)}

    def level(n):
        return [(t, cover.intersection(t)) for t in _tuples(labels, n)
                if all(pos[a] <= pos[b] for a, b in zip(t, t[1:]))]

    oc = SimplicialSpaceOverX(cover.base, level,
                              lambda n, i, t: t[:i] + t[i + 1:],
                              lambda n, i, t: t[:i + 1] + t[i:],
                              cap=cap, name="ordered-cech")
    full = cech_of_cover(cover, cap)
    return oc, SimplicialMapOverX(oc, full, lambda n, t: t)


def reorder(t: tuple, pos: dict) -> tuple:
    """Stable sort by entry position: equal labels keep their relative order."""
    return tuple(sorted(t, key=pos.__getitem__))


def reorder_retraction(cover, up_to: int) -> list[OverXMap]:
    """Levelwise maps full Cech -> ordered Cech, for levels ``0..up_to``."""
    pos = {l: i for i, l in enumerate(cover.labels)}
    oc, inc = ordered_cech(cover)
    full = inc.target
    return [OverXMap(full.level_over_x(n), oc.level_over_x(n),
                     {t: reorder(t, pos) for t, _ in full.summands(n)}) for n in range(up_to + 1)]


class FiberProductCech(SimplicialSpace):
    """Cech complex of a map ``p: E -> B``: level n is ``E ×_B ... ×_B E``."""

    def __init__(self, p: ContinuousMap, cap: int = DEFAULT_CAP):
        self.map = p
        self.base = p.target
        self.cap = cap
        self._levels: dict[int, FiniteSpace] = {}
        self._lock = threading.RLock()

    def level_space(self, n: int) -> FiniteSpace:
        self._check_cap(n)
        with self._lock:
            if n not in self._levels:
                E = self.map.source
                by_base: dict = {}
                for e in E.points:
                    by_base.setdefault(self.map(e), []).append(e)
                pts = []
                for b in self.base.points:
                    fib = by_base.get(b, [])
                    pts.extend(_tuples(fib, n))
                # product order restricted to the fiber product
                pairs = [] if not E.relations else [
                    (s, t) for t in pts for s in pts
                    if s != t and all(E.leq(a, b) for a, b in zip(s, t))]
                self._levels[n] = FiniteSpace(pts, pairs)
            return self._levels[n]

    def face_point(self, p, i, x):
        return x[:i] + x[i + 1:]

    def degeneracy_point(self, p, i, x):
        return x[:i + 1] + x[i:]

    def augment_point(self, x):
        return self.map(x[0])

    def chain_cells(self, p: int, max_q: int) -> dict[int, list]:
        sp = self.level_space(p)
        out: dict[int, list] = {}
        for c in chains(sp, frozenset(sp.points), max_q + 1):
            if not self.is_degenerate_chain(p, c):
                out.setdefault(len(c) - 1, []).append(c)
        return out

    def is_degenerate_chain(self, p, chain):
        # x lies in the image of s_i iff x[i] == x[i+1]
        return any(all(x[i] == x[i + 1] for x in chain) for i in range(p))


def cech_of_map(p: ContinuousMap, cap: int = DEFAULT_CAP) -> FiberProductCech:
    return FiberProductCech(p, cap)


# -- matching objects and hypercover validation ------------------------------------

def matching_labels(h: SimplicialSpaceOverX, n: int) -> list[tuple]:
    from ..simplicial import matching_sset
    return matching_sset(h.labels, n)


def matching_object(h: SimplicialSpaceOverX, n: int) -> SpaceOverX:
    """M^X_n: compatible tuples of level-(n-1) labels; carrier = intersection."""
    if n == 0:
        return SpaceOverX(h.base, (((), frozenset(h.base.points)),))
    out = []
    for t in matching_labels(h, n):
        c = frozenset(h.base.points)
        for l in t:
            c &= h.carrier(n - 1, l)
        out.append((t, c))
    return SpaceOverX(h.base, tuple(out))


def matching_map(h: SimplicialSpaceOverX, n: int, target: SpaceOverX | None = None) -> OverXMap:
    """Canonical map ``U_n -> M^X_n U``."""
    target = target or matching_object(h, n)
    if n == 0:
        assign = {l: () for l, _ in h.summands(0)}
    else:
        assign = {l: tuple(h.face(n, i, l) for i in range(n + 1)) for l, _ in h.summands(n)}
    return OverXMap(h.level_over_x(n), target, assign)


def matching_is_iso(h: SimplicialSpaceOverX, n: int, m: OverXMap | None = None) -> bool:
    """Canonical map U_n -> M^X_n is a bijection on summands with equal carriers."""
    m = m or matching_map(h, n)
    tc = dict(m.target.summands)
    images = list(m.assignment.values())
    if len(set(images)) != len(images) or set(images) != set(tc):
        return False
    return all(c == tc[m.assignment[l]] for l, c in m.source.summands)


def absolute_matching_points(h: SimplicialSpaceOverX, n: int) -> set:
    """Points of M_n U computed without the overcategory (pointwise tuples)."""
    if n == 0:
        return {()}
    prev = sorted(h.level_over_x(n - 1).points(), key=repr)
    from ..simplicial import LevelSSet, matching_sset
    pts = LevelSSet(lambda k: prev if k == n - 1 else [],
                    lambda k, i, x: (h.face(k, i, x[0]), x[1]),
                    lambda k, i, x: (h.degeneracy(k, i, x[0]), x[1]))
    if n == 1:
        return {(a, b) for a in prev for b in prev}
    return set(matching_sset(pts, n))


def compare_matching(h: SimplicialSpaceOverX, n: int) -> bool:
    """Does M_n U agree with M^X_n U (as point sets)?  Expected for n > 1."""
    over = {(t, x) for t, c in matching_object(h, n).summands for x in c}
    absolute = absolute_matching_points(h, n)
    if n == 0:
        return len(absolute) == 1 and len(over) == len(h.base)
    conv = set()
    for tup in absolute:
        xs = {p[1] for p in tup}
        if len(xs) != 1:
            return False
        conv.add((tuple(p[0] for p in tup), xs.pop()))
    return conv == over
