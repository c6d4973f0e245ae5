"""Hypercovers over a finite space: validation, coskeleta, Ω, pullbacks, retracts."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Mapping

from ..finite_space import (ContinuousMap, FiniteSpace, IndexedCover, find_local_section,
                            is_locally_split, uncovered_intersection)
from ..simplicial import BiSSet, subsets_poset
from .core import (DEFAULT_CAP, SimplicialMapOverX, SimplicialSpaceOverX, matching_is_iso,
                   matching_labels, matching_map)


class HypercoverError(ValueError):
    """Canonical map ``U_n -> M^X_n U`` is not an open covering map."""

    def __init__(self, level: int, summand, point):
        self.level = level
        self.summand = summand
        self.point = point
        super().__init__(f"level {level}: point {point!r} of matching summand {summand!r} is not covered")


@dataclass(frozen=True)
class LevelWitness:
    level: int
    summands: int
    matching_summands: int
    isomorphism: bool
    uncovered: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.uncovered is None

    def to_json(self) -> dict:
        out = {"level": self.level, "summands": self.summands,
               "matching_summands": self.matching_summands, "isomorphism": self.isomorphism,
               "covering": self.ok}
        if self.uncovered is not None:
            out["uncovered"] = {"summand": repr(self.uncovered[0]), "point": repr(self.uncovered[1])}
        return out


@dataclass(frozen=True)
class Hypercover:
    space: SimplicialSpaceOverX
    validated_through: int
    witnesses: tuple[LevelWitness, ...]

    @property
    def base(self) -> FiniteSpace:
        return self.space.base


def level_witness(h: SimplicialSpaceOverX, n: int) -> LevelWitness:
    m = matching_map(h, n)
    iso = matching_is_iso(h, n, m) if n else len(m.target.summands) == 1 and all(
        c == frozenset(h.base.points) for _, c in h.summands(0)) and len(h.summands(0)) == 1
    return LevelWitness(n, len(m.source.summands), len(m.target.summands), iso, m.uncovered())


def check_hypercover(h: SimplicialSpaceOverX, up_to: int) -> list[LevelWitness]:
    """Witnesses for levels ``0..up_to``, stopping after the first failure."""
    out = []
    for n in range(up_to + 1):
        w = level_witness(h, n)
        out.append(w)
        if not w.ok:
            break
    return out


def validate_hypercover(h: SimplicialSpaceOverX, up_to: int) -> Hypercover:
    ws = check_hypercover(h, up_to)
    bad = ws[-1]
    if not bad.ok:
        raise HypercoverError(bad.level, *bad.uncovered)
    return Hypercover(h, up_to, tuple(ws))


# -- coskeletal continuation --------------------------------------------------------

def coskeletal_extension(base: FiniteSpace, explicit: Callable[[int], list], face: Callable,
                         degeneracy: Callable, N: int, cap: int = DEFAULT_CAP,
                         name: str = "") -> SimplicialSpaceOverX:
    """Levels ``<= N`` from ``explicit``/``face``/``degeneracy``; above ``N`` the
    coskeletal continuation, with level-k labels the matching tuples of level k-1."""
    holder: dict = {}

    def level(n):
        if n <= N:
            return explicit(n)
        h = holder["h"]
        out = []
        for t in matching_labels(h, n):
            c = frozenset(base.points)
            for l in t:
                c &= h.carrier(n - 1, l)
            out.append((t, c))
        return out

    def fc(n, i, l):
        return face(n, i, l) if n <= N else l[i]

    memo: dict = {}

    def dg(n, i, l):
        if n < N:
            return degeneracy(n, i, l)
        key = (n, i, l)
        hit = memo.get(key)
        if hit is not None:
            return hit
        # faces of s_i l from the simplicial identities
        parts = []
        for j in range(n + 2):
            if j < i:
                parts.append(dg(n - 1, i - 1, fc(n, j, l)))
            elif j in (i, i + 1):
                parts.append(l)
            else:
                parts.append(dg(n - 1, i, fc(n, j - 1, l)))
        memo[key] = out = tuple(parts)
        return out

    h = SimplicialSpaceOverX(base, level, fc, dg, cap=cap, name=name)
    holder["h"] = h
    return h


def coskeleton_over_x(h: SimplicialSpaceOverX, n: int, cap: int | None = None) -> SimplicialSpaceOverX:
    """``cosk^X_n h``: agrees with ``h`` through level n, coskeletal above."""
    return coskeletal_extension(h.base, h.summands, h.face, h.degeneracy, n,
                                cap=h.cap if cap is None else cap, name=f"cosk{n}({h.name})")


def to_coskeleton_map(h: SimplicialSpaceOverX, n: int,
                      target: SimplicialSpaceOverX | None = None) -> SimplicialMapOverX:
    """Unit ``h -> cosk^X_n h``."""
    target = target or coskeleton_over_x(h, n)
    memo: dict = {}

    def phi(k, l):
        if k <= n:
            return l
        key = (k, l)
        if key not in memo:
            memo[key] = tuple(phi(k - 1, h.face(k, i, l)) for i in range(k + 1))
        return memo[key]

    return SimplicialMapOverX(h, target, phi)


def is_isomorphism(f: SimplicialMapOverX, up_to: int) -> bool:
    for k in range(up_to + 1):
        img = {f.phi(k, l): c for l, c in f.source.summands(k)}
        if len(img) != len(f.source.summands(k)) or len(img) != len(f.target.summands(k)):
            return False
        if any(f.target.carrier(k, m) != c for m, c in img.items()):
            return False
    return True


def dimension(h: SimplicialSpaceOverX, up_to: int) -> int:
    """Least N with ``U_n -> M^X_n U`` an isomorphism for all ``N < n <= up_to``."""
    N = up_to
    while N >= 1 and matching_is_iso(h, N):
        N -= 1
    return N


# -- explicit bounded hypercovers (JSON) -------------------------------------------

def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    return x


def _assignment(raw, where: str) -> dict:
    if isinstance(raw, Mapping):
        return {_freeze(k): _freeze(v) for k, v in raw.items()}
    if isinstance(raw, list):
        out = {}
        for k, pair in enumerate(raw):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValueError(f"{where}[{k}]: expected a [source, target] pair")
            out[_freeze(pair[0])] = _freeze(pair[1])
        return out
    raise ValueError(f"{where}: expected an object or a list of pairs")


def bounded_hypercover(base: FiniteSpace, levels: list[list[tuple]], faces: list[list[dict]],
                       degens: list[list[dict]], cap: int = DEFAULT_CAP,
                       name: str = "bounded") -> SimplicialSpaceOverX:
    """Explicit levels ``0..N`` plus coskeletal continuation above N.

    ``faces[n][i]`` maps level-n labels to level-(n-1) labels; ``degens[n][i]``
    maps level-(n-1) labels to level-n labels (both empty for n = 0).
    """
    N = len(levels) - 1
    if N < 0:
        raise ValueError("at least one level is required")
    tables = [list(lv) for lv in levels]
    for n, lv in enumerate(tables):
        labels = [l for l, _ in lv]
        if len(set(labels)) != len(labels):
            raise ValueError(f"level {n}: duplicate labels")
        for l, c in lv:
            if not base.is_open(c):
                raise ValueError(f"level {n}: carrier of {l!r} is not open")
        if n:
            if len(faces[n]) != n + 1 or len(degens[n]) != n:
                raise ValueError(f"level {n}: expected {n + 1} face and {n} degeneracy tables")
            prev = {l for l, _ in tables[n - 1]}
            for i, f in enumerate(faces[n]):
                if set(f) != set(labels) or not set(f.values()) <= prev:
                    raise ValueError(f"level {n}: face {i} is not a map of labels")
            for i, s in enumerate(degens[n]):
                if set(s) != prev or not set(s.values()) <= set(labels):
                    raise ValueError(f"level {n}: degeneracy {i} is not a map of labels")
            here, below = dict(lv), dict(tables[n - 1])
            for i, f in enumerate(faces[n]):
                for l, m in f.items():
                    if not here[l] <= below[m]:
                        raise ValueError(f"level {n}: face {i} of {l!r} is not a carrier inclusion")
            for i, s in enumerate(degens[n]):
                for l, m in s.items():
                    if here[m] != below[l]:
                        raise ValueError(f"level {n}: degeneracy {i} changes the carrier of {l!r}")
    h = coskeletal_extension(
        base, lambda n: tables[n],
        lambda n, i, l: faces[n][i][l],
        lambda n, i, l: degens[n + 1][i][l],
        N, cap=cap, name=name)
    bad = _explicit_identity_failure(tables, faces, degens)
    if bad:
        raise ValueError(f"simplicial identities fail: {bad}")
    return h


def _explicit_identity_failure(tables, faces, degens) -> str | None:
    """First violated simplicial identity among the explicit levels, if any."""
    N = len(tables) - 1

    def d(n, i, l):
        return faces[n][i][l]

    def s(n, i, l):  # level n -> n + 1
        return degens[n + 1][i][l]

    for n in range(2, N + 1):
        for l, _ in tables[n]:
            for j in range(n + 1):
                for i in range(j):
                    if d(n - 1, i, d(n, j, l)) != d(n - 1, j - 1, d(n, i, l)):
                        return f"d{i}d{j} != d{j - 1}d{i} at {l!r}"
    for n in range(N):
        for l, _ in tables[n]:
            for j in range(n + 1):
                sl = s(n, j, l)
                for i in range(n + 2):
                    if i < j:
                        rhs = s(n - 1, j - 1, d(n, i, l))
                    elif i in (j, j + 1):
                        rhs = l
                    else:
                        rhs = s(n - 1, j, d(n, i - 1, l))
                    if d(n + 1, i, sl) != rhs:
                        return f"d{i}s{j} identity fails at {l!r}"
                if n + 2 <= N:
                    for i in range(j + 1):
                        if s(n + 1, i, sl) != s(n + 1, j + 1, s(n, i, l)):
                            return f"s{i}s{j} != s{j + 1}s{i} at {l!r}"
    return None


def hypercover_from_json(data: Mapping, base: FiniteSpace, cap: int = DEFAULT_CAP) -> SimplicialSpaceOverX:
    levels_raw = data.get("levels")
    if not isinstance(levels_raw, list) or not levels_raw:
        raise ValueError("hypercover: 'levels' must be a nonempty list")
    N = data.get("coskeletal_above", len(levels_raw) - 1)
    if not isinstance(N, int) or N != len(levels_raw) - 1:
        raise ValueError("hypercover: 'coskeletal_above' must equal the index of the last explicit level")
    levels, faces, degens = [], [], []
    for n, lv in enumerate(levels_raw):
        where = f"levels[{n}]"
        if not isinstance(lv, Mapping) or "summands" not in lv:
            raise ValueError(f"{where}: missing 'summands'")
        summ = []
        for k, s in enumerate(lv["summands"]):
            if not isinstance(s, Mapping) or "label" not in s or "carrier" not in s:
                raise ValueError(f"{where}.summands[{k}]: needs 'label' and 'carrier'")
            bad = [x for x in s["carrier"] if x not in base]
            if bad:
                raise ValueError(f"{where}.summands[{k}]: unknown point {bad[0]!r}")
            summ.append((_freeze(s["label"]), frozenset(s["carrier"])))
        levels.append(summ)
        faces.append([_assignment(f, f"{where}.faces[{i}]") for i, f in enumerate(lv.get("faces", []))])
        degens.append([_assignment(f, f"{where}.degens[{i}]") for i, f in enumerate(lv.get("degens", []))])
    return bounded_hypercover(base, levels, faces, degens, cap=cap, name=data.get("name", "bounded"))


def hypercover_to_json(h: SimplicialSpaceOverX, N: int, base_ref) -> dict:
    levels = []
    for n in range(N + 1):
        lv = {"summands": [{"label": _thaw(l), "carrier": sorted(c, key=h.base.position)}
                           for l, c in h.summands(n)]}
        if n:
            lv["faces"] = [[[_thaw(l), _thaw(h.face(n, i, l))] for l, _ in h.summands(n)]
                           for i in range(n + 1)]
            lv["degens"] = [[[_thaw(l), _thaw(h.degeneracy(n - 1, i, l))] for l, _ in h.summands(n - 1)]
                            for i in range(n)]
        levels.append(lv)
    return {"base": base_ref, "levels": levels, "coskeletal_above": N}


# -- Ω of a complete cover -----------------------------------------------------------

def omega_of_cover(cover: IndexedCover, up_to: int | None = None, cap: int = DEFAULT_CAP) -> SimplicialSpaceOverX:
    """Level n: order-reversing functors from nonempty subsets of {0..n} to the
    distinct carriers of ``cover``; carrier is the value at {0..n}.

    Labels are tuples of carrier indices aligned with ``subsets_poset(n)``.
    """
    gap = uncovered_intersection(cover)
    if gap is not None:
        raise ValueError(f"cover is not complete: intersection {sorted(gap, key=cover.base.position)!r} "
                         "is not a union of entries")
    objs = [c for c in cover.distinct_carriers() if c]
    # bitmask of objects contained in each object
    inside = [sum(1 << j for j, b in enumerate(objs) if b <= a) for a in objs]
    shapes: dict = {}
    tables: dict = {}

    def shape(n):
        # subsets of [n] in subsets_poset order, a fill order by size, and codim-1 faces
        if n not in shapes:
            s, _ = subsets_poset(n)
            idx = {t: k for k, t in enumerate(s)}
            order = sorted(range(len(s)), key=lambda k: (len(s[k]), sorted(s[k])))
            faces = [[idx[s[k] - {j}] for j in sorted(s[k])] if len(s[k]) > 1 else [] for k in range(len(s))]
            shapes[n] = (s, idx, order, faces)
        return shapes[n]

    def level(n):
        s, idx, order, faces = shape(n)
        top = idx[frozenset(range(n + 1))]
        vals = [0] * len(s)
        out = []
        everything = (1 << len(objs)) - 1

        def extend(m):
            if m == len(order):
                lab = tuple(vals)
                out.append((lab, objs[lab[top]]))
                return
            k = order[m]
            allowed = everything
            for f in faces[k]:
                allowed &= inside[vals[f]]
            w = 0
            while allowed:
                if allowed & 1:
                    vals[k] = w
                    extend(m + 1)
                allowed >>= 1
                w += 1

        extend(0)
        return out

    def table(n, m, alpha):
        # F' on subsets of [m] is F on their images under alpha: [m] -> [n]
        key = (n, m, tuple(alpha))
        if key not in tables:
            _, idx, _, _ = shape(n)
            s2 = shape(m)[0]
            tables[key] = tuple(idx[frozenset(alpha[v] for v in t)] for t in s2)
        return tables[key]

    def face(n, i, lab):
        return tuple(lab[k] for k in table(n, n - 1, [v if v < i else v + 1 for v in range(n)]))

    def degen(n, i, lab):
        return tuple(lab[k] for k in table(n, n + 1, [v if v <= i else v - 1 for v in range(n + 2)]))

    h = SimplicialSpaceOverX(cover.base, level, face, degen, cap=cap, name="omega")
    h.objects = objs
    return h


def cover_category_cover(cover: IndexedCover) -> IndexedCover:
    """The cover indexed by its distinct carriers (repeated carriers collapsed)."""
    return IndexedCover(cover.base, [(k, c) for k, c in enumerate(cover.distinct_carriers()) if c])


# -- pullbacks ------------------------------------------------------------------------

def pullback_hypercover(h: SimplicialSpaceOverX, f: ContinuousMap, up_to: int | None = None) -> SimplicialSpaceOverX:
    if f.target != h.base:
        raise ValueError("map target differs from the hypercover base")
    out = SimplicialSpaceOverX(f.source, lambda n: [(l, f.preimage(c)) for l, c in h.summands(n)],
                               h.face, h.degeneracy, cap=h.cap, name=f"pullback({h.name})")
    if up_to is not None:
        validate_hypercover(out, up_to)
    return out


class PullbackMap:
    """``f^{-1}U -> U`` over ``f``, on double-complex cells."""

    def __init__(self, source: SimplicialSpaceOverX, target: SimplicialSpaceOverX, f: ContinuousMap):
        self.source, self.target, self.f = source, target, f

    def map_cell(self, p, cell):
        l, ch = cell
        img = tuple(self.f(y) for y in ch)
        if len(set(img)) < len(img) or l not in self.target.nondegenerate(p):
            return None
        return l, img


def restrict_to_open(h: SimplicialSpaceOverX, U) -> SimplicialSpaceOverX:
    """Restriction of ``h`` to an open subset (pullback along the inclusion)."""
    sub = h.base.subspace(U)
    inc = ContinuousMap(sub, h.base, {x: x for x in sub.points})
    return pullback_hypercover(h, inc)


# -- the bisimplicial object of the finite-dimensional induction ------------------------

@dataclass
class FDInduction:
    U: SimplicialSpaceOverX
    V: SimplicialSpaceOverX
    W: BiSSet
    W_carrier: Callable
    D: SimplicialSpaceOverX
    to_D: SimplicialMapOverX
    from_D: SimplicialMapOverX
    n: int
    checked_through: int
    retract_ok: bool
    problems: list = field(default_factory=list)

    def row(self, k: int, up_to: int) -> list[int]:
        return [len(self.W.cells(j, k)) for j in range(up_to + 1)]


def fd_induction_data(h: SimplicialSpaceOverX, dim: int, up_to: int = 3,
                      map_check_through: int | None = None) -> FDInduction:
    """``V = cosk^X_n U`` with ``n = max(dim - 1, 0)``, the bisimplicial ``W``
    whose k-th row is the Cech complex of ``U_k -> V_k``, its diagonal ``D``,
    and the retraction ``U -> D -> U`` checked through ``up_to``.

    ``D`` grows very fast, so the two maps are checked to be simplicial over X
    only through ``map_check_through`` (default ``min(up_to, 2)``).
    """
    if dimension(h, max(up_to, dim + 1)) > dim:
        raise ValueError(f"hypercover is not bounded at dimension {dim}")
    n = max(dim - 1, 0)
    V = coskeleton_over_x(h, n)
    unit = to_coskeleton_map(h, n, V)
    phi = unit.phi

    def wcells(j, k):
        by: dict = {}
        for l, _ in h.summands(k):
            by.setdefault(phi(k, l), []).append(l)
        out = []
        for grp in by.values():
            out.extend(product(grp, repeat=j + 1))
        return out

    def wcarrier(j, k, t):
        c = frozenset(h.base.points)
        for l in t:
            c &= h.carrier(k, l)
        return c

    W = BiSSet(wcells,
               lambda j, k, i, t: t[:i] + t[i + 1:],
               lambda j, k, i, t: tuple(h.face(k, i, l) for l in t),
               lambda j, k, i, t: t[:i + 1] + t[i:],
               lambda j, k, i, t: tuple(h.degeneracy(k, i, l) for l in t))

    D = SimplicialSpaceOverX(
        h.base, lambda k: [(t, wcarrier(k, k, t)) for t in wcells(k, k)],
        lambda k, i, t: tuple(h.face(k, i, l) for l in t[:i] + t[i + 1:]),
        lambda k, i, t: tuple(h.degeneracy(k, i, l) for l in t[:i + 1] + t[i:]),
        cap=h.cap, name="diagonal")

    to_D = SimplicialMapOverX(h, D, lambda k, l: (l,) * (k + 1))
    inverse: dict = {}
    memo: dict = {}

    def back(k, t):
        if k <= dim:
            return t[0]
        key = (k, t)
        if key not in memo:
            if k not in inverse:
                inverse[k] = {tuple(h.face(k, i, l) for i in range(k + 1)): l for l, _ in h.summands(k)}
            faces = tuple(back(k - 1, D.face(k, i, t)) for i in range(k + 1))
            memo[key] = inverse[k][faces]
        return memo[key]

    from_D = SimplicialMapOverX(D, h, back)
    problems = []
    for k in range(up_to + 1):
        for l, _ in h.summands(k):
            if back(k, (l,) * (k + 1)) != l:
                problems.append(f"level {k}: retract fails at {l!r}")
    mc = min(up_to, 2) if map_check_through is None else map_check_through
    problems += to_D.check(mc) + from_D.check(mc)
    return FDInduction(h, V, W, wcarrier, D, to_D, from_D, n, up_to, not problems, problems)


# -- extra degeneracy ------------------------------------------------------------------

@dataclass
class ExtraDegeneracy:
    cech: SimplicialSpaceOverX
    label: Hashable
    identities_ok: bool
    problems: list

    def apply(self, n: int, t: tuple) -> tuple:
        return (self.label,) + t


def extra_degeneracy(cover: IndexedCover, up_to: int = 3) -> ExtraDegeneracy:
    """``s_{-1}`` prepends a label whose carrier is all of X."""
    from .core import cech_of_cover
    full = frozenset(cover.base.points)
    b = next((l for l in cover.labels if cover.carrier(l) == full), None)
    if b is None:
        raise ValueError("no cover entry equals the whole space")
    h = cech_of_cover(cover)

    def s(t):
        return (b,) + t

    def d(n, i, t):
        # augmented faces: level 0 -> level -1 is t -> ()
        return () if n == 0 else h.face(n, i, t)

    bad = []
    for n in range(-1, up_to):
        labels = [()] if n == -1 else [l for l, _ in h.summands(n)]
        for t in labels:
            st = s(t)
            if d(n + 1, 0, st) != t:
                bad.append(f"d0 s-1 != id at {t!r}")
            for i in range(n + 1):
                if d(n + 1, i + 1, st) != s(d(n, i, t)):
                    bad.append(f"d{i + 1} s-1 != s-1 d{i} at {t!r}")
                if h.degeneracy(n + 1, i + 1, st) != s(h.degeneracy(n, i, t)):
                    bad.append(f"s{i + 1} s-1 != s-1 s{i} at {t!r}")
            if h.carrier(n + 1, st) != (full if n == -1 else h.carrier(n, t)):
                bad.append(f"carrier changes under s-1 at {t!r}")
    return ExtraDegeneracy(h, b, not bad, bad)


# -- generalized covers --------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedCover:
    map: ContinuousMap
    sections: tuple

    @classmethod
    def from_map(cls, p: ContinuousMap) -> "GeneralizedCover":
        secs = []
        for b in p.target.linear_extension:
            s = find_local_section(p, b)
            if s is None:
                raise ValueError(f"no local section over the minimal open of {b!r}")
            secs.append((b, tuple(sorted(s.items(), key=lambda kv: p.target.position(kv[0])))))
        return cls(p, tuple(secs))


def is_generalized_cover(p: ContinuousMap) -> bool:
    return is_locally_split(p)
