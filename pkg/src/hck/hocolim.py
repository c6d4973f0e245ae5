"""Homotopy colimits of poset diagrams of opens, computed through simplicial replacement."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Mapping

from .cech.core import DEFAULT_CAP, GenerationCapError, SimplicialSpaceOverX
from .finite_space import (FiniteSpace, IndexedCover, beat_point_core, intersection_closure,
                           order_complex)
from .homology import (DoubleComplex, HomologyGroup, IntMatrix, WeakEquivCertificate,
                       augmentation_map, cone_certificate, mapping_cone, pi0_compare,
                       simplicial_chain_complex, sset_chain_complex, totalize)
from .simplicial import BiSSet


class DiagramError(ValueError):
    pass


class PosetDiagram:
    """Functor from a finite poset to the opens of ``base`` (arrows are inclusions).

    ``index`` is a FiniteSpace whose order is the arrow relation: ``i <= j``
    means there is an arrow ``i -> j`` and ``value[i] ⊆ value[j]``.
    """

    def __init__(self, base: FiniteSpace, index: FiniteSpace, value: Mapping[Hashable, frozenset],
                 name: str = ""):
        self.base = base
        self.index = index
        self.value = {i: frozenset(value[i]) for i in index.points}
        self.name = name
        for i, c in self.value.items():
            if not base.is_open(c):
                raise DiagramError(f"value at {i!r} is not open")
        for a, b in index.covering_pairs:
            if not self.value[a] <= self.value[b]:
                raise DiagramError(f"arrow {a!r} -> {b!r} is not an inclusion")
        # one transitive spot-check per chain of length 3
        for a, b in index.covering_pairs:
            for b2, c in index.covering_pairs:
                if b2 == b and not self.value[a] <= self.value[c]:
                    raise DiagramError(f"composite {a!r} -> {c!r} fails")

    def __len__(self) -> int:
        return len(self.index)

    def objects(self) -> list:
        return list(self.index.points)


def _subset_key(cover: IndexedCover, s: frozenset) -> tuple:
    return tuple(sorted(s, key=cover.position))


def diagram_PA(cover: IndexedCover) -> PosetDiagram:
    """Nonempty label subsets, arrows ``σ -> τ`` for ``τ ⊆ σ``, value ``U_σ``."""
    labels = cover.labels
    objs = [tuple(c) for d in range(1, len(labels) + 1) for c in combinations(labels, d)]
    rel = [(s, t) for s in objs for t in objs if s != t and set(t) <= set(s)]
    index = FiniteSpace(objs, rel)
    return PosetDiagram(cover.base, index, {s: cover.intersection(s) for s in objs}, name="P_A^op")


def diagram_PU(cover: IndexedCover) -> PosetDiagram:
    """Distinct nonempty carriers of finite intersections, ordered by inclusion."""
    objs = [c for c in intersection_closure(cover.distinct_carriers()) if c]
    keys = [tuple(sorted(c, key=cover.base.position)) for c in objs]
    rel = [(keys[a], keys[b]) for a in range(len(objs)) for b in range(len(objs))
           if a != b and objs[a] <= objs[b]]
    index = FiniteSpace(keys, rel)
    return PosetDiagram(cover.base, index, dict(zip(keys, objs)), name="P_U")


def diagram_cover_category(cover: IndexedCover) -> PosetDiagram:
    """The distinct carriers themselves, ordered by inclusion."""
    objs = [c for c in cover.distinct_carriers() if c]
    keys = [tuple(sorted(c, key=cover.base.position)) for c in objs]
    rel = [(keys[a], keys[b]) for a in range(len(objs)) for b in range(len(objs))
           if a != b and objs[a] <= objs[b]]
    return PosetDiagram(cover.base, FiniteSpace(keys, rel), dict(zip(keys, objs)), name="cover category")


def simplicial_replacement(d: PosetDiagram, cap: int = DEFAULT_CAP) -> SimplicialSpaceOverX:
    """Level n: chains ``i0 -> ... -> in`` (identities allowed), summand ``value(i0)``."""
    order = d.index.linear_extension
    up = {i: [j for j in order if d.index.leq(i, j)] for i in order}
    cache: dict = {0: [(i,) for i in order]}

    def level(n):
        if n not in cache:
            cache[n] = [c + (j,) for c in level(n - 1) for j in up[c[-1]]]
        return cache[n]

    return SimplicialSpaceOverX(
        d.base, lambda n: [(c, d.value[c[0]]) for c in level(n)],
        lambda n, i, c: c[:i] + c[i + 1:],
        lambda n, i, c: c[:i + 1] + c[i:],
        cap=cap, name=f"replacement({d.name})")


# -- cofinality -------------------------------------------------------------------

@dataclass(frozen=True)
class UndercategoryReport:
    object: tuple
    size: int
    method: str
    contractible: bool

    def to_json(self) -> dict:
        return {"object": list(self.object), "method": self.method, "contractible": self.contractible}


def undercategory(cover: IndexedCover, V: frozenset) -> FiniteSpace:
    """``{σ : V ⊆ U_σ}`` ordered by reverse inclusion."""
    labels = cover.labels
    objs = [c for d in range(1, len(labels) + 1) for c in combinations(labels, d)
            if V <= cover.intersection(c)]
    rel = [(s, t) for s in objs for t in objs if s != t and set(t) <= set(s)]
    return FiniteSpace(objs, rel)


def cofinality_check(cover: IndexedCover) -> list[UndercategoryReport]:
    out = []
    d = diagram_PU(cover)
    for key in d.index.linear_extension:
        V = d.value[key]
        P = undercategory(cover, V)
        if len(P) == 0:
            out.append(UndercategoryReport(key, 0, "core", False))
            continue
        if len(beat_point_core(P)) == 1:
            out.append(UndercategoryReport(key, len(P), "core", True))
            continue
        c = simplicial_chain_complex(order_complex(P), top=4)
        hs = c.homology_range(3)
        ok = hs[0].betti == 1 and not hs[0].torsion and all(h.is_zero() for h in hs[1:])
        out.append(UndercategoryReport(key, len(P), "homology", ok))
    return out


# -- homology of the homotopy colimit -------------------------------------------------

@dataclass
class HocolimResult:
    K: int
    column_bound: int
    homology: list[HomologyGroup]
    certificate: WeakEquivCertificate
    pi0_ok: bool
    ranks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.certificate.passed and self.pi0_ok

    def table(self) -> list[dict]:
        return [g.to_json(k) for k, g in enumerate(self.homology)]


def hocolim_complex(source, K: int, column_bound: int | None = None, top: int | None = None):
    """Double complex with columns ``p <= column_bound`` and its total complex
    through degree ``top`` (default ``K + 1``, enough for ``H_k``, ``k <= K``)."""
    P = K + 2 if column_bound is None else column_bound
    top = max(K + 1, 1) if top is None else top
    cap = getattr(source, "cap", None)
    if cap is not None and cap < min(P, top):
        raise GenerationCapError(f"generation cap {cap} is too small for K={K}")
    dc = DoubleComplex(source, P, top, total_bound=top)
    return dc, totalize(dc, top)


def hocolim_homology(source, K: int, column_bound: int | None = None,
                     certificate: bool = True) -> HocolimResult:
    dc, tot = hocolim_complex(source, K, column_bound)
    hs = tot.homology_range(K)
    base_chains = simplicial_chain_complex(order_complex(source.base), top=K + 2)
    eps = augmentation_map(dc, tot, base_chains)
    if not eps.check():
        raise RuntimeError("augmentation is not a chain map")
    cert = cone_certificate(eps, K, certificate=certificate)
    ranks = {f"{p},{q}": len(v) for (p, q), v in sorted(dc.cells.items())}
    return HocolimResult(K, dc.P, hs, cert, pi0_compare(source), ranks)


def truncation_stable(source, K: int, extra: int = 2) -> bool:
    """``H_k`` for ``k <= K`` agrees with columns capped at ``K+2`` and ``K+2+extra``."""
    out = []
    for P in (K + 2, K + 2 + extra):
        _, tot = hocolim_complex(source, K, P, top=P)
        out.append(tot.homology_range(K))
    return out[0] == out[1]


def augmented_contraction_check(ed, K: int) -> bool:
    """``dh + hd = id`` on the cone of the augmentation, degrees ``<= K + 1``.

    ``h(s, t) = (-H s + B t, 0)`` where ``H`` prepends the extra label and
    ``B`` places a base chain on the one-label summand.
    """
    space = ed.cech
    dc, tot = hocolim_complex(space, K)
    base = simplicial_chain_complex(order_complex(space.base), top=K + 2)
    cone = mapping_cone(augmentation_map(dc, tot, base), K + 2)
    index = {n: {b: i for i, b in enumerate(bs)} for n, bs in cone.bases.items()}
    b = ed.label

    def contract(n):
        ent = {}
        for j, (kind, x) in enumerate(cone.bases[n]):
            if kind == "s":
                p, (lab, ch) = x
                if lab[0] == b:
                    continue
                ent[(index[n + 1][("s", (p + 1, ((b,) + lab, ch)))], j)] = -1
            else:
                ent[(index[n + 1][("s", (0, ((b,), x)))], j)] = 1
        return IntMatrix((cone.rank(n + 1), cone.rank(n)), ent)

    hs = {n: contract(n) for n in range(K + 2)}
    for n in range(K + 2):
        total = cone.boundary(n + 1) @ hs[n]
        if n >= 1:
            total = total + hs[n - 1] @ cone.boundary(n)
        if total != IntMatrix.identity(cone.rank(n)):
            return False
    return True


# -- Eilenberg-Zilber cross-check --------------------------------------------------

def weak_chains(space: FiniteSpace, carrier: frozenset, q: int) -> list[tuple]:
    """Weakly increasing ``(q+1)``-tuples in ``carrier`` (nerve simplices)."""
    out = [(x,) for x in space.linear_extension if x in carrier]
    for _ in range(q):
        out = [c + (y,) for c in out for y in space.linear_extension
               if y in carrier and space.leq(c[-1], y)]
    return out


def nerve_bisimplicial(h: SimplicialSpaceOverX) -> BiSSet:
    """``(p, q)``-cells: a level-p summand with a q-simplex of the nerve of its carrier."""
    X = h.base
    return BiSSet(lambda p, q: [(l, c) for l, car in h.summands(p) for c in weak_chains(X, car, q)],
                  lambda p, q, i, x: (h.face(p, i, x[0]), x[1]),
                  lambda p, q, i, x: (x[0], x[1][:i] + x[1][i + 1:]),
                  lambda p, q, i, x: (h.degeneracy(p, i, x[0]), x[1]),
                  lambda p, q, i, x: (x[0], x[1][:i + 1] + x[1][i:]),
                  name=h.name)


def diagonal_cell_count(h: SimplicialSpaceOverX, top: int) -> int:
    w = nerve_bisimplicial(h)
    return sum(len(w.cells(n, n)) for n in range(top + 1))


def diagonal_homology(h: SimplicialSpaceOverX, K: int) -> list[HomologyGroup]:
    """Homology of the materialized diagonal, degrees ``<= K``."""
    u = nerve_bisimplicial(h).diagonal_levels()
    return sset_chain_complex(u, K + 1).homology_range(K)
