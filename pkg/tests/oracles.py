"""Independent reference computations used by the tests.

Nothing here calls into hck's chain-complex or Smith-form code: chains are
enumerated with itertools, boundary matrices are dense sympy matrices, and
invariant factors come from sympy.
"""
from __future__ import annotations

from itertools import combinations

import networkx as nx
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def snf_diagonal(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors (absolute values) of an integer matrix."""
    if not rows or not rows[0]:
        return []
    s = smith_normal_form(Matrix(rows), domain=ZZ)
    out = [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]
    return sorted(out)


def homology_from_boundaries(ranks: list[int], bounds: dict[int, list[list[int]]], top: int):
    """``[(betti, torsion), ...]`` for degrees ``0..top`` of a complex
    ``C_0 <- C_1 <- ...`` with dense boundaries ``bounds[n]: C_n -> C_{n-1}``."""
    diag = {n: snf_diagonal(bounds[n]) if n in bounds else [] for n in range(1, top + 2)}
    out = []
    for k in range(top + 1):
        rk_in = len(diag.get(k, [])) if k > 0 else 0
        nxt = diag.get(k + 1, [])
        betti = ranks[k] - rk_in - len(nxt)
        out.append((betti, tuple(d for d in nxt if d > 1)))
    return out


def simplicial_homology(faces: list[tuple], top: int):
    """Homology of the simplicial complex generated by ``faces``."""
    closed: set[tuple] = set()
    for f in faces:
        f = tuple(sorted(f))
        for d in range(1, len(f) + 1):
            closed.update(combinations(f, d))
    by_dim: dict[int, list] = {}
    for s in sorted(closed):
        by_dim.setdefault(len(s) - 1, []).append(s)
    ranks = [len(by_dim.get(d, [])) for d in range(top + 2)]
    bounds = {}
    for d in range(1, top + 2):
        rows_, cols = by_dim.get(d - 1, []), by_dim.get(d, [])
        if not rows_ or not cols:
            continue
        idx = {s: i for i, s in enumerate(rows_)}
        m = [[0] * len(cols) for _ in rows_]
        for j, s in enumerate(cols):
            for i in range(len(s)):
                m[idx[s[:i] + s[i + 1:]]][j] = (-1) ** i
        bounds[d] = m
    return homology_from_boundaries(ranks, bounds, top)


def poset_chains(points, leq) -> list[tuple]:
    """All nonempty strict chains, by brute force over subsets."""
    pts = sorted(points, key=str)
    out = []
    for r in range(1, len(pts) + 1):
        for sub in combinations(pts, r):
            if all(leq(a, b) or leq(b, a) for a, b in combinations(sub, 2)):
                out.append(tuple(sorted(sub, key=lambda x: sum(leq(y, x) for y in sub))))
    return out


def order_complex_homology(space, top: int):
    """Homology of the order complex, from a fresh brute-force chain enumeration."""
    index = {p: i for i, p in enumerate(space.points)}
    chains = poset_chains(space.points, space.leq)
    return simplicial_homology([tuple(index[p] for p in c) for c in chains], top)


def component_count(space, subset=None) -> int:
    """Connected components of the comparability graph restricted to ``subset``."""
    pts = list(space.points if subset is None else subset)
    g = nx.Graph()
    g.add_nodes_from(pts)
    g.add_edges_from((a, b) for a in pts for b in pts if a != b and space.leq(a, b))
    return nx.number_connected_components(g)


def as_pairs(groups) -> list[tuple[int, tuple]]:
    """hck HomologyGroup list -> ``[(betti, torsion), ...]``."""
    return [(g.betti, tuple(g.torsion)) for g in groups]


def octahedron_boundary() -> list[tuple]:
    """Triangles of the boundary of the octahedron on ±e1, ±e2, ±e3."""
    return [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]


def cyclic_group_homology(n: int, top: int):
    """H_k(BZ/n): Z, then Z/n in odd degrees and 0 in positive even degrees."""
    out = [(1, ())]
    for k in range(1, top + 1):
        out.append((0, (n,) if k % 2 else ()))
    return out
