"""Finite-type simplicial sets, ordered complexes and bisimplicial diagonals.

Two presentations of a simplicial set are used:

* :class:`LevelSSet` -- levels, faces and degeneracies given by generator
  functions, memoized per level.  Every object here with cells in all
  dimensions (nerves, coskeleta, Cech label sets) is one of these.
* :class:`NormalFormSSet` -- nondegenerate cells with their faces written in
  Eilenberg-Zilber normal form ``(cell, surjection)``.

Levels are only ever generated up to a dimension the caller asks for.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

Simplex = Hashable


@dataclass(frozen=True)
class Surjection:
    """Monotone surjection ``[n] ->> [m]`` stored by its values."""

    values: tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if not v or v[0] != 0 or any(b - a not in (0, 1) for a, b in zip(v, v[1:])):
            raise ValueError(f"not a monotone surjection: {v}")

    @classmethod
    def identity(cls, n: int) -> "Surjection":
        return cls(tuple(range(n + 1)))

    @classmethod
    def from_hits(cls, n: int, hits: Iterable[int]) -> "Surjection":
        """Build from the positions ``j`` with ``s(j) == s(j+1)``."""
        hs = set(hits)
        vals = [0]
        for j in range(n):
            vals.append(vals[-1] if j in hs else vals[-1] + 1)
        return cls(tuple(vals))

    @property
    def source(self) -> int:
        return len(self.values) - 1

    @property
    def target(self) -> int:
        return self.values[-1]

    @cached_property
    def hits(self) -> tuple[int, ...]:
        v = self.values
        return tuple(j for j in range(len(v) - 1) if v[j] == v[j + 1])

    def is_identity(self) -> bool:
        return not self.hits

    def then(self, other: "Surjection") -> "Surjection":
        """``other ∘ self``."""
        return Surjection(tuple(other.values[t] for t in self.values))

    def __str__(self) -> str:
        return "s" + "".join(map(str, self.hits)) if self.hits else "id"


def surjections(n: int, m: int) -> list[Surjection]:
    """All monotone surjections ``[n] ->> [m]``."""
    return [Surjection.from_hits(n, hs) for hs in combinations(range(n), n - m)]


class SSet:
    """Interface shared by both presentations."""

    def simplices(self, n: int) -> Sequence[Simplex]:
        raise NotImplementedError

    def face(self, n: int, i: int, x: Simplex) -> Simplex:
        raise NotImplementedError

    def degeneracy(self, n: int, i: int, x: Simplex) -> Simplex:
        raise NotImplementedError

    def is_degenerate(self, n: int, x: Simplex) -> bool:
        return any(self.degeneracy(n - 1, i, self.face(n, i, x)) == x for i in range(n))

    def nondegenerate(self, n: int) -> list:
        return [x for x in self.simplices(n) if not self.is_degenerate(n, x)]

    def normal_form(self, n: int, x: Simplex) -> tuple[Simplex, int, Surjection]:
        """Write ``x`` as ``σ^* y`` with ``y`` nondegenerate."""
        vals = list(range(n + 1))
        cur, d = x, n
        while True:
            for i in range(d):
                y = self.face(d, i, cur)
                if self.degeneracy(d - 1, i, y) == cur:
                    vals = [v if v <= i else v - 1 for v in vals]
                    cur, d = y, d - 1
                    break
            else:
                return cur, d, Surjection(tuple(vals))

    def apply_surjection(self, y: Simplex, m: int, sigma: Surjection) -> Simplex:
        """``σ^* y`` for ``y`` of dimension ``m``."""
        if sigma.target != m:
            raise ValueError("surjection target does not match simplex dimension")
        cur, d = y, m
        for j in sigma.hits:
            cur = self.degeneracy(d, j, cur)
            d += 1
        return cur

    def restrict(self, x: Simplex, n: int, vertices: Sequence[int]) -> Simplex:
        """Face of ``x`` spanned by the increasing vertex tuple ``vertices``."""
        keep = set(vertices)
        cur, d = x, n
        for v in range(n, -1, -1):
            if v not in keep:
                cur = self.face(d, v, cur)
                d -= 1
        return cur

    def along(self, x: Simplex, n: int, alpha: Sequence[int]) -> Simplex:
        """``α^* x`` for a monotone map ``α: [len(alpha)-1] -> [n]``."""
        image = sorted(set(alpha))
        pos = {v: k for k, v in enumerate(image)}
        rho = Surjection(tuple(pos[a] for a in alpha))
        return self.apply_surjection(self.restrict(x, n, image), len(image) - 1, rho)

    def faces_of(self, n: int, x: Simplex) -> tuple:
        return tuple(self.face(n, i, x) for i in range(n + 1))


class LevelSSet(SSet):
    """Simplicial set presented by level generators (memoized, thread-safe)."""

    def __init__(self, level: Callable[[int], Iterable[Simplex]],
                 face: Callable[[int, int, Simplex], Simplex],
                 degeneracy: Callable[[int, int, Simplex], Simplex],
                 name: str = ""):
        self._level = level
        self._face = face
        self._degen = degeneracy
        self._cache: dict[int, tuple] = {}
        self._sets: dict[int, frozenset] = {}
        self._lock = threading.RLock()
        self.name = name

    def simplices(self, n: int) -> tuple:
        if n < 0:
            return ()
        with self._lock:
            if n not in self._cache:
                self._cache[n] = tuple(self._level(n))
            return self._cache[n]

    def contains(self, n: int, x: Simplex) -> bool:
        with self._lock:
            if n not in self._sets:
                self._sets[n] = frozenset(self.simplices(n))
            return x in self._sets[n]

    def face(self, n, i, x):
        return self._face(n, i, x)

    def degeneracy(self, n, i, x):
        return self._degen(n, i, x)


class NormalFormSSet(SSet):
    """Nondegenerate cells with faces in Eilenberg-Zilber normal form.

    A simplex is a pair ``(cell, Surjection)``.  ``faces[cell]`` lists the
    ``n+1`` faces of an ``n``-cell as such pairs.  When ``generator`` is
    given, cells of dimension ``n`` are produced on demand by
    ``generator(n) -> [(cell, faces), ...]``.
    """

    def __init__(self, cells: dict[int, Sequence[Hashable]] | None = None,
                 faces: dict[Hashable, Sequence[tuple[Hashable, Surjection]]] | None = None,
                 generator: Callable[[int], Iterable[tuple[Hashable, Sequence]]] | None = None,
                 max_dim: int | None = None, name: str = ""):
        self._cells: dict[int, list] = {k: list(v) for k, v in (cells or {}).items()}
        self._faces: dict[Hashable, tuple] = {k: tuple(v) for k, v in (faces or {}).items()}
        self._dim: dict[Hashable, int] = {c: k for k, cs in self._cells.items() for c in cs}
        self._generator = generator
        self._lock = threading.RLock()
        self.max_dim = max_dim
        self.name = name
        if generator is None and self.max_dim is None:
            self.max_dim = max(self._cells, default=-1)

    def cells(self, n: int) -> list:
        with self._lock:
            if n not in self._cells:
                if self._generator is None or n < 0:
                    return []
                for k in range(max(self._cells, default=-1) + 1, n + 1):
                    produced = list(self._generator(k))
                    self._cells[k] = [c for c, _ in produced]
                    for c, fs in produced:
                        self._faces[c] = tuple(fs)
                        self._dim[c] = k
            return self._cells[n]

    def dimension_of(self, cell: Hashable) -> int:
        return self._dim[cell]

    def cell_faces(self, cell: Hashable) -> tuple:
        return self._faces.get(cell, ())

    @property
    def all_cells(self) -> list:
        top = self.max_dim if self.max_dim is not None else max(self._cells, default=-1)
        return [c for k in range(top + 1) for c in self.cells(k)]

    def simplices(self, n: int) -> list:
        out = []
        for m in range(n + 1):
            cs = self.cells(m)
            if not cs:
                continue
            for s in surjections(n, m):
                out.extend((c, s) for c in cs)
        return out

    def face(self, n, i, x):
        cell, sigma = x
        v = sigma.values
        w = v[:i] + v[i + 1:]
        if v[i] in w:
            return cell, Surjection(w)
        j = v[i]
        w2 = tuple(t - 1 if t > j else t for t in w)
        z, rho = self._faces[cell][j]
        return z, Surjection(tuple(rho.values[t] for t in w2))

    def degeneracy(self, n, i, x):
        cell, sigma = x
        v = sigma.values
        return cell, Surjection(v[:i + 1] + v[i:])

    def is_degenerate(self, n, x):
        return not x[1].is_identity()

    def normal_form(self, n, x):
        return x[0], x[1].target, x[1]

    def top(self, cell: Hashable) -> tuple:
        """The simplex represented by a nondegenerate cell."""
        return cell, Surjection.identity(self._dim[cell])

    def dump(self) -> str:
        """One line per cell: ``dim id : face0 face1 ...``."""
        lines = []
        for c in self.all_cells:
            fs = " ".join(f"{z}.{s}" for z, s in self.cell_faces(c))
            lines.append(f"{self._dim[c]} {c} : {fs}".rstrip())
        return "\n".join(lines)


def normalize(u: SSet, up_to: int) -> NormalFormSSet:
    """Normal-form presentation of ``u`` through dimension ``up_to``."""
    cells: dict[int, list] = {}
    faces: dict = {}
    for n in range(up_to + 1):
        cells[n] = []
        for x in u.simplices(n):
            if n and u.is_degenerate(n, x):
                continue
            cells[n].append(x)
            if n:
                fs = []
                for i in range(n + 1):
                    y, _, s = u.normal_form(n - 1, u.face(n, i, x))
                    fs.append((y, s))
                faces[x] = fs
    return NormalFormSSet(cells, faces, max_dim=up_to, name=getattr(u, "name", ""))


def check_identities(u: SSet, up_to: int) -> list[str]:
    """Violations of the simplicial identities on dimensions ``<= up_to``."""
    bad = []
    for n in range(up_to + 1):
        for x in u.simplices(n):
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        a = u.face(n - 1, i, u.face(n, j, x))
                        b = u.face(n - 1, j - 1, u.face(n, i, x))
                        if a != b:
                            bad.append(f"d{i}d{j} != d{j-1}d{i} at {x!r}")
            for j in range(n + 1):
                sx = u.degeneracy(n, j, x)
                for i in range(n + 2):
                    lhs = u.face(n + 1, i, sx)
                    if i < j:
                        rhs = u.degeneracy(n - 1, j - 1, u.face(n, i, x))
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = u.degeneracy(n - 1, j, u.face(n, i - 1, x))
                    if lhs != rhs:
                        bad.append(f"d{i}s{j} identity fails at {x!r}")
                for i in range(j + 1):
                    lhs = u.degeneracy(n + 1, i, sx)
                    rhs = u.degeneracy(n + 1, j + 1, u.degeneracy(n, i, x))
                    if lhs != rhs:
                        bad.append(f"s{i}s{j} != s{j+1}s{i} at {x!r}")
    return bad


# -- standard simplices ------------------------------------------------------

def simplex_cells(k: int, max_dim: int | None = None) -> list[tuple[int, ...]]:
    """Faces of Δ^k of dimension <= max_dim as increasing vertex tuples."""
    top = k if max_dim is None else min(k, max_dim)
    return [t for d in range(top + 1) for t in combinations(range(k + 1), d + 1)]


def _skeleton(k: int, max_dim: int, drop_top: bool = False) -> NormalFormSSet:
    cells: dict[int, list] = {}
    faces = {}
    for t in simplex_cells(k, max_dim):
        if drop_top and len(t) == k + 1:
            continue
        d = len(t) - 1
        cells.setdefault(d, []).append(t)
        if d:
            faces[t] = [(t[:i] + t[i + 1:], Surjection.identity(d - 1)) for i in range(d + 1)]
    return NormalFormSSet(cells, faces, max_dim=min(k, max_dim), name=f"sk{max_dim}Δ{k}")


def standard_simplex(k: int) -> NormalFormSSet:
    return _skeleton(k, k)


def boundary_simplex(k: int) -> NormalFormSSet:
    """∂Δ^k; empty for k = 0."""
    if k == 0:
        return NormalFormSSet({}, {}, max_dim=-1, name="∂Δ0")
    return _skeleton(k, k - 1)


def simplex_skeleton(k: int, n: int) -> NormalFormSSet:
    """sk_n Δ^k."""
    return _skeleton(k, n)


# -- nerves --------------------------------------------------------------------

def nerve(points: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> LevelSSet:
    """Nerve of a finite poset: n-simplices are chains ``x0 <= ... <= xn``."""
    pts = tuple(points)

    def level(n):
        out = [(p,) for p in pts]
        for _ in range(n):
            out = [c + (q,) for c in out for q in pts if leq(c[-1], q)]
        return out

    return LevelSSet(level,
                     lambda n, i, x: x[:i] + x[i + 1:],
                     lambda n, i, x: x[:i + 1] + x[i:],
                     name="nerve")


def nerve_of_space(space) -> LevelSSet:
    return nerve(space.linear_extension, space.leq)


def subsets_poset(n: int) -> tuple[list[frozenset], Callable]:
    """P_n: nonempty subsets of {0..n} under inclusion."""
    subs = [frozenset(t) for d in range(n + 1) for t in combinations(range(n + 1), d + 1)]
    return subs, lambda a, b: a <= b


# -- mapping spaces, coskeleta, matching sets -------------------------------------

class _FaceIndex:
    """Simplices of ``u`` in dimension ``d`` bucketed by their face tuple."""

    def __init__(self, u: SSet):
        self.u = u
        self._idx: dict[int, dict] = {}

    def lookup(self, d: int, faces: tuple) -> list:
        if d not in self._idx:
            idx: dict = {}
            for x in self.u.simplices(d):
                idx.setdefault(self.u.faces_of(d, x), []).append(x)
            self._idx[d] = idx
        return self._idx[d].get(faces, [])


def map_space(k: NormalFormSSet, u: SSet, _index: _FaceIndex | None = None) -> list[tuple]:
    """All simplicial maps ``k -> u``.

    A map is returned as the tuple of images of ``k``'s nondegenerate cells
    in the order of ``k.all_cells``.
    """
    order = k.all_cells
    pos = {c: i for i, c in enumerate(order)}
    index = _index or _FaceIndex(u)
    out: list[tuple] = []
    values: list = [None] * len(order)

    def image(cell, sigma):
        y = values[pos[cell]]
        return u.apply_surjection(y, k.dimension_of(cell), sigma)

    def extend(idx: int):
        if idx == len(order):
            out.append(tuple(values))
            return
        c = order[idx]
        d = k.dimension_of(c)
        if d == 0:
            cands = u.simplices(0)
        else:
            want = tuple(image(z, s) for z, s in k.cell_faces(c))
            cands = index.lookup(d, want)
        for x in cands:
            values[idx] = x
            extend(idx + 1)
        values[idx] = None

    extend(0)
    return out


def coskeleton(u: SSet, n: int) -> LevelSSet:
    """cosk_n u: k-simplices are maps ``sk_n Δ^k -> u``.

    A k-simplex is stored as the tuple of values on ``simplex_cells(k, n)``.
    """
    index = _FaceIndex(u)

    def cells(k):
        return simplex_cells(k, n)

    def level(k):
        return map_space(simplex_skeleton(k, n), u, index)

    def face(k, i, f):
        src = {t: v for t, v in zip(cells(k), f)}
        return tuple(src[tuple(t if t < i else t + 1 for t in c)] for c in cells(k - 1))

    def degen(k, i, f):
        src = {t: v for t, v in zip(cells(k), f)}
        out = []
        for c in cells(k + 1):
            img = [t if t <= i else t - 1 for t in c]
            s = tuple(sorted(set(img)))
            rho = Surjection(tuple(s.index(t) for t in img))
            out.append(u.apply_surjection(src[s], len(s) - 1, rho))
        return tuple(out)

    return LevelSSet(level, face, degen, name=f"cosk{n}")


def to_coskeleton(u: SSet, n: int, k: int, x: Simplex) -> tuple:
    """Canonical map ``u -> cosk_n u`` in dimension ``k``."""
    return tuple(u.restrict(x, k, c) for c in simplex_cells(k, n))


def matching_sset(u: SSet, n: int) -> list[tuple]:
    """Compatible boundary data ``(x_0..x_n)`` with ``d_i x_j = d_{j-1} x_i``."""
    if n == 0:
        return [()]
    prev = u.simplices(n - 1)
    if n == 1:
        return [(a, b) for a in prev for b in prev]
    faces = {x: u.faces_of(n - 1, x) for x in prev}
    by_face0: dict = {}
    for x in prev:
        by_face0.setdefault(faces[x][0], []).append(x)
    out: list[tuple] = []
    chosen: list = []

    def extend(j: int):
        if j == n + 1:
            out.append(tuple(chosen))
            return
        if j == 0:
            cands = prev
        else:
            # constraint with i = 0: d_0 x_j = d_{j-1} x_0
            cands = by_face0.get(faces[chosen[0]][j - 1], [])
        for x in cands:
            fx = faces[x]
            if all(fx[i] == faces[chosen[i]][j - 1] for i in range(1, j)):
                chosen.append(x)
                extend(j + 1)
                chosen.pop()

    extend(0)
    return out


def matching_via_maps(u: SSet, n: int) -> list[tuple]:
    """Map(∂Δ^n, u) by generic map enumeration, as codimension-one faces."""
    b = boundary_simplex(n)
    if n == 0:
        return [()]
    order = b.all_cells
    tops = [tuple(v for v in range(n + 1) if v != j) for j in range(n + 1)]
    where = [order.index(t) for t in tops]
    return [tuple(m[w] for w in where) for m in map_space(b, u)]


# -- free degeneracies -------------------------------------------------------------

@dataclass
class Splitting:
    """Per dimension: nondegenerate cells and the decomposition of all cells."""

    nondegenerate: dict[int, list]
    decomposition: dict[int, dict[tuple[Surjection, Hashable], Hashable]]
    bijective: dict[int, bool]

    def counts(self, k: int) -> tuple[int, int]:
        """(|X_k|, Σ_σ |N_m|) -- equal when the splitting is valid."""
        total = sum(len(surjections(k, m)) * len(self.nondegenerate[m]) for m in range(k + 1))
        return len(self.decomposition[k]), total


def detect_splitting(u: SSet, up_to: int) -> Splitting:
    nondeg = {k: u.nondegenerate(k) for k in range(up_to + 1)}
    decomp: dict = {}
    ok: dict = {}
    for k in range(up_to + 1):
        table = {}
        for m in range(k + 1):
            for s in surjections(k, m):
                for y in nondeg[m]:
                    table[(s, y)] = u.apply_surjection(y, m, s)
        images = list(table.values())
        level = set(u.simplices(k))
        ok[k] = len(set(images)) == len(images) and set(images) == level
        decomp[k] = table
    return Splitting(nondeg, decomp, ok)


def sk_pushout_check(u: SSet, n: int, up_to: int | None = None) -> bool:
    """Sk_n u is the pushout of Sk_{n-1} u <- N_n × ∂Δ^n -> N_n × Δ^n.

    Checked as a bijection of the canonical comparison map in every
    dimension ``k <= up_to`` (default ``n + 2``).
    """
    top = n + 2 if up_to is None else up_to
    nondeg_n = u.nondegenerate(n)
    # attaching map lands in Sk_{n-1}
    for y in nondeg_n:
        for i in range(n + 1) if n else ():
            if u.normal_form(n - 1, u.face(n, i, y))[1] > n - 1:
                return False
    for k in range(top + 1):
        sk_n = [x for x in u.simplices(k) if u.normal_form(k, x)[1] <= n]
        lower = [x for x in sk_n if u.normal_form(k, x)[1] <= n - 1]
        interior = [u.apply_surjection(y, n, s) for y in nondeg_n for s in surjections(k, n)] \
            if k >= n else []
        glued = lower + interior
        if len(set(glued)) != len(glued) or set(glued) != set(sk_n):
            return False
    return True


# -- ordered complexes -------------------------------------------------------------

class OrderedComplex:
    """Simplicial complex with a total vertex order.

    Simplices are stored as tuples increasing in that order.
    """

    def __init__(self, vertices: Sequence[Hashable], simplices: Iterable[Sequence[Hashable]]):
        self.vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(self.vertices)}
        self._pos = pos
        closed: set[tuple] = set()
        for s in simplices:
            t = tuple(sorted(set(s), key=pos.__getitem__))
            if not t:
                continue
            for d in range(1, len(t) + 1):
                closed.update(combinations(t, d))
        self.simplices = frozenset(closed)

    @cached_property
    def by_dim(self) -> dict[int, list[tuple]]:
        out: dict[int, list] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for d in out:
            out[d].sort(key=lambda s: [self._pos[v] for v in s])
        return out

    @property
    def dimension(self) -> int:
        return max(self.by_dim, default=-1)

    def faces(self, d: int) -> list[tuple]:
        return self.by_dim.get(d, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces(d)) for d in range(self.dimension + 1)]

    def __repr__(self) -> str:
        return f"OrderedComplex(f={self.f_vector()})"


def subdivide(c: OrderedComplex) -> OrderedComplex:
    """Barycentric subdivision: chains of proper face inclusions."""
    pos = {v: i for i, v in enumerate(c.vertices)}
    faces = sorted(c.simplices, key=lambda s: (len(s), [pos[v] for v in s]))
    fpos = {f: i for i, f in enumerate(faces)}
    ending: dict[tuple, list] = {}
    for f in faces:
        acc = [(f,)]
        fs = set(f)
        for g in faces[:fpos[f]]:
            if len(g) < len(f) and set(g) < fs:
                acc.extend(ch + (f,) for ch in ending[g])
        ending[f] = acc
    return OrderedComplex(faces, [ch for f in faces for ch in ending[f]])


def standard_ordered_simplex(k: int) -> OrderedComplex:
    return OrderedComplex(range(k + 1), [tuple(range(k + 1))])


# -- bisimplicial sets --------------------------------------------------------------

class BiSSet:
    """Bisimplicial set given by generators; p is horizontal, q vertical."""

    def __init__(self, cells: Callable[[int, int], Iterable[Simplex]],
                 hface: Callable, vface: Callable, hdegen: Callable, vdegen: Callable,
                 name: str = ""):
        self._cells = cells
        self.hface, self.vface = hface, vface
        self.hdegen, self.vdegen = hdegen, vdegen
        self._cache: dict = {}
        self._lock = threading.RLock()
        self.name = name

    def cells(self, p: int, q: int) -> tuple:
        with self._lock:
            if (p, q) not in self._cache:
                self._cache[(p, q)] = tuple(self._cells(p, q))
            return self._cache[(p, q)]

    def row(self, q: int) -> LevelSSet:
        return LevelSSet(lambda p: self.cells(p, q),
                         lambda p, i, x: self.hface(p, q, i, x),
                         lambda p, i, x: self.hdegen(p, q, i, x))

    def column(self, p: int) -> LevelSSet:
        return LevelSSet(lambda q: self.cells(p, q),
                         lambda q, i, x: self.vface(p, q, i, x),
                         lambda q, i, x: self.vdegen(p, q, i, x))

    def diagonal_levels(self) -> LevelSSet:
        return LevelSSet(lambda n: self.cells(n, n),
                         lambda n, i, x: self.vface(n - 1, n, i, self.hface(n, n, i, x)),
                         lambda n, i, x: self.vdegen(n + 1, n, i, self.hdegen(n, n, i, x)),
                         name=f"diag({self.name})")


def check_bisimplicial(w: BiSSet, up_to: int) -> list[str]:
    """Row/column identities and commutation of the two directions."""
    bad = []
    for q in range(up_to + 1):
        bad += [f"row {q}: {m}" for m in check_identities(w.row(q), up_to)]
    for p in range(up_to + 1):
        bad += [f"column {p}: {m}" for m in check_identities(w.column(p), up_to)]
    for p in range(1, up_to + 1):
        for q in range(1, up_to + 1):
            for x in w.cells(p, q):
                for i in range(p + 1):
                    for j in range(q + 1):
                        a = w.vface(p - 1, q, j, w.hface(p, q, i, x))
                        b = w.hface(p, q - 1, i, w.vface(p, q, j, x))
                        if a != b:
                            bad.append(f"h{i}/v{j} faces do not commute at {x!r}")
    return bad


def diagonal(w: BiSSet, up_to: int) -> NormalFormSSet:
    """Diagonal of ``w`` in normal form through dimension ``up_to``."""
    return normalize(w.diagonal_levels(), up_to)


def external_product(u: SSet, v: SSet) -> BiSSet:
    return BiSSet(lambda p, q: [(x, y) for x in u.simplices(p) for y in v.simplices(q)],
                  lambda p, q, i, c: (u.face(p, i, c[0]), c[1]),
                  lambda p, q, i, c: (c[0], v.face(q, i, c[1])),
                  lambda p, q, i, c: (u.degeneracy(p, i, c[0]), c[1]),
                  lambda p, q, i, c: (c[0], v.degeneracy(q, i, c[1])),
                  name="product")


def constant_bisset(u: SSet, horizontal: bool = True) -> BiSSet:
    """Bisimplicial set constant in one direction (``horizontal=True``: rows constant)."""
    if horizontal:
        return BiSSet(lambda p, q: u.simplices(q),
                      lambda p, q, i, x: x,
                      lambda p, q, i, x: u.face(q, i, x),
                      lambda p, q, i, x: x,
                      lambda p, q, i, x: u.degeneracy(q, i, x))
    return BiSSet(lambda p, q: u.simplices(p),
                  lambda p, q, i, x: u.face(p, i, x),
                  lambda p, q, i, x: x,
                  lambda p, q, i, x: u.degeneracy(p, i, x),
                  lambda p, q, i, x: x)
