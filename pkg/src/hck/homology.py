"""Integer chain complexes and Smith normal form.

Matrices are sparse with Python ``int`` entries.  Homology of a simplicial
space is computed from the normalized double complex

    N_{p,q} = nondegenerate horizontal p-summands × q-chains of order complexes

with the vertical differential on column ``p`` carrying the sign ``(-1)^p`` so
that the total differential is ``d_h + d_v``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

DEFAULT_MAGNITUDE_LIMIT = 2 ** 62


class ChainComplexError(ValueError):
    pass


class IntMatrix:
    """Sparse integer matrix; zero entries are never stored."""

    __slots__ = ("shape", "entries")

    def __init__(self, shape: tuple[int, int], entries: Mapping[tuple[int, int], int] | Iterable = ()):
        self.shape = (int(shape[0]), int(shape[1]))
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[tuple[int, int], int] = {}
        m, n = self.shape
        for (r, c), v in items:
            if not (0 <= r < m and 0 <= c < n):
                raise IndexError(f"entry ({r}, {c}) outside shape {self.shape}")
            v = data.get((r, c), 0) + int(v)
            if v:
                data[(r, c)] = v
            else:
                data.pop((r, c), None)
        self.entries = data

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        return cls((m, n), {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls((n, n), {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls((m, n))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.shape[1] for _ in range(self.shape[0])]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def rows(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = defaultdict(dict)
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix((self.shape[1], self.shape[0]), {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows()
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for (r, k), v in self.entries.items():
            for c, w in orows.get(k, {}).items():
                acc[(r, c)] += v * w
        return IntMatrix((self.shape[0], other.shape[1]), {k: v for k, v in acc.items() if v})

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.shape, list(self.entries.items()) + list(other.entries.items()))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.shape, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        cols: dict[int, list] = defaultdict(list)
        for (r, c), v in self.entries.items():
            cols[c].append((r, v))
        for c, x in vec.items():
            for r, v in cols.get(c, ()):
                out[r] += v * x
        return {k: v for k, v in out.items() if v}

    def __repr__(self) -> str:
        return f"IntMatrix({self.shape[0]}x{self.shape[1]}, nnz={self.nnz})"


# -- Smith normal form ---------------------------------------------------------------

@dataclass
class SmithResult:
    """``U @ M @ V == D`` with ``D`` diagonal ``d_1 | d_2 | ...``."""

    shape: tuple[int, int]
    diagonal: list[int]
    U: IntMatrix | None = None
    V: IntMatrix | None = None
    escalated: bool = False

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]

    def D(self) -> IntMatrix:
        return IntMatrix(self.shape, {(i, i): d for i, d in enumerate(self.diagonal)})

    def verify(self, m: IntMatrix) -> bool:
        if self.U is None or self.V is None:
            raise ValueError("no certificate was recorded")
        ok = (self.U @ m @ self.V) == self.D()
        divides = all(b % a == 0 for a, b in zip(self.diagonal, self.diagonal[1:]))
        return ok and divides and _is_unimodular_certificate(self)


def _is_unimodular_certificate(res: SmithResult) -> bool:
    # square and of the right sizes; unimodularity is guaranteed by construction
    m, n = res.shape
    return res.U.shape == (m, m) and res.V.shape == (n, n)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def invariant_factors(diag: Iterable[int]) -> list[int]:
    """Reorder nonzero diagonal entries into a divisibility chain."""
    diag = list(diag)
    ones = [d for d in diag if abs(d) == 1]
    rest = [abs(d) for d in diag if abs(d) > 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            if b % a:
                g = gcd(a, b)
                rest[i], rest[j] = g, a * b // g
    return [1] * len(ones) + rest


def smith_normal_form(m: IntMatrix, certificate: bool = False,
                      magnitude_limit: int = DEFAULT_MAGNITUDE_LIMIT) -> SmithResult:
    """Diagonalize ``m`` by unimodular row and column operations.

    Pivot: nonzero entry of least absolute value, ties broken by lowest row
    then lowest column.  Python integers never wrap; ``escalated`` records
    whether any intermediate exceeded ``magnitude_limit`` (i.e. would have
    needed arbitrary precision in fixed-width arithmetic).
    """
    nr, nc = m.shape
    rows: dict[int, dict[int, int]] = {r: dict(cs) for r, cs in m.rows().items()}
    colidx: dict[int, set[int]] = defaultdict(set)
    for r, cs in rows.items():
        for c in cs:
            colidx[c].add(r)
    U = {r: {r: 1} for r in range(nr)} if certificate else None
    V = {c: {c: 1} for c in range(nc)} if certificate else None
    escalated = False
    active = sorted(rows)
    pivots: list[tuple[int, int, int]] = []

    def add_into(dst: dict, src: dict, q: int) -> None:
        for k, v in src.items():
            nv = dst.get(k, 0) + q * v
            if nv:
                dst[k] = nv
            else:
                dst.pop(k, None)

    def add_row(i: int, r: int, q: int) -> None:
        nonlocal escalated
        ri = rows[i]
        for c, v in rows[r].items():
            nv = ri.get(c, 0) + q * v
            if nv:
                if c not in ri:
                    colidx[c].add(i)
                ri[c] = nv
                if not escalated and abs(nv) > magnitude_limit:
                    escalated = True
            elif c in ri:
                del ri[c]
                colidx[c].discard(i)
        if U is not None:
            add_into(U[i], U[r], q)

    def add_col(j: int, c: int, q: int) -> None:
        nonlocal escalated
        for r in list(colidx[c]):
            rr = rows[r]
            nv = rr.get(j, 0) + q * rr[c]
            if nv:
                if j not in rr:
                    colidx[j].add(r)
                rr[j] = nv
                if not escalated and abs(nv) > magnitude_limit:
                    escalated = True
            elif j in rr:
                del rr[j]
                colidx[j].discard(r)
        if V is not None:
            add_into(V[j], V[c], q)

    def find_pivot():
        nonlocal active
        best = None
        empty = False
        for r in active:
            rr = rows.get(r)
            if not rr:
                empty = True
                continue
            units = [c for c, v in rr.items() if v == 1 or v == -1]
            if units:
                c = min(units)
                best = (r, c, rr[c])
                break
            for c, v in rr.items():
                key = (abs(v), r, c)
                if best is None or key < (abs(best[2]), best[0], best[1]):
                    best = (r, c, v)
        if empty:
            active = [r for r in active if rows.get(r)]
        return best

    while True:
        piv = find_pivot()
        if piv is None:
            break
        r, c, a = piv
        clean = True
        for i in sorted(colidx[c] - {r}):
            q = rows[i][c] // a
            add_row(i, r, -q)
            if c in rows[i]:
                clean = False
        if not clean:
            continue
        for j in sorted(set(rows[r]) - {c}):
            q = rows[r][j] // a
            add_col(j, c, -q)
            if j in rows[r]:
                clean = False
        if not clean:
            continue
        if a < 0:
            rows[r][c] = -a
            if U is not None:
                U[r] = {k: -v for k, v in U[r].items()}
        pivots.append((r, c, abs(a)))
        del rows[r]
        colidx[c].discard(r)

    if not certificate:
        return SmithResult((nr, nc), invariant_factors(d for _, _, d in pivots), escalated=escalated)

    # move pivots to the diagonal, units first
    pivots.sort(key=lambda t: (t[2] != 1,))
    prow = [p[0] for p in pivots]
    pcol = [p[1] for p in pivots]
    diag = [p[2] for p in pivots]
    rest_r = [r for r in range(nr) if r not in set(prow)]
    rest_c = [c for c in range(nc) if c not in set(pcol)]
    urows = [dict(U[r]) for r in prow + rest_r]
    vcols = [dict(V[c]) for c in pcol + rest_c]
    first = next((i for i, d in enumerate(diag) if d > 1), len(diag))
    for i in range(first, len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _ext_gcd(a, b)
            ri, rj = urows[i], urows[j]
            new_i: dict = {}
            add_into(new_i, ri, s)
            add_into(new_i, rj, t)
            new_j: dict = {}
            add_into(new_j, ri, -(b // g))
            add_into(new_j, rj, a // g)
            urows[i], urows[j] = new_i, new_j
            ci, cj = vcols[i], vcols[j]
            nci: dict = {}
            add_into(nci, ci, 1)
            add_into(nci, cj, 1)
            ncj: dict = {}
            add_into(ncj, ci, -(t * b // g))
            add_into(ncj, cj, s * a // g)
            vcols[i], vcols[j] = nci, ncj
            diag[i], diag[j] = g, a * b // g
    Um = IntMatrix((nr, nr), {(k, col): v for k, row in enumerate(urows) for col, v in row.items()})
    Vm = IntMatrix((nc, nc), {(row, k): v for k, col in enumerate(vcols) for row, v in col.items()})
    return SmithResult((nr, nc), diag, Um, Vm, escalated)


# -- chain complexes ------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.torsion
        if any(x <= 1 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion coefficients must exceed 1 and divide successively: {t}")

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self, degree: int) -> dict:
        return {"degree": degree, "betti": self.betti, "torsion": list(self.torsion)}


class ChainComplex:
    """Free chain complex ``C_0 <- C_1 <- ... <- C_top``.

    ``boundary(n)`` has shape ``(rank(n-1), rank(n))``.  Degrees above
    ``top`` are unknown, so homology is only reported up to ``top - 1``
    unless ``complete`` says the complex really stops at ``top``.
    """

    def __init__(self, bases: Mapping[int, Sequence[Hashable]], boundaries: Mapping[int, IntMatrix],
                 complete: bool = False):
        self.bases = {n: list(b) for n, b in bases.items()}
        self.top = max(self.bases, default=-1)
        self.complete = complete
        self._boundaries = dict(boundaries)
        for n in range(self.top + 1):
            self.bases.setdefault(n, [])
        for n, d in self._boundaries.items():
            if d.shape != (self.rank(n - 1), self.rank(n)):
                raise ChainComplexError(f"boundary {n} has shape {d.shape}, "
                                        f"expected {(self.rank(n - 1), self.rank(n))}")
        self._snf: dict[int, SmithResult] = {}

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def boundary(self, n: int) -> IntMatrix:
        if n in self._boundaries:
            return self._boundaries[n]
        return IntMatrix.zeros(self.rank(n - 1), self.rank(n))

    def check(self) -> bool:
        """``∂_{n-1} ∘ ∂_n = 0`` for every consecutive pair."""
        for n in range(2, self.top + 1):
            if not (self.boundary(n - 1) @ self.boundary(n)).is_zero():
                return False
        return True

    def smith(self, n: int, certificate: bool = False) -> SmithResult:
        cached = self._snf.get(n)
        if cached is None or (certificate and cached.U is None):
            cached = smith_normal_form(self.boundary(n), certificate=certificate)
            self._snf[n] = cached
        return cached

    def max_degree(self) -> int:
        return self.top if self.complete else self.top - 1

    def homology(self, k: int, certificate: bool = False) -> HomologyGroup:
        if self.complete and k > self.top:
            return HomologyGroup(0)
        if k > self.max_degree():
            raise ChainComplexError(f"degree {k} needs C_{k + 1}, complex stops at {self.top}")
        if k < 0:
            return HomologyGroup(0)
        rk = self.smith(k, certificate).rank if k > 0 else 0
        nxt = self.smith(k + 1, certificate) if k + 1 <= self.top else SmithResult((self.rank(k), 0), [])
        return HomologyGroup(self.rank(k) - rk - nxt.rank, tuple(nxt.torsion))

    def homology_range(self, top: int, certificate: bool = False) -> list[HomologyGroup]:
        return [self.homology(k, certificate) for k in range(top + 1)]

    def certificates(self) -> dict[int, SmithResult]:
        return dict(self._snf)

    def verify_certificates(self) -> bool:
        return all(res.verify(self.boundary(n)) for n, res in self._snf.items() if res.U is not None)

    def cycle_not_boundary(self, k: int) -> dict[int, int] | None:
        """A cycle in degree ``k`` whose class is nonzero, or ``None``."""
        dk = self.smith(k, True) if k > 0 else None
        nxt = self.smith(k + 1, True) if k + 1 <= self.top else None
        n = self.rank(k)
        if dk is None:
            kernel = [{i: 1} for i in range(n)]
        else:
            cols: dict = defaultdict(dict)
            for (r, c), v in dk.V.entries.items():
                if c >= dk.rank:
                    cols[c][r] = v
            kernel = [cols[j] for j in range(dk.rank, n)]
        for z in kernel:
            if nxt is None:
                if z:
                    return z
                continue
            coords = nxt.U.apply(z)
            for i, v in coords.items():
                if i >= nxt.rank or v % nxt.diagonal[i]:
                    return z
        return None


def homology_report(c: ChainComplex, top: int) -> list[dict]:
    return [h.to_json(k) for k, h in enumerate(c.homology_range(top))]


# -- chain maps and cones -------------------------------------------------------------

class ChainMap:
    def __init__(self, source: ChainComplex, target: ChainComplex, components: Mapping[int, IntMatrix]):
        self.source = source
        self.target = target
        self._comp = dict(components)
        for n, f in self._comp.items():
            if f.shape != (target.rank(n), source.rank(n)):
                raise ChainComplexError(f"component {n} has shape {f.shape}")

    def component(self, n: int) -> IntMatrix:
        if n in self._comp:
            return self._comp[n]
        return IntMatrix.zeros(self.target.rank(n), self.source.rank(n))

    @property
    def top(self) -> int:
        return min(self.source.top, self.target.top)

    def check(self, top: int | None = None) -> bool:
        """``∂ f = f ∂`` in degrees ``1..top``."""
        top = self.top if top is None else top
        for n in range(1, top + 1):
            lhs = self.target.boundary(n) @ self.component(n)
            rhs = self.component(n - 1) @ self.source.boundary(n)
            if lhs != rhs:
                return False
        return True

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {n: IntMatrix.identity(c.rank(n)) for n in range(c.top + 1)})


def mapping_cone(f: ChainMap, top: int) -> ChainComplex:
    """``Cone_n = S_{n-1} ⊕ T_n`` with ``d(s, t) = (-∂s, f s + ∂t)``."""
    S, T = f.source, f.target
    bases = {n: [("s", b) for b in S.bases.get(n - 1, [])] + [("t", b) for b in T.bases.get(n, [])]
             for n in range(top + 1)}
    bounds = {}
    for n in range(1, top + 1):
        s_src, t_src = S.rank(n - 1), T.rank(n)
        s_dst, t_dst = S.rank(n - 2), T.rank(n - 1)
        ent: dict = {}
        if n >= 2:
            for (r, c), v in S.boundary(n - 1).entries.items():
                ent[(r, c)] = -v
        for (r, c), v in f.component(n - 1).entries.items():
            ent[(s_dst + r, c)] = v
        for (r, c), v in T.boundary(n).entries.items():
            ent[(s_dst + r, s_src + c)] = v
        bounds[n] = IntMatrix((s_dst + t_dst, s_src + t_src), ent)
    return ChainComplex(bases, bounds)


@dataclass
class WeakEquivCertificate:
    """Per-degree verdicts: ``verdict[k]`` iff the cone is exact at k and k+1."""

    K: int
    verdicts: list[bool]
    cone_homology: list[HomologyGroup]
    witnesses: dict[int, dict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts)

    def first_failure(self) -> int | None:
        return next((k for k, v in enumerate(self.verdicts) if not v), None)

    def to_json(self) -> dict:
        return {"K": self.K, "passed": self.passed,
                "status": f"homology-certified through degree {self.K}" if self.passed else "failed",
                "verdicts": {str(k): v for k, v in enumerate(self.verdicts)},
                "cone_homology": [h.to_json(k) for k, h in enumerate(self.cone_homology)],
                "witnesses": {str(k): w for k, w in self.witnesses.items()}}


def cone_certificate(f: ChainMap, K: int, certificate: bool = False) -> WeakEquivCertificate:
    if f.source.top < K + 1 and not f.source.complete:
        raise ChainComplexError(f"source known only through degree {f.source.top}; need {K + 1}")
    if f.target.top < K + 2 and not f.target.complete:
        raise ChainComplexError(f"target known only through degree {f.target.top}; need {K + 2}")
    cone = mapping_cone(f, K + 2)
    hs = [cone.homology(k, certificate) for k in range(K + 2)]
    verdicts = [hs[k].is_zero() and hs[k + 1].is_zero() for k in range(K + 1)]
    witnesses = {}
    for k, h in enumerate(hs):
        if not h.is_zero():
            z = cone.cycle_not_boundary(k)
            if z is not None:
                basis = cone.bases[k]
                witnesses[k] = {"homology": str(h),
                                "cycle": {_label(basis[i]): v for i, v in sorted(z.items())}}
    cert = WeakEquivCertificate(K, verdicts, hs, witnesses)
    cert.cone = cone
    return cert


def _label(b) -> str:
    if isinstance(b, tuple):
        return "(" + ",".join(_label(x) for x in b) + ")"
    return str(b)


# -- chains of complexes --------------------------------------------------------------

def simplicial_chain_complex(complex_, top: int | None = None) -> ChainComplex:
    """Chains of an OrderedComplex through degree ``top`` (default: all)."""
    dim = complex_.dimension
    top_ = dim if top is None else top
    bases = {d: list(complex_.faces(d)) for d in range(top_ + 1)}
    index = {d: {s: i for i, s in enumerate(b)} for d, b in bases.items()}
    bounds = {}
    for d in range(1, top_ + 1):
        ent = {}
        for j, s in enumerate(bases[d]):
            for i in range(len(s)):
                ent[(index[d - 1][s[:i] + s[i + 1:]], j)] = (-1) ** i
        bounds[d] = IntMatrix((len(bases[d - 1]), len(bases[d])), ent)
    return ChainComplex(bases, bounds, complete=top is None or top >= dim)


def sset_chain_complex(u, top: int) -> ChainComplex:
    """Normalized chains of a simplicial set through dimension ``top``."""
    bases = {n: u.nondegenerate(n) if n else list(u.simplices(0)) for n in range(top + 1)}
    index = {n: {x: i for i, x in enumerate(b)} for n, b in bases.items()}
    bounds = {}
    for n in range(1, top + 1):
        ent: dict = defaultdict(int)
        for j, x in enumerate(bases[n]):
            for i in range(n + 1):
                y = u.face(n, i, x)
                k = index[n - 1].get(y)
                if k is not None:
                    ent[(k, j)] += (-1) ** i
        bounds[n] = IntMatrix((len(bases[n - 1]), len(bases[n])), {k: v for k, v in ent.items() if v})
    return ChainComplex(bases, bounds)


# -- double complexes -----------------------------------------------------------------

class DoubleComplex:
    """Normalized double complex of a simplicial space.

    ``cells[(p, q)]`` lists basis cells; ``dh[(p, q)]`` maps ``(p,q) -> (p-1,q)``
    and ``dv[(p, q)]`` maps ``(p,q) -> (p,q-1)`` (sign ``(-1)^p`` included).
    With ``total_bound`` only cells with ``p + q <= total_bound`` are built.
    """

    def __init__(self, space, column_bound: int, row_bound: int, total_bound: int | None = None):
        self.space = space
        self.P = column_bound
        self.Q = row_bound
        self.T = total_bound
        self.cells: dict[tuple[int, int], list] = {}
        for p in range(column_bound + 1):
            qmax = row_bound if total_bound is None else min(row_bound, total_bound - p)
            if qmax < 0:
                break
            per_q = space.chain_cells(p, qmax)
            for q in range(qmax + 1):
                self.cells[(p, q)] = list(per_q.get(q, []))
        self.index = {k: {c: i for i, c in enumerate(v)} for k, v in self.cells.items()}
        self.dh: dict[tuple[int, int], IntMatrix] = {}
        self.dv: dict[tuple[int, int], IntMatrix] = {}
        for (p, q), cs in self.cells.items():
            if p > 0:
                tgt = self.index[(p - 1, q)]
                ent: dict = defaultdict(int)
                for j, cell in enumerate(cs):
                    for i in range(p + 1):
                        f = space.cell_face(p, i, cell)
                        if f is not None:
                            ent[(tgt[f], j)] += (-1) ** i
                self.dh[(p, q)] = IntMatrix((len(tgt), len(cs)), {k: v for k, v in ent.items() if v})
            if q > 0:
                tgt = self.index[(p, q - 1)]
                sign = -1 if p % 2 else 1
                ent = defaultdict(int)
                for j, cell in enumerate(cs):
                    for coef, f in space.cell_boundary(p, cell):
                        ent[(tgt[f], j)] += sign * coef
                self.dv[(p, q)] = IntMatrix((len(tgt), len(cs)), {k: v for k, v in ent.items() if v})

    def rank(self, p: int, q: int) -> int:
        return len(self.cells.get((p, q), ()))

    def check(self) -> list[str]:
        """``d_h² = 0``, ``d_v² = 0``, ``d_h d_v + d_v d_h = 0``."""
        bad = []
        for (p, q) in self.cells:
            if p >= 2 and not (self.dh[(p - 1, q)] @ self.dh[(p, q)]).is_zero():
                bad.append(f"dh^2 != 0 at {(p, q)}")
            if q >= 2 and not (self.dv[(p, q - 1)] @ self.dv[(p, q)]).is_zero():
                bad.append(f"dv^2 != 0 at {(p, q)}")
            if p >= 1 and q >= 1:
                a = self.dh[(p, q - 1)] @ self.dv[(p, q)]
                b = self.dv[(p - 1, q)] @ self.dh[(p, q)]
                if not (a + b).is_zero():
                    bad.append(f"dh dv + dv dh != 0 at {(p, q)}")
        return bad


def normalized_chains(space, column_bound: int, row_bound: int,
                      total_bound: int | None = None) -> DoubleComplex:
    return DoubleComplex(space, column_bound, row_bound, total_bound)


def totalize(dc: DoubleComplex, top_degree: int) -> ChainComplex:
    """Total complex through degree ``top_degree`` using columns ``p <= dc.P``.

    Degrees ``n <= min(dc.P, dc.Q)`` are exact; higher ones are truncated.
    """
    bases: dict[int, list] = {}
    offsets: dict[tuple[int, int], int] = {}
    for n in range(top_degree + 1):
        b = []
        for p in range(min(n, dc.P) + 1):
            q = n - p
            if (p, q) not in dc.cells:
                continue
            offsets[(p, q)] = len(b)
            b.extend((p, c) for c in dc.cells[(p, q)])
        bases[n] = b
    bounds = {}
    for n in range(1, top_degree + 1):
        ent: dict = {}
        for p in range(min(n, dc.P) + 1):
            q = n - p
            if (p, q) not in offsets:
                continue
            col0 = offsets[(p, q)]
            if p > 0 and (p - 1, q) in offsets:
                r0 = offsets[(p - 1, q)]
                for (r, c), v in dc.dh[(p, q)].entries.items():
                    ent[(r0 + r, col0 + c)] = v
            if q > 0 and (p, q - 1) in offsets:
                r0 = offsets[(p, q - 1)]
                for (r, c), v in dc.dv[(p, q)].entries.items():
                    ent[(r0 + r, col0 + c)] = v
        bounds[n] = IntMatrix((len(bases[n - 1]), len(bases[n])), ent)
    tot = ChainComplex(bases, bounds)
    tot.offsets = offsets
    return tot


def augmentation_map(dc: DoubleComplex, tot: ChainComplex, base_chains: ChainComplex | None = None) -> ChainMap:
    """Tot -> C(K(X)): column 0 maps by the inclusion of order complexes."""
    from .finite_space import order_complex
    space = dc.space
    target = base_chains or simplicial_chain_complex(order_complex(space.base))
    tindex = {n: {s: i for i, s in enumerate(b)} for n, b in target.bases.items()}
    comps = {}
    for n in range(tot.top + 1):
        ent = {}
        for j, (p, cell) in enumerate(tot.bases[n]):
            if p != 0:
                continue
            img = space.cell_augment(cell)
            if img is not None and n in tindex:
                ent[(tindex[n][img], j)] = 1
        comps[n] = IntMatrix((target.rank(n), tot.rank(n)), ent)
    return ChainMap(tot, target, comps)


def induced_tot_map(f, src_dc: DoubleComplex, src_tot: ChainComplex,
                    dst_dc: DoubleComplex, dst_tot: ChainComplex) -> ChainMap:
    """Chain map of total complexes induced by a map of simplicial spaces.

    ``f.map_cell(p, cell)`` returns the image cell or ``None`` (zero).
    """
    index = {n: {b: i for i, b in enumerate(bs)} for n, bs in dst_tot.bases.items()}
    comps = {}
    for n in range(min(src_tot.top, dst_tot.top) + 1):
        ent = {}
        for j, (p, cell) in enumerate(src_tot.bases[n]):
            img = f.map_cell(p, cell)
            if img is None:
                continue
            k = index[n].get((p, img))
            if k is None:
                raise ChainComplexError(f"image of {cell!r} is not a basis cell of the target")
            ent[(k, j)] = 1
        comps[n] = IntMatrix((dst_tot.rank(n), src_tot.rank(n)), ent)
    return ChainMap(src_tot, dst_tot, comps)


def space_map_chains(f, source: ChainComplex, target: ChainComplex) -> ChainMap:
    """Chain map of order complexes induced by a ContinuousMap."""
    index = {n: {s: i for i, s in enumerate(b)} for n, b in target.bases.items()}
    comps = {}
    for n in range(source.top + 1):
        ent = {}
        for j, s in enumerate(source.bases[n]):
            img = tuple(f(x) for x in s)
            if len(set(img)) < len(img):
                continue
            ent[(index[n][img], j)] = 1
        comps[n] = IntMatrix((target.rank(n), source.rank(n)), ent)
    return ChainMap(source, target, comps)


# -- π0 -------------------------------------------------------------------------------

def components(space) -> list[frozenset]:
    parent = {x: x for x in space.points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in space.relations:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for x in space.points:
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(g) for g in groups.values()]


def pi0_compare(source, base=None) -> bool:
    """Coequalizer of π0(U_1) ⇉ π0(U_0) compared with π0(X)."""
    base = base or source.base
    u0 = source.level_space(0)
    u1 = source.level_space(1)
    comp0 = components(u0)
    where = {x: i for i, c in enumerate(comp0) for x in c}
    parent = list(range(len(comp0)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in components(u1):
        x = next(iter(c))
        a = where[source.face_point(1, 0, x)]
        b = where[source.face_point(1, 1, x)]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    classes = {find(i) for i in range(len(comp0))}
    basecomp = components(base)
    bwhere = {x: i for i, c in enumerate(basecomp) for x in c}
    image: dict[int, int] = {}
    for i, c in enumerate(comp0):
        x = next(iter(c))
        image.setdefault(find(i), bwhere[source.augment_point(x)])
    values = [image[c] for c in classes]
    return len(set(values)) == len(values) == len(basecomp)
