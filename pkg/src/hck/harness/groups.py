"""Finite groups by multiplication table, and the bar construction of a discrete group."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Mapping

from ..simplicial import LevelSSet


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple
    table: tuple  # table[i][j] = index of elements[i] * elements[j]

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise GroupError("a group needs at least one element")
        if len(set(self.elements)) != n:
            raise GroupError("duplicate group elements")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupError(f"multiplication table must be {n}x{n}")
        if any(not (0 <= v < n) for r in self.table for v in r):
            raise GroupError("table entries must index elements")
        t = self.table
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"not associative at {self.elements[a]!r}, {self.elements[b]!r}, "
                                 f"{self.elements[c]!r}")
        units = [e for e in range(n) if all(t[e][a] == a == t[a][e] for a in range(n))]
        if not units:
            raise GroupError("no identity element")
        e = units[0]
        for a in range(n):
            if not any(t[a][b] == e for b in range(n)):
                raise GroupError(f"{self.elements[a]!r} has no inverse")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        t = self.table
        return next(e for e in range(self.order) if all(t[e][a] == a for a in range(self.order)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def to_json(self) -> dict:
        return {"elements": [str(x) for x in self.elements], "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteGroup":
        if "elements" not in data or "table" not in data:
            raise GroupError("group JSON needs 'elements' and 'table'")
        elems = tuple(data["elements"])
        index = {x: i for i, x in enumerate(elems)}
        rows = []
        for i, r in enumerate(data["table"]):
            if not isinstance(r, list):
                raise GroupError(f"table[{i}] must be a list")
            rows.append(tuple(v if isinstance(v, int) and not isinstance(v, bool) else index.get(v, -1)
                              for v in r))
        return cls(elems, tuple(rows))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(range(n)), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group(k: int = 3) -> FiniteGroup:
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[v]] for v in range(k))] for q in perms) for p in perms)
    return FiniteGroup(tuple("".join(map(str, p)) for p in perms), table)


def abelianization_order(g: FiniteGroup) -> int:
    """|G / [G, G]|."""
    n, t = g.order, g.table
    inv = [next(b for b in range(n) if t[a][b] == g.identity) for a in range(n)]
    comm = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(n) for b in range(n)}
    sub = set(comm) | {g.identity}
    while True:
        grown = sub | {t[a][b] for a in sub for b in sub}
        if grown == sub:
            break
        sub = grown
    return n // len(sub)


def bar_construction(g: FiniteGroup) -> LevelSSet:
    """BG: n-simplices are n-tuples of element indices."""
    e = g.identity

    def face(n, i, x):
        if i == 0:
            return x[1:]
        if i == n:
            return x[:-1]
        return x[:i - 1] + (g.mul(x[i - 1], x[i]),) + x[i + 1:]

    return LevelSSet(lambda n: list(product(range(g.order), repeat=n)), face,
                     lambda n, i, x: x[:i] + (e,) + x[i:], name="BG")


def discrete_space_of(g: FiniteGroup):
    from ..finite_space import FiniteSpace
    return FiniteSpace([str(x) for x in g.elements], name="G")
