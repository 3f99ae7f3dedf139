"""Graceful labelings of zillion graphs [k | L].

A labeling places one path of length k (a lone vertex when k = 0) and cycles
of lengths L on the labels 0..a, a = k + sum(L), so that the absolute edge
differences are exactly 1..a.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .core import StructuredGraph, cycle_edges, path_edges

A_EXHAUSTIVE = 12

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class ZillionShape:
    k: int
    L: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "L", tuple(sorted(self.L)))
        if self.k < 0:
            raise ValueError("path length must be >= 0")
        if any(l < 3 for l in self.L):
            raise ValueError("cycle lengths must be >= 3")

    @property
    def a(self) -> int:
        return self.k + sum(self.L)


@dataclass(frozen=True)
class GracefulLabeling:
    shape: ZillionShape
    path: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def path_endpoints(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def graph(self) -> StructuredGraph:
        return StructuredGraph.from_components(self.cycles, [self.path])

    def to_json(self) -> dict:
        return {
            "k": self.shape.k,
            "L": list(self.shape.L),
            "path": list(self.path),
            "cycles": [list(c) for c in self.cycles],
        }

    @classmethod
    def from_json(cls, obj: dict) -> GracefulLabeling:
        return cls(
            ZillionShape(int(obj["k"]), tuple(obj["L"])),
            tuple(obj["path"]),
            tuple(tuple(c) for c in obj["cycles"]),
        )


def verify_graceful(t: GracefulLabeling) -> bool:
    a = t.shape.a
    labels = list(t.path) + [v for c in t.cycles for v in c]
    if sorted(labels) != list(range(a + 1)):
        return False
    if len(t.path) != t.shape.k + 1:
        return False
    if sorted(len(c) for c in t.cycles) != list(t.shape.L):
        return False
    edges = path_edges(t.path)
    for c in t.cycles:
        if len(c) < 3:
            return False
        edges.extend(cycle_edges(c))
    if len(set(edges)) != len(edges):
        return False
    diffs = sorted(abs(u - v) for u, v in map(tuple, edges))
    return diffs == list(range(1, a + 1))


@dataclass
class GracefulResult:
    status: str
    labeling: GracefulLabeling | None = None
    nodes: int = 0
    restarts: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _Budget(Exception):
    pass


@dataclass
class _Search:
    a: int
    k: int
    remaining: Counter
    rng: random.Random | None
    limit: int
    nodes: int = 0
    deg: list = field(default_factory=list)
    other: list = field(default_factory=list)
    plen: list = field(default_factory=list)
    chosen: list = field(default_factory=list)

    def __post_init__(self):
        n = self.a + 1
        self.deg = [0] * n
        self.other = list(range(n))
        self.plen = [0] * n

    def run(self) -> bool:
        return self._place(self.a)

    def _place(self, d: int) -> bool:
        if d == 0:
            return not +self.remaining
        self.nodes += 1
        if self.nodes > self.limit:
            raise _Budget
        cands = range(0, self.a - d + 1)
        if self.rng is not None:
            cands = list(cands)
            self.rng.shuffle(cands)
        deg, other, plen = self.deg, self.other, self.plen
        for u in cands:
            w = u + d
            if deg[u] == 2 or deg[w] == 2:
                continue
            if other[u] == w:
                # closes a cycle
                length = plen[u] + 1
                if self.remaining[length] <= 0:
                    continue
                self.remaining[length] -= 1
                deg[u] += 1
                deg[w] += 1
                self.chosen.append((u, w))
                if self._place(d - 1):
                    return True
                self.chosen.pop()
                deg[u] -= 1
                deg[w] -= 1
                self.remaining[length] += 1
                continue
            x, y = other[u], other[w]
            length = plen[u] + plen[w] + 1
            if length > self.k and length >= self._longest_open():
                continue
            saved = (other[x], other[y], plen[x], plen[y])
            other[x], other[y] = y, x
            plen[x] = plen[y] = length
            deg[u] += 1
            deg[w] += 1
            self.chosen.append((u, w))
            if self._place(d - 1):
                return True
            self.chosen.pop()
            deg[u] -= 1
            deg[w] -= 1
            other[x], other[y], plen[x], plen[y] = saved
        return False

    def _longest_open(self) -> int:
        return max((l for l, c in self.remaining.items() if c > 0), default=0)


def _assemble(shape: ZillionShape, pairs: Sequence[tuple[int, int]]) -> GracefulLabeling:
    g = StructuredGraph(frozenset(frozenset(p) for p in pairs), frozenset(range(shape.a + 1)))
    cycles, paths = g.components()
    (path,) = paths
    return GracefulLabeling(shape, tuple(path), tuple(tuple(c) for c in cycles))


def search_graceful(
    shape: ZillionShape,
    budget: int = 1_000_000,
    seed: int | None = 0,
    a_exhaustive: int = A_EXHAUSTIVE,
) -> GracefulResult:
    """Backtracking search, largest difference first.

    For a <= a_exhaustive a single complete sweep runs in fixed order, so a
    negative answer is a proof of nonexistence.  Larger shapes use randomized
    value ordering with growing restart limits and never report exhaustion.
    """
    a = shape.a
    exhaustive = a <= a_exhaustive
    rng = None if exhaustive else random.Random(seed)
    spent = 0
    restarts = 0
    limit = budget if exhaustive else max(1000, 50 * a)
    while spent < budget:
        run_limit = min(limit, budget - spent)
        s = _Search(a, shape.k, Counter(shape.L), rng, run_limit)
        try:
            ok = s.run()
        except _Budget:
            spent += s.nodes
            if exhaustive:
                return GracefulResult(BUDGET_EXCEEDED, None, spent, restarts)
            restarts += 1
            limit *= 2
            continue
        spent += s.nodes
        if ok:
            t = _assemble(shape, s.chosen)
            assert verify_graceful(t)
            return GracefulResult(FOUND, t, spent, restarts)
        # a completed sweep above the threshold is not reported as a proof
        return GracefulResult(EXHAUSTED if exhaustive else BUDGET_EXCEEDED, None, spent, restarts)
    return GracefulResult(BUDGET_EXCEEDED, None, spent, restarts)
