"""Doubling a graceful labeling into a pyramidal 2-factorization.

From a graceful labeling T of [k-1 | L] on {0..a-1} the starter
G = T + (T + a) + {inf1 p0, inf1 p0+a, p1 p1+a} over Z_2a has the x-cycle
(x = 2k + 1) and two copies of each cycle of L; its a distinct translates
factor K_{2a+1}.  Inserting inf2 on the edge {p1, p1+a} gives the even
variant on K_{2a+2} minus a 1-factor.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import (
    INF1,
    INF2,
    Decomposition,
    StructuredGraph,
    cs,
    difference_list,
    edge,
    edge_key,
    is_one_two_graph,
    translate,
    verify_decomposition,
)
from .graceful import GracefulLabeling, verify_graceful


class ConstructionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class MatchingWitness:
    """Data for the matching property: M inside orbit[g_idx], halving of orbit[gp_idx]."""

    M: StructuredGraph
    g_idx: int
    gp_idx: int
    halving: StructuredGraph


@dataclass(frozen=True)
class PyramidalSolution:
    epsilon: int
    a: int
    k: int
    L: tuple[int, ...]
    starter: StructuredGraph
    orbit: Decomposition
    witness: MatchingWitness
    one_factor: StructuredGraph | None = None

    @property
    def x(self) -> int:
        return 2 * self.k + self.epsilon

    @property
    def modulus(self) -> int:
        return 2 * self.a

    @property
    def base(self) -> StructuredGraph:
        """The starter before inserting inf2: the 2-path through inf2 becomes one edge again."""
        if self.epsilon == 1:
            return self.starter
        ends = [next(iter(e - {INF2})) for e in self.starter.edges if INF2 in e]
        es = {e for e in self.starter.edges if INF2 not in e} | {edge(*ends)}
        return StructuredGraph(frozenset(es), None, self.modulus)


def check_starter(f: StructuredGraph, a: int) -> bool:
    """Fixed by +a and every nonzero residue of Z_2a occurs as a difference."""
    if f.modulus != 2 * a:
        f = StructuredGraph(f.edges, f.vertices, 2 * a)
    if translate(f, a) != f:
        return False
    diffs = difference_list(f)
    return all(diffs[r] > 0 for r in range(1, 2 * a))


def orbit_of(starter: StructuredGraph, a: int, one_factor: StructuredGraph | None = None) -> Decomposition:
    """The a distinct translates G+1, ..., G+a; the last one is G itself."""
    factors = [translate(starter, i) for i in range(1, a + 1)]
    order = 2 * a + (2 if one_factor is not None else 1)
    return Decomposition(order, factors, one_factor)


def double(t: GracefulLabeling, epsilon: int) -> PyramidalSolution:
    if epsilon not in (1, 2):
        raise ValueError("epsilon must be 1 or 2")
    if not verify_graceful(t):
        raise ConstructionFailed("input labeling is not graceful")
    if not t.shape.L:
        raise ConstructionFailed("need at least one cycle")
    k = t.shape.k + 1
    L = t.shape.L
    a = k + sum(L)
    n = 2 * a
    p0, p1 = t.path_endpoints

    tgraph = t.graph
    T = StructuredGraph(tgraph.edges, tgraph.vertices, n)
    Ta = translate(T, a)
    E = {edge(INF1, p0), edge(INF1, p0 + a), edge(p1, p1 + a)}
    G = StructuredGraph(T.edges | Ta.edges | E, None, n)

    one_factor = None
    starter = G
    if epsilon == 2:
        e0 = edge(p1, p1 + a)
        starter = StructuredGraph((G.edges - {e0}) | {edge(p1, INF2), edge(INF2, p1 + a)}, None, n)
        one_factor = StructuredGraph(
            {edge(INF1, INF2)} | {edge((p1 + i) % n, (p1 + a + i) % n) for i in range(a)}, None, n
        )

    # witness: Q on the x-cycle through inf1, one edge from each cycle of T avoiding 0
    Q = edge(INF1, p0) if 1 <= p0 <= a - 1 else edge(INF1, p0 + a)
    N = []
    for c in t.cycles:
        ring = [edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]
        N.append(min((e for e in ring if 0 not in e), key=edge_key))
    M = StructuredGraph({Q, *N}, None, n)
    R = StructuredGraph(
        {e for c in t.cycles for e in StructuredGraph.from_components([c]).edges}, None, n
    )
    H = StructuredGraph(R.edges | {Q}, None, n)
    halving = translate(H, a + 1)
    witness = MatchingWitness(M, g_idx=a - 1, gp_idx=0, halving=halving)

    orbit = orbit_of(starter, a, one_factor)
    sol = PyramidalSolution(epsilon, a, k, L, starter, orbit, witness, one_factor)
    _recheck(sol, G)
    return sol


def _recheck(sol: PyramidalSolution, base: StructuredGraph) -> None:
    a = sol.a
    if translate(sol.starter, a) != sol.starter:
        raise ConstructionFailed("starter not fixed by +a")
    if sol.base != base or not check_starter(base, a):
        raise ConstructionFailed("differences do not cover Z_2a \\ {0}")
    rep = verify_decomposition(sol.orbit)
    if not rep.valid:
        raise ConstructionFailed("; ".join(rep.errors))
    if sol.epsilon == 2 and set(rep.leftover) != set(sol.one_factor.edges):
        raise ConstructionFailed("leftover differs from the constructed 1-factor")
    want = tuple(sorted((sol.x, *sol.L, *sol.L)))
    if any(s != want for s in rep.cycle_structures()):
        raise ConstructionFailed(f"factor cycle structure differs from {want}")
    if not check_matching_property(sol.orbit, sol.witness, sol.L):
        raise ConstructionFailed("matching property witness rejected")


def is_halving(h: StructuredGraph, g: StructuredGraph, L: Sequence[int]) -> bool:
    """h is a subgraph of g with cs(h) = cs(g - h) = L."""
    if not h.edges <= g.edges:
        return False
    want = tuple(sorted(L))
    try:
        return cs(h) == want and cs(g.minus(h)) == want
    except ValueError:
        return False


def check_matching_property(orbit: Decomposition, w: MatchingWitness, L: Sequence[int]) -> bool:
    """Recheck the matching property for the witness against the orbit."""
    nf = len(orbit.factors)
    if not (0 <= w.g_idx < nf and 0 <= w.gp_idx < nf) or w.g_idx == w.gp_idx:
        return False
    G = orbit.factors[w.g_idx]
    Gp = orbit.factors[w.gp_idx]
    M = w.M
    if not M.edges <= G.edges:
        return False
    touched = Counter(x for e in M.edges for x in e)
    if any(c > 1 for c in touched.values()):
        return False
    if not is_halving(w.halving, Gp, L):
        return False
    if M.edges & w.halving.edges:
        return False
    want = tuple(sorted(L))
    merged = w.halving.union(M)
    try:
        if cs(G.minus(M)) != want or cs(merged) != want:
            return False
    except ValueError:
        return False
    return is_one_two_graph(merged)
