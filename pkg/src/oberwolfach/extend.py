"""Extending a (1,2)-decomposition of K*_m to a 2-factorization of K*_n.

Every part F_i keeps its cycles; its open fragments (paths and uncovered old
vertices) are strung together with all n - m new vertices into one new cycle.

The construction attaches the new vertices one at a time, in the spirit of a
vertex detachment.  Before attaching vertex w each color i has some open
paths whose ends still need an edge into the set of unattached new vertices.
An end lives either at an old vertex (still missing degree in color i) or at
an attached new vertex (an edge to "some later new vertex" was promised).
Attaching w means: pick exactly one color for each old vertex and each
earlier new vertex (that is the colored edge to w), with every color used at
most twice; the unused degree of w in color i becomes promises of its own.
A bounded flow chooses the step so that for every color the open ends never
exceed twice the number of unattached vertices, and no cycle closes early.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .core import (
    Decomposition,
    Infinity,
    Report,
    StructuredGraph,
    Vertex,
    edge,
    is_perfect_matching,
    verify_decomposition,
    vertex_key,
)
from .halving import OneTwoDecomposition, check_extension_condition

DEFAULT_BUDGET = 1_000_000
DEFAULT_RESTARTS = 64


class Infeasible(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ColorPlan:
    m: int
    n: int
    s: tuple[int, ...]
    f: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.s)


def color_plan(d: OneTwoDecomposition, n: int | None = None) -> ColorPlan:
    """Colors 1..b are the parts (s = 2); for even m one more color is the removed 1-factor (s = 1)."""
    m = d.order
    b = len(d.parts)
    if n is None:
        n = 2 * b + d.epsilon
    s = [2] * b
    f = [len(p.edges) for p in d.parts]
    if d.epsilon == 2:
        s.append(1)
        f.append(m // 2)
    return ColorPlan(m, n, tuple(s), tuple(f))


def check_hj(plan: ColorPlan, max_degrees: Sequence[int]) -> bool:
    """The three extendability conditions, color by color."""
    if sum(plan.s) != plan.n - 1 or not 1 <= plan.m <= plan.n:
        return False
    for si, fi, di in zip(plan.s, plan.f, max_degrees, strict=True):
        if Fraction(fi) < si * (plan.m - Fraction(plan.n, 2)):
            return False
        if (si * plan.n) % 2:
            return False
        if di > si:
            return False
    return True


@dataclass
class FragmentSet:
    cycles: list[list[Vertex]]
    open_fragments: list[list[Vertex]]
    new_vertices: int

    @property
    def feasible(self) -> bool:
        return self.new_vertices >= len(self.open_fragments)


def fragments(part: StructuredGraph, old_vertices: int | Iterable[Vertex], n: int) -> FragmentSet:
    """Closed cycles and open fragments (paths, then uncovered old vertices).

    ``old_vertices`` is the old vertex set, or an order m meaning 0..m-1.
    """
    old = frozenset(range(old_vertices)) if isinstance(old_vertices, int) else frozenset(old_vertices)
    g = StructuredGraph(part.edges, old)
    cycles, paths = g.components()
    return FragmentSet(cycles, paths, n - len(old))


@dataclass
class _ColorState:
    need: dict  # vertex -> open ends at that vertex (1 or 2)
    other: dict  # end vertex -> other end of its path
    ends: int = 0

    @property
    def paths(self) -> int:
        return self.ends // 2


@dataclass
class ExtendStats:
    restarts: int = 0
    placements: int = 0
    seed: int | None = None


@dataclass
class _Run:
    colors: list[_ColorState]
    new_edges: list[list[tuple[Vertex, Vertex]]]
    matching: list[tuple[Vertex, Vertex]] = field(default_factory=list)


def _new_labels(old: frozenset, count: int) -> list[int]:
    start = max((v for v in old if not isinstance(v, Infinity)), default=-1) + 1
    return list(range(start, start + count))


def _initial_state(d: OneTwoDecomposition, old: frozenset) -> list[_ColorState]:
    states = []
    for part in d.parts:
        g = StructuredGraph(part.edges, old)
        _, paths = g.components()
        need: dict = {}
        other: dict = {}
        for p in paths:
            u, w = p[0], p[-1]
            if u == w:
                need[u] = 2
            else:
                need[u] = need.get(u, 0) + 1
                need[w] = need.get(w, 0) + 1
            other[u], other[w] = w, u
        states.append(_ColorState(need, other, sum(need.values())))
    return states


def _step_flow(
    resources: list[Vertex],
    colors: list[_ColorState],
    remaining: int,
    rng: np.random.Generator,
) -> dict[Vertex, int] | None:
    """Assign each resource vertex one color, as a flow with lower bounds."""
    final = remaining == 1
    b = len(colors)
    lo = []
    for st in colors:
        if final:
            lo.append(2)
        else:
            lo.append(max(0, math.ceil((st.ends - 2 * remaining + 4) / 2)))
    # nodes: S, T, S*, T*, resources, path nodes, colors
    S, T, SS, TT = 0, 1, 2, 3
    res_index = {r: 4 + i for i, r in enumerate(resources)}
    path_index: dict = {}
    arcs: list[tuple[int, int, int]] = []
    base = 4 + len(resources)
    color_node = [base + i for i in range(b)]
    nxt = base + b
    res_arcs: list[tuple[int, int, int, Vertex]] = []
    for i, st in enumerate(colors):
        for v in st.need:
            if v not in res_index:
                continue
            key = (i, frozenset((v, st.other[v])))
            if key not in path_index:
                path_index[key] = nxt
                nxt += 1
                arcs.append((path_index[key], color_node[i], 2 if final else 1))
            res_arcs.append((res_index[v], path_index[key], i, v))
    for u, w, _, _ in res_arcs:
        arcs.append((u, w, 1))
    for r in resources:
        arcs.append((SS, res_index[r], 1))
    arcs.append((S, TT, len(resources)))
    for i in range(b):
        if lo[i] > 2:
            return None
        if 2 - lo[i] > 0:
            arcs.append((color_node[i], T, 2 - lo[i]))
        if lo[i]:
            arcs.append((color_node[i], TT, lo[i]))
    total_lo = sum(lo)
    if total_lo:
        arcs.append((SS, T, total_lo))
    arcs.append((T, S, len(resources) + total_lo + 1))

    nodes = nxt
    perm = rng.permutation(nodes)
    rows = np.fromiter((perm[a] for a, _, _ in arcs), dtype=np.int32, count=len(arcs))
    cols = np.fromiter((perm[c] for _, c, _ in arcs), dtype=np.int32, count=len(arcs))
    caps = np.fromiter((c for _, _, c in arcs), dtype=np.int32, count=len(arcs))
    graph = csr_matrix((caps, (rows, cols)), shape=(nodes, nodes))
    result = maximum_flow(graph, int(perm[SS]), int(perm[TT]), method="dinic")
    if result.flow_value != len(resources) + total_lo:
        return None
    flow = result.flow.tocsr()
    ru = perm[np.fromiter((u for u, _, _, _ in res_arcs), dtype=np.int64, count=len(res_arcs))]
    rw = perm[np.fromiter((w for _, w, _, _ in res_arcs), dtype=np.int64, count=len(res_arcs))]
    used = np.asarray(flow[ru, rw]).ravel() > 0
    choice: dict[Vertex, int] = {}
    for (_, _, i, v), hit in zip(res_arcs, used):
        if hit:
            choice[v] = i
    if len(choice) != len(resources):
        return None
    return choice


def _attach(run: _Run, w: Vertex, choice: dict[Vertex, int], final: bool) -> None:
    by_color: dict[int, list[Vertex]] = {i: [] for i in range(len(run.colors))}
    for v, i in choice.items():
        by_color[i].append(v)
    for i, st in enumerate(run.colors):
        picked = by_color[i]
        ends = []
        for v in picked:
            o = st.other[v]
            run.new_edges[i].append((v, w))
            st.need[v] -= 1
            st.ends -= 1
            if st.need[v] == 0:
                del st.need[v]
                del st.other[v]
                ends.append(o)
            else:
                ends.append(v)
        fresh = 2 - len(picked)
        st.ends += fresh
        if len(picked) == 2:
            o1, o2 = ends
            if final:
                continue
            st.other[o1], st.other[o2] = o2, o1
        elif len(picked) == 1:
            (o1,) = ends
            st.need[w] = 1
            st.other[o1], st.other[w] = w, o1
        else:
            st.need[w] = 2
            st.other[w] = w


def _attempt(
    d: OneTwoDecomposition, old: frozenset, new: list[int], rng: np.random.Generator, stats: ExtendStats, budget: int
) -> _Run | None:
    run = _Run(_initial_state(d, old), [[] for _ in d.parts])
    partner: dict[Vertex, Vertex] = {}
    if d.epsilon == 2:
        order = list(new)
        pyr = random.Random(int(rng.integers(1 << 31)))
        pyr.shuffle(order)
        for u, w in zip(order[::2], order[1::2]):
            partner[u], partner[w] = w, u
            run.matching.append((u, w))
    old_sorted = sorted(old, key=vertex_key)
    for j, w in enumerate(new):
        remaining = len(new) - j
        resources = old_sorted + [p for p in new[:j] if partner.get(w) != p]
        choice = _step_flow(resources, run.colors, remaining, rng)
        stats.placements += len(resources)
        if choice is None or stats.placements > budget:
            return None
        _attach(run, w, choice, remaining == 1)
    return run


def extend(
    d: OneTwoDecomposition,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    restarts: int = DEFAULT_RESTARTS,
    stats: ExtendStats | None = None,
) -> Decomposition:
    """Extend ``d`` to a 2-factorization of K*_n, n = 2|parts| + epsilon.

    Factor i contains part i.  Raises Infeasible when the extension
    condition fails and BudgetExceeded when no run succeeds.
    """
    stats = stats if stats is not None else ExtendStats()
    stats.seed = seed
    old = d.vertex_set()
    m = d.order
    b = len(d.parts)
    n = 2 * b + d.epsilon
    if len(old) != m:
        raise Infeasible(f"{len(old)} vertices for order {m}")
    if n <= m:
        raise Infeasible(f"target order {n} does not exceed {m}")
    if not check_extension_condition(d):
        raise Infeasible("extension condition fails")
    plan = color_plan(d, n)
    degs = [max(p.degree().values(), default=0) for p in d.parts]
    if d.epsilon == 2:
        degs.append(1)
    if not check_hj(plan, degs):
        raise Infeasible("degree conditions fail")
    for st in _initial_state(d, old):
        if st.ends == 0 and n - m < 3:
            raise Infeasible("a closed part needs at least three new vertices")
    new = _new_labels(old, n - m)
    for attempt in range(restarts):
        stats.restarts = attempt
        rng = np.random.default_rng([seed, attempt])
        spent_before = stats.placements
        run = _attempt(d, old, new, rng, stats, spent_before + budget)
        if run is None:
            continue
        out = _assemble(d, run, n)
        rep = verify_extension(d, out)
        if rep.valid:
            return out
    raise BudgetExceeded(f"no extension after {restarts} runs")


def _assemble(d: OneTwoDecomposition, run: _Run, n: int) -> Decomposition:
    factors = []
    for part, extra in zip(d.parts, run.new_edges):
        es = set(part.edges) | {edge(u, v) for u, v in extra}
        factors.append(StructuredGraph(frozenset(es)))
    one = None
    if d.epsilon == 2:
        es = set(d.one_factor.edges) | {edge(u, v) for u, v in run.matching}
        one = StructuredGraph(frozenset(es))
    return Decomposition(n, factors, one)


@dataclass
class ExtensionReport:
    base: Report
    containment: list[int] = field(default_factory=list)
    cycle_count: list[int] = field(default_factory=list)
    cycles_kept: list[int] = field(default_factory=list)
    old_edges_reused: list = field(default_factory=list)
    one_factor_extended: bool | None = None

    @property
    def valid(self) -> bool:
        return (
            self.base.valid
            and not self.containment
            and not self.cycle_count
            and not self.cycles_kept
            and not self.old_edges_reused
            and self.one_factor_extended is not False
        )

    @property
    def errors(self) -> list[str]:
        out = list(self.base.errors)
        if self.containment:
            out.append(f"parts not contained in their factors: {self.containment}")
        if self.cycle_count:
            out.append(f"factors without exactly one extra cycle: {self.cycle_count}")
        if self.cycles_kept:
            out.append(f"factors that break a part's cycle: {self.cycles_kept}")
        if self.old_edges_reused:
            out.append(f"{len(self.old_edges_reused)} new edges join two old vertices")
        if self.one_factor_extended is False:
            out.append("removed 1-factor does not extend the old one")
        return out


def verify_extension(d: OneTwoDecomposition, dplus: Decomposition) -> ExtensionReport:
    """Check dplus against d from edge sets: containment, one new cycle each, and validity."""
    rep = ExtensionReport(verify_decomposition(dplus))
    old = d.vertex_set()
    if len(dplus.factors) != len(d.parts):
        rep.containment.append(-1)
        return rep
    for i, (part, fac) in enumerate(zip(d.parts, dplus.factors)):
        if not part.edges <= fac.edges:
            rep.containment.append(i)
            continue
        part_cycles, _ = StructuredGraph(part.edges).components()
        try:
            fac_cycles, _ = fac.components()
        except ValueError:
            rep.cycle_count.append(i)
            continue
        if len(fac_cycles) != len(part_cycles) + 1:
            rep.cycle_count.append(i)
        fac_sets = {frozenset(c) for c in fac_cycles}
        if any(frozenset(c) not in fac_sets for c in part_cycles):
            rep.cycles_kept.append(i)
        for e in fac.edges - part.edges:
            if e <= old:
                rep.old_edges_reused.append(e)
    if d.epsilon == 2:
        rep.one_factor_extended = (
            dplus.one_factor is not None
            and d.one_factor is not None
            and d.one_factor.edges <= dplus.one_factor.edges
            and is_perfect_matching(dplus.one_factor.edges, dplus.vertex_set())
        )
    return rep


def extend_exhaustive(d: OneTwoDecomposition, limit: int = 50_000_000) -> Decomposition | None:
    """Complete backtracking over every colouring of the connector edges.

    Returns an extension or None when none exists.  Meant for n <= 11.
    Independent of :func:`extend`: it colours edges directly and checks the
    final structure from scratch.
    """
    old = d.vertex_set()
    b = len(d.parts)
    eps = d.epsilon
    n = 2 * b + eps
    if n <= d.order:
        return None
    new = _new_labels(old, n - d.order)
    verts = sorted(old, key=vertex_key) + new
    idx = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    ncol = b + (1 if eps == 2 else 0)
    cap = [2] * b + ([1] if eps == 2 else [])
    deg = [[0] * ncol for _ in range(nv)]
    # union-find per colour with undo, to forbid early cycles
    parent = [[i for i in range(nv)] for _ in range(ncol)]
    for c, part in enumerate(d.parts):
        for e in part.edges:
            u, w = (idx[x] for x in e)
            deg[u][c] += 1
            deg[w][c] += 1
            ru, rw = _find(parent[c], u), _find(parent[c], w)
            if ru != rw:
                parent[c][ru] = rw
    if eps == 2:
        for e in d.one_factor.edges:
            for x in e:
                deg[idx[x]][b] += 1
    if any(deg[v][c] > cap[c] for v in range(nv) for c in range(ncol)):
        return None
    todo = [
        (idx[u], idx[w])
        for u, w in itertools.combinations(verts, 2)
        if not (u in old and w in old)
    ]
    todo.sort(key=lambda e: (max(e), min(e)))
    colour = [0] * len(todo)
    # a colour may close a cycle only with its very last edge
    open_total = [sum(1 for v in range(nv) if deg[v][c] < cap[c]) for c in range(b)]
    nodes = [0]

    # todo index where each new vertex's block starts; at such points every
    # edge among the vertices before it is coloured
    block_start = {}
    for k, (u, w) in enumerate(todo):
        block_start.setdefault(max(u, w), k)
    boundary = {k: nv - v for v, k in block_start.items()}
    boundary[len(todo)] = 0

    def paths_fit(k: int) -> bool:
        # each open path among decided vertices needs its own later new vertex
        later = boundary[k]
        done = nv - later
        for c in range(b):
            roots = {_find(parent[c], v) for v in range(done) if deg[v][c] < cap[c]}
            if len(roots) > later:
                return False
        return True

    def rec(k: int) -> bool:
        nodes[0] += 1
        if nodes[0] > limit:
            raise BudgetExceeded("exhaustive oracle limit reached")
        if k in boundary and not paths_fit(k):
            return False
        if k == len(todo):
            return True
        u, w = todo[k]
        for c in range(ncol):
            if deg[u][c] >= cap[c] or deg[w][c] >= cap[c]:
                continue
            undo = None
            if c < b:
                ru, rw = _find(parent[c], u), _find(parent[c], w)
                if ru == rw:
                    if open_total[c] != 2:
                        continue
                else:
                    parent[c][ru] = rw
                    undo = ru
            deg[u][c] += 1
            deg[w][c] += 1
            if c < b:
                open_total[c] -= (deg[u][c] == cap[c]) + (deg[w][c] == cap[c])
            colour[k] = c
            if rec(k + 1):
                return True
            if c < b:
                open_total[c] += (deg[u][c] == cap[c]) + (deg[w][c] == cap[c])
            deg[u][c] -= 1
            deg[w][c] -= 1
            if undo is not None:
                parent[c][undo] = undo
        return False

    if not rec(0):
        return None
    extra: list[list] = [[] for _ in range(ncol)]
    for (u, w), c in zip(todo, colour):
        extra[c].append(edge(verts[u], verts[w]))
    factors = [StructuredGraph(frozenset(set(p.edges) | set(extra[c]))) for c, p in enumerate(d.parts)]
    one = None
    if eps == 2:
        one = StructuredGraph(frozenset(set(d.one_factor.edges) | set(extra[b])))
    return Decomposition(n, factors, one)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x
