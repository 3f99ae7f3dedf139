"""Graph model over Z_n plus two points at infinity.

Vertices are plain ``int`` residues or one of the two sentinels :data:`INF1`
and :data:`INF2`.  Edges are ``frozenset`` pairs.  A :class:`StructuredGraph`
keeps its vertex set explicitly so that isolated vertices survive, and may
carry a modulus that gives meaning to translation and differences.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union


class DegreeViolation(ValueError):
    """A vertex has degree 3 or more where a (1,2)-graph was expected."""


@dataclass(frozen=True, order=True)
class Infinity:
    index: int

    def __repr__(self) -> str:
        return f"inf{self.index}"


INF1 = Infinity(1)
INF2 = Infinity(2)

Vertex = Union[int, Infinity]
Edge = frozenset


def vertex_key(v: Vertex) -> tuple[int, int]:
    """Total order on vertices: residues first, then inf1, then inf2."""
    if isinstance(v, Infinity):
        return (1, v.index)
    return (0, v)


def edge(u: Vertex, v: Vertex) -> Edge:
    if u == v:
        raise ValueError(f"loop at {u!r}")
    return frozenset((u, v))


def edge_key(e: Edge) -> tuple:
    return tuple(sorted(map(vertex_key, e)))


def sorted_edge(e: Edge) -> tuple[Vertex, Vertex]:
    u, v = sorted(e, key=vertex_key)
    return u, v


def cycle_edges(cycle: Iterable[Vertex]) -> list[Edge]:
    vs = list(cycle)
    return [edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def path_edges(path: Iterable[Vertex]) -> list[Edge]:
    vs = list(path)
    return [edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


@dataclass(frozen=True)
class StructuredGraph:
    """Simple graph with an explicit vertex set and an optional modulus."""

    edges: frozenset
    vertices: frozenset = None
    modulus: int | None = None

    def __post_init__(self):
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"not an edge: {set(e)!r}")
        if self.modulus is not None:
            edges = frozenset(frozenset(_canon(x, self.modulus) for x in e) for e in edges)
            if any(len(e) != 2 for e in edges):
                raise ValueError("edge collapses to a loop under the modulus")
        ends = frozenset(x for e in edges for x in e)
        if self.vertices is None:
            verts = ends
        else:
            verts = frozenset(
                _canon(x, self.modulus) if self.modulus is not None else x for x in self.vertices
            ) | ends
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_components(
        cls,
        cycles: Iterable[Iterable[Vertex]] = (),
        paths: Iterable[Iterable[Vertex]] = (),
        modulus: int | None = None,
        vertices: Iterable[Vertex] = (),
    ) -> StructuredGraph:
        """Build a graph from cycle and path vertex lists.

        A one-vertex path stands for an isolated vertex.
        """
        es: list[Edge] = []
        vs: set[Vertex] = set(vertices)
        for c in cycles:
            c = list(c)
            vs.update(c)
            es.extend(cycle_edges(c))
        for p in paths:
            p = list(p)
            vs.update(p)
            es.extend(path_edges(p))
        if len(set(es)) != len(es):
            raise ValueError("repeated edge")
        return cls(frozenset(es), frozenset(vs), modulus)

    def degree(self) -> dict[Vertex, int]:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            for x in e:
                deg[x] += 1
        return deg

    def adjacency(self) -> dict[Vertex, list[Vertex]]:
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def union(self, other: StructuredGraph) -> StructuredGraph:
        return StructuredGraph(self.edges | other.edges, self.vertices | other.vertices, self.modulus)

    def minus(self, other: StructuredGraph | Iterable[Edge]) -> StructuredGraph:
        """Remove edges, keeping the vertex set."""
        es = other.edges if isinstance(other, StructuredGraph) else frozenset(other)
        return StructuredGraph(self.edges - es, self.vertices, self.modulus)

    def without_isolated(self) -> StructuredGraph:
        return StructuredGraph(self.edges, None, self.modulus)

    def components(self) -> tuple[list[list[Vertex]], list[list[Vertex]]]:
        """Return (cycles, paths) as vertex sequences; paths include isolated vertices.

        Raises DegreeViolation when some vertex has degree at least 3.
        """
        adj = self.adjacency()
        bad = [v for v, nb in adj.items() if len(nb) > 2]
        if bad:
            raise DegreeViolation(f"degree > 2 at {sorted(bad, key=vertex_key)!r}")
        seen: set[Vertex] = set()
        cycles: list[list[Vertex]] = []
        paths: list[list[Vertex]] = []
        for v in sorted(self.vertices, key=vertex_key):
            if v in seen or len(adj[v]) == 2:
                continue
            # path start: degree 0 or 1
            seq = [v]
            seen.add(v)
            prev, cur = None, v
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt or nxt[0] in seen:
                    break
                prev, cur = cur, nxt[0]
                seq.append(cur)
                seen.add(cur)
            paths.append(seq)
        for v in sorted(self.vertices, key=vertex_key):
            if v in seen:
                continue
            seq = [v]
            seen.add(v)
            prev, cur = None, v
            while True:
                nxt = [w for w in adj[cur] if w != prev and w not in seen]
                if not nxt:
                    break
                prev, cur = cur, min(nxt, key=vertex_key)
                seq.append(cur)
                seen.add(cur)
            cycles.append(seq)
        return cycles, paths

    def __len__(self) -> int:
        return len(self.edges)


def _canon(x: Vertex, n: int) -> Vertex:
    if isinstance(x, Infinity):
        return x
    return x % n


@dataclass(frozen=True)
class CycleStructure:
    cycles: tuple[int, ...]
    paths: tuple[int, ...] = ()

    def __post_init__(self):
        if any(c < 3 for c in self.cycles):
            raise ValueError("cycle length below 3")
        if any(p < 1 for p in self.paths):
            raise ValueError("path length below 1")
        object.__setattr__(self, "cycles", tuple(sorted(self.cycles)))
        object.__setattr__(self, "paths", tuple(sorted(self.paths)))


def cycle_structure(g: StructuredGraph) -> CycleStructure:
    """Multisets of cycle lengths and path lengths; isolated vertices are ignored."""
    cycles, paths = g.components()
    return CycleStructure(
        tuple(len(c) for c in cycles),
        tuple(len(p) - 1 for p in paths if len(p) > 1),
    )


def cs(g: StructuredGraph) -> tuple[int, ...]:
    return cycle_structure(g).cycles


class GraphClass(Enum):
    MATCHING = "matching"
    LINEAR_FOREST = "linear_forest"
    TWO_REGULAR = "two_regular"
    MIXED = "mixed"
    INVALID = "invalid"


ONE_TWO_CLASSES = frozenset({GraphClass.LINEAR_FOREST, GraphClass.TWO_REGULAR, GraphClass.MIXED})


def classify(g: StructuredGraph) -> GraphClass:
    try:
        struct = cycle_structure(g)
    except DegreeViolation:
        return GraphClass.INVALID
    if struct.cycles and struct.paths:
        return GraphClass.MIXED
    if struct.cycles:
        return GraphClass.TWO_REGULAR
    if any(p >= 2 for p in struct.paths):
        return GraphClass.LINEAR_FOREST
    return GraphClass.MATCHING


def is_one_two_graph(g: StructuredGraph) -> bool:
    return classify(g) in ONE_TWO_CLASSES


def translate(g: StructuredGraph, gamma: int) -> StructuredGraph:
    n = g.modulus
    if n is None:
        raise ValueError("translation needs a modulus")

    def shift(x: Vertex) -> Vertex:
        return x if isinstance(x, Infinity) else (x + gamma) % n

    return StructuredGraph(
        frozenset(frozenset(map(shift, e)) for e in g.edges),
        frozenset(map(shift, g.vertices)),
        n,
    )


def difference_list(g: StructuredGraph) -> Counter:
    """Both signed differences of every edge between two residues."""
    n = g.modulus
    if n is None:
        raise ValueError("differences need a modulus")
    out: Counter = Counter()
    for e in g.edges:
        x, y = tuple(e)
        if isinstance(x, Infinity) or isinstance(y, Infinity):
            continue
        out[(x - y) % n] += 1
        out[(y - x) % n] += 1
    return out


@dataclass(frozen=True)
class Decomposition:
    """Ordered factors of K_v (odd v) or of K_v minus a perfect matching (even v)."""

    order: int
    factors: tuple[StructuredGraph, ...]
    one_factor: StructuredGraph | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def regime(self) -> str:
        return "odd" if self.order % 2 else "even"

    def vertex_set(self) -> frozenset:
        vs: set[Vertex] = set()
        for f in self.factors:
            vs |= f.vertices
        if self.one_factor is not None:
            vs |= self.one_factor.vertices
        return frozenset(vs)


@dataclass
class FactorReport:
    index: int
    edges: int
    cycle_structure: CycleStructure | None
    spanning_two_regular: bool


@dataclass
class Report:
    order: int
    regime: str
    vertex_count: int
    disjoint: bool
    overlaps: list[Edge] = field(default_factory=list)
    foreign_edges: list[Edge] = field(default_factory=list)
    leftover: list[Edge] = field(default_factory=list)
    leftover_is_perfect_matching: bool = False
    one_factor_consistent: bool | None = None
    factors: list[FactorReport] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def cycle_structures(self) -> list[tuple[int, ...] | None]:
        return [f.cycle_structure.cycles if f.cycle_structure else None for f in self.factors]


def is_perfect_matching(edges: Iterable[Edge], vertices: Iterable[Vertex]) -> bool:
    vs = set(vertices)
    covered: Counter = Counter(x for e in edges for x in e)
    return set(covered) == vs and all(c == 1 for c in covered.values())


def verify_decomposition(d: Decomposition, two_factorization: bool = True) -> Report:
    """Recompute everything about ``d`` from its edge sets alone.

    With ``two_factorization`` each factor must also be a spanning 2-regular graph.
    """
    vs = d.vertex_set()
    rep = Report(order=d.order, regime=d.regime, vertex_count=len(vs), disjoint=True)
    if len(vs) != d.order:
        rep.errors.append(f"vertex count {len(vs)} != order {d.order}")

    owner: dict[Edge, int] = {}
    for i, f in enumerate(d.factors):
        for e in f.edges:
            if e in owner:
                rep.disjoint = False
                rep.overlaps.append(e)
            else:
                owner[e] = i
    if not rep.disjoint:
        rep.errors.append(f"{len(rep.overlaps)} edges lie in more than one factor")

    complete = {frozenset(p) for p in itertools.combinations(vs, 2)}
    rep.foreign_edges = [e for e in owner if e not in complete]
    rep.leftover = sorted((e for e in complete if e not in owner), key=edge_key)
    rep.leftover_is_perfect_matching = is_perfect_matching(rep.leftover, vs)
    if d.order % 2:
        if rep.leftover:
            rep.errors.append(f"{len(rep.leftover)} edges of K_{d.order} are uncovered")
    elif not rep.leftover_is_perfect_matching:
        rep.errors.append("uncovered edges do not form a perfect matching")
    if d.one_factor is not None:
        rep.one_factor_consistent = set(rep.leftover) == set(d.one_factor.edges)

    for i, f in enumerate(d.factors):
        try:
            struct = cycle_structure(f)
        except DegreeViolation:
            struct = None
        deg = f.degree()
        spanning = (
            struct is not None
            and f.vertices == vs
            and all(deg[v] == 2 for v in vs)
        )
        rep.factors.append(FactorReport(i, len(f.edges), struct, spanning))
        if two_factorization and not spanning:
            rep.errors.append(f"factor {i} is not a spanning 2-regular graph")
    return rep

