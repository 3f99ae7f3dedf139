"""Halvings, (1,2)-decompositions and the matching-property redistribution."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    Decomposition,
    StructuredGraph,
    Vertex,
    cs,
    cycle_edges,
    edge_key,
    is_one_two_graph,
    translate,
    verify_decomposition,
    vertex_key,
)
from .pyramidal import MatchingWitness, PyramidalSolution, check_matching_property, is_halving


class ShapeMismatch(ValueError):
    pass


class WitnessInvalid(ValueError):
    pass


@dataclass(frozen=True)
class OneTwoDecomposition:
    """Parts partitioning K*_v, each with cycle structure L plus paths."""

    order: int
    epsilon: int
    L: tuple[int, ...]
    parts: tuple[StructuredGraph, ...]
    provenance: tuple[dict, ...] = ()
    one_factor: StructuredGraph | None = None

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def as_decomposition(self) -> Decomposition:
        return Decomposition(self.order, self.parts, self.one_factor)

    def vertex_set(self) -> frozenset:
        return self.as_decomposition().vertex_set()


def split_pattern(cycles: Sequence[int], L: Sequence[int] | None = None) -> tuple[int, tuple[int, ...]]:
    """Write a cycle multiset as {x} + 2L.  Returns (x, L).

    Without L the largest admissible x wins.
    """
    cnt = Counter(cycles)
    if L is not None:
        rest = cnt - Counter(L) - Counter(L)
        if sum(rest.values()) != 1 or sum(cnt.values()) != 2 * len(L) + 1:
            raise ShapeMismatch(f"{sorted(cycles)} is not x + 2*{sorted(L)}")
        (x,) = rest
        return x, tuple(sorted(L))
    for x in sorted(cnt, reverse=True):
        rest = cnt.copy()
        rest[x] -= 1
        if all(c % 2 == 0 for c in rest.values()):
            half = [l for l, c in rest.items() for _ in range(c // 2)]
            return x, tuple(sorted(half))
    raise ShapeMismatch(f"{sorted(cycles)} has no x + 2L form")


def halve(
    g: StructuredGraph,
    L: Sequence[int] | None = None,
    x_vertex: Vertex | None = None,
    x_edge=None,
) -> tuple[StructuredGraph, StructuredGraph]:
    """Split a 2-regular graph with cycle structure {x, 2L} into two halves of structure L.

    The half ``h`` takes, for each length, the cycles with the smallest
    minimum vertices, plus one edge of the x-cycle.  ``x_vertex`` designates
    the x-cycle (the cycle through it); ``x_edge`` fixes the edge taken.
    """
    cycles, paths = g.components()
    if any(len(p) > 1 for p in paths):
        raise ShapeMismatch("graph is not 2-regular")
    x, L = split_pattern([len(c) for c in cycles], L)
    by_min = sorted(cycles, key=lambda c: min(map(vertex_key, c)))
    if x_vertex is not None:
        xc = next((c for c in cycles if x_vertex in c), None)
        if xc is None or len(xc) != x:
            raise ShapeMismatch(f"no {x}-cycle through {x_vertex!r}")
    else:
        xc = next(c for c in sorted(by_min, key=len, reverse=True) if len(c) == x)
    need = Counter(L)
    chosen = []
    for c in by_min:
        if c is xc:
            continue
        if need[len(c)] > 0:
            need[len(c)] -= 1
            chosen.append(c)
    ring = cycle_edges(xc)
    if x_edge is None:
        x_edge = min(ring, key=edge_key)
    elif frozenset(x_edge) not in set(ring):
        raise ShapeMismatch("designated edge is not on the x-cycle")
    h_edges = {frozenset(x_edge)}
    for c in chosen:
        h_edges.update(cycle_edges(c))
    h = StructuredGraph(frozenset(h_edges), None, g.modulus)
    return h, g.minus(h).without_isolated()


def decompose_solution(p: PyramidalSolution) -> OneTwoDecomposition:
    """Halve every orbit member; part 2i is the halving of factor i, part 2i+1 its complement.

    The halving of factor i is the witness halving translated by i - gp_idx,
    so the witness factor keeps exactly the witness halving.
    """
    w = p.witness
    parts = []
    prov = []
    for i, g in enumerate(p.orbit.factors):
        h = translate(w.halving, i - w.gp_idx)
        if not is_halving(h, g, p.L):
            h, _ = halve(g, p.L)
        parts.append(h)
        parts.append(g.minus(h).without_isolated())
        prov.append({"factor": i, "role": "halving"})
        prov.append({"factor": i, "role": "complement"})
    d = OneTwoDecomposition(p.orbit.order, p.epsilon, p.L, parts, prov, p.orbit.one_factor)
    _check_parts(d)
    return d


def _check_parts(d: OneTwoDecomposition) -> None:
    rep = verify_decomposition(d.as_decomposition(), two_factorization=False)
    if not rep.valid:
        raise ShapeMismatch("; ".join(rep.errors))
    want = tuple(sorted(d.L))
    for i, part in enumerate(d.parts):
        if not is_one_two_graph(part) or cs(part) != want:
            raise ShapeMismatch(f"part {i} is not a (1,2)-graph with cycle structure {want}")


def redistribute(d: OneTwoDecomposition, orbit: Decomposition, w: MatchingWitness) -> OneTwoDecomposition:
    """Dissolve the witness factor: its two halves become G - M, and M joins the witness halving."""
    if not check_matching_property(orbit, w, d.L):
        raise WitnessInvalid("matching property does not hold for this witness")
    G = orbit.factors[w.g_idx]
    g_slots = [i for i, pv in enumerate(d.provenance) if pv.get("factor") == w.g_idx]
    h_slot = next(
        (i for i, part in enumerate(d.parts) if part.edges == w.halving.edges), None
    )
    if len(g_slots) != 2 or h_slot is None:
        raise WitnessInvalid("decomposition does not contain the witness factors")
    parts: list[StructuredGraph] = []
    prov: list[dict] = []
    for i, (part, pv) in enumerate(zip(d.parts, d.provenance)):
        if i == g_slots[0]:
            parts.append(G.minus(w.M).without_isolated())
            prov.append({"factor": w.g_idx, "role": "minus_matching"})
        elif i in g_slots:
            continue
        elif i == h_slot:
            parts.append(part.union(w.M))
            prov.append({**pv, "role": "halving_plus_matching"})
        else:
            parts.append(part)
            prov.append(pv)
    out = OneTwoDecomposition(d.order, d.epsilon, d.L, parts, prov, d.one_factor)
    _check_parts(out)
    return out


def check_extension_condition(d: OneTwoDecomposition) -> bool:
    """b >= 2a - min (|E(F)| - eps)/2 with 2a = v - eps."""
    b = len(d.parts)
    if b == 0:
        return False
    two_a = d.order - d.epsilon
    slack = min(Fraction(len(p.edges) - d.epsilon, 2) for p in d.parts)
    return b >= two_a - slack
