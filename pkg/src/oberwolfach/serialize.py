"""JSON and DOT encodings of graphs, decompositions and certificates.

Decomposition JSON::

    {"order": 17, "regime": "odd", "one_factor": [[u, v], ...],
     "factors": [{"cycles": [[...], ...], "paths": [[...], ...]}, ...]}

Vertices are integers or the strings "inf1" / "inf2".  Each cycle starts at
its minimum vertex followed by its smaller neighbour; each path starts at its
smaller end.  A one-vertex path encodes an isolated vertex.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import INF1, INF2, Decomposition, Infinity, Report, StructuredGraph, Vertex, sorted_edge, vertex_key
from .halving import OneTwoDecomposition
from .pyramidal import MatchingWitness, PyramidalSolution


def vertex_to_json(v: Vertex) -> int | str:
    if isinstance(v, Infinity):
        return f"inf{v.index}"
    return int(v)


def vertex_from_json(v: int | str) -> Vertex:
    if isinstance(v, str):
        if v in ("inf1", "inf", "∞", "∞1"):
            return INF1
        if v in ("inf2", "∞2"):
            return INF2
        raise ValueError(f"unknown vertex {v!r}")
    return int(v)


def canonical_cycle(c: list[Vertex]) -> list[Vertex]:
    i = min(range(len(c)), key=lambda j: vertex_key(c[j]))
    rot = c[i:] + c[:i]
    if len(rot) > 2 and vertex_key(rot[-1]) < vertex_key(rot[1]):
        rot = [rot[0]] + rot[1:][::-1]
    return rot


def canonical_path(p: list[Vertex]) -> list[Vertex]:
    return p[::-1] if vertex_key(p[-1]) < vertex_key(p[0]) else p


def graph_to_json(g: StructuredGraph) -> dict:
    cycles, paths = g.components()
    cycles = sorted((canonical_cycle(c) for c in cycles), key=lambda c: vertex_key(c[0]))
    paths = sorted((canonical_path(p) for p in paths), key=lambda p: vertex_key(p[0]))
    return {
        "cycles": [[vertex_to_json(v) for v in c] for c in cycles],
        "paths": [[vertex_to_json(v) for v in p] for p in paths],
    }


def graph_from_json(obj: dict, modulus: int | None = None) -> StructuredGraph:
    cycles = [[vertex_from_json(v) for v in c] for c in obj.get("cycles", [])]
    paths = [[vertex_from_json(v) for v in p] for p in obj.get("paths", [])]
    return StructuredGraph.from_components(cycles, paths, modulus)


def _sorted_edges(g: StructuredGraph) -> list[tuple[Vertex, Vertex]]:
    return sorted(map(sorted_edge, g.edges), key=lambda p: (vertex_key(p[0]), vertex_key(p[1])))


def edges_to_json(g: StructuredGraph) -> list[list[int | str]]:
    return [[vertex_to_json(u), vertex_to_json(v)] for u, v in _sorted_edges(g)]


def edges_from_json(pairs: list, modulus: int | None = None) -> StructuredGraph:
    return StructuredGraph(
        frozenset(frozenset(vertex_from_json(x) for x in p) for p in pairs), None, modulus
    )


def decomposition_to_json(d: Decomposition, modulus: int | None = None) -> dict:
    out: dict[str, Any] = {"order": d.order, "regime": d.regime}
    if modulus is not None:
        out["modulus"] = modulus
    if d.one_factor is not None:
        out["one_factor"] = edges_to_json(d.one_factor)
    out["factors"] = [graph_to_json(f) for f in d.factors]
    return out


def decomposition_from_json(obj: dict) -> Decomposition:
    modulus = obj.get("modulus")
    one = obj.get("one_factor")
    d = Decomposition(
        int(obj["order"]),
        [graph_from_json(f, modulus) for f in obj["factors"]],
        edges_from_json(one, modulus) if one is not None else None,
    )
    regime = obj.get("regime")
    if regime is not None and regime != d.regime:
        raise ValueError(f"regime {regime!r} does not match order {d.order}")
    return d


def report_to_json(rep: Report) -> dict:
    return {
        "valid": rep.valid,
        "order": rep.order,
        "regime": rep.regime,
        "vertex_count": rep.vertex_count,
        "disjoint": rep.disjoint,
        "leftover_edges": len(rep.leftover),
        "leftover_is_perfect_matching": rep.leftover_is_perfect_matching,
        "one_factor_consistent": rep.one_factor_consistent,
        "cycle_structures": [list(c) if c is not None else None for c in rep.cycle_structures()],
        "errors": rep.errors,
    }


def to_dot(g: StructuredGraph, name: str = "factor") -> str:
    lines = [f"graph {name} {{"]
    for v in sorted(g.vertices, key=vertex_key):
        lines.append(f'  "{vertex_to_json(v)}";')
    for u, v in _sorted_edges(g):
        lines.append(f'  "{vertex_to_json(u)}" -- "{vertex_to_json(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot_files(d: Decomposition, stem: Path) -> list[Path]:
    """One DOT file per factor: <stem>.factor<i>.dot."""
    stem = Path(stem)
    out = []
    for i, f in enumerate(d.factors):
        p = stem.with_name(f"{stem.name}.factor{i}.dot")
        p.write_text(to_dot(f, f"factor{i}"), encoding="utf-8")
        out.append(p)
    return out


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(obj: Any, path: str | Path | None) -> None:
    text = json.dumps(obj, indent=1)
    if path is None or str(path) == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def witness_to_json(w: MatchingWitness) -> dict:
    return {
        "M": edges_to_json(w.M),
        "g_idx": w.g_idx,
        "gp_idx": w.gp_idx,
        "halving": graph_to_json(w.halving),
    }


def witness_from_json(obj: dict, modulus: int | None = None) -> MatchingWitness:
    return MatchingWitness(
        edges_from_json(obj["M"], modulus),
        int(obj["g_idx"]),
        int(obj["gp_idx"]),
        graph_from_json(obj["halving"], modulus).without_isolated(),
    )


def pyramidal_to_json(p: PyramidalSolution) -> dict:
    out = decomposition_to_json(p.orbit, p.modulus)
    out["pyramidal"] = {
        "epsilon": p.epsilon,
        "a": p.a,
        "k": p.k,
        "x": p.x,
        "L": list(p.L),
        "starter": graph_to_json(p.starter),
        "witness": witness_to_json(p.witness),
    }
    return out


def pyramidal_from_json(obj: dict) -> PyramidalSolution:
    d = decomposition_from_json(obj)
    meta = obj["pyramidal"]
    n = 2 * int(meta["a"])
    return PyramidalSolution(
        int(meta["epsilon"]),
        int(meta["a"]),
        int(meta["k"]),
        tuple(meta["L"]),
        graph_from_json(meta["starter"], n),
        d,
        witness_from_json(meta["witness"], n),
        d.one_factor,
    )


def one_two_to_json(d: OneTwoDecomposition, modulus: int | None = None) -> dict:
    out = decomposition_to_json(d.as_decomposition(), modulus)
    out["epsilon"] = d.epsilon
    out["L"] = list(d.L)
    out["provenance"] = list(d.provenance)
    return out


def one_two_from_json(obj: dict) -> OneTwoDecomposition:
    base = decomposition_from_json(obj)
    parts = [f.without_isolated() for f in base.factors]
    eps = int(obj.get("epsilon", 1 if base.order % 2 else 2))
    prov = obj.get("provenance") or [{} for _ in parts]
    return OneTwoDecomposition(base.order, eps, tuple(obj.get("L", ())), parts, prov, base.one_factor)
