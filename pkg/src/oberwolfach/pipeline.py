"""End-to-end solver: target (y, L) to a verified 2-factorization of K*_{y + sum(L)}.

Stages: bounds and split, graceful search, doubling into a pyramidal
solution, halving every factor, optional redistribution, extension, and a
final from-scratch verification.  Every intermediate object is kept in the
certificate so each stage can be rechecked offline.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .bounds import InvalidLength, StructureBounds, TargetSplit, split_target, structure_bounds
from .core import Decomposition, Report, cs, verify_decomposition
from .extend import DEFAULT_BUDGET, BudgetExceeded, ExtendStats, Infeasible, extend, verify_extension
from .graceful import GracefulLabeling, ZillionShape, search_graceful, verify_graceful
from .halving import OneTwoDecomposition, decompose_solution, halve, redistribute
from .pyramidal import PyramidalSolution, check_matching_property, double
from . import serialize as ser

DEFAULT_SEED = 7


class InvalidRequest(ValueError):
    pass


class GracefulNotFound(RuntimeError):
    pass


class ExtendFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class SolveRequest:
    y: int
    L: tuple[int, ...]
    seed: int = DEFAULT_SEED
    budget: int = DEFAULT_BUDGET
    allow_below_bound: bool = True

    def __post_init__(self):
        object.__setattr__(self, "L", tuple(sorted(int(l) for l in self.L)))


@dataclass
class SolveCertificate:
    request: SolveRequest
    bounds: StructureBounds
    split: TargetSplit
    graceful: GracefulLabeling
    pyramidal: PyramidalSolution
    parts: OneTwoDecomposition
    solution: Decomposition
    report: Report
    timings: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.request.y + sum(self.request.L)

    @property
    def target(self) -> tuple[int, ...]:
        return tuple(sorted((self.request.y, *self.request.L)))

    def to_json(self) -> dict:
        req = self.request
        bd = self.bounds
        return {
            "request": {
                "y": req.y,
                "L": list(req.L),
                "seed": req.seed,
                "budget": req.budget,
                "allow_below_bound": req.allow_below_bound,
            },
            "bounds": {
                "b": bd.b,
                "b0": bd.b0,
                "b1": str(bd.b1),
                "B": bd.B,
                "y0": bd.y0,
            },
            "split": {"epsilon": self.split.epsilon, "x": self.split.x, "delta": self.split.delta},
            "graceful": self.graceful.to_json(),
            "pyramidal": ser.pyramidal_to_json(self.pyramidal),
            "parts": ser.one_two_to_json(self.parts),
            "solution": ser.decomposition_to_json(self.solution),
            "report": ser.report_to_json(self.report),
            "timings": {k: round(v, 4) for k, v in self.timings.items()},
        }


def _request_checks(req: SolveRequest) -> tuple[StructureBounds, TargetSplit]:
    if not req.L:
        raise InvalidRequest("L must contain at least one cycle length")
    if req.y < 3:
        raise InvalidRequest("y must be at least 3")
    try:
        bounds = structure_bounds(req.L)
    except InvalidLength as exc:
        raise InvalidRequest(str(exc)) from exc
    split = split_target(req.y, req.L)
    if split.x < 3:
        raise InvalidRequest(f"split gives x = {split.x}; the path length k = (x - eps)/2 must be >= 1")
    if req.y < bounds.y0 and not req.allow_below_bound:
        raise InvalidRequest(f"y = {req.y} is below y0 = {bounds.y0}; strict mode refuses it")
    return bounds, split


def solve_double(
    x: int, L: Sequence[int], seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET
) -> tuple[GracefulLabeling, PyramidalSolution]:
    """Pyramidal solution of OP(x, 2L) with a verified matching witness."""
    if x < 3:
        raise InvalidRequest("x must be at least 3")
    epsilon = 1 if x % 2 else 2
    k = (x - epsilon) // 2
    res = search_graceful(ZillionShape(k - 1, tuple(L)), budget=budget, seed=seed)
    if not res.found:
        raise GracefulNotFound(f"no graceful labeling of [{k - 1} | {sorted(L)}]: {res.status}")
    return res.labeling, double(res.labeling, epsilon)


def solve(req: SolveRequest) -> SolveCertificate:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    bounds, split = _request_checks(req)
    if split.x % 2 != split.epsilon % 2:
        raise AssertionError("parity chain broken: x and epsilon differ mod 2")

    t = time.perf_counter()
    labeling, p = solve_double(split.x, req.L, req.seed, req.budget)
    timings["double"] = time.perf_counter() - t

    t = time.perf_counter()
    parts = decompose_solution(p)
    if split.delta == 1:
        parts = redistribute(parts, p.orbit, p.witness)
    timings["halve"] = time.perf_counter() - t
    n = 2 * len(parts.parts) + parts.epsilon
    if n != req.y + bounds.b:
        raise AssertionError(f"order chain broken: {n} != {req.y} + {bounds.b}")

    t = time.perf_counter()
    stats = ExtendStats()
    try:
        sol = extend(parts, seed=req.seed, budget=req.budget, stats=stats)
    except (Infeasible, BudgetExceeded) as exc:
        raise ExtendFailed(str(exc)) from exc
    timings["extend"] = time.perf_counter() - t

    t = time.perf_counter()
    report = verify_decomposition(sol)
    want = tuple(sorted((req.y, *req.L)))
    bad = [i for i, s in enumerate(report.cycle_structures()) if s != want]
    if not report.valid or bad or sol.order != n:
        raise ExtendFailed(f"final decomposition rejected: {report.errors or bad}")
    timings["verify"] = time.perf_counter() - t
    timings["total"] = time.perf_counter() - t0
    return SolveCertificate(req, bounds, split, labeling, p, parts, sol, report, timings)


def general_mu2(
    P: PyramidalSolution | Decomposition,
    L: Sequence[int] | None = None,
    seed: int = DEFAULT_SEED,
    budget: int = DEFAULT_BUDGET,
) -> Decomposition:
    """Halve every factor of a solution of OP(x, 2L) of order 2w + eps and extend.

    The result solves OP(y, L) with y = 4w + eps - sum(L).  No matching
    property is used.
    """
    if isinstance(P, PyramidalSolution):
        L = P.L
        d = P.orbit
    else:
        if L is None:
            raise InvalidRequest("L is required for a plain decomposition")
        d = P
    L = tuple(sorted(L))
    rep = verify_decomposition(d)
    if not rep.valid:
        raise InvalidRequest("input is not a valid 2-factorization: " + "; ".join(rep.errors))
    structures = set(rep.cycle_structures())
    if len(structures) != 1:
        raise InvalidRequest("factors have different cycle structures")
    epsilon = 1 if d.order % 2 else 2
    parts = []
    prov = []
    for i, g in enumerate(d.factors):
        h, rest = halve(g, L)
        parts += [h, rest]
        prov += [{"factor": i, "role": "halving"}, {"factor": i, "role": "complement"}]
    one_two = OneTwoDecomposition(d.order, epsilon, L, parts, prov, d.one_factor)
    try:
        return extend(one_two, seed=seed, budget=budget)
    except (Infeasible, BudgetExceeded) as exc:
        raise ExtendFailed(str(exc)) from exc


def mu2_target(order: int, L: Sequence[int]) -> int:
    """y = 4w + eps - sum(L) for an input of order 2w + eps."""
    epsilon = 1 if order % 2 else 2
    w = (order - epsilon) // 2
    return 4 * w + epsilon - sum(L)


@dataclass
class CertificateCheck:
    checks: dict[str, bool]

    @property
    def valid(self) -> bool:
        return all(self.checks.values())


def verify_certificate(obj: dict) -> CertificateCheck:
    """Recheck every stage of a certificate from its JSON encoding."""
    checks: dict[str, bool] = {}
    req = obj["request"]
    y, L = int(req["y"]), tuple(sorted(req["L"]))
    bounds = structure_bounds(L)
    split = split_target(y, L)
    checks["bounds"] = obj["bounds"]["y0"] == bounds.y0 and obj["bounds"]["B"] == bounds.B
    sp = obj["split"]
    checks["split"] = (sp["epsilon"], sp["x"], sp["delta"]) == (split.epsilon, split.x, split.delta)
    t = GracefulLabeling.from_json(obj["graceful"])
    checks["graceful"] = verify_graceful(t) and t.shape.L == L
    p = ser.pyramidal_from_json(obj["pyramidal"])
    orbit_rep = verify_decomposition(p.orbit)
    checks["orbit"] = orbit_rep.valid and all(
        s == tuple(sorted((split.x, *L, *L))) for s in orbit_rep.cycle_structures()
    )
    checks["matching_property"] = check_matching_property(p.orbit, p.witness, L)
    parts = ser.one_two_from_json(obj["parts"])
    parts_rep = verify_decomposition(parts.as_decomposition(), two_factorization=False)
    checks["parts"] = parts_rep.valid and all(cs(q) == L for q in parts.parts)
    sol = ser.decomposition_from_json(obj["solution"])
    checks["extension"] = verify_extension(parts, sol).valid
    rep = verify_decomposition(sol)
    want = tuple(sorted((y, *L)))
    checks["solution"] = (
        rep.valid and sol.order == y + sum(L) and all(s == want for s in rep.cycle_structures())
    )
    return CertificateCheck(checks)
