from __future__ import annotations

import json

import pytest

from oberwolfach.core import verify_decomposition
from oberwolfach.pipeline import (
    ExtendFailed,
    GracefulNotFound,
    InvalidRequest,
    SolveRequest,
    general_mu2,
    mu2_target,
    solve,
    solve_double,
    verify_certificate,
)
from oberwolfach.bounds import split_target


@pytest.mark.parametrize("y, order, delta", [(24, 31, 1), (25, 32, 1), (26, 33, 0), (27, 34, 0)])
def test_small_targets(y, order, delta):
    cert = solve(SolveRequest(y, (3, 4)))
    assert cert.order == order == cert.solution.order
    assert cert.split.delta == delta
    assert cert.report.valid
    assert set(cert.report.cycle_structures()) == {tuple(sorted((y, 3, 4)))}
    assert len(cert.parts.parts) == (order - cert.split.epsilon) // 2


def test_certificate_rechecks_offline():
    cert = solve(SolveRequest(25, (3, 4)))
    obj = json.loads(json.dumps(cert.to_json()))
    chk = verify_certificate(obj)
    assert chk.valid, chk.checks


def test_tampered_certificate_fails():
    obj = solve(SolveRequest(26, (3, 4))).to_json()
    factors = obj["solution"]["factors"]
    factors[0], factors[1] = factors[1], factors[0]
    chk = verify_certificate(obj)
    assert not chk.checks["extension"]
    obj["split"]["x"] += 2
    assert not verify_certificate(obj).checks["split"]


def test_deterministic_with_seed():
    a = solve(SolveRequest(24, (3, 4), seed=3)).to_json()["solution"]
    b = solve(SolveRequest(24, (3, 4), seed=3)).to_json()["solution"]
    assert a == b


def test_other_shapes():
    for y, L in [(60, (3, 5)), (61, (4, 6)), (30, (3,)), (80, (3, 4, 5))]:
        cert = solve(SolveRequest(y, L))
        assert set(cert.report.cycle_structures()) == {tuple(sorted((y, *L)))}


def test_invalid_requests():
    with pytest.raises(InvalidRequest):
        solve(SolveRequest(9, (3,)))
    with pytest.raises(InvalidRequest):
        solve(SolveRequest(26, (3, 4), allow_below_bound=False))
    with pytest.raises(InvalidRequest):
        solve(SolveRequest(26, ()))
    with pytest.raises(InvalidRequest):
        solve(SolveRequest(26, (2, 4)))
    with pytest.raises(InvalidRequest):
        solve(SolveRequest(2, (3,)))


def test_graceful_not_found_propagates():
    # x = 5 needs [1 | 3], which has no graceful labeling
    with pytest.raises(GracefulNotFound):
        solve_double(5, (3,))
    y = 2 * 5 + 3 * 3 - 1
    assert split_target(y, (3,)).x == 5
    with pytest.raises(GracefulNotFound):
        solve(SolveRequest(y, (3,)))


def test_budget_exhaustion_is_extend_failed():
    with pytest.raises((ExtendFailed, GracefulNotFound)):
        solve(SolveRequest(26, (3, 4), budget=10))


@pytest.mark.parametrize("x, order, y", [(3, 17, 26), (4, 18, 27)])
def test_general_mu2(x, order, y):
    _, p = solve_double(x, (3, 4))
    assert p.orbit.order == order
    assert mu2_target(order, (3, 4)) == y == 2 * x + 3 * 7 - p.epsilon
    d = general_mu2(p)
    rep = verify_decomposition(d)
    assert rep.valid and d.order == y + 7
    assert set(rep.cycle_structures()) == {tuple(sorted((y, 3, 4)))}
    d2 = general_mu2(p.orbit, (3, 4))
    assert verify_decomposition(d2).valid


def test_mu2_identity_matches_plain_route():
    for x in range(3, 40):
        for L in [(3, 4), (3,), (5, 6, 7)]:
            eps = 1 if x % 2 else 2
            k = (x - eps) // 2
            order = 2 * (k + sum(L)) + eps
            assert mu2_target(order, L) == 2 * x + 3 * sum(L) - eps


def test_general_mu2_rejects_invalid_input(seed_labeling):
    from oberwolfach.pyramidal import double

    p = double(seed_labeling, 1)
    from oberwolfach.core import Decomposition

    broken = Decomposition(p.orbit.order, p.orbit.factors[:-1])
    with pytest.raises(InvalidRequest):
        general_mu2(broken, (3, 4))
    with pytest.raises(InvalidRequest):
        general_mu2(p.orbit)
