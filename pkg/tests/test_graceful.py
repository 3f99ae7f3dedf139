from __future__ import annotations

import itertools

import pytest

from oberwolfach.graceful import (
    BUDGET_EXCEEDED,
    EXHAUSTED,
    FOUND,
    GracefulLabeling,
    ZillionShape,
    search_graceful,
    verify_graceful,
)


def _brute_force_exists(shape: ZillionShape) -> bool:
    """Try every assignment of labels 0..a to the vertices of [k | L]."""
    a, k = shape.a, shape.k
    target = set(range(1, a + 1))
    for perm in itertools.permutations(range(a + 1)):
        diffs = [abs(perm[i] - perm[i + 1]) for i in range(k)]
        pos = k + 1
        for l in shape.L:
            c = perm[pos : pos + l]
            diffs += [abs(c[i] - c[(i + 1) % l]) for i in range(l)]
            pos += l
        if len(diffs) == a and set(diffs) == target:
            return True
    return False


SMALL_SHAPES = [
    ZillionShape(k, L)
    for L in [(3,), (4,), (5,), (6,), (3, 3), (3, 4)]
    for k in range(0, 5)
    if k + sum(L) <= 7
]


@pytest.mark.parametrize("shape", SMALL_SHAPES, ids=lambda s: f"[{s.k}|{','.join(map(str, s.L))}]")
def test_exhaustive_search_agrees_with_brute_force(shape):
    res = search_graceful(shape)
    assert res.status in (FOUND, EXHAUSTED)
    assert res.found == _brute_force_exists(shape)
    if res.found:
        assert verify_graceful(res.labeling)


def test_nonexistence_for_one_and_two_with_a_triangle():
    assert search_graceful(ZillionShape(1, (3,))).status == EXHAUSTED
    assert search_graceful(ZillionShape(2, (3,))).status == EXHAUSTED


def test_three_with_a_triangle_exists():
    res = search_graceful(ZillionShape(3, (3,)))
    assert res.status == FOUND and verify_graceful(res.labeling)
    known = GracefulLabeling(ZillionShape(3, (3,)), (4, 0, 6, 1), ((2, 3, 5),))
    assert verify_graceful(known)


def test_verify_rejects_broken_labelings():
    shape = ZillionShape(3, (3,))
    assert not verify_graceful(GracefulLabeling(shape, (4, 0, 6, 1), ((2, 3, 4),)))
    assert not verify_graceful(GracefulLabeling(shape, (0, 4, 6, 1), ((2, 3, 5),)))
    assert not verify_graceful(GracefulLabeling(shape, (4, 0, 6), ((1, 2, 3, 5),)))


def test_randomized_mode_finds_larger_labelings():
    for shape in [ZillionShape(20, (3, 4)), ZillionShape(40, (5, 8)), ZillionShape(162, (3, 4))]:
        res = search_graceful(shape, seed=7)
        assert res.found and verify_graceful(res.labeling)


def test_randomized_mode_never_claims_exhaustion():
    res = search_graceful(ZillionShape(1, (3,)), a_exhaustive=0)
    assert res.status == BUDGET_EXCEEDED


def test_budget_exhaustion_is_reported():
    res = search_graceful(ZillionShape(30, (7, 9, 11)), budget=50, seed=1)
    assert res.status == BUDGET_EXCEEDED and res.labeling is None


def test_labeling_json_round_trip():
    res = search_graceful(ZillionShape(3, (3,)))
    assert GracefulLabeling.from_json(res.labeling.to_json()) == res.labeling


def test_shape_validation():
    with pytest.raises(ValueError):
        ZillionShape(-1, (3,))
    with pytest.raises(ValueError):
        ZillionShape(2, (2,))
