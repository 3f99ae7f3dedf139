from __future__ import annotations

import pytest

from conftest import golden_G, golden_G_prime, golden_halving, golden_M
from oberwolfach.core import INF1, StructuredGraph, cs, is_one_two_graph, translate, verify_decomposition
from oberwolfach.halving import (
    OneTwoDecomposition,
    ShapeMismatch,
    WitnessInvalid,
    check_extension_condition,
    decompose_solution,
    halve,
    redistribute,
    split_pattern,
)
from oberwolfach.pyramidal import MatchingWitness, double, is_halving


def test_split_pattern():
    assert split_pattern([3, 3, 3, 4, 4], (3, 4)) == (3, (3, 4))
    assert split_pattern([4, 3, 3, 4, 4], (3, 4)) == (4, (3, 4))
    assert split_pattern([9, 3, 3]) == (9, (3,))
    assert split_pattern([3, 3, 3]) == (3, (3,))
    with pytest.raises(ShapeMismatch):
        split_pattern([3, 4, 5], (3, 4))
    with pytest.raises(ShapeMismatch):
        split_pattern([3, 4])


@pytest.mark.parametrize("eps", [1, 2])
def test_halve_golden_factor(eps):
    g = golden_G_prime(eps)
    h, rest = halve(g, (3, 4))
    assert cs(h) == cs(rest) == (3, 4)
    assert is_halving(h, g, (3, 4))
    assert h.union(rest).edges == g.edges
    assert is_one_two_graph(h) and is_one_two_graph(rest)


def test_halve_with_designated_edge():
    g = golden_G_prime(1)
    h, _ = halve(g, (3, 4), x_vertex=INF1, x_edge=(INF1, 3))
    assert frozenset((INF1, 3)) in h.edges
    assert is_halving(h, g, (3, 4))
    with pytest.raises(ShapeMismatch):
        halve(g, (3, 4), x_vertex=INF1, x_edge=(4, 7))


def test_halve_rejects_non_two_regular():
    with pytest.raises(ShapeMismatch):
        halve(StructuredGraph.from_components([[0, 1, 2]], [[3, 4]]), (3,))


@pytest.mark.parametrize("eps", [1, 2])
def test_decompose_solution(seed_labeling, eps):
    p = double(seed_labeling, eps)
    d = decompose_solution(p)
    assert len(d.parts) == 16
    assert all(cs(f) == (3, 4) and is_one_two_graph(f) for f in d.parts)
    assert min(len(f.edges) for f in d.parts) >= 7
    assert verify_decomposition(d.as_decomposition(), two_factorization=False).valid
    assert d.parts[2 * 0] == p.witness.halving
    assert check_extension_condition(d)


@pytest.mark.parametrize("eps", [1, 2])
def test_redistribute_constructed_witness(seed_labeling, eps):
    p = double(seed_labeling, eps)
    d = redistribute(decompose_solution(p), p.orbit, p.witness)
    assert len(d.parts) == 15
    assert all(cs(f) == (3, 4) for f in d.parts)
    assert verify_decomposition(d.as_decomposition(), two_factorization=False).valid
    assert check_extension_condition(d)


def _published_family(p) -> OneTwoDecomposition:
    parts, prov = [], []
    for i, g in enumerate(p.orbit.factors):
        h = translate(golden_halving(), i)
        parts += [h, g.minus(h).without_isolated()]
        prov += [{"factor": i, "role": "halving"}, {"factor": i, "role": "complement"}]
    return OneTwoDecomposition(p.orbit.order, p.epsilon, p.L, parts, prov, p.one_factor)


@pytest.mark.parametrize("eps", [1, 2])
def test_redistribute_published_witness(seed_labeling, eps):
    p = double(seed_labeling, eps)
    d = _published_family(p)
    assert all(is_halving(d.parts[2 * i], g, (3, 4)) for i, g in enumerate(p.orbit.factors))
    w = MatchingWitness(golden_M(), 7, 0, golden_halving())
    out = redistribute(d, p.orbit, w)
    assert len(out.parts) == 15
    assert golden_G(eps).minus(golden_M()).without_isolated() in out.parts
    assert golden_halving().union(golden_M()) in out.parts


def test_redistribute_rejects_bad_witness(seed_labeling):
    p = double(seed_labeling, 1)
    d = decompose_solution(p)
    bad = MatchingWitness(golden_M(), 7, 1, golden_halving())
    with pytest.raises(WitnessInvalid):
        redistribute(d, p.orbit, bad)


def test_extension_condition_fails_with_too_few_parts():
    tri = StructuredGraph.from_components([[0, 1, 2]], [[3, 4]])
    rest = StructuredGraph.from_components([], [[0, 3, 1, 4, 2]])
    d = OneTwoDecomposition(5, 1, (3,), [tri, rest])
    # b = 2 < 4 - 1
    assert not check_extension_condition(d)


def test_forced_halving_shape():
    g = StructuredGraph.from_components([[0, 1, 2], [3, 4, 5], [6, 7, 8, 9, 10]])
    h, rest = halve(g)
    assert cs(h) == cs(rest) == (3,)
    assert len(h.edges) == 4 and len(rest.edges) == 7
    assert h.union(rest).edges == g.edges


def test_published_halvings_of_every_translate(seed_labeling):
    p = double(seed_labeling, 1)
    for alpha in range(1, 9):
        h = translate(golden_halving(), alpha - 1)
        assert is_halving(h, p.orbit.factors[alpha - 1], (3, 4))
