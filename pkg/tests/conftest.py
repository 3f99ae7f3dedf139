from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

from oberwolfach.core import INF1, INF2, StructuredGraph
from oberwolfach.graceful import GracefulLabeling, ZillionShape

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def seed_labeling() -> GracefulLabeling:
    """[0 | 3,4] on {0..7}: lone vertex 2, cycles (3,6,4) and (0,5,1,7)."""
    return GracefulLabeling(ZillionShape(0, (3, 4)), (2,), ((3, 6, 4), (0, 5, 1, 7)))


def golden_G(epsilon: int) -> StructuredGraph:
    first = [INF1, 2, 10] if epsilon == 1 else [INF1, 2, INF2, 10]
    return StructuredGraph.from_components(
        [first, [3, 6, 4], [11, 14, 12], [0, 5, 1, 7], [8, 13, 9, 15]], modulus=16
    )


def golden_G_prime(epsilon: int) -> StructuredGraph:
    first = [INF1, 3, 11] if epsilon == 1 else [INF1, 3, INF2, 11]
    return StructuredGraph.from_components(
        [first, [4, 7, 5], [12, 15, 13], [1, 6, 2, 8], [9, 14, 10, 0]], modulus=16
    )


def golden_halving() -> StructuredGraph:
    return StructuredGraph.from_components([[12, 15, 13], [9, 14, 10, 0]], [[INF1, 3]], modulus=16).without_isolated()


def golden_M() -> StructuredGraph:
    return StructuredGraph.from_components([], [[INF1, 2], [1, 5], [4, 6]], modulus=16)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
