from fractions import Fraction

import pytest

from egpkit import GroundSet, from_finite, permutahedron


@pytest.fixture
def abc():
    return GroundSet(["a", "b", "c"])


@pytest.fixture
def hexagon():
    # 2-dim standard permutahedron: 3/5/6 by cardinality
    return permutahedron([3, 2, 1])


@pytest.fixture
def pentagon(abc):
    return from_finite(
        abc,
        {
            ("a",): 3,
            ("b",): 3,
            ("c",): 3,
            ("a", "b"): 5,
            ("b", "c"): 5,
            ("a", "c"): 6,
            ("a", "b", "c"): 6,
        },
    )


def cardinality_fn(ground):
    """z(S) = |S|, the basic modular example."""
    return from_finite(
        ground,
        {m: Fraction(bin(m).count("1")) for m in ground.subsets() if m},
    )
