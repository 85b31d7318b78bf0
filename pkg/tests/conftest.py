import pytest

from wtl import Wts


def make_vacuum_model() -> Wts:
    """Three-state regression model: a robot that waits, cleans, charges."""
    return Wts(
        ["s1", "s2", "s3"],
        {"s1": ["waiting"], "s2": ["cleaning"], "s3": ["charging"]},
        [
            ("s1", 1, "s1"),
            ("s1", 1, "s3"),
            ("s1", 2, "s3"),
            ("s3", 60, "s1"),
            ("s3", 100, "s1"),
            ("s1", 0, "s2"),
            ("s2", 5, "s1"),
            ("s2", 10, "s1"),
            ("s2", 15, "s1"),
        ],
    )


def make_coarse_pair_model() -> Wts:
    """Four-state regression model: s and t share weight bounds {1..3}
    toward the b-states but only s has the weight-2 transition, so they
    are bound-bisimilar yet not exactly bisimilar."""
    return Wts(
        ["s", "sp", "t", "tp"],
        {"s": ["a"], "sp": ["b"], "t": ["a"], "tp": ["b"]},
        [
            ("s", 1, "sp"),
            ("s", 2, "sp"),
            ("s", 3, "sp"),
            ("t", 1, "tp"),
            ("t", 3, "tp"),
        ],
    )


@pytest.fixture
def vacuum() -> Wts:
    return make_vacuum_model()


@pytest.fixture
def coarse_pair() -> Wts:
    return make_coarse_pair_model()
