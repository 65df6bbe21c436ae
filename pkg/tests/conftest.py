from __future__ import annotations

from functools import lru_cache

from hypothesis import settings

from liecheck.lie_core import LieAlgebra, algebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_TYPES = [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


@lru_cache(maxsize=None)
def cached_algebra(lie_type: str, rank: int) -> LieAlgebra:
    return algebra(lie_type, rank)
