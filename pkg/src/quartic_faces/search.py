"""Bounded searches used to derive the frozen lattice witnesses."""
from __future__ import annotations

import itertools
from typing import Iterator

from .forms import Transform, act
from .linalg import LinSubspace


def small_transforms(bound: int = 1) -> Iterator[Transform]:
    """Permutation-with-sign matrices first, then all integer matrices with
    entries in [-bound, bound], each projective class once."""
    seen = set()

    def emit(m):
        flat = [v for r in m for v in r]
        if not any(flat):
            return None
        k = next(i for i, v in enumerate(flat) if v)
        key = tuple(v * (1 if flat[k] > 0 else -1) for v in flat)
        if key in seen:
            return None
        seen.add(key)
        try:
            return Transform(m)
        except ValueError:
            return None

    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = [[0] * 3 for _ in range(3)]
            for i, j in enumerate(perm):
                m[j][i] = signs[i]
            t = emit(m)
            if t:
                yield t
    vals = sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v < 0))
    for flat in itertools.product(vals, repeat=9):
        m = [list(flat[0:3]), list(flat[3:6]), list(flat[6:9])]
        t = emit(m)
        if t:
            yield t


def find_embedding(J_lo: LinSubspace, J_hi: LinSubspace, bound: int = 1) -> Transform | None:
    """A transform sigma with act(sigma, J_lo) contained in J_hi."""
    for sigma in small_transforms(bound):
        if all(J_hi.contains(act(sigma, q)) for q in J_lo.basis):
            return sigma
    return None
