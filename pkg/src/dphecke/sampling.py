"""Seeded deterministic rational samplers for randomized exact checks.

Numerators and denominators are bounded (default 1000).  Unless a test
deliberately targets integrality walls, sampled vectors avoid them: the
fractional parts of the relevant combinations are kept nonzero.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .lines import EVEN_LABELS, POINTS
from .qlin import Q, QVec


class RationalSampler:
    def __init__(self, seed: int, bound: int = 1000):
        self.rng = random.Random(seed)
        self.bound = bound

    def rational(self, lo: int = -10, hi: int = 10, den_max: int | None = None) -> Fraction:
        den_max = den_max or self.bound
        den = self.rng.randint(1, den_max)
        num = self.rng.randint(lo * den, hi * den)
        return Fraction(num, den)

    def nonintegral(self, lo: int = -10, hi: int = 10) -> Fraction:
        while True:
            x = self.rational(lo, hi)
            if x.denominator != 1:
                return x

    def vector(self, index, lo: int = -10, hi: int = 10) -> QVec:
        return QVec(tuple(index), tuple(self.rational(lo, hi) for _ in index))

    def nonintegral_vector(self, index, lo: int = -10, hi: int = 10) -> QVec:
        return QVec(tuple(index), tuple(self.nonintegral(lo, hi) for _ in index))

    def vector16(self, lo: int = -10, hi: int = 10) -> QVec:
        return self.vector(EVEN_LABELS, lo, hi)

    def vector5(self, lo: int = -10, hi: int = 10) -> QVec:
        return self.vector(POINTS, lo, hi)

    def distinct_rationals(self, n: int, lo: int = -20, hi: int = 20,
                           avoid=()) -> list:
        out = []
        banned = set(avoid)
        while len(out) < n:
            x = self.rational(lo, hi, den_max=50)
            if x not in banned:
                banned.add(x)
                out.append(x)
        return out
