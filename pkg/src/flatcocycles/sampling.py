"""Seeded random words, tuples, points and simplices for the verification suites."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .diffeo import AxisRotation, CircleRotation, DiffeoWord, Twist
from .geometry import cone, geodesic_arc, sphere_point, vertex

DEFAULT_SPHERE_POOL = (
    AxisRotation((1.0, 2.0, 2.0), 0.137),
    AxisRotation((-0.6, 0.0, 0.8), 0.291),
    AxisRotation((0.0, 0.0, 1.0), 0.2),
    Twist((0.0, 0.0, 1.0), (0.0, 0.15, 0.1)),
    Twist((0.8, 0.6, 0.0), (0.05, -0.2, 0.0, 0.1)),
    Twist((0.0, 0.6, 0.8), (0.1, 0.25)),
)

MAX_DENOMINATOR = 64


class WordSampler:
    """Random words of length 1..max_len.

    Circle words are products of rotations by random rationals (denominator
    at most 64, amounts in [-2, 2]); sphere words draw generators from
    ``pool`` with random exponents.
    """

    def __init__(self, manifold: str, seed: int, pool: Sequence = DEFAULT_SPHERE_POOL, max_len: int = 4):
        self.manifold = manifold
        self.rng = np.random.default_rng(seed)
        self.pool = tuple(pool)
        self.max_len = max_len

    def rational(self) -> Fraction:
        q = int(self.rng.integers(1, MAX_DENOMINATOR + 1))
        p = int(self.rng.integers(-2 * q, 2 * q + 1))
        return Fraction(p, q)

    def word(self, min_len: int = 1) -> DiffeoWord:
        n = int(self.rng.integers(min_len, self.max_len + 1))
        if self.manifold == "circle":
            return DiffeoWord(tuple((CircleRotation(self.rational()), 1) for _ in range(n)))
        gens = []
        for _ in range(n):
            g = self.pool[int(self.rng.integers(len(self.pool)))]
            gens.append((g, 1 if self.rng.random() < 0.5 else -1))
        return DiffeoWord(tuple(gens))

    def words(self, m: int) -> tuple:
        return tuple(self.word() for _ in range(m))

    def point(self):
        if self.manifold == "circle":
            return self.rational() % 1
        while True:
            v = self.rng.normal(size=3)
            if np.linalg.norm(v) > 1e-3:
                return sphere_point(v)

    def simplex(self, dim: int):
        """Random mapped simplex; may raise geometry errors (caller skips those)."""
        if dim == 0:
            return vertex(self.point())
        if dim == 1:
            return geodesic_arc(self.point(), self.point()).push(self.word(min_len=0))
        edge = geodesic_arc(self.point(), self.point()).push(self.word(min_len=0))
        return cone(self.point(), edge).push(self.word(min_len=0))
