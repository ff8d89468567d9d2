"""Volume-preserving diffeomorphisms of S^1 and S^2 as words in closed-form generators.

A word ``[g_1, ..., g_m]`` denotes the composite ``g_1 o g_2 o ... o g_m``, so
``apply`` runs the generators right to left and ``compose(u, v)`` is plain
concatenation.  Words are never simplified; two words for the same map are
different objects and all cocycle identities are checked on them as given.

Sphere maps act on R^3 (rotations, and twists extended by the same formula
off the sphere), which lets tangent vectors be pushed with an ambient
Jacobian that has no chart singularities.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

MAX_TWIST_DEGREE = 8

TWO_PI = 2.0 * math.pi


def _unit(v) -> tuple:
    a = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise ValueError("axis must be a nonzero vector")
    if abs(norm - 1.0) > 1e-15:
        # already-unit axes are kept bit for bit so JSON round trips are exact
        a = a / norm
    return tuple(float(c) for c in a)


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"`` strings, ints and exact decimal strings into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # floats are accepted but converted through their shortest repr
        return Fraction(repr(value))
    raise TypeError(f"cannot read a rational from {value!r}")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def rotate(V: np.ndarray, axis: np.ndarray, angle) -> np.ndarray:
    """Rodrigues rotation of the rows of ``V`` about ``axis``; ``angle`` may be per-row."""
    c = np.cos(angle)
    s = np.sin(angle)
    if np.ndim(angle):
        c = c[:, None]
        s = s[:, None]
    cross = np.cross(axis, V)
    along = (V @ axis)[:, None] * axis
    return V * c + cross * s + along * (1.0 - c)


@dataclass(frozen=True)
class CircleRotation:
    turns: Fraction

    def __post_init__(self):
        object.__setattr__(self, "turns", parse_rational(self.turns))

    def act(self, t: Fraction, exp: int) -> Fraction:
        s = t + exp * self.turns
        return s - math.floor(s)

    def to_json(self) -> dict:
        return {"kind": "circle_rotation", "turns": format_rational(self.turns)}


@dataclass(frozen=True)
class AxisRotation:
    axis: tuple
    turns: float

    def __post_init__(self):
        object.__setattr__(self, "axis", _unit(self.axis))
        object.__setattr__(self, "turns", float(self.turns))

    def act(self, X: np.ndarray, exp: int) -> np.ndarray:
        return rotate(X, np.array(self.axis), exp * TWO_PI * self.turns)

    def push(self, X: np.ndarray, vectors: Sequence[np.ndarray], exp: int):
        a = np.array(self.axis)
        angle = exp * TWO_PI * self.turns
        return rotate(X, a, angle), [rotate(V, a, angle) for V in vectors]

    def matrix(self, exp: int = 1) -> np.ndarray:
        return self.act(np.eye(3), exp).T

    def to_json(self) -> dict:
        return {"kind": "axis_rotation", "axis": list(self.axis), "turns": self.turns}


@dataclass(frozen=True)
class Twist:
    """(z, phi) -> (z, phi + 2 pi h(z)) in cylindrical coordinates about ``axis``.

    ``coeffs`` are the coefficients of h in increasing degree, h in turns.
    Area on the sphere is proportional to dz ^ dphi, so the map is area preserving.
    """

    axis: tuple
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "axis", _unit(self.axis))
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (0.0,)
        if len(coeffs) - 1 > MAX_TWIST_DEGREE:
            raise ValueError(f"twist profile degree exceeds {MAX_TWIST_DEGREE}")
        object.__setattr__(self, "coeffs", coeffs)

    def _angles(self, X: np.ndarray, exp: int):
        a = np.array(self.axis)
        z = X @ a
        return a, z, exp * TWO_PI * P.polyval(z, self.coeffs)

    def act(self, X: np.ndarray, exp: int) -> np.ndarray:
        a, _, ang = self._angles(X, exp)
        return rotate(X, a, ang)

    def push(self, X: np.ndarray, vectors: Sequence[np.ndarray], exp: int):
        a, z, ang = self._angles(X, exp)
        Y = rotate(X, a, ang)
        rate = exp * TWO_PI * P.polyval(z, P.polyder(self.coeffs))
        swirl = np.cross(a, Y)
        out = [rotate(V, a, ang) + (rate * (V @ a))[:, None] * swirl for V in vectors]
        return Y, out

    def to_json(self) -> dict:
        return {"kind": "twist", "axis": list(self.axis), "coeffs": list(self.coeffs)}


Generator = Union[CircleRotation, AxisRotation, Twist]


@dataclass(frozen=True)
class DiffeoWord:
    gens: tuple = ()

    def __post_init__(self):
        gens = tuple((g, int(e)) for g, e in self.gens)
        for _, e in gens:
            if e not in (1, -1):
                raise ValueError("word exponents must be +1 or -1")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, *gens: Generator) -> "DiffeoWord":
        return cls(tuple((g, 1) for g in gens))

    def __mul__(self, other: "DiffeoWord") -> "DiffeoWord":
        return DiffeoWord(self.gens + other.gens)

    def __len__(self) -> int:
        return len(self.gens)

    @property
    def is_identity(self) -> bool:
        return not self.gens

    @property
    def on_circle(self) -> bool:
        return all(isinstance(g, CircleRotation) for g, _ in self.gens)

    def circle_turns(self) -> Fraction:
        """Total rotation amount of a circle word (not reduced mod 1)."""
        return sum((e * g.turns for g, e in self.gens), Fraction(0))

    def to_json(self) -> list:
        out = []
        for g, e in self.gens:
            d = g.to_json()
            if e == -1:
                d["exp"] = -1
            out.append(d)
        return out

    def __repr__(self) -> str:
        if not self.gens:
            return "DiffeoWord(id)"
        return f"DiffeoWord({json.dumps(self.to_json())})"


IDENTITY = DiffeoWord()


def compose(u: DiffeoWord, v: DiffeoWord) -> DiffeoWord:
    return u * v


def invert(w: DiffeoWord) -> DiffeoWord:
    return DiffeoWord(tuple((g, -e) for g, e in reversed(w.gens)))


def apply(w: DiffeoWord, p):
    """Image of one point: a Fraction on the circle, a 3-tuple on the sphere.

    Single points always go through this function, so two words with the
    same generator sequence give bitwise identical images.
    """
    if isinstance(p, Fraction):
        for g, e in reversed(w.gens):
            p = g.act(p, e)
        return p
    X = np.array(p, dtype=float).reshape(1, 3)
    for g, e in reversed(w.gens):
        X = g.act(X, e)
    return tuple(float(c) for c in X[0])


def apply_many(w: DiffeoWord, X: np.ndarray) -> np.ndarray:
    for g, e in reversed(w.gens):
        X = g.act(X, e)
    return X


def push(w: DiffeoWord, X: np.ndarray, *vectors: np.ndarray):
    """Push points (N,3) and tangent vectors (N,3) at them through ``w``."""
    vecs = list(vectors)
    for g, e in reversed(w.gens):
        X, vecs = g.push(X, vecs, e)
    return X, vecs


def differential(w: DiffeoWord, p) -> np.ndarray:
    """Ambient 3x3 Jacobian of ``w`` at the sphere point ``p``.

    Restricted to the tangent plane at p it is the differential, with image
    in the tangent plane at ``apply(w, p)``.
    """
    X = np.array(p, dtype=float).reshape(1, 3)
    basis = [np.eye(3)[i : i + 1] for i in range(3)]
    _, cols = push(w, X, *basis)
    return np.stack([c[0] for c in cols], axis=1)


def tangent_frame(p) -> tuple:
    """Oriented orthonormal frame (e1, e2) of the tangent plane at p: e1 x e2 = p."""
    p = np.asarray(p, dtype=float)
    helper = np.array([1.0, 0.0, 0.0]) if abs(p[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(helper, p)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(p, e1)
    return e1, e2


def jacobian_det(w: DiffeoWord, p) -> float:
    """Determinant of the differential in oriented orthonormal frames (1 for area-preserving maps)."""
    J = differential(w, p)
    e1, e2 = tangent_frame(p)
    q = np.array(apply(w, p))
    return float(q @ np.cross(J @ e1, J @ e2))


# --- serialization -------------------------------------------------------


def generator_from_json(d: dict) -> tuple:
    kind = d.get("kind")
    exp = int(d.get("exp", 1))
    if kind == "circle_rotation":
        g = CircleRotation(parse_rational(d["turns"]))
    elif kind == "axis_rotation":
        g = AxisRotation(tuple(d["axis"]), float(d["turns"]))
    elif kind == "twist":
        g = Twist(tuple(d["axis"]), tuple(d["coeffs"]))
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return g, exp


def word_from_json(items: Iterable[dict]) -> DiffeoWord:
    if not isinstance(items, list):
        raise ValueError("a word is a JSON array of generator objects")
    return DiffeoWord(tuple(generator_from_json(d) for d in items))


def dumps_word(w: DiffeoWord) -> str:
    return json.dumps(w.to_json())


def loads_word(s: str) -> DiffeoWord:
    return word_from_json(json.loads(s))
