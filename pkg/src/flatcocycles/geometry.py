"""Circle and sphere geometry: points, singular simplices, the forms and their integrals.

Circle points are exact rationals in turns, canonical in [0, 1).  Sphere
points are 3-tuples of floats.  A singular simplex is a ``MappedSimplex``:
a base (vertex, geodesic arc, or geodesic cone from an apex over a 1-simplex)
followed by a prefix word.  Simplices are compared structurally, never
geometrically.

On the sphere the volume form is normalized to total mass 1 and the primitive

    alpha_y(v) = ((n x y) . v) / (4 pi (1 + n . y)),   n = -pole,

satisfies d alpha = Omega away from the pole, with unit period around it.
In spherical coordinates about n this is (1 - cos theta) / (4 pi) dphi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

import numpy as np

from .diffeo import IDENTITY, DiffeoWord, apply, parse_rational, push
from .errors import AntipodalDegeneracy, PoleProximity, QuadratureNonConvergence

FOUR_PI = 4.0 * math.pi
ANTIPODAL_TOL = 1e-9

CirclePoint = Fraction
SpherePoint = tuple
Point = Union[CirclePoint, SpherePoint]


def frac_lift(t):
    """t - floor(t); exact for Fractions."""
    return t - math.floor(t)


def circle_point(t) -> Fraction:
    return frac_lift(parse_rational(t))


def sphere_point(v) -> tuple:
    a = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise ValueError("zero vector is not a sphere point")
    if abs(norm - 1.0) > 1e-15:
        a = a / norm
    return tuple(float(c) for c in a)


def is_circle_point(p) -> bool:
    return isinstance(p, Fraction)


NORTH = (0.0, 0.0, 1.0)
SOUTH = (0.0, 0.0, -1.0)


@dataclass(frozen=True)
class QuadratureConfig:
    order: int = 10
    max_depth: int = 40
    tol: float = 1e-11
    min_depth: int = 2


@dataclass(frozen=True)
class FormConventions:
    """Pole of alpha, global orientation sign of Omega, quadrature and pole guard."""

    pole: tuple = SOUTH
    orientation: int = 1
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    epsilon_pole: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "pole", sphere_point(self.pole))
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")


DEFAULT_CONVENTIONS = FormConventions()


# --- simplices -----------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    point: Point
    dim = 0


@dataclass(frozen=True)
class Arc:
    """Geodesic from start to end.  On the circle: the forward arc of length (end - start) mod 1."""

    start: Point
    end: Point
    dim = 1

    @property
    def length(self) -> Fraction:
        return frac_lift(self.end - self.start)


@dataclass(frozen=True)
class Cone:
    """Union of geodesics from ``apex`` to the points of the 1-simplex ``edge``.

    Vertex order is (apex, edge start, edge end), so the boundary is
    edge - arc(apex, edge end) + arc(apex, edge start).
    """

    apex: Point
    edge: "MappedSimplex"
    dim = 2


@dataclass(frozen=True)
class MappedSimplex:
    base: Union[Vertex, Arc, Cone]
    prefix: DiffeoWord = IDENTITY

    @property
    def dim(self) -> int:
        return self.base.dim

    def push(self, w: DiffeoWord) -> "MappedSimplex":
        """Left action w . sigma."""
        return mapped(self.base, w * self.prefix)

    def point(self, which: str) -> Point:
        """Image of the base start/end vertex (arcs) or of a vertex (points)."""
        if isinstance(self.base, Vertex):
            return self.base.point
        return apply(self.prefix, getattr(self.base, which))

    def faces(self) -> list:
        """Signed faces (sign, simplex) of the alternating boundary."""
        b = self.base
        if isinstance(b, Vertex):
            return []
        if isinstance(b, Arc):
            return [(1, vertex(apply(self.prefix, b.end))), (-1, vertex(apply(self.prefix, b.start)))]
        e = b.edge
        to_end = MappedSimplex(Arc(b.apex, e.point("end")), self.prefix)
        to_start = MappedSimplex(Arc(b.apex, e.point("start")), self.prefix)
        return [(1, e.push(self.prefix)), (-1, to_end), (1, to_start)]


def _canonical(p: Point) -> Point:
    return p if is_circle_point(p) else sphere_point(p)


def vertex(p: Point) -> MappedSimplex:
    return MappedSimplex(Vertex(_canonical(p)))


def mapped(base, prefix: DiffeoWord = IDENTITY) -> MappedSimplex:
    """Construct w . base; vertices are always stored with the prefix applied."""
    if isinstance(base, Vertex):
        return MappedSimplex(Vertex(apply(prefix, base.point)))
    return MappedSimplex(base, prefix)


def _check_not_antipodal(a, b):
    if is_circle_point(a):
        return
    if float(np.linalg.norm(np.add(a, b))) < ANTIPODAL_TOL:
        raise AntipodalDegeneracy(f"points {a} and {b} are antipodal")


def geodesic_arc(a: Point, b: Point) -> MappedSimplex:
    """Constant-speed minimal geodesic a -> b (circle: forward arc)."""
    a, b = _canonical(a), _canonical(b)
    _check_not_antipodal(a, b)
    return MappedSimplex(Arc(a, b))


def cone(apex: Point, edge: MappedSimplex) -> MappedSimplex:
    if edge.dim != 1:
        raise ValueError("cone needs a 1-simplex edge")
    apex = _canonical(apex)
    _check_not_antipodal(apex, edge.point("start"))
    _check_not_antipodal(apex, edge.point("end"))
    return MappedSimplex(Cone(apex, edge))


def cone_triangle(v0: Point, v1: Point, v2: Point) -> MappedSimplex:
    return cone(v0, geodesic_arc(v1, v2))


# --- parametrizations ----------------------------------------------------


def _slerp(a: np.ndarray, b: np.ndarray, t: np.ndarray):
    rho = 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))
    t = t[:, None]
    if rho < 1e-9:
        # chord parametrization; exact image, speed differs by O(rho^2)
        p = (1.0 - t) * a + t * b
        r = np.linalg.norm(p, axis=1)[:, None]
        y = p / r
        dp = np.broadcast_to(b - a, p.shape)
        dy = (dp - y * np.sum(y * dp, axis=1)[:, None]) / r
        return y, dy
    s = math.sin(rho)
    y = (np.sin((1.0 - t) * rho) * a + np.sin(t * rho) * b) / s
    dy = rho * (-np.cos((1.0 - t) * rho) * a + np.cos(t * rho) * b) / s
    return y, dy


def curve(s: MappedSimplex) -> Callable:
    """t -> (points, velocities) for a sphere 1-simplex, t in [0, 1]."""
    a = np.array(s.base.start, dtype=float)
    b = np.array(s.base.end, dtype=float)
    prefix = s.prefix

    def f(t):
        y, dy = _slerp(a, b, np.asarray(t, dtype=float))
        y, (dy,) = push(prefix, y, dy)
        return y, dy

    return f


def surface(s: MappedSimplex) -> Callable:
    """(u, v) -> (points, d/du, d/dv, |chord|, |d chord/du|) for a sphere cone simplex.

    The cone is parametrized by radial projection of the chord from the apex
    to edge(v); this is the same geodesic cone as the constant-speed one.
    """
    x = np.array(s.base.apex, dtype=float)
    edge = curve(s.base.edge)
    prefix = s.prefix

    def f(u, v):
        c, dc = edge(v)
        u = np.asarray(u, dtype=float)[:, None]
        p = (1.0 - u) * x + u * c
        r = np.linalg.norm(p, axis=1)[:, None]
        if float(r.min()) < ANTIPODAL_TOL:
            raise AntipodalDegeneracy("cone edge passes through the antipode of its apex")
        y = p / r
        pu = c - x
        pv = u * dc
        yu = (pu - y * np.sum(y * pu, axis=1)[:, None]) / r
        yv = (pv - y * np.sum(y * pv, axis=1)[:, None]) / r
        y, (yu, yv) = push(prefix, y, yu, yv)
        return y, yu, yv, r[:, 0], np.linalg.norm(pu, axis=1), np.linalg.norm(pv, axis=1)

    return f


# --- quadrature ----------------------------------------------------------


@lru_cache(maxsize=None)
def gauss_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1.0) / 2.0, w / 2.0


def integrate_1d(f: Callable, cfg: QuadratureConfig) -> float:
    """Adaptive composite Gauss-Legendre on [0, 1].

    ``f(t)`` returns (values, scale) where scale is the parameter distance to
    the nearest singularity (or None).  A panel is accepted when halving it
    changes its estimate by less than ``tol * width`` and it is no wider than
    the smallest scale seen at its nodes.  Deterministic for fixed cfg.
    """
    x, w = gauss_nodes(cfg.order)
    q = len(x)
    starts = np.array([0.0])
    widths = np.array([1.0])
    vals, _ = f(x)
    coarse = np.array([float(w @ vals)])
    accepted = []
    depth = 0
    while starts.size:
        depth += 1
        if depth > cfg.max_depth:
            raise QuadratureNonConvergence(f"1-d quadrature did not converge within depth {cfg.max_depth}")
        h = widths / 2.0
        cs = np.concatenate([starts, starts + h])
        ch = np.concatenate([h, h])
        nodes = (cs[:, None] + ch[:, None] * x[None, :]).ravel()
        vals, scale = f(nodes)
        sums = (vals.reshape(-1, q) @ w) * ch
        m = starts.size
        fine = sums[:m] + sums[m:]
        ok = np.abs(fine - coarse) <= cfg.tol * widths
        if scale is not None:
            smin = scale.reshape(-1, q).min(axis=1)
            resolved = ch <= smin
            ok &= resolved[:m] & resolved[m:]
        if depth < cfg.min_depth:
            ok[:] = False
        accepted.extend(fine[ok].tolist())
        keep = ~ok
        starts = np.concatenate([starts[keep], (starts + h)[keep]])
        widths = np.concatenate([h[keep], h[keep]])
        coarse = np.concatenate([sums[:m][keep], sums[m:][keep]])
    return math.fsum(accepted)


def integrate_2d(f: Callable, cfg: QuadratureConfig) -> float:
    """Adaptive tensor Gauss-Legendre on [0, 1]^2; same acceptance rule as ``integrate_1d``.

    ``f(u, v)`` returns (values, scale_u, scale_v).
    """
    x, w = gauss_nodes(cfg.order)
    q = len(x)
    UU, VV = np.meshgrid(x, x, indexing="ij")
    uu, vv = UU.ravel(), VV.ravel()
    ww = np.outer(w, w).ravel()
    q2 = q * q
    u0 = np.array([0.0])
    v0 = np.array([0.0])
    hs = np.array([1.0])
    vals, _, _ = f(uu, vv)
    coarse = np.array([float(ww @ vals)])
    accepted = []
    depth = 0
    max_depth = min(cfg.max_depth, 16)
    while u0.size:
        depth += 1
        if depth > max_depth:
            raise QuadratureNonConvergence(f"2-d quadrature did not converge within depth {max_depth}")
        h = hs / 2.0
        m = u0.size
        cu = np.concatenate([u0, u0 + h, u0, u0 + h])
        cv = np.concatenate([v0, v0, v0 + h, v0 + h])
        ch = np.concatenate([h, h, h, h])
        U = (cu[:, None] + ch[:, None] * uu[None, :]).ravel()
        V = (cv[:, None] + ch[:, None] * vv[None, :]).ravel()
        vals, su, sv = f(U, V)
        sums = (vals.reshape(-1, q2) @ ww) * ch * ch
        parts = sums.reshape(4, m)
        fine = parts.sum(axis=0)
        ok = np.abs(fine - coarse) <= cfg.tol * hs * hs
        smin = np.minimum(su.reshape(-1, q2).min(axis=1), sv.reshape(-1, q2).min(axis=1))
        ok &= (ch <= smin).reshape(4, m).all(axis=0)
        if depth < cfg.min_depth:
            ok[:] = False
        accepted.extend(fine[ok].tolist())
        keep = ~ok
        u0 = np.concatenate([u0[keep], (u0 + h)[keep], u0[keep], (u0 + h)[keep]])
        v0 = np.concatenate([v0[keep], v0[keep], (v0 + h)[keep], (v0 + h)[keep]])
        hs = np.concatenate([h[keep]] * 4)
        coarse = np.concatenate([parts[i][keep] for i in range(4)])
    return math.fsum(accepted)


# --- forms ---------------------------------------------------------------


def alpha_form(Y: np.ndarray, dY: np.ndarray, pole) -> np.ndarray:
    """alpha evaluated on velocity rows dY at points Y (orientation +1)."""
    P = np.asarray(pole, dtype=float)
    d2 = np.sum((Y - P) ** 2, axis=1)
    # 1 + n.y = |y - pole|^2 / 2 on the unit sphere, without cancellation
    return np.sum(np.cross(-P, Y) * dY, axis=1) / (FOUR_PI * 0.5 * d2)


def integrate_volume(s: MappedSimplex, conv: FormConventions = DEFAULT_CONVENTIONS):
    """Integral of the normalized volume form over an n-simplex (n = 1 circle, n = 2 sphere)."""
    if isinstance(s.base, Arc) and is_circle_point(s.base.start):
        return conv.orientation * s.base.length
    if not isinstance(s.base, Cone):
        raise ValueError("integrate_volume needs a circle arc or a sphere 2-simplex")
    if s.base.edge.base.start == s.base.edge.base.end:
        return 0.0
    surf = surface(s)

    def integrand(u, v):
        y, yu, yv, r, nu, nv = surf(u, v)
        vals = np.sum(y * np.cross(yu, yv), axis=1) / FOUR_PI
        su = r / np.maximum(nu, 1e-300)
        sv = r / np.maximum(nv, 1e-300)
        return vals, su, sv

    return conv.orientation * integrate_2d(integrand, conv.quadrature)


def integrate_alpha(c: MappedSimplex, conv: FormConventions = DEFAULT_CONVENTIONS) -> float:
    """Line integral of the primitive alpha along a sphere 1-simplex."""
    if c.dim != 1 or is_circle_point(c.base.start):
        raise ValueError("integrate_alpha needs a sphere 1-simplex")
    pole = np.array(conv.pole)
    if c.base.start == c.base.end:
        p = np.array([c.point("start")])
        if float(np.linalg.norm(p[0] - pole)) < conv.epsilon_pole:
            raise PoleProximity(f"degenerate curve sits at the pole {conv.pole}")
        return 0.0
    path = curve(c)
    eps = conv.epsilon_pole

    def integrand(t):
        y, dy = path(t)
        dist = np.linalg.norm(y - pole, axis=1)
        if float(dist.min()) < eps:
            raise PoleProximity(f"curve passes within {float(dist.min()):.2e} of the pole")
        speed = np.linalg.norm(dy, axis=1)
        return alpha_form(y, dy, pole), dist / np.maximum(speed, 1e-300)

    return conv.orientation * integrate_1d(integrand, conv.quadrature)


def geodesic_length(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))
