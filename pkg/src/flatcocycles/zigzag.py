"""Zig-zag choice data for S^1 (n = 1) and S^2 (n = 2).

Chain side: Delta_0 = x, Delta_1(g) = geodesic x -> g x and
Delta_2(g1, g2) = cone from x over g1 . Delta_1(g2), so that
delta Delta_k = boundary Delta_{k+1} holds term by term.

Cochain side: eta_bar is the real lift of the top S^1-cochain (frac on the
circle, the line integral of alpha on the sphere), w_n = Omega - d eta_bar,
and the lower w_k, eta_k solve

    delta w_k = -(-1)^(n-k+1) d w_{k-1},     delta eta_k = -(-1)^(n-k) d eta_{k-1}.

On the sphere the primitive of g^*alpha - alpha is
v_g(y) = frac(integral of g^*alpha - alpha along the geodesic x -> y);
every free integer constant is fixed by asking for value 0 at x.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .complexes import CHAIN, COCHAIN, CochainEvaluator, GroupCochain, SingularChain, coboundary, constant
from .diffeo import DiffeoWord, apply
from .errors import SnapFailure
from .geometry import (
    DEFAULT_CONVENTIONS,
    FormConventions,
    MappedSimplex,
    circle_point,
    cone,
    frac_lift,
    geodesic_arc,
    integrate_alpha,
    integrate_volume,
    sphere_point,
    vertex,
)

DEFAULT_SPHERE_BASEPOINT = (0.48, 0.64, 0.60)
DEFAULT_SNAP_TOL = 1e-6
TIE_TOL = 1e-9


def snap(raw, tol: float = DEFAULT_SNAP_TOL) -> tuple:
    """Nearest integer and residual; SnapFailure if the residual exceeds tol."""
    n = round(raw)
    residual = abs(raw - n)
    if residual > tol:
        raise SnapFailure(raw, float(residual), tol)
    return int(n), residual


def _frac_tied(v: float) -> float:
    """frac(v), sending values within TIE_TOL of an integer to exactly 0.

    Words for the same map can differ by rounding; without the tie rule a
    primitive that is exactly integral (e.g. under a symmetry) could land on
    either side of 1.
    """
    f = v - math.floor(v)
    if f < TIE_TOL or f > 1.0 - TIE_TOL:
        return 0.0
    return f


class Zigzag:
    """Shared interface; see CircleZigzag and SphereZigzag."""

    n: int
    manifold: str

    def __init__(self, basepoint, snap_tol: float = DEFAULT_SNAP_TOL):
        self.basepoint = basepoint
        self.snap_tol = snap_tol

    # chain side ----------------------------------------------------------

    def build_delta(self, k: int, words) -> SingularChain:
        return self.delta(k)(*words)

    def delta(self, k: int) -> GroupCochain:
        if not 0 <= k <= self.n:
            raise ValueError(f"Delta_k needs 0 <= k <= {self.n}")
        x = self.basepoint
        if k == 0:
            return constant(SingularChain.of(vertex(x)), CHAIN, 0, "Delta_0")
        if k == 1:
            return GroupCochain(1, CHAIN, lambda g: SingularChain.of(geodesic_arc(x, apply(g, x))), 1, "Delta_1")

        def delta2(g1, g2):
            return SingularChain.of(cone(x, geodesic_arc(x, apply(g2, x)).push(g1)))

        return GroupCochain(2, CHAIN, delta2, 2, "Delta_2")

    # cochain side --------------------------------------------------------

    def eta_bar(self, s: MappedSimplex):
        raise NotImplementedError

    def volume(self, s: MappedSimplex):
        raise NotImplementedError

    def w_top_raw(self, s: MappedSimplex):
        """integral of Omega over s minus eta_bar on its boundary (an integer up to quadrature)."""
        total = self.volume(s)
        for sign, f in s.faces():
            total = total - sign * self.eta_bar(f)
        return total

    def w_top(self, s: MappedSimplex) -> int:
        return snap(self.w_top_raw(s), self.snap_tol)[0]

    def _snapped(self, ev: CochainEvaluator) -> CochainEvaluator:
        tol = self.snap_tol
        return CochainEvaluator(ev.dim, "Z", lambda s: snap(ev(s), tol)[0])

    def eta_bar_cochain(self) -> GroupCochain:
        return constant(CochainEvaluator(self.n - 1, "R", self.eta_bar), COCHAIN, self.n - 1, "eta_bar", "R")

    def w(self, k: int, snap_values: bool = False) -> GroupCochain:
        """w_k as a group (n-k)-cochain with values in k-cochains; raw reals unless snap_values."""
        if not 0 <= k <= self.n:
            raise ValueError(f"w_k needs 0 <= k <= {self.n}")
        raw = self._w_raw(k)
        if not snap_values:
            return raw
        fn = raw.fn
        return GroupCochain(raw.degree, COCHAIN, lambda *g: self._snapped(fn(*g)), k, raw.name, "Z")

    def eta(self, k: int) -> GroupCochain:
        """eta_k with real representatives; its values are meaningful mod 1."""
        if not 0 <= k <= self.n - 1:
            raise ValueError(f"eta_k needs 0 <= k <= {self.n - 1}")
        return self._eta(k)

    def eta_builder(self, k: int, words) -> CochainEvaluator:
        return self.eta(k)(*words)

    def _w_raw(self, k: int) -> GroupCochain:
        raise NotImplementedError

    def _eta(self, k: int) -> GroupCochain:
        raise NotImplementedError


class CircleZigzag(Zigzag):
    """Exact rational zig-zag on the circle; basepoint default 0."""

    n = 1
    manifold = "circle"

    def __init__(self, basepoint=Fraction(0), snap_tol: float = DEFAULT_SNAP_TOL):
        super().__init__(circle_point(basepoint), snap_tol)

    def eta_bar(self, s: MappedSimplex) -> Fraction:
        return frac_lift(s.point("start"))

    def volume(self, s: MappedSimplex) -> Fraction:
        return integrate_volume(s)

    def w_bottom(self, g: DiffeoWord) -> CochainEvaluator:
        """w_0(g) = g^* eta_bar - eta_bar, shifted by a constant to vanish at x; integer valued."""
        x = self.basepoint
        offset = frac_lift(apply(g, x)) - frac_lift(x)

        def value(s):
            t = s.point("start")
            return frac_lift(apply(g, t)) - frac_lift(t) - offset

        return CochainEvaluator(0, "Z", value)

    def _w_raw(self, k: int) -> GroupCochain:
        if k == 1:
            return constant(CochainEvaluator(1, "Z", self.w_top_raw), COCHAIN, 1, "w_1")
        return GroupCochain(1, COCHAIN, self.w_bottom, 0, "w_0")

    def _eta(self, k: int) -> GroupCochain:
        return constant(CochainEvaluator(0, "R/Z", self.eta_bar), COCHAIN, 0, "eta_0", "R/Z")


class SphereZigzag(Zigzag):
    """Quadrature-based zig-zag on S^2 with alpha singular at ``conv.pole``."""

    n = 2
    manifold = "sphere"

    def __init__(
        self,
        basepoint=DEFAULT_SPHERE_BASEPOINT,
        conv: FormConventions = DEFAULT_CONVENTIONS,
        snap_tol: float = DEFAULT_SNAP_TOL,
    ):
        super().__init__(sphere_point(basepoint), snap_tol)
        self.conv = conv
        self._alpha: dict = {}
        self._vol: dict = {}
        self._vt: dict = {}

    def eta_bar(self, s: MappedSimplex) -> float:
        try:
            return self._alpha[s]
        except KeyError:
            v = self._alpha[s] = integrate_alpha(s, self.conv)
            return v

    def volume(self, s: MappedSimplex) -> float:
        try:
            return self._vol[s]
        except KeyError:
            v = self._vol[s] = integrate_volume(s, self.conv)
            return v

    def v_tilde(self, g: DiffeoWord, y) -> float:
        """Primitive of g^* alpha - alpha mod 1, integrated along the geodesic x -> y."""
        key = (g, y)
        try:
            return self._vt[key]
        except KeyError:
            pass
        path = geodesic_arc(self.basepoint, y)
        v = self._vt[key] = _frac_tied(self.eta_bar(path.push(g)) - self.eta_bar(path))
        return v

    def w_mid(self, g: DiffeoWord) -> CochainEvaluator:
        """w_1(g): integer 1-cochain with d w_1(g) = w_2 - g^* w_2 (raw reals)."""

        def value(s):
            return (
                self.eta_bar(s.push(g))
                - self.eta_bar(s)
                - self.v_tilde(g, s.point("end"))
                + self.v_tilde(g, s.point("start"))
            )

        return CochainEvaluator(1, "Z", value)

    def w_bottom(self, g1: DiffeoWord, g2: DiffeoWord) -> CochainEvaluator:
        """w_0(g1, g2)(y) = -(delta w_1)(g1, g2) on the geodesic x -> y; zero at x."""
        dw1 = coboundary(self._w_raw(1))(g1, g2)
        x = self.basepoint

        def value(s):
            return -dw1(geodesic_arc(x, s.point("start")))

        return CochainEvaluator(0, "Z", value)

    def _w_raw(self, k: int) -> GroupCochain:
        if k == 2:
            return constant(CochainEvaluator(2, "Z", self.w_top_raw), COCHAIN, 2, "w_2")
        if k == 1:
            return GroupCochain(1, COCHAIN, self.w_mid, 1, "w_1")
        return GroupCochain(2, COCHAIN, self.w_bottom, 0, "w_0")

    def _eta(self, k: int) -> GroupCochain:
        if k == 1:
            return constant(CochainEvaluator(1, "R/Z", self.eta_bar), COCHAIN, 1, "eta_1", "R/Z")

        # delta eta_1 = d eta_0 forces eta_0(g) = -v_g
        def eta0(g):
            return CochainEvaluator(0, "R/Z", lambda s: -self.v_tilde(g, s.point("start")))

        return GroupCochain(1, COCHAIN, eta0, 0, "eta_0", "R/Z")

    def clear_caches(self):
        self._alpha.clear()
        self._vol.clear()
        self._vt.clear()


def make_zigzag(manifold: str, basepoint=None, conv: FormConventions = DEFAULT_CONVENTIONS, snap_tol: float = DEFAULT_SNAP_TOL) -> Zigzag:
    if manifold == "circle":
        return CircleZigzag(Fraction(0) if basepoint is None else basepoint, snap_tol)
    if manifold == "sphere":
        return SphereZigzag(DEFAULT_SPHERE_BASEPOINT if basepoint is None else basepoint, conv, snap_tol)
    raise ValueError(f"unknown manifold {manifold!r}")

