import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flatcocycles.complexes import boundary, SingularChain
from flatcocycles.diffeo import AxisRotation, DiffeoWord, Twist
from flatcocycles.errors import AntipodalDegeneracy, PoleProximity
from flatcocycles.geometry import (
    DEFAULT_CONVENTIONS,
    NORTH,
    SOUTH,
    alpha_form,
    cone_triangle,
    frac_lift,
    geodesic_arc,
    geodesic_length,
    integrate_1d,
    integrate_alpha,
    integrate_volume,
    sphere_point,
    vertex,
)
from flatcocycles.suites import rotated_octahedron
from flatcocycles.zigzag import SphereZigzag

from oracles import alpha_along_geodesic, lhuilier_area, solid_angle

unit_vectors = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: np.linalg.norm(v) > 0.2).map(sphere_point)


def test_frac_lift_examples():
    assert frac_lift(1.25) == 0.25
    assert frac_lift(-0.25) == 0.75
    assert frac_lift(Fraction(7, 3)) == Fraction(1, 3)


@given(st.fractions())
def test_frac_lift_rational_range(t):
    f = frac_lift(t)
    assert 0 <= f < 1 and (t - f).denominator == 1


def test_circle_forward_arc():
    arc = geodesic_arc(Fraction(1, 5), Fraction(1, 10))
    assert arc.base.length == Fraction(9, 10)
    assert integrate_volume(arc) == Fraction(9, 10)


def test_quarter_great_circle_length():
    assert abs(geodesic_length(NORTH, (1.0, 0.0, 0.0)) - math.pi / 2) < 1e-10


def test_antipodal_arc_rejected():
    with pytest.raises(AntipodalDegeneracy):
        geodesic_arc(NORTH, SOUTH)
    with pytest.raises(AntipodalDegeneracy):
        cone_triangle(NORTH, (1.0, 0.0, 0.0), SOUTH)


def test_sphere_points_are_unit():
    p = sphere_point((3.0, 4.0, 12.0))
    assert abs(np.linalg.norm(p) - 1) < 1e-12


def test_degenerate_triangle_has_zero_volume():
    x = sphere_point((0.48, 0.64, 0.6))
    assert integrate_volume(cone_triangle(x, x, x)) == 0


def test_octant_volume():
    tri = cone_triangle(NORTH, (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    oracle = lhuilier_area(NORTH, (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)) / (4 * math.pi)
    assert abs(oracle - 1 / 8) < 1e-14
    assert abs(integrate_volume(tri) - 1 / 8) < 1e-8


def test_octahedron_total_volume():
    total = sum(integrate_volume(s) for s in rotated_octahedron())
    assert abs(total - 1) < 1e-8


def test_triangle_boundary_is_three_arcs():
    a, b, c = NORTH, (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
    expected = SingularChain([(1, geodesic_arc(b, c)), (-1, geodesic_arc(a, c)), (1, geodesic_arc(a, b))])
    assert boundary(cone_triangle(a, b, c)) == expected
    assert boundary(cone_triangle(a, b, c)).boundary().is_zero()


@given(unit_vectors, unit_vectors, unit_vectors)
def test_volume_matches_solid_angle(a, b, c):
    if min(np.linalg.norm(np.add(a, b)), np.linalg.norm(np.add(b, c)), np.linalg.norm(np.add(a, c))) < 0.05:
        return
    # the antipode of the apex on the edge (or nearly) is a degenerate cone
    num = float(np.dot(a, np.cross(b, c)))
    den = 1.0 + float(np.dot(a, b) + np.dot(b, c) + np.dot(c, a))
    if abs(num) < 0.05 and den < 0:
        return
    got = integrate_volume(cone_triangle(a, b, c))
    assert abs(got - solid_angle(a, b, c) / (4 * math.pi)) < 1e-9


@given(unit_vectors, unit_vectors)
def test_alpha_matches_solid_angle_oracle(a, b):
    if np.linalg.norm(np.add(a, b)) < 0.05 or min(np.linalg.norm(np.subtract(a, SOUTH)), np.linalg.norm(np.subtract(b, SOUTH))) < 0.05:
        return
    try:
        got = integrate_alpha(geodesic_arc(a, b))
    except PoleProximity:
        return
    assert abs(got - alpha_along_geodesic(a, b)) < 1e-9


@given(unit_vectors, unit_vectors)
def test_reversed_arc_negates_alpha(a, b):
    if np.linalg.norm(np.add(a, b)) < 0.05 or min(np.linalg.norm(np.subtract(a, SOUTH)), np.linalg.norm(np.subtract(b, SOUTH))) < 0.05:
        return
    try:
        forward = integrate_alpha(geodesic_arc(a, b))
    except PoleProximity:
        return
    assert abs(forward + integrate_alpha(geodesic_arc(b, a))) < 1e-9


def test_alpha_vanishes_on_meridian():
    a = sphere_point((0.6, 0.0, 0.8))
    b = sphere_point((0.8, 0.0, -0.6))
    assert abs(integrate_alpha(geodesic_arc(a, b))) < 1e-12


@pytest.mark.parametrize("theta", [0.3, 1.0, math.pi / 2, 2.5, 3.0])
def test_latitude_circle_period(theta):
    def f(t):
        phi = 2 * math.pi * t
        y = np.stack([math.sin(theta) * np.cos(phi), math.sin(theta) * np.sin(phi), np.full_like(phi, math.cos(theta))], axis=1)
        dy = 2 * math.pi * np.stack([-math.sin(theta) * np.sin(phi), math.sin(theta) * np.cos(phi), np.zeros_like(phi)], axis=1)
        return alpha_form(y, dy, SOUTH), None

    got = integrate_1d(f, DEFAULT_CONVENTIONS.quadrature)
    assert abs(got - (1 - math.cos(theta)) / 2) < 1e-8


def test_latitude_polygon_encloses_pole_with_unit_jump():
    # polygon around the pole: the integral is the volume swept from the far pole,
    # i.e. one full unit plus the (negatively oriented) cap around the pole
    ring = [sphere_point((math.cos(t), math.sin(t), -0.9)) for t in np.linspace(0, 2 * math.pi, 9)[:-1]]
    edges = [(ring[i], ring[(i + 1) % 8]) for i in range(8)]
    total = sum(integrate_alpha(geodesic_arc(a, b)) for a, b in edges)
    cap = sum(solid_angle(SOUTH, a, b) for a, b in edges) / (4 * math.pi)
    assert cap < 0
    assert abs(total - (1 + cap)) < 1e-9


def test_curve_through_pole_rejected():
    a = sphere_point((1.0, 0.0, -0.01))
    b = sphere_point((-1.0, 0.0, -0.01))
    with pytest.raises(PoleProximity):
        integrate_alpha(geodesic_arc(a, b))


def test_mapped_simplex_stokes_is_integral():
    w = DiffeoWord.of(Twist((0, 0, 1), (0.0, 0.2, 0.1)), AxisRotation((1, 2, 2), 0.3))
    s = cone_triangle((0.6, 0.0, 0.8), (0.0, 0.6, 0.8), (-0.3, 0.0, 0.95)).push(w)
    zz = SphereZigzag()
    raw = zz.w_top_raw(s)
    assert abs(raw - round(raw)) < 1e-9


def test_octahedron_covers_pole_once():
    zz = SphereZigzag()
    values = [zz.w_top(s) for s in rotated_octahedron()]
    assert sum(values) == 1
    assert sorted(values) == [0] * 7 + [1]


def test_arc_boundary_is_endpoint_difference():
    a, b = NORTH, (1.0, 0.0, 0.0)
    assert boundary(geodesic_arc(a, b)) == SingularChain([(1, vertex(b)), (-1, vertex(a))])
