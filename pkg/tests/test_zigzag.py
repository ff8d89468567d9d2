from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flatcocycles.complexes import SingularChain, coboundary
from flatcocycles.config import Config
from flatcocycles.diffeo import IDENTITY, CircleRotation, DiffeoWord
from flatcocycles.errors import GeometryError, SnapFailure
from flatcocycles.geometry import cone_triangle, geodesic_arc, sphere_point, vertex
from flatcocycles.sampling import WordSampler
from flatcocycles.suites import check_zigzag
from flatcocycles.zigzag import CircleZigzag, SphereZigzag, make_zigzag, snap

SPHERE = SphereZigzag()
CIRCLE = CircleZigzag()


def R(s):
    return DiffeoWord.of(CircleRotation(Fraction(s)))


def sphere_samples(seed, count):
    sampler = WordSampler("sphere", seed)
    out = []
    while len(out) < count:
        w = sampler.word()
        y = sampler.point()
        m = sampler.point()
        out.append((w, y, m))
    return out


def test_snap():
    assert snap(2.0000001) == (2, pytest.approx(1e-7))
    with pytest.raises(SnapFailure):
        snap(0.4)


def test_circle_w_top():
    assert CIRCLE.w_top(geodesic_arc(Fraction(1, 2), Fraction(0))) == 1
    assert CIRCLE.w_top(geodesic_arc(Fraction(1, 4), Fraction(3, 4))) == 0


def test_sphere_w_top_off_pole_is_zero():
    assert SPHERE.w_top(cone_triangle((0.0, 0.0, 1.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))) == 0


def test_circle_w_bottom_closed_form():
    w0 = CIRCLE.w(0)
    assert w0(R("1/2"))(vertex(Fraction(3, 4))) == -1
    for s in ("0", "1/3", "7/8", "-5/3"):
        assert w0(R(s))(vertex(Fraction(0))) == 0


@given(st.fractions(-3, 3, max_denominator=60), st.fractions(0, 1, max_denominator=60).filter(lambda t: t < 1))
def test_circle_w_bottom_is_minus_floor(s, t):
    s_t = s - (s.numerator // s.denominator)
    assert CIRCLE.w(0)(R(s))(vertex(t)) == -((t + s_t).numerator // (t + s_t).denominator)


def test_v_tilde_trivial_cases():
    y = sphere_point((0.1, -0.7, 0.3))
    assert SPHERE.v_tilde(IDENTITY, y) == 0
    g = WordSampler("sphere", 3).word()
    assert SPHERE.v_tilde(g, SPHERE.basepoint) == 0


def _path_difference(zz, g, path):
    total = 0.0
    for a, b in zip(path, path[1:]):
        arc = geodesic_arc(a, b)
        total += zz.eta_bar(arc.push(g)) - zz.eta_bar(arc)
    return total


def test_v_tilde_path_independence():
    checked = 0
    for g, y, m in sphere_samples(11, 50):
        try:
            direct = _path_difference(SPHERE, g, [SPHERE.basepoint, y])
            detour = _path_difference(SPHERE, g, [SPHERE.basepoint, m, y])
        except GeometryError:
            continue
        diff = direct - detour
        assert abs(diff - round(diff)) < 1e-6
        checked += 1
    assert checked >= 45


def test_w_mid_trivial_cases():
    arc = geodesic_arc((0.6, 0.0, 0.8), (0.0, 0.6, 0.8))
    assert abs(SPHERE.w(1)(IDENTITY)(arc)) < 1e-12
    x = SPHERE.basepoint
    g = WordSampler("sphere", 5).word()
    assert SPHERE.w(1, snap_values=True)(g)(geodesic_arc(x, x)) == 0


def test_w_mid_coboundary_matches_top():
    sampler = WordSampler("sphere", 21)
    checked = 0
    for _ in range(50):
        g = sampler.word()
        try:
            s = sampler.simplex(2)
            lhs = SPHERE.w(1, snap_values=True)(g).d()(s)
            rhs = SPHERE.w_top(s) - SPHERE.w_top(s.push(g))
        except GeometryError:
            continue
        assert lhs == rhs
        checked += 1
    assert checked >= 45


def test_w_bottom_path_independence():
    sampler = WordSampler("sphere", 31)
    x = SPHERE.basepoint
    checked = 0
    for _ in range(25):
        g1, g2 = sampler.word(), sampler.word()
        y, m = sampler.point(), sampler.point()
        dw1 = coboundary(SPHERE.w(1))(g1, g2)
        try:
            direct = dw1(geodesic_arc(x, y))
            detour = dw1(SingularChain([(1, geodesic_arc(x, m)), (1, geodesic_arc(m, y))]))
        except GeometryError:
            continue
        assert abs(direct - detour) < 1e-6
        assert abs(direct - round(direct)) < 1e-6
        checked += 1
    assert checked >= 20


def test_w_bottom_vanishes_at_basepoint():
    g1, g2 = WordSampler("sphere", 2).words(2)
    assert SPHERE.w(0, snap_values=True)(g1, g2)(vertex(SPHERE.basepoint)) == 0


def test_eta_bottom_of_identity_is_zero():
    y = sphere_point((0.3, 0.3, -0.2))
    assert SPHERE.eta(0)(IDENTITY)(vertex(y)) == 0


@pytest.mark.parametrize("manifold", ["circle", "sphere"])
def test_zigzag_equations_on_random_samples(manifold):
    zz = make_zigzag(manifold)
    sampler = WordSampler(manifold, 41)
    n = zz.n
    passed = 0
    for _ in range(15):
        words = sampler.words(n + 1)
        try:
            simplices = [sampler.simplex(k) for k in range(n + 1)]
        except GeometryError:
            continue
        r = check_zigzag(zz, words, simplices)
        assert r["status"] in ("pass", "skip"), r
        passed += r["status"] == "pass"
    assert passed >= 12


def test_chain_side_is_structural():
    zz = SphereZigzag()
    g = WordSampler("sphere", 8).words(2)
    assert (coboundary(zz.delta(0))(g[0]) - zz.delta(1)(g[0]).boundary()).is_zero()
    assert (coboundary(zz.delta(1))(*g) - zz.delta(2)(*g).boundary()).is_zero()


def test_delta_range_checked():
    with pytest.raises(ValueError):
        SPHERE.delta(3)
    with pytest.raises(ValueError):
        CIRCLE.eta(1)


def test_basepoint_from_config():
    zz = Config(manifold="sphere", basepoint=(0.0, 0.6, 0.8)).zigzag()
    assert np.allclose(zz.basepoint, (0.0, 0.6, 0.8))
