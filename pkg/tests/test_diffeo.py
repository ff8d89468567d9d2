import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flatcocycles.diffeo import (
    IDENTITY,
    AxisRotation,
    CircleRotation,
    DiffeoWord,
    Twist,
    apply,
    compose,
    differential,
    dumps_word,
    invert,
    jacobian_det,
    loads_word,
    tangent_frame,
    word_from_json,
)
from flatcocycles.geometry import sphere_point
from flatcocycles.sampling import DEFAULT_SPHERE_POOL, WordSampler

unit = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: np.linalg.norm(v) > 0.2).map(sphere_point)
sphere_words = st.lists(st.tuples(st.sampled_from(DEFAULT_SPHERE_POOL), st.sampled_from([1, -1])), max_size=5).map(lambda g: DiffeoWord(tuple(g)))
circle_words = st.lists(st.fractions(-3, 3, max_denominator=50).map(CircleRotation), max_size=4).map(lambda g: DiffeoWord.of(*g))


def close(p, q, tol=1e-10):
    return np.max(np.abs(np.subtract(p, q))) < tol


def test_identity_word():
    assert apply(IDENTITY, Fraction(1, 3)) == Fraction(1, 3)
    assert apply(IDENTITY, (0.0, 0.6, 0.8)) == (0.0, 0.6, 0.8)
    assert invert(IDENTITY) == IDENTITY


def test_circle_rotation_exact():
    assert apply(DiffeoWord.of(CircleRotation(Fraction(1, 3))), Fraction(1, 2)) == Fraction(5, 6)


def test_quarter_turn():
    assert close(apply(DiffeoWord.of(AxisRotation((0, 0, 1), 0.25)), (1.0, 0.0, 0.0)), (0.0, 1.0, 0.0), 1e-12)


def test_inverse_of_rotation_is_negated_rotation():
    w = invert(DiffeoWord.of(CircleRotation(Fraction(1, 5))))
    assert apply(w, Fraction(0)) == Fraction(4, 5)


def test_invert_reverses_and_negates():
    t, r = Twist((0, 0, 1), (0.1, 0.2)), AxisRotation((1, 0, 0), 0.3)
    assert invert(DiffeoWord.of(t, r)).gens == ((r, -1), (t, -1))


def test_words_apply_right_to_left():
    r = AxisRotation((0, 0, 1), 0.25)
    s = AxisRotation((1, 0, 0), 0.25)
    p = (1.0, 0.0, 0.0)
    assert close(apply(DiffeoWord.of(s, r), p), apply(DiffeoWord.of(s), apply(DiffeoWord.of(r), p)))


@given(circle_words, circle_words, st.fractions(0, 1, max_denominator=30).filter(lambda t: t < 1))
def test_circle_group_law_exact(u, v, t):
    assert apply(compose(u, v), t) == apply(u, apply(v, t))
    assert apply(invert(u), apply(u, t)) == t


@given(sphere_words, sphere_words, unit)
def test_sphere_group_law(u, v, p):
    assert close(apply(compose(u, v), p), apply(u, apply(v, p)))
    assert close(apply(invert(u), apply(u, p)), p, 1e-9)


@given(sphere_words, unit)
def test_area_preserved(w, p):
    assert abs(jacobian_det(w, p) - 1) < 1e-8


@given(sphere_words, unit)
def test_differential_matches_finite_differences(w, p):
    J = differential(w, p)
    h = 1e-6
    for e in tangent_frame(p):
        fwd = np.array(apply(w, sphere_point(np.add(p, h * e))))
        bwd = np.array(apply(w, sphere_point(np.subtract(p, h * e))))
        assert np.max(np.abs((fwd - bwd) / (2 * h) - J @ e)) < 1e-5


def test_identity_differential():
    p = sphere_point((0.2, -0.4, 0.9))
    e1, e2 = tangent_frame(p)
    J = differential(IDENTITY, p)
    assert close(J @ e1, e1) and close(J @ e2, e2)


def test_rotation_differential_is_rotation():
    r = AxisRotation((0, 0, 1), 0.25)
    J = differential(DiffeoWord.of(r), (0.6, 0.0, 0.8))
    assert close(J, r.matrix(), 1e-12)


def test_twist_preserves_axial_coordinate():
    t = Twist((0, 0, 1), (0.0, 0.3, -0.2))
    p = sphere_point((0.3, 0.4, 0.5))
    assert abs(apply(DiffeoWord.of(t), p)[2] - p[2]) < 1e-15


def test_twist_degree_bound():
    with pytest.raises(ValueError):
        Twist((0, 0, 1), tuple(range(10)))


def test_json_round_trip_is_bit_exact():
    w = DiffeoWord(((CircleRotation(Fraction(-7, 13)), 1), (CircleRotation(Fraction(1, 3)), -1)))
    assert loads_word(dumps_word(w)) == w
    s = DiffeoWord(((AxisRotation((0.1, 0.2, 0.3), 0.137), -1), (Twist((0.8, 0.6, 0), (0.05, -0.2, 0, 0.1)), 1)))
    assert loads_word(dumps_word(s)) == s


def test_word_file_format():
    w = word_from_json(json.loads('[{"kind":"axis_rotation","axis":[0,0,1],"turns":0.25},'
                                  '{"kind":"twist","axis":[0,0,1],"coeffs":[0,0.1]},'
                                  '{"kind":"circle_rotation","turns":"1/3","exp":-1}]'))
    assert len(w) == 3 and w.gens[2] == (CircleRotation(Fraction(1, 3)), -1)
    with pytest.raises(ValueError):
        word_from_json([{"kind": "shear"}])


def test_sampler_is_seeded():
    a = WordSampler("sphere", 7).words(4)
    b = WordSampler("sphere", 7).words(4)
    c = WordSampler("sphere", 8).words(4)
    assert a == b and a != c
    assert all(1 <= len(w) <= 4 for w in a)
