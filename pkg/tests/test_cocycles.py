from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flatcocycles.cocycles import (
    Cocycles,
    boundedness_sample,
    eval_b,
    eval_b_lift,
    eval_c,
    evaluate,
    verify_cocycle,
    verify_lift,
    verify_telescoping,
)
from flatcocycles.complexes import coboundary
from flatcocycles.config import Config
from flatcocycles.diffeo import IDENTITY, CircleRotation, DiffeoWord, invert
from flatcocycles.sampling import WordSampler
from flatcocycles.zigzag import CircleZigzag, SphereZigzag

CIRCLE = CircleZigzag()
SPHERE = SphereZigzag()
rationals = st.fractions(-3, 3, max_denominator=64)


def R(s):
    return DiffeoWord.of(CircleRotation(Fraction(s)))


def floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def frac(q: Fraction) -> Fraction:
    return q - floor(q)


def test_circle_examples():
    assert eval_c(CIRCLE, 0, (R("1/2"), R("3/4"))) == -1
    assert eval_c(CIRCLE, 0, (IDENTITY, R("3/4"))) == 0
    assert eval_b(CIRCLE, 0, (R("1/3"),)) == Fraction(2, 3)
    assert eval_b_lift(CIRCLE, (R("1/3"),)) == Fraction(-1, 3)


@given(rationals, rationals)
def test_circle_c_closed_form(a, b):
    expected = -floor(frac(a) + frac(b))
    g = (R(a), R(b))
    assert eval_c(CIRCLE, 0, g) == expected
    assert eval_c(CIRCLE, 1, g) == expected


@given(rationals)
def test_circle_b_closed_form(s):
    assert eval_b(CIRCLE, 0, (R(s),)) == frac(-s)
    assert eval_b_lift(CIRCLE, (R(s),)) == -frac(s)


@given(rationals, rationals)
def test_circle_lift_identity(a, b):
    cs = Cocycles(CIRCLE)
    g = (R(a), R(b))
    assert coboundary(cs.b_lift())(*g) == cs.c(1)(*g)


def test_identity_tuples_vanish():
    assert eval_c(SPHERE, 2, (IDENTITY,) * 3) == 0
    assert eval_c(SPHERE, 0, (IDENTITY,) * 3) == 0
    assert eval_b(SPHERE, 1, (IDENTITY, IDENTITY)) == 0
    assert eval_b_lift(SPHERE, (IDENTITY, IDENTITY)) == 0
    g = WordSampler("sphere", 1).word()
    assert eval_b(SPHERE, 1, (g, IDENTITY)) == 0


def test_sphere_representatives_agree_pointwise():
    sampler = WordSampler("sphere", 9)
    for _ in range(5):
        g = sampler.words(3)
        assert eval_c(SPHERE, 0, g) == eval_c(SPHERE, 1, g)
        assert abs(float(eval_b(SPHERE, 0, g[:2])) - float(eval_b(SPHERE, 1, g[:2]))) < 1e-9


def test_value_does_not_depend_on_word_representation():
    sampler = WordSampler("sphere", 12)
    g1, g2, g3 = sampler.words(3)
    h = sampler.word()
    padded = g2 * h * invert(h)
    assert eval_c(SPHERE, 2, (g1, g2, g3)) == eval_c(SPHERE, 2, (g1, padded, g3))


def test_eval_report_json():
    rep = evaluate(CIRCLE, "c", 0, (R("1/2"), R("3/4")), seed=5, config_hash="abc").to_json()
    assert rep["snapped"] == -1 and rep["residual"] == 0 and rep["raw"] == -1
    assert rep["words"][0] == [{"kind": "circle_rotation", "turns": "1/2"}]
    b = evaluate(CIRCLE, "b", 0, (R("1/3"),)).to_json()
    assert b["snapped"] == "2/3" and b["raw"] == "-1/3"


def test_eval_report_records_snap_failure():
    zz = SphereZigzag(snap_tol=1e-30)
    g = WordSampler("sphere", 4).words(3)
    rep = None
    for k in range(3):
        r = evaluate(zz, "c", k, g)
        if r.error:
            rep = r
    assert rep is not None and rep.snapped is None and rep.residual > 1e-30


def test_evaluate_checks_arity():
    with pytest.raises(ValueError):
        evaluate(CIRCLE, "c", 0, (R("1/2"),))


def test_circle_suites_exact():
    cfg = Config()
    for rep in (verify_cocycle(cfg, "c", None, 200), verify_cocycle(cfg, "b", None, 200), verify_telescoping(cfg, 1, 50), verify_lift(cfg, 200)):
        d = rep.to_json()
        assert d["fail"] == 0 and d["skipped"] == 0 and d["max_residual"] == 0.0


def test_circle_boundedness():
    d = boundedness_sample(Config(), 0, 300, seed=3).to_json()
    assert d["stats"]["sup_abs"] == 1
    assert set(d["stats"]["histogram"]) <= {"-1", "0"}


def test_sphere_suites_small():
    cfg = Config(manifold="sphere")
    for rep in (verify_cocycle(cfg, "c", 2, 5), verify_cocycle(cfg, "b", None, 5), verify_telescoping(cfg, None, 5), verify_lift(cfg, 5)):
        d = rep.to_json()
        assert d["fail"] == 0, d
        assert d["max_residual"] < 1e-6


def test_reports_are_seeded():
    cfg = Config(manifold="sphere")
    a = boundedness_sample(cfg, 2, 6, seed=17).to_json()
    b = boundedness_sample(cfg, 2, 6, seed=17).to_json()
    assert a == b
