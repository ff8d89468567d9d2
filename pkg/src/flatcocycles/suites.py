"""Verification suites by name, each a seeded sampler feeding a per-sample check."""
from __future__ import annotations

import hashlib
import math
from fractions import Fraction

import numpy as np

from .cocycles import (
    SuiteReport,
    boundedness_sample,
    guarded,
    run_suite,
    verify_cocycle,
    verify_lift,
    verify_telescoping,
    _result,
)
from .complexes import CHAIN, COCHAIN, CochainEvaluator, GroupCochain, SingularChain, coboundary, pair
from .config import Config
from .errors import GeometryError
from .geometry import cone, geodesic_arc, sphere_point, vertex
from .zigzag import Zigzag

SUITES = ("leibniz", "cocycle_c", "cocycle_b", "telescoping", "lift", "stokes", "zigzag", "bounded")


# --- Leibniz rule with pseudo-random cochains -------------------------------


def _digest(*parts) -> int:
    h = hashlib.sha256(repr(parts).encode()).digest()
    return int.from_bytes(h[:8], "little")


def _random_point(manifold: str, rng: np.random.Generator):
    if manifold == "circle":
        q = int(rng.integers(1, 17))
        return Fraction(int(rng.integers(0, q)), q)
    return sphere_point(rng.normal(size=3))


def _random_simplex(manifold: str, r: int, rng: np.random.Generator):
    if r == 0:
        return vertex(_random_point(manifold, rng))
    return geodesic_arc(_random_point(manifold, rng), _random_point(manifold, rng))


def hashed_cochain(degree: int, r: int, tag: str) -> GroupCochain:
    """Group cochain with values in integer r-cochains, pseudo-random in (words, simplex)."""

    def value(*g):
        return CochainEvaluator(r, "Z", lambda s: _digest(tag, g, s) % 7 - 3)

    return GroupCochain(degree, COCHAIN, value, r, f"a_{tag}")


def hashed_chain(degree: int, r: int, manifold: str, tag: str) -> GroupCochain:
    """Group cochain with values in r-chains of one or two pseudo-random simplices."""

    def value(*g):
        rng = np.random.default_rng(_digest(tag, g))
        terms = [(int(rng.integers(-2, 3)), _random_simplex(manifold, r, rng)) for _ in range(int(rng.integers(1, 3)))]
        return SingularChain(terms, r)

    return GroupCochain(degree, CHAIN, value, r, f"b_{tag}")


@guarded
def check_leibniz(zz: Zigzag, p: int, q: int, r: int, tag: str, words) -> dict:
    """delta<a,b> = <delta a, b> + (-1)^p <a, delta b> on one (p+q+1)-tuple."""
    a = hashed_cochain(p, r, tag)
    b = hashed_chain(q, r, zz.manifold, tag)
    lhs = coboundary(pair(a, b))(*words)
    rhs = pair(coboundary(a), b)(*words) + (-1) ** p * pair(a, coboundary(b))(*words)
    res = abs(lhs - rhs)
    return _result("pass" if res == 0 else "fail", res, split=[p, q, r])


def verify_leibniz(cfg: Config, samples: int = 200, seed=None, jobs: int = 1, max_degree: int = 3) -> SuiteReport:
    seed = cfg.seed if seed is None else seed
    sampler = cfg.sampler(seed)
    splits = [(p, q, r) for total in range(max_degree + 1) for p in range(total + 1) for q in [total - p] for r in (0, 1)]
    args = []
    for i in range(samples):
        p, q, r = splits[i % len(splits)]
        args.append((p, q, r, f"{seed}:{i}", sampler.words(p + q + 1)))
    return run_suite(cfg, "leibniz", check_leibniz, args, seed, jobs, {"max_degree": max_degree})


# --- Stokes integrality -----------------------------------------------------


@guarded
def check_stokes(zz: Zigzag, s) -> dict:
    """Volume of an n-simplex minus eta_bar on its boundary is an integer."""
    raw = zz.w_top_raw(s)
    res = abs(raw - round(raw))
    return _result("pass" if res <= zz.snap_tol else "fail", res, value=int(round(raw)))


def rotated_octahedron(rotation=(0.3, -0.7, 0.2)):
    """Eight cone triangles covering S^2 once, rotated so no vertex or edge meets the poles."""
    ax = np.array(rotation, dtype=float)
    theta = float(np.linalg.norm(ax))
    k = ax / theta
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    Rm = np.eye(3) + math.sin(theta) * K + (1 - math.cos(theta)) * K @ K
    tris = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                v = [np.array([sx, 0, 0.0]), np.array([0, sy, 0.0]), np.array([0, 0, sz * 1.0])]
                if sx * sy * sz < 0:
                    v[1], v[2] = v[2], v[1]
                pts = [sphere_point(Rm @ u) for u in v]
                tris.append(cone(pts[0], geodesic_arc(pts[1], pts[2])))
    return tris


def fundamental_chain(manifold: str) -> list:
    """Simplices of a positively oriented fundamental cycle."""
    if manifold == "circle":
        half = Fraction(1, 2)
        return [geodesic_arc(Fraction(0), half), geodesic_arc(half, Fraction(0))]
    return rotated_octahedron()


def fundamental_total(zz: Zigzag) -> dict:
    """Total volume and total w_top over the fundamental cycle; both should equal 1."""
    simplices = fundamental_chain(zz.manifold)
    vol = sum(zz.volume(s) for s in simplices)
    wtop = sum(zz.w_top(s) for s in simplices)
    return {"volume": vol, "w_top": wtop}


@guarded
def check_fundamental(zz: Zigzag) -> dict:
    t = fundamental_total(zz)
    res = abs(t["volume"] - 1)
    ok = res <= zz.snap_tol and t["w_top"] == 1
    return _result("pass" if ok else "fail", res, value=t["w_top"], fundamental_cycle=True)


def _stokes_simplex(sampler, n: int):
    try:
        return sampler.simplex(n)
    except GeometryError:
        return None


def verify_stokes(cfg: Config, samples: int = 100, seed=None, jobs: int = 1) -> SuiteReport:
    """Random mapped top simplices plus one fundamental-cycle entry (listed last)."""
    seed = cfg.seed if seed is None else seed
    sampler = cfg.sampler(seed)
    n = 1 if cfg.manifold == "circle" else 2
    simplices = []
    while len(simplices) < samples:
        s = _stokes_simplex(sampler, n)
        if s is not None:
            simplices.append(s)
    report = run_suite(cfg, "stokes", check_stokes, [(s,) for s in simplices], seed, jobs)
    report.results.append(run_suite(cfg, "stokes", check_fundamental, [()], seed).results[0])
    return report


# --- zig-zag equations ------------------------------------------------------


def _mod1(v) -> float:
    return float(abs(v - round(v)))


@guarded
def check_zigzag(zz: Zigzag, words, simplices) -> dict:
    """Chain side exactly, cochain side and eta tower numerically, on one sample.

    ``simplices[k]`` is a random k-simplex used for the cochain-side identities.
    """
    n = zz.n
    for k in range(n):
        g = words[: k + 1]
        diff = coboundary(zz.delta(k))(*g) - zz.delta(k + 1)(*g).boundary()
        if not diff.is_zero():
            return _result("fail", math.inf, error=f"delta Delta_{k} != boundary Delta_{k + 1}")
    res = 0.0
    for k in range(1, n + 1):
        g = words[: n - k + 1]
        s = simplices[k]
        dw = coboundary(zz.w(k))(*g)(s)
        lower = zz.w(k - 1)(*g).d()(s)
        total = dw + (-1) ** (n - k + 1) * lower
        res = max(res, float(abs(total)) / (1.0 + float(abs(dw))))
    for k in range(1, n):
        g = words[: n - k]
        s = simplices[k]
        total = coboundary(zz.eta(k))(*g)(s) + (-1) ** (n - k) * zz.eta(k - 1)(*g).d()(s)
        res = max(res, _mod1(total))
    # d eta_{n-1} = j Omega on a top simplex
    top = simplices[n]
    res = max(res, _mod1(zz.eta_bar_cochain()().d()(top) - zz.volume(top)))
    return _result("pass" if res <= zz.snap_tol else "fail", res)


def verify_zigzag(cfg: Config, samples: int = 50, seed=None, jobs: int = 1) -> SuiteReport:
    seed = cfg.seed if seed is None else seed
    sampler = cfg.sampler(seed)
    n = 1 if cfg.manifold == "circle" else 2
    args = []
    while len(args) < samples:
        words = sampler.words(n + 1)
        try:
            simplices = [sampler.simplex(k) for k in range(n + 1)]
        except GeometryError:
            continue
        args.append((words, simplices))
    return run_suite(cfg, "zigzag", check_zigzag, args, seed, jobs)


def run_named_suite(cfg: Config, name: str, samples: int, seed=None, jobs: int = 1, k=None) -> SuiteReport:
    if name == "leibniz":
        return verify_leibniz(cfg, samples, seed, jobs)
    if name == "cocycle_c":
        return verify_cocycle(cfg, "c", k, samples, seed, jobs)
    if name == "cocycle_b":
        return verify_cocycle(cfg, "b", k, samples, seed, jobs)
    if name == "telescoping":
        return verify_telescoping(cfg, k, samples, seed, jobs)
    if name == "lift":
        return verify_lift(cfg, samples, seed, jobs)
    if name == "stokes":
        return verify_stokes(cfg, samples, seed, jobs)
    if name == "zigzag":
        return verify_zigzag(cfg, samples, seed, jobs)
    if name == "bounded":
        return boundedness_sample(cfg, k, samples, seed, jobs)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
