"""The cocycles c_k = <delta w_k, Delta_k>, b_k = <delta eta_k, Delta_k> and the lift of b_{n-1}.

Values are computed from the raw (unsnapped) zig-zag data and snapped at the
end, so every report carries a meaningful pre-snap residual.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import SCALAR, GroupCochain, coboundary, pair
from .config import VERSION, Config
from .diffeo import DiffeoWord
from .errors import GeometryError, SnapFailure
from .runner import json_number, run_tasks
from .zigzag import Zigzag, _frac_tied, snap

KINDS = ("c", "b", "b_lift")


def _frac(v):
    if isinstance(v, Fraction):
        return v - (v.numerator // v.denominator)
    return _frac_tied(v)


class Cocycles:
    """Scalar group cochains built from one zig-zag; construction is cheap, evaluation is not."""

    def __init__(self, zz: Zigzag):
        self.zz = zz
        self.n = zz.n

    def arity(self, kind: str) -> int:
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, not {kind!r}")
        return self.n + 1 if kind == "c" else self.n

    def check_k(self, kind: str, k: int):
        top = self.n if kind == "c" else self.n - 1
        if kind == "b_lift":
            return
        if not 0 <= k <= top:
            raise ValueError(f"{kind}_k needs 0 <= k <= {top}, got {k}")

    def c(self, k: int) -> GroupCochain:
        self.check_k("c", k)
        return pair(coboundary(self.zz.w(k)), self.zz.delta(k))

    def b(self, k: int) -> GroupCochain:
        self.check_k("b", k)
        return pair(coboundary(self.zz.eta(k)), self.zz.delta(k))

    def b_lift(self) -> GroupCochain:
        return pair(coboundary(self.zz.eta_bar_cochain()), self.zz.delta(self.n - 1))

    def raw(self, kind: str, k: int = 0) -> GroupCochain:
        if kind == "c":
            return self.c(k)
        if kind == "b":
            return self.b(k)
        if kind == "b_lift":
            return self.b_lift()
        raise ValueError(f"kind must be one of {KINDS}, not {kind!r}")

    def snapped(self, kind: str, k: int = 0) -> GroupCochain:
        """Same cochain with values in their coefficient group: integers, [0,1), or reals."""
        raw = self.raw(kind, k)
        tol = self.zz.snap_tol
        if kind == "c":
            fn = lambda *g: snap(raw(*g), tol)[0]
        elif kind == "b":
            fn = lambda *g: _frac(raw(*g))
        else:
            fn = raw.fn
        return GroupCochain(raw.degree, SCALAR, fn, None, f"{kind}{k}", raw.ring)


def eval_c(zz: Zigzag, k: int, words: Sequence[DiffeoWord]) -> int:
    return snap(Cocycles(zz).c(k)(*words), zz.snap_tol)[0]


def eval_b(zz: Zigzag, k: int, words: Sequence[DiffeoWord]):
    return _frac(Cocycles(zz).b(k)(*words))


def eval_b_lift(zz: Zigzag, words: Sequence[DiffeoWord]):
    return Cocycles(zz).b_lift()(*words)


@dataclass
class EvalReport:
    kind: str
    k: int
    words: tuple
    raw: object
    snapped: object
    residual: object
    tolerance: float
    seed: int | None = None
    config_hash: str = ""
    error: str | None = None

    def to_json(self) -> dict:
        d = {
            "kind": self.kind,
            "k": self.k,
            "words": [w.to_json() for w in self.words],
            "raw": json_number(self.raw),
            "snapped": json_number(self.snapped),
            "residual": json_number(self.residual),
            "tolerance": self.tolerance,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "version": VERSION,
        }
        if self.error:
            d["error"] = self.error
        return d


def evaluate(zz: Zigzag, kind: str, k: int, words: Sequence[DiffeoWord], seed=None, config_hash: str = "") -> EvalReport:
    """Evaluate one cocycle on one tuple; a SnapFailure is recorded, geometry errors propagate."""
    cs = Cocycles(zz)
    if len(words) != cs.arity(kind):
        raise ValueError(f"{kind} on the {zz.manifold} takes {cs.arity(kind)} words, got {len(words)}")
    raw = cs.raw(kind, k)(*words)
    report = EvalReport(kind, k, tuple(words), raw, None, None, zz.snap_tol, seed, config_hash)
    if kind == "c":
        try:
            report.snapped, report.residual = snap(raw, zz.snap_tol)
        except SnapFailure as exc:
            report.residual, report.error = exc.residual, str(exc)
    elif kind == "b":
        report.snapped, report.residual = _frac(raw), 0
    else:
        report.snapped, report.residual = raw, 0
    return report


# --- per-sample identity checks ---------------------------------------------
# Each check takes the zig-zag plus one sample and returns a result dict with
# status "pass" | "fail" | "skip" and a float residual.


def _result(status: str, residual=0.0, **extra) -> dict:
    return {"status": status, "residual": float(residual), **extra}


def guarded(check):
    """Turn geometry errors into skips and snap failures into failures."""

    def wrapper(zz, *args):
        try:
            return check(zz, *args)
        except SnapFailure as exc:
            return _result("fail", exc.residual, error=f"SnapFailure: {exc}")
        except GeometryError as exc:
            return _result("skip", 0.0, error=f"{type(exc).__name__}: {exc}")

    wrapper.__name__ = check.__name__
    wrapper.__qualname__ = check.__qualname__
    wrapper.__module__ = check.__module__
    wrapper.__wrapped__ = check
    return wrapper


def _ks(zz: Zigzag, kind: str, k) -> list:
    top = zz.n if kind == "c" else zz.n - 1
    return list(range(top + 1)) if k is None else [k]


def _dist_to_int(v) -> float:
    return float(abs(v - round(v)))


@guarded
def check_cocycle_c(zz: Zigzag, k, words) -> dict:
    """delta c_k = 0: pre-snap residual from raw values, then exact 0 after snapping."""
    cs = Cocycles(zz)
    pre = post = 0.0
    for kk in _ks(zz, "c", k):
        pre = max(pre, float(abs(coboundary(cs.c(kk))(*words))))
        post = max(post, float(abs(coboundary(cs.snapped("c", kk))(*words))))
    ok = pre <= zz.snap_tol and post == 0
    return _result("pass" if ok else "fail", pre, post_snap=post)


@guarded
def check_cocycle_b(zz: Zigzag, k, words) -> dict:
    """delta b_k = 0 mod 1."""
    cs = Cocycles(zz)
    res = max(_dist_to_int(coboundary(cs.b(kk))(*words)) for kk in _ks(zz, "b", k))
    return _result("pass" if res <= zz.snap_tol else "fail", res)


@guarded
def check_telescoping(zz: Zigzag, k, words) -> dict:
    """c_k = c_{k-1} - delta <w_{k-1}, Delta_{k-1}> pointwise, raw values."""
    cs = Cocycles(zz)
    ks = range(1, zz.n + 1) if k is None else [k]
    res = 0.0
    for kk in ks:
        correction = coboundary(pair(zz.w(kk - 1), zz.delta(kk - 1)))(*words)
        diff = cs.c(kk)(*words) - (cs.c(kk - 1)(*words) - correction)
        res = max(res, float(abs(diff)))
    return _result("pass" if res <= zz.snap_tol else "fail", res)


@guarded
def check_lift(zz: Zigzag, words) -> dict:
    """delta b_lift = c_n pointwise, raw values."""
    cs = Cocycles(zz)
    res = float(abs(coboundary(cs.b_lift())(*words) - cs.c(zz.n)(*words)))
    return _result("pass" if res <= zz.snap_tol else "fail", res)


@guarded
def check_bounded(zz: Zigzag, k, words) -> dict:
    raw = Cocycles(zz).c(k)(*words)
    value, residual = snap(raw, zz.snap_tol)
    return _result("pass", residual, value=value)


# --- suite reports ----------------------------------------------------------


@dataclass
class SuiteReport:
    suite: str
    manifold: str
    samples: int
    seed: int
    config_hash: str
    results: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def count(self, status: str) -> int:
        return sum(r["status"] == status for r in self.results)

    @property
    def passed(self) -> bool:
        return self.count("fail") == 0

    @property
    def max_residual(self) -> float:
        return max((r["residual"] for r in self.results if r["status"] != "skip"), default=0.0)

    def values(self) -> list:
        return [r["value"] for r in self.results if "value" in r]

    def stats(self) -> dict:
        vals = self.values()
        if not vals:
            return {}
        hist = Counter(vals)
        return {"sup_abs": max(abs(v) for v in vals), "histogram": {str(v): hist[v] for v in sorted(hist)}}

    def to_json(self) -> dict:
        def detail(status):
            return [dict(index=i, **r) for i, r in enumerate(self.results) if r["status"] == status]

        return {
            "suite": self.suite,
            "manifold": self.manifold,
            "samples": self.samples,
            "seed": self.seed,
            "params": self.params,
            "pass": self.count("pass"),
            "fail": self.count("fail"),
            "skipped": self.count("skip"),
            "max_residual": self.max_residual,
            "stats": self.stats(),
            "failures": detail("fail"),
            "skips": detail("skip"),
            "result": "pass" if self.passed else "fail",
            "config_hash": self.config_hash,
            "version": VERSION,
        }


def run_suite(cfg: Config, name: str, check, arglist: list, seed: int, jobs: int = 1, params=None) -> SuiteReport:
    results = run_tasks(cfg, check, arglist, jobs)
    return SuiteReport(name, cfg.manifold, len(arglist), seed, cfg.config_hash(), results, params or {})


def _n(cfg: Config) -> int:
    return 1 if cfg.manifold == "circle" else 2


def verify_cocycle(cfg: Config, kind: str, k=None, samples: int = 100, seed: int | None = None, jobs: int = 1) -> SuiteReport:
    """delta c_k = 0 (kind "c") or delta b_k = 0 mod 1 (kind "b") on random tuples; k=None checks every k."""
    seed = cfg.seed if seed is None else seed
    sampler = cfg.sampler(seed)
    n = _n(cfg)
    if kind == "c":
        args = [(k, sampler.words(n + 2)) for _ in range(samples)]
        return run_suite(cfg, "cocycle_c", check_cocycle_c, args, seed, jobs, {"k": k})
    if kind == "b":
        args = [(k, sampler.words(n + 1)) for _ in range(samples)]
        return run_suite(cfg, "cocycle_b", check_cocycle_b, args, seed, jobs, {"k": k})
    raise ValueError("verify_cocycle kind must be 'c' or 'b'")


def verify_telescoping(cfg: Config, k=None, samples: int = 50, seed: int | None = None, jobs: int = 1) -> SuiteReport:
    seed = cfg.seed if seed is None else seed
    sampler = cfg.sampler(seed)
    args = [(k, sampler.words(_n(cfg) + 1)) for _ in range(samples)]
    return run_suite(cfg, "telescoping", check_telescoping, args, seed, jobs, {"k": k})


def verify_lift(cfg: Config, samples: int = 50, seed: int | None = None, jobs: int = 1) -> SuiteReport:
    seed = cfg.seed if seed is None else seed
    sampler = cfg.sampler(seed)
    args = [(sampler.words(_n(cfg) + 1),) for _ in range(samples)]
    return run_suite(cfg, "lift", check_lift, args, seed, jobs)


def boundedness_sample(cfg: Config, k=None, samples: int = 500, seed: int | None = None, jobs: int = 1) -> SuiteReport:
    """Empirical sup |c_k| and histogram over random tuples (k defaults to n)."""
    seed = cfg.seed if seed is None else seed
    n = _n(cfg)
    k = n if k is None else k
    sampler = cfg.sampler(seed)
    args = [(k, sampler.words(n + 1)) for _ in range(samples)]
    return run_suite(cfg, "bounded", check_bounded, args, seed, jobs, {"k": k})
