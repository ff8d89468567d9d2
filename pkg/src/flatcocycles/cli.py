"""Command line: ``flatcocycles eval | verify | euler``.

Exit codes: 0 ok, 2 bad input, 3 degenerate geometry, 4 snap or identity
failure, 5 homology cap exceeded.  All reports are JSON with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import grouphomology as gh
from .cocycles import KINDS, Cocycles, _frac, evaluate
from .config import VERSION, Config, basepoint_warnings
from .diffeo import word_from_json
from .errors import CapExceeded, GeometryError, SnapFailure
from .runner import json_number, run_tasks
from .suites import SUITES, run_named_suite
from .zigzag import snap

EXIT_OK, EXIT_PARSE, EXIT_GEOMETRY, EXIT_IDENTITY, EXIT_CAP = 0, 2, 3, 4, 5


class InputError(Exception):
    pass


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _error_object(exc: Exception, **extra) -> dict:
    return {"error": type(exc).__name__, "message": str(exc), **extra}


def load_config(path) -> Config:
    if path is None:
        return Config()
    try:
        cfg = Config.load(path)
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"config {path}: {exc}") from exc
    for msg in basepoint_warnings(cfg):
        print(f"warning: {msg}", file=sys.stderr)
    return cfg


def load_words(path) -> dict:
    """Words file: an object name -> word, or an array of words (named "0", "1", ...)."""
    try:
        data = json.loads(Path(path).read_text())
        if isinstance(data, list):
            data = {str(i): w for i, w in enumerate(data)}
        if not isinstance(data, dict):
            raise ValueError("words file must hold an object or an array")
        return {name: word_from_json(w) for name, w in data.items()}
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"words {path}: {exc}") from exc


def load_request(path, words: dict, cfg: Config) -> tuple:
    try:
        req = json.loads(Path(path).read_text())
        kind = req["kind"]
        k = int(req.get("k", 0))
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        tuples = [tuple(words[str(name)] for name in t) for t in req["tuples"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"request {path}: {exc}") from exc
    _check_kind(cfg, kind, k)
    n = 1 if cfg.manifold == "circle" else 2
    arity = n + 1 if kind == "c" else n
    for i, t in enumerate(tuples):
        if len(t) != arity:
            raise InputError(f"tuple {i} has {len(t)} words; {kind} on the {cfg.manifold} needs {arity}")
        if cfg.manifold == "circle" and not all(w.on_circle for w in t):
            raise InputError(f"tuple {i} contains sphere generators but the manifold is the circle")
        if cfg.manifold == "sphere" and any(g.__class__.__name__ == "CircleRotation" for w in t for g, _ in w.gens):
            raise InputError(f"tuple {i} contains circle rotations but the manifold is the sphere")
    return kind, k, tuples


def _check_kind(cfg: Config, kind: str, k: int):
    n = 1 if cfg.manifold == "circle" else 2
    top = {"c": n, "b": n - 1, "b_lift": n - 1}[kind]
    if not 0 <= k <= top:
        raise InputError(f"{kind} needs 0 <= k <= {top} on the {cfg.manifold}")


# --- eval ---------------------------------------------------------------------


def _eval_task(zz, kind, k, words, seed, config_hash):
    try:
        return evaluate(zz, kind, k, words, seed, config_hash).to_json()
    except GeometryError as exc:
        return _error_object(exc, kind=kind, k=k, words=[w.to_json() for w in words], config_hash=config_hash)


def cmd_eval(args, out=sys.stdout) -> int:
    cfg = load_config(args.config)
    words = load_words(args.words)
    kind, k, tuples = load_request(args.request, words, cfg)
    seed = cfg.seed if args.seed is None else args.seed
    h = cfg.config_hash()
    records = run_tasks(cfg, _eval_task, [(kind, k, t, seed, h) for t in tuples], args.jobs)
    code = EXIT_OK
    for rec in records:
        _emit(rec, out)
        if rec.get("error") in ("AntipodalDegeneracy", "PoleProximity", "QuadratureNonConvergence"):
            code = EXIT_GEOMETRY
        elif "error" in rec and code == EXIT_OK:
            code = EXIT_IDENTITY
    return code


# --- verify -------------------------------------------------------------------


def cmd_verify(args, out=sys.stdout) -> int:
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    cfg = load_config(args.config)
    seed = cfg.seed if args.seed is None else args.seed
    report = run_named_suite(cfg, args.suite, args.samples, seed, args.jobs, args.k)
    _emit(report.to_json(), out)
    return EXIT_OK if report.passed else EXIT_IDENTITY


# --- euler --------------------------------------------------------------------


def _cocycle_value(zz, kind, k, words):
    raw = Cocycles(zz).raw(kind, k)(*words)
    if kind == "c":
        return snap(raw, zz.snap_tol)[0]
    return _frac(raw)


def _reduce(kind: str, v):
    return v if kind == "c" else _frac(v)


def _deviation(kind: str, a, b) -> float:
    if kind == "c":
        return float(abs(a - b))
    d = _frac(a - b)
    return float(min(d, 1 - d))


def euler_report(cfg: Config, spec: str, degree: int, kind: str, k: int, seed: int, jobs: int = 1, perturbations: int = 20, cap: int = gh.DEFAULT_CAP) -> dict:
    """Homology of a finite subgroup, cocycle values on its cycles, and boundary-invariance checks."""
    if kind not in ("c", "b"):
        raise InputError("euler pairs cocycles only: kind must be 'c' or 'b'")
    _check_kind(cfg, kind, k)
    n = 1 if cfg.manifold == "circle" else 2
    arity = n + 1 if kind == "c" else n
    if degree != arity:
        raise InputError(f"{kind} on the {cfg.manifold} has degree {arity}, not {degree}")
    try:
        G = gh.parse_subgroup(spec, cfg.manifold)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    H = gh.find_cycles(G, degree, cap)
    rng = np.random.default_rng(seed)

    named = [(f"generator {i}", z, o) for i, (z, o) in enumerate(zip(H.generators, H.orders))]
    named += [(f"standard {i}", z, None) for i, z in enumerate(gh.standard_cycles(G, degree))]
    perturbed = []
    for _, z, _ in named:
        ys = [gh.random_bar_chain(G, degree + 1, rng) for _ in range(perturbations)]
        perturbed.append([z + gh.bar_boundary(y, G.mul) for y in ys])

    needed = sorted({t for _, z, _ in named for _, t in z.items()} | {t for zs in perturbed for z in zs for _, t in z.items()})
    values = run_tasks(cfg, _cocycle_value, [(kind, k, tuple(G.word(g) for g in t)) for t in needed], jobs)
    cache = dict(zip(needed, values))

    def value(z):
        return _reduce(kind, gh.evaluate_on_cycle(None, z, G.mul, cache=cache))

    cycles, ok = [], True
    tol = cfg.snap_tol
    for (name, z, order), zs in zip(named, perturbed):
        v = value(z)
        dev = max((_deviation(kind, value(zp), v) for zp in zs), default=0.0)
        entry = {
            "name": name,
            "class": H.class_of(z),
            "terms": len(z.terms),
            "value": json_number(v),
            "invariance_max_deviation": dev,
            "invariant": dev <= tol if kind == "b" else dev == 0,
        }
        if order:
            entry["order"] = order
            if kind == "c":
                entry["torsion_ok"] = v == 0
            else:
                entry["torsion_ok"] = _deviation("b", order * v, 0) <= order * tol
            ok = ok and entry["torsion_ok"]
        if len(z.terms) <= 12:
            entry["cycle"] = z.to_json(lambda g: G.word(g).to_json())
        ok = ok and entry["invariant"]
        cycles.append(entry)
    return {
        "group": G.label,
        "manifold": cfg.manifold,
        "degree": degree,
        "kind": kind,
        "k": k,
        "homology": H.to_json(),
        "cycles": cycles,
        "perturbations": perturbations,
        "seed": seed,
        "result": "pass" if ok else "fail",
        "config_hash": cfg.config_hash(),
        "version": VERSION,
    }


def cmd_euler(args, out=sys.stdout) -> int:
    cfg = load_config(args.config)
    seed = cfg.seed if args.seed is None else args.seed
    report = euler_report(cfg, args.subgroup, args.degree, args.kind, args.k, seed, args.jobs, args.perturbations, args.cap)
    _emit(report, out)
    return EXIT_OK if report["result"] == "pass" else EXIT_IDENTITY


# --- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatcocycles", description="Evaluate and verify Euler-class cocycles of S^1 and S^2.")
    p.add_argument("--version", action="version", version=VERSION)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON config file (defaults: circle, seed 0)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--jobs", type=int, default=1)

    e = sub.add_parser("eval", help="evaluate a cocycle on tuples from a words file")
    common(e)
    e.add_argument("--words", required=True)
    e.add_argument("--request", required=True)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run an identity suite on random samples")
    common(v)
    v.add_argument("--suite", required=True)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--k", type=int, help="restrict to one k (default: all)")
    v.set_defaults(func=cmd_verify)

    u = sub.add_parser("euler", help="pair a cocycle with homology cycles of a finite subgroup")
    common(u)
    u.add_argument("--subgroup", required=True)
    u.add_argument("--degree", type=int, required=True)
    u.add_argument("--kind", choices=("c", "b", "b_lift"), default="c")
    u.add_argument("--k", type=int, default=0)
    u.add_argument("--perturbations", type=int, default=20)
    u.add_argument("--cap", type=int, default=gh.DEFAULT_CAP)
    u.set_defaults(func=cmd_euler)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise InputError("--seed must be an unsigned 64-bit integer")
        return args.func(args, out)
    except InputError as exc:
        _emit(_error_object(exc), out)
        return EXIT_PARSE
    except GeometryError as exc:
        _emit(_error_object(exc), out)
        return EXIT_GEOMETRY
    except SnapFailure as exc:
        _emit(_error_object(exc), out)
        return EXIT_IDENTITY
    except CapExceeded as exc:
        _emit(_error_object(exc), out)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
