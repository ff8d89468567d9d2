"""Ordered fan-out of per-sample work over worker processes.

Each worker builds its own zig-zag from the (picklable) config once; results
come back in task order, so reports do not depend on the worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

from .config import Config

_STATE: dict = {}


def _init_worker(cfg: Config):
    _STATE["cfg"] = cfg
    _STATE["zz"] = cfg.zigzag()


def _run_one(task):
    fn, args = task
    return fn(_STATE["zz"], *args)


def run_tasks(cfg: Config, fn: Callable, arglist: Sequence[tuple], jobs: int = 1) -> list:
    """[fn(zigzag, *args) for args in arglist], optionally in ``jobs`` processes."""
    tasks = [(fn, tuple(a)) for a in arglist]
    if jobs <= 1 or len(tasks) <= 1:
        _init_worker(cfg)
        return [_run_one(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(cfg,)) as pool:
        return list(pool.map(_run_one, tasks, chunksize=chunk))


def json_number(v):
    """JSON-safe scalar: integral Fractions become ints, others "p/q"; floats pass through."""
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    return float(v)
