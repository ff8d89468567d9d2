"""Run configuration: one JSON file drives every CLI command."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .diffeo import DiffeoWord, format_rational, generator_from_json
from .geometry import FormConventions, QuadratureConfig, circle_point, sphere_point
from .sampling import DEFAULT_SPHERE_POOL, WordSampler
from .zigzag import DEFAULT_SPHERE_BASEPOINT, Zigzag, make_zigzag

VERSION = "0.1.0"


@dataclass(frozen=True)
class Config:
    manifold: str = "circle"
    basepoint: object = None
    pole: tuple = (0.0, 0.0, -1.0)
    orientation: int = 1
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    snap_tol: float = 1e-6
    epsilon_pole: float = 1e-6
    seed: int = 0
    generator_pool: tuple = ()
    max_word_length: int = 4

    def __post_init__(self):
        if self.manifold not in ("circle", "sphere"):
            raise ValueError(f"manifold must be 'circle' or 'sphere', not {self.manifold!r}")
        if self.snap_tol <= 0 or self.epsilon_pole <= 0 or self.quadrature.tol <= 0:
            raise ValueError("tolerances must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.basepoint is None:
            bp = Fraction(0) if self.manifold == "circle" else DEFAULT_SPHERE_BASEPOINT
        else:
            bp = self.basepoint
        bp = circle_point(bp) if self.manifold == "circle" else sphere_point(bp)
        object.__setattr__(self, "basepoint", bp)
        object.__setattr__(self, "pole", sphere_point(self.pole))

    @property
    def conventions(self) -> FormConventions:
        return FormConventions(self.pole, self.orientation, self.quadrature, self.epsilon_pole)

    @property
    def pool(self) -> tuple:
        if self.generator_pool:
            return self.generator_pool
        return DEFAULT_SPHERE_POOL if self.manifold == "sphere" else ()

    def zigzag(self) -> Zigzag:
        return make_zigzag(self.manifold, self.basepoint, self.conventions, self.snap_tol)

    def sampler(self, seed: int | None = None) -> WordSampler:
        return WordSampler(self.manifold, self.seed if seed is None else seed, self.pool, self.max_word_length)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["basepoint"] = format_rational(self.basepoint) if self.manifold == "circle" else list(self.basepoint)
        d["pole"] = list(self.pole)
        d["generator_pool"] = [g.to_json() for g in self.generator_pool]
        return d

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        d = dict(d)
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "quadrature" in d:
            q = d["quadrature"]
            if not isinstance(q, dict):
                raise ValueError("quadrature must be an object")
            d["quadrature"] = QuadratureConfig(**q)
        if "pole" in d:
            d["pole"] = tuple(d["pole"])
        if "generator_pool" in d:
            pool = []
            for item in d["generator_pool"]:
                g, _ = generator_from_json(item)
                pool.append(g)
            d["generator_pool"] = tuple(pool)
        if isinstance(d.get("basepoint"), list):
            d["basepoint"] = tuple(d["basepoint"])
        return cls(**d)

    @classmethod
    def load(cls, path) -> "Config":
        return cls.from_dict(json.loads(Path(path).read_text()))


def basepoint_warnings(cfg: Config) -> list:
    """Pool generators whose single-letter words send the basepoint near its antipode."""
    if cfg.manifold != "sphere":
        return []
    from .diffeo import apply
    import numpy as np

    x = np.array(cfg.basepoint)
    out = []
    for g in cfg.pool:
        for e in (1, -1):
            y = np.array(apply(DiffeoWord(((g, e),)), cfg.basepoint))
            if np.linalg.norm(x + y) < 1e-3:
                out.append(f"generator {g.to_json()} (exp {e}) maps the basepoint near its antipode")
    return out
