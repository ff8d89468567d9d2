"""Group cochains with values in singular chains (left module) and singular cochains (right module).

Chains are finite formal sums of structurally compared simplices.  Cochains
are evaluators: procedures on simplices, extended linearly to chains.  The
pairing of a cochain-valued group p-cochain ``a`` with a chain-valued group
q-cochain ``b`` is

    <a, b>(g_1, ..., g_{p+q}) = < a(g_1, ..., g_p), b(g_{p+1}, ..., g_{p+q}) >,

front arguments to ``a``, back arguments to ``b``.  With the right action
(a . g)(sigma) = a(g . sigma) this satisfies
delta<a, b> = <delta a, b> + (-1)^p <a, delta b>.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .diffeo import DiffeoWord, compose
from .errors import DimensionMismatch
from .geometry import MappedSimplex

CHAIN = "chain"
COCHAIN = "cochain"
SCALAR = "scalar"


class SingularChain:
    """Finite integer combination of simplices of one dimension; zero terms are dropped."""

    __slots__ = ("_terms", "dim")

    def __init__(self, terms: Iterable = (), dim: int | None = None):
        acc: dict = {}
        for coef, s in terms:
            if coef:
                acc[s] = acc.get(s, 0) + coef
        self._terms = {s: c for s, c in acc.items() if c}
        dims = {s.dim for s in self._terms}
        if len(dims) > 1:
            raise DimensionMismatch(f"chain mixes simplex dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else dim

    @classmethod
    def of(cls, s: MappedSimplex, coef: int = 1) -> "SingularChain":
        return cls([(coef, s)])

    @classmethod
    def zero(cls, dim: int | None = None) -> "SingularChain":
        return cls((), dim)

    def __iter__(self) -> Iterator:
        return ((c, s) for s, c in self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "SingularChain") -> "SingularChain":
        return SingularChain(list(self) + list(other), self.dim if self.dim is not None else other.dim)

    def __neg__(self) -> "SingularChain":
        return SingularChain([(-c, s) for c, s in self], self.dim)

    def __sub__(self, other: "SingularChain") -> "SingularChain":
        return self + (-other)

    def __rmul__(self, k: int) -> "SingularChain":
        return SingularChain([(k * c, s) for c, s in self], self.dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, SingularChain) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"SingularChain({len(self)} terms, dim={self.dim})"

    def is_zero(self) -> bool:
        return not self._terms

    def push(self, w: DiffeoWord) -> "SingularChain":
        return SingularChain([(c, s.push(w)) for c, s in self], self.dim)

    def boundary(self) -> "SingularChain":
        terms = []
        for c, s in self:
            terms.extend((c * sign, f) for sign, f in s.faces())
        return SingularChain(terms, None if self.dim is None else self.dim - 1)


def boundary(c) -> SingularChain:
    if isinstance(c, MappedSimplex):
        c = SingularChain.of(c)
    return c.boundary()


def as_chain(x) -> SingularChain:
    return SingularChain.of(x) if isinstance(x, MappedSimplex) else x


@dataclass(frozen=True)
class CochainEvaluator:
    """A singular ``dim``-cochain given as a procedure on simplices.

    ``ring`` is one of "Z", "R", "R/Z"; values are always returned as real
    (or exact rational) representatives, reduction mod 1 is left to callers.
    """

    dim: int
    ring: str
    fn: Callable

    def __call__(self, x):
        if isinstance(x, MappedSimplex):
            return self.fn(x)
        total = 0
        for c, s in x:
            total = total + c * self.fn(s)
        return total

    def act(self, w: DiffeoWord) -> "CochainEvaluator":
        """Right action (a . w)(sigma) = a(w . sigma), i.e. the pullback w^* a."""
        fn = self.fn
        return CochainEvaluator(self.dim, self.ring, lambda s: fn(s.push(w)))

    def d(self) -> "CochainEvaluator":
        """Coboundary (d a)(sigma) = a(boundary sigma)."""
        return CochainEvaluator(self.dim + 1, self.ring, lambda s: self(boundary(s)))

    def __add__(self, other: "CochainEvaluator") -> "CochainEvaluator":
        _match(self.dim, other.dim)
        return CochainEvaluator(self.dim, _ring(self, other), lambda s: self(s) + other(s))

    def __sub__(self, other: "CochainEvaluator") -> "CochainEvaluator":
        _match(self.dim, other.dim)
        return CochainEvaluator(self.dim, _ring(self, other), lambda s: self(s) - other(s))

    def __neg__(self) -> "CochainEvaluator":
        return CochainEvaluator(self.dim, self.ring, lambda s: -self(s))

    def scale(self, k) -> "CochainEvaluator":
        return CochainEvaluator(self.dim, self.ring, lambda s: k * self(s))


def _match(p: int, q: int):
    if p != q:
        raise DimensionMismatch(f"dimensions {p} and {q} do not match")


def _ring_name(a: str, b: str) -> str:
    order = ["Z", "R", "R/Z"]
    return max(a, b, key=order.index)


def _ring(a: CochainEvaluator, b: CochainEvaluator) -> str:
    return _ring_name(a.ring, b.ring)


def zero_cochain(dim: int, ring: str = "Z") -> CochainEvaluator:
    return CochainEvaluator(dim, ring, lambda s: 0)


@dataclass(frozen=True)
class GroupCochain:
    """Map G^degree -> coefficients.

    ``side`` is CHAIN (values in singular chains of dimension ``dim``, left
    module), COCHAIN (values in ``dim``-cochain evaluators, right module) or
    SCALAR (trivial coefficients).
    """

    degree: int
    side: str
    fn: Callable
    dim: int | None = None
    name: str = ""
    ring: str = "Z"

    def __call__(self, *words: DiffeoWord):
        if len(words) != self.degree:
            raise DimensionMismatch(f"{self.name or 'cochain'} of degree {self.degree} got {len(words)} arguments")
        return self.fn(*words)


def _merged(words: tuple, i: int, mul) -> tuple:
    return words[: i - 1] + (mul(words[i - 1], words[i]),) + words[i + 1 :]


def coboundary(c: GroupCochain, mul: Callable = compose) -> GroupCochain:
    """Group coboundary of ``c`` with the side-appropriate twist term.

    ``mul`` multiplies group elements; the default concatenates words.
    """
    p = c.degree

    def inner_terms(words):
        return [((-1) ** i, _merged(words, i, mul)) for i in range(1, p + 1)]

    if c.side == CHAIN:

        def fn(*g):
            total = as_chain(c(*g[1:])).push(g[0])
            for sign, args in inner_terms(g):
                total = total + sign * as_chain(c(*args))
            return total + ((-1) ** (p + 1)) * as_chain(c(*g[:p]))

    elif c.side == COCHAIN:

        def fn(*g):
            def value(s):
                total = c(*g[1:])(s)
                for sign, args in inner_terms(g):
                    total = total + sign * c(*args)(s)
                return total + ((-1) ** (p + 1)) * c(*g[:p])(s.push(g[p]))

            return CochainEvaluator(c.dim, c.ring, value)

    elif c.side == SCALAR:

        def fn(*g):
            total = c(*g[1:])
            for sign, args in inner_terms(g):
                total = total + sign * c(*args)
            return total + ((-1) ** (p + 1)) * c(*g[:p])

    else:
        raise ValueError(f"unknown side {c.side!r}")
    name = f"delta({c.name})" if c.name else ""
    return GroupCochain(p + 1, c.side, fn, c.dim, name, c.ring)


def group_coboundary_chain(delta: GroupCochain, words) -> SingularChain:
    if delta.side != CHAIN:
        raise ValueError("expected a chain-valued group cochain")
    return coboundary(delta)(*words)


def group_coboundary_cochain(w: GroupCochain, words) -> CochainEvaluator:
    if w.side != COCHAIN:
        raise ValueError("expected a cochain-valued group cochain")
    return coboundary(w)(*words)


def pair(a: GroupCochain, b: GroupCochain) -> GroupCochain:
    """Scalar group (p+q)-cochain <a, b>; front arguments feed ``a``, back ones ``b``."""
    if a.side != COCHAIN or b.side != CHAIN:
        raise ValueError("pair needs a cochain-valued and a chain-valued group cochain")
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot pair a {a.dim}-cochain with a {b.dim}-chain")
    p, q = a.degree, b.degree

    def fn(*g):
        chain = as_chain(b(*g[p:]))
        if not chain:
            return 0
        return a(*g[:p])(chain)

    name = f"<{a.name},{b.name}>" if a.name and b.name else ""
    return GroupCochain(p + q, SCALAR, fn, None, name, _ring_name(a.ring, b.ring))


def constant(value, side: str, dim: int | None = None, name: str = "", ring: str = "Z") -> GroupCochain:
    """Degree-0 group cochain with the given value."""
    return GroupCochain(0, side, lambda: value, dim, name, ring)
