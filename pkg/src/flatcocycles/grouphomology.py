"""Bar-complex homology of finite rotation groups and evaluation of cocycles on cycles.

Chains live in the unnormalized inhomogeneous bar complex with trivial
integer coefficients:

    d[g1|...|gd] = [g2|...|gd] + sum_i (-1)^i [..|g_i g_{i+1}|..] + (-1)^d [g1|...|g_{d-1}].
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .diffeo import IDENTITY, AxisRotation, CircleRotation, DiffeoWord, apply, rotate
from .errors import CapExceeded, NotACycle, NotCommuting

DEFAULT_CAP = 4096


# --- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSubgroup:
    """Finite group of rotation words with its multiplication table (indices into ``elements``)."""

    label: str
    elements: tuple
    table: tuple

    def __post_init__(self):
        m = len(self.elements)
        if any(len(row) != m for row in self.table):
            raise ValueError("multiplication table must be square")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return next(i for i, w in enumerate(self.elements) if w.is_identity)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        e = self.identity
        return next(j for j in range(self.order) if self.table[i][j] == e)

    def word(self, i: int) -> DiffeoWord:
        return self.elements[i]

    def check_axioms(self) -> bool:
        n, t, e = self.order, self.table, self.identity
        if any(t[e][i] != i or t[i][e] != i for i in range(n)):
            return False
        if any(sorted(row) != list(range(n)) for row in t):
            return False
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def _table_from_action(words: Sequence[DiffeoWord], act: Callable) -> tuple:
    """Multiplication table by matching the action of products against the elements."""
    sig = [act(w) for w in words]
    table = []
    for u in words:
        row = []
        for v in words:
            prod = act(u * v)
            dist = [float(np.max(np.abs(np.asarray(prod, float) - np.asarray(s, float)))) for s in sig]
            j = int(np.argmin(dist))
            if dist[j] > 1e-9:
                raise ValueError("elements are not closed under composition")
            row.append(j)
        table.append(tuple(row))
    return tuple(table)


def _rotation_signature(w: DiffeoWord):
    return np.array([apply(w, p) for p in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))])


def _sphere_group(label: str, gens: list) -> FiniteSubgroup:
    words = tuple(IDENTITY if g is None else DiffeoWord.of(g) for g in gens)
    return FiniteSubgroup(label, words, _table_from_action(words, _rotation_signature))


def cyclic(m: int, axis=(0.0, 0.0, 1.0), manifold: str = "sphere") -> FiniteSubgroup:
    if m < 1:
        raise ValueError("cyclic group order must be positive")
    if manifold == "circle":
        words = tuple(IDENTITY if j == 0 else DiffeoWord.of(CircleRotation(Fraction(j, m))) for j in range(m))
        table = tuple(tuple((i + j) % m for j in range(m)) for i in range(m))
        return FiniteSubgroup(f"cyclic:{m}", words, table)
    gens = [None] + [AxisRotation(axis, j / m) for j in range(1, m)]
    return _sphere_group(f"cyclic:{m}", gens)


# Half-turns about two orthogonal axes move the midpoint of x -> (half-turn about
# one axis) x onto the antipode of that axis point; if the axis is the z axis that
# lands on the pole.  Groups with several half-turn axes are therefore built in a
# fixed generic frame unless the standard frame is asked for.
GENERIC_FRAME_ROTVEC = (0.3, -0.7, 0.2)


def _frame(standard: bool) -> np.ndarray:
    if standard:
        return np.eye(3)
    rv = np.array(GENERIC_FRAME_ROTVEC)
    angle = float(np.linalg.norm(rv))
    return rotate(np.eye(3), rv / angle, angle).T


def _in_frame(Q: np.ndarray, v) -> tuple:
    return tuple(float(c) for c in Q @ np.asarray(v, dtype=float))


def klein4(standard_frame: bool = False) -> FiniteSubgroup:
    """Half-turns about the three axes of a frame."""
    Q = _frame(standard_frame)
    return _sphere_group("klein4", [None] + [AxisRotation(_in_frame(Q, a), 0.5) for a in np.eye(3)])


def dihedral(m: int, standard_frame: bool = False) -> FiniteSubgroup:
    """Rotations by multiples of 1/m about the frame's third axis and m half-turns perpendicular to it."""
    Q = _frame(standard_frame)
    gens = [None] + [AxisRotation(_in_frame(Q, (0, 0, 1)), j / m) for j in range(1, m)]
    gens += [AxisRotation(_in_frame(Q, (math.cos(math.pi * j / m), math.sin(math.pi * j / m), 0.0)), 0.5) for j in range(m)]
    return _sphere_group(f"dihedral:{m}", gens)


def trivial_group(manifold: str = "sphere") -> FiniteSubgroup:
    return FiniteSubgroup("trivial", (IDENTITY,), ((0,),))


def parse_subgroup(spec: str, manifold: str = "sphere") -> FiniteSubgroup:
    """Parse "cyclic:5", "cyclic:5:axis=0,0,1", "klein4", "dihedral:3" or "trivial".

    klein4 and dihedral accept a trailing ":frame=standard" for the coordinate axes.
    """
    parts = spec.strip().split(":")
    name = parts[0]
    standard = False
    if name in ("klein4", "dihedral") and parts[-1].startswith("frame="):
        frame = parts.pop().partition("=")[2]
        if frame not in ("standard", "generic"):
            raise ValueError(f"bad subgroup spec {spec!r}: frame must be standard or generic")
        standard = frame == "standard"
    try:
        if name == "trivial" and len(parts) == 1:
            return trivial_group(manifold)
        if name == "cyclic" and len(parts) in (2, 3):
            axis = (0.0, 0.0, 1.0)
            if len(parts) == 3:
                key, _, val = parts[2].partition("=")
                if key != "axis":
                    raise ValueError(f"unknown option {key!r}")
                axis = tuple(float(c) for c in val.split(","))
                if len(axis) != 3:
                    raise ValueError("axis needs three components")
                if manifold == "circle":
                    raise ValueError("the circle has no rotation axis")
            return cyclic(int(parts[1]), axis, manifold)
        if manifold == "circle":
            raise ValueError(f"{name} is not a subgroup of the circle rotations")
        if name == "klein4" and len(parts) == 1:
            return klein4(standard)
        if name == "dihedral" and len(parts) == 2:
            return dihedral(int(parts[1]), standard)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad subgroup spec {spec!r}: {exc}") from exc
    raise ValueError(f"bad subgroup spec {spec!r}")


# --- bar chains ---------------------------------------------------------------


@dataclass(frozen=True)
class BarChain:
    """Integer combination of degree-d bar tuples; elements are any hashable group elements."""

    degree: int
    terms: tuple = ()

    @classmethod
    def of(cls, degree: int, items) -> "BarChain":
        acc: dict = {}
        for coef, t in items:
            t = tuple(t)
            if len(t) != degree:
                raise ValueError(f"bar tuple {t} does not have degree {degree}")
            acc[t] = acc.get(t, 0) + int(coef)
        return cls(degree, tuple(sorted(((t, c) for t, c in acc.items() if c), key=lambda tc: repr(tc[0]))))

    def items(self):
        return ((c, t) for t, c in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BarChain") -> "BarChain":
        if other.degree != self.degree:
            raise ValueError("cannot add bar chains of different degrees")
        return BarChain.of(self.degree, list(self.items()) + list(other.items()))

    def __neg__(self) -> "BarChain":
        return BarChain.of(self.degree, [(-c, t) for c, t in self.items()])

    def __sub__(self, other: "BarChain") -> "BarChain":
        return self + (-other)

    def __rmul__(self, k: int) -> "BarChain":
        return BarChain.of(self.degree, [(k * c, t) for c, t in self.items()])

    def to_json(self, name: Callable = str) -> list:
        return [[c, [name(g) for g in t]] for c, t in self.items()]


def bar_boundary(z: BarChain, mul: Callable) -> BarChain:
    d = z.degree
    if d < 1:
        raise ValueError("bar boundary needs degree >= 1")
    out = []
    for c, t in z.items():
        out.append((c, t[1:]))
        for i in range(1, d):
            out.append(((-1) ** i * c, t[: i - 1] + (mul(t[i - 1], t[i]),) + t[i + 1 :]))
        out.append(((-1) ** d * c, t[:-1]))
    return BarChain.of(d - 1, out)


# --- Smith normal form ------------------------------------------------------


class _Overflow(Exception):
    pass


_LIMIT = 2**40


def _snf(A: np.ndarray, track_left: bool, track_right: bool):
    """Return (D, L, Linv, R, Rinv) with L A R = D; untracked factors are None."""
    A = A.copy()
    m, n = A.shape
    dt = A.dtype
    L = np.eye(m, dtype=dt) if track_left else None
    Li = np.eye(m, dtype=dt) if track_left else None
    R = np.eye(n, dtype=dt) if track_right else None
    Ri = np.eye(n, dtype=dt) if track_right else None

    def swap_rows(i, j):
        if i == j:
            return
        A[[i, j]] = A[[j, i]]
        if track_left:
            L[[i, j]] = L[[j, i]]
            Li[:, [i, j]] = Li[:, [j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        A[:, [i, j]] = A[:, [j, i]]
        if track_right:
            R[:, [i, j]] = R[:, [j, i]]
            Ri[[i, j]] = Ri[[j, i]]

    def reduce_rows(t, rows):
        # row_i -= q_i row_t
        q = A[rows, t] // A[t, t]
        A[rows] -= np.outer(q, A[t])
        if track_left:
            L[rows] -= np.outer(q, L[t])
            Li[:, t] += Li[:, rows] @ q

    def reduce_cols(t, cols):
        # col_j -= q_j col_t
        q = A[t, cols] // A[t, t]
        A[:, cols] -= np.outer(A[:, t], q)
        if track_right:
            R[:, cols] -= np.outer(R[:, t], q)
            Ri[t] += q @ Ri[cols]

    def check():
        if dt != object and A.size and int(np.abs(A).max()) > _LIMIT:
            raise _Overflow
        if dt != object and track_left and int(np.abs(L).max(initial=0)) > _LIMIT:
            raise _Overflow
        if dt != object and track_right and int(np.abs(R).max(initial=0)) > _LIMIT:
            raise _Overflow

    rank = 0
    for t in range(min(m, n)):
        sub = A[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        while True:
            sub = A[t:, t:]
            nz = np.nonzero(sub)
            vals = np.abs(sub[nz])
            k = int(np.argmin(vals))
            swap_rows(t, t + int(nz[0][k]))
            swap_cols(t, t + int(nz[1][k]))
            rows = np.arange(t + 1, m)[A[t + 1 :, t] != 0]
            cols = np.arange(t + 1, n)[A[t, t + 1 :] != 0]
            if len(rows):
                reduce_rows(t, rows)
            if len(cols):
                reduce_cols(t, cols)
            check()
            if np.any(A[t + 1 :, t]) or np.any(A[t, t + 1 :]):
                continue
            p = A[t, t]
            bad = np.nonzero(A[t + 1 :, t + 1 :] % p)
            if len(bad[0]) == 0:
                break
            # fold a row with a non-multiple into the pivot row
            i = t + 1 + int(bad[0][0])
            A[t] += A[i]
            if track_left:
                L[t] += L[i]
                Li[:, i] -= Li[:, t]
        if A[t, t] < 0:
            A[t] = -A[t]
            if track_left:
                L[t] = -L[t]
                Li[:, t] = -Li[:, t]
        rank += 1
    return A, L, Li, R, Ri


def _snf_any(A, track_left=True, track_right=True):
    A = np.asarray(A)
    try:
        return _snf(A.astype(np.int64), track_left, track_right)
    except _Overflow:
        return _snf(A.astype(object), track_left, track_right)


def smith_normal_form(A) -> tuple:
    """Integer (U, D, V) with A = U @ D @ V, U and V unimodular, D diagonal with d_i | d_{i+1}."""
    A = np.asarray(A, dtype=np.int64) if not np.asarray(A).dtype == object else np.asarray(A)
    if A.ndim != 2:
        raise ValueError("smith_normal_form needs a matrix")
    D, _, Li, _, Ri = _snf_any(A)
    return Li, D, Ri


def invariant_factors(A) -> list:
    D = _snf_any(A, False, False)[0]
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


# --- homology of finite groups ---------------------------------------------


def bar_basis(G: FiniteSubgroup, d: int) -> list:
    return list(itertools.product(range(G.order), repeat=d))


def boundary_matrix(G: FiniteSubgroup, d: int) -> np.ndarray:
    """Matrix of the bar boundary C_d -> C_{d-1} (rows: degree d-1 tuples)."""
    cols = bar_basis(G, d)
    rows = {t: i for i, t in enumerate(bar_basis(G, d - 1))}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, t in enumerate(cols):
        for c, f in bar_boundary(BarChain.of(d, [(1, t)]), G.mul).items():
            M[rows[f], j] += c
    return M


@dataclass
class Homology:
    group: str
    degree: int
    torsion: list
    betti: int
    generators: list  # BarChains, one per torsion summand then one per free summand
    orders: list  # order of each generator's class (0 = infinite)
    kernel_basis: list
    _Rinv: np.ndarray = field(repr=False, default=None)
    _L2: np.ndarray = field(repr=False, default=None)
    _rank: int = 0
    _factors: list = field(repr=False, default_factory=list)
    _order: int = 1

    def class_of(self, z: BarChain) -> list:
        """Coordinates of a cycle's class: residues mod each torsion order, integers on free parts."""
        v = np.zeros(self._Rinv.shape[0], dtype=self._Rinv.dtype)
        for c, t in z.items():
            v[sum(g * self._order ** (self.degree - 1 - i) for i, g in enumerate(t))] += c
        coords = (self._L2 @ (self._Rinv @ v)[self._rank :]) if len(v) else np.zeros(0)
        out = []
        for i, f in enumerate(self._factors):
            if f != 1:
                out.append(int(coords[i]) % f if f else int(coords[i]))
        return out

    def to_json(self) -> dict:
        return {"group": self.group, "degree": self.degree, "torsion": self.torsion, "betti": self.betti}


def check_cap(G: FiniteSubgroup, d: int, cap: int = DEFAULT_CAP):
    size = G.order ** (d + 1)
    if size > cap:
        raise CapExceeded(f"|G|^(d+1) = {G.order}^{d + 1} = {size} exceeds the cap {cap}")


def find_cycles(G: FiniteSubgroup, d: int, cap: int = DEFAULT_CAP) -> Homology:
    """H_d(G; Z) with generating cycles, from the SNF of the boundaries at d and d+1."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    check_cap(G, d, cap)
    basis = bar_basis(G, d)
    Dd, _, _, R, Ri = _snf_any(boundary_matrix(G, d), False, True)
    rank = sum(1 for i in range(min(Dd.shape)) if Dd[i, i] != 0)
    K = R[:, rank:]
    B = (Ri @ boundary_matrix(G, d + 1))[rank:]
    D2, L2, L2i, _, _ = _snf_any(B, True, False)
    nk = K.shape[1]
    factors = [int(D2[i, i]) if i < min(D2.shape) else 0 for i in range(nk)]
    gens_matrix = K @ L2i

    def chain(col) -> BarChain:
        return BarChain.of(d, [(int(c), basis[i]) for i, c in enumerate(col) if c])

    torsion, generators, orders = [], [], []
    for i, f in enumerate(factors):
        if f > 1:
            torsion.append(f)
            generators.append(chain(gens_matrix[:, i]))
            orders.append(f)
    free = [i for i, f in enumerate(factors) if f == 0]
    for i in free:
        generators.append(chain(gens_matrix[:, i]))
        orders.append(0)
    kernel = [chain(K[:, i]) for i in range(nk)]
    return Homology(G.label, d, torsion, len(free), generators, orders, kernel, Ri, L2, rank, factors, G.order)


def standard_cycles(G: FiniteSubgroup, d: int) -> list:
    """Hand-written cycles: [g] (d=1), [a|b] - [b|a] (d=2, commuting pair), sum_j [g|g^j|g] (d=3, cyclic)."""
    if G.order == 1:
        return []
    if d == 1:
        return [BarChain.of(1, [(1, (1,))])]
    if d == 2 and G.label == "klein4":
        return [BarChain.of(2, [(1, (1, 2)), (-1, (2, 1))])]
    if d == 3 and G.label.startswith("cyclic"):
        g = 1
        powers = [G.identity]
        for _ in range(G.order - 1):
            powers.append(G.mul(g, powers[-1]))
        return [BarChain.of(3, [(1, (g, p, g)) for p in powers])]
    return []


def random_bar_chain(G: FiniteSubgroup, d: int, rng: np.random.Generator, terms: int = 3) -> BarChain:
    items = [(int(rng.integers(-2, 3)), tuple(int(x) for x in rng.integers(0, G.order, size=d))) for _ in range(terms)]
    return BarChain.of(d, items)


# --- evaluation ---------------------------------------------------------------


def evaluate_on_cycle(cocycle: Callable, z: BarChain, mul: Callable, to_word: Callable = lambda g: g, degree: int | None = None, cache: dict | None = None):
    """sum coeff * cocycle(words) over the terms of a cycle.

    ``cocycle`` takes DiffeoWords; ``to_word`` maps group elements to words;
    values are cached per element tuple in ``cache`` when given.
    """
    if degree is not None and z.degree != degree:
        raise ValueError(f"cycle of degree {z.degree} paired with a cocycle of degree {degree}")
    if z.degree >= 1 and not bar_boundary(z, mul).is_zero():
        raise NotACycle("chain has nonzero bar boundary")
    cache = {} if cache is None else cache
    total = 0
    for c, t in z.items():
        if t not in cache:
            cache[t] = cocycle(*(to_word(g) for g in t))
        total = total + c * cache[t]
    return total


def circle_element(w: DiffeoWord) -> DiffeoWord:
    """Canonical single-rotation word for a circle rotation word."""
    s = w.circle_turns() % 1
    return IDENTITY if s == 0 else DiffeoWord.of(CircleRotation(s))


def circle_mul(u: DiffeoWord, v: DiffeoWord) -> DiffeoWord:
    return circle_element(u * v)


def surface_cycle(images: Sequence[DiffeoWord]) -> BarChain:
    """sum_i [a_i|b_i] - [b_i|a_i] for circle holonomies (a_1, b_1, ..., a_g, b_g)."""
    if len(images) % 2 or not images:
        raise ValueError("surface_cycle needs 2g images")
    if not all(w.on_circle for w in images):
        raise NotCommuting("surface cycles are built from circle rotations only")
    els = [circle_element(w) for w in images]
    items = []
    for a, b in zip(els[::2], els[1::2]):
        if circle_mul(a, b) != circle_mul(b, a):
            raise NotCommuting("holonomies do not commute")
        items += [(1, (a, b)), (-1, (b, a))]
    return BarChain.of(2, items)
