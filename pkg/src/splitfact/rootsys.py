"""Classical and G2 root systems in Bourbaki plate coordinates.

Roots are tuples of ints in the ambient space of the plates, the scalar
product is the standard dot product, and coroots ``2a/(a,a)`` are tuples of
Fractions (long G2 coroots are not integral in these coordinates).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from . import linalg

Root = Tuple[int, ...]
Vector = Tuple[Q, ...]


class RootSystemError(ValueError):
    """Unsupported type/rank or a vector that is not a root."""


class PositivityError(ValueError):
    """A functional that vanishes on some root."""


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(x, y))


def _unit(n: int, i: int, c: int = 1) -> List[int]:
    v = [0] * n
    v[i] = c
    return v


def _plate(type_label: str, n: int) -> Tuple[int, List[Root], List[Root], Tuple[int, ...]]:
    """Ambient dimension, all roots, simple roots and a standard functional."""
    roots = set()
    if type_label == "A":
        dim = n + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i], v[j] = 1, -1
                    roots.add(tuple(v))
        simple = [tuple(_e(dim, i) - _e(dim, i + 1)) for i in range(n)]
        functional = tuple(range(n, -1, -1))
    elif type_label in "BCD":
        dim = n
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * n
                        v[i], v[j] = si, sj
                        roots.add(tuple(v))
            if type_label == "B":
                roots.update({tuple(_unit(n, i)), tuple(_unit(n, i, -1))})
            elif type_label == "C":
                roots.update({tuple(_unit(n, i, 2)), tuple(_unit(n, i, -2))})
        simple = [tuple(_e(n, i) - _e(n, i + 1)) for i in range(n - 1)]
        if type_label == "B":
            simple.append(tuple(_unit(n, n - 1)))
            functional = tuple(range(n, 0, -1))
        elif type_label == "C":
            simple.append(tuple(_unit(n, n - 1, 2)))
            functional = tuple(range(n, 0, -1))
        else:
            simple.append(tuple(_e(n, n - 2) + _e(n, n - 1)))
            functional = tuple(range(n - 1, -1, -1))
    elif type_label == "G":
        dim = 3
        for i in range(3):
            for j in range(3):
                if i != j:
                    v = [0, 0, 0]
                    v[i], v[j] = 1, -1
                    roots.add(tuple(v))
            v = [-1, -1, -1]
            v[i] = 2
            roots.update({tuple(v), tuple(-x for x in v)})
        simple = [(1, -1, 0), (-2, 1, 1)]
        functional = (0, -1, 2)
    else:
        raise RootSystemError(f"unsupported type {type_label!r}")
    return dim, sorted(roots, reverse=True), simple, functional


class _Vec(list):
    def __sub__(self, other):
        return _Vec(a - b for a, b in zip(self, other))

    def __add__(self, other):
        return _Vec(a + b for a, b in zip(self, other))


def _e(n: int, i: int) -> _Vec:
    return _Vec(_unit(n, i))


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2}
_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "G": lambda n: 12,
}


@dataclass(frozen=True)
class Positivity:
    """A choice of positive roots given by a functional, with its base."""

    functional: Vector
    base: Tuple[Root, ...]

    def value(self, v: Sequence) -> Q:
        return dot(v, self.functional)

    def is_positive(self, v: Sequence) -> bool:
        return self.value(v) > 0


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    ambient_dim: int
    roots: Tuple[Root, ...]
    simple_roots: Tuple[Root, ...]
    positivity: Positivity = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.type_label, self.rank) == (other.type_label, other.rank)

    def __hash__(self):
        return hash((self.type_label, self.rank))

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def index(self) -> Dict[Root, int]:
        return {r: i for i, r in enumerate(self.roots)}

    def is_root(self, v: Sequence) -> bool:
        try:
            t = tuple(int(x) for x in v)
        except (TypeError, ValueError):
            return False
        if len(t) != self.ambient_dim or any(Q(x) != y for x, y in zip(t, v)):
            return False
        return t in self.root_set

    def check_root(self, v: Sequence) -> Root:
        if len(v) != self.ambient_dim or not self.is_root(v):
            raise RootSystemError(f"{tuple(v)} is not a root of {self.name}")
        return tuple(int(x) for x in v)

    @cached_property
    def simple_coroots(self) -> Tuple[Vector, ...]:
        return tuple(coroot(self, a) for a in self.simple_roots)

    @property
    def coroot_lattice_basis(self) -> Tuple[Vector, ...]:
        return self.simple_coroots

    @cached_property
    def min_root_norm2(self) -> int:
        return min(dot(r, r) for r in self.roots)

    @cached_property
    def _coroot_gram_inverse(self):
        cv = self.simple_coroots
        gram = [[dot(a, b) for b in cv] for a in cv]
        return linalg.rational_inverse(gram)

    def coroot_coords(self, v: Sequence) -> Vector:
        """Rational coordinates of ``v`` in the simple-coroot basis.

        Raises if ``v`` is not in the span of the roots.
        """
        cv = self.simple_coroots
        rhs = [dot(a, v) for a in cv]
        c = tuple(sum(g * r for g, r in zip(row, rhs)) for row in self._coroot_gram_inverse)
        back = tuple(sum(ci * a[k] for ci, a in zip(c, cv)) for k in range(self.ambient_dim))
        if any(Q(x) != y for x, y in zip(v, back)):
            raise RootSystemError(f"{tuple(v)} is not in the span of {self.name}")
        return c

    def lattice_coords(self, v: Sequence) -> Tuple[int, ...]:
        """Integer simple-coroot coordinates of ``v``; raises if ``v`` is not in the coroot lattice."""
        c = self.coroot_coords(v)
        if any(x.denominator != 1 for x in c):
            raise RootSystemError(f"{tuple(v)} is not in the coroot lattice of {self.name}")
        return tuple(int(x) for x in c)

    def from_coords(self, c: Sequence) -> Vector:
        return tuple(sum(Q(ci) * a[k] for ci, a in zip(c, self.simple_coroots)) for k in range(self.ambient_dim))

    def in_coroot_lattice(self, v: Sequence, scale: int = 1) -> bool:
        """Whether ``v`` lies in ``scale`` times the coroot lattice."""
        try:
            c = self.coroot_coords(v)
        except RootSystemError:
            return False
        return all((x / scale).denominator == 1 for x in c)

    @cached_property
    def root_lattice_basis(self) -> Tuple[Root, ...]:
        return self.simple_roots

    def in_root_lattice(self, v: Sequence) -> bool:
        c = linalg.rational_solve(linalg.transpose(self.simple_roots), v)
        return c is not None and all(x.denominator == 1 for x in c)


def build(type_label: str, rank: int) -> RootSystem:
    """The root system of the given type with its Bourbaki base and positivity."""
    type_label = type_label.upper()
    if type_label not in _MIN_RANK:
        raise RootSystemError(f"unsupported type {type_label!r}; expected one of A, B, C, D, G")
    if not isinstance(rank, int) or rank < _MIN_RANK[type_label] or (type_label == "G" and rank != 2):
        raise RootSystemError(f"unsupported rank {rank!r} for type {type_label}")
    dim, roots, simple, functional = _plate(type_label, rank)
    pos = Positivity(tuple(Q(x) for x in functional), tuple(simple))
    R = RootSystem(type_label, rank, dim, tuple(roots), tuple(simple), pos)
    _check_invariants(R)
    return R


def parse_type(label: str) -> Tuple[str, int]:
    """Split ``'B3'`` into ``('B', 3)``."""
    label = label.strip()
    if len(label) < 2 or not label[1:].isdigit():
        raise RootSystemError(f"cannot parse root system label {label!r}")
    return label[0].upper(), int(label[1:])


def _check_invariants(R: RootSystem) -> None:
    expected = _COUNTS[R.type_label](R.rank)
    if len(R.roots) != expected:
        raise AssertionError(f"{R.name}: {len(R.roots)} roots, expected {expected}")
    rs = R.root_set
    for a in R.roots:
        if tuple(-x for x in a) not in rs:
            raise AssertionError(f"{R.name} not closed under negation at {a}")
    ps = positive_roots(R, R.positivity)
    if len(ps) * 2 != len(R.roots):
        raise AssertionError("standard functional does not split the roots")
    if set(base_from_positivity(R, R.positivity.functional).base) != set(R.simple_roots):
        raise AssertionError(f"{R.name}: plate base is not the base of the standard functional")


def coroot(R: RootSystem, alpha: Sequence) -> Vector:
    a = R.check_root(alpha)
    n2 = dot(a, a)
    return tuple(Q(2 * x, n2) for x in a)


def pairing(R: RootSystem, covec: Sequence, gamma: Sequence) -> int:
    """Cartan integer ``<covec, gamma>`` for a coroot ``covec``."""
    g = R.check_root(gamma)
    val = dot(covec, g)
    if Q(val).denominator != 1:
        raise AssertionError(f"non-integral pairing {val}")
    return int(val)


def positive_roots(R: RootSystem, pos: Positivity | None = None) -> Tuple[Root, ...]:
    """Positive roots under ``pos``, ordered by height along the functional then coordinates."""
    return _positive_roots(R, pos or R.positivity)


@lru_cache(maxsize=4096)
def _positive_roots(R: RootSystem, pos: Positivity) -> Tuple[Root, ...]:
    vals = {}
    for a in R.roots:
        v = pos.value(a)
        if v == 0:
            raise PositivityError(f"functional vanishes on root {a}")
        if v > 0:
            vals[a] = v
    return tuple(sorted(vals, key=lambda a: (vals[a], tuple(-x for x in a))))


def base_from_positivity(R: RootSystem, p: Sequence) -> Positivity:
    """The positivity of functional ``p`` with its indecomposable positive roots as base."""
    functional = tuple(int(x) if Q(x).denominator == 1 else Q(x) for x in p)
    if len(functional) != R.ambient_dim:
        raise PositivityError("functional has the wrong dimension")
    tmp = Positivity(functional, ())
    ps = positive_roots(R, tmp)
    pset = set(ps)
    decomposable = set()
    for i, a in enumerate(ps):
        for b in ps[i:]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in pset:
                decomposable.add(s)
    base = [a for a in ps if a not in decomposable]
    if len(base) != R.rank:
        raise AssertionError(f"base of size {len(base)} for rank {R.rank}")
    return Positivity(functional, tuple(base))


def standard_positivity(R: RootSystem) -> Positivity:
    return R.positivity


def reflect(alpha: Sequence, v: Sequence) -> tuple:
    """``s_alpha(v) = v - 2(alpha, v)/(alpha, alpha) alpha``; stays integral on roots."""
    n2 = dot(alpha, alpha)
    num = 2 * dot(alpha, v)
    if isinstance(num, int) and isinstance(n2, int) and num % n2 == 0 and all(isinstance(x, int) for x in v):
        c = num // n2
        return tuple(x - c * a for x, a in zip(v, alpha))
    c = Q(num, n2)
    out = tuple(x - c * a for x, a in zip(v, alpha))
    if all(Q(x).denominator == 1 for x in out):
        return tuple(int(x) for x in out)
    return out


def root_strings_ok(R: RootSystem) -> bool:
    """For (a,b) < 0 and a != -b the sum a + b is a root."""
    rs = R.root_set
    for a in R.roots:
        for b in R.roots:
            if dot(a, b) < 0 and any(x != -y for x, y in zip(a, b)):
                if tuple(x + y for x, y in zip(a, b)) not in rs:
                    return False
    return True


def short_lattice_vectors(R: RootSystem) -> Iterable[Root]:
    """Nonzero root-lattice vectors of norm at most the shortest root length."""
    from itertools import product

    bound = int(R.min_root_norm2 ** 0.5 + 1e-9)
    m2 = R.min_root_norm2
    for v in product(range(-bound, bound + 1), repeat=R.ambient_dim):
        if any(v) and dot(v, v) <= m2 and R.in_root_lattice(v):
            yield v
