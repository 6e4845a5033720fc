"""Strongly orthogonal subsets of a root system.

An SOS is handled as a tuple of roots (order kept for reproducible output);
:class:`SOSet` wraps one for serialization. Every set-valued function here is
insensitive to replacing members by their negatives.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction as Q
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from . import linalg
from .rootsys import (Positivity, Root, RootSystem, RootSystemError, base_from_positivity, build, dot,
                      positive_roots, reflect)


class SOSError(ValueError):
    """A set that is not strongly orthogonal, or a guard violation."""


class RankGuardError(SOSError):
    pass


DEFAULT_MAX_RANK = 8


@dataclass(frozen=True)
class SOSet:
    elements: Tuple[Root, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @classmethod
    def of(cls, R: RootSystem, roots: Iterable[Sequence]) -> "SOSet":
        return cls(as_sos(R, roots))

    def to_json(self) -> list:
        return [list(a) for a in self.elements]


def neg(a: Sequence[int]) -> Root:
    return tuple(-x for x in a)


def strongly_orthogonal(R: RootSystem, alpha: Sequence, beta: Sequence) -> bool:
    a, b = R.check_root(alpha), R.check_root(beta)
    rs = R.root_set
    return (tuple(x + y for x, y in zip(a, b)) not in rs
            and tuple(x - y for x, y in zip(a, b)) not in rs)


def as_sos(R: RootSystem, A: Iterable[Sequence]) -> Tuple[Root, ...]:
    """Validate ``A`` as a strongly orthogonal set and return it as a tuple of roots."""
    roots = tuple(R.check_root(a) for a in A)
    lines = {min(a, neg(a)) for a in roots}
    if len(lines) != len(roots):
        raise SOSError("repeated root (up to sign) in strongly orthogonal set")
    for a, b in itertools.combinations(roots, 2):
        if not strongly_orthogonal(R, a, b):
            raise SOSError(f"{a} and {b} are not strongly orthogonal")
    return roots


def is_sos(R: RootSystem, A: Iterable[Sequence]) -> bool:
    try:
        as_sos(R, A)
    except SOSError:
        return False
    return True


def _so_graph(R: RootSystem, pos: Positivity | None = None) -> nx.Graph:
    ps = positive_roots(R, pos)
    g = nx.Graph()
    g.add_nodes_from(ps)
    for a, b in itertools.combinations(ps, 2):
        if strongly_orthogonal(R, a, b):
            g.add_edge(a, b)
    return g


def _order(R: RootSystem, A: Iterable[Root], pos: Positivity | None = None) -> Tuple[Root, ...]:
    key = {a: i for i, a in enumerate(positive_roots(R, pos))}
    return tuple(sorted(A, key=key.__getitem__))


def enumerate_sos(R: RootSystem, pos: Positivity | None = None) -> List[Tuple[Root, ...]]:
    """Every SOS of positive roots, the empty set included."""
    g = _so_graph(R, pos)
    return [()] + [_order(R, c, pos) for c in nx.enumerate_all_cliques(g)]


def enumerate_maximal(R: RootSystem) -> List[Tuple[Root, ...]]:
    g = _so_graph(R)
    return sorted((_order(R, c) for c in nx.find_cliques(g)), key=lambda c: (len(c), c))


def _max_rank() -> int:
    import os

    env = os.environ.get("SPLITFACT_MAX_RANK")
    return int(env) if env else DEFAULT_MAX_RANK


@dataclass(frozen=True)
class MSOSOrbit:
    orbit_id: int
    representative: Tuple[Root, ...]
    members: Tuple[Tuple[Root, ...], ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"orbit_id": self.orbit_id, "size": self.size,
                "representative": [list(a) for a in self.representative]}


def _line_action(R: RootSystem):
    """Per simple reflection, the induced map on positive representatives of root lines."""
    ps = positive_roots(R)
    pset = set(ps)
    maps = []
    for s in R.simple_roots:
        m = {}
        for a in ps:
            b = reflect(s, a)
            m[a] = b if b in pset else neg(b)
        maps.append(m)
    return maps


def weyl_orbit_of_set(R: RootSystem, A: Iterable[Sequence]) -> set:
    """Orbit of an unordered set of root lines, as frozensets of positive roots."""
    pset = set(positive_roots(R))
    start = frozenset(a if tuple(a) in pset else neg(a) for a in map(tuple, A))
    maps = _line_action(R)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for m in maps:
            nxt = frozenset(m[a] for a in cur)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def enumerate_msos(R: RootSystem, max_rank: int | None = None) -> List[MSOSOrbit]:
    """All MSOS of positive roots grouped into Weyl orbits."""
    guard = _max_rank() if max_rank is None else max_rank
    if R.rank > guard:
        raise RankGuardError(f"rank {R.rank} exceeds enumeration guard {guard} "
                             "(set SPLITFACT_MAX_RANK to override)")
    remaining = {frozenset(c): c for c in enumerate_maximal(R)}
    ordered = list(remaining.values())
    orbits = []
    for c in ordered:
        key = frozenset(c)
        if key not in remaining:
            continue
        orb = weyl_orbit_of_set(R, c)
        members = []
        for k in orb:
            if k not in remaining:
                raise AssertionError("Weyl image of an MSOS is not maximal")
            members.append(remaining.pop(k))
        members.sort(key=lambda x: x)
        orbits.append((c, members))
    orbits.sort(key=lambda t: (-len(t[0]), t[0]))
    return [MSOSOrbit(i, rep, tuple(m)) for i, (rep, m) in enumerate(orbits)]


def is_maximal(R: RootSystem, A: Sequence[Sequence]) -> bool:
    A = as_sos(R, A)
    lines = {min(a, neg(a)) for a in A}
    for b in positive_roots(R):
        if min(b, neg(b)) in lines:
            continue
        if all(strongly_orthogonal(R, a, b) for a in A):
            return False
    return True


# --- representatives ----------------------------------------------------

def _pm(n: int, i: int, j: int, sj: int) -> Root:
    v = [0] * n
    v[i] = 1
    v[j] = sj
    return tuple(v)


def _mult(n: int, i: int, c: int) -> Root:
    v = [0] * n
    v[i] = c
    return tuple(v)


def msos_orbit_representatives(type_label: str, rank: int) -> List[Tuple[Root, ...]]:
    """Orbit representatives of MSOS in the standard listing (0-based coordinates)."""
    t, n = type_label.upper(), rank
    R = build(t, n)  # validates type/rank
    if t == "A":
        reps = [tuple(_pm(n + 1, 2 * i, 2 * i + 1, -1) for i in range((n + 1) // 2))]
    elif t == "B":
        k = n // 2
        pairs = lambda m: tuple(r for i in range(m) for r in (_pm(n, 2 * i, 2 * i + 1, -1),
                                                              _pm(n, 2 * i, 2 * i + 1, 1)))
        if n % 2:
            reps = [pairs(k) + (_mult(n, n - 1, 1),)]
        else:
            reps = [pairs(k - 1) + (_mult(n, n - 1, 1),), pairs(k)]
    elif t == "C":
        reps = [tuple(_pm(n, 2 * i, 2 * i + 1, -1) for i in range(s))
                + tuple(_mult(n, i, 2) for i in range(2 * s, n)) for s in range(n // 2 + 1)]
    elif t == "D":
        reps = [tuple(r for i in range(n // 2) for r in (_pm(n, 2 * i, 2 * i + 1, -1),
                                                          _pm(n, 2 * i, 2 * i + 1, 1)))]
    elif t == "G":
        # contains the short simple root
        reps = [((1, -1, 0), (-1, -1, 2))]
    else:  # pragma: no cover - build() rejects it
        raise RootSystemError(t)
    for A in reps:
        as_sos(R, A)
    return reps


def central_representative(R: RootSystem, reps: Sequence[Sequence[Root]]) -> Tuple[Root, ...]:
    """A representative of maximal length to which all representatives are adapted."""
    for A in sorted(reps, key=len, reverse=True):
        if all(is_adapted(R, B, A) for B in reps):
            return tuple(A)
    raise SOSError(f"no representative of {R.name} has all others adapted to it")


# --- adaptedness, # / ## -------------------------------------------------------

def _span_rank(vectors: Sequence[Sequence]) -> int:
    return linalg.rational_rank(vectors) if vectors else 0


def support(A1: Sequence[Root], alpha: Sequence) -> FrozenSet[Root]:
    return frozenset(a for a in A1 if dot(a, alpha) != 0)


def is_adapted(R: RootSystem, A2: Sequence[Sequence], A1: Sequence[Sequence]) -> bool:
    """Whether ``A2`` is adapted to ``A1``."""
    A2, A1 = as_sos(R, A2), as_sos(R, A1)
    if _span_rank(list(A1) + list(A2)) != _span_rank(list(A1)):
        return False
    sups = [support(A1, a) for a in A2]
    return all(not (x & y) for x, y in itertools.combinations(sups, 2))


@dataclass(frozen=True)
class StatementResult:
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


@lru_cache(maxsize=None)
def _reflection_perm(R: RootSystem, a: Root) -> Tuple[int, ...]:
    idx = R.index
    return tuple(idx[reflect(a, b)] for b in R.roots)


def _subset_perms(R: RootSystem, A: Tuple[Root, ...]) -> Dict[int, Tuple[int, ...]]:
    """Root permutation of ``prod_{i in mask} s_{A_i}`` for every bit mask."""
    refl = [_reflection_perm(R, a) for a in A]
    perms = {0: tuple(range(len(R.roots)))}
    for mask in range(1, 1 << len(A)):
        low = (mask & -mask).bit_length() - 1
        rest = perms[mask & (mask - 1)]
        perms[mask] = tuple(refl[low][j] for j in rest)
    return perms


def check_statement(R: RootSystem, pos: Positivity | None, A: Sequence[Sequence], kind: str) -> StatementResult:
    """Exhaustive check of the statements ``#`` and ``##`` for ``(R, pos, A)``.

    On failure the witness is ``(alpha1, alpha2, beta)`` for ``#`` and
    ``(A1, A2, beta)`` for ``##``.
    """
    pos = pos or R.positivity
    A = tuple(map(tuple, as_sos(R, A)))
    ps = positive_roots(R, pos)
    idx = R.index
    positive = [pos.is_positive(b) for b in R.roots]
    pidx = [idx[b] for b in ps]
    if kind == "#":
        refl = [_reflection_perm(R, a) for a in A]
        for i, j in itertools.permutations(range(len(A)), 2):
            for b, k in zip(ps, pidx):
                if not positive[refl[i][k]] and not positive[refl[j][k]]:
                    return StatementResult(False, (A[i], A[j], b))
        return StatementResult(True)
    if kind == "##":
        perms = _subset_perms(R, A)
        k = len(A)
        for assign in itertools.product((0, 1, 2), repeat=k):
            m1 = sum(1 << i for i in range(k) if assign[i] == 1)
            m2 = sum(1 << i for i in range(k) if assign[i] == 2)
            s1, s2, s12 = perms[m1], perms[m2], perms[m1 | m2]
            for b, j in zip(ps, pidx):
                if not positive[s1[j]] and (not positive[s2[j]] or positive[s12[j]]):
                    sub1 = tuple(A[i] for i in range(k) if assign[i] == 1)
                    sub2 = tuple(A[i] for i in range(k) if assign[i] == 2)
                    return StatementResult(False, (sub1, sub2, b))
        return StatementResult(True)
    raise ValueError(f"unknown statement kind {kind!r}; expected '#' or '##'")


def orthogonal_completion(R: RootSystem, A: Sequence[Root]) -> List[Tuple[int, ...]]:
    """``A`` followed by integral vectors completing it to an orthogonal basis of the root span."""
    basis: List[Tuple[Q, ...]] = [tuple(Q(x) for x in a) for a in A]
    for s in R.simple_roots:
        v = [Q(x) for x in s]
        for b in basis:
            c = dot(v, b) / dot(b, b)
            v = [x - c * y for x, y in zip(v, b)]
        if any(v):
            basis.append(tuple(v))
    out = []
    for v in basis:
        den = math.lcm(*(x.denominator for x in v))
        w = [int(x * den) for x in v]
        g = math.gcd(*w)
        out.append(tuple(x // g for x in w))
    out[:len(A)] = [tuple(a) for a in A]
    if len(out) != R.rank:
        raise AssertionError("orthogonal completion has wrong size")
    return out


def adapted_positivity(R: RootSystem, A: Sequence[Sequence]) -> Positivity:
    """Positive system for which ``#`` holds for every SOS adapted to ``A``.

    Positivity is lexicographic in the pairings with an orthogonal basis
    starting with ``A``; it is realized by the functional
    ``p = sum p_i a_i`` with ``p_n = 1`` and ``p_i`` the least integer above
    ``(M/m) sum_{k>i} p_k``.
    """
    A = as_sos(R, A)
    basis = orthogonal_completion(R, A)
    vals = [abs(dot(a, b)) for a in R.roots for b in basis]
    m = min(v for v in vals if v)
    M = max(vals)
    n = len(basis)
    p = [0] * n
    p[n - 1] = 1
    for i in range(n - 2, -1, -1):
        p[i] = (M * sum(p[i + 1:])) // m + 1
    functional = tuple(sum(p[i] * basis[i][k] for i in range(n)) for k in range(R.ambient_dim))
    pos = base_from_positivity(R, functional)
    for a in R.roots:
        first = next(dot(a, b) for b in basis if dot(a, b) != 0)
        if (first > 0) != pos.is_positive(a):
            raise AssertionError("functional disagrees with the lexicographic order")
    return pos


def r_plus(R: RootSystem, pos: Positivity | None, A: Sequence[Sequence]) -> Tuple[Root, ...]:
    """Positive roots made negative by ``S_A``."""
    from .weyl import s_A

    pos = pos or R.positivity
    S = s_A(R, A)
    return tuple(b for b in positive_roots(R, pos) if not pos.is_positive(S.apply(b)))


def g2_condition(R: RootSystem, pos: Positivity | None, A: Sequence[Sequence]) -> bool:
    """Two members of one G2 factor require one of them to be simple."""
    pos = pos or R.positivity
    A = as_sos(R, A)
    if R.type_label != "G" or len(A) < 2:
        return True
    base = set(pos.base)
    return any(a in base or neg(a) in base for a in A)


def adapted_subsets(R: RootSystem, A: Sequence[Sequence], pos: Positivity | None = None) -> List[Tuple[Root, ...]]:
    """Every SOS of ``pos``-positive roots adapted to ``A`` (empty set included)."""
    A = as_sos(R, A)
    r = _span_rank(list(A))
    cands = [b for b in positive_roots(R, pos)
             if (_span_rank(list(A) + [b]) == r if A else False)]
    sup = {b: support(A, b) for b in cands}
    out = []

    def rec(start, cur, used):
        out.append(tuple(cur))
        for i in range(start, len(cands)):
            b = cands[i]
            if sup[b] & used:
                continue
            if all(strongly_orthogonal(R, b, c) for c in cur):
                cur.append(b)
                rec(i + 1, cur, used | sup[b])
                cur.pop()

    rec(0, [], frozenset())
    return out
