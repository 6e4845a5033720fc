"""Lattice quotients for Galois cohomology of the twisted tori.

Everything is in simple-coroot coordinates, so ``Q^v`` is ``Z^r`` and the
twist ``S_A`` is an integer involution ``M``. The lattice-side group
``X_{-1} / IX`` and the finite cocycle model
``{w : (1 - M) w in 4Z^r} / (4Z^r + ker(M - 1))`` are compared through
``lambda -> 2 lambda``, the torus point ``lambda(-1) = (2 lambda)(i)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction as Q
from typing import List, Mapping, Optional, Sequence, Tuple

from . import linalg as la
from .invariant import (PreconditionError, TorusElem, TwistedCocycle, check_compatible,
                        is_cocycle, rho_sos)
from .rootsys import Positivity, Root, RootSystem, coroot, dot
from .sos import as_sos, adapted_positivity, neg
from .weyl import WeylElement

Coords = Tuple[int, ...]


class CohomologyError(ValueError):
    pass


class InternalInvariantError(AssertionError):
    pass


# --- lattices -----------------------------------------------------------------

@dataclass(frozen=True)
class IntegerLattice:
    """Sublattice of ``Z^dim`` given by an echelon basis."""

    basis: Tuple[Coords, ...]
    dim: int

    @classmethod
    def span(cls, vectors: Sequence[Sequence[int]], dim: int) -> "IntegerLattice":
        vecs = [tuple(int(x) for x in v) for v in vectors]
        return cls(tuple(la.hnf_basis(vecs, dim)) if vecs else (), dim)

    @classmethod
    def full(cls, dim: int, scale: int = 1) -> "IntegerLattice":
        return cls.span([[scale * int(i == j) for j in range(dim)] for i in range(dim)], dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return la.lattice_contains(self.basis, v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coords(self, v: Sequence[int]) -> Coords:
        c = la.coords_in_basis(self.basis, v)
        if c is None:
            raise CohomologyError(f"{tuple(v)} is not in the lattice")
        return c

    def __add__(self, other: "IntegerLattice") -> "IntegerLattice":
        return IntegerLattice.span(list(self.basis) + list(other.basis), self.dim)

    def __and__(self, other: "IntegerLattice") -> "IntegerLattice":
        return IntegerLattice(tuple(la.lattice_intersection(self.basis, other.basis)), self.dim)

    def scaled(self, k: int) -> "IntegerLattice":
        return IntegerLattice.span([[k * x for x in v] for v in self.basis], self.dim)

    def issubset(self, other: "IntegerLattice") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntegerLattice) and self.dim == other.dim
                and self.issubset(other) and other.issubset(self))

    def __hash__(self):
        return hash((self.dim, self.rank))


@dataclass(frozen=True, eq=False)
class FiniteAbelianGroup:
    """``numerator / denominator`` presented through the Smith normal form.

    ``divisors`` are the nontrivial elementary divisors; ``generators`` are
    ambient lattice vectors whose classes generate the matching cyclic factors.
    """

    numerator: IntegerLattice
    denominator: IntegerLattice
    divisors: Tuple[int, ...]
    generators: Tuple[Coords, ...]
    _rows: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def quotient(cls, numerator: IntegerLattice, denominator: IntegerLattice) -> "FiniteAbelianGroup":
        k = numerator.rank
        rel = [numerator.coords(v) for v in denominator.basis]
        if la.rational_rank(rel) < k:
            raise CohomologyError("quotient is infinite")
        if k == 0:
            return cls(numerator, denominator, (), (), ())
        u, d, _ = la.smith_normal_form(la.transpose(rel))
        diag = [d[i][i] for i in range(k)]
        uinv = la.integer_inverse(u)
        rows, divs, gens = [], [], []
        for i, di in enumerate(diag):
            if di == 1:
                continue
            divs.append(di)
            rows.append(tuple(u[i]))
            col = [uinv[r][i] for r in range(k)]
            gens.append(tuple(sum(c * v[j] for c, v in zip(col, numerator.basis))
                              for j in range(numerator.dim)))
        return cls(numerator, denominator, tuple(divs), tuple(gens), tuple(rows))

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.divisors

    def project(self, v: Sequence[int]) -> Coords:
        """Divisor coordinates of the class of ``v`` (which must lie in the numerator)."""
        c = self.numerator.coords(v)
        return tuple(sum(a * b for a, b in zip(row, c)) % d for row, d in zip(self._rows, self.divisors))

    def lift(self, x: Sequence[int]) -> Coords:
        dim = self.numerator.dim
        return tuple(sum(c * g[j] for c, g in zip(x, self.generators)) for j in range(dim))

    def zero(self) -> Coords:
        return (0,) * len(self.divisors)

    def elements(self) -> List[Coords]:
        return [tuple(x) for x in itertools.product(*(range(d) for d in self.divisors))]

    def to_json(self) -> dict:
        return {"divisors": list(self.divisors), "generators": [list(g) for g in self.generators]}


# --- lattices attached to a strongly orthogonal set -------------------------

@lru_cache(maxsize=None)
def _reflection_matrix(R: RootSystem, a: Root) -> Tuple[Tuple[int, ...], ...]:
    # s_a(c) = c - <a, c> a^v on simple-coroot coordinates
    v = R.lattice_coords(coroot(R, a))
    row = [int(dot(a, c)) for c in R.simple_coroots]
    r = R.rank
    return tuple(tuple(int(i == j) - v[i] * row[j] for j in range(r)) for i in range(r))


def _key(R: RootSystem, A: Sequence[Sequence]) -> Tuple[Root, ...]:
    return tuple(sorted(max(a, neg(a)) for a in as_sos(R, A)))


def twist_matrix(R: RootSystem, A: Sequence[Sequence]) -> List[List[int]]:
    """``S_A`` on simple-coroot coordinates (columns are images of simple coroots)."""
    return [list(row) for row in _twist(R, _key(R, A))]


@lru_cache(maxsize=None)
def _twist(R: RootSystem, key: Tuple[Root, ...]) -> Tuple[Tuple[int, ...], ...]:
    m = la.identity(R.rank)
    for a in key:
        m = la.matmul(m, _reflection_matrix(R, a))
    return tuple(map(tuple, m))


def _cached(fn):
    """Memoize a lattice builder on the unordered set of root lines."""
    inner = lru_cache(maxsize=None)(lambda R, key: fn(R, key))

    def wrapper(R: RootSystem, A: Sequence[Sequence]):
        return inner(R, _key(R, A))

    wrapper.__name__, wrapper.__doc__ = fn.__name__, fn.__doc__
    return wrapper


@_cached
def x_minus(R: RootSystem, A: Sequence[Sequence]) -> IntegerLattice:
    """``ker(S_A + 1)`` in ``Q^v``."""
    m = twist_matrix(R, A)
    r = R.rank
    plus = [[m[i][j] + (i == j) for j in range(r)] for i in range(r)]
    return IntegerLattice.span(la.integer_kernel(plus, r), r)


@_cached
def x_plus(R: RootSystem, A: Sequence[Sequence]) -> IntegerLattice:
    """``ker(S_A - 1)`` in ``Q^v``, which is ``Q^v`` meet the span of ``im(1 + S_A)``."""
    m = twist_matrix(R, A)
    r = R.rank
    minus = [[m[i][j] - (i == j) for j in range(r)] for i in range(r)]
    return IntegerLattice.span(la.integer_kernel(minus, r), r)


@_cached
def ix_lattice(R: RootSystem, A: Sequence[Sequence]) -> IntegerLattice:
    """``(1 - S_A) Q^v``."""
    m = twist_matrix(R, A)
    r = R.rank
    cols = [[(i == j) - m[i][j] for i in range(r)] for j in range(r)]
    return IntegerLattice.span(cols, r)


@_cached
def tn_quotient(R: RootSystem, A: Sequence[Sequence]) -> FiniteAbelianGroup:
    g = FiniteAbelianGroup.quotient(x_minus(R, A), ix_lattice(R, A))
    if any(d != 2 for d in g.divisors):
        raise InternalInvariantError(f"elementary divisors {g.divisors} are not all 2")
    return g


@_cached
def cocycle_lattice(R: RootSystem, A: Sequence[Sequence]) -> IntegerLattice:
    """``{w : (1 - S_A) w in 4 Q^v}``."""
    m = twist_matrix(R, A)
    r = R.rank
    # (1 - M) w - 4 y = 0
    system = [[(i == j) - m[i][j] for j in range(r)] + [-4 * (i == j) for j in range(r)] for i in range(r)]
    return IntegerLattice.span([z[:r] for z in la.integer_kernel(system, 2 * r)], r)


@_cached
def coboundary_lattice(R: RootSystem, A: Sequence[Sequence]) -> IntegerLattice:
    """``4 Q^v + ker(S_A - 1)``."""
    return IntegerLattice.full(R.rank, 4) + x_plus(R, A)


@_cached
def cocycle_group(R: RootSystem, A: Sequence[Sequence]) -> FiniteAbelianGroup:
    return FiniteAbelianGroup.quotient(cocycle_lattice(R, A), coboundary_lattice(R, A))


def cocycle_class(R: RootSystem, c: TwistedCocycle) -> Coords:
    if not is_cocycle(R, c):
        raise CohomologyError(f"{c.value.w} is not a cocycle for {list(c.A)}")
    return cocycle_group(R, c.A).project(c.value.w)


def tn_transfer(R: RootSystem, A: Sequence[Sequence], lam: Sequence[int]) -> TorusElem:
    """``lambda(-1)`` for ``lambda`` in ``x_minus(A)`` (simple-coroot coordinates)."""
    if not x_minus(R, A).contains(lam):
        raise CohomologyError(f"{tuple(lam)} is not in X_-1 for {list(A)}")
    return TorusElem(tuple(2 * x for x in lam))


@dataclass(frozen=True)
class TNCheck:
    well_defined: bool
    injective: bool
    order_domain: int
    order_codomain: int

    @property
    def bijective(self) -> bool:
        return self.well_defined and self.injective and self.order_domain == self.order_codomain


def tn_model_check(R: RootSystem, A: Sequence[Sequence]) -> TNCheck:
    """Compare ``X_-1 / IX`` with the cocycle model through ``lambda -> 2 lambda``.

    The kernel is computed as the lattice ``K = {lambda in X_-1 : 2 lambda in B}``;
    the induced map is well defined when ``IX`` lies in ``K`` and injective
    when ``K`` lies in ``IX``.
    """
    xm, ix = x_minus(R, A), ix_lattice(R, A)
    zl, bl = cocycle_lattice(R, A), coboundary_lattice(R, A)
    if not xm.scaled(2).issubset(zl):
        raise InternalInvariantError("2 X_-1 is not made of cocycles")
    k2 = xm.scaled(2) & bl
    kernel = IntegerLattice.span([[x // 2 for x in v] for v in k2.basis], R.rank)
    return TNCheck(ix.issubset(kernel), kernel.issubset(ix),
                   tn_quotient(R, A).order, cocycle_group(R, A).order)


def tn_preimage(R: RootSystem, A: Sequence[Sequence], w: Sequence[int]) -> Coords:
    """Some ``lambda`` in ``x_minus(A)`` with ``2 lambda`` in the class of ``w``."""
    tq = tn_quotient(R, A)
    cg = cocycle_group(R, A)
    target = cg.project(w)
    for x in tq.elements():
        lam = tq.lift(x)
        if cg.project(tuple(2 * c for c in lam)) == target:
            return lam
    raise InternalInvariantError(f"no Tate-Nakayama preimage of {tuple(w)}")


# --- comparison of two tori ----------------------------------------------------

@dataclass(frozen=True)
class Comparison:
    domain: FiniteAbelianGroup
    codomain: FiniteAbelianGroup
    matrix: Tuple[Coords, ...]  # images of the domain generators
    injective: bool

    def apply(self, x: Sequence[int]) -> Coords:
        out = [0] * len(self.codomain.divisors)
        for c, img in zip(x, self.matrix):
            out = [a + c * b for a, b in zip(out, img)]
        return tuple(a % d for a, d in zip(out, self.codomain.divisors))


def _check_nested(R: RootSystem, A_sub: Sequence[Sequence], A: Sequence[Sequence]):
    A_sub, A = as_sos(R, A_sub), as_sos(R, A)
    lines = {min(b, neg(b)) for b in A}
    if any(min(a, neg(a)) not in lines for a in A_sub):
        raise CohomologyError(f"{list(A_sub)} is not contained in {list(A)}")
    return A_sub, A


def comparison_denominators(R: RootSystem, A_sub, A) -> Tuple[IntegerLattice, IntegerLattice]:
    A_sub, A = _check_nested(R, A_sub, A)
    ix_sub, ix_a = ix_lattice(R, A_sub), ix_lattice(R, A)
    return ix_sub + (ix_a & x_minus(R, A_sub)), ix_sub + ix_a


def comparison_quotients(R: RootSystem, A_sub: Sequence[Sequence], A: Sequence[Sequence]) -> Comparison:
    """``X_-1(A')/(IX(A') + IX(A) meet X_-1(A'))`` into ``X_-1(A)/(IX(A') + IX(A))``."""
    A_sub, A = _check_nested(R, A_sub, A)
    den_sub, den = comparison_denominators(R, A_sub, A)
    xm_sub, xm = x_minus(R, A_sub), x_minus(R, A)
    dom = FiniteAbelianGroup.quotient(xm_sub, den_sub)
    cod = FiniteAbelianGroup.quotient(xm, den)
    images = tuple(cod.project(g) for g in dom.generators)
    kernel = xm_sub & den
    return Comparison(dom, cod, images, kernel.issubset(den_sub))


# --- endoscopic characters ---------------------------------------------------------

def _frac_mod1(x: Q) -> Q:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class EndoChar:
    """A rational covector on ``Q^v`` (fundamental-weight coordinates) modulo ``Z``."""

    s_hat: Tuple[Q, ...]

    def __post_init__(self):
        object.__setattr__(self, "s_hat", tuple(_frac_mod1(Q(x)) for x in self.s_hat))

    def pair(self, v: Sequence[int]) -> Q:
        return _frac_mod1(sum((s * x for s, x in zip(self.s_hat, v)), Q(0)))


def is_invariant(R: RootSystem, s: EndoChar, A: Sequence[Sequence]) -> bool:
    m = twist_matrix(R, A)
    r = R.rank
    moved = [sum(s.s_hat[i] * m[i][j] for i in range(r)) for j in range(r)]
    return all((x - y).denominator == 1 for x, y in zip(moved, s.s_hat))


def char_factors(R: RootSystem, s: EndoChar, A: Sequence[Sequence],
                 denominator: Optional[IntegerLattice] = None) -> bool:
    if not is_invariant(R, s, A):
        raise PreconditionError(f"character {s.s_hat} is not S_A-invariant for {list(A)}")
    den = denominator if denominator is not None else ix_lattice(R, A)
    return all(s.pair(v) == 0 for v in den.basis)


def pair_char(R: RootSystem, s: EndoChar, A: Sequence[Sequence], cls, *, group_element: bool = False) -> Q:
    """Exponent ``q`` of the pairing value ``exp(2 pi i q)``.

    ``cls`` is a cocycle, a vector of ``x_minus(A)``, or (with
    ``group_element``) divisor coordinates in ``tn_quotient(A)``.
    """
    if not char_factors(R, s, A):
        raise CohomologyError("character does not factor through X_-1 / IX")
    if isinstance(cls, TwistedCocycle):
        if not is_cocycle(R, cls):
            raise CohomologyError("not a cocycle")
        lam = tn_preimage(R, A, cls.value.w)
    elif group_element:
        lam = tn_quotient(R, A).lift(cls)
    else:
        lam = tuple(cls)
        if not x_minus(R, A).contains(lam):
            raise CohomologyError(f"{lam} is not in X_-1")
    return s.pair(lam)


@dataclass(frozen=True)
class ComparisonReport:
    value_sub: Q
    value: Q
    embedding_consistent: bool
    lambda_sub: Coords
    lambda_: Coords

    def to_json(self) -> dict:
        return {"value_A_sub": _fmt(self.value_sub), "value_A": _fmt(self.value),
                "embedding_consistent": self.embedding_consistent,
                "lambda_A_sub": list(self.lambda_sub), "lambda_A": list(self.lambda_)}


def _fmt(q: Q) -> str:
    return f"{q.numerator}/{q.denominator} mod 1"


def compatible_positivity(R: RootSystem, A: Sequence[Sequence], mode: str = "auto") -> Positivity:
    if mode not in ("auto", "standard", "adapted"):
        raise CohomologyError(f"unknown positivity mode {mode!r}")
    if mode == "standard":
        return R.positivity
    if mode == "auto":
        try:
            check_compatible(R, R.positivity, A)
            return R.positivity
        except PreconditionError:
            pass
    return adapted_positivity(R, A)


def compare_invariants(R: RootSystem, s: EndoChar, A_sub: Sequence[Sequence], A: Sequence[Sequence],
                       mus: Optional[Mapping[Root, WeylElement]] = None,
                       pos: Positivity | None = None) -> ComparisonReport:
    A_sub, A = _check_nested(R, A_sub, A)
    pos = pos or compatible_positivity(R, A)
    check_compatible(R, pos, A)
    for B in (A_sub, A):
        if not is_invariant(R, s, B):
            raise PreconditionError(f"character is not invariant under S_A for {list(B)}")
    cmp = comparison_quotients(R, A_sub, A)
    den_sub, den = comparison_denominators(R, A_sub, A)
    if not (char_factors(R, s, A_sub, den_sub) and char_factors(R, s, A, den)):
        raise PreconditionError("character does not factor through the comparison quotients")
    if not cmp.injective:
        raise InternalInvariantError("comparison map is not injective")
    c_sub = rho_sos(R, pos, mus, A_sub, within=A)
    c = rho_sos(R, pos, mus, A)
    lam_sub = tn_preimage(R, A_sub, c_sub.value.w)
    lam = tn_preimage(R, A, c.value.w)
    v_sub = s.pair(cmp.domain.lift(cmp.domain.project(lam_sub)))
    v = s.pair(cmp.codomain.lift(cmp.codomain.project(lam)))
    image = cmp.apply(cmp.domain.project(lam_sub))
    consistent = s.pair(cmp.codomain.lift(image)) == v_sub
    return ComparisonReport(v_sub, v, consistent, lam_sub, lam)
