"""Splitting-invariant cocycles in the coroot-lattice model.

A torus point ``w(i)`` with ``w`` in the coroot lattice is stored as ``w``
modulo ``4 Q^v`` in simple-coroot coordinates: ``i`` has order four, so
``w(i) = w'(i)`` exactly when ``w - w'`` is in ``4 Q^v``. In this model
``alpha^v(-1)`` is ``2 alpha^v`` and ``beta^v(i)`` is ``beta^v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .rootsys import Positivity, Root, RootSystem, RootSystemError, coroot, positive_roots, reflect
from .sos import as_sos, check_statement, g2_condition, msos_orbit_representatives, neg, r_plus
from .weyl import WeylElement, compose, conjugate_to_simple, identity, reflection, s_A


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class TorusElem:
    w: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) % 4 for x in self.w))

    def __add__(self, other: "TorusElem") -> "TorusElem":
        return TorusElem(tuple(a + b for a, b in zip(self.w, other.w)))

    def __neg__(self) -> "TorusElem":
        return TorusElem(tuple(-a for a in self.w))

    def __sub__(self, other: "TorusElem") -> "TorusElem":
        return self + (-other)

    def is_identity(self) -> bool:
        return not any(self.w)

    def to_json(self) -> dict:
        return {"w_mod4": list(self.w), "basis": "simple-coroots"}


def torus_zero(R: RootSystem) -> TorusElem:
    return TorusElem((0,) * R.rank)


def torus_from_ambient(R: RootSystem, v: Sequence) -> TorusElem:
    return TorusElem(R.lattice_coords(v))


def coroot_matrix(R: RootSystem, w: WeylElement) -> List[List[int]]:
    """Integer matrix of ``w`` acting on simple-coroot coordinates (columns are images)."""
    cols = [R.lattice_coords(w.apply(c)) for c in R.simple_coroots]
    return [list(row) for row in zip(*cols)]


def act(R: RootSystem, w: WeylElement, t: TorusElem) -> TorusElem:
    m = coroot_matrix(R, w)
    return TorusElem(tuple(sum(a * b for a, b in zip(row, t.w)) for row in m))


@dataclass(frozen=True)
class TwistedCocycle:
    A: Tuple[Root, ...]
    value: TorusElem

    def to_json(self) -> dict:
        out = self.value.to_json()
        out["sos"] = [list(a) for a in self.A]
        return out


def is_cocycle(R: RootSystem, c: TwistedCocycle) -> bool:
    """``(1 - S_A) w`` lies in ``4 Q^v``."""
    S = s_A(R, c.A)
    return (c.value - act(R, S, c.value)).is_identity()


def is_fixed(R: RootSystem, w: WeylElement, t: TorusElem) -> bool:
    return act(R, w, t) == t


def _vsum(vectors, dim):
    out = [0] * dim
    for v in vectors:
        for k, x in enumerate(v):
            out[k] += x
    return out


def rho(R: RootSystem, pos: Positivity | None, mu: WeylElement, alpha: Sequence) -> TwistedCocycle:
    """``alpha^v(-1) * prod (beta^v . s_alpha beta^v)(i)``.

    The product runs over ``beta > 0`` with ``s_alpha beta < 0`` and
    ``mu^{-1} beta < 0``; requires ``alpha > 0`` and ``mu^{-1} alpha`` simple.
    """
    pos = pos or R.positivity
    a = R.check_root(alpha)
    if not pos.is_positive(a):
        raise PreconditionError(f"{a} is not positive")
    if mu.inv.apply(a) not in pos.base:
        raise PreconditionError(f"mu^-1 {a} = {mu.inv.apply(a)} is not simple")
    terms = [tuple(2 * x for x in coroot(R, a))]
    for b in positive_roots(R, pos):
        if not pos.is_positive(reflect(a, b)) and not pos.is_positive(mu.inv.apply(b)):
            terms.append(coroot(R, b))
            terms.append(coroot(R, reflect(a, b)))
    return TwistedCocycle((a,), torus_from_ambient(R, _vsum(terms, R.ambient_dim)))


def default_mus(R: RootSystem, pos: Positivity | None, A: Sequence[Sequence]) -> Dict[Root, WeylElement]:
    return {tuple(a): conjugate_to_simple(R, pos, a) for a in A}


def check_compatible(R: RootSystem, pos: Positivity | None, A: Sequence[Sequence]) -> None:
    """Raise unless ``##`` holds for ``A`` and the G2 simple-root condition is met."""
    res = check_statement(R, pos, A, "##")
    if not res:
        raise PreconditionError(f"compatibility: ## fails for {list(A)} (witness {res.witness})")
    if not g2_condition(R, pos, A):
        raise PreconditionError("compatibility: members of the G2 factor must include a simple root")


def rho_sos(R: RootSystem, pos: Positivity | None, mus: Optional[Mapping[Root, WeylElement]],
            A: Sequence[Sequence], within: Sequence[Sequence] | None = None) -> TwistedCocycle:
    """Cocycle of the torus twisted by ``A``.

    Assembled as ``x(sigma_T) * prod_alpha n(s_alpha) g_alpha^2``: the first
    factor is taken over ``R^+_A`` directly and the torus parts
    ``n(s_alpha) g_alpha^2`` are read off from ``rho(mu_alpha, alpha)``.
    ``within`` is the representative MSOS the positivity was made compatible
    with (default ``A``).
    """
    pos = pos or R.positivity
    A = as_sos(R, A)
    check_compatible(R, pos, within if within is not None else A)
    if within is not None:
        lines = {min(b, neg(b)) for b in as_sos(R, within)}
        if any(min(a, neg(a)) not in lines for a in A):
            raise PreconditionError(f"{list(A)} is not a subset of {list(within)}")
    mus = dict(mus) if mus else {}
    dim = R.ambient_dim
    total = torus_from_ambient(R, _vsum((coroot(R, b) for b in r_plus(R, pos, A)), dim))
    for a in A:
        if not pos.is_positive(a):
            raise PreconditionError(f"{a} is not positive")
        mu = mus.get(a) or conjugate_to_simple(R, pos, a)
        x_a = torus_from_ambient(R, _vsum((coroot(R, b) for b in r_plus(R, pos, [a])), dim))
        total = total + (rho(R, pos, mu, a).value - x_a)
    return TwistedCocycle(A, total)


def rho_sum(R: RootSystem, pos: Positivity | None, mus: Optional[Mapping[Root, WeylElement]],
            A: Sequence[Sequence]) -> TorusElem:
    """``sum_alpha rho(mu_alpha, alpha)`` with no compatibility check."""
    mus = dict(mus) if mus else {}
    total = torus_zero(R)
    for a in map(tuple, A):
        total = total + rho(R, pos, mus.get(a) or conjugate_to_simple(R, pos, a), a).value
    return total


# --- closed forms -----------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    alpha: Root
    mu: WeylElement
    mu_label: str
    closed_form: TorusElem
    literal_text: Optional[TorusElem] = None


def _vec(n, entries):
    v = [0] * n
    for i, c in entries:
        v[i] += c
    return tuple(v)


def _transposition(R: RootSystem, i: int, j: int) -> WeylElement:
    return reflection(R, _vec(R.ambient_dim, [(i, 1), (j, -1)]))


def table_mu(R: RootSystem, alpha: Root) -> Tuple[WeylElement, str]:
    """Conjugating element used by the closed forms (0-based coordinate indices)."""
    t, n = R.type_label, R.rank
    if alpha in R.simple_roots:
        return identity(R), "1"
    nz = [i for i, x in enumerate(alpha) if x]
    if t == "B" and len(nz) == 2 and alpha[nz[0]] == alpha[nz[1]] == 1:
        return reflection(R, _vec(n, [(nz[1], 1)])), f"s_e{nz[1] + 1}"
    if t == "C" and len(nz) == 1:
        i = nz[0]
        return _transposition(R, i, n - 1), f"s_(e{i + 1}-e{n})"
    if t == "D" and len(nz) == 2 and alpha[nz[0]] == alpha[nz[1]] == 1:
        a, b = nz
        # mu^{-1} sends e_a -> e_{n-1}, e_b -> e_n
        mu = compose(_transposition(R, b, n - 1), _transposition(R, a, n - 2))
        return mu, f"s_(e{b + 1}-e{n}) s_(e{a + 1}-e{n - 1})"
    raise RootSystemError(f"no closed form for {alpha} in {R.name}")


def closed_form(R: RootSystem, alpha: Root) -> Tuple[TorusElem, Optional[TorusElem]]:
    """Closed-form value, plus the literal transcription where it differs in reading."""
    t, n = R.type_label, R.rank
    two_cv = tuple(2 * x for x in coroot(R, alpha))
    if alpha in R.simple_roots:
        return torus_from_ambient(R, two_cv), None
    nz = [i for i, x in enumerate(alpha) if x]
    if t == "B":
        # alpha^v((-1)^n) (2e_n^*)((-1)^(n+1)); the literal reading drops the second factor
        literal = torus_from_ambient(R, two_cv) if n % 2 else torus_zero(R)
        value = literal if n % 2 else torus_from_ambient(R, _vec(n, [(n - 1, 4)]))
        return value, literal
    if t == "C":
        i = nz[0]
        product = _vec(n, [(j, 2) for j in range(i, n)])
        literal = _vec(n, [(i, 2 * (n - i))])
        return torus_from_ambient(R, product), torus_from_ambient(R, literal)
    if t == "D":
        extra = _vec(n, [(n - 1, 4 if n % 2 else 0)])
        return torus_from_ambient(R, tuple(x + y for x, y in zip(two_cv, extra))), None
    raise RootSystemError(f"no closed form for {alpha} in {R.name}")


def classical_rho_table(type_label: str, rank: int) -> List[TableEntry]:
    """Closed-form cocycles for every member of every orbit representative."""
    from .rootsys import build

    R = build(type_label, rank)
    if R.type_label not in "ABCD":
        raise RootSystemError(f"no closed-form table for type {R.type_label}")
    seen = []
    for A in msos_orbit_representatives(R.type_label, R.rank):
        for a in A:
            if a not in seen:
                seen.append(a)
    out = []
    for a in seen:
        mu, label = table_mu(R, a)
        value, literal = closed_form(R, a)
        out.append(TableEntry(a, mu, label, value, literal))
    return out
