"""Weyl group elements as exact orthogonal matrices on the ambient space."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from .rootsys import Positivity, Root, RootSystem, coroot, dot, positive_roots, reflect


class WeylError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    matrix: Tuple[Tuple[Q, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @cached_property
    def _int_rows(self):
        if all(Q(x).denominator == 1 for row in self.matrix for x in row):
            return tuple(tuple(int(x) for x in row) for row in self.matrix)
        return None

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.dim:
            raise WeylError("dimension mismatch")
        rows = self._int_rows
        if rows is not None and all(type(x) is int for x in v):
            return tuple(sum(m * x for m, x in zip(row, v)) for row in rows)
        out = tuple(sum(m * x for m, x in zip(row, v)) for row in self.matrix)
        if all(x.denominator == 1 for x in map(Q, out)):
            return tuple(int(x) for x in out)
        return out

    def __call__(self, v: Sequence) -> tuple:
        return self.apply(v)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)

    @cached_property
    def inv(self) -> "WeylElement":
        # orthogonal for the standard dot product
        return WeylElement(tuple(zip(*self.matrix)))

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(self.dim) for j in range(self.dim))

    def __repr__(self) -> str:
        rows = ", ".join("[" + " ".join(str(x) for x in row) + "]" for row in self.matrix)
        return f"WeylElement({rows})"


def identity(R: RootSystem | int) -> WeylElement:
    n = R if isinstance(R, int) else R.ambient_dim
    return WeylElement(tuple(tuple(Q(int(i == j)) for j in range(n)) for i in range(n)))


def reflection(R: RootSystem, alpha: Sequence) -> WeylElement:
    a = R.check_root(alpha)
    n2 = dot(a, a)
    n = R.ambient_dim
    return WeylElement(tuple(tuple(Q(int(i == j)) - Q(2 * a[i] * a[j], n2) for j in range(n))
                             for i in range(n)))


def apply(w: WeylElement, v: Sequence) -> tuple:
    return w.apply(v)


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """``w1 . w2`` (apply ``w2`` first)."""
    if w1.dim != w2.dim:
        raise WeylError("dimension mismatch")
    cols = list(zip(*w2.matrix))
    return WeylElement(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                             for row in w1.matrix))


def inverse(w: WeylElement) -> WeylElement:
    return w.inv


def product(R: RootSystem, elements: Iterable[WeylElement]) -> WeylElement:
    out = identity(R)
    for w in elements:
        out = compose(out, w)
    return out


def from_word(R: RootSystem, word: Sequence[int], base: Sequence[Root] | None = None) -> WeylElement:
    """``s_{i1} s_{i2} ...`` for 1-based indices into ``base`` (default: plate base)."""
    base = tuple(base or R.simple_roots)
    if any(not 1 <= i <= len(base) for i in word):
        raise WeylError(f"simple reflection index out of range in {list(word)}")
    return product(R, (reflection(R, base[i - 1]) for i in word))


def is_weyl_element(R: RootSystem, w: WeylElement) -> bool:
    """Scalar product preserved and roots permuted."""
    n = R.ambient_dim
    m = w.matrix
    gram_ok = all(sum(m[k][i] * m[k][j] for k in range(n)) == (i == j) for i in range(n) for j in range(n))
    return gram_ok and all(R.is_root(w.apply(a)) for a in R.roots)


def s_A(R: RootSystem, A: Sequence[Sequence]) -> WeylElement:
    """Product of the (commuting) reflections in a strongly orthogonal set."""
    from .sos import as_sos

    return product(R, (reflection(R, a) for a in as_sos(R, A)))


def epsilon(R: RootSystem, pos: Positivity | None, mu_prime: WeylElement, gamma: Sequence,
            mu: WeylElement) -> int:
    """Sign comparing the Chevalley vectors transported by ``mu`` and ``mu_prime``."""
    pos = pos or R.positivity
    g = R.check_root(gamma)
    exponent = 0
    for b in positive_roots(R, pos):
        if not pos.is_positive(mu_prime.inv.apply(b)) and pos.is_positive(mu.inv.apply(b)):
            exponent += int(dot(coroot(R, b), g))
    return -1 if exponent % 2 else 1


def epsilon_index_set(R: RootSystem, pos: Positivity | None, mu_prime: WeylElement,
                      mu: WeylElement) -> List[Root]:
    pos = pos or R.positivity
    return [b for b in positive_roots(R, pos)
            if not pos.is_positive(mu_prime.inv.apply(b)) and pos.is_positive(mu.inv.apply(b))]


def conjugate_to_simple(R: RootSystem, pos: Positivity | None, alpha: Sequence) -> WeylElement:
    """Some ``mu`` with ``mu^{-1} alpha`` simple, found by descent in height.

    At each step the least-index simple root with positive pairing is used,
    which makes the output deterministic.
    """
    pos = pos or R.positivity
    a = R.check_root(alpha)
    if not pos.is_positive(a):
        raise WeylError(f"{a} is not positive")
    base = pos.base
    mu = identity(R)
    cur = a
    while cur not in base:
        for s in base:
            if dot(coroot(R, s), cur) > 0 and cur != s:
                cur = reflect(s, cur)
                mu = compose(mu, reflection(R, s))
                break
        else:  # pragma: no cover - impossible for a positive root
            raise AssertionError("descent stalled")
    return mu


def root_permutation(R: RootSystem, w: WeylElement) -> Tuple[int, ...]:
    idx = R.index
    try:
        return tuple(idx[w.apply(a)] for a in R.roots)
    except KeyError:
        raise WeylError("matrix does not permute the roots") from None


def elements(R: RootSystem, limit: int = 50_000) -> List[WeylElement]:
    """All Weyl group elements by breadth-first closure; ``limit`` guards the size."""
    gens = [reflection(R, a) for a in R.simple_roots]
    gen_perms = [root_permutation(R, g) for g in gens]
    start = tuple(range(len(R.roots)))
    seen = {start: identity(R)}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        w = seen[p]
        for g, gp in zip(gens, gen_perms):
            q = tuple(p[i] for i in gp)  # permutation of w.g
            if q not in seen:
                if len(seen) >= limit:
                    raise WeylError(f"Weyl group of {R.name} exceeds {limit} elements")
                seen[q] = compose(w, g)
                queue.append(q)
    return list(seen.values())


def conjugators(R: RootSystem, pos: Positivity | None, alpha: Sequence,
                group: Sequence[WeylElement] | None = None) -> List[WeylElement]:
    """Every ``mu`` in the group with ``mu^{-1} alpha`` simple."""
    pos = pos or R.positivity
    a = R.check_root(alpha)
    base = set(pos.base)
    group = group if group is not None else elements(R)
    return [w for w in group if w.inv.apply(a) in base]
