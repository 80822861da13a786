"""Skeletal finite sets, functions between them, and chosen finite colimits.

A finite set of size ``n`` is always ``{0, ..., n-1}``, and a function is a
lookup table.  Coproducts lay the left block before the right block;
pushouts number their classes by minimal representative in ``N + N'``.
Both choices make every derived value decidable and bit-stable.
"""
from __future__ import annotations

import contextlib
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CodomainMismatch, DomainMismatch, NotACocone, NotBijective

__all__ = [
    "FinSet",
    "FinFunction",
    "PushoutResult",
    "identity",
    "compose",
    "coproduct",
    "copair",
    "fsum",
    "initial_map",
    "pushout",
    "pushout_universal",
    "is_bijection",
    "is_surjection",
    "inverse",
    "all_functions",
    "skip_normalization",
]

# Test-only hook: with normalization off, pushout classes keep their raw
# union-find representative instead of being renumbered contiguously.
_NORMALIZE = os.environ.get("DECCOSPAN_SKIP_NORMALIZATION", "") not in ("1", "true", "yes")


@contextlib.contextmanager
def skip_normalization() -> Iterator[None]:
    """Temporarily disable canonical renumbering of pushout classes.

    Only meant for mutation tests: the resulting "pushouts" are cocones
    that are no longer surjective, so downstream law checks must fail.
    """
    global _NORMALIZE
    saved = _NORMALIZE
    _NORMALIZE = False
    try:
        yield
    finally:
        _NORMALIZE = saved


@dataclass(frozen=True, order=True)
class FinSet:
    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.size, int) or self.size < 0:
            raise ValueError(f"finite set size must be a non-negative int, got {self.size!r}")

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __len__(self) -> int:
        return self.size

    def __add__(self, other: FinSet) -> FinSet:
        return FinSet(self.size + other.size)

    def __repr__(self) -> str:
        return f"FinSet({self.size})"


EMPTY = FinSet(0)


@dataclass(frozen=True)
class FinFunction:
    """A total function ``dom -> cod`` given by its table."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.dom.size:
            raise DomainMismatch(
                f"table has {len(table)} entries but domain has size {self.dom.size}")
        n = self.cod.size
        for k, v in enumerate(table):
            if not isinstance(v, int) or not 0 <= v < n:
                raise CodomainMismatch(f"table[{k}] = {v!r} is outside codomain of size {n}")

    @classmethod
    def of(cls, table: Sequence[int], cod: int | FinSet) -> FinFunction:
        """Build from a plain table and codomain size."""
        if isinstance(cod, int):
            cod = FinSet(cod)
        return cls(FinSet(len(table)), cod, tuple(table))

    def __call__(self, k: int) -> int:
        return self.table[k]

    def then(self, other: FinFunction) -> FinFunction:
        return compose(self, other)

    def __add__(self, other: FinFunction) -> FinFunction:
        return fsum(self, other)

    def image(self) -> set[int]:
        return set(self.table)

    def fibre(self, k: int) -> list[int]:
        return [x for x, y in enumerate(self.table) if y == k]

    def __repr__(self) -> str:
        return f"FinFunction({list(self.table)}: {self.dom.size}->{self.cod.size})"


def identity(A: FinSet) -> FinFunction:
    return FinFunction(A, A, tuple(range(A.size)))


def initial_map(A: FinSet) -> FinFunction:
    """The unique function from the empty set into ``A``."""
    return FinFunction(EMPTY, A, ())


def compose(f: FinFunction, g: FinFunction) -> FinFunction:
    """Diagrammatic composite: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise CodomainMismatch(f"cannot compose {f} with {g}: {f.cod} != {g.dom}")
    gt = g.table
    return FinFunction(f.dom, g.cod, tuple(gt[k] for k in f.table))


def coproduct(A: FinSet, B: FinSet) -> tuple[FinSet, FinFunction, FinFunction]:
    S = FinSet(A.size + B.size)
    inj1 = FinFunction(A, S, tuple(range(A.size)))
    inj2 = FinFunction(B, S, tuple(range(A.size, S.size)))
    return S, inj1, inj2


def copair(u: FinFunction, v: FinFunction) -> FinFunction:
    """The map ``[u, v]: A + B -> Q``."""
    if u.cod != v.cod:
        raise CodomainMismatch(f"copair needs a shared codomain, got {u.cod} and {v.cod}")
    return FinFunction(u.dom + v.dom, u.cod, u.table + v.table)


def fsum(f: FinFunction, g: FinFunction) -> FinFunction:
    """Block sum ``f + g: A + B -> A' + B'``."""
    shift = f.cod.size
    return FinFunction(f.dom + g.dom, f.cod + g.cod, f.table + tuple(shift + k for k in g.table))


def is_bijection(f: FinFunction) -> bool:
    return f.dom.size == f.cod.size and len(set(f.table)) == f.dom.size


def is_surjection(f: FinFunction) -> bool:
    return len(set(f.table)) == f.cod.size


def inverse(f: FinFunction) -> FinFunction:
    if not is_bijection(f):
        raise NotBijective(f"{f} is not a bijection")
    inv = [0] * f.dom.size
    for k, v in enumerate(f.table):
        inv[v] = k
    return FinFunction(f.cod, f.dom, tuple(inv))


@dataclass(frozen=True)
class PushoutResult:
    """The chosen pushout of a span ``N <-f- Y -g-> N'``."""

    left_span: FinFunction
    right_span: FinFunction
    apex: FinSet
    left_leg: FinFunction
    right_leg: FinFunction
    from_coproduct: FinFunction


class _UnionFind:
    """Union-find whose roots are always the minimal member of their class."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx < ry:
            self.parent[ry] = rx
        elif ry < rx:
            self.parent[rx] = ry


def pushout(f: FinFunction, g: FinFunction) -> PushoutResult:
    """Glue ``N`` and ``N'`` along the shared foot ``Y``.

    The apex is ``N + N'`` modulo the equivalence generated by
    ``f(y) ~ g(y)``; classes are numbered in order of their least member.
    """
    if f.dom != g.dom:
        raise DomainMismatch(f"pushout needs a shared foot, got {f.dom} and {g.dom}")
    n_left = f.cod.size
    total = n_left + g.cod.size
    uf = _UnionFind(total)
    for a, b in zip(f.table, g.table):
        uf.union(a, n_left + b)
    roots = [uf.find(k) for k in range(total)]
    if _NORMALIZE:
        label: dict[int, int] = {}
        for r in roots:
            if r not in label:
                label[r] = len(label)
        apex = FinSet(len(label))
        quotient = tuple(label[r] for r in roots)
    else:
        apex = FinSet(total)
        quotient = tuple(roots)
    J = FinFunction(FinSet(total), apex, quotient)
    left = FinFunction(f.cod, apex, quotient[:n_left])
    right = FinFunction(g.cod, apex, quotient[n_left:])
    return PushoutResult(f, g, apex, left, right, J)


def pushout_universal(p: PushoutResult, u: FinFunction, v: FinFunction) -> FinFunction:
    """The unique ``w: apex -> Q`` with ``left_leg;w = u`` and ``right_leg;w = v``."""
    if u.dom != p.left_span.cod or v.dom != p.right_span.cod:
        raise DomainMismatch("cocone legs do not start at the pushout's sides")
    if u.cod != v.cod:
        raise CodomainMismatch(f"cocone legs land in {u.cod} and {v.cod}")
    if compose(p.left_span, u) != compose(p.right_span, v):
        raise NotACocone("u . f != v . g")
    w: list[int | None] = [None] * p.apex.size
    for k, q in zip(p.from_coproduct.table, u.table + v.table):
        if w[k] is None:
            w[k] = q
        elif w[k] != q:
            raise NotACocone(f"cocone is not constant on pushout class {k}")
    missing = [k for k, q in enumerate(w) if q is None]
    if missing:
        raise NotACocone(f"pushout classes {missing} have no representative")
    return FinFunction(p.apex, u.cod, tuple(w))  # type: ignore[arg-type]


def all_functions(A: FinSet, B: FinSet) -> Iterable[FinFunction]:
    """Every function ``A -> B`` in lexicographic table order."""
    for table in itertools.product(range(B.size), repeat=A.size):
        yield FinFunction(A, B, table)
