"""Decorated cospans over a pluggable decoration backend.

A backend supplies, for every finite set ``N``, a set of decoration values
on ``N`` together with

* ``transport(f, d)``: push a value on ``f.dom`` forward to ``f.cod``;
* ``combine(d1, d2)``: place values on ``A`` and ``B`` side by side on ``A + B``;
* ``unit()``: the value on the empty set.

These must form a symmetric lax monoidal functor out of finite sets;
:func:`deccospan.laws.check_decoration_functor` tests exactly that.
Composition of decorated cospans combines both decorations and then
transports the result along the quotient map from ``N + N'`` onto the
pushout apex.
"""
from __future__ import annotations

import abc
import random
from dataclasses import dataclass
from typing import Any

from . import cospan as cs
from .cospan import Cospan, CospanMap
from .errors import BackendMismatch, DecorationMismatch, FootMismatch
from .finset import FinFunction, FinSet, identity, initial_map, inverse

__all__ = [
    "DecorationBackend",
    "DecoratedCospan",
    "DecoratedMap",
    "dcompose",
    "dtensor",
    "didentity",
    "trivial_decoration",
    "dcompanion",
    "dconjoint",
    "check_decorated_map",
    "diagnose_decorated_map",
    "check_decorated_cell",
    "diagnose_decorated_cell",
    "dinterchanger",
    "relabel",
]


class DecorationBackend(abc.ABC):
    """Contract every decoration backend implements."""

    #: short tag used in serialized documents
    name: str = "abstract"

    @abc.abstractmethod
    def transport(self, f: FinFunction, d: Any) -> Any: ...

    @abc.abstractmethod
    def combine(self, d1: Any, d2: Any) -> Any: ...

    @abc.abstractmethod
    def unit(self) -> Any: ...

    @abc.abstractmethod
    def support(self, d: Any) -> FinSet:
        """The finite set ``d`` decorates."""

    def equals(self, d1: Any, d2: Any) -> bool:
        # values are kept in canonical form, so structural equality decides
        return d1 == d2

    @abc.abstractmethod
    def to_json(self, d: Any) -> Any: ...

    @abc.abstractmethod
    def from_json(self, payload: Any, apex: FinSet) -> Any: ...

    @abc.abstractmethod
    def sample(self, rng: random.Random, size: int, **bounds: int) -> Any:
        """A random decoration on a set of the given size, for law checks."""

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name!r}>"


@dataclass(frozen=True)
class DecoratedCospan:
    cospan: Cospan
    decoration: Any
    backend: DecorationBackend

    def __post_init__(self) -> None:
        if self.backend.support(self.decoration) != self.cospan.apex:
            raise DecorationMismatch(
                f"decoration lives on {self.backend.support(self.decoration)}, "
                f"apex is {self.cospan.apex}")

    @property
    def left_foot(self) -> FinSet:
        return self.cospan.left_foot

    @property
    def right_foot(self) -> FinSet:
        return self.cospan.right_foot

    @property
    def apex(self) -> FinSet:
        return self.cospan.apex

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecoratedCospan):
            return NotImplemented
        return (self.backend.name == other.backend.name and self.cospan == other.cospan
                and self.backend.equals(self.decoration, other.decoration))

    def __hash__(self) -> int:
        return hash((self.cospan, self.backend.name))


@dataclass(frozen=True)
class DecoratedMap:
    """A globular 2-morphism of decorated cospans, given by its apex map."""

    apex_map: FinFunction


def _same_backend(*cs_: DecoratedCospan) -> DecorationBackend:
    backend = cs_[0].backend
    for c in cs_[1:]:
        if c.backend.name != backend.name:
            raise BackendMismatch(f"cannot mix {backend.name!r} and {c.backend.name!r} decorations")
    return backend


def dcompose(m: DecoratedCospan, n: DecoratedCospan) -> DecoratedCospan:
    backend = _same_backend(m, n)
    if m.right_foot != n.left_foot:
        raise FootMismatch(f"right foot {m.right_foot} != left foot {n.left_foot}")
    composite, p = cs.glue(m.cospan, n.cospan)
    d = backend.transport(p.from_coproduct, backend.combine(m.decoration, n.decoration))
    return DecoratedCospan(composite, d, backend)


def dtensor(m: DecoratedCospan, n: DecoratedCospan) -> DecoratedCospan:
    backend = _same_backend(m, n)
    return DecoratedCospan(cs.tensor(m.cospan, n.cospan),
                           backend.combine(m.decoration, n.decoration), backend)


def trivial_decoration(backend: DecorationBackend, A: FinSet) -> Any:
    return backend.transport(initial_map(A), backend.unit())


def didentity(backend: DecorationBackend, A: FinSet) -> DecoratedCospan:
    return DecoratedCospan(cs.identity_cospan(A), trivial_decoration(backend, A), backend)


def dcompanion(backend: DecorationBackend, f: FinFunction) -> DecoratedCospan:
    return DecoratedCospan(cs.companion(f), trivial_decoration(backend, f.cod), backend)


def dconjoint(backend: DecorationBackend, f: FinFunction) -> DecoratedCospan:
    return DecoratedCospan(cs.conjoint(f), trivial_decoration(backend, f.cod), backend)


def diagnose_decorated_map(h: DecoratedMap, src: DecoratedCospan, tgt: DecoratedCospan) -> list[str]:
    if src.left_foot != tgt.left_foot or src.right_foot != tgt.right_foot:
        return ["feet differ, so no globular map exists"]
    cell = CospanMap(src.cospan, tgt.cospan, identity(src.left_foot), h.apex_map,
                     identity(src.right_foot))
    return diagnose_decorated_cell(cell, src, tgt)


def check_decorated_map(h: DecoratedMap, src: DecoratedCospan, tgt: DecoratedCospan) -> bool:
    return not diagnose_decorated_map(h, src, tgt)


def diagnose_decorated_cell(cell: CospanMap, src: DecoratedCospan, tgt: DecoratedCospan) -> list[str]:
    """Like :func:`diagnose_decorated_map` but for arbitrary (non-globular) squares."""
    backend = _same_backend(src, tgt)
    problems = cs.diagnose_cospan_map(cell, src.cospan, tgt.cospan)
    if problems:
        return problems
    moved = backend.transport(cell.apex, src.decoration)
    if not backend.equals(moved, tgt.decoration):
        problems.append("decoration not preserved")
    return problems


def check_decorated_cell(cell: CospanMap, src: DecoratedCospan, tgt: DecoratedCospan) -> bool:
    return not diagnose_decorated_cell(cell, src, tgt)


def dinterchanger(m1: DecoratedCospan, n1: DecoratedCospan,
                  m2: DecoratedCospan, n2: DecoratedCospan) -> DecoratedMap:
    """The interchanger bijection, certified to carry decorations across."""
    backend = _same_backend(m1, n1, m2, n2)
    iso = cs.interchanger(m1.cospan, n1.cospan, m2.cospan, n2.cospan)
    src = dcompose(dtensor(m1, n1), dtensor(m2, n2))
    tgt = dtensor(dcompose(m1, m2), dcompose(n1, n2))
    moved = backend.transport(iso.apex_bijection, src.decoration)
    if not backend.equals(moved, tgt.decoration):
        raise DecorationMismatch(
            f"backend {backend.name!r} violates its laws: interchanger does not transport decorations")
    return DecoratedMap(iso.apex_bijection)


def relabel(c: DecoratedCospan, bijection: FinFunction) -> DecoratedCospan:
    """Rename the apex of ``c`` along a bijection, carrying legs and decoration."""
    inverse(bijection)  # raises unless bijective
    cospan = Cospan(c.left_foot, c.right_foot, bijection.cod,
                    c.cospan.in_leg.then(bijection), c.cospan.out_leg.then(bijection))
    return DecoratedCospan(cospan, c.backend.transport(bijection, c.decoration), c.backend)
