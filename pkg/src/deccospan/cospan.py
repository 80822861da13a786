"""Cospans of finite sets as a symmetric monoidal double category.

Horizontal composition ``hcompose(m, n)`` is written in diagrammatic
order: ``m`` runs first, and its right foot is glued to the left foot of
``n`` by a pushout.  Tensor is the chosen block coproduct, which is strictly
associative and unital on the nose, so only horizontal composition needs
coherence isomorphisms.  Those are returned as :class:`GlobularIso`
objects whose apex bijection has been checked when constructed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundaryMismatch, FootMismatch, NotBijective
from .finset import (
    EMPTY,
    FinFunction,
    FinSet,
    PushoutResult,
    compose,
    copair,
    coproduct,
    fsum,
    identity,
    inverse,
    is_bijection,
    pushout,
    pushout_universal,
)

__all__ = [
    "Cospan",
    "CospanMap",
    "GlobularIso",
    "hcompose",
    "glue",
    "identity_cospan",
    "empty_cospan",
    "tensor",
    "associator",
    "left_unitor",
    "right_unitor",
    "interchanger",
    "unit_interchanger",
    "braiding_object",
    "braiding_cell",
    "companion",
    "conjoint",
    "companion_unit",
    "companion_counit",
    "conjoint_unit",
    "conjoint_counit",
    "identity_map",
    "unit_map",
    "check_cospan_map",
    "diagnose_cospan_map",
    "vcompose",
    "hcompose_map",
    "tensor_map",
]


@dataclass(frozen=True)
class Cospan:
    """``left_foot -in_leg-> apex <-out_leg- right_foot``."""

    left_foot: FinSet
    right_foot: FinSet
    apex: FinSet
    in_leg: FinFunction
    out_leg: FinFunction

    def __post_init__(self) -> None:
        if self.in_leg.dom != self.left_foot or self.in_leg.cod != self.apex:
            raise FootMismatch(f"in_leg {self.in_leg} does not run {self.left_foot} -> {self.apex}")
        if self.out_leg.dom != self.right_foot or self.out_leg.cod != self.apex:
            raise FootMismatch(f"out_leg {self.out_leg} does not run {self.right_foot} -> {self.apex}")

    @classmethod
    def from_legs(cls, in_leg: FinFunction, out_leg: FinFunction) -> Cospan:
        return cls(in_leg.dom, out_leg.dom, in_leg.cod, in_leg, out_leg)

    @classmethod
    def of(cls, apex: int, in_table, out_table) -> Cospan:
        """Shorthand: ``Cospan.of(3, [0], [1, 1])``."""
        return cls.from_legs(FinFunction.of(in_table, apex), FinFunction.of(out_table, apex))

    def terminals(self) -> set[int]:
        return self.in_leg.image() | self.out_leg.image()

    def __repr__(self) -> str:
        return (f"Cospan({self.left_foot.size} -{list(self.in_leg.table)}-> {self.apex.size} "
                f"<-{list(self.out_leg.table)}- {self.right_foot.size})")


@dataclass(frozen=True)
class CospanMap:
    """A square 2-morphism ``(left, apex, right)`` from ``source`` to ``target``.

    Construction does not validate; use :func:`check_cospan_map`.
    """

    source: Cospan
    target: Cospan
    left: FinFunction
    apex: FinFunction
    right: FinFunction

    @property
    def is_globular(self) -> bool:
        return (self.left == identity(self.source.left_foot)
                and self.right == identity(self.source.right_foot))


@dataclass(frozen=True)
class GlobularIso:
    """A certified globular isomorphism between two cospans with equal feet."""

    source: Cospan
    target: Cospan
    apex_bijection: FinFunction

    def __post_init__(self) -> None:
        if not is_bijection(self.apex_bijection):
            raise NotBijective(f"apex map {self.apex_bijection} is not a bijection")
        problems = diagnose_cospan_map(self.as_map())
        if problems:
            raise BoundaryMismatch("; ".join(problems))

    def as_map(self) -> CospanMap:
        return CospanMap(self.source, self.target, identity(self.source.left_foot),
                         self.apex_bijection, identity(self.source.right_foot))

    def inverse(self) -> GlobularIso:
        return GlobularIso(self.target, self.source, inverse(self.apex_bijection))

    def then(self, other: GlobularIso) -> GlobularIso:
        if self.target != other.source:
            raise BoundaryMismatch("isomorphisms are not composable")
        return GlobularIso(self.source, other.target, compose(self.apex_bijection, other.apex_bijection))


# -- 1-cells -------------------------------------------------------------

def glue(m: Cospan, n: Cospan) -> tuple[Cospan, PushoutResult]:
    """Composite cospan together with the pushout that built it."""
    if m.right_foot != n.left_foot:
        raise FootMismatch(f"right foot {m.right_foot} of first cospan != left foot {n.left_foot} of second")
    p = pushout(m.out_leg, n.in_leg)
    composite = Cospan(m.left_foot, n.right_foot, p.apex,
                       compose(m.in_leg, p.left_leg), compose(n.out_leg, p.right_leg))
    return composite, p


def hcompose(m: Cospan, n: Cospan) -> Cospan:
    return glue(m, n)[0]


def identity_cospan(A: FinSet) -> Cospan:
    i = identity(A)
    return Cospan(A, A, A, i, i)


def empty_cospan() -> Cospan:
    return identity_cospan(EMPTY)


def tensor(m: Cospan, n: Cospan) -> Cospan:
    return Cospan(m.left_foot + n.left_foot, m.right_foot + n.right_foot, m.apex + n.apex,
                  fsum(m.in_leg, n.in_leg), fsum(m.out_leg, n.out_leg))


def companion(f: FinFunction) -> Cospan:
    """``A -f-> B <-id- B``."""
    return Cospan(f.dom, f.cod, f.cod, f, identity(f.cod))


def conjoint(f: FinFunction) -> Cospan:
    """``B -id-> B <-f- A``."""
    return Cospan(f.cod, f.dom, f.cod, identity(f.cod), f)


# -- coherence isomorphisms ----------------------------------------------

def associator(m1: Cospan, m2: Cospan, m3: Cospan) -> GlobularIso:
    """``(m1 . m2) . m3 -> m1 . (m2 . m3)``, both ways by universal property."""
    m12, p12 = glue(m1, m2)
    left, pl = glue(m12, m3)
    m23, p23 = glue(m2, m3)
    right, pr = glue(m1, m23)

    into_right = pushout_universal(p12, pr.left_leg, compose(p23.left_leg, pr.right_leg))
    forward = pushout_universal(pl, into_right, compose(p23.right_leg, pr.right_leg))

    into_left = pushout_universal(p23, compose(p12.right_leg, pl.left_leg), pl.right_leg)
    backward = pushout_universal(pr, compose(p12.left_leg, pl.left_leg), into_left)

    _check_mutually_inverse(forward, backward)
    return GlobularIso(left, right, forward)


def left_unitor(m: Cospan) -> GlobularIso:
    """``U_X . m -> m`` for ``m`` starting at ``X``."""
    src, p = glue(identity_cospan(m.left_foot), m)
    w = pushout_universal(p, m.in_leg, identity(m.apex))
    return GlobularIso(src, m, w)


def right_unitor(m: Cospan) -> GlobularIso:
    """``m . U_Y -> m`` for ``m`` ending at ``Y``."""
    src, p = glue(m, identity_cospan(m.right_foot))
    w = pushout_universal(p, identity(m.apex), m.out_leg)
    return GlobularIso(src, m, w)


def interchanger(m1: Cospan, n1: Cospan, m2: Cospan, n2: Cospan) -> GlobularIso:
    """``(m1 + n1) . (m2 + n2) -> (m1 . m2) + (n1 . n2)``."""
    src, ps = glue(tensor(m1, n1), tensor(m2, n2))
    mm, pm = glue(m1, m2)
    nn, pn = glue(n1, n2)
    tgt = tensor(mm, nn)
    _, inj_m, inj_n = coproduct(mm.apex, nn.apex)

    forward = pushout_universal(
        ps,
        copair(compose(pm.left_leg, inj_m), compose(pn.left_leg, inj_n)),
        copair(compose(pm.right_leg, inj_m), compose(pn.right_leg, inj_n)),
    )
    # the source's two sides are C1 + D1 and C2 + D2; pull their blocks apart
    _, c1, d1 = coproduct(m1.apex, n1.apex)
    _, c2, d2 = coproduct(m2.apex, n2.apex)
    back_m = pushout_universal(pm, compose(c1, ps.left_leg), compose(c2, ps.right_leg))
    back_n = pushout_universal(pn, compose(d1, ps.left_leg), compose(d2, ps.right_leg))
    backward = copair(back_m, back_n)

    _check_mutually_inverse(forward, backward)
    return GlobularIso(src, tgt, forward)


def unit_interchanger(A: FinSet, B: FinSet) -> GlobularIso:
    """``U_{A+B} -> U_A + U_B``; equal on the nose with block coproducts."""
    u = identity_cospan(A + B)
    return GlobularIso(u, tensor(identity_cospan(A), identity_cospan(B)), identity(A + B))


def braiding_object(A: FinSet, B: FinSet) -> FinFunction:
    """The block swap ``A + B -> B + A``."""
    a, b = A.size, B.size
    return FinFunction(A + B, B + A, tuple(range(b, b + a)) + tuple(range(b)))


def braiding_cell(m: Cospan, n: Cospan) -> CospanMap:
    cell = CospanMap(
        tensor(m, n), tensor(n, m),
        braiding_object(m.left_foot, n.left_foot),
        braiding_object(m.apex, n.apex),
        braiding_object(m.right_foot, n.right_foot),
    )
    problems = diagnose_cospan_map(cell)
    if problems:
        raise BoundaryMismatch("; ".join(problems))
    return cell


def _check_mutually_inverse(forward: FinFunction, backward: FinFunction) -> None:
    if (compose(forward, backward) != identity(forward.dom)
            or compose(backward, forward) != identity(forward.cod)):
        raise NotBijective("universal maps are not mutually inverse")


# -- 2-morphisms -----------------------------------------------------------

def identity_map(m: Cospan) -> CospanMap:
    return CospanMap(m, m, identity(m.left_foot), identity(m.apex), identity(m.right_foot))


def unit_map(f: FinFunction) -> CospanMap:
    """``U_f: U_A -> U_B``, all three components ``f``."""
    return CospanMap(identity_cospan(f.dom), identity_cospan(f.cod), f, f, f)


def companion_unit(f: FinFunction) -> CospanMap:
    """The cell ``U_A => companion(f)`` framed by ``id_A`` and ``f``."""
    return CospanMap(identity_cospan(f.dom), companion(f), identity(f.dom), f, f)


def companion_counit(f: FinFunction) -> CospanMap:
    """The cell ``companion(f) => U_B`` framed by ``f`` and ``id_B``."""
    B = f.cod
    return CospanMap(companion(f), identity_cospan(B), f, identity(B), identity(B))


def conjoint_unit(f: FinFunction) -> CospanMap:
    """The cell ``U_A => conjoint(f)`` framed by ``f`` and ``id_A``."""
    return CospanMap(identity_cospan(f.dom), conjoint(f), f, f, identity(f.dom))


def conjoint_counit(f: FinFunction) -> CospanMap:
    """The cell ``conjoint(f) => U_B`` framed by ``id_B`` and ``f``."""
    B = f.cod
    return CospanMap(conjoint(f), identity_cospan(B), identity(B), identity(B), f)


def diagnose_cospan_map(cm: CospanMap, src: Cospan | None = None, tgt: Cospan | None = None) -> list[str]:
    """List every way ``cm`` fails to be a 2-morphism ``src -> tgt`` (empty if valid)."""
    src = cm.source if src is None else src
    tgt = cm.target if tgt is None else tgt
    problems = []
    if cm.left.dom != src.left_foot or cm.left.cod != tgt.left_foot:
        problems.append("left foot map has the wrong boundary")
    if cm.right.dom != src.right_foot or cm.right.cod != tgt.right_foot:
        problems.append("right foot map has the wrong boundary")
    if cm.apex.dom != src.apex or cm.apex.cod != tgt.apex:
        problems.append("apex map has the wrong boundary")
    if problems:
        return problems
    if compose(src.in_leg, cm.apex) != compose(cm.left, tgt.in_leg):
        problems.append("left square does not commute")
    if compose(src.out_leg, cm.apex) != compose(cm.right, tgt.out_leg):
        problems.append("right square does not commute")
    return problems


def check_cospan_map(cm: CospanMap, src: Cospan | None = None, tgt: Cospan | None = None) -> bool:
    return not diagnose_cospan_map(cm, src, tgt)


def vcompose(cm1: CospanMap, cm2: CospanMap) -> CospanMap:
    """Vertical composite: ``cm1`` then ``cm2``, componentwise."""
    if cm1.target != cm2.source:
        raise BoundaryMismatch("target of first 2-morphism is not the source of the second")
    return CospanMap(cm1.source, cm2.target, compose(cm1.left, cm2.left),
                     compose(cm1.apex, cm2.apex), compose(cm1.right, cm2.right))


def hcompose_map(cm1: CospanMap, cm2: CospanMap) -> CospanMap:
    """Horizontal composite, apex map induced on the source pushout."""
    if cm1.right != cm2.left:
        raise BoundaryMismatch("middle foot maps of horizontally adjacent 2-morphisms differ")
    src, ps = glue(cm1.source, cm2.source)
    tgt, pt = glue(cm1.target, cm2.target)
    apex = pushout_universal(ps, compose(cm1.apex, pt.left_leg), compose(cm2.apex, pt.right_leg))
    return CospanMap(src, tgt, cm1.left, apex, cm2.right)


def tensor_map(cm1: CospanMap, cm2: CospanMap) -> CospanMap:
    return CospanMap(tensor(cm1.source, cm2.source), tensor(cm1.target, cm2.target),
                     fsum(cm1.left, cm2.left), fsum(cm1.apex, cm2.apex), fsum(cm1.right, cm2.right))
