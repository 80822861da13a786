"""Open dynamical systems: polynomial vector fields with rational coefficients.

A vector field on ``R^S`` has one polynomial component per element of
``S``, each in the variables ``x0 .. x{|S|-1}``.  Along ``f: S -> S'`` a
field moves by pullback of the inputs and pushforward of the outputs:

    component s' of the result = sum over s with f(s) = s' of v_s(x_f(0), x_f(1), ...)

Coefficients are ``Fraction`` throughout so field equality is decidable.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from .decoration import DecorationBackend
from .errors import DimensionMismatch, IndexMismatch, ParseError
from .finset import FinFunction, FinSet, coproduct

__all__ = [
    "Polynomial",
    "PolyVectorField",
    "VectFieldBackend",
    "VECTFIELD",
    "parse_polynomial",
    "pullback_subst",
    "vf_transport",
    "vf_combine",
    "vf_unit",
    "evaluate",
    "euler_integrate",
    "pushforward_point",
    "pullback_point",
]

Exponents = tuple[int, ...]
Number = Union[int, Fraction, str]


def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial in ``variables.size`` variables.

    ``terms`` is kept in canonical form: no zero coefficients, exponent
    vectors unique, sorted by descending graded-lexicographic order.
    """

    variables: FinSet
    terms: tuple[tuple[Exponents, Fraction], ...] = ()

    def __post_init__(self) -> None:
        n = self.variables.size
        acc: dict[Exponents, Fraction] = {}
        for exps, coef in self.terms:
            exps = tuple(exps)
            if len(exps) != n or any(not isinstance(e, int) or e < 0 for e in exps):
                raise IndexMismatch(f"exponent vector {exps} does not fit {n} variables")
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(coef)
        terms = sorted(((e, c) for e, c in acc.items() if c != 0),
                       key=lambda t: _grlex_key(t[0]), reverse=True)
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_dict(cls, n: int, terms: Mapping[Exponents, Number]) -> Polynomial:
        return cls(FinSet(n), tuple((e, Fraction(c)) for e, c in terms.items()))

    @classmethod
    def zero(cls, n: int) -> Polynomial:
        return cls(FinSet(n), ())

    @classmethod
    def constant(cls, n: int, c: Number) -> Polynomial:
        return cls(FinSet(n), (((0,) * n, Fraction(c)),))

    @classmethod
    def var(cls, n: int, i: int) -> Polynomial:
        if not 0 <= i < n:
            raise IndexMismatch(f"x{i} is not one of {n} variables")
        return cls(FinSet(n), ((tuple(int(k == i) for k in range(n)), Fraction(1)),))

    @property
    def nvars(self) -> int:
        return self.variables.size

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def _check_same(self, other: Polynomial) -> None:
        if self.variables != other.variables:
            raise IndexMismatch(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_same(other)
        return Polynomial(self.variables, self.terms + other.terms)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.variables, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | Number) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.variables, tuple((e, k * c) for e, k in self.terms))
        self._check_same(other)
        return Polynomial(self.variables, tuple(
            (tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
            for e1, c1 in self.terms for e2, c2 in other.terms))

    __rmul__ = __mul__

    def __call__(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        xs = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, coef in self.terms:
            term = coef
            for x, e in zip(xs, exps):
                if e:
                    term *= x ** e
            total += term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (exps, coef) in enumerate(self.terms):
            mono = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e)
            mag = abs(coef)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(f"-{body}" if coef < 0 else body)
            else:
                out.append(f" - {body}" if coef < 0 else f" + {body}")
        return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^]))")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse ``"3*x0^2 - 1/2*x1 + 5"``; variables must be below ``nvars``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            idx = int(m.group("idx"))
            if idx >= nvars:
                raise ParseError(f"variable x{idx} out of range for {nvars} variables in {text!r}")
            tokens.append(("var", idx))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise ParseError("empty polynomial")

    terms: list[tuple[Exponents, Fraction]] = []
    k = 0

    def expect_factor() -> tuple[Fraction, list[int]]:
        nonlocal k
        if k >= len(tokens):
            raise ParseError(f"polynomial {text!r} ends early")
        kind, val = tokens[k]
        k += 1
        exps = [0] * nvars
        if kind == "num":
            return val, exps
        if kind == "var":
            power = 1
            if k < len(tokens) and tokens[k] == ("op", "^"):
                if k + 1 >= len(tokens) or tokens[k + 1][0] != "num" or tokens[k + 1][1].denominator != 1:
                    raise ParseError(f"exponent must be a non-negative integer in {text!r}")
                power = int(tokens[k + 1][1])
                k += 2
            exps[val] = power
            return Fraction(1), exps
        raise ParseError(f"unexpected {val!r} in {text!r}")

    sign = 1
    if tokens[0] in (("op", "-"), ("op", "+")):
        sign = -1 if tokens[0][1] == "-" else 1
        k = 1
    while True:
        coef, exps = expect_factor()
        while k < len(tokens) and tokens[k] == ("op", "*"):
            k += 1
            c2, e2 = expect_factor()
            coef *= c2
            exps = [a + b for a, b in zip(exps, e2)]
        terms.append((tuple(exps), sign * coef))
        if k >= len(tokens):
            break
        kind, val = tokens[k]
        if kind != "op" or val not in "+-":
            raise ParseError(f"expected + or - in {text!r}")
        sign = 1 if val == "+" else -1
        k += 1
    return Polynomial(FinSet(nvars), tuple(terms))


def pullback_subst(f: FinFunction, p: Polynomial) -> Polynomial:
    """Rename ``x_t`` to ``x_f(t)``: a polynomial over ``f.dom`` becomes one over ``f.cod``."""
    if p.variables != f.dom:
        raise IndexMismatch(f"polynomial in {p.nvars} variables, map starts at {f.dom}")
    m = f.cod.size
    moved = []
    for exps, coef in p.terms:
        new = [0] * m
        for t, e in enumerate(exps):
            new[f.table[t]] += e
        moved.append((tuple(new), coef))
    return Polynomial(f.cod, tuple(moved))


@dataclass(frozen=True)
class PolyVectorField:
    space: FinSet
    components: tuple[Polynomial, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.space.size:
            raise DimensionMismatch(f"{len(comps)} components for a space of size {self.space.size}")
        for k, p in enumerate(comps):
            if p.variables != self.space:
                raise IndexMismatch(f"component {k} is in {p.nvars} variables, expected {self.space.size}")

    @classmethod
    def parse(cls, texts: Sequence[str]) -> PolyVectorField:
        n = len(texts)
        return cls(FinSet(n), tuple(parse_polynomial(t, n) for t in texts))

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        if self.space != other.space:
            raise DimensionMismatch("vector fields on different spaces")
        return PolyVectorField(self.space, tuple(a + b for a, b in zip(self.components, other.components)))

    def degree(self) -> int:
        return max((p.degree() for p in self.components), default=-1)

    def __call__(self, point: Sequence[Number]) -> tuple[Fraction, ...]:
        return evaluate(self, point)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.components) + ")"


def vf_transport(f: FinFunction, v: PolyVectorField) -> PolyVectorField:
    if f.dom != v.space:
        raise IndexMismatch(f"vector field on {v.space} cannot move along {f}")
    out = [Polynomial.zero(f.cod.size) for _ in range(f.cod.size)]
    for s, comp in enumerate(v.components):
        target = f.table[s]
        out[target] = out[target] + pullback_subst(f, comp)
    return PolyVectorField(f.cod, tuple(out))


def vf_combine(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    _, inj1, inj2 = coproduct(v.space, w.space)
    comps = tuple(pullback_subst(inj1, p) for p in v.components)
    comps += tuple(pullback_subst(inj2, p) for p in w.components)
    return PolyVectorField(v.space + w.space, comps)


def vf_unit() -> PolyVectorField:
    return PolyVectorField(FinSet(0), ())


def evaluate(v: PolyVectorField, point: Sequence[Number]) -> tuple[Fraction, ...]:
    if len(point) != v.space.size:
        raise DimensionMismatch(f"point has {len(point)} coordinates, field lives on R^{v.space.size}")
    xs = [Fraction(x) for x in point]
    return tuple(p(xs) for p in v.components)


def pullback_point(f: FinFunction, c: Sequence[Number]) -> tuple[Fraction, ...]:
    """``f*(c)(s) = c(f(s))``."""
    if len(c) != f.cod.size:
        raise DimensionMismatch("point does not live on the codomain")
    return tuple(Fraction(c[f.table[s]]) for s in range(f.dom.size))


def pushforward_point(f: FinFunction, c: Sequence[Number]) -> tuple[Fraction, ...]:
    """``f_*(c)(s') = sum of c(s) over f(s) = s'``."""
    if len(c) != f.dom.size:
        raise DimensionMismatch("point does not live on the domain")
    out = [Fraction(0)] * f.cod.size
    for s, x in enumerate(c):
        out[f.table[s]] += Fraction(x)
    return tuple(out)


def euler_integrate(v: PolyVectorField, start: Sequence[Number], step: Number,
                    n: int) -> list[tuple[Fraction, ...]]:
    """Explicit Euler in exact arithmetic; returns ``n + 1`` states."""
    h = Fraction(step)
    if h <= 0:
        raise ValueError("step must be positive")
    if n < 0:
        raise ValueError("step count must be non-negative")
    x = tuple(Fraction(c) for c in start)
    if len(x) != v.space.size:
        raise DimensionMismatch(f"start has {len(x)} coordinates, field lives on R^{v.space.size}")
    traj = [x]
    for _ in range(n):
        dx = evaluate(v, x)
        x = tuple(a + h * b for a, b in zip(x, dx))
        traj.append(x)
    return traj


def _random_polynomial(rng: random.Random, n: int, max_degree: int, max_terms: int) -> Polynomial:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * n
        if n:
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(n)] += 1
        coef = Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]), rng.randint(1, 4))
        terms.append((tuple(exps), coef))
    return Polynomial(FinSet(n), tuple(terms))


class VectFieldBackend(DecorationBackend):
    name = "vectfield"

    def transport(self, f: FinFunction, d: PolyVectorField) -> PolyVectorField:
        return vf_transport(f, d)

    def combine(self, d1: PolyVectorField, d2: PolyVectorField) -> PolyVectorField:
        return vf_combine(d1, d2)

    def unit(self) -> PolyVectorField:
        return vf_unit()

    def support(self, d: PolyVectorField) -> FinSet:
        return d.space

    def to_json(self, d: PolyVectorField) -> dict:
        return {"components": [str(p) for p in d.components]}

    def from_json(self, payload: Any, apex: FinSet) -> PolyVectorField:
        if not isinstance(payload, dict) or not isinstance(payload.get("components"), list):
            raise ParseError("vector-field decoration must be an object with a 'components' list")
        texts = payload["components"]
        if len(texts) != apex.size:
            raise ParseError(f"{len(texts)} components given for an apex of size {apex.size}")
        if not all(isinstance(t, str) for t in texts):
            raise ParseError("components must be polynomial strings")
        return PolyVectorField(apex, tuple(parse_polynomial(t, apex.size) for t in texts))

    def sample(self, rng: random.Random, size: int, *, max_degree: int = 3,
               max_terms: int = 3, **_: int) -> PolyVectorField:
        return PolyVectorField(FinSet(size), tuple(
            _random_polynomial(rng, size, max_degree, max_terms) for _ in range(size)))


VECTFIELD = VectFieldBackend()


def field(*texts: str) -> PolyVectorField:
    """Convenience: ``field("x1", "x0")``."""
    return PolyVectorField.parse(list(texts))


def backends() -> Iterable[DecorationBackend]:
    from .circuits import CIRCUIT

    return (CIRCUIT, VECTFIELD)
