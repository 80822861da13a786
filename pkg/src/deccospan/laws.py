"""Executable axiom catalog.

Every check draws its cases from a :class:`CaseGenerator`; case ``i`` of
law ``L`` uses its own RNG seeded from ``(seed, L, i)``, so any single
failing case can be replayed with ``cases=[i]``.  Checks never raise:
exceptions inside a case are recorded as failures with the case inputs.
"""
from __future__ import annotations

import contextlib
import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import cospan as cs
from .cospan import Cospan, CospanMap
from .decoration import (
    DecoratedCospan,
    DecorationBackend,
    dcompanion,
    dcompose,
    dconjoint,
    diagnose_decorated_cell,
    didentity,
    dinterchanger,
    dtensor,
    trivial_decoration,
)
from .dynam import (
    VECTFIELD,
    PolyVectorField,
    evaluate,
    pullback_point,
    pushforward_point,
    vf_transport,
)
from .finset import (
    FinFunction,
    FinSet,
    all_functions,
    compose,
    fsum,
    identity,
    is_bijection,
    is_surjection,
    pushout,
)

__all__ = [
    "CaseGenerator",
    "LawReport",
    "random_function",
    "random_cospan",
    "random_chain",
    "random_cell_into",
    "random_cell_row",
    "oracle_quotient",
    "pushout_oracle",
    "check_pseudo_double_category",
    "check_monoidal_structure",
    "check_symmetry",
    "check_fibrancy",
    "check_decoration_functor",
    "check_vectfield_functoriality",
    "run_all",
]


@dataclass(frozen=True)
class CaseGenerator:
    seed: int = 0
    max_set_size: int = 4
    max_edges: int = 5
    max_degree: int = 3
    case_count: int = 1000

    def rng(self, law: str, case: int) -> random.Random:
        return random.Random(f"{self.seed}-{law}-{case}")

    def bounds(self) -> dict[str, int]:
        return {"max_edges": self.max_edges, "max_degree": self.max_degree}


@dataclass
class LawReport:
    law: str
    cases_run: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        return {**asdict(self), "passed": self.passed}

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        head = (f"{status} {self.law}: {self.cases_run} cases, "
                f"{len(self.failures)} failures, {self.elapsed:.2f}s")
        lines = [head]
        for f in self.failures[:5]:
            lines.append(f"  case {f['case']} [{f['check']}] {f['detail']}")
        if len(self.failures) > 5:
            lines.append(f"  ... {len(self.failures) - 5} more")
        return "\n".join(lines)


# -- reproduction payloads -------------------------------------------------

def _plain(obj: Any) -> Any:
    """Turn case inputs into JSON-ready data."""
    if isinstance(obj, FinFunction):
        return {"dom": obj.dom.size, "cod": obj.cod.size, "table": list(obj.table)}
    if isinstance(obj, FinSet):
        return obj.size
    if isinstance(obj, Cospan):
        return {"left_foot": obj.left_foot.size, "right_foot": obj.right_foot.size,
                "apex": obj.apex.size, "in_leg": list(obj.in_leg.table),
                "out_leg": list(obj.out_leg.table)}
    if isinstance(obj, CospanMap):
        return {"source": _plain(obj.source), "target": _plain(obj.target),
                "left": list(obj.left.table), "apex": list(obj.apex.table),
                "right": list(obj.right.table)}
    if isinstance(obj, DecoratedCospan):
        return {**_plain(obj.cospan), "backend": obj.backend.name,
                "decoration": obj.backend.to_json(obj.decoration)}
    if isinstance(obj, PolyVectorField):
        return [str(p) for p in obj.components]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (int, str, float, bool)) or obj is None:
        return obj
    return repr(obj)


class _Case:
    def __init__(self) -> None:
        self.inputs: dict[str, Any] = {}
        self.problems: list[tuple[str, str]] = []

    def record(self, **inputs: Any) -> None:
        self.inputs.update(inputs)

    def expect(self, check: str, ok: bool, detail: str = "") -> None:
        if not ok:
            self.problems.append((check, detail or "condition does not hold"))

    def equal(self, check: str, got: Any, want: Any) -> None:
        if got != want:
            self.problems.append((check, f"got {got!r}, expected {want!r}"))

    @contextlib.contextmanager
    def guard(self, check: str):
        """Record an exception as a failure of ``check`` and carry on with the case."""
        try:
            yield
        except Exception as exc:
            self.problems.append((check, f"{type(exc).__name__}: {exc}"))

    def agree(self, check: str, lhs: Callable[[], Any], rhs: Callable[[], Any]) -> None:
        """Evaluate both sides lazily under :meth:`guard` and compare them."""
        with self.guard(check):
            self.equal(check, lhs(), rhs())

    def valid_cell(self, check: str, cell: CospanMap) -> None:
        for p in cs.diagnose_cospan_map(cell):
            self.problems.append((check, p))


def _run(law: str, indices: Iterable[Any], seed: int,
         body: Callable[[_Case, Any], None]) -> LawReport:
    report = LawReport(law)
    start = time.perf_counter()
    for i in indices:
        case = _Case()
        try:
            body(case, i)
        except Exception as exc:  # a crash inside a case is a failure, not an abort
            case.problems.append(("exception", f"{type(exc).__name__}: {exc}"))
        report.cases_run += 1
        for check, detail in case.problems:
            report.failures.append({"law": law, "seed": seed, "case": _plain(i), "check": check,
                                    "detail": detail, "inputs": _plain(case.inputs)})
    report.elapsed = time.perf_counter() - start
    return report


def _indices(gen: CaseGenerator, cases: Sequence[int] | None) -> Iterable[int]:
    return range(gen.case_count) if cases is None else cases


# -- random generators -------------------------------------------------------

def random_set(rng: random.Random, max_size: int, nonempty: bool = False) -> FinSet:
    lo = 1 if nonempty else 0
    return FinSet(rng.randint(lo, max(lo, max_size)))


def random_function(rng: random.Random, A: FinSet, B: FinSet) -> FinFunction:
    if A.size and not B.size:
        raise ValueError(f"no function from {A} to the empty set")
    return FinFunction(A, B, tuple(rng.randrange(B.size) for _ in range(A.size)))


def random_cospan(rng: random.Random, max_size: int, left: FinSet | None = None,
                  right: FinSet | None = None) -> Cospan:
    X = random_set(rng, max_size) if left is None else left
    Y = random_set(rng, max_size) if right is None else right
    N = random_set(rng, max_size, nonempty=bool(X.size or Y.size))
    return Cospan(X, Y, N, random_function(rng, X, N), random_function(rng, Y, N))


def random_chain(rng: random.Random, max_size: int, length: int,
                 start: FinSet | None = None) -> list[Cospan]:
    feet = [random_set(rng, max_size) if start is None else start]
    feet += [random_set(rng, max_size) for _ in range(length)]
    return [random_cospan(rng, max_size, feet[k], feet[k + 1]) for k in range(length)]


def _random_foot_map(rng: random.Random, target: FinSet, max_size: int) -> FinFunction:
    return random_function(rng, random_set(rng, max_size if target.size else 0), target)


def random_cell_into(rng: random.Random, target: Cospan, max_size: int,
                     left: FinFunction | None = None, right: FinFunction | None = None) -> CospanMap:
    """A random valid 2-morphism ending at ``target``.

    Foot maps may be prescribed, which is how horizontally adjacent cells
    are made to share their middle foot map.
    """
    a = _random_foot_map(rng, target.left_foot, max_size) if left is None else left
    c = _random_foot_map(rng, target.right_foot, max_size) if right is None else right
    hit_in = compose(a, target.in_leg).table
    hit_out = compose(c, target.out_leg).table
    h = sorted(set(hit_in) | set(hit_out))
    if target.apex.size:
        h += [rng.randrange(target.apex.size) for _ in range(rng.randint(0, 2))]
    rng.shuffle(h)
    fibres: dict[int, list[int]] = {}
    for x, y in enumerate(h):
        fibres.setdefault(y, []).append(x)
    N = FinSet(len(h))
    source = Cospan(a.dom, c.dom, N,
                    FinFunction(a.dom, N, tuple(rng.choice(fibres[y]) for y in hit_in)),
                    FinFunction(c.dom, N, tuple(rng.choice(fibres[y]) for y in hit_out)))
    return CospanMap(source, target, a, FinFunction(N, target.apex, tuple(h)), c)


def random_cell_row(rng: random.Random, targets: Sequence[Cospan], max_size: int) -> list[CospanMap]:
    """Horizontally composable cells into a composable chain of targets."""
    row: list[CospanMap] = []
    left = None
    for t in targets:
        cell = random_cell_into(rng, t, max_size, left=left)
        row.append(cell)
        left = cell.right
    return row


def random_decorated(rng: random.Random, backend: DecorationBackend, cospan: Cospan,
                     bounds: dict[str, int]) -> DecoratedCospan:
    return DecoratedCospan(cospan, backend.sample(rng, cospan.apex.size, **bounds), backend)


# -- pushout oracle --------------------------------------------------------------

def oracle_quotient(f: FinFunction, g: FinFunction) -> tuple[int, tuple[int, ...]]:
    """Equivalence closure of ``f(y) ~ g(y)`` on ``N + N'`` by boolean Warshall.

    Returns the class count and the quotient table, classes numbered by
    least member.  Deliberately shares no code with the union-find pushout.
    """
    n = f.cod.size
    total = n + g.cod.size
    rel = [[i == j for j in range(total)] for i in range(total)]
    for a, b in zip(f.table, g.table):
        rel[a][n + b] = rel[n + b][a] = True
    for k in range(total):
        for i in range(total):
            if rel[i][k]:
                row_k = rel[k]
                row_i = rel[i]
                for j in range(total):
                    if row_k[j]:
                        row_i[j] = True
    labels: dict[int, int] = {}
    table = []
    for x in range(total):
        rep = min(j for j in range(total) if rel[x][j])
        if rep not in labels:
            labels[rep] = len(labels)
        table.append(labels[rep])
    return len(labels), tuple(table)


def _check_pushout(case: _Case, f: FinFunction, g: FinFunction) -> None:
    case.record(f=f, g=g)
    p = pushout(f, g)
    size, table = oracle_quotient(f, g)
    case.equal("apex size", p.apex.size, size)
    case.equal("quotient table", p.from_coproduct.table, table)
    case.equal("cocone", compose(f, p.left_leg), compose(g, p.right_leg))
    n = f.cod.size
    case.equal("left block", p.left_leg.table, p.from_coproduct.table[:n])
    case.equal("right block", p.right_leg.table, p.from_coproduct.table[n:])
    case.expect("surjective", is_surjection(p.from_coproduct), "quotient map misses apex elements")


def pushout_oracle(max_size: int = 3, spot_checks: int = 0, spot_max: int = 5,
                   seed: int = 0) -> LawReport:
    """Compare ``pushout`` with the brute-force closure on every leg pair up to ``max_size``,
    then on ``spot_checks`` random pairs with sizes up to ``spot_max``."""
    def exhaustive() -> Iterable[tuple[FinFunction, FinFunction]]:
        sizes = range(max_size + 1)
        for y in sizes:
            for n in sizes:
                for n2 in sizes:
                    if y and not (n and n2):
                        continue
                    Y, N, N2 = FinSet(y), FinSet(n), FinSet(n2)
                    for f in all_functions(Y, N):
                        for g in all_functions(Y, N2):
                            yield f, g

    def spot(k: int) -> tuple[FinFunction, FinFunction]:
        rng = random.Random(f"{seed}-pushout_spot-{k}")
        N, N2 = random_set(rng, spot_max, True), random_set(rng, spot_max, True)
        Y = random_set(rng, spot_max)
        return random_function(rng, Y, N), random_function(rng, Y, N2)

    pairs = list(exhaustive()) + [spot(k) for k in range(spot_checks)]
    return _run("pushout_oracle", range(len(pairs)), seed,
                lambda case, i: _check_pushout(case, *pairs[i]))


# -- pseudo double category ------------------------------------------------------

def _pdc_case(case: _Case, rng: random.Random, size: int) -> None:
    a, h, hm = cs.associator, cs.hcompose, cs.hcompose_map
    v, idm = cs.vcompose, cs.identity_map
    m1, m2, m3, m4 = chain = random_chain(rng, size, 4)
    case.record(chain=chain)

    for name, make in [("associator", lambda: a(m1, m2, m3)), ("left unitor", lambda: cs.left_unitor(m1)),
                       ("right unitor", lambda: cs.right_unitor(m1))]:
        with case.guard(name):
            iso = make()
            case.expect(f"{name} bijective", is_bijection(iso.apex_bijection))
            case.expect(f"{name} globular", iso.as_map().is_globular)
            case.valid_cell(f"{name} commutes", iso.as_map())
            case.equal(f"{name} inverse", iso.then(iso.inverse()).apex_bijection, identity(iso.source.apex))

    with case.guard("pentagon"):
        path_a = v(a(h(m1, m2), m3, m4).as_map(), a(m1, m2, h(m3, m4)).as_map())
        path_b = v(v(hm(a(m1, m2, m3).as_map(), idm(m4)), a(m1, h(m2, m3), m4).as_map()),
                   hm(idm(m1), a(m2, m3, m4).as_map()))
        case.equal("pentagon", path_a, path_b)

    with case.guard("triangle"):
        U = cs.identity_cospan(m1.right_foot)
        tri_l = v(a(m1, U, m2).as_map(), hm(idm(m1), cs.left_unitor(m2).as_map()))
        tri_r = hm(cs.right_unitor(m1).as_map(), idm(m2))
        case.equal("triangle", tri_l, tri_r)

    with case.guard("unitors agree on units"):
        UA = cs.identity_cospan(m1.left_foot)
        case.equal("unitors agree on units", cs.left_unitor(UA).apex_bijection,
                   cs.right_unitor(UA).apex_bijection)
    with case.guard("identity cells compose"):
        case.equal("identity cells compose", hm(idm(m1), idm(m2)), idm(h(m1, m2)))

    # vertical category: three stacked cells
    c3 = random_cell_into(rng, random_cospan(rng, size), size)
    c2 = random_cell_into(rng, c3.source, size)
    c1 = random_cell_into(rng, c2.source, size)
    case.record(vertical=[c1, c2, c3])
    for k, c in enumerate((c1, c2, c3)):
        case.valid_cell(f"random cell {k} valid", c)
    case.equal("vertical associativity", v(v(c1, c2), c3), v(c1, v(c2, c3)))
    case.equal("vertical left unit", v(idm(c1.source), c1), c1)
    case.equal("vertical right unit", v(c1, idm(c1.target)), c1)
    f = c1.left
    g = c2.left
    case.equal("units are functorial", v(cs.unit_map(f), cs.unit_map(g)), cs.unit_map(compose(f, g)))

    # interchange on a 2x2 grid
    bottom = random_cell_row(rng, random_chain(rng, size, 2), size)
    top = random_cell_row(rng, [c.source for c in bottom], size)
    case.record(grid_top=top, grid_bottom=bottom)
    with case.guard("interchange"):
        whole = hm(top[0], top[1])
        case.valid_cell("horizontal composite valid", whole)
        case.equal("interchange", v(whole, hm(bottom[0], bottom[1])),
                   hm(v(top[0], bottom[0]), v(top[1], bottom[1])))

    # naturality of the coherence isomorphisms
    row = random_cell_row(rng, random_chain(rng, size, 3), size)
    case.record(row=row)
    s = [c.source for c in row]
    t = [c.target for c in row]
    with case.guard("associator natural"):
        case.equal("associator natural",
                   v(hm(hm(row[0], row[1]), row[2]), a(*t).as_map()),
                   v(a(*s).as_map(), hm(row[0], hm(row[1], row[2]))))
    c = row[0]
    with case.guard("left unitor natural"):
        case.equal("left unitor natural",
                   v(hm(cs.unit_map(c.left), c), cs.left_unitor(c.target).as_map()),
                   v(cs.left_unitor(c.source).as_map(), c))
    with case.guard("right unitor natural"):
        case.equal("right unitor natural",
                   v(hm(c, cs.unit_map(c.right)), cs.right_unitor(c.target).as_map()),
                   v(cs.right_unitor(c.source).as_map(), c))


def check_pseudo_double_category(gen: CaseGenerator, cases: Sequence[int] | None = None) -> LawReport:
    law = "pseudo_double_category"
    return _run(law, _indices(gen, cases), gen.seed,
                lambda case, i: _pdc_case(case, gen.rng(law, i), gen.max_set_size))


# -- monoidal structure ------------------------------------------------------------

def _monoidal_case(case: _Case, rng: random.Random, size: int) -> None:
    a, h, hm, t = cs.associator, cs.hcompose, cs.hcompose_map, cs.tensor
    v, idm, x, tm = cs.vcompose, cs.identity_map, cs.interchanger, cs.tensor_map
    M = random_chain(rng, size, 3)
    N = random_chain(rng, size, 3)
    P = random_chain(rng, size, 2)
    case.record(M=M, N=N, P=P)

    with case.guard("interchanger"):
        xi = x(M[0], N[0], M[1], N[1])
        case.expect("interchanger bijective", is_bijection(xi.apex_bijection))
        case.expect("interchanger globular", xi.as_map().is_globular)

    # hexagon relating the interchanger to the associator
    MN = [t(m, n) for m, n in zip(M, N)]
    case.agree(
        "interchanger vs associator",
        lambda: v(v(a(*MN).as_map(), hm(idm(MN[0]), x(M[1], N[1], M[2], N[2]).as_map())),
                  x(M[0], N[0], h(M[1], M[2]), h(N[1], N[2])).as_map()),
        lambda: v(v(hm(x(M[0], N[0], M[1], N[1]).as_map(), idm(MN[2])),
                    x(h(M[0], M[1]), h(N[0], N[1]), M[2], N[2]).as_map()),
                  tm(a(*M).as_map(), a(*N).as_map())))

    # unit interchanger is strict, so the unitor diagrams are plain equalities
    m, n = M[0], N[0]
    case.agree("unit interchanger is identity",
               lambda: cs.unit_interchanger(m.left_foot, n.left_foot).apex_bijection,
               lambda: identity(m.left_foot + n.left_foot))
    UC, UD = cs.identity_cospan(m.right_foot), cs.identity_cospan(n.right_foot)
    case.agree("interchanger vs right unitor",
               lambda: v(x(m, n, UC, UD).as_map(),
                         tm(cs.right_unitor(m).as_map(), cs.right_unitor(n).as_map())),
               lambda: cs.right_unitor(t(m, n)).as_map())
    UA, UB = cs.identity_cospan(m.left_foot), cs.identity_cospan(n.left_foot)
    case.agree("interchanger vs left unitor",
               lambda: v(x(UA, UB, m, n).as_map(),
                         tm(cs.left_unitor(m).as_map(), cs.left_unitor(n).as_map())),
               lambda: cs.left_unitor(t(m, n)).as_map())

    # tensor associativity is strict: the two ways of interchanging three blocks agree
    case.agree("interchanger vs tensor associativity",
               lambda: v(x(t(M[0], N[0]), P[0], t(M[1], N[1]), P[1]).as_map(),
                         tm(x(M[0], N[0], M[1], N[1]).as_map(), idm(h(P[0], P[1])))),
               lambda: v(x(M[0], t(N[0], P[0]), M[1], t(N[1], P[1])).as_map(),
                         tm(idm(h(M[0], M[1])), x(N[0], P[0], N[1], P[1]).as_map())))

    U0 = cs.empty_cospan()
    case.agree("interchanger right tensor unit",
               lambda: v(x(M[0], U0, M[1], U0).as_map(),
                         tm(idm(h(M[0], M[1])), cs.left_unitor(U0).as_map())),
               lambda: idm(h(M[0], M[1])))
    case.agree("interchanger left tensor unit",
               lambda: v(x(U0, M[0], U0, M[1]).as_map(),
                         tm(cs.left_unitor(U0).as_map(), idm(h(M[0], M[1])))),
               lambda: idm(h(M[0], M[1])))

    # tensor is a functor on cells, and the interchanger is natural
    cm = random_cell_row(rng, M[:2], size)
    cn = random_cell_row(rng, N[:2], size)
    top = random_cell_into(rng, cm[0].source, size)
    bot = random_cell_into(rng, cn[0].source, size)
    case.record(cells_m=cm, cells_n=cn, cells_above=[top, bot])
    case.agree("tensor of cells is functorial",
               lambda: tm(v(top, cm[0]), v(bot, cn[0])),
               lambda: v(tm(top, bot), tm(cm[0], cn[0])))
    sm, sn = [c.source for c in cm], [c.source for c in cn]
    case.agree("interchanger natural",
               lambda: v(hm(tm(cm[0], cn[0]), tm(cm[1], cn[1])), x(M[0], N[0], M[1], N[1]).as_map()),
               lambda: v(x(sm[0], sn[0], sm[1], sn[1]).as_map(), tm(hm(cm[0], cm[1]), hm(cn[0], cn[1]))))


def check_monoidal_structure(gen: CaseGenerator, cases: Sequence[int] | None = None) -> LawReport:
    law = "monoidal_structure"
    return _run(law, _indices(gen, cases), gen.seed,
                lambda case, i: _monoidal_case(case, gen.rng(law, i), gen.max_set_size))


# -- symmetry ----------------------------------------------------------------------

def _symmetry_case(case: _Case, rng: random.Random, size: int) -> None:
    h, hm, t, v = cs.hcompose, cs.hcompose_map, cs.tensor, cs.vcompose
    x, tm, s, idm = cs.interchanger, cs.tensor_map, cs.braiding_cell, cs.identity_map
    M = random_chain(rng, size, 2)
    N = random_chain(rng, size, 2)
    P = random_cospan(rng, size)
    case.record(M=M, N=N, P=P)

    case.agree("braiding vs interchanger",
               lambda: v(x(M[0], N[0], M[1], N[1]).as_map(), s(h(M[0], M[1]), h(N[0], N[1]))),
               lambda: v(hm(s(M[0], N[0]), s(M[1], N[1])), x(N[0], M[0], N[1], M[1]).as_map()))

    A, B = M[0].left_foot, N[0].left_foot
    case.agree("braiding on units", lambda: s(cs.identity_cospan(A), cs.identity_cospan(B)),
               lambda: cs.unit_map(cs.braiding_object(A, B)))

    m, n = M[0], N[0]
    case.agree("braiding is symmetric", lambda: v(s(m, n), s(n, m)), lambda: idm(t(m, n)))
    case.agree("braiding hexagon on cells", lambda: s(m, t(n, P)),
               lambda: v(tm(s(m, n), idm(P)), tm(idm(n), s(m, P))))

    cm = random_cell_into(rng, m, size)
    cn = random_cell_into(rng, n, size)
    case.record(cell_m=cm, cell_n=cn)
    case.agree("braiding natural", lambda: v(tm(cm, cn), s(m, n)),
               lambda: v(s(cm.source, cn.source), tm(cn, cm)))

    C = P.left_foot
    bo = cs.braiding_object
    case.agree("braiding hexagon on objects", lambda: bo(A, B + C),
               lambda: compose(fsum(bo(A, B), identity(C)), fsum(identity(B), bo(A, C))))
    case.agree("object braiding involutive", lambda: compose(bo(A, B), bo(B, A)), lambda: identity(A + B))


def check_symmetry(gen: CaseGenerator, cases: Sequence[int] | None = None) -> LawReport:
    law = "symmetry"
    return _run(law, _indices(gen, cases), gen.seed,
                lambda case, i: _symmetry_case(case, gen.rng(law, i), gen.max_set_size))


# -- fibrancy --------------------------------------------------------------------------

def _fibrancy_case(case: _Case, f: FinFunction, backends: Sequence[DecorationBackend],
                   companion_unit: Callable[[FinFunction], CospanMap]) -> None:
    case.record(f=f)
    A, B = f.dom, f.cod
    hm, v = cs.hcompose_map, cs.vcompose
    eta, eps = companion_unit(f), cs.companion_counit(f)
    ceta, ceps = cs.conjoint_unit(f), cs.conjoint_counit(f)
    fhat, fchk = cs.companion(f), cs.conjoint(f)
    for name, cell in [("companion unit", eta), ("companion counit", eps),
                       ("conjoint unit", ceta), ("conjoint counit", ceps)]:
        case.valid_cell(f"{name} valid", cell)

    case.agree("companion vertical equation", lambda: v(eta, eps), lambda: cs.unit_map(f))
    case.agree("companion horizontal equation",
               lambda: v(hm(eta, eps), cs.right_unitor(fhat).as_map()),
               lambda: cs.left_unitor(fhat).as_map())
    case.agree("conjoint vertical equation", lambda: v(ceta, ceps), lambda: cs.unit_map(f))
    case.agree("conjoint horizontal equation",
               lambda: v(hm(ceps, ceta), cs.left_unitor(fchk).as_map()),
               lambda: cs.right_unitor(fchk).as_map())

    for backend in backends:
        tag = backend.name
        UA, UB = didentity(backend, A), didentity(backend, B)
        dhat, dchk = dcompanion(backend, f), dconjoint(backend, f)
        cells = [
            ("companion unit", lambda: eta, lambda: UA, lambda: dhat),
            ("companion counit", lambda: eps, lambda: dhat, lambda: UB),
            ("conjoint unit", lambda: ceta, lambda: UA, lambda: dchk),
            ("conjoint counit", lambda: ceps, lambda: dchk, lambda: UB),
            ("companion composite", lambda: hm(eta, eps),
             lambda: dcompose(UA, dhat), lambda: dcompose(dhat, UB)),
            ("conjoint composite", lambda: hm(ceps, ceta),
             lambda: dcompose(dchk, UA), lambda: dcompose(UB, dchk)),
            ("companion left unitor", lambda: cs.left_unitor(fhat).as_map(),
             lambda: dcompose(UA, dhat), lambda: dhat),
            ("companion right unitor", lambda: cs.right_unitor(fhat).as_map(),
             lambda: dcompose(dhat, UB), lambda: dhat),
            ("conjoint left unitor", lambda: cs.left_unitor(fchk).as_map(),
             lambda: dcompose(UB, dchk), lambda: dchk),
            ("conjoint right unitor", lambda: cs.right_unitor(fchk).as_map(),
             lambda: dcompose(dchk, UA), lambda: dchk),
        ]
        for name, cell, src, tgt in cells:
            with case.guard(f"{tag} {name}"):
                for p in diagnose_decorated_cell(cell(), src(), tgt()):
                    case.problems.append((f"{tag} {name}", p))


def check_fibrancy(max_size: int = 3, backends: Sequence[DecorationBackend] | None = None,
                   companion_unit: Callable[[FinFunction], CospanMap] = cs.companion_unit,
                   cases: Sequence[int] | None = None) -> LawReport:
    """Companion and conjoint equations for every ``f: A -> B`` with sizes up to ``max_size``.

    ``companion_unit`` can be swapped for a deliberately broken cell to
    confirm that the check notices.
    """
    if backends is None:
        from .circuits import CIRCUIT
        backends = (CIRCUIT, VECTFIELD)
    fs = [f for a in range(max_size + 1) for b in range(max_size + 1)
          for f in all_functions(FinSet(a), FinSet(b))]
    idx = range(len(fs)) if cases is None else cases
    return _run("fibrancy", idx, 0,
                lambda case, i: _fibrancy_case(case, fs[i], backends, companion_unit))


# -- decoration functor -------------------------------------------------------------------

def _decoration_case(case: _Case, rng: random.Random, backend: DecorationBackend,
                     size: int, bounds: dict[str, int]) -> None:
    T, C, eq = backend.transport, backend.combine, backend.equals
    sample = lambda n: backend.sample(rng, n.size, **bounds)  # noqa: E731

    A = random_set(rng, size)
    B = random_set(rng, size, nonempty=bool(A.size))
    Cs = random_set(rng, size, nonempty=bool(B.size))
    f, g = random_function(rng, A, B), random_function(rng, B, Cs)
    dA = sample(A)
    case.record(f=f, g=g)
    case.expect("transport identity", eq(T(identity(A), dA), dA))
    case.expect("transport composition", eq(T(compose(f, g), dA), T(g, T(f, dA))))

    A2 = random_set(rng, size)
    B2 = random_set(rng, size, nonempty=bool(A2.size))
    f2 = random_function(rng, A2, B2)
    dA2, dB, dC = sample(A2), sample(B), sample(Cs)
    case.record(f2=f2)
    case.expect("combine natural", eq(T(fsum(f, f2), C(dA, dA2)), C(T(f, dA), T(f2, dA2))))
    case.expect("combine associative", eq(C(C(dA, dB), dC), C(dA, C(dB, dC))))
    unit = backend.unit()
    case.expect("combine unital", eq(C(dA, unit), dA) and eq(C(unit, dA), dA))
    case.expect("combine symmetric", eq(T(cs.braiding_object(A, B), C(dA, dB)), C(dB, dA)))
    case.expect("trivial decoration transports", eq(T(f, trivial_decoration(backend, A)),
                                                    trivial_decoration(backend, B)))

    # decorated cospan layer
    deco = lambda c: random_decorated(rng, backend, c, bounds)  # noqa: E731
    m1, m2, m3 = [deco(c) for c in random_chain(rng, size, 3)]
    case.record(chain=[m1, m2, m3])
    case.agree("composition forgets to cospans", lambda: dcompose(m1, m2).cospan,
               lambda: cs.hcompose(m1.cospan, m2.cospan))
    case.agree("tensor forgets to cospans", lambda: dtensor(m1, m2).cospan,
               lambda: cs.tensor(m1.cospan, m2.cospan))

    def preserves(check: str, cell: Callable[[], CospanMap], src: Callable[[], DecoratedCospan],
                  tgt: Callable[[], DecoratedCospan]) -> None:
        with case.guard(check):
            for p in diagnose_decorated_cell(cell(), src(), tgt()):
                case.problems.append((check, p))

    preserves("associator transports decorations",
              lambda: cs.associator(m1.cospan, m2.cospan, m3.cospan).as_map(),
              lambda: dcompose(dcompose(m1, m2), m3), lambda: dcompose(m1, dcompose(m2, m3)))
    preserves("left unitor transports decorations", lambda: cs.left_unitor(m1.cospan).as_map(),
              lambda: dcompose(didentity(backend, m1.left_foot), m1), lambda: m1)
    preserves("right unitor transports decorations", lambda: cs.right_unitor(m1.cospan).as_map(),
              lambda: dcompose(m1, didentity(backend, m1.right_foot)), lambda: m1)

    n1, n2 = [deco(c) for c in random_chain(rng, size, 2)]
    case.record(second_chain=[n1, n2])
    with case.guard("decorated interchanger"):
        dinterchanger(m1, n1, m2, n2)
    preserves("interchanger transports decorations",
              lambda: cs.interchanger(m1.cospan, n1.cospan, m2.cospan, n2.cospan).as_map(),
              lambda: dcompose(dtensor(m1, n1), dtensor(m2, n2)),
              lambda: dtensor(dcompose(m1, m2), dcompose(n1, n2)))
    preserves("braiding transports decorations", lambda: cs.braiding_cell(m1.cospan, n1.cospan),
              lambda: dtensor(m1, n1), lambda: dtensor(n1, m1))

    # decorated 2-morphisms compose horizontally
    row = random_cell_row(rng, random_chain(rng, size, 2), size)
    srcs = [DecoratedCospan(c.source, sample(c.source.apex), backend) for c in row]
    tgts = [DecoratedCospan(c.target, T(c.apex, d.decoration), backend) for c, d in zip(row, srcs)]
    case.record(cells=row, cell_sources=srcs)
    for k in range(2):
        preserves(f"decorated cell {k}", lambda: row[k], lambda: srcs[k], lambda: tgts[k])
    preserves("decorated cells compose", lambda: cs.hcompose_map(row[0], row[1]),
              lambda: dcompose(srcs[0], srcs[1]), lambda: dcompose(tgts[0], tgts[1]))


def check_decoration_functor(backend: DecorationBackend, gen: CaseGenerator,
                             cases: Sequence[int] | None = None) -> LawReport:
    law = f"decoration_functor[{backend.name}]"
    return _run(law, _indices(gen, cases), gen.seed,
                lambda case, i: _decoration_case(case, gen.rng(law, i), backend,
                                                 gen.max_set_size, gen.bounds()))


# -- vector-field functoriality --------------------------------------------------------

def _random_point(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n))


def _vectfield_case(case: _Case, rng: random.Random, size: int, degree: int, points: int) -> None:
    S = random_set(rng, size)
    S1 = random_set(rng, size, nonempty=bool(S.size))
    S2 = random_set(rng, size, nonempty=bool(S1.size))
    f, g = random_function(rng, S, S1), random_function(rng, S1, S2)
    v = VECTFIELD.sample(rng, S.size, max_degree=degree)
    case.record(f=f, g=g, v=v)
    fv = vf_transport(f, v)
    case.equal("composite transport", vf_transport(compose(f, g), v), vf_transport(g, fv))
    case.equal("identity transport", vf_transport(identity(S), v), v)
    case.expect("degree bound", fv.degree() <= v.degree())
    for _ in range(points):
        c = _random_point(rng, S1.size)
        case.equal("pointwise transport", evaluate(fv, c),
                   pushforward_point(f, evaluate(v, pullback_point(f, c))))
        c2 = _random_point(rng, S2.size)
        gf = compose(f, g)
        case.equal("pointwise composite", evaluate(vf_transport(gf, v), c2),
                   pushforward_point(gf, evaluate(v, pullback_point(gf, c2))))


def check_vectfield_functoriality(gen: CaseGenerator, points: int = 10,
                                  cases: Sequence[int] | None = None) -> LawReport:
    law = "vectfield_functoriality"
    return _run(law, _indices(gen, cases), gen.seed,
                lambda case, i: _vectfield_case(case, gen.rng(law, i), gen.max_set_size,
                                                gen.max_degree, points))


def run_all(gen: CaseGenerator, backends: Sequence[DecorationBackend] | None = None) -> list[LawReport]:
    """The full suite at the generator's sizes."""
    if backends is None:
        from .circuits import CIRCUIT
        backends = (CIRCUIT, VECTFIELD)
    reports = [
        pushout_oracle(3, spot_checks=200, seed=gen.seed),
        check_pseudo_double_category(gen),
        check_monoidal_structure(gen),
        check_symmetry(gen),
        check_fibrancy(3, backends),
    ]
    reports += [check_decoration_functor(b, gen) for b in backends]
    if any(b.name == VECTFIELD.name for b in backends):
        small = CaseGenerator(gen.seed, min(gen.max_set_size, 3), gen.max_edges,
                              gen.max_degree, gen.case_count)
        reports.append(check_vectfield_functoriality(small))
    return reports


def reports_json(reports: Sequence[LawReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)
