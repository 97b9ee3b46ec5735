"""Initial value problem for y(3x) = y(x) + y(2x).

Data on [eps, 3*eps) (and/or (-3*delta, -delta]) determines y everywhere on
that half-line. Above the data the forward rule y(x) = y(x/3) + y(2x/3) is
used, below it the backward rule y(x) = y(3x) - y(2x); both recursions move
strictly toward the initial interval, so they terminate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from . import expr as _expr
from .core import Interval, IntervalUnion
from .errors import ArgumentError, OutOfDomainError, PenlpViolationError, RecursionDepthError, ShapeError
from .initial import InitialData

MAX_DEPTH = 10_000
MAX_BINOMIAL_N = 60
SHAPE_RTOL = 1e-9

Func = Union[_expr.Expr, str, Callable[[float], float]]


@dataclass(frozen=True)
class ThreeTermProblem:
    initial: InitialData
    eps: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.eps is None and self.delta is None:
            raise ArgumentError("at least one side of data is required")
        for v in (self.eps, self.delta):
            if v is not None and not v > 0:
                raise ArgumentError("eps and delta must be positive")

    def max_domain(self) -> IntervalUnion:
        parts = [Interval.point(0.0)]
        if self.eps is not None:
            parts.append(Interval(0.0, math.inf, True, False))
        if self.delta is not None:
            parts.append(Interval(-math.inf, 0.0, False, True))
        return IntervalUnion.union_of(parts)


def make_three_term_problem(initial: InitialData) -> ThreeTermProblem:
    """Recover eps/delta from data on [eps, 3eps) and/or (-3delta, -delta]."""
    eps = delta = None
    for part in initial.set:
        if part.closure_contains(0.0):
            raise PenlpViolationError(0.0)
        lo, hi = abs(part.lo), abs(part.hi)
        inner, outer = min(lo, hi), max(lo, hi)
        if not math.isclose(outer, 3 * inner, rel_tol=SHAPE_RTOL):
            raise ShapeError(
                f"initial part {part} is not of the form [eps, 3*eps) or (-3*delta, -delta]"
            )
        if part.lo > 0:
            if eps is not None:
                raise ShapeError("more than one positive initial interval")
            eps = inner
        else:
            if delta is not None:
                raise ShapeError("more than one negative initial interval")
            delta = inner
    return ThreeTermProblem(initial, eps, delta)


@lru_cache(maxsize=4096)
def _pow3(k: int) -> float:
    return float(Fraction(3) ** k)


def _point(x: float, a: int, b: int) -> float:
    """x * 2**a * 3**b, canonical per exponent pair so memo keys are exact."""
    p3 = _pow3(b)
    if p3 == 0.0 or math.isinf(p3):
        return float(Fraction(x) * Fraction(2) ** a * Fraction(3) ** b)
    return math.ldexp(x * p3, a)


@dataclass
class EvalStats:
    depth: int = 0
    nodes: int = 0
    leaves: list = field(default_factory=list)


def _side(p: ThreeTermProblem, x: float) -> tuple[float, float]:
    if x > 0:
        if p.eps is None:
            raise OutOfDomainError(f"no positive-side data for x={x!r}", x)
        return p.eps, 3 * p.eps
    if p.delta is None:
        raise OutOfDomainError(f"no negative-side data for x={x!r}", x)
    return p.delta, 3 * p.delta


def _kind(p: ThreeTermProblem, pt: float, inner: float, outer: float) -> str:
    if p.initial.contains(pt):
        return "leaf"
    if abs(pt) >= outer:
        return "forward"
    if abs(pt) <= inner:
        return "backward"
    raise OutOfDomainError(f"{pt!r} lies in a gap of the initial data", pt)


def _children(kind: str, a: int, b: int):
    if kind == "forward":
        return (a, b - 1), (a + 1, b - 1)  # x/3, 2x/3
    return (a, b + 1), (a + 1, b)  # 3x, 2x


def evaluate(p: ThreeTermProblem, x: float, *, memo: bool = True, stats: EvalStats | None = None) -> float:
    """Value of the unique extension at ``x``; y(0) = 0."""
    if x == 0:
        return 0.0
    if math.isnan(x) or math.isinf(x):
        raise OutOfDomainError(f"{x!r} is not a finite real", x)
    inner, outer = _side(p, x)
    if not memo:
        return _evaluate_plain(p, x, inner, outer, 0, 0, 0, stats)

    values: dict[tuple[int, int], float] = {}
    heights: dict[tuple, int] = {}
    stack: list[tuple[tuple[int, int], int]] = [((0, 0), 0)]
    while stack:
        key, depth = stack[-1]
        if key in values:
            stack.pop()
            continue
        pt = _point(x, *key)
        kind = _kind(p, pt, inner, outer)
        if kind == "leaf":
            values[key] = p.initial.value(pt)
            heights[key] = 0
            if stats is not None:
                stats.leaves.append(pt)
            stack.pop()
            continue
        c1, c2 = _children(kind, *key)
        missing = [c for c in (c1, c2) if c not in values]
        if missing:
            if depth + 1 > MAX_DEPTH:
                raise RecursionDepthError(f"recursion deeper than {MAX_DEPTH} at x={x!r}")
            stack.extend((c, depth + 1) for c in reversed(missing))
            continue
        if kind == "forward":
            values[key] = values[c1] + values[c2]
        else:
            values[key] = values[c1] - values[c2]
        heights[key] = 1 + max(heights[c1], heights[c2])
        stack.pop()
    if stats is not None:
        stats.depth = heights[(0, 0)]
        stats.nodes = len(values)
    return values[(0, 0)]


def _evaluate_plain(p, x, inner, outer, a, b, depth, stats):
    if depth > MAX_DEPTH:
        raise RecursionDepthError(f"recursion deeper than {MAX_DEPTH} at x={x!r}")
    pt = _point(x, a, b)
    kind = _kind(p, pt, inner, outer)
    if kind == "leaf":
        if stats is not None:
            stats.depth = max(stats.depth, depth)
        return p.initial.value(pt)
    (a1, b1), (a2, b2) = _children(kind, a, b)
    v1 = _evaluate_plain(p, x, inner, outer, a1, b1, depth + 1, stats)
    v2 = _evaluate_plain(p, x, inner, outer, a2, b2, depth + 1, stats)
    return v1 + v2 if kind == "forward" else v1 - v2


def recursion_depth(p: ThreeTermProblem, x: float) -> int:
    st = EvalStats()
    evaluate(p, x, stats=st)
    return st.depth


def ladder_interval(eps: float, n: int) -> Interval:
    """Forward ladder block: [3^n/2^(n-1) eps, 3^(n+1)/2^n eps) for n >= 1,
    backward block [2^n eps, 2^(n+1) eps) for n <= -1."""
    if n >= 1:
        return Interval(float(Fraction(3 ** n, 2 ** (n - 1)) * Fraction(eps)),
                        float(Fraction(3 ** (n + 1), 2 ** n) * Fraction(eps)))
    if n <= -1:
        return Interval(math.ldexp(eps, n), math.ldexp(eps, n + 1))
    return Interval(eps, 3 * eps)


# -- binomial expansion diagnostic ------------------------------------------

def _as_callable(f: Func) -> Callable[[float], float]:
    if callable(f) and not isinstance(f, (_expr.Num, _expr.Var, _expr.Const, _expr.Neg, _expr.BinOp, _expr.Call)):
        return f
    e = _expr.parse(f) if isinstance(f, str) else f
    return lambda t: _expr.evaluate(e, t)


def binomial_coefficients(n: int) -> list[int]:
    if n < 0:
        raise ArgumentError("n must be non-negative")
    if n > MAX_BINOMIAL_N:
        raise ArgumentError(f"binomial expansion limited to n <= {MAX_BINOMIAL_N}")
    coeffs = [1]
    for r in range(n):
        coeffs.append(coeffs[-1] * (n - r) // (r + 1))
    return coeffs


def binomial_nodes(x: float, n: int) -> list[float]:
    return [x * (2 ** r / 3 ** n) for r in range(n + 1)]


def binomial_expand(f: Func, x: float, n: int) -> float:
    """sum_r C(n, r) f(2^r x / 3^n): the n-fold forward rule applied to f."""
    fn = _as_callable(f)
    coeffs = binomial_coefficients(n)
    return math.fsum(c * fn(t) for c, t in zip(coeffs, binomial_nodes(x, n)))


@dataclass(frozen=True)
class Consistent:
    value: float


@dataclass(frozen=True)
class Inconsistent:
    v1: float
    v2: float


def consistency_probe(f: Func, x: float, n1: int, n2: int, tol: float = 1e-9) -> "Consistent | Inconsistent":
    if n1 == n2:
        raise ArgumentError("probe depths must differ")
    v1 = binomial_expand(f, x, n1)
    v2 = binomial_expand(f, x, n2)
    if abs(v1 - v2) > tol * (1 + abs(v1)):
        return Inconsistent(v1, v2)
    return Consistent(v1)
