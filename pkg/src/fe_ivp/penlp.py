"""Limit points, neighbourhood exclusion and well-posedness classification.

An initial set is admissible only if its closure keeps a positive distance
from every limit point of the equation: data near a limit point is hit by
infinitely many iteration chains and is generally inconsistent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from . import expr as _expr
from .core import GeometricUnion, Interval, IntervalUnion, fmt_real
from .errors import ArgumentError, PenlpViolationError, ZeroBError

RATIO_RTOL = 1e-12


# -- equation families ------------------------------------------------------

@dataclass(frozen=True)
class ShiftScale:
    """y(x + 1) = y(b x)"""

    b: float

    def __post_init__(self):
        if self.b == 0:
            raise ZeroBError("b must be nonzero")


@dataclass(frozen=True)
class PureScale:
    """y(x) = y(b x)"""

    b: float

    def __post_init__(self):
        if self.b == 0:
            raise ZeroBError("b must be nonzero")
        if abs(self.b) == 1:
            raise ArgumentError("|b| = 1 is not a scaling equation")

    @property
    def ratio(self) -> float:
        """The equivalent b with |b| > 1."""
        return self.b if abs(self.b) > 1 else 1 / self.b


@dataclass(frozen=True)
class EvenParity:
    """y(x) = y(-x)"""


@dataclass(frozen=True)
class OddParity:
    """y(-x) = -y(x)"""


@dataclass(frozen=True)
class ThreeTerm:
    """y(3x) = y(x) + y(2x)"""


EquationSpec = Union[ShiftScale, PureScale, EvenParity, OddParity, ThreeTerm]


def family_name(eq: EquationSpec) -> str:
    return {
        ShiftScale: "shift-scale",
        PureScale: "scale",
        EvenParity: "even",
        OddParity: "odd",
        ThreeTerm: "three-term",
    }[type(eq)]


# -- classification variants ------------------------------------------------

@dataclass(frozen=True)
class WellPosed:
    i_max: "IntervalUnion | GeometricUnion"
    verdict = "well-posed"

    def describe(self) -> str:
        return f"{self.verdict}; I_max={self.i_max}"


@dataclass(frozen=True)
class Overdetermined:
    redundant: Interval
    verdict = "overdetermined"

    def describe(self) -> str:
        return f"{self.verdict}; redundant={self.redundant}"


@dataclass(frozen=True)
class Underdetermined:
    i_max: "IntervalUnion | GeometricUnion"
    verdict = "underdetermined"

    def describe(self) -> str:
        return f"{self.verdict}; I_max={self.i_max}"


@dataclass(frozen=True)
class PenlpViolation:
    limit_point: float
    verdict = "penlp-violation"

    def describe(self) -> str:
        return f"{self.verdict}; limit_point={fmt_real(self.limit_point)}"


Classification = Union[WellPosed, Overdetermined, Underdetermined, PenlpViolation]


# -- limit points -----------------------------------------------------------

def limit_points(eq: EquationSpec) -> frozenset[float]:
    if isinstance(eq, ShiftScale):
        if eq.b in (1, -1):
            return frozenset()
        return frozenset({eq.b / (eq.b - 1)})
    if isinstance(eq, (PureScale, ThreeTerm)):
        return frozenset({0.0})
    return frozenset()


def _as_union(i0: "IntervalUnion | Interval") -> IntervalUnion:
    return IntervalUnion((i0,)) if isinstance(i0, Interval) else i0


def validate_initial_set(eq: EquationSpec, i0: "IntervalUnion | Interval") -> PenlpViolation | None:
    """None if every limit point is at positive distance from closure(i0)."""
    u = _as_union(i0)
    for lp in sorted(limit_points(eq)):
        if u.closure_contains(lp):
            return PenlpViolation(lp)
    return None


def require_admissible(eq: EquationSpec, i0: "IntervalUnion | Interval") -> None:
    v = validate_initial_set(eq, i0)
    if v is not None:
        raise PenlpViolationError(v.limit_point)


def gap(eq: EquationSpec, i0: "IntervalUnion | Interval") -> float:
    """Distance from the closest limit point to the initial set (inf if none)."""
    u = _as_union(i0)
    return min((u.distance(lp) for lp in limit_points(eq)), default=math.inf)


# -- ratio classification ---------------------------------------------------

def well_posed_ratio(eq: EquationSpec) -> float:
    if isinstance(eq, PureScale):
        return abs(eq.ratio)
    if isinstance(eq, ThreeTerm):
        return 3.0
    raise ArgumentError(f"{family_name(eq)} problems are not classified by an interval ratio")


def ratio_verdict(a: float, c: float, rho: float, *, sign: float = 1.0,
                  geometric_ratio: float | None = None, closed_zero: bool = False) -> Classification:
    """Compare c with rho*a for the data interval [a, c), 0 < a < c.

    ``sign`` = -1 reports everything mirrored onto the negative axis.
    """
    g = geometric_ratio if geometric_ratio is not None else rho

    def oriented(lo: float, hi: float) -> Interval:
        iv = Interval(lo, hi, True, False)
        return iv if sign > 0 else iv.reflect()

    if math.isclose(c, rho * a, rel_tol=RATIO_RTOL):
        if g < 0:
            return WellPosed(GeometricUnion(oriented(a, c), g))
        half = Interval(0.0, math.inf, closed_zero, False)
        return WellPosed(IntervalUnion((half if sign > 0 else half.reflect(),)))
    if c > rho * a:
        return Overdetermined(oriented(rho * a, c))
    return Underdetermined(GeometricUnion(oriented(a, c), g))


def classify(eq: EquationSpec, i0: Interval) -> Classification:
    """Verdict for data on a single interval [a, c) (or its mirror image)."""
    rho = well_posed_ratio(eq)
    v = validate_initial_set(eq, i0)
    if v is not None:
        return v
    if i0.lo > 0:
        a, c, sign = i0.lo, i0.hi, 1.0
    elif i0.hi < 0:
        a, c, sign = -i0.hi, -i0.lo, -1.0
    else:
        raise ArgumentError(f"interval {i0} must lie on one side of 0")
    if not c > a:
        raise ArgumentError(f"interval {i0} must have positive length")
    g = eq.ratio if isinstance(eq, PureScale) else rho
    return ratio_verdict(a, c, rho, sign=sign, geometric_ratio=g, closed_zero=isinstance(eq, ThreeTerm))


# -- executable witnesses of constraint -------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    family: str
    x: float
    depths: tuple[int, ...]
    values: tuple[float, ...]
    tol: float
    conflict: tuple[tuple[int, float], tuple[int, float]] | None

    @property
    def consistent(self) -> bool:
        return self.conflict is None

    @property
    def verdict(self) -> str:
        return "CONSISTENT" if self.consistent else "INCONSISTENT"

    def csv_lines(self) -> list[str]:
        lines = ["depth,value"]
        lines += [f"{d},{fmt_real(v)}" for d, v in zip(self.depths, self.values)]
        if self.conflict is None:
            lines.append(f"# verdict,CONSISTENT,{fmt_real(self.values[0])}")
        else:
            (_, v1), (_, v2) = self.conflict
            lines.append(f"# verdict,INCONSISTENT,{fmt_real(v1)},{fmt_real(v2)}")
        return lines


def _callable(f) -> Callable[[float], float]:
    if isinstance(f, str):
        e = _expr.parse(f)
        return lambda t: _expr.evaluate(e, t)
    if callable(f):
        return f
    return lambda t: _expr.evaluate(f, t)


def witness_values(eq: EquationSpec, f, x: float, depths: Sequence[int]) -> list[float]:
    """Candidate values of y(x) obtained by pulling x toward the limit point
    through ``depth`` applications of the equation."""
    fn = _callable(f)
    if isinstance(eq, ThreeTerm):
        from .three_term import binomial_expand

        return [binomial_expand(fn, x, n) for n in depths]
    if isinstance(eq, PureScale):
        r = eq.ratio
        return [fn(x * r ** (-n)) for n in depths]
    if isinstance(eq, ShiftScale) and eq.b not in (1, -1):
        lp = eq.b / (eq.b - 1)
        inward = eq.b if abs(eq.b) < 1 else 1 / eq.b
        return [fn(lp + inward ** n * (x - lp)) for n in depths]
    raise ArgumentError(f"{family_name(eq)} has no limit point to witness")


def constraint_witness(eq: EquationSpec, f, x: float, depths: Sequence[int], tol: float = 1e-9) -> WitnessReport:
    depths = tuple(depths)
    if len(set(depths)) != len(depths) or not depths:
        raise ArgumentError("depths must be non-empty and distinct")
    values = witness_values(eq, f, x, depths)
    conflict = None
    for j in range(1, len(values)):
        for i in range(j):
            if abs(values[i] - values[j]) > tol * (1 + abs(values[i])):
                conflict = ((depths[i], values[i]), (depths[j], values[j]))
                break
        if conflict:
            break
    return WitnessReport(family_name(eq), x, depths, tuple(values), tol, conflict)
