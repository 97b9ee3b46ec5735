"""Brute-force reference evaluators for differential testing.

Nothing here uses the engines' closed forms or index searches. Points are
produced by applying the raw equations one step at a time, so these are slow
and accumulate rounding, but they fail independently of the engines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import expr as _expr
from .core import AffineMap
from .errors import ArgumentError, IterationCapError, OutOfDomainError, RecursionDepthError
from .initial import InitialData
from .penlp import EquationSpec, EvenParity, OddParity, PureScale, ShiftScale, ThreeTerm, family_name

LOOP_CAP = 20_000
LAND_TOL = 1e-9


def iterate_loop(m: AffineMap, x0: float, n: int) -> float:
    """Apply ``m`` n times in a plain loop."""
    if n < 0:
        raise ArgumentError("iteration count must be non-negative")
    x = x0
    for _ in range(n):
        x = m.slope * x + m.offset
    return x


# -- residual sweeps --------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    family: str
    params: str
    max_abs_residual: float
    argmax_point: float
    samples: int
    scale: float

    def within(self, tol: float) -> bool:
        return self.max_abs_residual <= tol * (1 + self.scale)

    def csv_row(self) -> str:
        return f"{self.family},{self.params},{self.samples},{self.max_abs_residual!r},{self.argmax_point!r}"


def _params(eq: EquationSpec) -> str:
    b = getattr(eq, "b", None)
    return "" if b is None else f"b={b!r}"


def _partners(eq: EquationSpec, x: float) -> tuple[list[float], Callable[[list[float]], float]]:
    """Points the equation links at x, and the residual of their values."""
    if isinstance(eq, ShiftScale):
        return [x + 1, eq.b * x], lambda v: v[0] - v[1]
    if isinstance(eq, PureScale):
        return [x, eq.b * x], lambda v: v[0] - v[1]
    if isinstance(eq, ThreeTerm):
        return [3 * x, x, 2 * x], lambda v: v[0] - v[1] - v[2]
    if isinstance(eq, EvenParity):
        return [x, -x], lambda v: v[0] - v[1]
    if isinstance(eq, OddParity):
        return [-x, x], lambda v: v[0] + v[1]
    raise ArgumentError(f"unknown equation family {eq!r}")


def residual_sweep(evaluate: Callable[[float], float], family: EquationSpec,
                   grid: Sequence[float], tol: float = 1e-9) -> ResidualReport:
    """Largest residual of the defining equation over ``grid``.

    ``scale`` is the largest |y| seen, so ``report.within(tol)`` checks
    max residual <= tol * (1 + scale).
    """
    worst, arg, scale = 0.0, math.nan, 0.0
    for x in grid:
        pts, combine = _partners(family, x)
        try:
            vals = [evaluate(t) for t in pts]
        except OutOfDomainError as exc:
            raise OutOfDomainError(f"grid point {x!r}: {exc}", x) from exc
        scale = max(scale, *(abs(v) for v in vals))
        r = abs(combine(vals))
        if r > worst or math.isnan(arg):
            worst, arg = r, x
    return ResidualReport(family_name(family), _params(family), worst, arg, len(grid), scale)


# -- reference evaluators ---------------------------------------------------

def _lookup(initial: InitialData, t: float) -> float | None:
    if initial.set.contains(t):
        return initial.value(t)
    for iv, e in initial.pieces:
        if iv.distance(t) <= LAND_TOL * max(1.0, abs(t)):
            return _expr.evaluate(e, min(max(t, iv.lo), iv.hi))
    return None


def _search(initial: InitialData, x: float, fwd: Callable[[float], float],
            back: Callable[[float], float], cap: int) -> float:
    # walk both directions one step at a time; first landing wins
    a = b = x
    v = _lookup(initial, x)
    if v is not None:
        return v
    for _ in range(cap):
        a, b = fwd(a), back(b)
        for t in (a, b):
            if math.isfinite(t):
                v = _lookup(initial, t)
                if v is not None:
                    return v
    raise IterationCapError(f"no landing for {x!r} within {cap} steps")


def brute_shift_scale(initial: InitialData, b: float, x: float, cap: int = LOOP_CAP) -> float:
    """y(x) for y(x+1) = y(bx) by literal stepping x -> bx - b and x -> x/b + 1."""
    return _search(initial, x, lambda t: b * t - b, lambda t: t / b + 1, cap)


def brute_scale(initial: InitialData, b: float, x: float, cap: int = LOOP_CAP) -> float:
    """y(x) for y(x) = y(bx) by literal stepping x -> bx and x -> x/b."""
    if x == 0:
        raise OutOfDomainError("0 is a fixed point of x -> bx", x)
    return _search(initial, x, lambda t: b * t, lambda t: t / b, cap)


def brute_three_term(initial: InitialData, x: float, max_depth: int = 60) -> float:
    """Plain double recursion for y(3x) = y(x) + y(2x), without memoisation."""
    if x == 0:
        return 0.0
    side = [iv for iv in initial.set if (iv.lo > 0) == (x > 0)]
    if not side:
        raise OutOfDomainError(f"no data on the side of {x!r}", x)
    inner = min(abs(side[0].lo), abs(side[0].hi))
    outer = max(abs(side[0].lo), abs(side[0].hi))

    def rec(t: float, depth: int) -> float:
        if depth > max_depth:
            raise RecursionDepthError(f"reference recursion too deep at {x!r}")
        if initial.set.contains(t):
            return initial.value(t)
        if abs(t) >= outer:
            return rec(t / 3, depth + 1) + rec(2 * t / 3, depth + 1)
        if abs(t) <= inner:
            return rec(3 * t, depth + 1) - rec(2 * t, depth + 1)
        raise OutOfDomainError(f"{t!r} falls in a gap of the data", t)

    return rec(x, 0)


def brute_parity(initial: InitialData, odd: bool, x: float) -> float:
    if odd and x == 0:
        return 0.0
    if initial.set.contains(x):
        return initial.value(x)
    if initial.set.contains(-x):
        v = initial.value(-x)
        return -v if odd else v
    raise OutOfDomainError(f"{x!r} is not represented", x)
