"""Initial value problem for y(x + 1) = y(b x), b != 0.

Writing d = x - b x* for the offset from the limit point b x* = b/(b-1),
one application of the equation maps d -> b d (x -> b x - b) or
d -> d / b (x -> x/b + 1). Every admissible initial set is a half-open
"annulus" |d| in [r, |b|^{+-1} r) on one or both sides of the limit point,
so exactly one integer power of b carries a query into it.

Regimes:

* b = 1: periodic extension of data on a unit interval.
* b = -1: reflection x -> 1 - x of data on [1/2, x0 + 1).
* b > 0, b != 1: data on I_0(x0, b) (one side of b x*) or one such interval
  on each side.
* b < 0, b != -1: two-piece symmetric data around b x* (the eps-form).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    AffineMap,
    Interval,
    IntervalUnion,
    fmt_real,
    limit_point,
    locate_index,
    xstar,
)
from .errors import IterationCapError, OutOfDomainError, ShapeError, ZeroBError
from .initial import InitialData
from .penlp import ShiftScale, require_admissible

SHAPE_RTOL = 1e-9
TRACE_CAP = 10_000


class Regime(enum.Enum):
    B_EQ_1 = "b = 1"
    B_GT_1 = "b > 1"
    B_IN_0_1 = "0 < b < 1"
    B_EQ_NEG1 = "b = -1"
    B_IN_NEG1_0 = "-1 < b < 0"
    B_LT_NEG1 = "b < -1"


def regime_of(b: float) -> Regime:
    if b == 0:
        raise ZeroBError("b must be nonzero")
    if b == 1:
        return Regime.B_EQ_1
    if b == -1:
        return Regime.B_EQ_NEG1
    if b > 1:
        return Regime.B_GT_1
    if b > 0:
        return Regime.B_IN_0_1
    if b > -1:
        return Regime.B_IN_NEG1_0
    return Regime.B_LT_NEG1


@dataclass(frozen=True)
class ShiftScaleProblem:
    b: float
    regime: Regime
    initial: InitialData
    anchors: tuple[float, ...]
    xstar: float | None
    limit: float | None

    @property
    def anchor(self) -> float:
        """x0 (b > 0, b = +-1) or eps (b < 0)."""
        return self.anchors[0]

    def evaluate(self, x: float) -> float:
        return evaluate(self, x)

    def trace(self, x: float) -> "IterationTrace":
        return trace(self, x)

    def max_domain(self) -> IntervalUnion:
        return max_domain(self)

    @property
    def inward_map(self) -> AffineMap:
        """x -> b x - b, i.e. d -> b d."""
        return AffineMap(self.b, -self.b)

    @property
    def outward_map(self) -> AffineMap:
        """x -> x / b + 1, i.e. d -> d / b."""
        return AffineMap(1 / self.b, 1.0)


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=SHAPE_RTOL, abs_tol=SHAPE_RTOL)


def _recover_x0(part: Interval, b: float) -> float | None:
    lo, hi = part.lo, part.hi
    x0 = lo / b
    if _close(hi, x0 + 1):
        return x0
    x0 = hi / b
    if _close(lo, x0 + 1):
        return x0
    return None


def make_problem(b: float, initial: InitialData) -> ShiftScaleProblem:
    """Validate the initial set for y(x+1) = y(bx) and recover its anchor."""
    regime = regime_of(b)
    parts = initial.set.parts
    if not parts:
        raise ShapeError("initial set is empty")
    if any(not p.bounded for p in parts):
        raise ShapeError("initial set must be bounded")

    if regime is Regime.B_EQ_1:
        if len(parts) != 1 or not _close(parts[0].length, 1.0):
            raise ShapeError(f"b = 1 needs one unit interval [x0, x0+1); got {initial.set}")
        return ShiftScaleProblem(b, regime, initial, (parts[0].lo,), None, None)

    if regime is Regime.B_EQ_NEG1:
        p = parts[0]
        if len(parts) != 1 or p.lo != 0.5 or not p.lo_closed or p.hi <= 0.5:
            raise ShapeError(f"b = -1 needs one interval [1/2, x0+1) with x0 > -1/2; got {initial.set}")
        return ShiftScaleProblem(b, regime, initial, (p.hi - 1,), xstar(b), None)

    require_admissible(ShiftScale(b), initial.set)
    c = limit_point(b)
    xs = xstar(b)

    if b > 0:
        if len(parts) > 2:
            raise ShapeError("b > 0 allows at most one initial interval on each side of b x*")
        anchors = []
        for part in parts:
            x0 = _recover_x0(part, b)
            if x0 is None:
                raise ShapeError(
                    f"initial interval {part} is not of the form "
                    "[min(b x0, x0+1), max(b x0, x0+1)) for any x0"
                )
            anchors.append(x0)
        if len(parts) == 2 and not (parts[0].hi <= c <= parts[1].lo):
            raise ShapeError(f"two initial intervals must lie on opposite sides of b x* = {c!r}")
        return ShiftScaleProblem(b, regime, initial, tuple(anchors), xs, c)

    if len(parts) != 2 or not (parts[0].hi < c < parts[1].lo):
        raise ShapeError(_eps_form(b, c, initial.set))
    left, right = parts
    r_out, r_in = c - left.lo, c - left.hi
    if not (_close(r_out, right.hi - c) and _close(r_in, right.lo - c)):
        raise ShapeError(_eps_form(b, c, initial.set))
    if regime is Regime.B_IN_NEG1_0:
        ok, eps = _close(r_in, abs(b) * r_out), r_out
    else:
        ok, eps = _close(r_out, abs(b) * r_in), r_in
    if not ok:
        raise ShapeError(_eps_form(b, c, initial.set))
    return ShiftScaleProblem(b, regime, initial, (eps,), xs, c)


def _eps_form(b: float, c: float, got) -> str:
    if -1 < b < 0:
        form = "(c-eps, c-|b|eps] u [c+|b|eps, c+eps)"
    else:
        form = "(c-|b|eps, c-eps] u [c+eps, c+|b|eps)"
    return f"b = {b!r} needs initial set {form} with c = b x* = {c!r}; got {got}"


# -- locating the landing point ---------------------------------------------

def _landing_b1(p: ShiftScaleProblem, x: float) -> tuple[int, float]:
    x0 = p.anchor
    m = math.floor(x - x0)
    for k in (m, m - 1, m + 1):
        t = x - k
        if p.initial.contains(t):
            return k, t
    return m, x - m


def _exponent_candidates(p: ShiftScaleProblem, x: float) -> list[int]:
    b, c = p.b, p.limit
    d = x - c
    if b > 0:
        xs = p.xstar
        for x0 in p.anchors:
            if (x0 > xs) == (d > 0):
                k = locate_index(x, x0, b)
                return [k, k - 1, k + 1]
        raise OutOfDomainError(f"{x!r} lies on a side of b x* = {c!r} without initial data", x)
    eps = p.anchor
    r_in, r_out = eps * min(1.0, abs(b)), eps * max(1.0, abs(b))
    guess = round(math.log(math.sqrt(r_in * r_out) / abs(d)) / math.log(abs(b)))
    return [guess, guess - 1, guess + 1, guess - 2, guess + 2]


def landing(p: ShiftScaleProblem, x: float) -> tuple[int, float]:
    """(n, t) with t = b x* + b**n (x - b x*) the iterate of x in the initial set.

    For b = 1 the point is x - n, for b = -1 it is x or 1 - x (n = 0 or 1).
    """
    if math.isnan(x) or math.isinf(x):
        raise OutOfDomainError(f"{x!r} is not a finite real", x)
    if p.initial.contains(x):
        return 0, x
    if p.regime is Regime.B_EQ_1:
        return _landing_b1(p, x)
    if p.regime is Regime.B_EQ_NEG1:
        if p.initial.contains(1 - x):
            return 1, 1 - x
        raise OutOfDomainError(f"{x!r} is outside I_max = {max_domain(p)}", x)
    c = p.limit
    d = x - c
    if d == 0:
        raise OutOfDomainError(f"{x!r} is the limit point b x*", x)
    cands = _exponent_candidates(p, x)
    for n in cands:
        t = c + p.b ** n * d
        if p.initial.contains(t):
            return n, t
    # rounding put every candidate an ulp outside; take the nearest
    n = min(cands, key=lambda k: p.initial.set.distance(c + p.b ** k * d))
    return n, c + p.b ** n * d


def evaluate(p: ShiftScaleProblem, x: float) -> float:
    """Value at x of the unique extension of the initial data."""
    if p.initial.contains(x):
        return p.initial.value(x)
    _, t = landing(p, x)
    return p.initial.value_snapped(t)


def max_domain(p: ShiftScaleProblem) -> IntervalUnion:
    inf = math.inf
    if p.regime is Regime.B_EQ_1:
        return IntervalUnion.real_line()
    if p.regime is Regime.B_EQ_NEG1:
        h = p.anchor + 1
        return IntervalUnion((Interval(1 - h, h, False, False),))
    c = p.limit
    below = Interval(-inf, c, False, False)
    above = Interval(c, inf, False, False)
    if p.b < 0:
        return IntervalUnion((below, above))
    parts = []
    for x0 in p.anchors:
        parts.append(above if x0 > p.xstar else below)
    return IntervalUnion.union_of(parts)


# -- cobweb traces ----------------------------------------------------------

@dataclass(frozen=True)
class IterationTrace:
    points: tuple[float, ...]
    offsets: tuple[float, ...] | None
    exponent: int
    limit: float | None
    step: AffineMap | None

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    @property
    def sides(self) -> tuple[str, ...]:
        if self.limit is None:
            return tuple("none" for _ in self.points)
        return tuple("above" if t > self.limit else "below" for t in self.points)

    def csv_lines(self) -> list[str]:
        lines = ["n,x_n,side"]
        lines += [f"{i},{fmt_real(t)},{s}" for i, (t, s) in enumerate(zip(self.points, self.sides))]
        return lines


def trace(p: ShiftScaleProblem, x: float) -> IterationTrace:
    """Sequence of single-step iterates from x into the initial set."""
    n, _ = landing(p, x)
    m = abs(n)
    if m > TRACE_CAP:
        raise IterationCapError(f"trace from {x!r} needs {m} steps (cap {TRACE_CAP})")
    if p.regime is Regime.B_EQ_1:
        sign = 1 if n > 0 else -1
        pts = tuple(x - sign * i for i in range(m + 1))
        return IterationTrace(pts, None, n, None, AffineMap(1.0, -float(sign)))
    if p.regime is Regime.B_EQ_NEG1:
        pts = (x, 1 - x) if n else (x,)
        return IterationTrace(pts, None, n, None, AffineMap(-1.0, 1.0))
    c, b = p.limit, p.b
    d = x - c
    sign = 1 if n >= 0 else -1
    offsets = tuple(d * b ** (sign * i) for i in range(m + 1))
    pts = tuple(c + o for o in offsets)
    step = p.inward_map if sign > 0 else p.outward_map
    return IterationTrace(pts, offsets, n, c, step)


def canonical_set(b: float, anchor: float) -> IntervalUnion:
    """The admissible initial set for ``b`` built from x0 (b > 0, b = +-1)
    or eps (b < 0, b != -1)."""
    regime = regime_of(b)
    if regime is Regime.B_EQ_1:
        return IntervalUnion((Interval(anchor, anchor + 1),))
    if regime is Regime.B_EQ_NEG1:
        return IntervalUnion((Interval(0.5, anchor + 1),))
    if b > 0:
        lo, hi = sorted((b * anchor, anchor + 1))
        return IntervalUnion((Interval(lo, hi),))
    c = limit_point(b)
    r_in, r_out = anchor * min(1.0, -b), anchor * max(1.0, -b)
    return IntervalUnion((Interval(c - r_out, c - r_in, False, True), Interval(c + r_in, c + r_out)))
