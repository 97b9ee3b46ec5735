"""Initial value problem for y(x) = y(b x), |b| > 1 (|b| < 1 is folded to 1/b).

Data on [eps, b eps) fixes y on (0, inf) and data on (-b delta, -delta] fixes
it on (-inf, 0). For b < -1 the powers of b alternate sign, so the data must
be the symmetric pair (-|b| eps, -eps] u [eps, |b| eps) and then covers
R \\ {0}. A shorter positive interval [a, c), c < b a, is accepted as an
underdetermined problem whose domain is the union of the blocks b^n [a, c).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import CompositeSet, GeometricUnion, Interval, IntervalUnion
from .errors import ArgumentError, OutOfDomainError, ShapeError, ZeroBError
from .initial import InitialData
from .penlp import (
    Classification,
    Overdetermined,
    PureScale,
    Underdetermined,
    WellPosed,
    ratio_verdict,
    require_admissible,
)

SHAPE_RTOL = 1e-9


@dataclass(frozen=True)
class ScaleProblem:
    b: float
    initial: InitialData
    positive: Interval | None = None
    negative: Interval | None = None
    positive_verdict: Classification | None = None
    negative_verdict: Classification | None = None

    @property
    def sides(self) -> str:
        if self.positive is not None and self.negative is not None:
            return "both"
        return "positive" if self.positive is not None else "negative"

    @property
    def eps(self) -> float | None:
        return None if self.positive is None else self.positive.lo

    @property
    def delta(self) -> float | None:
        return None if self.negative is None else -self.negative.hi

    def evaluate(self, x: float) -> float:
        return evaluate(self, x)

    def max_domain(self):
        return max_domain(self)


def classify_interval(a: float, c: float, b: float) -> Classification:
    """Well-posed iff c == b a; longer data is redundant, shorter leaves gaps."""
    if not b > 1:
        raise ArgumentError(f"classify_interval needs b > 1, got {b!r}")
    if not a > 0 or not c > a:
        raise ArgumentError(f"need 0 < a < c, got a={a!r}, c={c!r}")
    return ratio_verdict(a, c, b)


def make_scale_problem(b: float, initial: InitialData) -> ScaleProblem:
    if b == 0:
        raise ZeroBError("b must be nonzero")
    if abs(b) == 1:
        raise ArgumentError("|b| = 1 is not a scaling equation")
    if abs(b) < 1:
        b = 1 / b
    require_admissible(PureScale(b), initial.set)
    parts = initial.set.parts
    if not parts or any(not p.bounded for p in parts):
        raise ShapeError("initial set must be nonempty and bounded")

    if b < 0:
        if len(parts) != 2 or not (parts[0].hi < 0 < parts[1].lo):
            raise ShapeError(_pair_form(b, initial.set))
        neg, pos = parts
        eps = pos.lo
        ok = (
            math.isclose(pos.hi, -b * eps, rel_tol=SHAPE_RTOL)
            and math.isclose(neg.hi, -eps, rel_tol=SHAPE_RTOL)
            and math.isclose(neg.lo, b * eps, rel_tol=SHAPE_RTOL)
        )
        if not ok:
            raise ShapeError(_pair_form(b, initial.set))
        full = WellPosed(IntervalUnion((Interval(-math.inf, 0.0, False, False), Interval(0.0, math.inf, False, False))))
        return ScaleProblem(b, initial, pos, neg, full, full)

    pos = neg = None
    verdicts = {}
    for part in parts:
        side = "positive" if part.lo > 0 else "negative"
        if (pos if side == "positive" else neg) is not None:
            raise ShapeError(f"more than one {side} initial interval")
        a, c = sorted((abs(part.lo), abs(part.hi)))
        v = ratio_verdict(a, c, b, sign=1.0 if side == "positive" else -1.0)
        if isinstance(v, Overdetermined):
            raise ShapeError(
                f"initial interval {part} is longer than the well-posed [a, {b!r}a); "
                f"data on {v.redundant} is redundant"
            )
        verdicts[side] = v
        if side == "positive":
            pos = part
        else:
            neg = part
    return ScaleProblem(b, initial, pos, neg, verdicts.get("positive"), verdicts.get("negative"))


def _pair_form(b: float, got) -> str:
    return f"b = {b!r} needs initial set (-|b|eps, -eps] u [eps, |b|eps); got {got}"


def power(p: ScaleProblem, x: float) -> int | None:
    """The integer m with b**m * x in the initial set, or None."""
    if x == 0 or math.isnan(x) or math.isinf(x):
        return None
    b = p.b
    if b > 0:
        part = p.positive if x > 0 else p.negative
        if part is None:
            return None
        inner = min(abs(part.lo), abs(part.hi))
    else:
        inner = p.eps
    ref = inner * math.sqrt(abs(b))
    guess = round(math.log(ref / abs(x)) / math.log(abs(b)))
    cands = (guess, guess - 1, guess + 1)
    for m in cands:
        if p.initial.contains(x * b ** m):
            return m
    return None


def evaluate(p: ScaleProblem, x: float) -> float:
    if p.initial.contains(x):
        return p.initial.value(x)
    m = power(p, x)
    if m is None:
        if x == 0:
            raise OutOfDomainError("x = 0 is the limit point of y(x) = y(bx)", x)
        dom = max_domain(p)
        if dom.contains(x):
            # well-posed side, rounding left the image one ulp outside
            inner = p.eps if (x > 0 or p.b < 0) else p.delta
            m = round(math.log(inner * math.sqrt(abs(p.b)) / abs(x)) / math.log(abs(p.b)))
            return p.initial.value_snapped(x * p.b ** m)
        raise OutOfDomainError(f"{x!r} is outside I_max = {dom}", x)
    return p.initial.value(x * p.b ** m)


def max_domain(p: ScaleProblem) -> CompositeSet:
    members = []
    for v in (p.negative_verdict, p.positive_verdict):
        if v is None or v in members:
            continue
        members.append(v.i_max)
    return CompositeSet(tuple(members))
