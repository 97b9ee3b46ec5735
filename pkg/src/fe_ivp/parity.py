"""Even and odd extension of data given on a representative set.

A representative set S covers a symmetric domain I when every x in I has
x in S or -x in S. Even extensions also need 0 in S; odd ones force y(0) = 0.
"""
from __future__ import annotations

import enum
import math
import random
import warnings
from dataclasses import dataclass, field

from .core import Interval, IntervalUnion
from .errors import ArgumentError, CoverageError, InconsistentDataError, OutOfDomainError
from .initial import InitialData

SPOT_CHECKS = 100
SPOT_TOL = 1e-12


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


class ConsistencyWarning(UserWarning):
    """Representative set overlaps its mirror image; data was spot-checked."""


@dataclass(frozen=True)
class ParityProblem:
    parity: Parity
    domain: IntervalUnion
    rep_set: IntervalUnion
    initial: InitialData

    def extend(self, x: float) -> float:
        return extend(self, x)


@dataclass(frozen=True)
class ValidationReport:
    overlap: IntervalUnion
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return True


def symmetric_domain(a: float | None) -> IntervalUnion:
    """(-a, a), or the real line when ``a`` is None or infinite."""
    if a is None or math.isinf(a):
        return IntervalUnion.real_line()
    if not a > 0:
        raise ArgumentError(f"domain half-width must be positive, got {a!r}")
    return IntervalUnion((Interval(-a, a, False, False),))


def make_parity_problem(parity: "Parity | str", initial: InitialData, domain: IntervalUnion | None = None) -> ParityProblem:
    """Build and validate; ``domain`` defaults to the real line."""
    parity = Parity(parity) if isinstance(parity, str) else parity
    p = ParityProblem(parity, domain if domain is not None else IntervalUnion.real_line(), initial.set, initial)
    validate_rep_set(p)
    return p


def _sample(iv: Interval, rng: random.Random) -> float:
    lo = max(iv.lo, -1e6)
    hi = min(iv.hi, 1e6)
    for _ in range(64):
        t = rng.uniform(lo, hi)
        if iv.contains(t):
            return t
    return (lo + hi) / 2


def validate_rep_set(p: ParityProblem, seed: int = 0) -> ValidationReport:
    """Check reflection coverage and spot-check data on the self-overlap."""
    rep = p.rep_set
    outside = rep.difference(p.domain)
    if outside:
        raise ArgumentError(f"representative set {rep} leaves the domain {p.domain} on {outside}")
    covered = rep.union(rep.reflect())
    if p.parity is Parity.ODD:
        # y(0) = 0 is forced, so 0 need not be represented
        covered = covered.union(Interval.point(0.0))
    uncovered = p.domain.difference(covered)
    if uncovered:
        raise CoverageError(uncovered)

    overlap = rep.intersection(rep.reflect())
    notes: list[str] = []
    if overlap.measure > 0:
        sign = 1.0 if p.parity is Parity.EVEN else -1.0
        rng = random.Random(seed)
        parts = [iv for iv in overlap if iv.length > 0]
        for _ in range(SPOT_CHECKS):
            t = _sample(rng.choice(parts), rng)
            v, w = p.initial.value(t), sign * p.initial.value(-t)
            if abs(v - w) > SPOT_TOL * (1 + abs(v)):
                raise InconsistentDataError(
                    f"data violates {p.parity.value} symmetry on the overlap {overlap}: "
                    f"y({t!r}) = {v!r} but the mirror gives {w!r}"
                )
        msg = f"representative set overlaps its mirror on {overlap}; {SPOT_CHECKS} spot checks passed"
        warnings.warn(msg, ConsistencyWarning, stacklevel=2)
        notes.append(msg)
    return ValidationReport(overlap, tuple(notes))


def extend(p: ParityProblem, x: float) -> float:
    if not p.domain.contains(x):
        raise OutOfDomainError(f"{x!r} is outside the domain {p.domain}", x)
    if p.parity is Parity.ODD and x == 0:
        return 0.0
    if p.rep_set.contains(x):
        return p.initial.value(x)
    if p.rep_set.contains(-x):
        v = p.initial.value(-x)
        return v if p.parity is Parity.EVEN else -v
    raise OutOfDomainError(f"neither {x!r} nor its mirror lies in {p.rep_set}", x)
