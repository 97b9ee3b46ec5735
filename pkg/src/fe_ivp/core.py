"""Interval algebra, affine-map iteration and the I_k interval family.

Intervals carry explicit endpoint closure so that membership is exact.
Unbounded ends are represented by ``math.inf`` and are always open; they
only arise in reported maximal domains and in complements, never in
user-supplied initial sets.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, DegenerateError, IntervalParseError, OutOfDomainError, OverlapError

DEGENERATE_TOL = 1e-12


def fmt_real(v: float) -> str:
    """17-significant-digit rendering; round-trips through ``float``."""
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    s = format(v, ".17g")
    return "0" if s == "-0" else s


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if (self.lo_closed and math.isinf(self.lo)) or (self.hi_closed and math.isinf(self.hi)):
            raise ValueError("infinite endpoints must be open")
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {self}")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x, True, True)

    def contains(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    __contains__ = contains

    def closure_contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def distance(self, x: float) -> float:
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return 0.0

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    def reflect(self) -> "Interval":
        """Image under x -> -x."""
        return Interval(-self.hi, -self.lo, self.hi_closed, self.lo_closed)

    def scale(self, factor: float) -> "Interval":
        if factor > 0:
            return Interval(self.lo * factor, self.hi * factor, self.lo_closed, self.hi_closed)
        if factor < 0:
            return Interval(self.hi * factor, self.lo * factor, self.hi_closed, self.lo_closed)
        raise ArgumentError("scale factor must be nonzero")

    def intersect(self, other: "Interval") -> "Interval | None":
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        if lo < hi or (lo == hi and lo_closed and hi_closed):
            return Interval(lo, hi, lo_closed, hi_closed)
        return None

    def __str__(self) -> str:
        return (
            ("[" if self.lo_closed else "(")
            + f"{fmt_real(self.lo)},{fmt_real(self.hi)}"
            + ("]" if self.hi_closed else ")")
        )


def _sort_key(iv: Interval):
    # equal left ends: closed first, so a sweep keeps the widest closure
    return (iv.lo, not iv.lo_closed, iv.hi, iv.hi_closed)


def _overlaps(a: Interval, b: Interval) -> bool:
    """True if a (sorted before b) shares more than a half-closed endpoint with b."""
    return b.lo < a.hi or (b.lo == a.hi and a.hi_closed and b.lo_closed)


def _touch(a: Interval, b: Interval) -> bool:
    return b.lo == a.hi and (a.hi_closed != b.lo_closed)


def _join(a: Interval, b: Interval) -> Interval:
    if b.hi > a.hi:
        hi, hi_closed = b.hi, b.hi_closed
    elif b.hi < a.hi:
        hi, hi_closed = a.hi, a.hi_closed
    else:
        hi, hi_closed = a.hi, a.hi_closed or b.hi_closed
    return Interval(a.lo, hi, a.lo_closed, hi_closed)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint, non-mergeable intervals.

    Build with :func:`normalize` (disjoint input required) or
    :meth:`union_of` (overlaps merged).
    """

    parts: tuple[Interval, ...] = ()

    @classmethod
    def union_of(cls, parts: Iterable[Interval]) -> "IntervalUnion":
        merged: list[Interval] = []
        for iv in sorted(parts, key=_sort_key):
            if merged and (_overlaps(merged[-1], iv) or _touch(merged[-1], iv)):
                merged[-1] = _join(merged[-1], iv)
            else:
                merged.append(iv)
        return cls(tuple(merged))

    @classmethod
    def real_line(cls) -> "IntervalUnion":
        return cls((Interval(-math.inf, math.inf, False, False),))

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def contains(self, x: float) -> bool:
        return any(p.contains(x) for p in self.parts)

    __contains__ = contains

    def closure_contains(self, x: float) -> bool:
        return any(p.closure_contains(x) for p in self.parts)

    def distance(self, x: float) -> float:
        return min((p.distance(x) for p in self.parts), default=math.inf)

    def find(self, x: float) -> Interval | None:
        for p in self.parts:
            if p.contains(x):
                return p
        return None

    @property
    def measure(self) -> float:
        return sum(p.length for p in self.parts)

    @property
    def lo(self) -> float:
        return self.parts[0].lo

    @property
    def hi(self) -> float:
        return self.parts[-1].hi

    def reflect(self) -> "IntervalUnion":
        return IntervalUnion(tuple(p.reflect() for p in reversed(self.parts)))

    def union(self, other: "IntervalUnion | Interval") -> "IntervalUnion":
        extra = (other,) if isinstance(other, Interval) else other.parts
        return IntervalUnion.union_of(self.parts + tuple(extra))

    def intersection(self, other: "IntervalUnion | Interval") -> "IntervalUnion":
        others = (other,) if isinstance(other, Interval) else other.parts
        out = []
        for a in self.parts:
            for b in others:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return IntervalUnion.union_of(out)

    def complement(self) -> "IntervalUnion":
        gaps: list[Interval] = []
        lo, lo_closed = -math.inf, False
        for p in self.parts:
            hi, hi_closed = p.lo, not p.lo_closed
            if lo < hi or (lo == hi and lo_closed and hi_closed):
                gaps.append(Interval(lo, hi, lo_closed, hi_closed))
            lo, lo_closed = p.hi, not p.hi_closed
        if lo < math.inf:
            gaps.append(Interval(lo, math.inf, lo_closed, False))
        return IntervalUnion(tuple(gaps))

    def difference(self, other: "IntervalUnion | Interval") -> "IntervalUnion":
        if isinstance(other, Interval):
            other = IntervalUnion((other,))
        return self.intersection(other.complement())

    def __str__(self) -> str:
        if not self.parts:
            return "{}"
        return "u".join(str(p) for p in self.parts)


def normalize(parts: Sequence[Interval]) -> IntervalUnion:
    """Sort and merge adjacent parts; reject genuine overlaps."""
    ordered = sorted(parts, key=_sort_key)
    out: list[Interval] = []
    for iv in ordered:
        if out:
            prev = out[-1]
            if _overlaps(prev, iv):
                raise OverlapError(f"intervals {prev} and {iv} overlap")
            if _touch(prev, iv):
                out[-1] = _join(prev, iv)
                continue
        out.append(iv)
    return IntervalUnion(tuple(out))


def contains(u: IntervalUnion, x: float) -> bool:
    return u.contains(x)


@dataclass(frozen=True)
class GeometricUnion:
    """The set ``U_{n in Z} ratio**n * base`` for a base interval away from 0.

    A negative ratio alternates the sign of the blocks.
    """

    base: Interval
    ratio: float

    def __post_init__(self):
        if abs(self.ratio) <= 1:
            raise ArgumentError("geometric ratio must satisfy |ratio| > 1")
        if self.base.closure_contains(0.0):
            raise ArgumentError("base interval must stay away from 0")

    def block(self, n: int) -> Interval:
        return self.base.scale(self.ratio ** n)

    def index_of(self, x: float) -> int | None:
        if x == 0 or math.isinf(x):
            return None
        r = abs(self.ratio)
        ref = math.sqrt(abs(self.base.lo) * abs(self.base.hi))
        guess = round(math.log(ref / abs(x)) / math.log(r))
        for n in (guess, guess - 1, guess + 1):
            if self.base.contains(x * self.ratio ** n):
                return -n
        return None

    def contains(self, x: float) -> bool:
        return self.index_of(x) is not None

    __contains__ = contains

    def blocks(self, first: int, last: int) -> IntervalUnion:
        return IntervalUnion.union_of(self.block(n) for n in range(first, last + 1))

    def __str__(self) -> str:
        shown = "u".join(str(self.block(n)) for n in range(5))
        return f"...u{shown}u..."


@dataclass(frozen=True)
class AffineMap:
    """x -> slope * x + offset."""

    slope: float
    offset: float

    def __call__(self, x: float) -> float:
        return self.slope * x + self.offset

    @property
    def fixed_point(self) -> float | None:
        if self.slope == 1:
            return None
        return self.offset / (1 - self.slope)

    def inverse(self) -> "AffineMap":
        if self.slope == 0:
            raise ArgumentError("constant map has no inverse")
        return AffineMap(1 / self.slope, -self.offset / self.slope)

    def iterate(self, x0: float, n: int) -> float:
        return iterate_closed(self, x0, n)


def fixed_point(m: AffineMap) -> float | None:
    return m.fixed_point


def _geometric_sum(s: float, n: int) -> float:
    """(s**n - 1) / (s - 1) without cancellation for s near +-1."""
    if s == 0:
        return 1.0 if n > 0 else 0.0
    if s > 0:
        return math.expm1(n * math.log(s)) / (s - 1)
    if n % 2 == 0:
        return math.expm1(n * math.log(-s)) / (s - 1)
    return (-(-s) ** n - 1) / (s - 1)


def iterate_closed(m: AffineMap, x0: float, n: int) -> float:
    """n-fold application of ``m`` in closed form.

    Evaluates s**n * x0 + c * (s**n - 1)/(s - 1), which equals
    s**n * (x0 - p) + p for the fixed point p but stays accurate when the
    slope is close to 1 and p is huge.
    """
    if n < 0:
        raise ArgumentError("iteration count must be non-negative")
    if n == 0:
        return x0
    s, c = m.slope, m.offset
    if s == 1:
        return x0 + n * c
    return s ** n * x0 + c * _geometric_sum(s, n)


# -- the I_k family for y(x+1) = y(bx), b > 0, b != 1 -----------------------

def _check_positive_b(b: float) -> None:
    if not (b > 0 and b != 1):
        raise ArgumentError(f"interval family needs 0 < b < 1 or b > 1, got b={b!r}")


def xstar(b: float) -> float:
    """Abscissa where y = x + 1 meets y = bx."""
    if b == 1:
        raise ArgumentError("b = 1 has no intersection point")
    return 1 / (b - 1)


def limit_point(b: float) -> float:
    """b * x*; the accumulation point of both inverse recurrences."""
    return b / (b - 1)


def _family_boundary(x0: float, b: float, j: int) -> float:
    # b * x_j; shared by I_{j-1} (right end) and I_j (left end)
    return (x0 - xstar(b)) * b ** (1 - j) + limit_point(b)


def interval_family(x0: float, b: float, k: int) -> Interval:
    """I_k(x0, b) = [b x_k, b x_{k+1}) with orientation normalised to lo < hi."""
    _check_positive_b(b)
    if abs(x0 - xstar(b)) <= DEGENERATE_TOL:
        raise DegenerateError(f"x0={x0!r} coincides with x*={xstar(b)!r}")
    e0 = _family_boundary(x0, b, k)
    e1 = _family_boundary(x0, b, k + 1)
    return Interval(min(e0, e1), max(e0, e1), True, False)


def interval_family_length(x0: float, b: float, k: int) -> float:
    return abs((x0 - xstar(b)) * (1 - b) / b ** k)


def locate_index(x: float, x0: float, b: float) -> int:
    """The unique k with x in I_k(x0, b)."""
    _check_positive_b(b)
    d_ref = x0 - xstar(b)
    if abs(d_ref) <= DEGENERATE_TOL:
        raise DegenerateError(f"x0={x0!r} coincides with x*={xstar(b)!r}")
    d = x - limit_point(b)
    if d == 0 or (d > 0) != (d_ref > 0) or math.isinf(d):
        raise OutOfDomainError(f"{x!r} is not covered by the I_k family of x0={x0!r}", x)
    ratio = math.log(abs(d) / abs(d_ref)) / math.log(b)
    guess = round(0.5 - ratio)
    for k in (guess, guess - 1, guess + 1):
        if interval_family(x0, b, k).contains(x):
            return k
    raise OutOfDomainError(f"{x!r} is not covered by the I_k family of x0={x0!r}", x)


# -- text syntax ------------------------------------------------------------

_NUM = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_INTERVAL_RE = re.compile(rf"\s*([\[(])\s*({_NUM})\s*,\s*({_NUM})\s*([\])])\s*")


def parse_interval(text: str) -> Interval:
    m = _INTERVAL_RE.fullmatch(text)
    if m is None:
        raise IntervalParseError(f"malformed interval {text!r}", expected="'[lo,hi)', '(lo,hi]', '(lo,hi)' or '[lo,hi]'")
    lo, hi = float(m.group(2)), float(m.group(3))
    try:
        return Interval(lo, hi, m.group(1) == "[", m.group(4) == "]")
    except ValueError as exc:
        raise IntervalParseError(f"invalid interval {text!r}: {exc}") from None


def parse_union(text: str) -> IntervalUnion:
    """Parse ``"(-1,-0.5]u[0.5,1)"``; parts must be disjoint."""
    pieces = [p for p in re.split(r"\s*[uU∪]\s*", text.strip())]
    if not pieces or any(not p for p in pieces):
        raise IntervalParseError(f"malformed interval union {text!r}")
    return normalize([parse_interval(p) for p in pieces])


@dataclass(frozen=True)
class CompositeSet:
    """Union of heterogeneous set objects that each support ``contains``."""

    members: tuple

    def contains(self, x: float) -> bool:
        return any(m.contains(x) for m in self.members)

    __contains__ = contains

    def __str__(self) -> str:
        return "u".join(str(m) for m in self.members)
