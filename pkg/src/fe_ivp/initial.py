"""Initial data: a set carrying prescribed values, split into expression pieces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import expr as _expr
from .core import Interval, IntervalUnion, normalize, parse_interval, parse_union
from .errors import OutOfDomainError

SNAP_TOL = 1e-12


@dataclass(frozen=True)
class InitialData:
    set: IntervalUnion
    pieces: tuple[tuple[Interval, _expr.Expr], ...]

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple[Interval, "_expr.Expr | str"]]) -> "InitialData":
        parsed = tuple(
            (iv, _expr.parse(e) if isinstance(e, str) else e) for iv, e in pieces
        )
        # normalize raises OverlapError if pieces are not disjoint
        return cls(normalize([iv for iv, _ in parsed]), parsed)

    @classmethod
    def single(cls, where: "IntervalUnion | Interval | str", e: "_expr.Expr | str") -> "InitialData":
        if isinstance(where, str):
            where = parse_union(where)
        if isinstance(where, Interval):
            where = IntervalUnion((where,))
        ex = _expr.parse(e) if isinstance(e, str) else e
        return cls(where, tuple((iv, ex) for iv in where.parts))

    @classmethod
    def parse(cls, pairs: Sequence[tuple[str, str]]) -> "InitialData":
        """From (interval text, expression text) pairs."""
        return cls.from_pieces([(parse_interval(i), e) for i, e in pairs])

    def contains(self, x: float) -> bool:
        return self.set.contains(x)

    __contains__ = contains

    def piece_at(self, x: float) -> _expr.Expr:
        for iv, e in self.pieces:
            if iv.contains(x):
                return e
        raise OutOfDomainError(f"{x!r} is outside the initial set {self.set}", x)

    def value(self, x: float) -> float:
        return _expr.evaluate(self.piece_at(x), x)

    __call__ = value

    def value_snapped(self, x: float) -> float:
        """Like :meth:`value`, but a point within rounding distance of a piece
        is evaluated with that piece's expression. Used for iterates that land
        one ulp outside an endpoint."""
        for iv, e in self.pieces:
            if iv.contains(x):
                return _expr.evaluate(e, x)
        best = min(self.pieces, key=lambda p: p[0].distance(x))
        if best[0].distance(x) <= SNAP_TOL * max(1.0, abs(x)):
            return _expr.evaluate(best[1], x)
        raise OutOfDomainError(f"{x!r} is outside the initial set {self.set}", x)

    def describe(self) -> str:
        return "; ".join(f"{iv}: {_expr.to_string(e)}" for iv, e in self.pieces)
