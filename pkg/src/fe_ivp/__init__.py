"""Initial value problems for functional equations.

Engines for y(x+1) = y(bx), y(x) = y(bx), even/odd symmetry and
y(3x) = y(x) + y(2x), a limit-point admissibility gate, and brute-force
reference evaluators.
"""
from .core import (
    AffineMap,
    GeometricUnion,
    Interval,
    IntervalUnion,
    fmt_real,
    interval_family,
    iterate_closed,
    limit_point,
    locate_index,
    parse_interval,
    parse_union,
    xstar,
)
from .errors import (
    DomainError,
    FEError,
    OutOfDomainError,
    ParseError,
    PenlpViolationError,
    ValidationError,
)
from .initial import InitialData
from .penlp import (
    EvenParity,
    OddParity,
    PureScale,
    ShiftScale,
    ThreeTerm,
    classify,
    constraint_witness,
    limit_points,
    validate_initial_set,
)

__version__ = "0.1.0"
