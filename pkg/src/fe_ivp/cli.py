"""Command-line front end.

Every subcommand writes CSV (or a one-line report) to stdout and nothing
else. Errors go to stderr with exit code 2 (validation or limit-point
violation), 3 (unparseable expression, interval or number) or 4 (query
outside the maximal domain, or an expression outside its real domain).
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import oracle, parity, scale, shift_scale, three_term
from .core import fmt_real, parse_union
from .errors import (
    ArgumentError,
    DomainError,
    FEError,
    OutOfDomainError,
    ParseError,
    PenlpViolationError,
    ValidationError,
)
from .initial import InitialData
from .penlp import (
    EquationSpec,
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

EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4

EQUATIONS = ("periodic", "shift-scale", "scale", "even", "odd", "three-term")
CONFIG_KEYS = {"equation", "b", "init-set", "init-fn", "init-on", "tol", "unsafe", "domain"}


@dataclass
class RunConfig:
    equation: str
    b: float | None = None
    init_set: str | None = None
    init_fn: list[str] = field(default_factory=list)
    init_on: list[str] = field(default_factory=list)
    tol: float = 1e-9
    unsafe: bool = False
    domain: float | None = None


def parse_real(text: str, what: str = "number") -> float:
    """Finite float from text; anything else is a parse error."""
    try:
        v = float(text)
    except (TypeError, ValueError):
        raise ParseError(f"malformed {what} {text!r}") from None
    if not math.isfinite(v):
        raise ParseError(f"{what} must be finite, got {text!r}")
    return v


def read_config(path: str) -> dict[str, list[str]]:
    """Flat ``key=value`` file; '#' starts a comment; init-fn/init-on may repeat."""
    out: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("_", "-")
            if not sep or key not in CONFIG_KEYS:
                raise ArgumentError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
            out.setdefault(key, []).append(value.strip())
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the optional config file with flags; flags win."""
    file_vals = read_config(args.config) if args.config else {}

    def pick(name: str, flag):
        if flag is not None:
            return flag
        vals = file_vals.get(name)
        return vals[-1] if vals else None

    equation = pick("equation", args.equation)
    if equation is None:
        raise ArgumentError("--equation is required")
    if equation not in EQUATIONS:
        raise ArgumentError(f"unknown equation {equation!r}; choose from {', '.join(EQUATIONS)}")
    b = pick("b", args.b)
    tol = pick("tol", args.tol)
    domain = pick("domain", args.domain)
    unsafe = args.unsafe or pick("unsafe", None) in ("1", "true", "yes")
    return RunConfig(
        equation=equation,
        b=None if b is None else parse_real(b, "b"),
        init_set=pick("init-set", args.init_set),
        init_fn=args.init_fn or file_vals.get("init-fn", []),
        init_on=args.init_on or file_vals.get("init-on", []),
        tol=1e-9 if tol is None else parse_real(tol, "tolerance"),
        unsafe=unsafe,
        domain=None if domain is None else parse_real(domain, "domain half-width"),
    )


def initial_data(cfg: RunConfig) -> InitialData:
    if not cfg.init_fn:
        raise ArgumentError("at least one --init-fn is required")
    if cfg.init_on:
        if len(cfg.init_on) != len(cfg.init_fn):
            raise ArgumentError("each --init-fn needs a matching --init-on")
        data = InitialData.parse(list(zip(cfg.init_on, cfg.init_fn)))
        if cfg.init_set is not None and parse_union(cfg.init_set) != data.set:
            raise ArgumentError(f"--init-set {cfg.init_set} differs from the union of --init-on intervals {data.set}")
        return data
    if cfg.init_set is None:
        raise ArgumentError("--init-set is required when --init-on is not given")
    if len(cfg.init_fn) != 1:
        raise ArgumentError("several --init-fn values need --init-on intervals")
    return InitialData.single(cfg.init_set, cfg.init_fn[0])


def _need_b(cfg: RunConfig) -> float:
    if cfg.b is None:
        raise ArgumentError(f"--b is required for {cfg.equation}")
    return cfg.b


def equation_spec(cfg: RunConfig) -> EquationSpec:
    if cfg.equation == "periodic":
        return ShiftScale(1.0)
    if cfg.equation == "shift-scale":
        return ShiftScale(_need_b(cfg))
    if cfg.equation == "scale":
        return PureScale(_need_b(cfg))
    if cfg.equation == "even":
        return EvenParity()
    if cfg.equation == "odd":
        return OddParity()
    return ThreeTerm()


@dataclass(frozen=True)
class Built:
    spec: EquationSpec
    evaluate: Callable[[float], float]
    problem: object


def build(cfg: RunConfig) -> Built:
    """Validate the problem and return its evaluator."""
    spec = equation_spec(cfg)
    data = initial_data(cfg)
    if isinstance(spec, ShiftScale):
        p = shift_scale.make_problem(spec.b, data)
        return Built(spec, p.evaluate, p)
    if isinstance(spec, PureScale):
        p = scale.make_scale_problem(spec.b, data)
        return Built(PureScale(p.b), p.evaluate, p)
    if isinstance(spec, ThreeTerm):
        p = three_term.make_three_term_problem(data)
        return Built(spec, lambda x: three_term.evaluate(p, x), p)
    kind = "even" if isinstance(spec, EvenParity) else "odd"
    p = parity.make_parity_problem(kind, data, parity.symmetric_domain(cfg.domain))
    return Built(spec, p.extend, p)


# -- subcommands ------------------------------------------------------------

def cmd_eval(cfg: RunConfig, queries: Sequence[float]) -> list[str]:
    built = build(cfg)
    return ["x,y"] + [f"{fmt_real(x)},{fmt_real(built.evaluate(x))}" for x in queries]


def cmd_classify(cfg: RunConfig) -> list[str]:
    spec = equation_spec(cfg)
    if cfg.init_set is None:
        raise ArgumentError("classify needs --init-set")
    u = parse_union(cfg.init_set)
    if len(u) != 1:
        raise ArgumentError("classify takes a single interval")
    return [classify(spec, u.parts[0]).describe()]


def cmd_trace(cfg: RunConfig, x: float) -> list[str]:
    built = build(cfg)
    if not isinstance(built.problem, shift_scale.ShiftScaleProblem):
        raise ArgumentError("trace is defined for periodic and shift-scale problems")
    return shift_scale.trace(built.problem, x).csv_lines()


def grid(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise ArgumentError("--step must be positive")
    if stop < start:
        raise ArgumentError("--to must not be below --from")
    n = int(math.floor((stop - start) / step * (1 + 1e-12)))
    return [start + i * step for i in range(n + 1)]


def cmd_sweep(cfg: RunConfig, points: Sequence[float]) -> list[str]:
    built = build(cfg)
    lines = ["x,y"] + [f"{fmt_real(x)},{fmt_real(built.evaluate(x))}" for x in points]
    report = oracle.residual_sweep(built.evaluate, built.spec, points, cfg.tol)
    lines.append(f"# residual,{fmt_real(report.max_abs_residual)}")
    return lines


def cmd_limit_points(cfg: RunConfig) -> list[str]:
    spec = equation_spec(cfg)
    lines = ["limit_point"] + [fmt_real(v) for v in sorted(limit_points(spec))]
    if cfg.init_set is not None:
        v = validate_initial_set(spec, parse_union(cfg.init_set))
        lines.append("# admissible" if v is None else f"# {v.describe()}")
    return lines


def cmd_witness(cfg: RunConfig, x: float, depths: Sequence[int]) -> list[str]:
    spec = equation_spec(cfg)
    data = initial_data(cfg)
    violation = validate_initial_set(spec, data.set)
    if violation is not None and not cfg.unsafe:
        raise PenlpViolationError(
            violation.limit_point,
            f"initial set {data.set} touches the limit point {fmt_real(violation.limit_point)}; "
            "pass --unsafe to compute the conflicting values anyway",
        )
    if len(data.pieces) != 1:
        raise ArgumentError("witness takes a single --init-fn")
    f = data.pieces[0][1]
    return constraint_witness(spec, f, x, depths, cfg.tol).csv_lines()


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    g = shared.add_argument_group("problem definition")
    g.add_argument("--equation", choices=EQUATIONS, help="equation family")
    g.add_argument("--b", help="parameter b (shift-scale and scale)")
    g.add_argument("--init-set", help="initial set, e.g. '(-2,-1]u[1,2)'")
    g.add_argument("--init-fn", action="append", help="initial function of x (repeatable)")
    g.add_argument("--init-on", action="append", help="interval for the matching --init-fn")
    g.add_argument("--domain", help="half-width a of the parity domain (-a,a); default is the real line")
    g.add_argument("--config", help="key=value file; flags override it")
    g.add_argument("--tol", help="consistency / residual tolerance (default 1e-9)")
    g.add_argument("--unsafe", action="store_true", help="skip the limit-point gate (witness only)")

    parser = argparse.ArgumentParser(prog="fe-ivp", description="Solve and diagnose functional-equation initial value problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[shared], help="evaluate the extension at query points")
    p.add_argument("x", nargs="+", help="query points")
    sub.add_parser("classify", parents=[shared], help="well-posed / over- / underdetermined verdict")
    p = sub.add_parser("trace", parents=[shared], help="iterates from x into the initial set")
    p.add_argument("x")
    p = sub.add_parser("sweep", parents=[shared], help="value table on a grid plus residual")
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)
    p.add_argument("--step", required=True)
    sub.add_parser("limit-points", parents=[shared], help="limit points and admissibility of --init-set")
    p = sub.add_parser("witness", parents=[shared], help="candidate values of y(x) at several depths")
    p.add_argument("x")
    p.add_argument("--depths", default="1,2", help="comma-separated depths (default 1,2)")
    return parser


def _depths(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ParseError(f"malformed depth list {text!r}") from None


def run(args: argparse.Namespace) -> list[str]:
    cfg = resolve_config(args)
    if args.command == "eval":
        return cmd_eval(cfg, [parse_real(t, "query point") for t in args.x])
    if args.command == "classify":
        return cmd_classify(cfg)
    if args.command == "trace":
        return cmd_trace(cfg, parse_real(args.x, "query point"))
    if args.command == "sweep":
        pts = grid(parse_real(args.start), parse_real(args.stop), parse_real(args.step))
        return cmd_sweep(cfg, pts)
    if args.command == "limit-points":
        return cmd_limit_points(cfg)
    return cmd_witness(cfg, parse_real(args.x, "query point"), _depths(args.depths))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        lines = run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid problem: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OutOfDomainError, DomainError) as exc:
        print(f"out of domain: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FEError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    sys.stdout.write("".join(line + "\n" for line in lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
