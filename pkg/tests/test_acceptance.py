"""Acceptance suite: one printed PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
Every criterion is evaluated at its stated tolerance; a failing sub-check is
named in the printed line.
"""
from __future__ import annotations

import io
import math
import random
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass

import pytest

from tables import GATE_TABLE

from fe_ivp import expr, oracle, parity, scale, shift_scale, three_term
from fe_ivp.cli import main as cli_main
from fe_ivp.core import AffineMap, Interval, interval_family, iterate_closed, locate_index, parse_union, xstar
from fe_ivp.initial import InitialData
from fe_ivp.penlp import (
    EvenParity,
    OddParity,
    Overdetermined,
    PenlpViolation,
    PureScale,
    ShiftScale,
    ThreeTerm,
    Underdetermined,
    WellPosed,
    classify,
    validate_initial_set,
)


@dataclass
class Sub:
    name: str
    ok: bool
    detail: str = ""


def _line(n: int, title: str, subs: list[Sub]) -> str:
    failed = [s for s in subs if not s.ok]
    status = "PASS" if not failed else "FAIL"
    tail = "" if not failed else " | failed: " + "; ".join(f"{s.name} ({s.detail})" for s in failed)
    return f"criterion {n} [{status}] {title}: {len(subs) - len(failed)}/{len(subs)} checks{tail}"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# -- 1 ----------------------------------------------------------------------

def criterion_1() -> list[Sub]:
    p = scale.make_scale_problem(2, InitialData.single("[1,2)", "x"))
    worst = 0.0
    for n in range(-10, 11):
        for j in range(5):
            x = 2.0 ** n * (1 + j / 5)
            worst = max(worst, _rel(p.evaluate(x), 2.0 ** -n * x))
    return [Sub("piecewise table y = 2^-n x", worst <= 1e-12, f"max rel err {worst:.3g}")]


# -- 2 ----------------------------------------------------------------------

def criterion_2() -> list[Sub]:
    subs = []
    v1 = three_term.binomial_expand("x^2", 1.2, 1)
    subs.append(Sub("n=1 value 0.80", _rel(v1, 0.80) <= 1e-12, f"got {v1!r}"))
    v2 = three_term.binomial_expand("x^2", 1.2, 2)
    want = 101 / 225
    subs.append(Sub("n=2 value 101/225", _rel(v2, want) <= 1e-12, f"got {v2!r}, expected {want!r}"))
    probe = three_term.consistency_probe("x^2", 1.2, 1, 2)
    subs.append(Sub("probe flags Inconsistent", isinstance(probe, three_term.Inconsistent), repr(probe)))
    worst = 0.0
    for m in (-2, 0.5, 3):
        vals = [three_term.binomial_expand(f"{m}*x", 1.2, n) for n in range(1, 7)]
        worst = max(worst, max(_rel(v, vals[0]) for v in vals))
    subs.append(Sub("linear data agrees over depths 1..6", worst <= 1e-12, f"max rel spread {worst:.3g}"))
    return subs


# -- 3 ----------------------------------------------------------------------

FUNCS = ["sin(3*x)+x^2", "exp(x/4)", "x", "cos(x)-x^3/10", "abs(x-0.1)", "2.5", "1/(1+x^2)"]


def _shift_scale_problem(b: float, rng: random.Random):
    if b == 1:
        anchor = rng.uniform(-5, 5)
    elif b == -1:
        # the residual needs x+1 and -x in (1-h, h), which is empty unless h > 1
        anchor = rng.uniform(0.2, 5)
    elif b > 0:
        anchor = xstar(b) + rng.choice([-1, 1]) * rng.uniform(0.2, 5)
    else:
        anchor = rng.uniform(0.2, 5)
    data = InitialData.single(shift_scale.canonical_set(b, anchor), rng.choice(FUNCS))
    return shift_scale.make_problem(b, data)


def _shift_scale_grid(p, rng: random.Random, n: int) -> list[float]:
    dom = p.max_domain()
    centre = p.limit if p.limit is not None else 0.0
    out = []
    while len(out) < n:
        if p.b == -1:
            h = p.anchor + 1
            x = rng.uniform(1 - h, h)
        elif rng.random() < 0.5:
            x = rng.uniform(-50, 50)
        else:
            x = centre + rng.choice([-1, 1]) * 10 ** rng.uniform(-3, 2)
        if dom.contains(x) and dom.contains(x + 1) and dom.contains(p.b * x):
            out.append(x)
    return out


def _scale_problem(b: float, rng: random.Random):
    eps = rng.uniform(0.1, 5)
    if b < 0:
        where = f"({b * eps!r},{-eps!r}]u[{eps!r},{-b * eps!r})"
    else:
        sides = rng.choice(["pos", "neg", "both"])
        parts = []
        if sides in ("neg", "both"):
            d = rng.uniform(0.1, 5)
            parts.append(f"({-b * d!r},{-d!r}]")
        if sides in ("pos", "both"):
            parts.append(f"[{eps!r},{b * eps!r})")
        where = "u".join(parts)
    return scale.make_scale_problem(b, InitialData.single(where, rng.choice(FUNCS)))


def _signed_log_grid(rng: random.Random, n: int, ok) -> list[float]:
    out = []
    while len(out) < n:
        x = rng.choice([-1, 1]) * 10 ** rng.uniform(-3, 3)
        if ok(x):
            out.append(x)
    return out


def criterion_3() -> list[Sub]:
    rng = random.Random(20240601)
    subs = []

    def record(name, reports):
        bad = [r for r in reports if not r.within(1e-9)]
        worst = max(r.max_abs_residual / (1 + r.scale) for r in reports)
        subs.append(Sub(name, not bad, f"{len(bad)} of {len(reports)} problems over tolerance, worst scaled {worst:.3g}"))

    for b in (0.5, 2.0, 1.0, -0.5, -2.0, -1.0):
        reports = []
        for _ in range(20):
            p = _shift_scale_problem(b, rng)
            reports.append(oracle.residual_sweep(p.evaluate, ShiftScale(b), _shift_scale_grid(p, rng, 1000)))
        record(f"shift-scale b={b:g}", reports)

    for b in (2.0, -2.0, 3.0):
        reports = []
        for _ in range(20):
            p = _scale_problem(b, rng)
            dom = p.max_domain()
            grid = _signed_log_grid(rng, 1000, lambda x: dom.contains(x) and dom.contains(b * x))
            reports.append(oracle.residual_sweep(p.evaluate, PureScale(b), grid))
        record(f"scale b={b:g}", reports)

    for kind, eq in (("even", EvenParity()), ("odd", OddParity())):
        reports = []
        for _ in range(20):
            a = rng.uniform(1, 10)
            rep = f"[0,{a!r})" if kind == "even" else f"(0,{a!r})"
            p = parity.make_parity_problem(kind, InitialData.single(rep, rng.choice(FUNCS)), parity.symmetric_domain(a))
            grid = [rng.uniform(-a, a) for _ in range(1000)]
            grid = [x if -a < x < a else 0.0 for x in grid]
            reports.append(oracle.residual_sweep(p.extend, eq, grid))
        record(f"parity {kind}", reports)

    reports = []
    for _ in range(20):
        parts, sides = [], rng.choice(["pos", "neg", "both"])
        if sides in ("neg", "both"):
            d = rng.uniform(0.1, 3)
            parts.append(f"({-3 * d!r},{-d!r}]")
        if sides in ("pos", "both"):
            e = rng.uniform(0.1, 3)
            parts.append(f"[{e!r},{3 * e!r})")
        p = three_term.make_three_term_problem(InitialData.single("u".join(parts), rng.choice(FUNCS)))
        ok_side = (lambda x: x < 0) if sides == "neg" else (lambda x: x > 0) if sides == "pos" else (lambda x: True)
        grid = []
        while len(grid) < 1000:
            x = rng.choice([-1, 1]) * 10 ** rng.uniform(-2.5, 1.5)
            if ok_side(x):
                grid.append(x)
        reports.append(oracle.residual_sweep(lambda t, p=p: three_term.evaluate(p, t), ThreeTerm(), grid))
    record("three-term", reports)
    return subs


# -- 4 ----------------------------------------------------------------------

def criterion_4() -> list[Sub]:
    rng = random.Random(4)
    worst, bad = 0.0, 0
    for _ in range(10_000):
        s = rng.choice([-1, 1]) * 10 ** rng.uniform(-1, 1)
        m = AffineMap(s, rng.uniform(-10, 10))
        x0 = rng.uniform(-100, 100)
        n = rng.randint(0, 60)
        loop, closed = oracle.iterate_loop(m, x0, n), iterate_closed(m, x0, n)
        err = abs(loop - closed) / max(abs(loop), abs(closed), 1e-300)
        worst = max(worst, err)
        bad += err > 1e-9
    subs = [Sub("closed form vs loop, 10^4 triples", bad == 0, f"{bad} over 1e-9, worst {worst:.3g}")]

    worst_ratio = 0.0
    for b, anchor in ((-0.5, 1.0), (0.5, 1.5)):
        p = shift_scale.make_problem(b, InitialData.single(shift_scale.canonical_set(b, anchor), "x"))
        c = p.limit
        for _ in range(500):
            side = rng.choice([-1, 1]) if b < 0 else 1
            x = c + side * 10 ** rng.uniform(-3, 6)
            t = shift_scale.trace(p, x)
            radii = [abs(pt - c) for pt in t.points]
            for r0, r1 in zip(radii, radii[1:]):
                inner, outer = (r1, r0) if t.exponent > 0 else (r0, r1)
                worst_ratio = max(worst_ratio, _rel(inner, abs(b) * outer))
    subs.append(Sub("|x_n+1 - bx*| = |b| |x_n - bx*| along traces", worst_ratio <= 1e-12, f"worst rel {worst_ratio:.3g}"))
    return subs


# -- 5 ----------------------------------------------------------------------

def criterion_5() -> list[Sub]:
    subs = []
    x0, b = 1.5, 0.5
    fam = [interval_family(x0, b, k) for k in range(1, 21)]
    x20 = x0
    for _ in range(20):
        x20 = x20 / b + 1 / b
    ok = fam[0].lo == x0 + 1 and fam[-1].hi == x20 + 1 and all(a.hi == c.lo for a, c in zip(fam, fam[1:]))
    subs.append(Sub("I_1..I_20 tile [x0+1, x20+1)", ok, "gap or overlap at a shared endpoint"))

    left = [interval_family(x0, b, -k) for k in range(1, 41)]
    ok = left[0].hi == b * x0 and all(c.hi == a.lo for a, c in zip(left, left[1:]))
    subs.append(Sub("I_-1..I_-40 tile toward the limit point", ok, "gap or overlap"))

    up = [Interval(2.0 ** n, 2.0 ** (n + 1)) for n in range(1, 41)]
    down = [Interval(2.0 ** -(n + 1), 2.0 ** -n) for n in range(0, 41)]
    ok = all(a.hi == c.lo for a, c in zip(up, up[1:])) and all(c.hi == a.lo for a, c in zip(down, down[1:]))
    subs.append(Sub("dyadic tilings", ok and up[0].lo == 2.0 and down[0].hi == 1.0, "gap or overlap"))

    rng = random.Random(5)
    bad = 0
    for _ in range(10_000):
        bb = rng.choice([0.5, 0.25, 0.8, 2.0, 3.0])
        x0r = xstar(bb) + rng.choice([-1, 1]) * rng.uniform(0.1, 5)
        sign = 1 if x0r > xstar(bb) else -1
        x = bb / (bb - 1) + sign * 10 ** rng.uniform(-6, 6)
        k = locate_index(x, x0r, bb)
        bad += not interval_family(x0r, bb, k).contains(x)
    subs.append(Sub("locate_index agrees with membership, 10^4 points", bad == 0, f"{bad} mismatches"))
    return subs


# -- 6 ----------------------------------------------------------------------

def criterion_6() -> list[Sub]:
    cases = [
        (PureScale(2), 1, 2, WellPosed),
        (PureScale(2), 1, 3, Overdetermined),
        (PureScale(2), 1, 1.5, Underdetermined),
        (ThreeTerm(), 1, 3, WellPosed),
        (ThreeTerm(), 1, 4, Overdetermined),
        (ThreeTerm(), 1, 2, Underdetermined),
    ]
    subs = []
    for eq, a, c, want in cases:
        for lam in (1.0, 0.1, 7.0):
            got = classify(eq, Interval(lam * a, lam * c))
            name = f"{type(eq).__name__} [{lam * a:g},{lam * c:g})"
            subs.append(Sub(name, isinstance(got, want), f"got {got.verdict}, want {want.verdict}"))
    over = classify(PureScale(2), Interval(1.0, 3.0))
    subs.append(Sub("redundant part [2,3)", over.redundant == Interval(2.0, 3.0), str(over.redundant)))
    wp = classify(ThreeTerm(), Interval(1.0, 3.0))
    subs.append(Sub("three-term I_max [0,inf)", str(wp.i_max) == "[0,inf)", str(wp.i_max)))
    return subs


# -- 7 ----------------------------------------------------------------------

def criterion_7() -> list[Sub]:
    subs = []
    for eq, text, expected in GATE_TABLE:
        v = validate_initial_set(eq, parse_union(text))
        if expected is None:
            ok = v is None
        else:
            ok = isinstance(v, PenlpViolation) and math.isclose(v.limit_point, expected, rel_tol=1e-15)
        subs.append(Sub(f"{type(eq).__name__} {text}", ok, f"got {v}"))
    return subs


# -- 8 ----------------------------------------------------------------------

def criterion_8() -> list[Sub]:
    subs = []
    for f in ("cos(2*pi*x)", "sin(pi*x)"):
        p = shift_scale.make_problem(-1, InitialData.single("[0.5,2.5)", f))
        closed = expr.compile_expr(f)
        worst = 0.0
        for i in range(1, 8000):
            x = -1.5 + 4.0 * i / 8000
            worst = max(worst, abs(p.evaluate(x) - closed(x)))
        subs.append(Sub(f"b=-1 extension of {f}", worst <= 1e-9, f"max abs err {worst:.3g}"))

    rng = random.Random(8)
    bad = total = 0
    for b, eps in ((-0.5, 1.0), (-0.3, 2.0), (-0.9, 0.4), (-2.0, 0.5), (-3.0, 1.0)):
        p = shift_scale.make_problem(b, InitialData.single(shift_scale.canonical_set(b, eps), "x"))
        for _ in range(400):
            x = p.limit + rng.choice([-1, 1]) * 10 ** rng.uniform(-4, 4)
            sides = shift_scale.trace(p, x).sides
            total += 1
            bad += any(s == u for s, u in zip(sides, sides[1:]))
    subs.append(Sub("iterates alternate sides on b<0 traces", bad == 0, f"{bad} of {total} traces"))
    return subs


# -- 9 ----------------------------------------------------------------------

def _cli(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(list(argv))
    return code, out.getvalue(), err.getvalue()


def _round_trips(csv_text: str) -> bool:
    for line in csv_text.splitlines()[1:]:
        if line.startswith("#"):
            continue
        for cell in line.split(","):
            try:
                v = float(cell)
            except ValueError:
                continue
            if format(v, ".17g") != cell and not (cell == "0" and v == 0):
                return False
    return True


def criterion_9() -> list[Sub]:
    subs = []
    code, out, _ = _cli("eval", "--equation", "scale", "--b", "2", "--init-set", "[1,2)", "--init-fn", "x", "3.0")
    subs.append(Sub("eval scale row 3,1.5", code == 0 and out.splitlines() == ["x,y", "3,1.5"] and _round_trips(out), repr(out)))
    code, out, _ = _cli("eval", "--equation", "shift-scale", "--b", "1", "--init-set", "[0,1)", "--init-fn", "x^2", "2.5")
    subs.append(Sub("eval periodic row 2.5,0.25", code == 0 and out.splitlines() == ["x,y", "2.5,0.25"], repr(out)))
    code, out, err = _cli("eval", "--equation", "scale", "--b", "2", "--init-set", "(-0.5,0.5)", "--init-fn", "x", "1")
    subs.append(Sub("eval limit point exit 2", code == 2 and out == "" and "limit point 0" in err, f"exit {code}, {err.strip()!r}"))

    for argv, want in (
        (("--equation", "three-term", "--init-set", "[1,3)"), "well-posed; I_max=[0,inf)"),
        (("--equation", "scale", "--b", "2", "--init-set", "[1,3)"), "overdetermined; redundant=[2,3)"),
    ):
        code, out, _ = _cli("classify", *argv)
        subs.append(Sub(f"classify -> {want}", code == 0 and out.strip() == want, repr(out)))
    code, out, _ = _cli("classify", "--equation", "three-term", "--init-set", "[1,2)")
    ok = code == 0 and out.startswith("underdetermined; I_max=...u[1,2)u[3,6)") and out.strip().endswith("u...")
    subs.append(Sub("classify three-term [1,2) underdetermined", ok, repr(out)))

    code, out, _ = _cli("trace", "--equation", "shift-scale", "--b", "0.5", "--init-set", "[0.75,2.5)", "--init-fn", "x", "3.0")
    rows = [tuple(float(c) for c in line.split(",")[:2]) for line in out.splitlines()[1:]]
    subs.append(Sub("trace rows (0,3),(1,1)", code == 0 and rows == [(0, 3.0), (1, 1.0)] and _round_trips(out), repr(out)))

    base = ("witness", "--equation", "three-term", "--init-set", "(0,1)", "--init-fn", "x^2", "1.2", "--depths", "1,2")
    code, out, _ = _cli(*base, "--unsafe")
    verdict = out.splitlines()[-1].split(",") if out else []
    ok = code == 0 and verdict[:2] == ["# verdict", "INCONSISTENT"]
    subs.append(Sub("witness verdict INCONSISTENT", ok and _round_trips(out), repr(out)))
    v1, v2 = (float(verdict[2]), float(verdict[3])) if ok else (math.nan, math.nan)
    subs.append(Sub("witness value 0.8", _rel(v1, 0.8) <= 1e-12, f"got {v1!r}"))
    subs.append(Sub("witness value 101/225", _rel(v2, 101 / 225) <= 1e-12, f"got {v2!r}, expected {101 / 225!r}"))
    code, out, _ = _cli("witness", "--equation", "three-term", "--init-set", "(0,1)", "--init-fn", "0.5*x", "1.2", "--depths", "1,2,3", "--unsafe")
    subs.append(Sub("witness linear CONSISTENT", code == 0 and "CONSISTENT" in out.splitlines()[-1] and "INCONSISTENT" not in out, repr(out)))
    code, out, _ = _cli(*base)
    subs.append(Sub("witness without --unsafe exit 2", code == 2 and out == "", f"exit {code}"))
    return subs


CRITERIA = {
    1: ("scale example piecewise table", criterion_1),
    2: ("three-term binomial inconsistency", criterion_2),
    3: ("residual suites", criterion_3),
    4: ("closed form vs loop and shrinking radius", criterion_4),
    5: ("partition properties", criterion_5),
    6: ("classification verdicts", criterion_6),
    7: ("limit-point gate table", criterion_7),
    8: ("b=-1 solutions and oscillation", criterion_8),
    9: ("CLI contract", criterion_9),
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    title, fn = CRITERIA[n]
    subs = fn()
    line = _line(n, title, subs)
    with capsys.disabled():
        print("\n" + line)
    assert all(s.ok for s in subs), line


if __name__ == "__main__":
    failed = 0
    for n, (title, fn) in sorted(CRITERIA.items()):
        subs = fn()
        print(_line(n, title, subs))
        failed += not all(s.ok for s in subs)
    sys.exit(1 if failed else 0)
