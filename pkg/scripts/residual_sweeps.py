"""Residual of the defining equation for random well-posed problems of each
family, plus agreement with the brute-force reference evaluators."""
import argparse
import random
from dataclasses import dataclass

from fe_ivp import oracle, parity, scale, shift_scale, three_term
from fe_ivp.core import xstar
from fe_ivp.initial import InitialData
from fe_ivp.penlp import EvenParity, OddParity, PureScale, ShiftScale, ThreeTerm

FUNCS = ["sin(3*x)+x^2", "exp(x/4)", "x", "cos(x)-x^3/10", "1/(1+x^2)"]


@dataclass
class Config:
    problems: int = 10
    points: int = 500
    seed: int = 0


def _anchor(b: float, rng: random.Random) -> float:
    if b == 1:
        return rng.uniform(-5, 5)
    if b > 0:
        return xstar(b) + rng.choice([-1, 1]) * rng.uniform(0.2, 5)
    return rng.uniform(0.2, 5)


def shift_scale_rows(cfg: Config, rng: random.Random):
    for b in (0.5, 2.0, 1.0, -0.5, -2.0, -1.0):
        for _ in range(cfg.problems):
            p = shift_scale.make_problem(b, InitialData.single(shift_scale.canonical_set(b, _anchor(b, rng)), rng.choice(FUNCS)))
            dom = p.max_domain()
            lo, hi = (1 - (p.anchor + 1), p.anchor + 1) if b == -1 else (-40, 40)
            grid = []
            while len(grid) < cfg.points:
                x = rng.uniform(lo, hi)
                if dom.contains(x) and dom.contains(x + 1) and dom.contains(b * x):
                    grid.append(x)
            rep = oracle.residual_sweep(p.evaluate, ShiftScale(b), grid)
            diff = max(abs(p.evaluate(x) - oracle.brute_shift_scale(p.initial, b, x)) for x in grid[:50])
            yield rep, diff


def scale_rows(cfg: Config, rng: random.Random):
    for b in (2.0, -2.0, 3.0):
        for _ in range(cfg.problems):
            e = rng.uniform(0.1, 5)
            where = f"({b * e!r},{-e!r}]u[{e!r},{-b * e!r})" if b < 0 else f"[{e!r},{b * e!r})"
            p = scale.make_scale_problem(b, InitialData.single(where, rng.choice(FUNCS)))
            sign = (lambda: rng.choice([-1, 1])) if b < 0 else (lambda: 1)
            grid = [sign() * 10 ** rng.uniform(-3, 3) for _ in range(cfg.points)]
            rep = oracle.residual_sweep(p.evaluate, PureScale(b), grid)
            diff = max(abs(p.evaluate(x) - oracle.brute_scale(p.initial, p.b, x)) for x in grid[:50])
            yield rep, diff


def parity_rows(cfg: Config, rng: random.Random):
    for kind, eq in (("even", EvenParity()), ("odd", OddParity())):
        for _ in range(cfg.problems):
            a = rng.uniform(1, 10)
            rep_set = f"[0,{a!r})" if kind == "even" else f"(0,{a!r})"
            p = parity.make_parity_problem(kind, InitialData.single(rep_set, rng.choice(FUNCS)), parity.symmetric_domain(a))
            grid = [rng.uniform(-a, a) * 0.999 for _ in range(cfg.points)]
            rep = oracle.residual_sweep(p.extend, eq, grid)
            diff = max(abs(p.extend(x) - oracle.brute_parity(p.initial, kind == "odd", x)) for x in grid[:50])
            yield rep, diff


def three_term_rows(cfg: Config, rng: random.Random):
    for _ in range(cfg.problems):
        e = rng.uniform(0.1, 3)
        p = three_term.make_three_term_problem(InitialData.single(f"[{e!r},{3 * e!r})", rng.choice(FUNCS)))
        grid = [10 ** rng.uniform(-2.5, 1.5) for _ in range(cfg.points)]
        rep = oracle.residual_sweep(lambda t: three_term.evaluate(p, t), ThreeTerm(), grid)
        diff = max(abs(three_term.evaluate(p, x) - oracle.brute_three_term(p.initial, x)) for x in grid[:20])
        yield rep, diff


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--problems", type=int, default=Config.problems)
    ap.add_argument("--points", type=int, default=Config.points)
    ap.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    print("family,params,samples,max_abs_residual,argmax_point,scale,max_diff_vs_reference")
    for rows in (shift_scale_rows, scale_rows, parity_rows, three_term_rows):
        for rep, diff in rows(cfg, rng):
            print(f"{rep.csv_row()},{rep.scale!r},{diff!r}")


if __name__ == "__main__":
    main()
