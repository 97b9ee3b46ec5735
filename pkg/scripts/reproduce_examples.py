"""Recompute the worked examples: the scale piecewise table, the three-term
binomial values and the b = -1 closed-form solutions."""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from fe_ivp import expr, scale, shift_scale, three_term
from fe_ivp.core import fmt_real
from fe_ivp.initial import InitialData


@dataclass
class Config:
    blocks: int = 4
    samples: int = 3
    depths: int = 4


def scale_table(cfg: Config) -> None:
    p = scale.make_scale_problem(2, InitialData.single("[1,2)", "x"))
    print("# y(x) = y(2x), y = x on [1,2)")
    print("n,x,y,x/2^n")
    for n in range(-cfg.blocks, cfg.blocks + 1):
        for j in range(cfg.samples):
            x = 2.0 ** n * (1 + j / cfg.samples)
            print(f"{n},{fmt_real(x)},{fmt_real(p.evaluate(x))},{fmt_real(x / 2.0 ** n)}")


def binomial_values(cfg: Config) -> None:
    print("# y(3x) = y(x) + y(2x), f = x^2 on (0, eps): sum_r C(n,r) f(2^r x / 3^n) at x = 1.2")
    print("n,float,exact")
    x = Fraction(6, 5)
    for n in range(1, cfg.depths + 1):
        exact = sum(Fraction(three_term.binomial_coefficients(n)[r]) * (Fraction(2) ** r * x / 3 ** n) ** 2 for r in range(n + 1))
        print(f"{n},{fmt_real(three_term.binomial_expand('x^2', 1.2, n))},{exact}")


def reflection_solutions() -> None:
    print("# y(x+1) = y(-x) from data on [1/2, 5/2)")
    print("f,max_abs_err_on_(-1.5,2.5)")
    for f in ("cos(2*pi*x)", "sin(pi*x)"):
        p = shift_scale.make_problem(-1, InitialData.single("[0.5,2.5)", f))
        g = expr.compile_expr(f)
        err = max(abs(p.evaluate(x) - g(x)) for x in (-1.5 + 4 * i / 4000 for i in range(1, 4000)))
        print(f"{f},{err:.3g}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--blocks", type=int, default=Config.blocks)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--depths", type=int, default=Config.depths)
    cfg = Config(**vars(ap.parse_args()))
    scale_table(cfg)
    binomial_values(cfg)
    reflection_solutions()


if __name__ == "__main__":
    main()
