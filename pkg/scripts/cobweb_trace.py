"""Dump iterates x -> bx - b (or x -> x/b + 1) from a start point into the
initial set as CSV, for external cobweb plotting."""
import argparse
from dataclasses import dataclass

from fe_ivp import shift_scale
from fe_ivp.core import fmt_real
from fe_ivp.initial import InitialData


@dataclass
class Config:
    b: float = -0.5
    anchor: float = 1.0
    x: float = 40.0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=float, default=Config.b)
    ap.add_argument("--anchor", type=float, default=Config.anchor, help="x0 for b > 0, eps for b < 0")
    ap.add_argument("--x", type=float, default=Config.x)
    cfg = Config(**vars(ap.parse_args()))

    where = shift_scale.canonical_set(cfg.b, cfg.anchor)
    p = shift_scale.make_problem(cfg.b, InitialData.single(where, "x"))
    t = shift_scale.trace(p, cfg.x)
    print(f"# initial set {where}; limit point {fmt_real(p.limit) if p.limit is not None else 'none'}")
    print("n,x_n,side,radius,radius_ratio")
    prev = None
    for i, (pt, side) in enumerate(zip(t.points, t.sides)):
        r = abs(pt - p.limit) if p.limit is not None else float("nan")
        ratio = "" if prev in (None, 0) else fmt_real(r / prev)
        print(f"{i},{fmt_real(pt)},{side},{fmt_real(r)},{ratio}")
        prev = r


if __name__ == "__main__":
    main()
