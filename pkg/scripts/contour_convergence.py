"""Error of the trapezoidal resolvent quadrature versus node count and radius.

Prints one row per (n, radius factor, nodes) for z/(2-z) with the default test
function, showing geometric convergence until rounding level.
"""

import argparse

import numpy as np

from schroeder.checks import DEFAULT_TEST_FUNCTION
from schroeder.context import SymbolContext
from schroeder.koenigs import spiral
from schroeder.spectral import contour_verify, default_contour_radius
from schroeder.symbol import RationalMap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--nodes", type=int, nargs="+", default=[64, 96, 128, 192, 256])
    ap.add_argument("--factors", type=float, nargs="+", default=[1.0, 1.5, 1.8, 1.95])
    args = ap.parse_args()

    ctx = SymbolContext(RationalMap([0, 1], [2, -1]))
    z = 0.5 * ctx.eval_radius * spiral(5)
    print(f"{'n':>2} {'factor':>6} {'radius':>9} {'nodes':>5} {'error':>10}")
    for n in range(args.max_n + 1):
        base = default_contour_radius(ctx, n)
        for fac in args.factors:
            for m in args.nodes:
                out = contour_verify(ctx, n, DEFAULT_TEST_FUNCTION, z, nodes=m, radius=fac * base)
                print(f"{n:>2} {fac:>6.2f} {fac * base:>9.3e} {m:>5} {out['error']:>10.2e}")


if __name__ == "__main__":
    main()
