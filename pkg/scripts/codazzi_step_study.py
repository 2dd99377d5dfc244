"""Codazzi residual against the finite-difference step h, showing the O(h^2) truncation regime."""
import argparse

import numpy as np

from transurf.geomcore import SurfacePatch, codazzi_residual_grid, fixture


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("alpha", nargs="?", default="fourier")
    p.add_argument("beta", nargs="?", default="helix(1,2)")
    p.add_argument("--grid", type=int, default=32)
    args = p.parse_args(argv)
    S = SurfacePatch.from_curves(fixture(args.alpha), fixture(args.beta))
    us, vs = S.grid(args.grid, args.grid)
    print("h,codazzi_L,codazzi_N")
    for h in (1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5):
        c1, c2 = codazzi_residual_grid(S, us, vs, h)
        print(f"{h!r},{float(np.nanmax(c1))!r},{float(np.nanmax(c2))!r}")


if __name__ == "__main__":
    main()
