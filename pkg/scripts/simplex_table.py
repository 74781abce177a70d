"""Tabulate Simplex codes: measured parameters, best feasible locality and the bound at r=2."""
import argparse
import sys

from lrcbench.bounds import BoundQuery, KOptProvider, cm_bound, min_feasible_locality
from lrcbench.code import locality_of, min_distance
from lrcbench.constructions import build_simplex


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--m-max", type=int, default=5)
    args = p.parse_args(argv)
    plot = KOptProvider.plotkin()
    print("m,n,k,d,r,min_feasible_r,bound_at_r2")
    for m in range(2, args.m_max + 1):
        code = build_simplex(m).code
        d = min_distance(code)
        r, _ = locality_of(code)
        best = min_feasible_locality(code.n, code.k, d, 2, plot)
        bound = cm_bound(BoundQuery(code.n, d, 2, 2), plot).bound
        print(f"{m},{code.n},{code.k},{d},{r},{best},{bound:g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
