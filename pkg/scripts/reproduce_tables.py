#!/usr/bin/env python3
"""Evaluate the bundled catalog of optimal transforms at 8, 16, and 32
points and print the metric tables (2-decimal presentation)."""

import argparse

from dctapprox import (
    CATALOG,
    SignalModel,
    build_scaled,
    evaluate,
    evaluate_matrix,
)

HEADER = f"{'j':>3} {'epsilon':>9} {'mse':>6} {'cg':>6} {'eta':>7} {'adds':>5} {'shifts':>7}"


def print_table(size: int, rho: float) -> None:
    print(f"\n{size}-point metrics at rho={rho}")
    print(HEADER)
    for j, pv in CATALOG.items():
        if size == 8:
            rep = evaluate(pv, SignalModel(rho=rho, n=8))
            row = (rep.epsilon, rep.mse, rep.coding_gain_db, rep.efficiency_pct,
                   rep.additions, rep.shifts)
        else:
            st = build_scaled(pv, size)
            eps, m, cg, eta = evaluate_matrix(
                st.transform.matrix, SignalModel(rho=rho, n=size)
            )
            row = (eps, m, cg, eta, st.complexity.additions, st.complexity.shifts)
        print(f"{j:>3} {row[0]:>9.2f} {row[1]:>6.2f} {row[2]:>6.2f} "
              f"{row[3]:>7.2f} {row[4]:>5d} {row[5]:>7d}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rho", type=float, default=0.95)
    parser.add_argument("--sizes", default="8,16,32",
                        help="comma-separated subset of 8,16,32")
    args = parser.parse_args()
    for size in (int(s) for s in args.sizes.split(",")):
        print_table(size, args.rho)


if __name__ == "__main__":
    main()
