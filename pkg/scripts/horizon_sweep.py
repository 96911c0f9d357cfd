"""Sweep the horizon for rest-to-rest unit moves and fit the scaling slope.

The cost of a fixed boundary pair scales like h**(1-2n); the fitted
log-log slope printed per order should match 1-2n to rounding.
"""

import numpy as np

from msdcost import cost, make_problem


def main():
    horizons = np.geomspace(0.25, 8.0, 11)
    print(f"{'h':>8}  " + "  ".join(f"n={n:>14}" for n in range(1, 5)))
    table = {}
    for n in range(1, 5):
        x = np.zeros(n)
        y = np.zeros(n)
        y[0] = 1.0
        table[n] = [cost(make_problem(h, x, y)).total for h in horizons]
    for i, h in enumerate(horizons):
        print(f"{h:8.3f}  " + "  ".join(f"{table[n][i]:16.6e}" for n in range(1, 5)))
    print()
    for n in range(1, 5):
        slope = np.polyfit(np.log(horizons), np.log(table[n]), 1)[0]
        print(f"n={n}: fitted slope {slope:+.12f}   expected {1 - 2 * n:+d}")


if __name__ == "__main__":
    main()
