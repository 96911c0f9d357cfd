"""Directed transport between two clouds of boundary states.

Shows the forward/backward transport values between random measures: the
ground cost is not symmetric for n >= 2, so the two directions differ.
The n = 1 case (plain squared-distance transport) stays symmetric.
"""

import numpy as np

from msdcost import DiscreteMeasure, w2_uniform


def main():
    rng = np.random.default_rng(7)
    m, d, h = 12, 2, 1.0
    print(f"m={m} points, d={d}, h={h}")
    for n in range(1, 5):
        mu = DiscreteMeasure.from_array(rng.normal(0.0, 1.0, (m, n, d)))
        nu = DiscreteMeasure.from_array(rng.normal(0.5, 1.0, (m, n, d)))
        fwd, _ = w2_uniform(mu, nu, h)
        bwd, _ = w2_uniform(nu, mu, h)
        print(
            f"n={n}: forward {fwd:12.6f}   backward {bwd:12.6f}"
            f"   |diff| {abs(fwd - bwd):.6f}"
        )


if __name__ == "__main__":
    main()
