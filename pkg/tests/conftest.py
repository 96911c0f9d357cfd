import numpy as np
import pytest

from msdcost import make_problem

# Seed for the shared random problem set; pinned so every run checks the
# exact same 200 problems.
ACCEPTANCE_SEED = 20260809


def seeded_problems(count=200, seed=ACCEPTANCE_SEED, n_max=8, d_max=3):
    """Random problems with n <= n_max, d <= d_max, h in [0.1, 10], values in [-5, 5]."""
    rng = np.random.default_rng(seed)
    problems = []
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        d = int(rng.integers(1, d_max + 1))
        h = float(rng.uniform(0.1, 10.0))
        x = rng.uniform(-5.0, 5.0, (n, d))
        y = rng.uniform(-5.0, 5.0, (n, d))
        problems.append(make_problem(h, x, y))
    return problems


@pytest.fixture(scope="session")
def random_problem_set():
    return seeded_problems()
