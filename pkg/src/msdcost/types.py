"""Value types and exceptions shared across the package.

All arrays follow one stacking convention: a boundary state is an (n, d)
array whose row k holds the k-th derivative of the curve at that endpoint
(units length/time**k), with d the spatial dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Input outside the supported domain (order, horizon, shapes, sizes)."""


class SingularMatrixError(DomainError):
    """Pivot fell below the singularity threshold during elimination."""


class ConsistencyError(ArithmeticError):
    """A quantity violated an identity far beyond rounding noise."""


def _as_state_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DomainError(f"boundary values must be an (n, d) array, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise DomainError("boundary values must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BoundaryState:
    """Derivative stack (position through (n-1)-th derivative) at one endpoint.

    ``values`` has shape (n, d); a 1-D input of length n is promoted to
    (n, 1).
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_state_array(self.values))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class CostProblem:
    """Two-point boundary problem: order n, horizon h > 0, endpoints start/end."""

    n: int
    h: float
    d: int
    start: BoundaryState
    end: BoundaryState

    def __post_init__(self):
        if self.start.n != self.n or self.end.n != self.n:
            raise DomainError(
                f"endpoint order mismatch: n={self.n}, start has {self.start.n} rows,"
                f" end has {self.end.n}"
            )
        if self.start.d != self.d or self.end.d != self.d:
            raise DomainError(
                f"endpoint dimension mismatch: d={self.d}, start has {self.start.d},"
                f" end has {self.end.d}"
            )
        if not (self.h > 0.0) or not np.isfinite(self.h):
            raise DomainError(f"horizon must be positive and finite, got h={self.h}")


def make_problem(h: float, x, y) -> CostProblem:
    """Build a CostProblem from raw (n, d) or length-n boundary arrays."""
    start = BoundaryState(x)
    end = BoundaryState(y)
    if start.n != end.n or start.d != end.d:
        raise DomainError(
            f"endpoint shapes differ: start {start.values.shape} vs end {end.values.shape}"
        )
    return CostProblem(n=start.n, h=float(h), d=start.d, start=start, end=end)


@dataclass(frozen=True)
class TrajectoryPolynomial:
    """Optimal curve coefficients: row i of ``coeffs`` is a_i in sum a_i t**i.

    The polynomial has degree at most 2n-1 (2n coefficient rows, d columns).
    """

    n: int
    h: float
    d: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=float, copy=True)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.shape != (2 * self.n, self.d):
            raise DomainError(
                f"coefficient array must have shape {(2 * self.n, self.d)}, got {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)


@dataclass(frozen=True)
class CostBreakdown:
    """Cost value plus the route that produced it and the gap vector b.

    ``clamped`` marks totals in [-1e-9, 0) that were reported as 0 because
    the negative sign was numerical noise on a nonnegative quadratic form.
    """

    total: float
    route: str
    b: np.ndarray
    clamped: bool = False


@dataclass(frozen=True)
class DiscreteMeasure:
    """Uniformly weighted point set in boundary-state space (weights 1/m)."""

    points: tuple[BoundaryState, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise DomainError("a discrete measure needs at least one point")
        n, d = pts[0].n, pts[0].d
        for k, p in enumerate(pts):
            if p.n != n or p.d != d:
                raise DomainError(
                    f"measure point {k} has shape {(p.n, p.d)}, expected {(n, d)}"
                )
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return self.points[0].n

    @property
    def d(self) -> int:
        return self.points[0].d

    @classmethod
    def from_array(cls, arr) -> "DiscreteMeasure":
        """Build from an (m, n, d) array (or (m, n), promoted to d=1)."""
        a = np.asarray(arr, dtype=float)
        if a.ndim == 2:
            a = a[:, :, None]
        if a.ndim != 3:
            raise DomainError(f"expected an (m, n, d) array, got shape {a.shape}")
        return cls(tuple(BoundaryState(a[k]) for k in range(a.shape[0])))
