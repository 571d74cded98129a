"""Optimal-cover construction for sets embedded in the plane.

A single optimal covering set on ``[0, delta]`` is the region under the
border ``f(x) = c2 * x**(D_E - d_h)``. Its area

    phi(delta) = c1 * delta**(D_E - (d_h - 1)),   c1 = c2 / (D_E - d_h + 1)

solves ``phi(alpha delta) = alpha**(D_E - d_h + 1) phi(delta)``. Together
with the count rule ``N'(alpha delta) = N'(delta) / alpha`` the cover area
obeys ``S(alpha delta) = alpha**(D_E - d_h) S(delta)``.

At d_h = 1 the border is a straight ramp (triangle); at d_h = 2 it is flat
(rectangle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import DomainError

AMBIENT_DIMENSION = 2


def _check_dh(d_h: float, ambient_dimension: int = AMBIENT_DIMENSION) -> None:
    if not (ambient_dimension - 1 <= d_h <= ambient_dimension):
        raise DomainError(
            f"d_h must lie in [{ambient_dimension - 1}, {ambient_dimension}], got {d_h}"
        )


def _check_positive(**values: float) -> None:
    for name, v in values.items():
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name} must be a positive finite number, got {v}")


def area_exponent(d_h: float, ambient_dimension: int = AMBIENT_DIMENSION) -> float:
    """Exponent ``D_E - (d_h - 1)`` of the single-set area law."""
    return ambient_dimension - (d_h - 1.0)


def border_exponent(d_h: float, ambient_dimension: int = AMBIENT_DIMENSION) -> float:
    """Exponent ``D_E - d_h`` of the border f(x)."""
    return ambient_dimension - d_h


def c1_from_c2(c2: float, d_h: float, ambient_dimension: int = AMBIENT_DIMENSION) -> float:
    return c2 / area_exponent(d_h, ambient_dimension)


@dataclass(frozen=True, eq=False)
class CoverShape:
    ambient_dimension: int
    d_h: float
    delta: float
    c2: float
    c1: float
    profile: np.ndarray
    area_closed_form: float

    @property
    def x(self) -> np.ndarray:
        return self.profile[:, 0]

    @property
    def f_x(self) -> np.ndarray:
        return self.profile[:, 1]


@dataclass(frozen=True)
class OptimalCoverPlan:
    """N'(delta) measured at a reference scale."""

    base_count: float
    reference_delta: float
    d_h: float
    ambient_dimension: int = AMBIENT_DIMENSION

    def __post_init__(self) -> None:
        _check_positive(base_count=self.base_count, reference_delta=self.reference_delta)
        _check_dh(self.d_h, self.ambient_dimension)


def optimal_set_area(
    delta: float, d_h: float, c1: float = 1.0, ambient_dimension: int = AMBIENT_DIMENSION
) -> float:
    """phi(delta) = c1 * delta**(D_E - (d_h - 1))."""
    _check_positive(delta=delta, c1=c1)
    _check_dh(d_h, ambient_dimension)
    return c1 * delta ** area_exponent(d_h, ambient_dimension)


def check_phi_scaling(
    delta: float, alpha: float, d_h: float, c1: float = 1.0,
    ambient_dimension: int = AMBIENT_DIMENSION,
) -> float:
    """Relative error of ``phi(alpha delta) = alpha**p phi(delta)``, p = D_E - d_h + 1."""
    _check_positive(delta=delta, alpha=alpha)
    lhs = optimal_set_area(alpha * delta, d_h, c1, ambient_dimension)
    rhs = alpha ** area_exponent(d_h, ambient_dimension) * optimal_set_area(
        delta, d_h, c1, ambient_dimension
    )
    return abs(lhs - rhs) / lhs


def shape_profile(
    delta: float, d_h: float, c2: float = 1.0, n_samples: int = 512,
    ambient_dimension: int = AMBIENT_DIMENSION,
) -> CoverShape:
    """Sample the border ``y = c2 * x**(D_E - d_h)`` uniformly on [0, delta]."""
    _check_positive(delta=delta, c2=c2)
    _check_dh(d_h, ambient_dimension)
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples}")
    a = border_exponent(d_h, ambient_dimension)
    x = np.linspace(0.0, delta, n_samples)
    # 0**0 == 1 keeps the rectangle case flat from x = 0
    y = c2 * np.power(x, a)
    profile = np.column_stack((x, y))
    profile.setflags(write=False)
    p = area_exponent(d_h, ambient_dimension)
    return CoverShape(
        ambient_dimension=ambient_dimension,
        d_h=float(d_h),
        delta=float(delta),
        c2=float(c2),
        c1=c1_from_c2(c2, d_h, ambient_dimension),
        profile=profile,
        area_closed_form=c2 * delta**p / p,
    )


def trapezoid_area(shape: CoverShape) -> float:
    """Plain composite trapezoid rule over the sampled profile."""
    return float(np.trapezoid(shape.f_x, shape.x))


def shape_area_numeric(shape: CoverShape, endpoint_correction: bool = True) -> float:
    """Numerical area under the sampled border.

    Composite trapezoid rule on the uniform samples. For a non-integer
    border exponent ``0 < a < 1`` the integrand behaves like ``k * x**a``
    at the origin and the trapezoid error is dominated by
    ``zeta(-a) * k * h**(1 + a)`` (generalized Euler-Maclaurin expansion
    for algebraic endpoint singularities). With ``endpoint_correction``
    that term is subtracted, with ``k`` read off the first non-zero sample.
    The closed-form area is not used.
    """
    x, y = shape.x, shape.f_x
    if x.size < 2:
        raise DomainError("profile needs at least 2 samples")
    total = trapezoid_area(shape)
    a = border_exponent(shape.d_h, shape.ambient_dimension)
    if endpoint_correction and 0.0 < a < 1.0:
        h = x[1] - x[0]
        k = y[1] / x[1] ** a
        total -= float(zeta(-a)) * k * h ** (1.0 + a)
    return total


def optimal_count(plan: OptimalCoverPlan, alpha: float) -> float:
    """N'(alpha delta) = N'(delta) / alpha."""
    _check_positive(alpha=alpha)
    return plan.base_count / alpha


def compose_cover_area(plan: OptimalCoverPlan, alpha: float, c1: float = 1.0) -> float:
    """S(alpha delta) = N'(alpha delta) * phi(alpha delta)."""
    return optimal_count(plan, alpha) * optimal_set_area(
        alpha * plan.reference_delta, plan.d_h, c1, plan.ambient_dimension
    )


def cover_scaling_error(plan: OptimalCoverPlan, alpha: float, c1: float = 1.0) -> float:
    """Relative error of ``S(alpha delta) / S(delta)`` against ``alpha**(D_E - d_h)``."""
    ratio = compose_cover_area(plan, alpha, c1) / compose_cover_area(plan, 1.0, c1)
    expected = alpha ** border_exponent(plan.d_h, plan.ambient_dimension)
    return abs(ratio - expected) / expected
