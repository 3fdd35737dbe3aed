"""Bonnesen functionals, deficits, root intervals and positive-center audits.

The gauge Bonnesen functional of a convex curve with gauge perimeter L,
area A and gauge constant alpha is the concave-down quadratic

    B(r) = r L - A - alpha r^2.

Its non-negativity interval [r_minus, r_plus] traps the inradius/outradius
interval, and B >= 0 anywhere implies the isoperimetric inequality
L^2 >= 4 alpha A.  A positive center is a base point for the support
function at which B(h/h~) >= 0 along the whole boundary; integrating that
pointwise inequality yields sum (h/h~)^2 dsigma <= L A / alpha, the bound
that drives monotonicity of the flow.  Euclidean geometry is the
alpha = pi, h~ = 1 special case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import Gauge, MinkowskiScalars, minkowski_length
from .support_curve import SupportCurve, _spectral_derivatives, translate

# B vanishes identically on circles; discretization noise must not flip
# the positive-center verdict, hence an area-scaled absolute tolerance.
AUDIT_RTOL = 1e-9


def bonnesen_value(r: float, scalars: MinkowskiScalars, alpha: float) -> float:
    """B(r) = r L - A - alpha r^2."""
    return r * scalars.length - scalars.area - alpha * r * r


@dataclass(frozen=True)
class BonnesenReport:
    """Deficit L^2 - 4 alpha A and, when it is non-negative, the roots of B."""

    deficit: float
    roots: tuple[float, float] | None

    @property
    def has_roots(self) -> bool:
        return self.roots is not None


def roots_and_deficit(scalars: MinkowskiScalars, alpha: float) -> BonnesenReport:
    """Roots r_± = (L ± sqrt(L^2 - 4 alpha A)) / (2 alpha) and the deficit.

    A negative deficit is reported, never raised: it falsifies the
    isoperimetric inequality and is caught by the acceptance suite.
    """
    deficit = scalars.deficit(alpha)
    if deficit < 0:
        return BonnesenReport(deficit=deficit, roots=None)
    s = float(np.sqrt(deficit))
    return BonnesenReport(
        deficit=deficit,
        roots=((scalars.length - s) / (2.0 * alpha), (scalars.length + s) / (2.0 * alpha)),
    )


@dataclass(frozen=True)
class PositiveCenterAudit:
    """Pointwise and integral checks of the positive-center property.

    min_value is the minimum of B(h/h~) over the boundary nodes and
    integral is sum (h/h~)^2 dsigma; the audit passes when the pointwise
    minimum is non-negative up to discretization noise.  Whenever the
    pointwise check holds, integral <= bound follows.
    """

    origin: tuple[float, float]
    min_value: float
    integral: float
    bound: float
    passed: bool
    relative_support: np.ndarray
    functional_values: np.ndarray


def positive_center_audit(curve: SupportCurve, gauge: Gauge,
                          origin: tuple[float, float]) -> PositiveCenterAudit:
    """Audit whether `origin` is a (relative) positive center of the curve.

    Re-bases the support function at origin, evaluates B((h/h~)(theta_j))
    at every node and the integral sum (h/h~)^2 h~ (h + h'') dtheta
    (dsigma = h~ ds), and compares the integral against L A / alpha.
    """
    o = np.asarray(origin, dtype=float)
    if np.min(curve.h - curve.grid.unit_vectors @ o) <= 0.0:
        raise ValueError(f"origin {tuple(o)} is not strictly inside the curve")
    based = translate(curve, -o)
    ms = minkowski_length(based, gauge)
    g = based.h / gauge.h_tilde
    b = g * ms.length - ms.area - gauge.alpha * g * g
    _, h2 = _spectral_derivatives(based.h)
    dsigma = gauge.h_tilde * (based.h + h2) * curve.grid.delta
    integral = float(np.sum(g * g * dsigma))
    bound = ms.length * ms.area / gauge.alpha
    min_value = float(np.min(b))
    return PositiveCenterAudit(
        origin=(float(o[0]), float(o[1])),
        min_value=min_value,
        integral=integral,
        bound=bound,
        passed=min_value >= -AUDIT_RTOL * ms.area,
        relative_support=g,
        functional_values=b,
    )


def strong_bonnesen_gap(scalars: MinkowskiScalars, alpha: float,
                        rho_in: float, rho_out: float) -> float:
    """Slack of the strong Bonnesen inequality.

    Returns (L^2 - 4 alpha A) - alpha^2 (rho_out - rho_in)^2, which is
    non-negative whenever B is non-negative at both annulus radii.
    """
    return scalars.deficit(alpha) - alpha**2 * (rho_out - rho_in) ** 2
