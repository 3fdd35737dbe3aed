"""Convex plane curves represented by support-function samples.

A smooth strictly convex closed curve is stored as samples of its support
function h(theta) on a uniform periodic grid of normal angles.  All
differential quantities (h', h'', curvature) come from discrete-Fourier
differentiation, which is exact for band-limited h and spectrally accurate
otherwise.  Perimeter and area use the periodic rectangle rule:

    L = sum h dtheta            (Cauchy formula)
    A = 1/2 sum (h^2 - h'^2) dtheta

Strict convexity means h + h'' > 0 at every node; 1/(h + h'') is the radius
of curvature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_GRID_N = 256

# h + h'' below this fraction of max|h| counts as a convexity violation;
# guards the 1/(h + h'') singularity.
CONVEXITY_RTOL = 1e-9


class ConvexityError(ValueError):
    """Raised when h + h'' fails to stay positive."""


class GridMismatchError(ValueError):
    """Raised when two objects live on different angle grids."""


@dataclass(frozen=True)
class AngleGrid:
    """Uniform half-open grid theta_j = 2 pi j / n over [0, 2 pi)."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 16 or self.n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 16, got {self.n}")

    @property
    def delta(self) -> float:
        return 2.0 * np.pi / self.n

    @cached_property
    def thetas(self) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(self.n) / self.n
        t.flags.writeable = False
        return t

    @cached_property
    def unit_vectors(self) -> np.ndarray:
        """Outward normals u(theta_j) = (cos, sin), shape (n, 2)."""
        u = np.stack([np.cos(self.thetas), np.sin(self.thetas)], axis=1)
        u.flags.writeable = False
        return u


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


def _spectral_derivatives(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = h.size
    c = np.fft.rfft(h)
    k = np.arange(c.size)
    c1 = c * (1j * k)
    c1[-1] = 0.0  # Nyquist mode has no well-defined odd derivative
    c2 = c * -(k * k)
    return np.fft.irfft(c1, n), np.fft.irfft(c2, n)


def convexity_margin(h: np.ndarray) -> float:
    """min(h + h'') computed spectrally; positive for strictly convex curves."""
    _, h2 = _spectral_derivatives(np.asarray(h, dtype=float))
    return float(np.min(h + h2))


@dataclass(frozen=True)
class SupportCurve:
    """Immutable convex curve: support samples h(theta_j) on an AngleGrid.

    The constructor enforces strict convexity (h + h'' > 0 at every node,
    relative to max|h|) and freezes the sample array, so instances are safe
    to share across workers.
    """

    grid: AngleGrid
    h: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        h = _freeze(self.h)
        if h.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} support samples, got {h.shape}")
        object.__setattr__(self, "h", h)
        margin = convexity_margin(h)
        if margin <= CONVEXITY_RTOL * float(np.max(np.abs(h))):
            raise ConvexityError(
                f"convexity violation: min(h + h'') = {margin:.3e}"
            )

    @property
    def n(self) -> int:
        return self.grid.n


@dataclass(frozen=True)
class CurveScalars:
    """Perimeter, area and curvature extremes of a convex curve."""

    length: float
    area: float
    k_min: float
    k_max: float

    @property
    def deficit(self) -> float:
        """Euclidean isoperimetric deficit L^2 - 4 pi A."""
        return self.length**2 - 4.0 * np.pi * self.area

    @property
    def ratio(self) -> float:
        return self.length**2 / self.area


def make_circle(radius: float, center: tuple[float, float] = (0.0, 0.0),
                n: int = DEFAULT_GRID_N) -> SupportCurve:
    """Circle of given radius; h(theta) = radius + center . u(theta)."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    grid = AngleGrid(n)
    c = np.asarray(center, dtype=float)
    h = radius + grid.unit_vectors @ c
    return SupportCurve(grid, h, label=f"circle(r={radius})")


def make_ellipse(a: float, b: float, n: int = DEFAULT_GRID_N) -> SupportCurve:
    """Origin-centered axis-aligned ellipse, h = sqrt(a^2 cos^2 + b^2 sin^2)."""
    if b <= 0 or a < b:
        raise ValueError(f"semi-axes must satisfy a >= b > 0, got a={a}, b={b}")
    grid = AngleGrid(n)
    t = grid.thetas
    h = np.sqrt(a * a * np.cos(t) ** 2 + b * b * np.sin(t) ** 2)
    return SupportCurve(grid, h, label=f"ellipse({a},{b})")


def make_random_convex(seed: int, max_harmonic: int = 6, margin: float = 0.2,
                       n: int = DEFAULT_GRID_N) -> SupportCurve:
    """Seeded random strictly convex curve.

    h = c0 + sum_{m=2..max_harmonic} (a_m cos m theta + b_m sin m theta),
    harmonic m = 1 excluded (it is a pure translation).  The harmonic
    amplitudes are rescaled so that min(h + h'') >= margin * c0.
    """
    if max_harmonic < 2:
        raise ValueError("max_harmonic must be >= 2")
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    grid = AngleGrid(n)
    t = grid.thetas
    c0 = 1.0
    wave = np.zeros(n)       # harmonic part of h
    wave_pp = np.zeros(n)    # its second derivative
    for m in range(2, max_harmonic + 1):
        am, bm = rng.normal(0.0, 0.5 / (m * m), size=2)
        term = am * np.cos(m * t) + bm * np.sin(m * t)
        wave += term
        wave_pp += -(m * m) * term
    # min(h + h'') = c0 + min(wave + wave_pp); shrink amplitudes if needed
    dip = float(np.min(wave + wave_pp))
    budget = (1.0 - margin) * c0
    if dip < -budget:
        scale = budget / (-dip)
        wave *= scale
    return SupportCurve(grid, c0 + wave, label=f"random(seed={seed})")


def derivatives(curve: SupportCurve) -> tuple[np.ndarray, np.ndarray]:
    """(h', h'') at the grid nodes by discrete-Fourier differentiation."""
    return _spectral_derivatives(curve.h)


def scalars(curve: SupportCurve) -> CurveScalars:
    """Perimeter, area and curvature extremes.

    L = sum h dtheta, A = 1/2 sum (h^2 - h'^2) dtheta, k = 1/(h + h'').
    """
    h = curve.h
    h1, h2 = _spectral_derivatives(h)
    q = h + h2
    if np.min(q) <= 0:
        raise ConvexityError("convexity violation: h + h'' <= 0 at a node")
    d = curve.grid.delta
    length = float(np.sum(h) * d)
    area = float(0.5 * np.sum(h * h - h1 * h1) * d)
    return CurveScalars(length=length, area=area,
                        k_min=float(1.0 / np.max(q)),
                        k_max=float(1.0 / np.min(q)))


def _trig_eval(samples: np.ndarray, theta: np.ndarray, order: int = 0) -> np.ndarray:
    """Trigonometric interpolation of periodic grid samples at angles theta.

    Shares the Fourier coefficients with the grid differentiation, so
    on-grid evaluations reproduce node values and derivatives exactly.
    """
    n = samples.size
    c = np.fft.rfft(samples) / n
    k = np.arange(c.size)
    weights = np.full(c.size, 2.0)
    weights[0] = 1.0
    weights[-1] = 1.0
    if order > 0:
        c = c * (1j * k) ** order
        if order % 2 == 1:
            c[-1] = 0.0
    return (weights * c * np.exp(1j * np.outer(theta, k))).sum(axis=1).real


def evaluate_support(curve: SupportCurve, theta, order: int = 0) -> np.ndarray | float:
    """h (or a derivative) at arbitrary angles by trigonometric interpolation."""
    theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
    vals = _trig_eval(curve.h, theta_arr, order)
    if np.isscalar(theta) or np.ndim(theta) == 0:
        return float(vals[0])
    return vals


def boundary_point(curve: SupportCurve, theta) -> np.ndarray:
    """Boundary point with outward normal u(theta): X = h u + h' u_perp."""
    h = evaluate_support(curve, theta, order=0)
    h1 = evaluate_support(curve, theta, order=1)
    th = np.asarray(theta, dtype=float)
    u = np.stack([np.cos(th), np.sin(th)], axis=-1)
    uperp = np.stack([-np.sin(th), np.cos(th)], axis=-1)
    return np.asarray(h)[..., None] * u + np.asarray(h1)[..., None] * uperp


def translate(curve: SupportCurve, v: tuple[float, float]) -> SupportCurve:
    """Shift the curve by v; h picks up v . u(theta), L and A are unchanged."""
    vv = np.asarray(v, dtype=float)
    h = curve.h + curve.grid.unit_vectors @ vv
    return SupportCurve(curve.grid, h, label=curve.label)


def contains_point(curve: SupportCurve, p: tuple[float, float]) -> bool:
    """True iff p lies inside (or on) the curve: h(theta_j) - p . u_j >= 0 for all j."""
    pp = np.asarray(p, dtype=float)
    return bool(np.min(curve.h - curve.grid.unit_vectors @ pp) >= 0.0)
