"""Symmetric Minkowski geometries: isoperimetrix, mixed areas, gauge lengths.

A plane Minkowski geometry is encoded by its isoperimetrix T, the convex
body that minimizes gauge length of the boundary at fixed area.  We store
the Euclidean support samples h~ of T on the normal-angle grid; the
unit-ball radial function is r = 1/h~ on the same grid.  Central symmetry
of the unit ball makes h~ pi-periodic.

Key quantities:

    V(K, M)  = sum (h_K h_M - h_K' h_M') dtheta     mixed area, V(K,K) = 2A
    alpha    = V(T, T) / 2                          half mixed area of T
    gauge length of dK = V(K, T)                    equals sum h~ ds over dK
    gamma    = h~ (h~ + h~'')                       weight of the natural flow

With the Euclidean gauge (h~ = 1) everything reduces to the classical
formulas and alpha = pi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .support_curve import (
    DEFAULT_GRID_N,
    AngleGrid,
    ConvexityError,
    GridMismatchError,
    SupportCurve,
    _freeze,
    _spectral_derivatives,
)

SYMMETRY_ATOL = 1e-10


class SymmetryError(ValueError):
    """Raised when a gauge support function is not pi-periodic."""


@dataclass(frozen=True)
class Gauge:
    """Immutable Minkowski geometry.

    Fields: isoperimetrix support samples h_tilde, unit-ball radial samples
    radial = 1/h_tilde, half mixed area alpha = V(T,T)/2, and the flow
    weight gamma = h_tilde (h_tilde + h_tilde'').
    """

    grid: AngleGrid
    h_tilde: np.ndarray
    radial: np.ndarray
    alpha: float
    gamma: np.ndarray
    label: str = ""

    @property
    def n(self) -> int:
        return self.grid.n


def _build_gauge(grid: AngleGrid, h_tilde: np.ndarray, label: str) -> Gauge:
    ht = np.asarray(h_tilde, dtype=float)
    if ht.shape != (grid.n,):
        raise ValueError(f"expected {grid.n} gauge samples, got {ht.shape}")
    if np.min(ht) <= 0:
        raise ValueError("isoperimetrix support must be strictly positive")
    half = grid.n // 2
    sym_gap = float(np.max(np.abs(ht - np.roll(ht, half))))
    if sym_gap > SYMMETRY_ATOL * max(1.0, float(np.max(ht))):
        raise SymmetryError(
            f"gauge must be pi-periodic (central symmetry); gap {sym_gap:.3e}"
        )
    h1, h2 = _spectral_derivatives(ht)
    q = ht + h2
    if np.min(q) <= 0:
        raise ConvexityError("gauge convexity violation: h~ + h~'' <= 0")
    alpha = float(0.5 * np.sum(ht * ht - h1 * h1) * grid.delta)
    gamma = ht * q
    return Gauge(grid=grid, h_tilde=_freeze(ht), radial=_freeze(1.0 / ht),
                 alpha=alpha, gamma=_freeze(gamma), label=label)


def gauge_euclidean(n: int = DEFAULT_GRID_N) -> Gauge:
    """Euclidean geometry: isoperimetrix and unit ball are both the unit circle."""
    grid = AngleGrid(n)
    return _build_gauge(grid, np.ones(n), label="euclidean")


def gauge_from_support(h_tilde: np.ndarray, label: str = "gauge") -> Gauge:
    """Gauge from isoperimetrix support samples (must be pi-periodic, convex)."""
    ht = np.asarray(h_tilde, dtype=float)
    return _build_gauge(AngleGrid(ht.size), ht, label=label)


def make_random_gauge(seed: int, max_even_harmonic: int = 4, margin: float = 0.3,
                      n: int = DEFAULT_GRID_N) -> Gauge:
    """Seeded random gauge: h~ = 1 + even harmonics, rescaled so min(h~ + h~'') >= margin.

    Even harmonics only, so pi-periodicity holds by construction.
    """
    if max_even_harmonic < 2 or max_even_harmonic % 2 != 0:
        raise ValueError("max_even_harmonic must be even and >= 2")
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    grid = AngleGrid(n)
    t = grid.thetas
    wave = np.zeros(n)
    wave_pp = np.zeros(n)
    for m in range(2, max_even_harmonic + 1, 2):
        am, bm = rng.normal(0.0, 0.5 / (m * m), size=2)
        term = am * np.cos(m * t) + bm * np.sin(m * t)
        wave += term
        wave_pp += -(m * m) * term
    dip = float(np.min(wave + wave_pp))
    budget = 1.0 - margin
    if dip < -budget:
        wave *= budget / (-dip)
    return _build_gauge(grid, 1.0 + wave, label=f"random_gauge(seed={seed})")


@dataclass(frozen=True)
class MinkowskiScalars:
    """Gauge perimeter, Euclidean area and the isoperimetric ratio L^2/A."""

    length: float
    area: float
    ratio: float

    def deficit(self, alpha: float) -> float:
        return self.length**2 - 4.0 * alpha * self.area


def _support_of(obj) -> np.ndarray:
    if isinstance(obj, SupportCurve):
        return obj.h
    if isinstance(obj, Gauge):
        return obj.h_tilde
    raise TypeError(f"expected SupportCurve or Gauge, got {type(obj).__name__}")


def _grid_of(obj) -> AngleGrid:
    return obj.grid


def mixed_area(p, q) -> float:
    """Mixed area V(P, Q) = sum (h_P h_Q - h_P' h_Q') dtheta.

    Symmetric bilinear form on convex bodies; V(K, K) is twice the area.
    Arguments may be SupportCurve or Gauge (the gauge stands for its
    isoperimetrix).
    """
    gp, gq = _grid_of(p), _grid_of(q)
    if gp.n != gq.n:
        raise GridMismatchError(f"grid mismatch: {gp.n} vs {gq.n}")
    hp, hq = _support_of(p), _support_of(q)
    hp1, _ = _spectral_derivatives(hp)
    hq1, _ = _spectral_derivatives(hq)
    return float(np.sum(hp * hq - hp1 * hq1) * gp.delta)


def minkowski_length(curve: SupportCurve, gauge: Gauge) -> MinkowskiScalars:
    """Gauge perimeter of the curve: V(K, T), cross-checked via sum h~ ds.

    ds = (h + h'') dtheta, so the two quadratures agree up to round-off;
    a mismatch signals corrupted inputs.
    """
    if curve.grid.n != gauge.grid.n:
        raise GridMismatchError(f"grid mismatch: {curve.grid.n} vs {gauge.grid.n}")
    length = mixed_area(curve, gauge)
    _, h2 = _spectral_derivatives(curve.h)
    length_ds = float(np.sum(gauge.h_tilde * (curve.h + h2)) * curve.grid.delta)
    if abs(length - length_ds) > 1e-10 * abs(length):
        raise AssertionError(
            f"gauge length cross-check failed: {length!r} vs {length_ds!r}"
        )
    h1, _ = _spectral_derivatives(curve.h)
    area = float(0.5 * np.sum(curve.h**2 - h1**2) * curve.grid.delta)
    return MinkowskiScalars(length=length, area=area, ratio=length**2 / area)
