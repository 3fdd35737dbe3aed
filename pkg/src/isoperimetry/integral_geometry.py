"""Monte Carlo verification of the planar integral-geometry identities.

Translative kinematic measure (dx dy over positions of a moving convex
body) yields closed forms for the expected boundary-crossing count n and
the overlap indicator nu against a fixed convex curve K with gauge length
L, area A and gauge constant alpha:

    sum n  dx dy           = 4 r L                     (Poincare)
    sum nu dx dy           = r^2 alpha + A + r L       (Blaschke)
    sum (n/2 - nu) dx dy   = r L - A - alpha r^2       (Bonnesen integrand)

where the moving body is the r-scaled isoperimetrix.  In the Euclidean
case rotations are isometries too, giving sum n dx dy dphi = 4 L1 L2 and
sum nu dx dy dphi = 2 pi (A1 + A2) + L1 L2, and lines sampled with the
invariant measure dp dtheta meet the boundary in 2L expected crossings
(theta over [0, pi); a 2 pi domain would double the target).

The region-balance tally splits overlapping placements into n = 0 (one
body strictly inside the other) versus n >= 4, the two populations whose
measures balance at the minimal-annulus radii and force the Bonnesen
functional to be non-negative there.

Sampling is deterministic: sample i draws its coordinates from a
counter-based hash of (seed, i), so estimates do not depend on batching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .annulus import AnnulusResult
from .minkowski import Gauge, minkowski_length
from .support_curve import SupportCurve, _trig_eval, translate

# Unoriented lines: theta in [0, pi). With this domain the Crofton target
# for a convex curve is 2L.
CROFTON_ANGLE_SPAN = float(np.pi)

# Sampling boxes are the tight bounding box of the relevant support sum,
# widened by this fraction; the integrand vanishes on the pad.
BOX_PAD = 0.01


@dataclass(frozen=True)
class MCConfig:
    """Sample count, RNG seed, and probe count M on the moving boundary."""

    n_samples: int = 100_000
    seed: int = 0
    boundary_probes: int = 512

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError("n_samples must be positive")
        if self.boundary_probes < 128 or self.boundary_probes % 2 != 0:
            raise ValueError("boundary_probes must be even and >= 128")


@dataclass(frozen=True)
class MCReport:
    """Monte Carlo estimate with standard error and closed-form target."""

    estimate: float
    std_error: float
    n_samples: int
    target: float
    z: float


@dataclass(frozen=True)
class RegionTally:
    """Areas of the n = 0 and n >= 4 overlap regions with 1-sigma radii."""

    measure_neg: float
    measure_pos4: float
    sigma_neg: float
    sigma_pos4: float
    n_samples: int
    box_area: float


@dataclass(frozen=True)
class ClassifiedSamples:
    """Per-placement classification; centers are reproducible from the seed."""

    nu: np.ndarray
    crossings: np.ndarray
    centers: np.ndarray
    box_area: float


def overlap(curve: SupportCurve, gauge: Gauge, r: float,
            c: tuple[float, float]) -> int:
    """1 iff the moving body r T + c touches the curve's body.

    Separating-direction test on the support sum: overlap iff
    min_j (h_j + r h~_j - c . u_j) >= 0 (tangency counts as touching).
    """
    cc = np.asarray(c, dtype=float)
    hsum = curve.h + r * gauge.h_tilde
    return int(np.min(hsum - curve.grid.unit_vectors @ cc) >= 0.0)


def _gauge_probe_offsets(gauge: Gauge, r: float, m: int) -> np.ndarray:
    """Boundary points of r T in body frame at m uniform normal angles."""
    psi = 2.0 * np.pi * np.arange(m) / m
    ht = _trig_eval(gauge.h_tilde, psi, 0)
    ht1 = _trig_eval(gauge.h_tilde, psi, 1)
    u = np.stack([np.cos(psi), np.sin(psi)], axis=1)
    uperp = np.stack([-np.sin(psi), np.cos(psi)], axis=1)
    return r * (ht[:, None] * u + ht1[:, None] * uperp)


def _curve_probe_offsets(curve: SupportCurve, m: int) -> np.ndarray:
    psi = 2.0 * np.pi * np.arange(m) / m
    h = _trig_eval(curve.h, psi, 0)
    h1 = _trig_eval(curve.h, psi, 1)
    u = np.stack([np.cos(psi), np.sin(psi)], axis=1)
    uperp = np.stack([-np.sin(psi), np.cos(psi)], axis=1)
    return h[:, None] * u + h1[:, None] * uperp


def _alternations(inside: np.ndarray) -> int:
    return int(np.sum(inside != np.roll(inside, 1)))


def crossing_count(curve: SupportCurve, gauge: Gauge, r: float,
                   c: tuple[float, float], probes: int = 512) -> int:
    """Boundary crossings of the moving body r T + c with the curve.

    Probes the moving boundary at `probes` points, tests each against the
    node half-planes of the fixed curve, and counts inside/outside
    alternations around the loop (always even).
    """
    if probes % 2 != 0:
        raise ValueError("probes must be even")
    pts = _gauge_probe_offsets(gauge, r, probes) + np.asarray(c, dtype=float)
    margins = curve.h[None, :] - pts @ curve.grid.unit_vectors.T
    inside = margins.min(axis=1) >= 0.0
    return _alternations(inside)


def _steiner_point(h: np.ndarray, u: np.ndarray, delta: float) -> np.ndarray:
    """Interior reference point (1/pi) sum h u dtheta; lies inside any
    convex body, used as the radial-table center."""
    return delta / np.pi * (h @ u)


def _support_at_cardinals(samples: np.ndarray) -> np.ndarray:
    return _trig_eval(samples, np.array([0.0, 0.5, 1.0, 1.5]) * np.pi, 0)


def _padded_box(east: float, north: float, west: float, south: float):
    x_lo, x_hi = -west, east
    y_lo, y_hi = -south, north
    pad_x = 0.5 * BOX_PAD * (x_hi - x_lo)
    pad_y = 0.5 * BOX_PAD * (y_hi - y_lo)
    x_lo -= pad_x
    x_hi += pad_x
    y_lo -= pad_y
    y_hi += pad_y
    return x_lo, y_lo, x_hi - x_lo, y_hi - y_lo


def _body_tables(h: np.ndarray, u: np.ndarray, delta: float):
    x0 = _steiner_point(h, u, delta)
    return (x0, *_kernels.polygon_tables(h, u, x0))


# classifications are pure functions of (curve, gauge, r, cfg); memoize the
# few most recent so the three identity estimates share one sampling pass
_CLASSIFY_CACHE: dict[tuple, ClassifiedSamples] = {}
_CLASSIFY_CACHE_MAX = 4


def classify_placements(curve: SupportCurve, gauge: Gauge, r: float,
                        cfg: MCConfig, need_crossings: bool = True) -> ClassifiedSamples:
    """Classify cfg.n_samples placements of r T against the fixed curve.

    Centers are uniform on the padded bounding box of the support-sum body
    {c : nu(c) = 1}.  Returns per-sample nu, crossing counts (zeros when
    need_crossings is false), the centers, and the box area.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    key = (curve.h.tobytes(), gauge.h_tilde.tobytes(), float(r),
           cfg.n_samples, cfg.seed, cfg.boundary_probes, need_crossings)
    hit = _CLASSIFY_CACHE.get(key)
    if hit is not None:
        return hit

    u = curve.grid.unit_vectors
    delta = curve.grid.delta
    hsum = curve.h + r * gauge.h_tilde
    card = _support_at_cardinals(hsum)
    box_x, box_y, box_w, box_h = _padded_box(card[0], card[1], card[2], card[3])

    offsets = _gauge_probe_offsets(gauge, r, cfg.boundary_probes)
    sx0, s_lohi, s_glo2, s_ghi2, s_vx, s_vy = _body_tables(hsum, u, delta)
    x0, lohi, glo2, ghi2, vx, vy = _body_tables(curve.h, u, delta)

    nu = np.empty(cfg.n_samples, dtype=np.int8)
    crossings = np.zeros(cfg.n_samples, dtype=np.int32)
    _kernels.classify_translative(
        _kernels.rng_base(cfg.seed, 0), _kernels.rng_base(cfg.seed, 1),
        cfg.n_samples, box_x, box_y, box_w, box_h,
        sx0[0], sx0[1], s_lohi, s_glo2, s_ghi2, s_vx, s_vy,
        need_crossings,
        np.ascontiguousarray(offsets[:, 0]), np.ascontiguousarray(offsets[:, 1]),
        x0[0], x0[1], lohi, glo2, ghi2, vx, vy,
        nu, crossings)

    idx = np.arange(cfg.n_samples)
    centers = np.stack([
        box_x + box_w * _kernels.counter_uniform(cfg.seed, idx, 0),
        box_y + box_h * _kernels.counter_uniform(cfg.seed, idx, 1),
    ], axis=1)
    result = ClassifiedSamples(nu=nu, crossings=crossings, centers=centers,
                               box_area=box_w * box_h)
    if len(_CLASSIFY_CACHE) >= _CLASSIFY_CACHE_MAX:
        _CLASSIFY_CACHE.pop(next(iter(_CLASSIFY_CACHE)))
    _CLASSIFY_CACHE[key] = result
    return result


def _report(f: np.ndarray, measure: float, target: float, n: int) -> MCReport:
    est = measure * float(np.mean(f))
    se = measure * float(np.std(f, ddof=1)) / np.sqrt(n)
    if se > 0:
        z = abs(est - target) / se
    else:
        z = 0.0 if est == target else float("inf")
    return MCReport(estimate=est, std_error=se, n_samples=n, target=target, z=z)


def mc_translative(curve: SupportCurve, gauge: Gauge, r: float, kind: str,
                   cfg: MCConfig) -> MCReport:
    """Translative estimate of the Poincare, Blaschke, or Bonnesen-integrand
    identity for the moving body r T, with its closed-form target."""
    need_n = kind in ("poincare", "bonnesen")
    samples = classify_placements(curve, gauge, r, cfg, need_crossings=need_n)
    ms = minkowski_length(curve, gauge)
    alpha = gauge.alpha
    if kind == "poincare":
        f = samples.crossings.astype(float)
        target = 4.0 * r * ms.length
    elif kind == "blaschke":
        f = samples.nu.astype(float)
        target = r * r * alpha + ms.area + r * ms.length
    elif kind == "bonnesen":
        f = 0.5 * samples.crossings - samples.nu
        target = r * ms.length - ms.area - alpha * r * r
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return _report(f, samples.box_area, target, cfg.n_samples)


def mc_euclidean_kinematic(fixed: SupportCurve, moving: SupportCurve, kind: str,
                           cfg: MCConfig) -> MCReport:
    """Euclidean kinematic (translations and rotations) Poincare/Blaschke
    estimate for two convex curves.

    The rotation angle is drawn on a fine uniform grid (a spectrally
    accurate quadrature of the smooth rotation integral), which lets the
    rotated support values used by the overlap test be precomputed exactly.
    """
    if kind not in ("poincare", "blaschke"):
        raise ValueError(f"unknown kind {kind!r}")
    n = fixed.grid.n
    fine = 32 * n
    psi = 2.0 * np.pi * np.arange(fine) / fine
    h1_fine = _trig_eval(moving.h, psi, 0)
    m1 = float(np.max(h1_fine))
    card = _support_at_cardinals(fixed.h)
    box_x, box_y, box_w, box_h = _padded_box(
        card[0] + m1, card[1] + m1, card[2] + m1, card[3] + m1)

    u = fixed.grid.unit_vectors
    offsets = _curve_probe_offsets(moving, cfg.boundary_probes)
    x0, lohi, glo2, ghi2, vx, vy = _body_tables(fixed.h, u, fixed.grid.delta)

    need_n = kind == "poincare"
    nu = np.empty(cfg.n_samples, dtype=np.int8)
    crossings = np.zeros(cfg.n_samples, dtype=np.int32)
    _kernels.classify_kinematic(
        _kernels.rng_base(cfg.seed, 0), _kernels.rng_base(cfg.seed, 1),
        _kernels.rng_base(cfg.seed, 2),
        cfg.n_samples, box_x, box_y, box_w, box_h,
        np.ascontiguousarray(fixed.h),
        np.ascontiguousarray(u[:, 0]), np.ascontiguousarray(u[:, 1]),
        np.ascontiguousarray(h1_fine), np.cos(psi), np.sin(psi), fine // n,
        need_n,
        np.ascontiguousarray(offsets[:, 0]), np.ascontiguousarray(offsets[:, 1]),
        x0[0], x0[1], lohi, glo2, ghi2, vx, vy,
        nu, crossings)

    from .support_curve import scalars as curve_scalars
    s0 = curve_scalars(fixed)
    s1 = curve_scalars(moving)
    if kind == "poincare":
        f = crossings.astype(float)
        target = 4.0 * s0.length * s1.length
    else:
        f = nu.astype(float)
        target = 2.0 * np.pi * (s0.area + s1.area) + s0.length * s1.length
    measure = box_w * box_h * 2.0 * np.pi
    return _report(f, measure, target, cfg.n_samples)


def mc_crofton(curve: SupportCurve, cfg: MCConfig,
               pad_fraction: float = 0.05) -> MCReport:
    """Line-measure estimate of the boundary length: lines (theta, p) with
    theta uniform on [0, CROFTON_ANGLE_SPAN) and signed offset p on the
    padded support interval meet the convex boundary twice when
    -h(theta+pi) < p < h(theta); the target is 2L."""
    n_fine = 8192
    psi = 2.0 * np.pi * np.arange(n_fine + 1) / n_fine
    h_fine = _trig_eval(curve.h, psi, 0)

    idx = np.arange(cfg.n_samples)
    theta = CROFTON_ANGLE_SPAN * _kernels.counter_uniform(cfg.seed, idx, 0)
    h_fwd = np.interp(theta, psi, h_fine)
    h_bwd = np.interp(np.mod(theta + np.pi, 2.0 * np.pi), psi, h_fine)
    width = h_fwd + h_bwd
    pad = pad_fraction * width
    span = width + 2.0 * pad
    p = -h_bwd - pad + span * _kernels.counter_uniform(cfg.seed, idx, 1)
    hits = 2.0 * ((p > -h_bwd) & (p < h_fwd))
    f = hits * span  # per-theta measure weight
    from .support_curve import scalars as curve_scalars
    target = 2.0 * curve_scalars(curve).length
    return _report(f, CROFTON_ANGLE_SPAN, target, cfg.n_samples)


def averaging_balance(curve: SupportCurve, gauge: Gauge,
                      annulus: AnnulusResult, which: str,
                      cfg: MCConfig) -> RegionTally:
    """Region balance at an annulus radius: measures of the placements with
    n = 0 (one body strictly inside the other) and with n >= 4, both under
    nu = 1, for the moving body at r = rho_in or rho_out of the annulus.

    The fixed curve is re-based at the annulus center first.
    """
    if annulus.degenerate:
        raise ValueError("region balance requires a non-degenerate annulus")
    if which == "inner":
        r = annulus.rho_in
    elif which == "outer":
        r = annulus.rho_out
    else:
        raise ValueError(f"which must be 'inner' or 'outer', got {which!r}")
    based = translate(curve, (-annulus.center[0], -annulus.center[1]))
    samples = classify_placements(based, gauge, r, cfg, need_crossings=True)
    overlapping = samples.nu == 1
    neg = overlapping & (samples.crossings == 0)
    pos4 = overlapping & (samples.crossings >= 4)
    n = cfg.n_samples
    p_neg = float(np.mean(neg))
    p_pos = float(np.mean(pos4))
    area = samples.box_area
    return RegionTally(
        measure_neg=area * p_neg,
        measure_pos4=area * p_pos,
        sigma_neg=area * float(np.sqrt(p_neg * (1.0 - p_neg) / n)),
        sigma_pos4=area * float(np.sqrt(p_pos * (1.0 - p_pos) / n)),
        n_samples=n,
        box_area=area,
    )
