"""Numba inner loops: flow time-stepping and Monte Carlo classification.

Everything here is a performance twin of the pure-numpy operations defined
in the public modules; the arithmetic is identical (same update formulas,
same inside/outside convention), only batched.  Randomness is counter-based:
each sample's coordinates are a pure function of (seed, sample index, dim),
so results are bit-identical regardless of batching.

Point-in-body tests use the node half-plane criterion
min_j (h_j - p . u_j) >= 0.  For bulk work this is served by a radial
lookup table around an interior point x0: over any direction sector the
polygon radial is at least the smaller endpoint radial and at most that
value plus a Lipschitz slack, so a probe radius below/above those bounds
is classified immediately and only the thin undecided band falls back to
the exact O(n) test.  Table entries are float32 rounded outward, keeping
the fast path conservative.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# splitmix64-style counter hashing
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SEED_MUL = 0xD1342543DE82EF95
_IDX_MUL = 0x9E3779B97F4A7C15
_DIM_MUL = 0x8CB92BA72F3D8DD7
_U64 = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0  # 2^-53

TABLE_BINS = 4096


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def _u01(base, index):
    """Uniform double in [0, 1) from a precomputed (seed, dim) base and index."""
    z = _mix64(base + np.uint64(index) * np.uint64(_IDX_MUL))
    return (z >> np.uint64(11)) * _INV53


def rng_base(seed: int, dim: int) -> np.uint64:
    """Counter-RNG stream constant for (seed, dim)."""
    return np.uint64((seed * _SEED_MUL + dim * _DIM_MUL) & _U64)


def counter_uniform(seed: int, indices: np.ndarray, dim: int) -> np.ndarray:
    """Vectorized twin of the kernel RNG; bit-identical values."""
    z = indices.astype(np.uint64) * np.uint64(_IDX_MUL) + rng_base(seed, dim)
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * _INV53


@njit(cache=True, inline="always")
def _diamond(dx, dy):
    """Monotone pseudo-angle in [0, 4); quadrant-wise rational substitute
    for atan2 used only as a table index."""
    ax = abs(dx)
    ay = abs(dy)
    s = ax + ay
    if s == 0.0:
        return 0.0
    if dx >= 0.0 and dy >= 0.0:
        return ay / s
    if dx < 0.0 and dy >= 0.0:
        return 1.0 + ax / s
    if dx < 0.0:
        return 2.0 + ay / s
    return 3.0 + ax / s


@njit(cache=True, inline="always")
def _point_inside(dx, dy, lohi, glo2, ghi2, vx, vy):
    """Half-plane membership via radial table with exact fallback.

    dx, dy are coordinates relative to the table center x0.  Returns 1 when
    min_j (h_j - p . u_j) >= 0 and 0 otherwise.
    """
    r2 = dx * dx + dy * dy
    if r2 <= glo2:
        return 1
    if r2 >= ghi2:
        return 0
    tbins = lohi.shape[0] >> 1
    idx = int(_diamond(dx, dy) * 0.25 * tbins)
    if idx >= tbins:
        idx = tbins - 1
    if r2 <= lohi[2 * idx]:
        return 1
    if r2 >= lohi[2 * idx + 1]:
        return 0
    for j in range(vx.shape[0]):
        if dx * vx[j] + dy * vy[j] > 1.0:
            return 0
    return 1


def polygon_tables(h: np.ndarray, u: np.ndarray, x0: np.ndarray,
                   tbins: int = TABLE_BINS):
    """Radial classification tables for the body {p : p . u_j <= h_j}.

    Returns (lohi, glo2, ghi2, vx, vy): interleaved squared lower/upper
    radial bounds per pseudo-angle bin (float32, rounded outward), global
    squared bounds, and the polar directions u_j / (h_j - x0 . u_j) used by
    the exact fallback.  x0 must be strictly interior.
    """
    hp = h - u @ x0
    dmin = float(np.min(hp))
    if dmin <= 0:
        raise ValueError("table center must be strictly inside the body")
    # bin boundary directions: invert the pseudo-angle at t = 4 m / tbins
    t = 4.0 * np.arange(tbins + 1) / tbins
    q = np.floor(t).astype(int) % 4
    f = t - np.floor(t)
    dx = np.select([q == 0, q == 1, q == 2, q == 3],
                   [1.0 - f, -f, -(1.0 - f), f])
    dy = np.select([q == 0, q == 1, q == 2, q == 3],
                   [f, 1.0 - f, -f, -(1.0 - f)])
    norm = np.hypot(dx, dy)
    wx, wy = dx / norm, dy / norm
    rho = np.empty(tbins + 1)
    block = 4096
    for s in range(0, tbins + 1, block):
        w = np.stack([wx[s:s + block], wy[s:s + block]], axis=1)
        dots = w @ u.T
        with np.errstate(divide="ignore"):
            cand = np.where(dots > 0.0, hp[None, :] / dots, np.inf)
        rho[s:s + block] = cand.min(axis=1)
    lo = np.minimum(rho[:-1], rho[1:])
    # per-bin true angular width and radial Lipschitz bound rho_max^2 / dmin
    ang = np.unwrap(np.arctan2(wy, wx))
    dphi = np.abs(np.diff(ang))
    hi = lo + (float(np.max(rho)) ** 2 / dmin) * dphi
    lo2 = np.nextafter((lo * lo).astype(np.float32), np.float32(0.0))
    hi2 = np.nextafter((hi * hi).astype(np.float32), np.float32(np.inf))
    lohi = np.empty(2 * tbins, dtype=np.float32)
    lohi[0::2] = lo2
    lohi[1::2] = hi2
    return (lohi, float(lo2.min()), float(hi2.max()),
            np.ascontiguousarray(u[:, 0] / hp), np.ascontiguousarray(u[:, 1] / hp))


@njit(cache=True)
def advance_flow(h, d2, gamma, gamma_max, dtheta2, safety, conv_rel,
                 max_steps, t0):
    """Explicit Euler steps h <- h - dt gamma / (h + h''), dt from the
    parabolic bound dt = safety dtheta^2 min(h+h'')^2 / (4 max gamma).

    Mutates h in place.  Returns (t, steps_done, ok); ok false means the
    convexity margin dropped below conv_rel * max|h| before stepping.
    """
    n = h.shape[0]
    small = n <= 64
    t = t0
    q = np.empty(n)
    for step in range(max_steps):
        if small:
            for j in range(n):
                acc = 0.0
                for m in range(n):
                    acc += d2[j, m] * h[m]
                q[j] = h[j] + acc
        else:
            h2 = np.dot(d2, h)
            for j in range(n):
                q[j] = h[j] + h2[j]
        qmin = q[0]
        hmax = abs(h[0])
        for j in range(1, n):
            if q[j] < qmin:
                qmin = q[j]
            ah = abs(h[j])
            if ah > hmax:
                hmax = ah
        if qmin <= conv_rel * hmax:
            return t, step, False
        dt = safety * dtheta2 * qmin * qmin / (4.0 * gamma_max)
        for j in range(n):
            h[j] -= dt * gamma[j] / q[j]
        t += dt
    return t, max_steps, True


@njit(cache=True)
def classify_translative(seed_base0, seed_base1, n_samples,
                         box_x, box_y, box_w, box_h,
                         s_x0x, s_x0y, s_lohi, s_glo2, s_ghi2, s_vx, s_vy,
                         need_n, bx, by,
                         x0x, x0y, lohi, glo2, ghi2, vx, vy,
                         out_nu, out_n):
    """Per-sample overlap indicator and boundary crossing count for a moving
    gauge body against a fixed curve.

    nu = 1 iff the center lies in the support-sum body h + r h~ (tested via
    its radial tables s_*).  n counts inside/outside alternations of the M
    probe points bx, by (moving-boundary offsets) around the loop; nu = 0
    means the bodies are disjoint, hence n = 0.
    """
    m_probes = bx.shape[0]
    for i in range(n_samples):
        cx = box_x + box_w * _u01(seed_base0, i)
        cy = box_y + box_h * _u01(seed_base1, i)
        nu = _point_inside(cx - s_x0x, cy - s_x0y, s_lohi, s_glo2, s_ghi2,
                           s_vx, s_vy)
        out_nu[i] = nu
        if need_n:
            if nu == 0:
                out_n[i] = 0
            else:
                s0 = _point_inside(cx + bx[0] - x0x, cy + by[0] - x0y,
                                   lohi, glo2, ghi2, vx, vy)
                prev = s0
                alt = 0
                for m in range(1, m_probes):
                    s = _point_inside(cx + bx[m] - x0x, cy + by[m] - x0y,
                                      lohi, glo2, ghi2, vx, vy)
                    if s != prev:
                        alt += 1
                    prev = s
                if prev != s0:
                    alt += 1
                out_n[i] = alt


@njit(cache=True)
def classify_kinematic(seed_base0, seed_base1, seed_base2, n_samples,
                       box_x, box_y, box_w, box_h,
                       h0, ux, uy,
                       h1_fine, cos_fine, sin_fine, stride,
                       need_n, b1x, b1y,
                       x0x, x0y, lohi, glo2, ghi2, vx, vy,
                       out_nu, out_n):
    """Translations plus rotations of a moving convex body against a fixed one.

    The rotation angle is drawn on the fine grid of h1_fine (size F), so the
    moving support h1(theta_j + pi - phi) needed for the overlap test lands
    exactly on precomputed values; stride = F / n.  Probe points b1 are the
    moving boundary in body frame, rotated per sample.
    """
    n = h0.shape[0]
    fine = h1_fine.shape[0]
    half = fine // 2
    m_probes = b1x.shape[0]
    for i in range(n_samples):
        cx = box_x + box_w * _u01(seed_base0, i)
        cy = box_y + box_h * _u01(seed_base1, i)
        mphi = int(_u01(seed_base2, i) * fine)
        if mphi >= fine:
            mphi = fine - 1
        cphi = cos_fine[mphi]
        sphi = sin_fine[mphi]
        nu = 1
        base = half - mphi
        for j in range(n):
            idx = (j * stride + base) % fine
            if h0[j] + h1_fine[idx] - cx * ux[j] - cy * uy[j] < 0.0:
                nu = 0
                break
        out_nu[i] = nu
        if need_n:
            if nu == 0:
                out_n[i] = 0
            else:
                px = cphi * b1x[0] - sphi * b1y[0] + cx
                py = sphi * b1x[0] + cphi * b1y[0] + cy
                s0 = _point_inside(px - x0x, py - x0y, lohi, glo2, ghi2, vx, vy)
                prev = s0
                alt = 0
                for m in range(1, m_probes):
                    px = cphi * b1x[m] - sphi * b1y[m] + cx
                    py = sphi * b1x[m] + cphi * b1y[m] + cy
                    s = _point_inside(px - x0x, py - x0y, lohi, glo2, ghi2,
                                      vx, vy)
                    if s != prev:
                        alt += 1
                    prev = s
                if prev != s0:
                    alt += 1
                out_n[i] = alt
