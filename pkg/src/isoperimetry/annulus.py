"""Inradius, outradius, and the minimal-width annulus of a convex curve.

With the support function based at a candidate center c, the relative
support g_j(c) = (h(theta_j) - c . u_j) / h~(theta_j) is affine in c at
every node.  The three solvers are small linear programs over the node
constraints:

    inradius        max_c min_j g_j(c)
    outradius       min_c max_j g_j(c)
    minimal annulus min_c (max_j g_j(c) - min_j g_j(c))

For a non-degenerate optimum the contact nodes (where g touches the inner
or outer radius) alternate inner/outer around the curve, with at least two
of each.  Euclidean annuli are the h~ = 1 case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .minkowski import Gauge
from .support_curve import GridMismatchError, SupportCurve

# Contact points are meaningful only to grid resolution.
CONTACT_RTOL = 1e-6
CONTACT_FLOOR = 1e-9

# Curves homothetic to the isoperimetrix give a zero-width annulus and
# alternation is undefined.
DEGENERATE_RTOL = 1e-8


@dataclass(frozen=True)
class RadiiResult:
    """Inradius/outradius with their (generally different) optimal centers."""

    r_in: float
    r_out: float
    center_in: tuple[float, float]
    center_out: tuple[float, float]


@dataclass(frozen=True)
class AnnulusResult:
    """Minimal-width annulus: common center, radii, and contact nodes."""

    center: tuple[float, float]
    rho_in: float
    rho_out: float
    contacts: list[tuple[float, str]]
    objective: float
    degenerate: bool


def relative_support(curve: SupportCurve, gauge: Gauge,
                     center: tuple[float, float]) -> np.ndarray:
    """g_j(c) = (h(theta_j) - c . u_j) / h~(theta_j); affine in c per node."""
    if curve.grid.n != gauge.grid.n:
        raise GridMismatchError(f"grid mismatch: {curve.grid.n} vs {gauge.grid.n}")
    c = np.asarray(center, dtype=float)
    return (curve.h - curve.grid.unit_vectors @ c) / gauge.h_tilde


def _solve_lp(c_obj, a_ub, b_ub, what: str):
    res = linprog(c_obj, A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None)] * len(c_obj), method="highs")
    if not res.success:
        raise RuntimeError(f"{what} LP failed: {res.message}")
    return res.x


def inradius(curve: SupportCurve, gauge: Gauge) -> tuple[float, tuple[float, float]]:
    """Largest r with r T (translated) enclosed by the curve, and its center.

    Solved as: maximize s subject to s <= g_j(c) for all nodes j.
    """
    if curve.grid.n != gauge.grid.n:
        raise GridMismatchError(f"grid mismatch: {curve.grid.n} vs {gauge.grid.n}")
    u = curve.grid.unit_vectors / gauge.h_tilde[:, None]
    b = curve.h / gauge.h_tilde
    n = curve.grid.n
    # variables (cx, cy, s): s + c . u_j / h~_j <= h_j / h~_j
    a_ub = np.column_stack([u, np.ones(n)])
    x = _solve_lp([0.0, 0.0, -1.0], a_ub, b, "inradius")
    return float(x[2]), (float(x[0]), float(x[1]))


def outradius(curve: SupportCurve, gauge: Gauge) -> tuple[float, tuple[float, float]]:
    """Smallest r with r T (translated) enclosing the curve, and its center.

    Solved as: minimize t subject to g_j(c) <= t for all nodes j.
    """
    if curve.grid.n != gauge.grid.n:
        raise GridMismatchError(f"grid mismatch: {curve.grid.n} vs {gauge.grid.n}")
    u = curve.grid.unit_vectors / gauge.h_tilde[:, None]
    b = curve.h / gauge.h_tilde
    n = curve.grid.n
    # variables (cx, cy, t): -t - c . u_j / h~_j <= -h_j / h~_j
    a_ub = np.column_stack([-u, -np.ones(n)])
    x = _solve_lp([0.0, 0.0, 1.0], a_ub, -b, "outradius")
    return float(x[2]), (float(x[0]), float(x[1]))


def radii(curve: SupportCurve, gauge: Gauge) -> RadiiResult:
    """Inradius and outradius with their own optimal centers."""
    r_in, c_in = inradius(curve, gauge)
    r_out, c_out = outradius(curve, gauge)
    return RadiiResult(r_in=r_in, r_out=r_out, center_in=c_in, center_out=c_out)


def _extract_contacts(thetas: np.ndarray, g: np.ndarray, rho_in: float,
                      rho_out: float, tol: float) -> list[tuple[float, str]]:
    """Contact nodes within tol of either radius; adjacent same-type nodes
    are merged to the extremal one (contacts are only defined to grid
    resolution)."""
    n = g.size
    kind = np.full(n, " ", dtype="U5")
    kind[g <= rho_in + tol] = "inner"
    kind[g >= rho_out - tol] = "outer"
    idx = [j for j in range(n) if kind[j] != " "]
    if not idx:
        return []
    # group cyclically-adjacent nodes of equal type
    groups: list[list[int]] = [[idx[0]]]
    for j in idx[1:]:
        prev = groups[-1][-1]
        if j == prev + 1 and kind[j] == kind[prev]:
            groups[-1].append(j)
        else:
            groups.append([j])
    if (len(groups) > 1 and groups[0][0] == 0 and groups[-1][-1] == n - 1
            and kind[0] == kind[n - 1]):
        groups[0] = groups.pop() + groups[0]
    contacts = []
    for grp in groups:
        if kind[grp[0]] == "inner":
            best = min(grp, key=lambda j: g[j])
        else:
            best = max(grp, key=lambda j: g[j])
        contacts.append((float(thetas[best]), str(kind[best])))
    contacts.sort(key=lambda c: c[0])
    return contacts


def minimal_annulus(curve: SupportCurve, gauge: Gauge) -> AnnulusResult:
    """Minimal-width annulus rho_in T <= K <= rho_out T about a common center.

    Linear program in (cx, cy, s, t): minimize t - s subject to
    s <= g_j(c) <= t at every node; rho_in = s*, rho_out = t*.
    """
    if curve.grid.n != gauge.grid.n:
        raise GridMismatchError(f"grid mismatch: {curve.grid.n} vs {gauge.grid.n}")
    u = curve.grid.unit_vectors / gauge.h_tilde[:, None]
    b = curve.h / gauge.h_tilde
    n = curve.grid.n
    zeros = np.zeros(n)
    ones = np.ones(n)
    # s + c . u_j / h~_j <= b_j   and   -t - c . u_j / h~_j <= -b_j
    a_ub = np.vstack([
        np.column_stack([u, ones, zeros]),
        np.column_stack([-u, zeros, -ones]),
    ])
    b_ub = np.concatenate([b, -b])
    x = _solve_lp([0.0, 0.0, -1.0, 1.0], a_ub, b_ub, "minimal annulus")
    center = (float(x[0]), float(x[1]))
    g = b - u @ np.asarray(center)
    rho_in = float(np.min(g))
    rho_out = float(np.max(g))
    width = rho_out - rho_in
    degenerate = width < DEGENERATE_RTOL * rho_out
    if degenerate:
        contacts = [(float(t), "inner") for t in curve.grid.thetas]
    else:
        tol = max(CONTACT_RTOL * width, CONTACT_FLOOR)
        contacts = _extract_contacts(curve.grid.thetas, g, rho_in, rho_out, tol)
    return AnnulusResult(center=center, rho_in=rho_in, rho_out=rho_out,
                         contacts=contacts, objective=width,
                         degenerate=degenerate)


def certify_alternation(result: AnnulusResult) -> bool:
    """True iff contacts, walked by theta, alternate inner/outer with >= 2 each.

    Degenerate annuli certify vacuously.
    """
    if result.degenerate:
        return True
    labels = [kind for _, kind in sorted(result.contacts)]
    if labels.count("inner") < 2 or labels.count("outer") < 2:
        return False
    m = len(labels)
    return all(labels[i] != labels[(i + 1) % m] for i in range(m))
