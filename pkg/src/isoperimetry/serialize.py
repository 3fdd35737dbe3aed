"""JSON and CSV interchange for curves, gauges, audits, annuli and traces.

JSON floats round-trip bit-exactly (shortest-repr encoding both ways);
CSV columns use %.17g for the same reason.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .annulus import AnnulusResult
from .bonnesen import PositiveCenterAudit
from .flow import FlowTrace
from .integral_geometry import ClassifiedSamples, MCReport
from .minkowski import Gauge, gauge_from_support
from .support_curve import AngleGrid, SupportCurve, _spectral_derivatives


def curve_to_dict(curve: SupportCurve) -> dict:
    return {"n": curve.n, "h": curve.h.tolist(), "label": curve.label}


def curve_from_dict(data: dict) -> SupportCurve:
    n = int(data["n"])
    h = np.asarray(data["h"], dtype=float)
    if h.size != n:
        raise ValueError(f"curve file claims n={n} but has {h.size} samples")
    return SupportCurve(AngleGrid(n), h, label=str(data.get("label", "")))


def gauge_to_dict(gauge: Gauge) -> dict:
    return {"n": gauge.n, "h_tilde": gauge.h_tilde.tolist(),
            "alpha": gauge.alpha, "label": gauge.label}


def gauge_from_dict(data: dict) -> Gauge:
    n = int(data["n"])
    ht = np.asarray(data["h_tilde"], dtype=float)
    if ht.size != n:
        raise ValueError(f"gauge file claims n={n} but has {ht.size} samples")
    return gauge_from_support(ht, label=str(data.get("label", "gauge")))


def write_json(path: str | Path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def save_curve(curve: SupportCurve, path: str | Path) -> None:
    write_json(path, curve_to_dict(curve))


def load_curve(path: str | Path) -> SupportCurve:
    return curve_from_dict(read_json(path))


def save_gauge(gauge: Gauge, path: str | Path) -> None:
    write_json(path, gauge_to_dict(gauge))


def load_gauge(path: str | Path) -> Gauge:
    return gauge_from_dict(read_json(path))


def _write_rows(path: str | Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([f"{x:.17g}" if isinstance(x, float) else x for x in row])


def write_curve_csv(curve: SupportCurve, path: str | Path) -> None:
    """Profile columns (theta, h, h', h'', k) for plotting."""
    h1, h2 = _spectral_derivatives(curve.h)
    k = 1.0 / (curve.h + h2)
    rows = zip(curve.grid.thetas.tolist(), curve.h.tolist(), h1.tolist(),
               h2.tolist(), k.tolist())
    _write_rows(path, ["theta", "h", "h_prime", "h_second", "curvature"], rows)


def write_audit_csv(curve: SupportCurve, gauge: Gauge,
                    audit: PositiveCenterAudit, path: str | Path) -> None:
    """Boundary profile of the Bonnesen functional along the audited curve."""
    rows = zip(curve.grid.thetas.tolist(), curve.h.tolist(),
               gauge.h_tilde.tolist(), audit.relative_support.tolist(),
               audit.functional_values.tolist())
    _write_rows(path, ["theta", "h", "h_tilde", "relative_support",
                       "bonnesen"], rows)


def annulus_to_dict(result: AnnulusResult) -> dict:
    return {
        "center": list(result.center),
        "rho_in": result.rho_in,
        "rho_out": result.rho_out,
        "objective": result.objective,
        "degenerate": result.degenerate,
        "contacts": [{"theta": t, "type": kind} for t, kind in result.contacts],
    }


def write_annulus_csv(curve: SupportCurve, gauge: Gauge, result: AnnulusResult,
                      path: str | Path) -> None:
    """Relative support profile g(theta) at the optimal annulus center."""
    c = np.asarray(result.center)
    g = (curve.h - curve.grid.unit_vectors @ c) / gauge.h_tilde
    _write_rows(path, ["theta", "relative_support"],
                zip(curve.grid.thetas.tolist(), g.tolist()))


def trace_to_dicts(trace: FlowTrace) -> list[dict]:
    return [
        {"t": r.t, "length": r.length, "area": r.area,
         "gauge_length": r.gauge_length, "ratio": r.ratio,
         "dissipation": r.dissipation,
         "predicted_ratio_rate": r.predicted_ratio_rate,
         "convexity_margin": r.convexity_margin}
        for r in trace.rows
    ]


def write_trace_csv(trace: FlowTrace, path: str | Path) -> None:
    header = ["t", "length", "area", "gauge_length", "ratio", "dissipation",
              "predicted_ratio_rate", "convexity_margin"]
    rows = ((r.t, r.length, r.area, r.gauge_length, r.ratio, r.dissipation,
             r.predicted_ratio_rate, r.convexity_margin) for r in trace.rows)
    _write_rows(path, header, rows)


def mc_report_to_dict(report: MCReport) -> dict:
    return {"estimate": report.estimate, "std_error": report.std_error,
            "n_samples": report.n_samples, "target": report.target,
            "z": report.z}


def write_samples_csv(samples: ClassifiedSamples, path: str | Path) -> None:
    """Per-placement dump (c_x, c_y, crossings, overlap) for region plots."""
    rows = zip(samples.centers[:, 0].tolist(), samples.centers[:, 1].tolist(),
               samples.crossings.tolist(), samples.nu.tolist())
    _write_rows(path, ["c_x", "c_y", "n", "nu"], rows)
