"""Trace CSV, JSON report and problem-file formats."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .. import geometry as geo
from ..errors import UsageError
from ..solver import IterationRecord, SolveReport, SolverConfig, Status
from .benchmarks import get_benchmark

__all__ = [
    "fmt",
    "trace_header",
    "write_trace_csv",
    "read_trace_csv",
    "report_to_dict",
    "report_from_dict",
    "write_report_json",
    "read_report_json",
    "load_problem_file",
]


def fmt(x) -> str:
    return format(float(x), ".17g")


def trace_header(m: int, with_ref: bool) -> list:
    cols = ["k", "t", "j", "norm_v", "theta"] + [f"f_{i + 1}" for i in range(m)]
    return cols + (["dist_ref"] if with_ref else [])


def write_trace_csv(report: SolveReport, path, m_desc=None, ref_point=None, every: int = 1) -> None:
    """One row per ``every``-th record; ``dist_ref`` needs ``m_desc`` too."""
    if every < 1:
        raise UsageError("trace thinning factor must be >= 1")
    with_ref = ref_point is not None
    if with_ref and m_desc is None:
        raise UsageError("dist_ref column needs the manifold descriptor")
    m = len(report.final_f)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(trace_header(m, with_ref))
        for rec in report.records[::every]:
            row = [str(rec.k), fmt(rec.t), str(rec.j), fmt(rec.norm_v), fmt(rec.theta)]
            row += [fmt(x) for x in rec.f]
            if with_ref:
                row.append(fmt(geo.distance(m_desc, rec.p, ref_point)))
            w.writerow(row)


def read_trace_csv(path) -> list:
    """Rows as dicts with ints for ``k``/``j`` and floats elsewhere."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return [{key: int(val) if key in ("k", "j") else float(val) for key, val in row.items()} for row in rows]


def _arr(x):
    return np.asarray(x, dtype=float).tolist()


def report_to_dict(report: SolveReport, diagnostics=None, records: bool = True) -> dict:
    cfg = report.config
    out = {
        "status": report.status.value,
        "iterations": report.iterations,
        "final_point": _arr(report.final_point),
        "final_f": _arr(report.final_f),
        "final_criticality": float(report.final_criticality),
        "config": {
            "beta": cfg.beta,
            "eps_crit": cfg.eps_crit,
            "max_iters": cfg.max_iters,
            "max_halvings": cfg.max_halvings,
        },
    }
    if diagnostics is not None:
        out["diagnostics"] = {
            "monotone_ok": diagnostics.monotone_ok,
            "fejer_max_slack": diagnostics.fejer_max_slack,
            "summability": {"lhs": diagnostics.summability_lhs, "rhs": diagnostics.summability_rhs},
        }
    if report.message:
        out["message"] = report.message
    if records:
        out["records"] = [
            {
                "k": r.k, "p": _arr(r.p), "f": _arr(r.f), "norm_v": r.norm_v, "theta": r.theta,
                "alpha": _arr(r.alpha), "t": r.t, "j": r.j, "jac_v": _arr(r.jac_v),
                "f_new": _arr(r.f_new), "p_new": _arr(r.p_new),
            }
            for r in report.records
        ]
    return out


def report_from_dict(d: dict) -> SolveReport:
    recs = [
        IterationRecord(
            k=r["k"], p=np.array(r["p"]), f=np.array(r["f"]), norm_v=r["norm_v"], theta=r["theta"],
            alpha=np.array(r["alpha"]), t=r["t"], j=r["j"], jac_v=np.array(r["jac_v"]),
            f_new=np.array(r["f_new"]), p_new=np.array(r["p_new"]),
        )
        for r in d.get("records", [])
    ]
    return SolveReport(
        status=Status(d["status"]),
        records=recs,
        final_point=np.array(d["final_point"]),
        final_f=np.array(d["final_f"]),
        final_criticality=d["final_criticality"],
        config=SolverConfig(**d["config"]),
        message=d.get("message", ""),
    )


def write_report_json(report: SolveReport, path, diagnostics=None) -> None:
    Path(path).write_text(json.dumps(report_to_dict(report, diagnostics), indent=2), encoding="utf-8")


def read_report_json(path) -> SolveReport:
    return report_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def load_problem_file(path):
    """Read a problem file: a JSON object naming a registry problem.

    Recognized keys: ``problem`` (registry key, required), ``parameters``
    (overrides for the builder), ``p0`` (starting point) and ``ref_point``.

    Returns ``(spec, problem, p0, ref_point)``; missing entries are ``None``
    except ``p0``, which defaults to the benchmark's start.
    """
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read problem file {path}: {exc}") from exc
    if not isinstance(cfg, dict) or "problem" not in cfg:
        raise UsageError(f"problem file {path} must be an object with a 'problem' key")
    spec = get_benchmark(cfg["problem"])
    params = {k: np.asarray(v, dtype=float) for k, v in cfg.get("parameters", {}).items()}
    prob = spec.problem(**params)
    p0 = np.asarray(cfg["p0"], dtype=float) if "p0" in cfg else spec.default_p0
    ref = np.asarray(cfg["ref_point"], dtype=float) if "ref_point" in cfg else None
    return spec, prob, p0, ref
