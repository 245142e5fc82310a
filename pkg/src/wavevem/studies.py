"""Convergence-study drivers reproducing the h-, p-, and hp-experiments.

Each study runs a sequence of solves from a declarative config and emits a
CSV table with a fixed schema:

    run_id,mesh,h,n_layers,q1,q2,qt2,mu,dofs_raw,dofs_filtered,
    err_h1_rel,err_l2_rel,residual,seconds

Comment lines (leading '#') carry the config hash and, for h-studies, the
observed convergence rates.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass

import numpy as np

from .analytic import InterfaceProblem
from .assembly import CutPolicy, DegreeMap, DiscreteSolution, solve_interface_problem
from .config import StudyConfig
from .mesh import (
    PolygonMesh,
    compute_layers,
    generate_cartesian,
    generate_graded_aniso,
    generate_graded_iso,
    load_mesh,
)
from .postprocess import compute_errors, sample_on_raster

CSV_HEADER = (
    "run_id,mesh,h,n_layers,q1,q2,qt2,mu,dofs_raw,dofs_filtered,"
    "err_h1_rel,err_l2_rel,residual,seconds"
)


@dataclass(frozen=True)
class StudyRow:
    run_id: int
    mesh: str
    h: float
    n_layers: int
    q1: int
    q2: int
    qt2: int
    mu: float
    dofs_raw: int
    dofs_filtered: int
    err_h1_rel: float
    err_l2_rel: float
    residual: float
    seconds: float

    def csv_line(self) -> str:
        return (
            f"{self.run_id},{self.mesh},{self.h:.12e},{self.n_layers},"
            f"{self.q1},{self.q2},{self.qt2},{self.mu:.6g},"
            f"{self.dofs_raw},{self.dofs_filtered},"
            f"{self.err_h1_rel:.12e},{self.err_l2_rel:.12e},"
            f"{self.residual:.6e},{self.seconds:.3f}"
        )


def fit_rate(hs, errs) -> float:
    """Least-squares slope of log(err) against log(h)."""
    hs = np.asarray(hs, dtype=float)
    errs = np.asarray(errs, dtype=float)
    return float(np.polyfit(np.log(hs), np.log(errs), 1)[0])


def pairwise_rates(hs, errs) -> list[float]:
    """Observed rates log(err_i/err_{i+1}) / log(h_i/h_{i+1}) per step."""
    out = []
    for i in range(len(hs) - 1):
        out.append(math.log(errs[i] / errs[i + 1]) / math.log(hs[i] / hs[i + 1]))
    return out


def log_linear_correlation(x, log_y) -> float:
    """Pearson correlation between x and log(y) (fed already-logged y)."""
    return float(np.corrcoef(np.asarray(x, float), np.asarray(log_y, float))[0, 1])


def _problem(config: StudyConfig) -> InterfaceProblem:
    return InterfaceProblem(
        k=config.k, n1=config.n1, n2=config.n2, theta_inc=config.theta_inc
    )


def build_study_mesh(config: StudyConfig, refinement) -> PolygonMesh:
    if config.family == "cartesian":
        return generate_cartesian(int(refinement))
    if config.family == "graded_iso":
        return generate_graded_iso(int(refinement), config.sigma)
    if config.family == "graded_aniso":
        return generate_graded_aniso(int(refinement), config.sigma)
    return load_mesh(str(refinement))


def _degrees_for(config: StudyConfig, mesh: PolygonMesh, refinement) -> tuple[DegreeMap, int, int, int]:
    """DegreeMap plus the (q1, q2, qt2) triple reported in the CSV."""
    if config.policy == "subdomain":
        dm = DegreeMap.per_subdomain(
            mesh, config.q1, config.q2, config.qt2, q_cut=config.q_cut
        )
        return dm, config.q1, config.q2, config.qt2
    if config.policy == "hp_uniform":
        q = math.ceil(config.mu * (int(refinement) + 1))
        dm = DegreeMap.per_subdomain(mesh, q, q, 0, q_cut=q)
        return dm, q, q, 0
    if config.policy == "hp_graded":
        layers = compute_layers(mesh)
        dm = DegreeMap.from_layers(
            mesh, layers, lambda l: math.ceil(config.mu * (l + 1))
        )
        q_top = math.ceil(config.mu * (int(layers.max()) + 1))
        return dm, q_top, q_top, 0
    raise ValueError(f"degree policy {config.policy!r} is not mesh-wise")


def _solve(config: StudyConfig, mesh: PolygonMesh, degrees: DegreeMap) -> DiscreteSolution:
    return solve_interface_problem(
        mesh,
        _problem(config),
        degrees,
        policy=CutPolicy(config.cut_policy),
        sigma_filter=config.sigma_filter,
        sigma_rel=config.sigma_rel,
        direction_offset=config.direction_offset,
        condition_limit=config.condition_limit,
    )


def _row(config, run_id, mesh, sol, q1, q2, qt2, mu, seconds) -> StudyRow:
    report = compute_errors(sol, order=config.quad_order)
    return StudyRow(
        run_id=run_id,
        mesh=mesh.name,
        h=mesh.h,
        n_layers=int(compute_layers(mesh).max()) + 1,
        q1=q1,
        q2=q2,
        qt2=qt2,
        mu=mu,
        dofs_raw=sol.dofs_raw,
        dofs_filtered=sol.n_dof,
        err_h1_rel=report.err_h1_rel,
        err_l2_rel=report.err_l2_rel,
        residual=sol.residual,
        seconds=seconds,
    )


def _csv(config: StudyConfig, kind: str, rows: list[StudyRow], trailer: list[str]) -> str:
    lines = [f"# wavevem-study {kind}", f"# config_hash={config.config_hash}", CSV_HEADER]
    lines.extend(r.csv_line() for r in rows)
    lines.extend(trailer)
    return "\n".join(lines) + "\n"


def _write_outputs(config: StudyConfig, text: str) -> None:
    if not config.csv:
        return
    directory = os.path.dirname(config.csv)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(config.csv, "w") as fh:
        fh.write(text)
    with open(config.csv + ".resolved.cfg", "w") as fh:
        fh.write(config.resolved_text)


def run_h_study(config: StudyConfig, write: bool = True) -> tuple[list[StudyRow], str]:
    """One solve per mesh refinement; appends observed rates as comments."""
    rows = []
    for i, refinement in enumerate(config.refinements):
        mesh = build_study_mesh(config, refinement)
        degrees, q1, q2, qt2 = _degrees_for(config, mesh, refinement)
        t0 = time.perf_counter()
        sol = _solve(config, mesh, degrees)
        seconds = time.perf_counter() - t0
        rows.append(_row(config, i, mesh, sol, q1, q2, qt2, 0.0, seconds))
    trailer = []
    if len(rows) > 1:
        hs = [r.h for r in rows]
        r1 = pairwise_rates(hs, [r.err_h1_rel for r in rows])
        r2 = pairwise_rates(hs, [r.err_l2_rel for r in rows])
        trailer.append("# rates_h1 " + " ".join(f"{v:.6f}" for v in r1))
        trailer.append("# rates_l2 " + " ".join(f"{v:.6f}" for v in r2))
        trailer.append(f"# fit_h1 {fit_rate(hs, [r.err_h1_rel for r in rows]):.6f}")
        trailer.append(f"# fit_l2 {fit_rate(hs, [r.err_l2_rel for r in rows]):.6f}")
    text = _csv(config, "h", rows, trailer)
    if write:
        _write_outputs(config, text)
    return rows, text


def _p_sweep_cases(config: StudyConfig) -> list[tuple[int, int, int]]:
    cases = []
    qt_list = config.qt2_list or (config.qt2,)
    for i, q2 in enumerate(config.q2_list):
        qt2 = qt_list[i] if len(qt_list) == len(config.q2_list) else qt_list[0]
        if config.q1_rule == "equal":
            q1 = q2
        elif config.q1_rule == "double":
            q1 = 2 * q2
        elif config.q1_rule == "double_total":
            q1 = 2 * (q2 + qt2)
        else:
            q1 = config.q1
        cases.append((q1, q2, qt2))
    return cases


def run_p_study(config: StudyConfig, write: bool = True) -> tuple[list[StudyRow], str]:
    """Degree sweep on the first configured mesh."""
    mesh = build_study_mesh(config, config.refinements[0])
    rows = []
    for i, (q1, q2, qt2) in enumerate(_p_sweep_cases(config)):
        degrees = DegreeMap.per_subdomain(mesh, q1, q2, qt2, q_cut=config.q_cut)
        t0 = time.perf_counter()
        sol = _solve(config, mesh, degrees)
        seconds = time.perf_counter() - t0
        rows.append(_row(config, i, mesh, sol, q1, q2, qt2, 0.0, seconds))
    text = _csv(config, "p", rows, [])
    if write:
        _write_outputs(config, text)
    return rows, text


def run_hp_study(config: StudyConfig, write: bool = True) -> tuple[list[StudyRow], str]:
    """Layer-count sweep on geometrically graded meshes."""
    if config.policy not in ("hp_uniform", "hp_graded"):
        raise ValueError("hp studies need the hp_uniform or hp_graded degree policy")
    rows = []
    for i, n in enumerate(config.refinements):
        mesh = build_study_mesh(config, n)
        degrees, q1, q2, qt2 = _degrees_for(config, mesh, n)
        t0 = time.perf_counter()
        sol = _solve(config, mesh, degrees)
        seconds = time.perf_counter() - t0
        rows.append(_row(config, i, mesh, sol, q1, q2, qt2, config.mu, seconds))
    trailer = []
    if len(rows) > 1:
        dofs = [r.dofs_filtered for r in rows]
        errs = [r.err_h1_rel for r in rows]
        corr_sqrt = log_linear_correlation(np.sqrt(dofs), np.log(errs))
        corr_log = log_linear_correlation(np.log(dofs), np.log(errs))
        trailer.append(f"# corr_logerr_sqrtdofs {corr_sqrt:.6f}")
        trailer.append(f"# corr_logerr_logdofs {corr_log:.6f}")
    text = _csv(config, "hp", rows, trailer)
    if write:
        _write_outputs(config, text)
    return rows, text


def run_single(config: StudyConfig, write: bool = True) -> tuple[StudyRow, str, str]:
    """One solve; emits the study row plus a raster dump of the fields."""
    mesh = build_study_mesh(config, config.refinements[0])
    degrees, q1, q2, qt2 = _degrees_for(config, mesh, config.refinements[0])
    t0 = time.perf_counter()
    sol = _solve(config, mesh, degrees)
    seconds = time.perf_counter() - t0
    row = _row(config, 0, mesh, sol, q1, q2, qt2, 0.0, seconds)
    text = _csv(config, "single", [row], [])
    pts, exact_vals, proj_vals = sample_on_raster(sol, n=config.raster_n)
    raster_lines = ["x,y,re_exact,im_exact,re_proj,im_proj"]
    for p, ue, up in zip(pts, exact_vals, proj_vals):
        raster_lines.append(
            f"{p[0]:.10e},{p[1]:.10e},{ue.real:.10e},{ue.imag:.10e},"
            f"{up.real:.10e},{up.imag:.10e}"
        )
    raster_text = "\n".join(raster_lines) + "\n"
    if write:
        _write_outputs(config, text)
        if config.raster:
            directory = os.path.dirname(config.raster)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(config.raster, "w") as fh:
                fh.write(raster_text)
    return row, text, raster_text
