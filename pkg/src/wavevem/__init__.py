"""Nonconforming Trefftz virtual element solver for the 2-D Helmholtz
fluid-fluid interface problem on polygonal meshes."""

from .analytic import ExactSolution, InterfaceProblem, coefficients, critical_angle
from .assembly import (
    AssemblyError,
    CutPolicy,
    DegreeMap,
    DiscreteSolution,
    solve_interface_problem,
)
from .config import ConfigError, StudyConfig, parse_config
from .edgebasis import (
    DEFAULT_FILTER_TOL,
    EdgeBasisError,
    build_candidates,
    build_edge_bases,
    orthogonalize_filter,
)
from .mesh import (
    MeshError,
    PolygonMesh,
    Subdomain,
    compute_layers,
    generate_cartesian,
    generate_graded_aniso,
    generate_graded_iso,
    load_mesh,
    save_mesh,
)
from .postprocess import ErrorReport, compute_errors, polygon_quadrature
from .studies import (
    StudyRow,
    fit_rate,
    pairwise_rates,
    run_h_study,
    run_hp_study,
    run_p_study,
    run_single,
)
from .waves import (
    ElementWaveBasis,
    TrefftzError,
    WaveFunction,
    edge_integral_pair,
    evanescent_directions,
    make_element_basis,
    plane_wave_directions,
)

__version__ = "0.1.0"

__all__ = [
    "AssemblyError",
    "ConfigError",
    "StudyConfig",
    "StudyRow",
    "parse_config",
    "fit_rate",
    "pairwise_rates",
    "run_h_study",
    "run_hp_study",
    "run_p_study",
    "run_single",
    "CutPolicy",
    "DEFAULT_FILTER_TOL",
    "DegreeMap",
    "DiscreteSolution",
    "EdgeBasisError",
    "ElementWaveBasis",
    "ErrorReport",
    "ExactSolution",
    "InterfaceProblem",
    "MeshError",
    "PolygonMesh",
    "Subdomain",
    "TrefftzError",
    "WaveFunction",
    "build_candidates",
    "build_edge_bases",
    "coefficients",
    "compute_errors",
    "compute_layers",
    "critical_angle",
    "edge_integral_pair",
    "evanescent_directions",
    "generate_cartesian",
    "generate_graded_aniso",
    "generate_graded_iso",
    "load_mesh",
    "make_element_basis",
    "orthogonalize_filter",
    "plane_wave_directions",
    "polygon_quadrature",
    "save_mesh",
    "solve_interface_problem",
]
