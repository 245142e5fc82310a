"""Command-line driver: single solves, convergence studies, mesh utilities."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import parse_config
from .mesh import (
    MeshError,
    compute_layers,
    generate_cartesian,
    generate_graded_aniso,
    generate_graded_iso,
    load_mesh,
    save_mesh,
)
from .studies import run_h_study, run_hp_study, run_p_study, run_single


def _add_config_arg(sub):
    sub.add_argument("config", help="study configuration file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavevem",
        description="Trefftz virtual element solver for the Helmholtz "
        "fluid-fluid interface problem",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_config_arg(sub.add_parser("solve", help="one solve plus raster dump"))
    _add_config_arg(sub.add_parser("study-h", help="mesh-refinement study"))
    _add_config_arg(sub.add_parser("study-p", help="degree-sweep study"))
    _add_config_arg(sub.add_parser("study-hp", help="graded-mesh hp study"))

    mesh = sub.add_parser("mesh", help="mesh generation and validation")
    mesh_sub = mesh.add_subparsers(dest="mesh_command", required=True)
    gen = mesh_sub.add_parser("gen", help="generate a mesh file")
    gen.add_argument("family", choices=["cartesian", "graded_iso", "graded_aniso"])
    gen.add_argument("refinement", type=int, help="m (cartesian) or layer count n")
    gen.add_argument("output", help="output mesh file")
    gen.add_argument("--sigma", type=float, default=1.0 / 3.0, help="grading parameter")
    check = mesh_sub.add_parser("check", help="validate a mesh file")
    check.add_argument("mesh_file")
    return parser


def _mesh_gen(args) -> int:
    if args.family == "cartesian":
        mesh = generate_cartesian(args.refinement)
    elif args.family == "graded_iso":
        mesh = generate_graded_iso(args.refinement, args.sigma)
    else:
        mesh = generate_graded_aniso(args.refinement, args.sigma)
    save_mesh(mesh, args.output)
    print(f"wrote {args.output}: {mesh.n_elements} elements, {mesh.n_edges} edges")
    return 0


def _mesh_check(args) -> int:
    try:
        mesh = load_mesh(args.mesh_file)
    except MeshError as err:
        print(f"INVALID: {err}", file=sys.stderr)
        return 1
    layers = compute_layers(mesh)
    tags = {tag.name: 0 for tag in set(el.subdomain for el in mesh.elements)}
    for el in mesh.elements:
        tags[el.subdomain.name] += 1
    print(
        f"OK: {mesh.n_elements} elements, {mesh.n_edges} edges, "
        f"h = {mesh.h:.6g}, layers = {int(layers.max()) + 1}, tags = {tags}"
    )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "mesh":
        return _mesh_gen(args) if args.mesh_command == "gen" else _mesh_check(args)
    config = parse_config(args.config)
    if args.command == "solve":
        row, _, _ = run_single(config)
        print(
            f"solved {row.mesh}: {row.dofs_filtered} DOFs, "
            f"H1 {row.err_h1_rel:.4e}, L2 {row.err_l2_rel:.4e}"
        )
        if config.raster:
            print(f"raster written to {config.raster}")
    else:
        runner = {"study-h": run_h_study, "study-p": run_p_study, "study-hp": run_hp_study}
        rows, _ = runner[args.command](config)
        for row in rows:
            print(
                f"run {row.run_id}: {row.mesh} dofs {row.dofs_filtered} "
                f"H1 {row.err_h1_rel:.4e} L2 {row.err_l2_rel:.4e}"
            )
    if config.csv:
        print(f"results written to {config.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
