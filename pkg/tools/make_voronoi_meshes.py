"""Regenerate the shipped reflected-Voronoi mesh files.

Seeds are drawn in the quarter square (0,1)^2, relaxed by a few Lloyd
iterations, then mirrored across both axes; the resulting tessellation is
symmetric and conforms to the interface y = 0.  The outputs are data assets
of the package (the solver itself never generates Voronoi meshes).

Run from the repository root:  python tools/make_voronoi_meshes.py
"""
from __future__ import annotations

import os
import sys

import numpy as np
from scipy.spatial import Voronoi

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from wavevem.mesh import build_mesh, save_mesh  # noqa: E402
from wavevem.quadrature import polygon_centroid  # noqa: E402

OUT_DIR = os.path.join(
    os.path.dirname(__file__), "..", "src", "wavevem", "data", "meshes"
)


def _mirror_full(quarter: np.ndarray) -> np.ndarray:
    signs = [(1, 1), (-1, 1), (1, -1), (-1, -1)]
    return np.concatenate([quarter * np.array(s) for s in signs])


def _pad(seeds: np.ndarray) -> np.ndarray:
    """Reflect seeds across the four sides of (-1,1)^2 so interior cells
    are bounded and clipped to the box."""
    pads = [seeds.copy() for _ in range(4)]
    pads[0][:, 0] = -2.0 - pads[0][:, 0]
    pads[1][:, 0] = 2.0 - pads[1][:, 0]
    pads[2][:, 1] = -2.0 - pads[2][:, 1]
    pads[3][:, 1] = 2.0 - pads[3][:, 1]
    return np.concatenate([seeds] + pads)


def _cells(seeds: np.ndarray) -> list[np.ndarray]:
    vor = Voronoi(_pad(seeds))
    cells = []
    for i in range(len(seeds)):
        region = vor.regions[vor.point_region[i]]
        assert -1 not in region, "unbounded cell despite padding"
        poly = vor.vertices[region]
        # enforce counter-clockwise order
        area = 0.5 * np.sum(
            poly[:, 0] * np.roll(poly[:, 1], -1) - np.roll(poly[:, 0], -1) * poly[:, 1]
        )
        if area < 0:
            poly = poly[::-1]
        cells.append(poly)
    return cells


def _lloyd(quarter: np.ndarray, iterations: int) -> np.ndarray:
    for _ in range(iterations):
        # relax within the quarter square by mirroring across its sides
        pads = [quarter.copy() for _ in range(4)]
        pads[0][:, 0] = -pads[0][:, 0]
        pads[1][:, 0] = 2.0 - pads[1][:, 0]
        pads[2][:, 1] = -pads[2][:, 1]
        pads[3][:, 1] = 2.0 - pads[3][:, 1]
        vor = Voronoi(np.concatenate([quarter] + pads))
        new = []
        for i in range(len(quarter)):
            region = vor.regions[vor.point_region[i]]
            poly = vor.vertices[region]
            new.append(polygon_centroid(poly if _ccw(poly) else poly[::-1]))
        quarter = np.clip(np.array(new), 1e-3, 1.0 - 1e-3)
    return quarter


def _ccw(poly: np.ndarray) -> bool:
    return (
        0.5
        * np.sum(
            poly[:, 0] * np.roll(poly[:, 1], -1) - np.roll(poly[:, 0], -1) * poly[:, 1]
        )
        > 0
    )


def make(n_quarter: int, seed: int, lloyd_iterations: int = 4):
    rng = np.random.default_rng(seed)
    quarter = rng.uniform(0.08, 0.92, size=(n_quarter, 2))
    quarter = _lloyd(quarter, lloyd_iterations)
    seeds = _mirror_full(quarter)
    cells = _cells(seeds)
    verts = []
    loops = []
    for poly in cells:
        base = len(verts)
        verts.extend(poly.tolist())
        loops.append(list(range(base, base + len(poly))))
    mesh = build_mesh(np.array(verts), loops, name=f"voronoi_{4 * n_quarter}")
    return mesh


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    for n_quarter, seed in ((4, 20), (16, 11), (32, 7)):
        mesh = make(n_quarter, seed)
        path = os.path.join(OUT_DIR, f"voronoi_{4 * n_quarter}.txt")
        save_mesh(mesh, path)
        print(f"{path}: {mesh.n_elements} elements, {mesh.n_edges} edges, h={mesh.h:.4f}")


if __name__ == "__main__":
    main()
