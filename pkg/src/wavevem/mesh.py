"""Polygonal meshes of the square (-1, 1)^2 with the interface y = 0.

Provides the mesh container plus the built-in generators used by the
convergence studies: uniform Cartesian grids and geometrically graded
(isotropic and anisotropic) meshes refined towards the interface.  External
meshes (e.g. Voronoi tessellations) are ingested from a small text format.

Hanging nodes created by graded refinement are eliminated structurally: any
vertex lying on another element's side splits that side, so every stored
edge is shared exactly by its neighbours.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .quadrature import polygon_area, polygon_centroid

GEOM_TOL = 1e-12

DOMAIN_MIN = -1.0
DOMAIN_MAX = 1.0
DOMAIN_AREA = 4.0

MESH_FORMAT_HEADER = "ncvem-mesh 1"


class MeshError(ValueError):
    """Raised for malformed or invalid meshes."""


class Subdomain(Enum):
    OMEGA1 = 1  # strictly below the interface
    OMEGA2 = 2  # strictly above the interface
    CUT = 3  # interior intersects the interface


@dataclass(frozen=True)
class ElementGeometry:
    """Loop geometry of one polygon: sides, outward normals, centroid."""

    vertices: np.ndarray  # (k, 2) CCW coordinate loop
    centroid: np.ndarray
    diameter: float
    area: float
    side_a: np.ndarray  # (k, 2) side start points, loop order
    side_b: np.ndarray  # (k, 2) side end points
    normals: np.ndarray  # (k, 2) outward unit normals
    lengths: np.ndarray  # (k,)

    @classmethod
    def from_loop(cls, coords) -> "ElementGeometry":
        coords = np.asarray(coords, dtype=float)
        area = polygon_area(coords)
        if area <= 0.0:
            raise MeshError("vertex loop is not counter-clockwise")
        centroid = polygon_centroid(coords)
        side_a = coords
        side_b = np.roll(coords, -1, axis=0)
        d = side_b - side_a
        lengths = np.hypot(d[:, 0], d[:, 1])
        if np.any(lengths < GEOM_TOL):
            raise MeshError("degenerate (zero-length) side in vertex loop")
        t = d / lengths[:, None]
        normals = np.column_stack([t[:, 1], -t[:, 0]])
        diffs = coords[:, None, :] - coords[None, :, :]
        diameter = float(np.sqrt((diffs**2).sum(axis=2).max()))
        return cls(
            vertices=coords,
            centroid=centroid,
            diameter=diameter,
            area=area,
            side_a=side_a,
            side_b=side_b,
            normals=normals,
            lengths=lengths,
        )

    @property
    def n_sides(self) -> int:
        return len(self.vertices)

    def check_star_shaped(self, label: str = "element"):
        rel_a = self.side_a - self.centroid
        rel_b = self.side_b - self.centroid
        cross = rel_a[:, 0] * rel_b[:, 1] - rel_a[:, 1] * rel_b[:, 0]
        if np.any(cross <= GEOM_TOL * self.diameter**2):
            raise MeshError(f"{label} is not star-shaped w.r.t. its centroid")

    def check_simple(self, label: str = "element"):
        k = self.n_sides
        for i in range(k):
            for j in range(i + 1, k):
                if j == i or (j + 1) % k == i or (i + 1) % k == j:
                    continue
                if _segments_cross(
                    self.side_a[i], self.side_b[i], self.side_a[j], self.side_b[j]
                ):
                    raise MeshError(f"{label} has a self-intersecting vertex loop")


def _segments_cross(a0, a1, b0, b1) -> bool:
    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    d1 = orient(a0, a1, b0)
    d2 = orient(a0, a1, b1)
    d3 = orient(b0, b1, a0)
    d4 = orient(b0, b1, a1)
    return d1 * d2 < 0 and d3 * d4 < 0


@dataclass(frozen=True)
class Edge:
    """Unique mesh edge; geometry is fixed, independent of traversal side."""

    index: int
    v0: int
    v1: int
    a: np.ndarray
    b: np.ndarray
    length: float
    tangent: np.ndarray
    elements: tuple[int, ...]  # adjacent element ids (1 = boundary, 2 = interior)

    @property
    def is_boundary(self) -> bool:
        return len(self.elements) == 1

    @property
    def on_interface(self) -> bool:
        return abs(self.a[1]) <= GEOM_TOL and abs(self.b[1]) <= GEOM_TOL

    @property
    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.a + self.b)


@dataclass(frozen=True)
class Element:
    index: int
    vertex_ids: np.ndarray
    edge_ids: tuple[int, ...]  # aligned with geometry sides, loop order
    geometry: ElementGeometry
    subdomain: Subdomain

    @property
    def centroid(self) -> np.ndarray:
        return self.geometry.centroid

    @property
    def diameter(self) -> float:
        return self.geometry.diameter


@dataclass(frozen=True)
class PolygonMesh:
    """Immutable polygonal decomposition of (-1, 1)^2."""

    vertices: np.ndarray
    elements: tuple[Element, ...]
    edges: tuple[Edge, ...]
    name: str = "mesh"
    _vertex_elements: dict = field(default=None, repr=False, compare=False)

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def h(self) -> float:
        return max(e.diameter for e in self.elements)

    def boundary_edges(self):
        return [e for e in self.edges if e.is_boundary]

    def interface_edges(self):
        return [e for e in self.edges if not e.is_boundary and e.on_interface]

    def vertex_elements(self) -> dict[int, set[int]]:
        """Map vertex id -> ids of elements whose loop contains it."""
        if self._vertex_elements is None:
            table: dict[int, set[int]] = {}
            for el in self.elements:
                for v in el.vertex_ids:
                    table.setdefault(int(v), set()).add(el.index)
            object.__setattr__(self, "_vertex_elements", table)
        return self._vertex_elements

    def locate(self, x) -> int:
        """Index of the element containing point x (on ties, lowest index)."""
        x = np.asarray(x, dtype=float)
        for el in self.elements:
            g = el.geometry
            lo = g.vertices.min(axis=0) - GEOM_TOL
            hi = g.vertices.max(axis=0) + GEOM_TOL
            if np.any(x < lo) or np.any(x > hi):
                continue
            rel_a = g.side_a - x
            rel_b = g.side_b - x
            cross = rel_a[:, 0] * rel_b[:, 1] - rel_a[:, 1] * rel_b[:, 0]
            if np.all(cross >= -GEOM_TOL * max(g.diameter, 1.0)):
                return el.index
        raise MeshError(f"point {x} lies outside the mesh")


def _classify_loop(coords: np.ndarray) -> Subdomain:
    ymin = coords[:, 1].min()
    ymax = coords[:, 1].max()
    if ymin < -GEOM_TOL and ymax > GEOM_TOL:
        return Subdomain.CUT
    if ymax <= GEOM_TOL:
        return Subdomain.OMEGA1
    return Subdomain.OMEGA2


def _merge_vertices(raw_vertices: np.ndarray, loops) -> tuple[np.ndarray, list[list[int]]]:
    key = np.round(raw_vertices, 10)
    index: dict[tuple[float, float], int] = {}
    merged: list[np.ndarray] = []
    remap = np.empty(len(raw_vertices), dtype=int)
    for i, (k, v) in enumerate(zip(map(tuple, key), raw_vertices)):
        if k not in index:
            index[k] = len(merged)
            merged.append(v)
        remap[i] = index[k]
    new_loops = []
    for loop in loops:
        seen = []
        for v in loop:
            m = int(remap[v])
            if not seen or seen[-1] != m:
                seen.append(m)
        if seen and seen[0] == seen[-1]:
            seen.pop()
        new_loops.append(seen)
    return np.array(merged), new_loops


def _conformize(vertices: np.ndarray, loops: list[list[int]]) -> list[list[int]]:
    """Insert vertices lying on a loop side into that loop (hanging nodes)."""
    out = []
    for loop in loops:
        new_loop: list[int] = []
        for i, v in enumerate(loop):
            w = loop[(i + 1) % len(loop)]
            a, b = vertices[v], vertices[w]
            d = b - a
            L2 = d @ d
            rel = vertices - a
            t = (rel @ d) / L2
            perp = np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0]) / np.sqrt(L2)
            on = np.where((perp <= 1e-10) & (t > 1e-10) & (t < 1 - 1e-10))[0]
            on = [int(j) for j in on if j != v and j != w]
            on.sort(key=lambda j: (vertices[j] - a) @ d)
            new_loop.append(v)
            new_loop.extend(on)
        out.append(new_loop)
    return out


def build_mesh(
    raw_vertices,
    loops,
    name: str = "mesh",
    check_domain: bool = True,
) -> PolygonMesh:
    """Assemble and validate a PolygonMesh from vertex coordinates and loops."""
    raw_vertices = np.asarray(raw_vertices, dtype=float)
    vertices, loops = _merge_vertices(raw_vertices, [list(map(int, l)) for l in loops])
    loops = _conformize(vertices, loops)

    geometries = []
    for idx, loop in enumerate(loops):
        if len(loop) < 3:
            raise MeshError(f"element {idx} has fewer than 3 vertices")
        try:
            geo = ElementGeometry.from_loop(vertices[loop])
        except MeshError as err:
            raise MeshError(f"element {idx}: {err}") from err
        geo.check_simple(label=f"element {idx}")
        geo.check_star_shaped(label=f"element {idx}")
        geometries.append(geo)

    edge_table: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for idx, loop in enumerate(loops):
        for pos, v in enumerate(loop):
            w = loop[(pos + 1) % len(loop)]
            key = (min(v, w), max(v, w))
            edge_table.setdefault(key, []).append((idx, pos))

    edges: list[Edge] = []
    edge_index: dict[tuple[int, int], int] = {}
    for key, owners in edge_table.items():
        if len(owners) > 2:
            raise MeshError(f"edge {key} is shared by more than two elements")
        v0, v1 = key
        a, b = vertices[v0], vertices[v1]
        length = float(np.hypot(*(b - a)))
        edge_index[key] = len(edges)
        edges.append(
            Edge(
                index=len(edges),
                v0=v0,
                v1=v1,
                a=a,
                b=b,
                length=length,
                tangent=(b - a) / length,
                elements=tuple(o[0] for o in owners),
            )
        )

    elements: list[Element] = []
    for idx, loop in enumerate(loops):
        ids = []
        for pos, v in enumerate(loop):
            w = loop[(pos + 1) % len(loop)]
            ids.append(edge_index[(min(v, w), max(v, w))])
        elements.append(
            Element(
                index=idx,
                vertex_ids=np.array(loop, dtype=int),
                edge_ids=tuple(ids),
                geometry=geometries[idx],
                subdomain=_classify_loop(vertices[loop]),
            )
        )

    mesh = PolygonMesh(
        vertices=vertices, elements=tuple(elements), edges=tuple(edges), name=name
    )
    if check_domain:
        _validate_domain(mesh)
    return mesh


def _validate_domain(mesh: PolygonMesh):
    for e in mesh.boundary_edges():
        on_box = False
        for axis, val in ((0, DOMAIN_MIN), (0, DOMAIN_MAX), (1, DOMAIN_MIN), (1, DOMAIN_MAX)):
            if abs(e.a[axis] - val) <= GEOM_TOL and abs(e.b[axis] - val) <= GEOM_TOL:
                on_box = True
        if not on_box:
            raise MeshError(
                f"edge {e.index} ({e.a} -> {e.b}) has a single neighbour but does "
                "not lie on the boundary of (-1,1)^2 (dangling or mismatched edge)"
            )
    total = sum(el.geometry.area for el in mesh.elements)
    if abs(total - DOMAIN_AREA) > 1e-9:
        raise MeshError(
            f"element areas sum to {total!r}, expected {DOMAIN_AREA} (gaps or overlaps)"
        )
    # connectivity: breadth-first over shared vertices
    if mesh.n_elements > 1:
        seen = {0}
        stack = [0]
        vmap = mesh.vertex_elements()
        while stack:
            cur = stack.pop()
            for v in mesh.elements[cur].vertex_ids:
                for nb in vmap[int(v)]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        if len(seen) != mesh.n_elements:
            raise MeshError("mesh is disconnected")


# ----------------------------------------------------------------------------
# generators
# ----------------------------------------------------------------------------


def generate_cartesian(m: int) -> PolygonMesh:
    """Uniform m x m grid of squares on (-1, 1)^2.

    Conforms to the interface iff m is even; for odd m the middle row of
    squares is cut by y = 0.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    coords = np.linspace(DOMAIN_MIN, DOMAIN_MAX, m + 1)
    verts = np.array([[x, y] for y in coords for x in coords])
    loops = []
    for j in range(m):
        for i in range(m):
            v00 = j * (m + 1) + i
            loops.append([v00, v00 + 1, v00 + m + 2, v00 + m + 1])
    return build_mesh(verts, loops, name=f"cartesian{m}x{m}")


def _graded_levels(n: int, sigma: float) -> np.ndarray:
    if n < 1:
        raise ValueError("layer count n must be >= 1")
    if not (0.0 < sigma < 1.0):
        raise ValueError("grading parameter sigma must lie in (0, 1)")
    return sigma ** np.arange(1, n + 1)


def generate_graded_iso(n: int, sigma: float) -> PolygonMesh:
    """Isotropically graded mesh with n + 1 layers towards the interface.

    Bands between heights +-sigma^j shrink geometrically; the innermost band
    straddles y = 0, so its cells are cut by the interface.  Cell widths halve
    with each band so the cells stay roughly isotropic near the interface.
    Hanging nodes between bands of different widths are split into
    first-class edges.
    """
    levels = _graded_levels(n, sigma)
    verts: list[list[float]] = []
    loops: list[list[int]] = []

    def add_rect(x0, x1, y0, y1):
        base = len(verts)
        verts.extend([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
        loops.append([base, base + 1, base + 2, base + 3])

    def add_band(y0, y1, width):
        count = int(round((DOMAIN_MAX - DOMAIN_MIN) / width))
        xs = np.linspace(DOMAIN_MIN, DOMAIN_MAX, count + 1)
        for x0, x1 in zip(xs[:-1], xs[1:]):
            add_rect(x0, x1, y0, y1)

    add_rect(DOMAIN_MIN, DOMAIN_MAX, levels[0], DOMAIN_MAX)
    add_rect(DOMAIN_MIN, DOMAIN_MAX, DOMAIN_MIN, -levels[0])
    for j in range(1, n):
        width = 2.0 ** (1 - j)
        add_band(levels[j], levels[j - 1], width)
        add_band(-levels[j - 1], -levels[j], width)
    add_band(-levels[-1], levels[-1], 2.0 ** (1 - n))
    return build_mesh(np.array(verts), loops, name=f"graded_iso_n{n}")


def generate_graded_aniso(n: int, sigma: float) -> PolygonMesh:
    """Anisotropically graded mesh: full-width slabs shrinking towards y = 0.

    2n + 1 slabs; the middle slab (-sigma^n, sigma^n) is cut by the
    interface.  Tangential extent is always the domain width.
    """
    levels = _graded_levels(n, sigma)
    breaks = np.concatenate([[-1.0], -levels[::-1], levels, [1.0]])
    # remove the duplicate of the middle pair boundaries ordering
    ys = np.unique(breaks)
    verts: list[list[float]] = []
    loops: list[list[int]] = []
    for y0, y1 in zip(ys[:-1], ys[1:]):
        base = len(verts)
        verts.extend(
            [[DOMAIN_MIN, y0], [DOMAIN_MAX, y0], [DOMAIN_MAX, y1], [DOMAIN_MIN, y1]]
        )
        loops.append([base, base + 1, base + 2, base + 3])
    return build_mesh(np.array(verts), loops, name=f"graded_aniso_n{n}")


# ----------------------------------------------------------------------------
# layers
# ----------------------------------------------------------------------------


def compute_layers(mesh: PolygonMesh) -> np.ndarray:
    """Per-element layer indices: 0 on elements whose closure touches y = 0,
    then breadth-first by vertex-or-edge adjacency."""
    layer = np.full(mesh.n_elements, -1, dtype=int)
    front = []
    for el in mesh.elements:
        touches = el.subdomain is Subdomain.CUT or np.any(
            np.abs(el.geometry.vertices[:, 1]) <= GEOM_TOL
        )
        if touches:
            layer[el.index] = 0
            front.append(el.index)
    vmap = mesh.vertex_elements()
    current = front
    level = 0
    while current:
        level += 1
        nxt = []
        for idx in current:
            for v in mesh.elements[idx].vertex_ids:
                for nb in vmap[int(v)]:
                    if layer[nb] == -1:
                        layer[nb] = level
                        nxt.append(nb)
        current = nxt
    if np.any(layer < 0):
        raise MeshError("layer induction did not reach every element")
    return layer


# ----------------------------------------------------------------------------
# file format
# ----------------------------------------------------------------------------


def save_mesh(mesh: PolygonMesh, stream) -> None:
    """Write the line-oriented mesh format; tags and layers are recomputed
    on load, never stored."""
    close = False
    if isinstance(stream, (str, bytes)):
        stream = open(stream, "w")
        close = True
    try:
        stream.write(MESH_FORMAT_HEADER + "\n")
        stream.write(f"vertices {len(mesh.vertices)}\n")
        for x, y in mesh.vertices:
            stream.write(f"{float(x)!r} {float(y)!r}\n")
        stream.write(f"elements {mesh.n_elements}\n")
        for el in mesh.elements:
            ids = " ".join(str(int(v)) for v in el.vertex_ids)
            stream.write(f"{len(el.vertex_ids)} {ids}\n")
    finally:
        if close:
            stream.close()


def load_mesh(stream, name: str | None = None) -> PolygonMesh:
    """Read a mesh file, validating all structural invariants."""
    close = False
    if isinstance(stream, (str, bytes)):
        path = stream
        stream = open(stream)
        close = True
        if name is None:
            name = str(path)
    try:
        lines = [ln.strip() for ln in stream if ln.strip() and not ln.startswith("#")]
    finally:
        if close:
            stream.close()
    if not lines or lines[0] != MESH_FORMAT_HEADER:
        raise MeshError(f"missing '{MESH_FORMAT_HEADER}' header")
    pos = 1
    try:
        tag, nv = lines[pos].split()
        if tag != "vertices":
            raise ValueError
        nv = int(nv)
    except (ValueError, IndexError):
        raise MeshError("expected 'vertices N' after header") from None
    pos += 1
    verts = np.empty((nv, 2))
    for i in range(nv):
        parts = lines[pos + i].split()
        if len(parts) != 2:
            raise MeshError(f"vertex line {i}: expected 'x y', got {lines[pos + i]!r}")
        verts[i] = [float(parts[0]), float(parts[1])]
    pos += nv
    try:
        tag, ne = lines[pos].split()
        if tag != "elements":
            raise ValueError
        ne = int(ne)
    except (ValueError, IndexError):
        raise MeshError("expected 'elements M' after vertex block") from None
    pos += 1
    loops = []
    for i in range(ne):
        parts = [int(p) for p in lines[pos + i].split()]
        if not parts or len(parts) != parts[0] + 1:
            raise MeshError(f"element line {i}: count does not match indices")
        loop = parts[1:]
        if any(v < 0 or v >= nv for v in loop):
            raise MeshError(f"element line {i}: vertex index out of range")
        loops.append(loop)
    return build_mesh(verts, loops, name=name or "file-mesh")


def mesh_from_string(text: str, name: str = "inline") -> PolygonMesh:
    return load_mesh(io.StringIO(text), name=name)
