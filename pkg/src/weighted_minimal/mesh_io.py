"""Quad meshes of parametric surfaces and the OBJ / CSV writers."""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from typing import IO, Union

import numpy as np

from .errors import DegenerateSurface, InvalidMesh, InvalidParams
from .geometry import REGULARITY_EPS, MinimalityReport, ParametricSurface, cross, norm

Destination = Union[str, os.PathLike, IO[str]]

CSV_HEADER = "u,v,x,y,z,H,Hphi"


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray  # (n, 3)
    faces: np.ndarray  # (m, 4), 0-based
    generator: str = ""

    def validate(self) -> None:
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise InvalidMesh(f"vertices must be (n, 3), got {self.vertices.shape}")
        if not np.all(np.isfinite(self.vertices)):
            raise InvalidMesh("mesh has non-finite vertex coordinates")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise InvalidMesh("face index out of range")


def tessellate(surface: ParametricSurface, nu: int, nv: int) -> Mesh:
    """Row-major vertex grid (u outer) with quads ``[i nv + j, i nv + j + 1, (i+1) nv + j + 1, (i+1) nv + j]``."""
    if nu < 2 or nv < 2:
        raise InvalidParams(f"tessellation needs nu, nv >= 2, got {nu} x {nv}")
    us, vs = surface.grid(nu, nv)
    verts = np.empty((nu * nv, 3))
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            u, v = float(u), float(v)
            w = norm(cross(*surface.first_derivatives(u, v)))
            if not w > REGULARITY_EPS:
                raise DegenerateSurface(u, v, w)
            verts[i * nv + j] = surface.point(u, v)
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv - 1), indexing="ij")
    i, j = i.ravel(), j.ravel()
    faces = np.stack([i * nv + j, i * nv + j + 1, (i + 1) * nv + j + 1, (i + 1) * nv + j], axis=1)
    mesh = Mesh(verts, faces.astype(np.int64), surface.name)
    mesh.validate()
    return mesh


def write_text(text: str, destination: Destination) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def fmt_g(x: float, digits: int) -> str:
    s = f"{x:.{digits}g}"
    return "0" if s == "-0" else s


def obj_text(mesh: Mesh) -> str:
    mesh.validate()
    buf = io.StringIO()
    buf.write(f"# weighted-minimal {mesh.generator}\n")
    for x, y, z in mesh.vertices:
        buf.write(f"v {fmt_g(x, 9)} {fmt_g(y, 9)} {fmt_g(z, 9)}\n")
    for a, b, c, d in mesh.faces + 1:
        buf.write(f"f {a} {b} {c} {d}\n")
    return buf.getvalue()


def export_obj(mesh: Mesh, destination: Destination) -> None:
    """ASCII OBJ: one comment line, ``v`` records at 9 significant digits, 1-based quad ``f`` records."""
    write_text(obj_text(mesh), destination)


def read_obj(source: Union[str, os.PathLike]) -> Mesh:
    verts, faces, gen = [], [], ""
    with open(source, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "#" and len(parts) > 1 and parts[1] == "weighted-minimal":
                gen = line.rstrip("\n").split(" ", 2)[2] if len(parts) > 2 else ""
            elif parts[0] == "v":
                verts.append([float(p) for p in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(p) - 1 for p in parts[1:]])
    return Mesh(np.array(verts, dtype=float).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 4), gen)


def report_csv_text(report: MinimalityReport) -> str:
    lines = [CSV_HEADER]
    for rec in report.grid:
        if not all(math.isfinite(x) for x in rec):
            raise InvalidMesh(f"non-finite value in report row {rec}")
        lines.append(",".join(fmt_g(x, 12) for x in rec))
    return "\n".join(lines) + "\n"


def export_report_csv(report: MinimalityReport, destination: Destination) -> None:
    """Header ``u,v,x,y,z,H,Hphi`` then one row per grid point at 12 significant digits."""
    write_text(report_csv_text(report), destination)
