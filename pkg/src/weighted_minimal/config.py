"""JSON job configuration for the command-line front end.

Example::

    {
      "density": "ez",
      "surface": {"family": "cylindrical", "A": 1, "b": 0.6, "c": 0.8},
      "grid": [50, 50],
      "tolerance": 1e-8
    }

``density`` is ``"ez"``, ``"gaussian"`` or ``{"linear": [ax, ay, az]}``.
Surface families and their keys (all optional except ``family``):

* ``cylindrical``: ``A``, ``b``, ``c``, ``rot``, ``shift``
* ``vertical-plane``: ``direction`` (unit 2-vector), ``through``
* ``translation``: ``c``, ``D``, ``d``
* ``gallery``: ``kind`` (sphere, cylinder_z, plane, helicoid), ``R``, ``normal``, ``offset``, ``pitch``

Every family also accepts ``u_range`` and ``v_range``. Unknown keys are errors.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from typing import Any

from .errors import InvalidParams
from .geometry import DensityField, ParametricSurface
from .gallery import GallerySpec, make_density, make_gallery_surface
from .ruled import CylindricalFamilyParams, make_cylindrical_minimal, make_vertical_plane
from .translation import make_translation_minimal


class ConfigError(ValueError):
    pass


_RANGES = {"u_range", "v_range"}
_FAMILY_KEYS = {
    "cylindrical": {"A", "b", "c", "rot", "shift"} | _RANGES,
    "vertical-plane": {"direction", "through"} | _RANGES,
    "translation": {"c", "D", "d"} | _RANGES,
    "gallery": {"kind", "R", "normal", "offset", "pitch"} | _RANGES,
}
_TOP_KEYS = {"density", "surface", "grid", "tolerance", "derivatives", "outputs"}


@dataclass(frozen=True)
class JobConfig:
    density: Any
    surface: dict
    grid: tuple[int, int] = (50, 50)
    tolerance: float = 1e-8
    derivatives: str = "analytic"
    outputs: dict = field(default_factory=dict)

    def build_density(self) -> DensityField:
        try:
            if isinstance(self.density, dict):
                return make_density("linear", self.density["linear"])
            return make_density(self.density)
        except InvalidParams as exc:
            raise ConfigError(str(exc)) from exc

    def build_surface(self) -> ParametricSurface:
        s = dict(self.surface)
        family = s.pop("family")
        ranges = {k: tuple(s.pop(k)) for k in list(s) if k in _RANGES}
        try:
            if family == "cylindrical":
                p = CylindricalFamilyParams(
                    A=s.get("A", 1.0), b=s.get("b", 1.0), c=s.get("c", 0.0),
                    rot_z=s.get("rot", 0.0), shift=tuple(s.get("shift", (0.0, 0.0, 0.0))),
                )
                surf = make_cylindrical_minimal(p, **ranges).as_surface()
            elif family == "vertical-plane":
                surf = make_vertical_plane(s.get("direction", (1.0, 0.0)), s.get("through", (0.0, 0.0, 0.0)),
                                           **ranges).as_surface()
            elif family == "translation":
                surf = make_translation_minimal(s.get("c", 0.0), s.get("D", 0.0), s.get("d", 0.0),
                                                **ranges).as_surface()
            else:
                spec = GallerySpec(
                    kind=s.get("kind", "plane"), R=s.get("R", 1.0),
                    normal=tuple(s.get("normal", (0.0, 0.0, 1.0))), offset=s.get("offset", 0.0),
                    pitch=s.get("pitch", 1.0), **ranges,
                )
                surf = make_gallery_surface(spec)
        except InvalidParams as exc:
            raise ConfigError(str(exc)) from exc
        return surf.without_derivatives() if self.derivatives == "fd" else surf

    def with_surface_param(self, name: str, value: float) -> "JobConfig":
        if name not in _FAMILY_KEYS[self.surface["family"]] or name in _RANGES:
            raise ConfigError(f"family {self.surface['family']!r} has no scalar parameter {name!r}")
        surface = copy.deepcopy(self.surface)
        surface[name] = value
        return parse_config({
            "density": self.density, "surface": surface, "grid": list(self.grid),
            "tolerance": self.tolerance, "derivatives": self.derivatives, "outputs": dict(self.outputs),
        })


def _finite(value, where: str) -> None:
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise ConfigError(f"{where}: non-finite number")
    elif isinstance(value, list):
        for i, x in enumerate(value):
            _finite(x, f"{where}[{i}]")
    else:
        raise ConfigError(f"{where}: expected a number or list of numbers, got {type(value).__name__}")


def _vector(value, n: int, where: str) -> None:
    _finite(value, where)
    if not isinstance(value, list) or len(value) != n:
        raise ConfigError(f"{where}: expected a list of {n} numbers")


def parse_config(doc: dict) -> JobConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    density = doc.get("density", "ez")
    if isinstance(density, dict):
        if set(density) != {"linear"}:
            raise ConfigError("density object must be {\"linear\": [ax, ay, az]}")
        _vector(density["linear"], 3, "density.linear")
    elif density not in ("ez", "gaussian"):
        raise ConfigError(f"unknown density {density!r}")

    surface = doc.get("surface")
    if not isinstance(surface, dict) or "family" not in surface:
        raise ConfigError("surface must be an object with a 'family' key")
    family = surface["family"]
    if family not in _FAMILY_KEYS:
        raise ConfigError(f"unknown surface family {family!r}")
    unknown = set(surface) - _FAMILY_KEYS[family] - {"family"}
    if unknown:
        raise ConfigError(f"unknown keys for family {family!r}: {sorted(unknown)}")
    for key, value in surface.items():
        if key == "family":
            continue
        if key == "kind":
            if not isinstance(value, str):
                raise ConfigError("surface.kind must be a string")
        elif key in _RANGES or key == "direction":
            _vector(value, 2, f"surface.{key}")
        elif key in ("shift", "through", "normal"):
            _vector(value, 3, f"surface.{key}")
        else:
            _finite(value, f"surface.{key}")
            if isinstance(value, list):
                raise ConfigError(f"surface.{key}: expected a number")

    grid = doc.get("grid", [50, 50])
    if (not isinstance(grid, list) or len(grid) != 2
            or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 2 for n in grid)):
        raise ConfigError("grid must be [nu, nv] with integers >= 2")

    tol = doc.get("tolerance", 1e-8)
    _finite(tol, "tolerance")
    if isinstance(tol, list) or not tol > 0:
        raise ConfigError("tolerance must be a positive number")

    deriv = doc.get("derivatives", "analytic")
    if deriv not in ("analytic", "fd"):
        raise ConfigError("derivatives must be 'analytic' or 'fd'")

    outputs = doc.get("outputs", {})
    if not isinstance(outputs, dict) or set(outputs) - {"obj", "csv"} or not all(
            isinstance(p, str) for p in outputs.values()):
        raise ConfigError("outputs must be an object with optional string keys 'obj' and 'csv'")

    return JobConfig(density, dict(surface), (grid[0], grid[1]), float(tol), deriv, dict(outputs))


def load_config(path: str) -> JobConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh, parse_constant=_reject_constant)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return parse_config(doc)


def _reject_constant(name: str):
    raise ConfigError(f"non-finite number {name} in config")
