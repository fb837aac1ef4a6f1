"""Canonical densities and surfaces: planes, spheres, vertical cylinders, helicoids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import optimize

from .errors import InvalidParams, NoSignChange, NonConstantCurvature
from .geometry import (
    DensityField,
    ParametricSurface,
    cross,
    ez_density,
    gaussian_density,
    linear_density,
    weighted_mean_curvature,
)

POLE_MARGIN = 1e-3
CONSTANCY_TOL = 1e-9


def make_density(kind: str, a: Optional[Sequence[float]] = None) -> DensityField:
    """``"ez"``, ``"gaussian"`` (phi = -|x|^2/2, normalizer dropped) or ``"linear"`` with vector ``a``."""
    if kind == "ez":
        return ez_density()
    if kind == "gaussian":
        return gaussian_density()
    if kind == "linear":
        if a is None:
            raise InvalidParams("linear density needs a vector a")
        return linear_density(a)
    raise InvalidParams(f"unknown density kind {kind!r}")


@dataclass(frozen=True)
class GallerySpec:
    kind: str
    R: float = 1.0
    normal: tuple[float, float, float] = (0.0, 0.0, 1.0)
    offset: float = 0.0
    pitch: float = 1.0
    density_kind: str = "ez"
    u_range: Optional[tuple[float, float]] = None
    v_range: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if self.kind not in ("sphere", "cylinder_z", "plane", "helicoid"):
            raise InvalidParams(f"unknown gallery kind {self.kind!r}")
        if self.kind in ("sphere", "cylinder_z") and not self.R > 0:
            raise InvalidParams(f"radius must be positive, got {self.R}")
        if self.kind == "plane" and abs(math.sqrt(sum(x * x for x in self.normal)) - 1.0) > 1e-12:
            raise InvalidParams(f"plane normal must be a unit vector, got {self.normal}")


def _plane_frame(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # e1 ^ e2 = n
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = cross(helper, n)
    e1 /= np.linalg.norm(e1)
    return e1, cross(n, e1)


def make_gallery_surface(spec: GallerySpec) -> ParametricSurface:
    zero = np.zeros(3)
    if spec.kind == "sphere":
        R = spec.R
        ur = spec.u_range or (POLE_MARGIN, math.pi - POLE_MARGIN)
        vr = spec.v_range or (0.0, 2 * math.pi)

        def X(u, v):
            su = math.sin(u)
            return R * np.array([su * math.cos(v), su * math.sin(v), math.cos(u)])

        return ParametricSurface(
            X, ur, vr,
            Xu=lambda u, v: R * np.array([math.cos(u) * math.cos(v), math.cos(u) * math.sin(v), -math.sin(u)]),
            Xv=lambda u, v: R * np.array([-math.sin(u) * math.sin(v), math.sin(u) * math.cos(v), 0.0]),
            Xuu=lambda u, v: -X(u, v),
            Xuv=lambda u, v: R * np.array([-math.cos(u) * math.sin(v), math.cos(u) * math.cos(v), 0.0]),
            Xvv=lambda u, v: R * np.array([-math.sin(u) * math.cos(v), -math.sin(u) * math.sin(v), 0.0]),
            name=f"sphere R={R:g}",
        )
    if spec.kind == "cylinder_z":
        R = spec.R
        ur = spec.u_range or (0.0, 2 * math.pi)
        vr = spec.v_range or (-1.0, 1.0)
        return ParametricSurface(
            lambda u, v: np.array([R * math.cos(u), R * math.sin(u), v]), ur, vr,
            Xu=lambda u, v: np.array([-R * math.sin(u), R * math.cos(u), 0.0]),
            Xv=lambda u, v: np.array([0.0, 0.0, 1.0]),
            Xuu=lambda u, v: np.array([-R * math.cos(u), -R * math.sin(u), 0.0]),
            Xuv=lambda u, v: zero,
            Xvv=lambda u, v: zero,
            name=f"cylinder R={R:g}",
        )
    if spec.kind == "plane":
        n = np.asarray(spec.normal, dtype=float)
        e1, e2 = _plane_frame(n)
        base = spec.offset * n
        return ParametricSurface(
            lambda u, v: base + u * e1 + v * e2,
            spec.u_range or (-1.0, 1.0), spec.v_range or (-1.0, 1.0),
            Xu=lambda u, v: e1, Xv=lambda u, v: e2,
            Xuu=lambda u, v: zero, Xuv=lambda u, v: zero, Xvv=lambda u, v: zero,
            name=f"plane n=({n[0]:g}, {n[1]:g}, {n[2]:g}) offset={spec.offset:g}",
        )
    p = spec.pitch
    return ParametricSurface(
        lambda u, v: np.array([u * math.cos(v), u * math.sin(v), p * v]),
        spec.u_range or (0.5, 1.5), spec.v_range or (-1.0, 1.0),
        Xu=lambda u, v: np.array([math.cos(v), math.sin(v), 0.0]),
        Xv=lambda u, v: np.array([-u * math.sin(v), u * math.cos(v), p]),
        Xuu=lambda u, v: zero,
        Xuv=lambda u, v: np.array([-math.sin(v), math.cos(v), 0.0]),
        Xvv=lambda u, v: np.array([-u * math.cos(v), -u * math.sin(v), 0.0]),
        name=f"helicoid pitch={p:g}",
    )


def hphi_spread(surface: ParametricSurface, density: DensityField, n: int = 7) -> tuple[float, float]:
    """Min and max of H_phi over an ``n x n`` grid."""
    vals = [weighted_mean_curvature(surface, density, float(u), float(v))[1]
            for u in np.linspace(*surface.u_range, n) for v in np.linspace(*surface.v_range, n)]
    return min(vals), max(vals)


def find_minimal_radius(family: str, density: DensityField, bracket: tuple[float, float],
                        xtol: float = 1e-10) -> float:
    """Radius at which the centered sphere or vertical cylinder has ``H_phi = 0``.

    H_phi must be constant over each surface of the family; this is checked at
    both bracket ends before bisecting on ``R -> H_phi`` at a fixed parameter point.
    """
    kind = {"sphere": "sphere", "cylinder": "cylinder_z", "cylinder_z": "cylinder_z"}.get(family)
    if kind is None:
        raise InvalidParams(f"family must be 'sphere' or 'cylinder', got {family!r}")
    lo, hi = map(float, bracket)
    if not 0 < lo < hi:
        raise InvalidParams(f"bad bracket {bracket}")

    for R in (lo, hi):
        mn, mx = hphi_spread(make_gallery_surface(GallerySpec(kind, R=R)), density)
        if mx - mn > CONSTANCY_TOL:
            raise NonConstantCurvature(
                f"H_phi varies over the {family} of radius {R:g} (spread {mx - mn:.3g}); "
                "no single minimal radius exists for this density"
            )

    def hphi(R):
        s = make_gallery_surface(GallerySpec(kind, R=R))
        u = 0.5 * (s.u_range[0] + s.u_range[1])
        v = 0.5 * (s.v_range[0] + s.v_range[1])
        return weighted_mean_curvature(s, density, u, v)[1]

    f_lo, f_hi = hphi(lo), hphi(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(f"H_phi has the same sign at R={lo:g} ({f_lo:.3g}) and R={hi:g} ({f_hi:.3g})")
    return optimize.bisect(hphi, lo, hi, xtol=xtol)


def gallery_catalog() -> list[tuple[GallerySpec, ParametricSurface]]:
    specs = [
        GallerySpec("plane", normal=(0.0, 0.0, 1.0), offset=0.0, density_kind="ez"),
        GallerySpec("plane", normal=(1.0, 0.0, 0.0), offset=0.5, density_kind="ez"),
        GallerySpec("plane", normal=(0.6, 0.0, 0.8), offset=0.0, density_kind="gaussian"),
        GallerySpec("sphere", R=1.0, density_kind="gaussian"),
        GallerySpec("cylinder_z", R=1.0, density_kind="gaussian"),
        GallerySpec("cylinder_z", R=0.7, density_kind="ez"),
        GallerySpec("helicoid", pitch=1.0, density_kind="ez"),
    ]
    return [(s, make_gallery_surface(s)) for s in specs]
