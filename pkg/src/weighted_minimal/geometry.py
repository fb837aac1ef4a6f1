"""Fundamental forms, weighted mean curvature and weighted area of parametric surfaces.

Conventions used throughout the package:

* the unit normal is ``N = (Xu ^ Xv) / |Xu ^ Xv|``;
* ``H = (eG - 2fF + gE) / (2 (EG - F^2))`` (average of principal curvatures,
  so an outward-oriented sphere of radius R has ``H = -1/R``);
* for a density ``e^phi`` the weighted mean curvature is
  ``H_phi = H - <grad phi, N> / 2``.

With these signs the first variation of weighted area along ``psi N`` is
``-2 * integral(H_phi psi e^phi dA)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import DegenerateSurface, DerivativeMismatch, InvalidParams

Vec = np.ndarray
SurfaceMap = Callable[[float, float], Vec]

REGULARITY_EPS = 1e-10
FD_FIRST_SCALE = 1e-5
FD_SECOND_SCALE = 1e-4


def cross(a, b) -> Vec:
    # np.cross is slow for single 3-vectors
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def dot(a, b) -> float:
    return float(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def norm(a) -> float:
    return math.sqrt(dot(a, a))


# ---------------------------------------------------------------------------
# densities


@dataclass(frozen=True)
class DensityField:
    """The weight ``e^phi`` given by its log ``phi`` and gradient evaluators.

    ``kind`` is one of ``"linear"``, ``"gaussian"`` or ``"custom"``. For the
    linear kind ``a`` holds the constant gradient.
    """

    phi: Callable[[Vec], float]
    grad_phi: Callable[[Vec], Vec]
    kind: str = "custom"
    a: Optional[Vec] = None
    name: str = "custom"

    @property
    def is_linear(self) -> bool:
        return self.kind == "linear"

    def check_gradient(self, points: Sequence[Sequence[float]], rtol: float = 1e-6) -> float:
        """Compare ``grad_phi`` with central differences of ``phi``.

        Returns the worst relative deviation, raising DerivativeMismatch above ``rtol``.
        """
        worst = 0.0
        for p in points:
            p = np.asarray(p, dtype=float)
            h = 1e-5 * max(1.0, float(np.max(np.abs(p))))
            fd = np.empty(3)
            for k in range(3):
                dp = np.zeros(3)
                dp[k] = h
                fd[k] = (self.phi(p + dp) - self.phi(p - dp)) / (2 * h)
            g = np.asarray(self.grad_phi(p), dtype=float)
            err = float(np.max(np.abs(g - fd))) / max(1.0, float(np.max(np.abs(g))))
            worst = max(worst, err)
        if worst > rtol:
            raise DerivativeMismatch(f"grad_phi disagrees with finite differences ({worst:.3g})")
        return worst


def linear_density(a: Sequence[float], name: str | None = None) -> DensityField:
    a = np.asarray(a, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)) or not np.any(a):
        raise InvalidParams(f"linear density needs a nonzero finite 3-vector, got {a!r}")
    a = a.copy()
    a.setflags(write=False)
    return DensityField(
        phi=lambda x: dot(a, x),
        grad_phi=lambda x: a,
        kind="linear",
        a=a,
        name=name or "linear",
    )


def ez_density() -> DensityField:
    """The canonical log-linear density ``e^z``."""
    return linear_density((0.0, 0.0, 1.0), name="ez")


def gaussian_density() -> DensityField:
    # the (2 pi)^(-3/2) normalizer is a constant in phi and never enters H_phi
    return DensityField(
        phi=lambda x: -0.5 * dot(x, x),
        grad_phi=lambda x: -np.asarray(x, dtype=float),
        kind="gaussian",
        name="gaussian",
    )


def euclidean_density() -> DensityField:
    zero = np.zeros(3)
    zero.setflags(write=False)
    return DensityField(phi=lambda x: 0.0, grad_phi=lambda x: zero, kind="custom", name="euclidean")


# ---------------------------------------------------------------------------
# finite differences


def fd_first(X: SurfaceMap, u: float, v: float, h: float) -> tuple[Vec, Vec]:
    Xu = (np.asarray(X(u + h, v)) - np.asarray(X(u - h, v))) / (2 * h)
    Xv = (np.asarray(X(u, v + h)) - np.asarray(X(u, v - h))) / (2 * h)
    return Xu, Xv


def fd_second(X: SurfaceMap, u: float, v: float, h: float) -> tuple[Vec, Vec, Vec]:
    c = np.asarray(X(u, v))
    Xuu = (np.asarray(X(u + h, v)) - 2 * c + np.asarray(X(u - h, v))) / (h * h)
    Xvv = (np.asarray(X(u, v + h)) - 2 * c + np.asarray(X(u, v - h))) / (h * h)
    Xuv = (
        np.asarray(X(u + h, v + h)) - np.asarray(X(u + h, v - h))
        - np.asarray(X(u - h, v + h)) + np.asarray(X(u - h, v - h))
    ) / (4 * h * h)
    return Xuu, Xuv, Xvv


def fd_derivatives(X: SurfaceMap, u: float, v: float, step: float):
    """Central-difference derivatives ``(Xu, Xv, Xuu, Xuv, Xvv)`` of a surface map.

    First derivatives use the 3-point stencil; second derivatives the 3-point
    second difference and the 4-point cross stencil for the mixed term, all
    O(step^2) and exact on quadratics.
    """
    if step <= 0:
        raise InvalidParams("step must be positive")
    Xu, Xv = fd_first(X, u, v, step)
    Xuu, Xuv, Xvv = fd_second(X, u, v, step)
    return Xu, Xv, Xuu, Xuv, Xvv


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class ParametricSurface:
    """A map ``X(u, v) -> R^3`` on the rectangle ``u_range x v_range``.

    Derivative evaluators left as ``None`` fall back to central differences.
    """

    X: SurfaceMap
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    Xu: Optional[SurfaceMap] = None
    Xv: Optional[SurfaceMap] = None
    Xuu: Optional[SurfaceMap] = None
    Xuv: Optional[SurfaceMap] = None
    Xvv: Optional[SurfaceMap] = None
    name: str = "surface"

    def __post_init__(self):
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        if not (u0 < u1 and v0 < v1):
            raise InvalidParams(f"empty domain {self.u_range} x {self.v_range}")

    @property
    def has_analytic_derivatives(self) -> bool:
        return None not in (self.Xu, self.Xv, self.Xuu, self.Xuv, self.Xvv)

    def point(self, u: float, v: float) -> Vec:
        return np.asarray(self.X(u, v), dtype=float)

    def first_derivatives(self, u: float, v: float) -> tuple[Vec, Vec]:
        if self.Xu is not None and self.Xv is not None:
            return np.asarray(self.Xu(u, v), dtype=float), np.asarray(self.Xv(u, v), dtype=float)
        h = FD_FIRST_SCALE * max(1.0, abs(u), abs(v))
        Xu, Xv = fd_first(self.X, u, v, h)
        if self.Xu is not None:
            Xu = np.asarray(self.Xu(u, v), dtype=float)
        if self.Xv is not None:
            Xv = np.asarray(self.Xv(u, v), dtype=float)
        return Xu, Xv

    def second_derivatives(self, u: float, v: float) -> tuple[Vec, Vec, Vec]:
        if self.Xuu is not None and self.Xuv is not None and self.Xvv is not None:
            return (
                np.asarray(self.Xuu(u, v), dtype=float),
                np.asarray(self.Xuv(u, v), dtype=float),
                np.asarray(self.Xvv(u, v), dtype=float),
            )
        h = FD_SECOND_SCALE * max(1.0, abs(u), abs(v))
        fd = fd_second(self.X, u, v, h)
        given = (self.Xuu, self.Xuv, self.Xvv)
        return tuple(
            fd[k] if given[k] is None else np.asarray(given[k](u, v), dtype=float)
            for k in range(3)
        )

    def derivatives(self, u: float, v: float):
        Xu, Xv = self.first_derivatives(u, v)
        return (Xu, Xv) + self.second_derivatives(u, v)

    def without_derivatives(self) -> "ParametricSurface":
        """The same map with every derivative taken by finite differences."""
        return ParametricSurface(self.X, self.u_range, self.v_range, name=self.name + " (fd)")

    def grid(self, nu: int, nv: int) -> tuple[np.ndarray, np.ndarray]:
        if nu < 2 or nv < 2:
            raise InvalidParams(f"grid needs nu, nv >= 2, got {nu} x {nv}")
        return np.linspace(*self.u_range, nu), np.linspace(*self.v_range, nv)

    def check_derivatives(self, nu: int = 5, nv: int = 5, rtol: float = 1e-5) -> float:
        """Compare supplied derivative evaluators against finite differences of X."""
        worst = 0.0
        names = ("Xu", "Xv", "Xuu", "Xuv", "Xvv")
        for u in np.linspace(*self.u_range, nu):
            for v in np.linspace(*self.v_range, nv):
                u, v = float(u), float(v)
                h1 = FD_FIRST_SCALE * max(1.0, abs(u), abs(v))
                h2 = FD_SECOND_SCALE * max(1.0, abs(u), abs(v))
                fd = fd_first(self.X, u, v, h1) + fd_second(self.X, u, v, h2)
                for name, approx in zip(names, fd):
                    ev = getattr(self, name)
                    if ev is None:
                        continue
                    exact = np.asarray(ev(u, v), dtype=float)
                    err = float(np.max(np.abs(exact - approx))) / max(1.0, float(np.max(np.abs(exact))))
                    if err > rtol:
                        raise DerivativeMismatch(
                            f"{name} of '{self.name}' differs from finite differences by "
                            f"{err:.3g} at (u, v) = ({u:.6g}, {v:.6g})"
                        )
                    worst = max(worst, err)
        return worst


def rigid_motion(surface: ParametricSurface, rotation, shift=(0.0, 0.0, 0.0)) -> ParametricSurface:
    """Apply ``x -> R x + shift``; derivative evaluators are rotated, not recomputed."""
    R = np.asarray(rotation, dtype=float)
    T = np.asarray(shift, dtype=float)

    def rot(f):
        if f is None:
            return None
        return lambda u, v: R @ np.asarray(f(u, v), dtype=float)

    return ParametricSurface(
        X=lambda u, v: R @ np.asarray(surface.X(u, v), dtype=float) + T,
        u_range=surface.u_range,
        v_range=surface.v_range,
        Xu=rot(surface.Xu),
        Xv=rot(surface.Xv),
        Xuu=rot(surface.Xuu),
        Xuv=rot(surface.Xuv),
        Xvv=rot(surface.Xvv),
        name=surface.name,
    )


def rotation_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


# ---------------------------------------------------------------------------
# curvature


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float
    N: Vec
    area_element: float

    @property
    def mean_curvature(self) -> float:
        return (self.e * self.G - 2 * self.f * self.F + self.g * self.E) / (
            2 * (self.E * self.G - self.F * self.F)
        )


def forms_from_derivatives(Xu, Xv, Xuu, Xuv, Xvv, u=math.nan, v=math.nan) -> FundamentalForms:
    W = cross(Xu, Xv)
    w = norm(W)
    if not w > REGULARITY_EPS:
        raise DegenerateSurface(u, v, w)
    N = W / w
    return FundamentalForms(
        E=dot(Xu, Xu),
        F=dot(Xu, Xv),
        G=dot(Xv, Xv),
        e=dot(N, Xuu),
        f=dot(N, Xuv),
        g=dot(N, Xvv),
        N=N,
        area_element=w,
    )


def fundamental_forms(surface: ParametricSurface, u: float, v: float) -> FundamentalForms:
    return forms_from_derivatives(*surface.derivatives(u, v), u=u, v=v)


def weighted_mean_curvature(
    surface: ParametricSurface, density: DensityField, u: float, v: float
) -> tuple[float, float]:
    """Return ``(H, H_phi)`` at ``(u, v)``."""
    ff = fundamental_forms(surface, u, v)
    H = ff.mean_curvature
    grad = density.grad_phi(surface.point(u, v))
    return H, H - 0.5 * dot(grad, ff.N)


class GridRecord(NamedTuple):
    u: float
    v: float
    x: float
    y: float
    z: float
    H: float
    Hphi: float


@dataclass(frozen=True)
class MinimalityReport:
    grid: tuple[GridRecord, ...]
    tolerance: float
    max_abs_Hphi: float = field(init=False)
    mean_abs_Hphi: float = field(init=False)

    def __post_init__(self):
        vals = [abs(r.Hphi) for r in self.grid]
        object.__setattr__(self, "max_abs_Hphi", max(vals) if vals else 0.0)
        object.__setattr__(self, "mean_abs_Hphi", math.fsum(vals) / len(vals) if vals else 0.0)

    @property
    def passed(self) -> bool:
        return self.max_abs_Hphi < self.tolerance


def minimality_report(
    surface: ParametricSurface,
    density: DensityField,
    nu: int = 50,
    nv: int = 50,
    tolerance: float = 1e-8,
) -> MinimalityReport:
    """Evaluate H and H_phi on a uniform ``nu x nv`` grid (u outer, v inner)."""
    if not tolerance > 0:
        raise InvalidParams("tolerance must be positive")
    us, vs = surface.grid(nu, nv)
    records = []
    for u in us:
        for v in vs:
            u, v = float(u), float(v)
            H, Hphi = weighted_mean_curvature(surface, density, u, v)
            x, y, z = surface.point(u, v)
            records.append(GridRecord(u, v, float(x), float(y), float(z), H, Hphi))
    return MinimalityReport(tuple(records), tolerance)


# ---------------------------------------------------------------------------
# weighted area and its first variation


def _midpoints(lo: float, hi: float, n: int) -> tuple[np.ndarray, float]:
    h = (hi - lo) / n
    return lo + h * (np.arange(n) + 0.5), h


def _midpoint_quadrature(surface: ParametricSurface, integrand, nu: int, nv: int) -> float:
    if nu < 2 or nv < 2:
        raise InvalidParams(f"quadrature needs nu, nv >= 2 cells, got {nu} x {nv}")
    us, hu = _midpoints(*surface.u_range, nu)
    vs, hv = _midpoints(*surface.v_range, nv)
    terms = [integrand(float(u), float(v)) for u in us for v in vs]
    return math.fsum(terms) * hu * hv


def weighted_area(surface: ParametricSurface, density: DensityField, nu: int = 64, nv: int = 64) -> float:
    """Midpoint rule over ``nu x nv`` uniform cells of ``e^phi |Xu ^ Xv|``; O(h^2)."""

    def integrand(u, v):
        Xu, Xv = surface.first_derivatives(u, v)
        w = norm(cross(Xu, Xv))
        if not w > REGULARITY_EPS:
            raise DegenerateSurface(u, v, w)
        return math.exp(density.phi(surface.point(u, v))) * w

    return _midpoint_quadrature(surface, integrand, nu, nv)


def normal_perturbation(surface: ParametricSurface, bump: Callable[[float, float], float], t: float) -> ParametricSurface:
    """The surface ``X + t * bump * N``; its derivatives are taken numerically."""

    def X(u, v):
        Xu, Xv = surface.first_derivatives(u, v)
        W = cross(Xu, Xv)
        w = norm(W)
        if not w > REGULARITY_EPS:
            raise DegenerateSurface(u, v, w)
        return surface.point(u, v) + (t * bump(u, v) / w) * W

    return ParametricSurface(X, surface.u_range, surface.v_range, name=f"{surface.name} + {t:g} psi N")


def first_variation_check(
    surface: ParametricSurface,
    density: DensityField,
    bump: Callable[[float, float], float],
    dt: float = 1e-3,
    nu: int = 64,
    nv: int = 64,
) -> tuple[float, float]:
    """Compare d/dt of weighted area along ``bump * N`` with ``-2 int H_phi bump e^phi dA``.

    Returns ``(numeric_derivative, formula_value)``; the first is a central
    difference in ``t``, the second the same midpoint rule applied to the
    closed-form integrand.
    """
    if not dt > 0:
        raise InvalidParams("dt must be positive")
    plus = weighted_area(normal_perturbation(surface, bump, dt), density, nu, nv)
    minus = weighted_area(normal_perturbation(surface, bump, -dt), density, nu, nv)
    numeric = (plus - minus) / (2 * dt)

    def integrand(u, v):
        ff = fundamental_forms(surface, u, v)
        x = surface.point(u, v)
        Hphi = ff.mean_curvature - 0.5 * dot(density.grad_phi(x), ff.N)
        return -2.0 * Hphi * bump(u, v) * math.exp(density.phi(x)) * ff.area_element

    formula = _midpoint_quadrature(surface, integrand, nu, nv)
    return numeric, formula


def with_name(surface: ParametricSurface, name: str) -> ParametricSurface:
    return replace(surface, name=name)
