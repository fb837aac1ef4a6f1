"""Ruled surfaces ``X(u, v) = alpha(u) + v beta(u)`` under a log-linear density.

Covers the four-coefficient residual system whose vanishing is equivalent to
``H_phi = 0``, constructors for the minimal families (vertical planes and the
cylindrical arctan/log family), the directrix ODE and its closed form, and
numerical searches for noncylindrical counterexamples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from .errors import (
    InvalidInit,
    InvalidParams,
    NonConstantGradient,
    NormalizationViolation,
    UseVerticalPlane,
)
from .geometry import (
    DensityField,
    ParametricSurface,
    cross,
    dot,
    ez_density,
    norm,
    rotation_z,
)

NORMALIZATION_TOL = 1e-8
RESIDUAL_TOL = 1e-6
_FD_H1 = 1e-5
_FD_H2 = 1e-4


@dataclass(frozen=True)
class Curve:
    """A space curve with optional analytic first and second derivatives."""

    pos: Callable[[float], np.ndarray]
    d1: Optional[Callable[[float], np.ndarray]] = None
    d2: Optional[Callable[[float], np.ndarray]] = None

    def __call__(self, u: float) -> np.ndarray:
        return np.asarray(self.pos(u), dtype=float)

    def velocity(self, u: float) -> np.ndarray:
        if self.d1 is not None:
            return np.asarray(self.d1(u), dtype=float)
        h = _FD_H1 * max(1.0, abs(u))
        return (self(u + h) - self(u - h)) / (2 * h)

    def acceleration(self, u: float) -> np.ndarray:
        if self.d2 is not None:
            return np.asarray(self.d2(u), dtype=float)
        if self.d1 is not None:
            h = _FD_H1 * max(1.0, abs(u))
            return (self.velocity(u + h) - self.velocity(u - h)) / (2 * h)
        h = _FD_H2 * max(1.0, abs(u))
        return (self(u + h) - 2 * self(u) + self(u - h)) / (h * h)

    @classmethod
    def constant(cls, value: Sequence[float]) -> "Curve":
        c = np.asarray(value, dtype=float)
        zero = np.zeros(3)
        return cls(lambda u: c, lambda u: zero, lambda u: zero)

    @classmethod
    def line(cls, through: Sequence[float], direction: Sequence[float]) -> "Curve":
        p = np.asarray(through, dtype=float)
        d = np.asarray(direction, dtype=float)
        zero = np.zeros(3)
        return cls(lambda u: p + u * d, lambda u: d, lambda u: zero)

    @classmethod
    def from_velocity(cls, d1: Callable[[float], np.ndarray], u0: float = 0.0, start=(0.0, 0.0, 0.0)) -> "Curve":
        """Curve obtained by integrating ``d1`` from ``u0`` (adaptive quadrature, cached)."""
        p0 = np.asarray(start, dtype=float)

        @lru_cache(maxsize=4096)
        def pos(u):
            if u == u0:
                return p0
            return p0 + np.array([
                integrate.quad(lambda s, k=k: float(d1(s)[k]), u0, u, epsabs=1e-13, epsrel=1e-13)[0]
                for k in range(3)
            ])

        return cls(pos, d1)

    def transformed(self, R: np.ndarray, shift=(0.0, 0.0, 0.0)) -> "Curve":
        T = np.asarray(shift, dtype=float)
        return Curve(
            lambda u: R @ self(u) + T,
            lambda u: R @ self.velocity(u),
            lambda u: R @ self.acceleration(u),
        )


@dataclass(frozen=True)
class RuledSurface:
    """``X(u, v) = alpha(u) + v beta(u)`` with ``|alpha'| = |beta| = 1`` and ``alpha' . beta = 0``."""

    alpha: Curve
    beta: Curve
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    name: str = "ruled"

    def point(self, u: float, v: float) -> np.ndarray:
        return self.alpha(u) + v * self.beta(u)

    def as_surface(self) -> ParametricSurface:
        a, b = self.alpha, self.beta
        zero = np.zeros(3)
        return ParametricSurface(
            X=self.point,
            u_range=self.u_range,
            v_range=self.v_range,
            Xu=lambda u, v: a.velocity(u) + v * b.velocity(u),
            Xv=lambda u, v: b(u),
            Xuu=lambda u, v: a.acceleration(u) + v * b.acceleration(u),
            Xuv=lambda u, v: b.velocity(u),
            Xvv=lambda u, v: zero,
            name=self.name,
        )

    def transformed(self, angle: float = 0.0, shift=(0.0, 0.0, 0.0)) -> "RuledSurface":
        """Rotate about the z-axis by ``angle`` then translate by ``shift``."""
        R = rotation_z(angle)
        return RuledSurface(
            self.alpha.transformed(R, shift),
            self.beta.transformed(R),
            self.u_range,
            self.v_range,
            self.name,
        )

    def normalization_errors(self, n: int = 32) -> dict[str, tuple[float, float]]:
        """Worst deviation (and where) of each normalization condition on ``n`` samples."""
        worst = {"|alpha'| = 1": (0.0, math.nan), "|beta| = 1": (0.0, math.nan),
                 "<alpha', beta> = 0": (0.0, math.nan)}
        for u in np.linspace(*self.u_range, n):
            u = float(u)
            da, b = self.alpha.velocity(u), self.beta(u)
            for key, err in (
                ("|alpha'| = 1", abs(norm(da) - 1.0)),
                ("|beta| = 1", abs(norm(b) - 1.0)),
                ("<alpha', beta> = 0", abs(dot(da, b))),
            ):
                if not err <= worst[key][0]:
                    worst[key] = (err, u)
        return worst


def build_ruled(alpha: Curve, beta: Curve, u_range, v_range, name: str = "ruled") -> RuledSurface:
    rs = RuledSurface(alpha, beta, tuple(map(float, u_range)), tuple(map(float, v_range)), name)
    if not (rs.u_range[0] < rs.u_range[1] and rs.v_range[0] < rs.v_range[1]):
        raise InvalidParams(f"empty ranges {u_range} x {v_range}")
    for cond, (err, u) in rs.normalization_errors(32).items():
        if not err <= NORMALIZATION_TOL:
            raise NormalizationViolation(cond, u, err)
    return rs


def coefficient_residuals(rs: RuledSurface, density: DensityField, u: float) -> tuple[float, float, float, float]:
    """Residuals ``(r1, r2, r3, r4)`` of the coefficient system at ``u``.

    For a normalized ruled surface and constant ``grad phi``::

        2 E |W| H_phi = r1 + v r2 + v^2 r3 - v^3 r4,   W = (alpha' + v beta') ^ beta

    so ``H_phi`` vanishes on every ruling iff all four residuals vanish.
    """
    if not density.is_linear:
        raise NonConstantGradient(
            f"coefficient residuals need a log-linear density, got kind '{density.kind}'"
        )
    grad = density.a
    da, dda = rs.alpha.velocity(u), rs.alpha.acceleration(u)
    b, db, ddb = rs.beta(u), rs.beta.velocity(u), rs.beta.acceleration(u)
    P = cross(da, b)
    Q = cross(db, b)
    P_grad = dot(P, grad)
    Q_grad = dot(Q, grad)
    ab = dot(da, db)
    bb = dot(db, db)
    r1 = dot(P, dda) - P_grad
    r2 = dot(P, ddb) + dot(Q, dda) - Q_grad - 2 * ab * P_grad
    r3 = dot(Q, ddb) - 2 * ab * Q_grad - bb * P_grad
    r4 = bb * Q_grad
    return r1, r2, r3, r4


def max_residual(rs: RuledSurface, density: DensityField, n: int = 32) -> float:
    """``max_u (|r1| + |r2| + |r3| + |r4|)`` over ``n`` samples of the u-range."""
    return max(
        sum(abs(r) for r in coefficient_residuals(rs, density, float(u)))
        for u in np.linspace(*rs.u_range, n)
    )


# ---------------------------------------------------------------------------
# minimal families


@dataclass(frozen=True)
class CylindricalFamilyParams:
    A: float
    b: float
    c: float
    rot_z: float = 0.0
    shift: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        vals = (self.A, self.b, self.c, self.rot_z, *self.shift)
        if not all(math.isfinite(x) for x in vals):
            raise InvalidParams("cylindrical family parameters must be finite")
        if not self.A > 0:
            raise InvalidParams(f"A must be positive, got {self.A}")
        if abs(self.b * self.b + self.c * self.c - 1.0) >= 1e-12:
            raise InvalidParams(f"need b^2 + c^2 = 1, got b={self.b}, c={self.c}")
        if self.b == 0:
            raise UseVerticalPlane(
                "b = 0 gives a vertical director; those minimal surfaces are vertical "
                "planes, build them with make_vertical_plane"
            )

    @property
    def B(self) -> float:
        return 2.0 * math.sqrt(self.A)


def _check_family_args(A: float, b: float) -> None:
    if not A > 0:
        raise InvalidParams(f"A must be positive, got {A}")
    if b == 0:
        raise UseVerticalPlane("b = 0: use make_vertical_plane for a vertical director")


def closed_form_directrix(A: float, b: float, c: float, u: float) -> tuple[np.ndarray, np.ndarray]:
    """Position and unit velocity of the cylindrical-family directrix at ``u``.

    ``z = log(e^{-bu} + A e^{bu})``, ``y = -(c/b) z``,
    ``x = (2/b) arctan(sqrt(A) e^{bu})``.
    """
    _check_family_args(A, b)
    pos, vel, _ = _directrix(A, b, c, u)
    return pos, vel


def _directrix(A, b, c, u):
    sA = math.sqrt(A)
    ep, em = math.exp(b * u), math.exp(-b * u)
    w = em + A * ep
    dw = b * (A * ep - em)
    z = math.log(w)
    dz = dw / w
    ddz = b * b - dz * dz
    x = (2.0 / b) * math.atan(sA * ep)
    dx = 2.0 * sA / w
    ddx = -dx * dz
    k = -c / b
    pos = np.array([x, k * z, z])
    vel = np.array([dx, k * dz, dz])
    acc = np.array([ddx, k * ddz, ddz])
    return pos, vel, acc


def make_cylindrical_minimal(p: CylindricalFamilyParams, v_range=(-1.0, 1.0), u_range=(-1.0, 1.0)) -> RuledSurface:
    A, b, c = p.A, p.b, p.c
    _check_family_args(A, b)
    alpha = Curve(
        lambda u: _directrix(A, b, c, u)[0],
        lambda u: _directrix(A, b, c, u)[1],
        lambda u: _directrix(A, b, c, u)[2],
    )
    rs = build_ruled(
        alpha,
        Curve.constant((0.0, b, c)),
        u_range,
        v_range,
        name=f"cylindrical A={A:g} b={b:g} c={c:g}",
    )
    if p.rot_z or any(p.shift):
        rs = rs.transformed(p.rot_z, p.shift)
    return rs


def make_vertical_plane(direction_in_xy: Sequence[float], through=(0.0, 0.0, 0.0),
                        u_range=(-1.0, 1.0), v_range=(-1.0, 1.0)) -> RuledSurface:
    d = np.asarray(direction_in_xy, dtype=float)
    n = float(np.hypot(d[0], d[1]))
    if d.shape != (2,) or not n > 0:
        raise InvalidParams("direction_in_xy must be a nonzero 2-vector")
    if abs(n - 1.0) > NORMALIZATION_TOL:
        raise InvalidParams(f"direction_in_xy must be a unit vector, |d| = {n}")
    return build_ruled(
        Curve.line(through, (d[0], d[1], 0.0)),
        Curve.constant((0.0, 0.0, 1.0)),
        u_range,
        v_range,
        name=f"vertical plane d=({d[0]:g}, {d[1]:g})",
    )


# ---------------------------------------------------------------------------
# directrix ODE


@dataclass(frozen=True)
class OdeSolution:
    u: np.ndarray
    position: np.ndarray
    velocity: np.ndarray
    step: float
    params: tuple[float, float, Optional[float]]

    @property
    def samples(self):
        return [(float(u), p, v) for u, p, v in zip(self.u, self.position, self.velocity)]

    @property
    def speed_drift(self) -> float:
        return float(np.max(np.abs(np.linalg.norm(self.velocity, axis=1) - 1.0)))


def directrix_rhs(b: float, c: float):
    def rhs(state):
        vx, vy, vz = state[3], state[4], state[5]
        return np.array([vx, vy, vz, -vx * vz, -vy * vz - c * b, b * b - vz * vz])
    return rhs


def _rk4(rhs, y0: np.ndarray, h: float, n: int) -> np.ndarray:
    out = np.empty((n + 1, y0.size))
    out[0] = y = y0
    for i in range(n):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return out


def integrate_directrix(b: float, c: float, init_pos, init_vel, u_end: float, step: float = 1e-3) -> OdeSolution:
    """Classical RK4 for ``x'' = -x'z'``, ``y'' = -y'z' - cb``, ``z'' = b^2 - z'^2`` on ``[0, u_end]``.

    ``u_end`` may be negative. The step is shrunk so that ``u_end`` is hit exactly.
    """
    p0 = np.asarray(init_pos, dtype=float)
    v0 = np.asarray(init_vel, dtype=float)
    if not step > 0:
        raise InvalidInit("step must be positive")
    if abs(b * b + c * c - 1.0) > NORMALIZATION_TOL:
        raise InvalidInit(f"need b^2 + c^2 = 1, got {b * b + c * c}")
    if abs(norm(v0) - 1.0) > NORMALIZATION_TOL:
        raise InvalidInit(f"initial velocity must be unit, |v0| = {norm(v0)}")
    if abs(b * v0[1] + c * v0[2]) > NORMALIZATION_TOL:
        raise InvalidInit("initial velocity must be orthogonal to the director (0, b, c)")
    n = max(1, int(math.ceil(abs(u_end) / step - 1e-9))) if u_end != 0 else 0
    h = u_end / n if n else 0.0
    states = _rk4(directrix_rhs(b, c), np.concatenate([p0, v0]), h, n)
    us = h * np.arange(n + 1)
    A = None
    if b != 0:
        s = v0[2] / b
        if abs(s) < 1:
            A = (1 + s) / (1 - s)
    return OdeSolution(us, states[:, :3], states[:, 3:], abs(h) if n else step, (b, c, A))


def ode_vs_closed_form(A: float, b: float, c: float, u_end: float, step: float = 1e-3):
    """Integrate from the closed-form state at ``u = 0`` and compare.

    Returns ``(solution, closed_positions, closed_velocities)``.
    """
    p0, v0 = closed_form_directrix(A, b, c, 0.0)
    sol = integrate_directrix(b, c, p0, v0, u_end, step)
    cf = [closed_form_directrix(A, b, c, float(u)) for u in sol.u]
    return sol, np.array([p for p, _ in cf]), np.array([v for _, v in cf])


# ---------------------------------------------------------------------------
# classification checks


def is_vertical_plane(rs: RuledSurface, n: int = 32, tol: float = 1e-8) -> bool:
    """True when every tangent plane along ``v = 0`` is one fixed vertical plane."""
    normals = []
    for u in np.linspace(*rs.u_range, n):
        W = cross(rs.alpha.velocity(float(u)), rs.beta(float(u)))
        normals.append(W / norm(W))
    N0 = normals[0]
    return all(abs(N[2]) < tol and norm(cross(N, N0)) < tol for N in normals)


def classify_ruled(rs: RuledSurface, n: int = 32, tol: float = 1e-6) -> str:
    """Name the known minimal class ``rs`` belongs to, or ``"other"``.

    Classes: ``"vertical_plane"``; ``"cylindrical_family"`` when the director is
    constant and, after a rotation about z bringing it to ``(0, b, c)`` with
    ``b > 0``, the directrix velocity matches the closed-form family (up to a
    shift of ``u`` absorbed into ``A`` and a mirror ``x -> -x``).
    """
    if is_vertical_plane(rs, n, tol):
        return "vertical_plane"
    us = np.linspace(*rs.u_range, n)
    if max(norm(rs.beta.velocity(float(u))) for u in us) > tol:
        return "other"
    a, b0, c = rs.beta(float(us[0]))
    bb = math.hypot(a, b0)
    if bb < tol:
        return "other"
    R = rotation_z(math.atan2(a, b0))
    u0 = float(us[0])
    V0 = R @ rs.alpha.velocity(u0)
    s = V0[2] / bb
    if not abs(s) < 1:
        return "other"
    A_eff = (1 + s) / (1 - s)
    sign = 1.0 if V0[0] >= 0 else -1.0
    for u in us:
        V = R @ rs.alpha.velocity(float(u))
        _, ref = closed_form_directrix(A_eff, bb, c, float(u) - u0)
        ref = ref * np.array([sign, 1.0, 1.0])
        if norm(V - ref) > tol:
            return "other"
    return "cylindrical_family"


def ruled_helicoid(u_range=(-1.0, 1.0), v_range=(-1.0, 1.0)) -> RuledSurface:
    """Unit-pitch helicoid ``(v cos u, v sin u, u)`` in ruled normal form."""
    return build_ruled(
        Curve(lambda u: np.array([0.0, 0.0, u]), lambda u: np.array([0.0, 0.0, 1.0]),
              lambda u: np.zeros(3)),
        Curve(lambda u: np.array([math.cos(u), math.sin(u), 0.0]),
              lambda u: np.array([-math.sin(u), math.cos(u), 0.0]),
              lambda u: np.array([-math.cos(u), -math.sin(u), 0.0])),
        u_range, v_range, name="helicoid",
    )


def _tilted_great_circle_helicoid(theta: float) -> RuledSurface:
    # beta sweeps the great circle in the plane with normal n = (0, -sin t, cos t)
    st, ct = math.sin(theta), math.cos(theta)
    n = np.array([0.0, -st, ct])
    return build_ruled(
        Curve.line((0.0, 0.0, 0.0), n),
        Curve(lambda u: np.array([math.cos(u), math.sin(u) * ct, math.sin(u) * st]),
              lambda u: np.array([-math.sin(u), math.cos(u) * ct, math.cos(u) * st]),
              lambda u: np.array([-math.cos(u), -math.sin(u) * ct, -math.sin(u) * st])),
        (-1.0, 1.0), (-1.0, 1.0), name=f"beta in tilted plane (theta={theta:g})",
    )


def _wavy_spherical_director(k: float = 0.4) -> RuledSurface:
    # beta = (cos u cos w, sin u cos w, sin w), w = k sin(2u); alpha runs on the unit circle
    def beta(u):
        w = k * math.sin(2 * u)
        return np.array([math.cos(u) * math.cos(w), math.sin(u) * math.cos(w), math.sin(w)])

    return build_ruled(
        Curve(lambda u: np.array([math.cos(u), math.sin(u), 0.0]),
              lambda u: np.array([-math.sin(u), math.cos(u), 0.0]),
              lambda u: np.array([-math.cos(u), -math.sin(u), 0.0])),
        Curve(beta),
        (-1.0, 1.0), (-0.5, 0.5), name="non-planar spherical director",
    )


def _meridian_plane_director() -> RuledSurface:
    # beta in the xz-plane; alpha' in the same plane: a piece of the plane y = 0
    return build_ruled(
        Curve(lambda u: np.array([math.cos(u), 0.0, math.sin(u)]),
              lambda u: np.array([-math.sin(u), 0.0, math.cos(u)]),
              lambda u: np.array([-math.cos(u), 0.0, -math.sin(u)])),
        Curve(lambda u: np.array([math.cos(u), 0.0, math.sin(u)]),
              lambda u: np.array([-math.sin(u), 0.0, math.cos(u)]),
              lambda u: np.array([-math.cos(u), 0.0, -math.sin(u)])),
        (-1.0, 1.0), (0.0, 1.0), name="director in xz-plane",
    )


def noncylindrical_catalog() -> list[RuledSurface]:
    return [
        ruled_helicoid(),
        _tilted_great_circle_helicoid(math.pi / 4),
        _wavy_spherical_director(),
        _meridian_plane_director(),
        make_vertical_plane((1.0, 0.0)),
    ]


@dataclass(frozen=True)
class CounterexampleEntry:
    name: str
    max_residuals: tuple[float, float, float, float]
    vertical_plane: bool

    @property
    def violates(self) -> bool:
        return max(self.max_residuals) > RESIDUAL_TOL

    @property
    def consistent(self) -> bool:
        # minimal iff the entry is a vertical plane
        return self.violates != self.vertical_plane


@dataclass(frozen=True)
class CounterexampleReport:
    entries: tuple[CounterexampleEntry, ...]

    @property
    def all_consistent(self) -> bool:
        return all(e.consistent for e in self.entries)

    def __getitem__(self, name: str) -> CounterexampleEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def noncylindrical_counterexample_suite(density: DensityField | None = None,
                                        catalog: Sequence[RuledSurface] | None = None,
                                        n: int = 32) -> CounterexampleReport:
    density = density or ez_density()
    entries = []
    for rs in catalog if catalog is not None else noncylindrical_catalog():
        worst = [0.0] * 4
        for u in np.linspace(*rs.u_range, n):
            r = coefficient_residuals(rs, density, float(u))
            worst = [max(w, abs(x)) for w, x in zip(worst, r)]
        entries.append(CounterexampleEntry(rs.name, tuple(worst), is_vertical_plane(rs, n)))
    return CounterexampleReport(tuple(entries))


# ---------------------------------------------------------------------------
# randomized falsification


def _random_smooth(rng: np.random.Generator, dim: int = 3):
    """Vector function of low-order polynomials plus sinusoids, coefficients in [-2, 2]."""
    coef = rng.uniform(-2, 2, size=(dim, 3))
    amp = rng.uniform(-2, 2, size=dim)
    freq = rng.uniform(0.5, 2.0, size=dim)
    phase = rng.uniform(0, 2 * math.pi, size=dim)

    def f(u):
        return coef[:, 0] + coef[:, 1] * u + coef[:, 2] * u * u + amp * np.sin(freq * u + phase)

    return f


def _frame_perpendicular(beta: np.ndarray, k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    e1 = cross(k, beta)
    e1 = e1 / norm(e1)
    return e1, cross(beta, e1)


def random_ruled(rng: np.random.Generator, kind: str) -> RuledSurface:
    """Random normalized ruled surface of the given kind.

    Kinds: ``noncylindrical`` and ``cylindrical`` (generic, not minimal),
    ``family`` and ``plane`` (planted minimal members).
    """
    if kind == "family":
        t = rng.uniform(0.1, math.pi / 2) * rng.choice([-1, 1])
        p = CylindricalFamilyParams(
            A=float(rng.uniform(0.25, 4.0)), b=math.sin(t), c=math.cos(t),
            rot_z=float(rng.uniform(0, 2 * math.pi)), shift=tuple(rng.uniform(-2, 2, 3)),
        )
        return make_cylindrical_minimal(p)
    if kind == "plane":
        a = rng.uniform(0, 2 * math.pi)
        return make_vertical_plane((math.cos(a), math.sin(a)), tuple(rng.uniform(-2, 2, 3)))

    k = rng.normal(size=3)
    k /= np.linalg.norm(k)
    psi = _random_smooth(rng, 1)
    if kind == "cylindrical":
        b = rng.normal(size=3)
        b /= np.linalg.norm(b)
        beta = Curve.constant(b)
    elif kind == "noncylindrical":
        raw = _random_smooth(rng)
        beta = Curve(lambda u: raw(u) / np.linalg.norm(raw(u)))
    else:
        raise ValueError(f"unknown kind {kind!r}")

    def dalpha(u):
        e1, e2 = _frame_perpendicular(beta(u), k)
        p = float(psi(u)[0])
        return math.cos(p) * e1 + math.sin(p) * e2

    return build_ruled(Curve.from_velocity(dalpha), beta, (-1.0, 1.0), (-1.0, 1.0), name=f"random {kind}")


@dataclass(frozen=True)
class FalsificationResult:
    samples: int
    minimal: int
    counterexamples: tuple[str, ...]
    classes: dict = field(default_factory=dict)


def ruled_falsification_search(n: int = 200, seed: int = 0,
                               density: DensityField | None = None) -> FalsificationResult:
    """Sample ruled surfaces; every one whose residuals vanish must be a known minimal class."""
    density = density or ez_density()
    rng = np.random.default_rng(seed)
    kinds = ("noncylindrical", "cylindrical", "family", "plane")
    minimal = 0
    bad = []
    classes: dict[str, int] = {}
    for i in range(n):
        kind = kinds[i % len(kinds)]
        rs = random_ruled(rng, kind)
        if max_residual(rs, density, 16) < RESIDUAL_TOL:
            minimal += 1
            cls = classify_ruled(rs)
            classes[cls] = classes.get(cls, 0) + 1
            if cls == "other":
                bad.append(f"sample {i} ({kind})")
    return FalsificationResult(n, minimal, tuple(bad), classes)
