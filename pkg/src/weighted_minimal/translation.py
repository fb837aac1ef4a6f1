"""Translation surfaces ``(u, v, g(u) + h(v))`` in R^3 with density ``e^z``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import DerivativeMismatch, InvalidParams, NotRuledForm, PoleAt, Theorem2Violation
from .geometry import ParametricSurface
from .ruled import Curve, RuledSurface, build_ruled

AFFINE_TOL = 1e-8


@dataclass(frozen=True)
class Profile:
    """A scalar function with its first and second derivatives."""

    f: Callable[[float], float]
    df: Callable[[float], float]
    ddf: Callable[[float], float]

    def __call__(self, x: float) -> float:
        return self.f(x)

    @classmethod
    def affine(cls, slope: float, offset: float = 0.0) -> "Profile":
        return cls(lambda x: slope * x + offset, lambda x: slope, lambda x: 0.0)

    @classmethod
    def polynomial(cls, coefficients: Sequence[float]) -> "Profile":
        """``coefficients[k]`` multiplies ``x**k``."""
        p = np.polynomial.Polynomial(coefficients)
        dp, ddp = p.deriv(1), p.deriv(2)
        return cls(lambda x: float(p(x)), lambda x: float(dp(x)), lambda x: float(ddp(x)))

    def check(self, lo: float, hi: float, n: int = 9, rtol: float = 1e-6) -> float:
        worst = 0.0
        for x in np.linspace(lo, hi, n):
            x = float(x)
            h1 = 1e-5 * max(1.0, abs(x))
            h2 = 1e-4 * max(1.0, abs(x))
            fd1 = (self.f(x + h1) - self.f(x - h1)) / (2 * h1)
            fd2 = (self.f(x + h2) - 2 * self.f(x) + self.f(x - h2)) / (h2 * h2)
            for exact, approx in ((self.df(x), fd1), (self.ddf(x), fd2)):
                err = abs(exact - approx) / max(1.0, abs(exact))
                if err > rtol:
                    raise DerivativeMismatch(
                        f"supplied derivative {exact:.9g} vs finite difference {approx:.9g} at x={x:.6g}"
                    )
                worst = max(worst, err)
        return worst


@dataclass(frozen=True)
class TranslationSurface:
    g: Profile
    h: Profile
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    d_shift: float = 0.0
    name: str = "translation"

    def point(self, u: float, v: float) -> np.ndarray:
        return np.array([u, v, self.g(u) + self.h(v)])

    def as_surface(self) -> ParametricSurface:
        g, h = self.g, self.h
        zero = np.zeros(3)
        return ParametricSurface(
            X=self.point,
            u_range=self.u_range,
            v_range=self.v_range,
            Xu=lambda u, v: np.array([1.0, 0.0, g.df(u)]),
            Xv=lambda u, v: np.array([0.0, 1.0, h.df(v)]),
            Xuu=lambda u, v: np.array([0.0, 0.0, g.ddf(u)]),
            Xuv=lambda u, v: zero,
            Xvv=lambda u, v: np.array([0.0, 0.0, h.ddf(v)]),
            name=self.name,
        )


def build_translation(g: Profile, h: Profile, u_range=(-1.0, 1.0), v_range=(-1.0, 1.0),
                      d_shift: float = 0.0, name: str = "translation") -> TranslationSurface:
    u_range = tuple(map(float, u_range))
    v_range = tuple(map(float, v_range))
    if not (u_range[0] < u_range[1] and v_range[0] < v_range[1]):
        raise InvalidParams(f"empty ranges {u_range} x {v_range}")
    g.check(*u_range)
    h.check(*v_range)
    return TranslationSurface(g, h, u_range, v_range, d_shift, name)


def pde_residual(ts: TranslationSurface, u: float, v: float) -> float:
    """``g''(1 + h'^2) + h''(1 + g'^2) - (1 + g'^2 + h'^2)``.

    Equals ``2 (1 + g'^2 + h'^2)^{3/2} H_phi`` for the density ``e^z``.
    """
    return _residual(ts.g, ts.h, u, v)


def _residual(g: Profile, h: Profile, u: float, v: float) -> float:
    gp, hp = g.df(u), h.df(v)
    return g.ddf(u) * (1 + hp * hp) + h.ddf(v) * (1 + gp * gp) - (1 + gp * gp + hp * hp)


# ---------------------------------------------------------------------------
# the closed-form minimal profile


def _profile_poles(c: float, D: float, lo: float, hi: float) -> list[float]:
    k = math.sqrt(1 + c * c)
    # poles where (u + D) / k = pi/2 + n pi
    n_lo = math.ceil(((lo + D) / k - math.pi / 2) / math.pi)
    n_hi = math.floor(((hi + D) / k - math.pi / 2) / math.pi)
    return [k * (math.pi / 2 + n * math.pi) - D for n in range(n_lo, n_hi + 1)]


def scherk_density_profile(c: float, D: float, u: float) -> float:
    """``-(1 + c^2) log|cos((u + D) / sqrt(1 + c^2))|``."""
    k2 = 1 + c * c
    cos = math.cos((u + D) / math.sqrt(k2))
    if abs(cos) < 1e-12:
        raise PoleAt(u)
    return -k2 * math.log(abs(cos))


def scherk_profile(c: float, D: float = 0.0) -> Profile:
    k = math.sqrt(1 + c * c)
    return Profile(
        lambda u: scherk_density_profile(c, D, u),
        lambda u: k * math.tan((u + D) / k),
        lambda u: 1.0 / math.cos((u + D) / k) ** 2,
    )


def make_translation_minimal(c: float = 0.0, D: float = 0.0, d: float = 0.0,
                             u_range=(-1.0, 1.0), v_range=(-1.0, 1.0)) -> TranslationSurface:
    poles = _profile_poles(c, D, *u_range)
    if poles:
        raise PoleAt(poles[0])
    return build_translation(
        scherk_profile(c, D), Profile.affine(c, d), u_range, v_range, d_shift=d,
        name=f"translation minimal c={c:g} D={D:g}",
    )


# ---------------------------------------------------------------------------
# conversion to ruled form


def _is_affine(p: Profile, lo: float, hi: float, n: int = 33, tol: float = AFFINE_TOL) -> bool:
    return max(abs(p.ddf(float(x))) for x in np.linspace(lo, hi, n)) < tol


@dataclass(frozen=True)
class RuledView:
    """A ruled form of a translation surface plus the map between parameters.

    ``to_ruled_params(u, v)`` returns the ``(s, t)`` with
    ``ruled.point(s, t) == translation.point(u, v)``.
    """

    ruled: RuledSurface
    to_ruled_params: Callable[[float, float], tuple[float, float]]
    swapped: bool


def to_ruled(ts: TranslationSurface) -> RuledView:
    """Rewrite a translation surface with an affine summand as a normalized ruled surface.

    With ``h(v) = c v + d`` the rulings point along ``(0, 1, c)``; the directrix
    is the orthogonal trajectory through ``v = 0`` reparametrized by arc length.
    An affine ``g`` is handled by exchanging the roles of the coordinates.
    """
    if _is_affine(ts.h, *ts.v_range):
        return _ruled_from(ts.g, ts.h, ts.u_range, ts.v_range, swapped=False, name=ts.name)
    if _is_affine(ts.g, *ts.u_range):
        return _ruled_from(ts.h, ts.g, ts.v_range, ts.u_range, swapped=True, name=ts.name)
    raise NotRuledForm("neither summand of the translation surface is affine")


def _ruled_from(prof: Profile, lin: Profile, p_range, q_range, swapped: bool, name: str) -> RuledView:
    # work in coordinates (p, q, z) with z = prof(p) + c q + d; swap x/y at the end if needed
    c = lin.df(0.5 * (q_range[0] + q_range[1]))
    d = lin(0.0)
    k2 = 1 + c * c
    k = math.sqrt(k2)
    p0 = 0.5 * (p_range[0] + p_range[1])
    g0 = prof(p0)
    perm = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=float) if swapped else np.eye(3)

    def q_of(p):
        # orthogonal trajectory through (p0, q = 0)
        return -c * (prof(p) - g0) / k2

    def speed(p):
        gp = prof.df(p)
        return math.sqrt(1 + gp * gp / k2)

    @lru_cache(maxsize=None)
    def arclength(p):
        if p == p0:
            return 0.0
        return integrate.quad(speed, p0, p, epsabs=1e-13, epsrel=1e-13, limit=200)[0]

    s_lo, s_hi = arclength(p_range[0]), arclength(p_range[1])

    @lru_cache(maxsize=None)
    def p_of(s):
        if s == 0.0:
            return p0
        return optimize.brentq(lambda p: arclength(p) - s, p_range[0], p_range[1], xtol=1e-15)

    def gamma(p):
        q = q_of(p)
        return perm @ np.array([p, q, prof(p) + c * q + d])

    def dgamma(p):
        gp = prof.df(p)
        return perm @ np.array([1.0, -c * gp / k2, gp / k2])

    def ddgamma(p):
        gpp = prof.ddf(p)
        return perm @ np.array([0.0, -c * gpp / k2, gpp / k2])

    def alpha(s):
        return gamma(p_of(s))

    def dalpha(s):
        p = p_of(s)
        return dgamma(p) / speed(p)

    def ddalpha(s):
        p = p_of(s)
        d1, d2 = dgamma(p), ddgamma(p)
        n2 = float(d1 @ d1)
        return (d2 - (float(d1 @ d2) / n2) * d1) / n2

    beta = perm @ np.array([0.0, 1.0, c]) / k
    # t range covering the source q range along every ruling
    qs = [q_of(float(p)) for p in np.linspace(*p_range, 65)]
    t_lo = (q_range[0] - max(qs)) * k
    t_hi = (q_range[1] - min(qs)) * k

    rs = build_ruled(Curve(alpha, dalpha, ddalpha), Curve.constant(beta), (s_lo, s_hi), (t_lo, t_hi),
                     name=f"{name} (ruled)")

    def params(u, v):
        p, q = (v, u) if swapped else (u, v)
        return arclength(p), (q - q_of(p)) * k

    return RuledView(rs, params, swapped)


# ---------------------------------------------------------------------------
# the affine-summand dichotomy


class Verdict(enum.Enum):
    MINIMAL_G_AFFINE = "minimal_g_affine"
    MINIMAL_H_AFFINE = "minimal_h_affine"
    NOT_MINIMAL = "not_minimal"


@dataclass(frozen=True)
class Theorem2Result:
    verdict: Verdict
    max_residual: float
    max_g2: float
    max_h2: float
    # proof scalars at the middle v sample: 1 - h'', 1 + h'^2, 1 + h'^2 - h''
    A: float
    B: float
    C: float


def theorem2_check(g: Profile, h: Profile, us: Sequence[float], vs: Sequence[float],
                   tol_min: float = 1e-6, tol_affine: float = 1e-6) -> Theorem2Result:
    """Decide minimality of ``(u, v, g(u) + h(v))`` on a grid and which summand is affine.

    Raises Theorem2Violation if the surface is minimal on the grid while both
    summands have nonvanishing second derivative.
    """
    us = [float(u) for u in us]
    vs = [float(v) for v in vs]
    res = max(abs(_residual(g, h, u, v)) for u in us for v in vs)
    g2 = max(abs(g.ddf(u)) for u in us)
    h2 = max(abs(h.ddf(v)) for v in vs)
    v0 = vs[len(vs) // 2]
    hp, hpp = h.df(v0), h.ddf(v0)
    scal = (1 - hpp, 1 + hp * hp, 1 + hp * hp - hpp)
    if res >= tol_min:
        verdict = Verdict.NOT_MINIMAL
    elif h2 < tol_affine:
        verdict = Verdict.MINIMAL_H_AFFINE
    elif g2 < tol_affine:
        verdict = Verdict.MINIMAL_G_AFFINE
    else:
        raise Theorem2Violation(
            f"minimal on the grid (residual {res:.3g}) with both summands non-affine "
            f"(max|g''| = {g2:.3g}, max|h''| = {h2:.3g})"
        )
    return Theorem2Result(verdict, res, g2, h2, *scal)


def random_profile(rng: np.random.Generator) -> Profile:
    """Cubic plus sinusoid with coefficients in [-2, 2]."""
    a = rng.uniform(-2, 2, size=4)
    amp, w, ph = rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)
    p = np.polynomial.Polynomial(a)
    dp, ddp = p.deriv(1), p.deriv(2)
    return Profile(
        lambda x: float(p(x)) + amp * math.sin(w * x + ph),
        lambda x: float(dp(x)) + amp * w * math.cos(w * x + ph),
        lambda x: float(ddp(x)) - amp * w * w * math.sin(w * x + ph),
    )


@dataclass(frozen=True)
class TranslationSearchResult:
    samples: int
    best_residual: float
    counterexamples: int


def translation_falsification_search(n: int = 200, seed: int = 0, grid: int = 11,
                                     tol_min: float = 1e-6, tol_affine: float = 1e-6) -> TranslationSearchResult:
    """Random pairs with both summands non-affine; none may be minimal on the grid."""
    rng = np.random.default_rng(seed)
    xs = np.linspace(-1.0, 1.0, grid)
    best = math.inf
    found = 0
    drawn = 0
    while drawn < n:
        g, h = random_profile(rng), random_profile(rng)
        if max(abs(g.ddf(float(x))) for x in xs) < tol_affine or max(abs(h.ddf(float(x))) for x in xs) < tol_affine:
            continue
        drawn += 1
        res = max(abs(_residual(g, h, float(u), float(v))) for u in xs for v in xs)
        best = min(best, res)
        if res < tol_min:
            found += 1
    return TranslationSearchResult(n, best, found)


def euclidean_scherk(u_range=(-1.0, 1.0), v_range=(-1.0, 1.0)) -> TranslationSurface:
    """``z = log cos v - log cos u``, minimal without density."""
    g = Profile(lambda u: -math.log(math.cos(u)), lambda u: math.tan(u), lambda u: 1 / math.cos(u) ** 2)
    h = Profile(lambda v: math.log(math.cos(v)), lambda v: -math.tan(v), lambda v: -1 / math.cos(v) ** 2)
    return build_translation(g, h, u_range, v_range, name="Euclidean Scherk")
