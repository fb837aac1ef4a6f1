import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weighted_minimal.errors import (
    InvalidInit,
    InvalidParams,
    NonConstantGradient,
    NormalizationViolation,
    UseVerticalPlane,
)
from weighted_minimal.geometry import (
    ez_density,
    fundamental_forms,
    gaussian_density,
    minimality_report,
    weighted_mean_curvature,
)
from weighted_minimal.ruled import (
    Curve,
    CylindricalFamilyParams,
    build_ruled,
    classify_ruled,
    closed_form_directrix,
    coefficient_residuals,
    integrate_directrix,
    make_cylindrical_minimal,
    make_vertical_plane,
    max_residual,
    noncylindrical_counterexample_suite,
    ode_vs_closed_form,
    random_ruled,
    ruled_falsification_search,
    ruled_helicoid,
)

ZERO = np.zeros(3)


def circle_cylinder():
    return build_ruled(
        Curve(lambda u: np.array([math.cos(u), math.sin(u), 0.0]),
              lambda u: np.array([-math.sin(u), math.cos(u), 0.0]),
              lambda u: np.array([-math.cos(u), -math.sin(u), 0.0])),
        Curve.constant((0, 0, 1)), (-1, 1), (-1, 1))


# -- build_ruled ---------------------------------------------------------------

def test_build_vertical_plane():
    rs = build_ruled(Curve.line((0, 0, 0), (1, 0, 0)), Curve.constant((0, 0, 1)), (-1, 1), (-1, 1))
    assert np.array_equal(rs.point(0.5, 2.0), [0.5, 0, 2.0])


def test_build_circular_cylinder():
    rs = circle_cylinder()
    assert np.allclose(rs.point(0.0, 0.5), [1, 0, 0.5])


def test_build_rejects_non_unit_directrix():
    with pytest.raises(NormalizationViolation) as info:
        build_ruled(Curve.line((0, 0, 0), (2, 0, 0)), Curve.constant((0, 0, 1)), (-1, 1), (-1, 1))
    assert info.value.condition == "|alpha'| = 1"
    assert info.value.error == pytest.approx(1.0)


def test_build_rejects_non_orthogonal():
    with pytest.raises(NormalizationViolation) as info:
        build_ruled(Curve.line((0, 0, 0), (1, 0, 0)), Curve.constant((0.6, 0, 0.8)), (-1, 1), (-1, 1))
    assert "beta" in info.value.condition


def test_surface_view_analytic_derivatives():
    rs = make_cylindrical_minimal(CylindricalFamilyParams(0.5, 0.8, -0.6, rot_z=0.3, shift=(1, 2, 3)))
    assert rs.as_surface().check_derivatives(7, 7) < 1e-5
    assert ruled_helicoid().as_surface().check_derivatives() < 1e-5


# -- residuals -----------------------------------------------------------------

def test_residuals_vertical_plane(ez):
    rs = make_vertical_plane((1, 0))
    for u in (-0.5, 0.0, 0.7):
        assert coefficient_residuals(rs, ez, u) == (0, 0, 0, 0)


def test_residuals_circular_cylinder(ez):
    # alpha' ^ beta = (1, 0, 0), alpha'' = (-1, 0, 0) at u = 0
    r1, r2, r3, r4 = coefficient_residuals(circle_cylinder(), ez, 0.0)
    assert r1 == pytest.approx(-1.0, abs=1e-15)
    assert (r2, r3, r4) == (0, 0, 0)


def test_residuals_helicoid(ez):
    # beta' ^ beta = (0, 0, -1), |beta'| = 1
    for u in np.linspace(-1, 1, 9):
        r4 = coefficient_residuals(ruled_helicoid(), ez, float(u))[3]
        assert r4 == pytest.approx(-1.0, abs=1e-14)


def test_residuals_require_linear_density():
    with pytest.raises(NonConstantGradient):
        coefficient_residuals(make_vertical_plane((1, 0)), gaussian_density(), 0.0)


def _identity_gap(rs, density, u, v):
    """2 E |W| H_phi - (r1 + v r2 + v^2 r3 - v^3 r4)."""
    s = rs.as_surface()
    ff = fundamental_forms(s, u, v)
    Hphi = weighted_mean_curvature(s, density, u, v)[1]
    r1, r2, r3, r4 = coefficient_residuals(rs, density, u)
    lhs = 2 * ff.E * ff.area_element * Hphi
    return lhs - (r1 + v * r2 + v * v * r3 - v ** 3 * r4), max(1.0, abs(lhs))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), kind=st.sampled_from(["noncylindrical", "cylindrical"]),
       u=st.floats(-0.9, 0.9), v=st.floats(-1, 1))
def test_hphi_is_residual_polynomial(seed, kind, u, v):
    rs = random_ruled(np.random.default_rng(seed), kind)
    gap, scale = _identity_gap(rs, ez_density(), u, v)
    assert abs(gap) < 1e-5 * scale


@pytest.mark.parametrize("rs", [ruled_helicoid(), circle_cylinder()], ids=["helicoid", "cylinder"])
def test_hphi_is_residual_polynomial_analytic(rs, ez):
    for u in (-0.7, 0.1, 0.8):
        for v in (-1.0, 0.3, 0.9):
            gap, scale = _identity_gap(rs, ez, u, v)
            assert abs(gap) < 1e-13 * scale


# -- cylindrical family ----------------------------------------------------------

def test_family_point_b1():
    rs = make_cylindrical_minimal(CylindricalFamilyParams(1.0, 1.0, 0.0))
    assert np.allclose(rs.point(0.0, 2.0), [math.pi / 2, 2.0, math.log(2)], atol=1e-15)


def test_family_point_general():
    rs = make_cylindrical_minimal(CylindricalFamilyParams(1.0, 0.6, 0.8))
    expected = [5 * math.pi / 6, -(4 / 3) * math.log(2) + 0.6, math.log(2) + 0.8]
    assert np.allclose(rs.point(0.0, 1.0), expected, atol=1e-14)
    assert np.allclose(expected, [2.617994, -0.324196, 1.493147], atol=1e-6)


def test_family_rejects_vertical_director():
    with pytest.raises(UseVerticalPlane, match="make_vertical_plane"):
        CylindricalFamilyParams(1.0, 0.0, 1.0)
    assert issubclass(UseVerticalPlane, InvalidParams)


@pytest.mark.parametrize("A,b,c", [(0.0, 1.0, 0.0), (-1.0, 1.0, 0.0), (1.0, 0.6, 0.7)])
def test_family_invalid_params(A, b, c):
    with pytest.raises(InvalidParams):
        CylindricalFamilyParams(A, b, c)


def test_family_B_relation():
    assert CylindricalFamilyParams(2.25, 1.0, 0.0).B == 3.0


def test_printed_x_without_1_over_b_is_not_unit_speed():
    # x = 2 arctan(sqrt(A) e^{bu}) keeps unit speed only for |b| = 1
    A, b, c, u = 1.0, 0.6, 0.8, 0.3
    _, vel = closed_form_directrix(A, b, c, u)
    printed = vel.copy()
    printed[0] *= b
    assert abs(np.linalg.norm(vel) - 1) < 1e-15
    assert abs(np.linalg.norm(printed) - 1) > 0.1


@pytest.mark.parametrize("A", [0.25, 1.0, 4.0])
@pytest.mark.parametrize("b,c", [(1.0, 0.0), (0.6, 0.8), (0.8, -0.6), (0.1, math.sqrt(0.99))])
def test_family_residuals_vanish(A, b, c, ez):
    rs = make_cylindrical_minimal(CylindricalFamilyParams(A, b, c))
    assert max_residual(rs, ez) < 1e-12
    assert classify_ruled(rs) == "cylindrical_family"


def test_family_negative_b(ez):
    rs = make_cylindrical_minimal(CylindricalFamilyParams(1.5, -0.6, 0.8, rot_z=1.0))
    assert minimality_report(rs.as_surface(), ez, 12, 12, 1e-12).passed
    assert classify_ruled(rs) == "cylindrical_family"


# -- vertical planes -------------------------------------------------------------

@pytest.mark.parametrize("d,through", [((1, 0), (0, 0, 0)), ((0, 1), (1, 0, 0)),
                                       ((1 / math.sqrt(2), 1 / math.sqrt(2)), (0, 0, 0))])
def test_vertical_plane(d, through, ez):
    rs = make_vertical_plane(d, through)
    assert minimality_report(rs.as_surface(), ez, 6, 6).max_abs_Hphi == 0
    assert max_residual(rs, ez) == 0
    assert classify_ruled(rs) == "vertical_plane"


def test_vertical_plane_x_equals_1():
    rs = make_vertical_plane((0, 1), (1, 0, 0))
    assert all(rs.point(u, v)[0] == 1 for u in (-1, 0.5) for v in (0, 2))


def test_vertical_plane_zero_direction():
    with pytest.raises(InvalidParams):
        make_vertical_plane((0, 0))


# -- directrix ODE -----------------------------------------------------------------

def test_closed_form_b1():
    pos, vel = closed_form_directrix(1.0, 1.0, 0.0, 0.0)
    assert np.allclose(pos, [math.pi / 2, 0, math.log(2)], atol=1e-15)
    assert np.allclose(vel, [1, 0, 0], atol=1e-15)


def test_closed_form_general_unit_speed():
    pos, vel = closed_form_directrix(1.0, 0.6, 0.8, 0.0)
    assert vel[2] == 0 and abs(np.linalg.norm(vel) - 1) < 1e-15
    assert 0.6 * pos[1] + 0.8 * pos[2] == pytest.approx(0, abs=1e-15)


def test_closed_form_A4():
    pos, vel = closed_form_directrix(4.0, 1.0, 0.0, 0.0)
    assert pos[2] == pytest.approx(math.log(5), abs=1e-15)
    assert vel[2] == pytest.approx(3 / 5, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(A=st.floats(0.05, 20), t=st.floats(0.05, math.pi - 0.05), u=st.floats(-2, 2))
def test_closed_form_solves_ode(A, t, u):
    # independent check of x'' + x'z' = 0 etc. by central differences of the closed form
    b, c = math.sin(t), math.cos(t)
    h = 1e-4
    _, vm = closed_form_directrix(A, b, c, u - h)
    _, v0 = closed_form_directrix(A, b, c, u)
    _, vp = closed_form_directrix(A, b, c, u + h)
    acc = (vp - vm) / (2 * h)
    rhs = np.array([-v0[0] * v0[2], -v0[1] * v0[2] - c * b, b * b - v0[2] ** 2])
    assert np.allclose(acc, rhs, atol=1e-6)
    assert abs(np.linalg.norm(v0) - 1) < 1e-14
    assert abs(b * v0[1] + c * v0[2]) < 1e-14


def test_integrate_b1():
    sol = integrate_directrix(1.0, 0.0, (math.pi / 2, 0, math.log(2)), (1, 0, 0), 1.0, 1e-3)
    assert sol.u[-1] == 1.0
    assert sol.position[-1, 2] == pytest.approx(math.log(math.exp(-1) + math.e), abs=1e-9)
    assert sol.position[-1, 2] == pytest.approx(1.126928, abs=1e-6)
    assert sol.position[-1, 0] == pytest.approx(2 * math.atan(math.e), abs=1e-9)
    assert sol.position[-1, 0] == pytest.approx(2.436565, abs=1e-6)
    assert sol.params[2] == pytest.approx(1.0)


def test_integrate_vertical_director_straight_line():
    sol = integrate_directrix(0.0, 1.0, (0, 0, 0), (1, 0, 0), 2.0, 1e-2)
    assert np.allclose(sol.position[:, 1:], 0, atol=1e-15)
    assert np.allclose(sol.position[:, 0], sol.u, atol=1e-13)


@pytest.mark.parametrize("init_vel,b,c", [((1.0, 0.1, 0.0), 1.0, 0.0), ((0.0, 1.0, 0.0), 1.0, 0.0),
                                          ((1.0, 0.0, 0.0), 0.6, 0.7)])
def test_integrate_invalid_init(init_vel, b, c):
    with pytest.raises(InvalidInit):
        integrate_directrix(b, c, (0, 0, 0), init_vel, 1.0, 1e-3)


@pytest.mark.parametrize("b,c", [(1.0, 0.0), (0.6, 0.8), (0.8, -0.6), (0.1, math.sqrt(0.99))])
@pytest.mark.parametrize("u_end", [-1.0, 1.0])
def test_ode_matches_closed_form(b, c, u_end):
    sol, P, V = ode_vs_closed_form(1.0, b, c, u_end, 1e-3)
    assert np.max(np.abs(sol.position - P)) < 1e-6
    assert np.max(np.abs(sol.velocity - V)) < 1e-6
    assert sol.speed_drift < 1e-6
    plane = b * sol.position[:, 1] + c * sol.position[:, 2]
    assert np.max(np.abs(plane - plane[0])) < 1e-6


def test_rk4_fourth_order():
    errs = []
    for step in (0.1, 0.05):
        sol, P, _ = ode_vs_closed_form(2.0, 0.6, 0.8, 1.0, step)
        errs.append(np.max(np.abs(sol.position - P)))
    assert 12 < errs[0] / errs[1] < 20


# -- noncylindrical catalog -----------------------------------------------------

def test_counterexample_suite(ez):
    rep = noncylindrical_counterexample_suite(ez)
    assert rep.all_consistent
    assert abs(rep["helicoid"].max_residuals[3]) >= 1 - 1e-12
    assert rep["helicoid"].violates
    plane = rep["vertical plane d=(1, 0)"]
    assert plane.vertical_plane and max(plane.max_residuals) == 0
    xz = rep["director in xz-plane"]
    assert xz.vertical_plane and max(xz.max_residuals) < 1e-15
    assert rep["non-planar spherical director"].violates
    assert rep["beta in tilted plane (theta=0.785398)"].violates


def test_helicoid_not_minimal(ez):
    assert minimality_report(ruled_helicoid().as_surface(), ez, 20, 20).max_abs_Hphi > 0.1


def test_falsification_search_small():
    res = ruled_falsification_search(40, seed=3)
    assert res.counterexamples == ()
    # the planted family members and planes are detected, so the search is not vacuous
    assert res.minimal == 20
    assert res.classes == {"cylindrical_family": 10, "vertical_plane": 10}


def test_classify_rejects_generic_cylinder():
    assert classify_ruled(circle_cylinder()) == "other"
