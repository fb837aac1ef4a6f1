import math

import numpy as np
import pytest

from weighted_minimal.errors import InvalidParams, NoSignChange, NonConstantCurvature
from weighted_minimal.gallery import (
    GallerySpec,
    find_minimal_radius,
    gallery_catalog,
    hphi_spread,
    make_density,
    make_gallery_surface,
)
from weighted_minimal.geometry import (
    first_variation_check,
    minimality_report,
    rigid_motion,
    weighted_mean_curvature,
)


def test_make_density_values():
    ez = make_density("ez")
    p = np.array([0.0, 0.0, 2.0])
    assert ez.phi(p) == 2.0 and np.array_equal(ez.grad_phi(p), [0, 0, 1])
    g = make_density("gaussian")
    assert np.array_equal(g.grad_phi(np.array([1.0, 0.0, 0.0])), [-1, 0, 0])
    assert g.phi(np.array([1.0, 1.0, 0.0])) == -1.0


@pytest.mark.parametrize("kind,a", [("linear", (0, 0, 0)), ("linear", None), ("bogus", None)])
def test_make_density_invalid(kind, a):
    with pytest.raises(InvalidParams):
        make_density(kind, a)


def test_linear_density_is_rotated_ez():
    a = np.array([1.0, 1.0, 0.0]) / math.sqrt(2)
    # Q maps a to e_z
    e1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2)
    Q = np.array([e1, [0.0, 0.0, -1.0], a])
    assert np.allclose(Q @ a, [0, 0, 1])
    assert np.isclose(np.linalg.det(Q), 1.0)
    s = make_gallery_surface(GallerySpec("helicoid", pitch=0.7))
    lin, ez = make_density("linear", a), make_density("ez")
    moved = rigid_motion(s, Q)
    for u, v in [(0.6, -0.4), (1.2, 0.9), (1.0, 0.0)]:
        assert weighted_mean_curvature(s, lin, u, v)[1] == pytest.approx(
            weighted_mean_curvature(moved, ez, u, v)[1], abs=1e-14)


@pytest.mark.parametrize("spec", [GallerySpec("sphere", R=1.3), GallerySpec("cylinder_z", R=0.8),
                                  GallerySpec("plane", normal=(0.0, 0.6, 0.8), offset=0.4),
                                  GallerySpec("helicoid", pitch=1.5)], ids=lambda s: s.kind)
def test_gallery_analytic_derivatives(spec):
    assert make_gallery_surface(spec).check_derivatives() < 1e-5


def test_gauss_cylinder_radius_one_minimal():
    s = make_gallery_surface(GallerySpec("cylinder_z", R=1.0))
    assert minimality_report(s, make_density("gaussian"), 12, 12, 1e-12).passed


def test_gauss_plane_through_origin():
    s = make_gallery_surface(GallerySpec("plane", normal=(0.6, 0.0, 0.8), offset=0.0))
    assert minimality_report(s, make_density("gaussian"), 9, 9).max_abs_Hphi < 1e-12


def test_gauss_plane_constant_curvature():
    # |H_phi| = offset / 2 for an offset plane
    s = make_gallery_surface(GallerySpec("plane", normal=(0.0, 0.0, 1.0), offset=0.6))
    lo, hi = hphi_spread(s, make_density("gaussian"))
    assert hi - lo < 1e-12 and abs(hi) == pytest.approx(0.3, abs=1e-12)


def test_helicoid_negative_control():
    s = make_gallery_surface(GallerySpec("helicoid", pitch=1.0))
    assert minimality_report(s, make_density("ez"), 20, 20).max_abs_Hphi > 0.1


@pytest.mark.parametrize("R", [0.3, 0.7, 1.0, 2.5])
def test_gauss_cylinder_closed_form(R):
    s = make_gallery_surface(GallerySpec("cylinder_z", R=R))
    lo, hi = hphi_spread(s, make_density("gaussian"))
    assert hi - lo < 1e-12
    assert abs(hi) == pytest.approx(abs(1 / (2 * R) - R / 2), abs=1e-10)


def test_ez_plane_and_cylinder_constancy():
    ez = make_density("ez")
    for spec in (GallerySpec("plane", normal=(0.6, 0.0, 0.8), offset=1.0),
                 GallerySpec("plane", normal=(0.0, 0.0, 1.0)),
                 GallerySpec("cylinder_z", R=0.4)):
        lo, hi = hphi_spread(make_gallery_surface(spec), ez, 9)
        assert hi - lo < 1e-12


def test_minimal_radius_cylinder():
    R = find_minimal_radius("cylinder", make_density("gaussian"), (0.5, 2.0))
    assert R == pytest.approx(1.0, abs=1e-9)


def test_minimal_radius_sphere():
    # root of 1/R - R/2
    R = find_minimal_radius("sphere", make_density("gaussian"), (0.5, 2.0))
    assert R == pytest.approx(math.sqrt(2), abs=1e-9)
    s = make_gallery_surface(GallerySpec("sphere", R=1 / math.sqrt(2)))
    assert abs(weighted_mean_curvature(s, make_density("gaussian"), 1.0, 1.0)[1]) > 0.5


def test_sphere_under_ez_not_constant():
    with pytest.raises(NonConstantCurvature):
        find_minimal_radius("sphere", make_density("ez"), (0.1, 10.0))
    lo, hi = hphi_spread(make_gallery_surface(GallerySpec("sphere", R=1.0)), make_density("ez"))
    assert hi - lo > 0.5


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        find_minimal_radius("cylinder", make_density("gaussian"), (1.5, 3.0))


def test_invalid_spec():
    with pytest.raises(InvalidParams):
        GallerySpec("sphere", R=-1.0)
    with pytest.raises(InvalidParams):
        GallerySpec("plane", normal=(1.0, 1.0, 0.0))
    with pytest.raises(InvalidParams):
        GallerySpec("torus")


def test_first_variation_on_catalog():
    for spec, s in gallery_catalog():
        d = make_density(spec.density_kind)
        num, formula = first_variation_check(s, d, lambda u, v: 1.0, 1e-3, 24, 24)
        assert abs(num - formula) <= 1e-4 * max(abs(formula), 1e-12) or abs(formula) < 1e-4 > abs(num)
