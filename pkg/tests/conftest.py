import math

import numpy as np
import pytest

from weighted_minimal.geometry import ParametricSurface, ez_density, gaussian_density

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def plane_xy(z0=0.0, u_range=(0.0, 1.0), v_range=(0.0, 1.0)):
    zero = np.zeros(3)
    return ParametricSurface(
        lambda u, v: np.array([u, v, z0]), u_range, v_range,
        Xu=lambda u, v: np.array([1.0, 0.0, 0.0]), Xv=lambda u, v: np.array([0.0, 1.0, 0.0]),
        Xuu=lambda u, v: zero, Xuv=lambda u, v: zero, Xvv=lambda u, v: zero, name="plane z=const",
    )


def plane_xz():
    zero = np.zeros(3)
    return ParametricSurface(
        lambda u, v: np.array([u, 0.0, v]), (-1.0, 1.0), (-1.0, 1.0),
        Xu=lambda u, v: np.array([1.0, 0.0, 0.0]), Xv=lambda u, v: np.array([0.0, 0.0, 1.0]),
        Xuu=lambda u, v: zero, Xuv=lambda u, v: zero, Xvv=lambda u, v: zero, name="plane y=0",
    )


def helicoid_surface(u_range=(0.5, 1.5), v_range=(-1.0, 1.0)):
    return ParametricSurface(
        lambda u, v: np.array([u * math.cos(v), u * math.sin(v), v]), u_range, v_range,
        Xu=lambda u, v: np.array([math.cos(v), math.sin(v), 0.0]),
        Xv=lambda u, v: np.array([-u * math.sin(v), u * math.cos(v), 1.0]),
        Xuu=lambda u, v: np.zeros(3),
        Xuv=lambda u, v: np.array([-math.sin(v), math.cos(v), 0.0]),
        Xvv=lambda u, v: np.array([-u * math.cos(v), -u * math.sin(v), 0.0]),
        name="helicoid",
    )


@pytest.fixture
def ez():
    return ez_density()


@pytest.fixture
def gauss():
    return gaussian_density()
