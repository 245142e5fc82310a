import numpy as np
import pytest

from wavevem.quadrature import (
    polygon_area,
    polygon_centroid,
    polygon_rule,
    segment_rule,
    triangle_rule,
)

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def test_segment_rule_integrates_polynomials():
    a, b = np.array([0.0, -1.0]), np.array([2.0, 1.0])
    pts, wts = segment_rule(a, b, 6)
    length = np.hypot(2.0, 2.0)
    assert wts.sum() == pytest.approx(length, rel=1e-14)
    # integral of x along the segment: parametrize x = 2t, ds = length dt
    assert wts @ pts[:, 0] == pytest.approx(length, rel=1e-13)


def test_segment_rule_oscillatory_vs_scipy():
    from scipy.integrate import quad

    a, b = np.array([0.0, 0.0]), np.array([1.0, 0.5])
    f = lambda p: np.cos(7.0 * p[..., 0]) * np.exp(p[..., 1])
    pts, wts = segment_rule(a, b, 40)
    length = np.hypot(1.0, 0.5)
    ref, _ = quad(lambda t: np.cos(7.0 * t) * np.exp(0.5 * t) * length, 0, 1)
    assert wts @ f(pts) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("degree", [0, 3, 7, 14, 20])
def test_triangle_rule_polynomial_exactness(degree):
    v0, v1, v2 = np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])
    pts, wts = triangle_rule(v0, v1, v2, order=20)
    # int over unit triangle of x^i y^j = i! j! / (i + j + 2)!
    from math import factorial

    for i in range(degree + 1):
        j = degree - i
        exact = factorial(i) * factorial(j) / factorial(i + j + 2)
        got = wts @ (pts[:, 0] ** i * pts[:, 1] ** j)
        assert got == pytest.approx(exact, rel=1e-13, abs=1e-15)


def test_polygon_area_and_centroid():
    assert polygon_area(SQUARE) == pytest.approx(1.0)
    assert polygon_centroid(SQUARE) == pytest.approx([0.5, 0.5])
    lshape = np.array([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]], dtype=float)
    assert polygon_area(lshape) == pytest.approx(3.0)
    cx, cy = polygon_centroid(lshape)
    assert cx == pytest.approx(5.0 / 6.0)
    assert cy == pytest.approx(5.0 / 6.0)


def test_polygon_rule_constant_gives_area():
    pts, wts = polygon_rule(SQUARE, order=10)
    assert wts.sum() == pytest.approx(1.0, abs=1e-14)
    hexagon = np.array(
        [[1, 0], [0.5, 0.9], [-0.5, 0.9], [-1, 0], [-0.5, -0.9], [0.5, -0.9]]
    )
    pts, wts = polygon_rule(hexagon, order=8)
    assert wts.sum() == pytest.approx(polygon_area(hexagon), rel=1e-14)


def test_polygon_rule_rejects_nonstar_center():
    with pytest.raises(ValueError, match="star-shaped"):
        polygon_rule(SQUARE, center=[5.0, 5.0], order=4)


def test_interface_split_integrates_kinked_function():
    # |y| has a kink along y = 0; splitting recovers spectral accuracy
    box = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
    f = lambda p: np.abs(p[:, 1]) ** 3
    pts, wts = polygon_rule(box, order=12, split_at_interface=True)
    assert wts @ f(pts) == pytest.approx(1.0, rel=1e-13)
    assert wts.sum() == pytest.approx(4.0, rel=1e-14)
