import math
import os
from pathlib import Path

import numpy as np
import pytest

import fuzzyplane as fp

DATA = Path(os.environ.get("FUZZYPLANE_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def one():
    return fp.FuzzyNumber.triangular(-2, 1, 2)


def test_fuzzy_number():
    n = fp.FuzzyNumber.lr(10, 10, 0, p_left=2, plateau="right")
    lo, hi = n.same_points(0.5)
    assert lo == pytest.approx(10 * (1 - math.sqrt(0.5)))
    assert math.isinf(hi)
    assert fp.FuzzyNumber.lr(10, 10, 0, plateau="right").membership(5) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fp.FuzzyNumber.lr(0, 1, 1, plateau="up")


def test_example_plane():
    plane = fp.from_intercepts(one(), one(), one())
    assert plane.membership([3, 4, -7]) == pytest.approx(2 / 3, abs=1e-9)
    assert plane.vertical_fiber(3, 4) == fp.FuzzyNumber.triangular(-9, -6, -5)
    point = plane.point_pair(1, 1, [3, 4, -7])
    assert point.membership([3, 4, -7]) == pytest.approx(2 / 3, abs=1e-9)
    again = fp.plane_from_json(fp.plane_to_json(plane))
    assert again.membership([3, 4, -7]) == pytest.approx(2 / 3, abs=1e-9)


def test_distances():
    flat = fp.from_coefficients(*(fp.FuzzyNumber.crisp(v) for v in (0, 0, 1, 0)))
    p = fp.SpaceFuzzyPoint(*(fp.FuzzyNumber.crisp(v) for v in (0, 0, 3)))
    for alpha, lo, hi in fp.vertical_distance(p, flat):
        assert (lo, hi) == pytest.approx((3, 3))
    assert fp.perpendicular_distance(p, flat)[-1][0] == 1.0


def test_crisp_fit():
    pts = np.array([[50, 20, 8], [30, 5, 5.5279], [35, 20, 5.5279], [60, 25, 5.5279]])
    a, b, c = fp.fit_crisp_plane(pts, "vertical").height_coefficients()
    assert (a, b, c) == pytest.approx((0.0375, -0.0205, 4.8631), abs=1e-3)
    with pytest.raises(fp.FuzzyPlaneError, match="degenerate"):
        fp.fit_crisp_plane(pts[:2])


def test_revenue_fit():
    points = fp.load_dataset(str(DATA / "revenue.json"))
    fit = fp.fit_fuzzy_plane(points, mode="vertical", alpha_steps=101)
    assert fit.plane.core.height_coefficients() == pytest.approx((0, 0, 10), abs=1e-12)
    lower, upper = fit.plane.level(0.8)
    assert lower.height_coefficients() == pytest.approx((0.0375, -0.0205, 4.8631), abs=1e-3)
    assert fit.plane.unbounded == (False, True)
    assert len(fit.residuals) == 101
    assert fp.degree_of_fit(points, fit.plane) == 1.0
    g1, core, g2 = fit.plane.equational_form()
    assert g1.height_coefficients() == pytest.approx((0, 0, 0), abs=1e-9)
