"""
数值实验室测试：求根、采样、数值次数、双有理性抽样与实迹
"""
import unittest

import numpy as np

from algebra import X, Y, Z, parse_poly
from errors import PreconditionError
from implicitize import caustic_implicit
from numericlab import (
    NumericMap, NumericPoly, _reflected_lines, birationality_test, durand_kerner, numeric_degree,
    projective_distance, real_trace, sample_curve,
)
from projgeom import ProjPoint, gradient, phi_components, rho_components

CIRCLE = X ** 2 + Y ** 2 - Z ** 2
CUSPIDAL = parse_poly("y^2*z-x^3")
SOURCE = ProjPoint((2, 1, 1))


class TestRoots(unittest.TestCase):

    def test_real_roots(self):
        roots = durand_kerner([6, -7, 0, 1])
        np.testing.assert_allclose(np.sort(roots.real), [-3.0, 1.0, 2.0], atol=1e-9)
        np.testing.assert_allclose(roots.imag, 0.0, atol=1e-9)

    def test_complex_roots(self):
        roots = durand_kerner([1, 0, 1])
        np.testing.assert_allclose(np.sort(roots.imag), [-1.0, 1.0], atol=1e-9)

    def test_trailing_zeros(self):
        roots = durand_kerner([-2, 1, 0, 0])
        np.testing.assert_allclose(roots, [2.0])

    def test_constant(self):
        self.assertEqual(len(durand_kerner([5])), 0)


class TestSampling(unittest.TestCase):

    def test_numeric_poly(self):
        f = NumericPoly(CIRCLE)
        np.testing.assert_allclose(f(np.array([[3, 4, 5], [1, 1, 1]], dtype=complex)), [0, 1])

    def test_points_on_curve(self):
        points = sample_curve(CUSPIDAL, 30, seed=7)
        self.assertEqual(len(points), 30)
        f = NumericPoly(CUSPIDAL)
        for p in points:
            self.assertLess(f.relative(p.as_array())[0], 1e-8)

    def test_deterministic(self):
        a = [p.coords for p in sample_curve(CIRCLE, 10, seed=3)]
        b = [p.coords for p in sample_curve(CIRCLE, 10, seed=3)]
        self.assertEqual(a, b)

    def test_real_slices(self):
        for p in sample_curve(CIRCLE, 10, seed=3, real=True):
            self.assertEqual(p.coords[0].imag, 0.0)

    def test_curve_without_y(self):
        with self.assertRaises(PreconditionError):
            sample_curve(X ** 2 - Z ** 2, 5)


class TestNumericDegree(unittest.TestCase):

    def test_identity(self):
        self.assertEqual(numeric_degree(CIRCLE, (X, Y, Z)), 2)

    def test_dual_of_cubic(self):
        self.assertEqual(numeric_degree(CUSPIDAL, gradient(CUSPIDAL)), 3)

    def test_caustic_of_circle(self):
        self.assertEqual(numeric_degree(CIRCLE, phi_components(CIRCLE, SOURCE)), 6)
        self.assertEqual(numeric_degree(CIRCLE, rho_components(CIRCLE, SOURCE)), 4)


class TestBirationality(unittest.TestCase):

    def test_circle_injective(self):
        report = birationality_test(CIRCLE, SOURCE, n=40, seed=5)
        self.assertEqual(report.verdict, "injective")
        self.assertEqual(report.sample_count, 40)
        self.assertEqual(report.collisions, [])

    def test_report_keys(self):
        d = birationality_test(CUSPIDAL, ProjPoint((3, -2, 1)), n=20).to_dict()
        self.assertEqual(set(d), {"verdict", "samples", "distinct_images", "collisions",
                                  "phi_collisions", "base_points"})

    def test_reflected_lines_match_exact_rho(self):
        for F, S in ((CIRCLE, SOURCE), (CUSPIDAL, ProjPoint((3, -2, 1)))):
            pts = np.array([p.as_array() for p in sample_curve(F, 25, seed=4)])
            geometric = _reflected_lines(F, S, pts)
            exact = NumericMap(rho_components(F, S))(pts)
            self.assertLess(float(np.max(projective_distance(geometric, exact))), 1e-8)


class TestRealTrace(unittest.TestCase):

    def test_circle(self):
        window = (-3.0, 3.0, -3.0, 3.0)
        segments = real_trace(CIRCLE, SOURCE, window, resolution=200)
        self.assertTrue(segments)
        for k, s in enumerate(segments):
            self.assertEqual(s.segment_id, k)
            self.assertGreaterEqual(len(s.points), 2)
            for u, v in s.points:
                self.assertTrue(-3.0 <= u <= 3.0 and -3.0 <= v <= 3.0)

    def test_points_satisfy_caustic_equation(self):
        G = NumericPoly(caustic_implicit(CIRCLE, SOURCE).equation)
        segments = real_trace(CIRCLE, SOURCE, (-3.0, 3.0, -3.0, 3.0), resolution=120)
        pts = np.array([(u, v, 1.0) for s in segments for u, v in s.points], dtype=complex)
        self.assertLess(float(np.max(G.relative(pts))), 1e-6)

    def test_center_collapses_to_point(self):
        segments = real_trace(CIRCLE, ProjPoint((0, 0, 1)), (-2.0, 2.0, -2.0, 2.0))
        self.assertEqual(len(segments), 1)
        np.testing.assert_allclose(segments[0].points, [(0.0, 0.0)])

    def test_gaussian_curve(self):
        with self.assertRaises(PreconditionError) as ctx:
            real_trace(parse_poly("x^2+i*y^2-z^2"), SOURCE, (-1.0, 1.0, -1.0, 1.0))
        self.assertEqual(ctx.exception.reason, "not_real")

    def test_empty_window(self):
        with self.assertRaises(PreconditionError) as ctx:
            real_trace(CIRCLE, SOURCE, (10.0, 11.0, 10.0, 11.0))
        self.assertEqual(ctx.exception.reason, "no_real_points")


if __name__ == "__main__":
    unittest.main()
