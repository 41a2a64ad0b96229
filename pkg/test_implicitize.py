"""
消元引擎测试：像曲线、对偶、焦散、垂足与正交曲线
"""
import unittest
from unittest import mock

from algebra import UVW, X, XYZ, Y, Z, parse_poly, rename_variables
from errors import DegenerateCausticError, DegenerateImageError, PreconditionError
from implicitize import (
    RationalMapP2, caustic_dual_implicit, caustic_implicit, choose_method, dual_curve, evolute, image_curve,
    kernel_degree_bound, orthotomic, pedal, quetelet_dandelin,
)
from projgeom import ProjPoint, homothety, phi_components

CIRCLE = X ** 2 + Y ** 2 - Z ** 2
PARABOLA = Y * Z - X ** 2
CUSPIDAL = parse_poly("y^2*z-x^3")
ORIGIN = ProjPoint((0, 0, 1))
SOURCE = ProjPoint((2, 1, 1))


def uvw(text):
    return parse_poly(text, ("u", "v", "w"))


class TestRationalMap(unittest.TestCase):

    def test_identity(self):
        M = RationalMapP2.identity()
        self.assertEqual(M.degree, 1)
        self.assertEqual(M.components, XYZ.gens)

    def test_content_removed(self):
        M = RationalMapP2.gradient_of(CIRCLE)
        self.assertEqual(M.degree, 1)

    def test_mixed_degrees(self):
        with self.assertRaises(PreconditionError):
            RationalMapP2((X, Y ** 2, Z))


class TestImageCurve(unittest.TestCase):

    def test_identity_image(self):
        image = image_curve(CIRCLE, RationalMapP2.identity())
        self.assertEqual(image.equation, uvw("u^2+v^2-w^2"))
        self.assertTrue(image.certified)
        self.assertEqual(image.map_degree, 1)

    def test_kernel_route_agrees(self):
        image = image_curve(CIRCLE, RationalMapP2.identity(), method="kernel")
        self.assertEqual(image.equation, uvw("u^2+v^2-w^2"))
        self.assertEqual(image.method, "kernel")

    def test_kernel_bound_ignores_fiber_count(self):
        self.assertEqual(kernel_degree_bound(CIRCLE, RationalMapP2((X ** 2, Y ** 2, Z ** 2))), 4)
        # 纤维计数偏小时核路线仍在贝祖上界内找到完整的像
        with mock.patch("implicitize.numeric_degree", return_value=1):
            image = image_curve(CIRCLE, RationalMapP2.identity(), method="kernel")
        self.assertEqual(image.equation, uvw("u^2+v^2-w^2"))
        self.assertFalse(image.certified)

    def test_kernel_route_on_map_of_higher_degree(self):
        image = image_curve(CIRCLE, (X ** 2, Y ** 2, Z ** 2), method="kernel")
        self.assertEqual(image.equation, uvw("u+v-w"))
        self.assertEqual(image.map_degree, 4)

    def test_unknown_method(self):
        with self.assertRaises(PreconditionError):
            image_curve(CIRCLE, RationalMapP2.identity(), method="groebner")

    def test_constant_map(self):
        with self.assertRaises(DegenerateImageError):
            image_curve(CIRCLE, (X ** 2 + Y ** 2, Z ** 2, 2 * Z ** 2))

    def test_map_of_higher_degree(self):
        # (x², y², z²) 把圆四对一地映到直线 u + v = w
        image = image_curve(CIRCLE, (X ** 2, Y ** 2, Z ** 2))
        self.assertEqual(image.equation, uvw("u+v-w"))
        self.assertFalse(image.certified)
        self.assertEqual(image.map_degree, 4)

    def test_route_choice(self):
        self.assertEqual(choose_method(CIRCLE, RationalMapP2.identity()), "resultant")
        M = RationalMapP2(phi_components(CUSPIDAL, ProjPoint((3, -2, 1))))
        self.assertEqual(choose_method(CUSPIDAL, M), "kernel")

    def test_to_dict(self):
        d = image_curve(CIRCLE, RationalMapP2.identity()).to_dict()
        self.assertEqual(d['degree'], 2)
        self.assertEqual(d['stripped_factors'], [])


class TestDual(unittest.TestCase):

    def test_circle(self):
        self.assertEqual(dual_curve(CIRCLE).equation, uvw("u^2+v^2-w^2"))

    def test_parabola(self):
        self.assertEqual(dual_curve(PARABOLA).equation, uvw("u^2-4*v*w"))

    def test_cuspidal_cubic(self):
        expected = uvw("u^3+27/4*v^2*w")
        self.assertEqual(dual_curve(CUSPIDAL).equation, expected)
        self.assertEqual(dual_curve(CUSPIDAL, method="kernel").equation, expected)

    def test_biduality(self):
        for F in (CIRCLE, PARABOLA, CUSPIDAL):
            dual = dual_curve(F).equation
            self.assertEqual(rename_variables(dual_curve(dual).equation, XYZ), F.monic())

    def test_line(self):
        with self.assertRaises(DegenerateImageError) as ctx:
            dual_curve(X + 2 * Y - Z)
        self.assertEqual(ctx.exception.point, ProjPoint((1, 2, -1)))

    def test_not_square_free(self):
        with self.assertRaises(PreconditionError) as ctx:
            dual_curve(CIRCLE ** 2)
        self.assertEqual(ctx.exception.reason, "not_square_free")


class TestCaustic(unittest.TestCase):

    def test_circle_degree_and_class(self):
        caustic = caustic_implicit(CIRCLE, SOURCE)
        self.assertEqual(caustic.degree, 6)
        self.assertTrue(caustic.certified)
        self.assertEqual(caustic_dual_implicit(CIRCLE, SOURCE).degree, 4)

    def test_chart_independence(self):
        a = caustic_dual_implicit(CIRCLE, SOURCE, seed=1, method="resultant")
        b = caustic_dual_implicit(CIRCLE, SOURCE, seed=2, method="resultant")
        self.assertEqual(a.equation, b.equation)

    def test_routes_agree(self):
        a = caustic_dual_implicit(CIRCLE, SOURCE, method="resultant")
        b = caustic_dual_implicit(CIRCLE, SOURCE, method="kernel")
        self.assertEqual(a.equation, b.equation)

    def test_caustic_is_dual_of_dual(self):
        rho_image = caustic_dual_implicit(CIRCLE, SOURCE).equation
        caustic = caustic_implicit(CIRCLE, SOURCE).equation
        self.assertEqual(dual_curve(rho_image).equation, caustic)

    def test_center_of_circle(self):
        with self.assertRaises(DegenerateCausticError) as ctx:
            caustic_implicit(CIRCLE, ORIGIN)
        self.assertEqual(ctx.exception.point, ORIGIN)


class TestPedalOrthotomic(unittest.TestCase):

    def test_circle_from_center(self):
        self.assertEqual(pedal(CIRCLE, ORIGIN).equation, uvw("u^2+v^2-w^2"))
        self.assertEqual(orthotomic(CIRCLE, ORIGIN).equation, uvw("u^2+v^2-4*w^2"))

    def test_orthotomic_is_scaled_pedal(self):
        ped = rename_variables(pedal(CIRCLE, SOURCE).equation, XYZ)
        ortho = rename_variables(orthotomic(CIRCLE, SOURCE).equation, XYZ)
        self.assertEqual(ortho, homothety(ped, SOURCE, 2).monic())

    def test_source_at_infinity(self):
        with self.assertRaises(PreconditionError) as ctx:
            orthotomic(CIRCLE, ProjPoint((1, 0, 0)))
        self.assertEqual(ctx.exception.reason, "source_at_infinity")

    def test_evolute_of_parabola(self):
        # y = x² 的渐屈线 27x² = 16(y - 1/2)³
        U, V, W = UVW.gens
        expected = 27 * U ** 2 * W - 2 * (2 * V - W) ** 3
        image = evolute(PARABOLA)
        self.assertEqual(image.degree, 3)
        self.assertEqual(image.equation, expected.monic())

    def test_evolute_of_circle(self):
        with self.assertRaises(DegenerateCausticError):
            evolute(CIRCLE)

    def test_quetelet_dandelin(self):
        result = quetelet_dandelin(CIRCLE, SOURCE)
        self.assertTrue(result['match'])
        self.assertEqual(result['caustic_degree'], 6)

    def test_quetelet_dandelin_parabola(self):
        result = quetelet_dandelin(PARABOLA, ProjPoint((1, 2, 1)))
        self.assertTrue(result['match'])
        self.assertEqual(result['caustic_degree'], 6)
        self.assertEqual(result['evolute_degree'], 6)


if __name__ == "__main__":
    unittest.main()
