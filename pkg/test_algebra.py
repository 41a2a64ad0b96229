"""
精确代数内核测试
"""
import unittest

import numpy as np
from sympy.polys.domains import QQ, QQ_I

from algebra import (
    T, T_RING, UVW, X, XYZ, Y, Z, bezout_pair, common_field, conj, conjugate_scalar, content_in, coprime_split,
    divides, euler_defect, extension_field, format_poly, gauss, gcd, is_homogeneous, line_ring, multiplicity_at_root,
    parse_poly, parse_scalar, restrict_to_line, resultant, scalar_field, simplify_scalar, square_free_part,
    sylvester_resultant, total_degree,
)
from errors import ExtensionTowerError, LineComponentError, ParseError, PreconditionError


def random_form(rng, degree, height=5):
    """随机齐次多项式，系数为高斯整数"""
    p = XYZ.zero
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            re, im = (int(v) for v in rng.integers(-height, height + 1, size=2))
            p += XYZ.ground_new(QQ_I(re, im)) * X ** a * Y ** b * Z ** (degree - a - b)
    return p


class TestParse(unittest.TestCase):

    def test_circle(self):
        F = parse_poly("x^2+y^2-z^2")
        self.assertEqual(F, X ** 2 + Y ** 2 - Z ** 2)
        self.assertEqual(len(F), 3)
        self.assertTrue(is_homogeneous(F))
        self.assertEqual(total_degree(F), 2)

    def test_cuspidal_cubic(self):
        F = parse_poly("y^2*z - x^3")
        self.assertEqual(F, Y ** 2 * Z - X ** 3)
        self.assertEqual(total_degree(F), 3)

    def test_gaussian_coefficients(self):
        F = parse_poly("(1+i)*x - i*z")
        self.assertEqual(F.coeff(X), QQ_I(1, 1))
        self.assertEqual(F.coeff(Z), QQ_I(0, -1))

    def test_rational_literal(self):
        self.assertEqual(parse_scalar("-3/4"), QQ_I(QQ(-3, 4), 0))
        self.assertEqual(parse_scalar("2*i"), QQ_I(0, 2))

    def test_unary_minus_binds_weaker_than_power(self):
        self.assertEqual(parse_poly("-x^2"), -X ** 2)

    def test_implicit_multiplication_rejected(self):
        with self.assertRaises(ParseError) as ctx:
            parse_poly("2x")
        self.assertEqual(ctx.exception.position, 1)

    def test_unknown_variable(self):
        with self.assertRaises(ParseError):
            parse_poly("x + q")

    def test_zero_denominator(self):
        with self.assertRaises(ParseError):
            parse_poly("x/0")

    def test_print_parse_fixed_point(self):
        rng = np.random.default_rng(11)
        for degree in (1, 2, 3, 4):
            F = random_form(rng, degree)
            self.assertEqual(parse_poly(format_poly(F)), F)

    def test_other_variables(self):
        G = parse_poly("u^2+v^2-w^2", ("u", "v", "w"))
        self.assertIs(G.ring, UVW)


class TestResultant(unittest.TestCase):

    def test_linear_substitution(self):
        self.assertEqual(resultant(T ** 2 + 1, T - 1, "t"), T_RING(2))
        self.assertEqual(resultant(X ** 2 + Z ** 2, X - Z, "x"), 2 * Z ** 2)

    def test_shared_factor(self):
        self.assertFalse(resultant((X - Y) * X, (X - Y) * Y, "x"))

    def test_sylvester_example(self):
        self.assertEqual(resultant(X ** 2 - Y, X - Z, "x"), Z ** 2 - Y)

    def test_matches_determinant(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            p, q = random_form(rng, 2, 3), random_form(rng, 3, 3)
            self.assertEqual(resultant(p, q, "x"), sylvester_resultant(p, q, "x"))

    def test_both_constant(self):
        with self.assertRaises(PreconditionError):
            resultant(Y + Z, Y - Z, "x")

    def test_vanishes_iff_common_factor(self):
        rng = np.random.default_rng(8)
        f = random_form(rng, 1, 3)
        a, b = random_form(rng, 2, 3), random_form(rng, 1, 3)
        self.assertFalse(resultant(f * a, f * b, "x"))
        self.assertTrue(resultant(a, b, "x"))


class TestGcdAndSquareFree(unittest.TestCase):

    def test_difference_of_squares(self):
        self.assertEqual(gcd(X ** 2 - Z ** 2, X - Z), X - Z)

    def test_gaussian_split(self):
        L = parse_poly("x+i*z")
        self.assertEqual(gcd(X ** 2 + Z ** 2, L), L)

    def test_square_free(self):
        self.assertEqual(square_free_part((X + Y) ** 3 * Z), ((X + Y) * Z).monic())

    def test_square_free_idempotent_and_divides(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            a, b = random_form(rng, 1), random_form(rng, 2)
            p = a ** 2 * b
            s = square_free_part(p)
            self.assertEqual(square_free_part(s), s)
            self.assertTrue(divides(s, p))

    def test_content(self):
        p = (X + Z) * (Y ** 2 + X * Y + Z ** 2)
        self.assertEqual(content_in(p, "y"), (X + Z).monic())

    def test_coprime_split(self):
        a, b, c = X + Y, X - Z, Y + 2 * Z
        pieces = coprime_split([a * b, b * c])
        self.assertEqual(sorted(map(format_poly, pieces)), sorted(map(format_poly, [a, b.monic(), c])))


class TestDivides(unittest.TestCase):

    def test_examples(self):
        self.assertTrue(divides(X - Z, X ** 2 - Z ** 2))
        self.assertFalse(divides(X + Y, X ** 2 + Y ** 2))
        F = X ** 2 + Y ** 2 - Z ** 2
        self.assertTrue(divides(F, F * parse_poly("x+(1+i)*y")))

    def test_constant_perturbation(self):
        rng = np.random.default_rng(17)
        for _ in range(5):
            f, g = random_form(rng, 2), random_form(rng, 2)
            self.assertTrue(divides(f, f * g))
            self.assertFalse(divides(f, f * g + 3))


class TestEuler(unittest.TestCase):

    def test_euler_identity(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            F = random_form(rng, int(rng.integers(1, 5)))
            if F:
                self.assertFalse(euler_defect(F))


class TestLineRestriction(unittest.TestCase):

    def test_circle_at_infinity(self):
        F = X ** 2 + Y ** 2 - Z ** 2
        form = restrict_to_line(F, (1, QQ_I(0, 1), 0), (1, QQ_I(0, -1), 0))
        self.assertEqual([c for c in form.coeffs if c], [QQ_I(4, 0)])
        self.assertEqual(multiplicity_at_root(form, (1, 0)), 1)
        self.assertEqual(multiplicity_at_root(form, (0, 1)), 1)

    def test_parabola_tangent_at_infinity(self):
        F = Y * Z - X ** 2
        form = restrict_to_line(F, (0, 1, 0), (1, 0, 0))
        self.assertEqual(multiplicity_at_root(form, (1, 0)), 2)

    def test_not_a_root(self):
        F = X ** 2 + Y ** 2 - Z ** 2
        form = restrict_to_line(F, (0, 0, 1), (1, 0, 0))
        self.assertEqual(multiplicity_at_root(form, (0, 1)), 0)

    def test_component(self):
        with self.assertRaises(LineComponentError):
            restrict_to_line(X * Y, (0, 1, 0), (0, 0, 1))


class TestScalars(unittest.TestCase):

    def test_conjugation(self):
        q = gauss(QQ(1, 3), QQ(-2, 5))
        self.assertEqual(conj(conj(q)), q)
        self.assertEqual((q * conj(q)).y, 0)

    def test_extension_arithmetic(self):
        K = extension_field(T ** 2 - 2)
        r = K.generator
        self.assertEqual(r * r, K.convert(2))
        self.assertEqual((r + 1) * (r - 1), K.one)
        self.assertEqual((1 / r) * r, K.one)
        self.assertEqual(simplify_scalar(r * r), QQ_I(2, 0))

    def test_extension_is_cached(self):
        self.assertIs(extension_field(T ** 2 - 2), extension_field(2 * T ** 2 - 4))

    def test_mixed_extensions(self):
        a, b = extension_field(T ** 2 - 2).generator, extension_field(T ** 2 - 3).generator
        with self.assertRaises(ExtensionTowerError):
            common_field([a, b])
        self.assertIsNone(common_field([QQ_I(1, 2), QQ_I(0, 1)]))

    def test_extension_gcd_in_line_ring(self):
        K = extension_field(T ** 2 - 2)
        R = line_ring(K)
        s = R.gens[0]
        r = R.ground_new(K.generator)
        g = ((s - r) * (s + 1)).gcd((s - r) * (s - 1))
        self.assertEqual(g.monic(), s - r)

    def test_conjugate_of_extension_element(self):
        K = extension_field(T ** 2 - QQ_I(0, 1))
        r = K.generator
        bar = conjugate_scalar(r)
        self.assertNotEqual(scalar_field(bar), K)
        # 共轭根满足共轭模多项式 t^2 + i
        self.assertEqual(simplify_scalar(bar * bar), QQ_I(0, -1))
        self.assertEqual(conjugate_scalar(QQ_I(2, 3)), QQ_I(2, -3))

    def test_bezout_pair(self):
        for q, m in ((2, 3), (3, 7), (5, 2), (1, 4), (12, 35), (35, 12)):
            u, v = bezout_pair(q, m)
            self.assertEqual(u * q - v * m, 1)
            self.assertGreaterEqual(min(u, v), 0)
        with self.assertRaises(PreconditionError):
            bezout_pair(4, 6)


if __name__ == "__main__":
    unittest.main()
