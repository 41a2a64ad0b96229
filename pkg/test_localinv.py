"""
局部不变量测试
"""
import unittest

from algebra import X, Y, Z, parse_poly
from errors import PreconditionError
from localinv import (
    InvariantReport, branches_at, contact_infinity, f0, flex_count, infinity_points, invariant_bundle,
    multiplicity_at, singular_points, t_at,
)
from projgeom import (
    I_POINT, J_POINT, LINE_AT_INFINITY, ProjLine, ProjPoint, apply_matrix, apply_motion, pythagorean_rotation,
    random_matrix, transform_curve,
)
from utils import make_rng

CIRCLE = X ** 2 + Y ** 2 - Z ** 2
ELLIPSE = X ** 2 + 2 * Y ** 2 - Z ** 2
PARABOLA = Y * Z - X ** 2
CUSPIDAL = parse_poly("y^2*z-x^3")
NODAL = parse_poly("y^2*z-x^2*z-x^3")
FERMAT = parse_poly("x^3+y^3+z^3")
ORIGIN = ProjPoint((0, 0, 1))


class TestMultiplicity(unittest.TestCase):

    def test_smooth_and_singular(self):
        self.assertEqual(multiplicity_at(CIRCLE, ProjPoint((3, 4, 5))), 1)
        self.assertEqual(multiplicity_at(CUSPIDAL, ORIGIN), 2)
        self.assertEqual(multiplicity_at(NODAL, ORIGIN), 2)

    def test_off_curve(self):
        self.assertEqual(multiplicity_at(CIRCLE, ORIGIN), 0)

    def test_cyclic_points(self):
        self.assertEqual(multiplicity_at(CIRCLE, I_POINT), 1)
        self.assertEqual(multiplicity_at(CIRCLE, J_POINT), 1)
        self.assertEqual(multiplicity_at(ELLIPSE, I_POINT), 0)
        self.assertEqual(multiplicity_at(PARABOLA, J_POINT), 0)

    def test_projective_invariance(self):
        rng = make_rng(9)
        cases = ((CUSPIDAL, ORIGIN, 2), (NODAL, ORIGIN, 2), (CIRCLE, ProjPoint((3, 4, 5)), 1),
                 (CIRCLE, I_POINT, 1), (CIRCLE, ORIGIN, 0), (CUSPIDAL, ProjPoint((0, 1, 0)), 1))
        for _ in range(5):
            A = random_matrix(rng)
            for F, P, mu in cases:
                self.assertEqual(multiplicity_at(transform_curve(F, A), apply_matrix(A, P)), mu)


class TestBranches(unittest.TestCase):

    def test_smooth_point(self):
        (branch,) = branches_at(CIRCLE, ProjPoint((1, 0, 1)))
        self.assertEqual(branch.mult, 1)
        self.assertEqual(branch.tangent_order, 2)
        self.assertEqual(branch.tangent, ProjLine((1, 0, -1)))

    def test_node(self):
        branches = branches_at(NODAL, ORIGIN)
        self.assertEqual(len(branches), 2)
        self.assertTrue(all(b.mult == 1 and b.conjugates == 1 for b in branches))
        tangents = {b.tangent for b in branches}
        self.assertEqual(tangents, {ProjLine((1, -1, 0)), ProjLine((1, 1, 0))})
        self.assertFalse(any(b.is_inflectional() for b in branches))

    def test_cusp(self):
        (branch,) = branches_at(CUSPIDAL, ORIGIN)
        self.assertEqual(branch.mult, 2)
        self.assertEqual(branch.tangent, ProjLine((0, 1, 0)))
        self.assertEqual(branch.tangent_order, 3)
        self.assertFalse(branch.is_inflectional())

    def test_flex_at_infinity(self):
        (branch,) = branches_at(CUSPIDAL, ProjPoint((0, 1, 0)))
        self.assertEqual(branch.tangent, LINE_AT_INFINITY)
        self.assertEqual(branch.tangent_order, 3)
        self.assertTrue(branch.is_inflectional())

    def test_not_on_curve(self):
        with self.assertRaises(PreconditionError):
            branches_at(CIRCLE, ORIGIN)


class TestInfinity(unittest.TestCase):

    def test_parabola_tangent_to_line_at_infinity(self):
        points = infinity_points(PARABOLA)
        self.assertEqual(points, [(ProjPoint((0, 1, 0)), 2, 1)])
        self.assertEqual(contact_infinity(PARABOLA), 1)

    def test_contact_numbers(self):
        self.assertEqual(contact_infinity(CIRCLE), 0)
        self.assertEqual(contact_infinity(ELLIPSE), 0)
        self.assertEqual(contact_infinity(CUSPIDAL), 2)
        self.assertEqual(contact_infinity(NODAL), 2)

    def test_t_at(self):
        self.assertEqual(t_at(CIRCLE, I_POINT), 0)
        self.assertEqual(t_at(PARABOLA, ProjPoint((0, 1, 0))), 1)
        self.assertEqual(t_at(PARABOLA, I_POINT), 0)

    def test_t_at_requires_point_at_infinity(self):
        with self.assertRaises(PreconditionError):
            t_at(CIRCLE, ProjPoint((1, 0, 1)))


class TestFlexes(unittest.TestCase):

    def test_flex_counts(self):
        self.assertEqual(flex_count(FERMAT), 9)
        self.assertEqual(flex_count(NODAL), 3)
        self.assertEqual(flex_count(CUSPIDAL), 1)
        self.assertEqual(flex_count(CIRCLE), 0)

    def test_f0_excludes_flex_tangent_to_infinity(self):
        self.assertEqual(f0(NODAL), 2)
        self.assertEqual(f0(CUSPIDAL), 0)
        self.assertEqual(f0(PARABOLA), 0)

    def test_singular_points(self):
        (sp,) = singular_points(CUSPIDAL)
        self.assertEqual(sp.point, ORIGIN)
        self.assertEqual(sp.conjugates, 1)
        self.assertEqual(singular_points(CIRCLE), [])

    def test_seed_independent(self):
        self.assertEqual(f0(NODAL, seed=1), f0(NODAL, seed=99))


class TestInvariantBundle(unittest.TestCase):

    def test_conics(self):
        S = ProjPoint((2, 1, 1))
        for F, degree, klass in ((CIRCLE, 6, 4), (ELLIPSE, 6, 6), (PARABOLA, 6, 5)):
            report = invariant_bundle(F, S, 2)
            self.assertEqual(report.predicted_degree, degree)
            self.assertEqual(report.predicted_class, klass)

    def test_circle_invariants(self):
        report = invariant_bundle(CIRCLE, ProjPoint((2, 1, 1)), 2)
        self.assertEqual(report.invariants(), {
            "d": 2, "d_dual": 2, "f0": 0, "t_I": 0, "t_J": 0, "g": 0, "mu_I": 1, "mu_J": 1,
        })

    def test_cubics(self):
        S = ProjPoint((3, -2, 1))
        report = invariant_bundle(CUSPIDAL, S, 3)
        self.assertEqual((report.predicted_degree, report.predicted_class), (9, 7))
        report = invariant_bundle(NODAL, S, 4)
        self.assertEqual((report.predicted_degree, report.predicted_class), (11, 9))

    def test_rotation_invariance(self):
        S = ProjPoint((3, -2, 1))
        rotated = apply_motion(NODAL, pythagorean_rotation(2, 1))
        self.assertEqual(invariant_bundle(rotated, S, 4).invariants(), invariant_bundle(NODAL, S, 4).invariants())

    def test_match_flags(self):
        report = InvariantReport(
            d=2, d_dual=2, f0=0, t_I=0, t_J=0, g=0, mu_I=1, mu_J=1,
            predicted_degree=6, predicted_class=4, source=ProjPoint((2, 1, 1)),
        )
        self.assertFalse(report.matched)
        report.set_computed(6, 4)
        self.assertTrue(report.matched)
        report.set_computed(6, 5)
        self.assertTrue(report.degree_match)
        self.assertFalse(report.class_match)
        self.assertFalse(report.matched)


if __name__ == "__main__":
    unittest.main()
