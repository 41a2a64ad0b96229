"""
端到端验证测试
"""
import unittest

from algebra import X, Y, Z, parse_poly
from catalog_data import CATALOG, CATALOG_NAMES, TEST_ENTRIES
from errors import PreconditionError
from harness import (
    CausticVerifier, bad_source_curve, biduality_holds, generic_source, is_generic_source, on_isotropic_tangent,
    summary_table, verify_formulas,
)
from localinv import multiplicity_at
from projgeom import I_POINT, J_POINT, ProjPoint, in_C0

CIRCLE = X ** 2 + Y ** 2 - Z ** 2
PARABOLA = Y * Z - X ** 2
CUSPIDAL = parse_poly("y^2*z-x^3")
NODAL = parse_poly("y^2*z-x^2*z-x^3")
LEMNISCATE = parse_poly("(x^2+y^2)^2-(x^2-y^2)*z^2")


class TestGenericSource(unittest.TestCase):

    def test_rejections(self):
        self.assertEqual(is_generic_source(CIRCLE, ProjPoint((1, 0, 1))), (False, "on_curve"))
        self.assertEqual(is_generic_source(CIRCLE, ProjPoint((1, 1, 0))), (False, "at_infinity"))
        # 圆心在两条迷向切线上
        ok, reason = is_generic_source(CIRCLE, ProjPoint((0, 0, 1)))
        self.assertFalse(ok)
        self.assertTrue(reason.startswith("isotropic_tangent"))

    def test_accepts_generic_point(self):
        self.assertEqual(is_generic_source(CIRCLE, ProjPoint((2, 1, 1))), (True, "generic"))

    def test_draw_is_generic_and_reproducible(self):
        S = generic_source(PARABOLA, seed=11)
        self.assertEqual(S, generic_source(PARABOLA, seed=11))
        self.assertTrue(is_generic_source(PARABOLA, S)[0])
        self.assertFalse(S.is_at_infinity())

    def test_curve_singular_at_circle_points(self):
        # 伯努利双纽线在 I、J 处各有一个二重点
        self.assertEqual(multiplicity_at(LEMNISCATE, I_POINT), 2)
        self.assertEqual(multiplicity_at(LEMNISCATE, J_POINT), 2)
        for coords in ((7, 3, 1), (-11, 5, 2)):
            self.assertEqual(is_generic_source(LEMNISCATE, ProjPoint(coords)), (True, "generic"))
        S = generic_source(LEMNISCATE, seed=5)
        self.assertTrue(is_generic_source(LEMNISCATE, S)[0])

    def test_line_through_circle_point_kept_only_off_tangent(self):
        S = ProjPoint((7, 3, 1))
        self.assertFalse(on_isotropic_tangent(LEMNISCATE, S, I_POINT))
        # 圆心 [0:0:1] 与 I 的连线与圆在 I 处相切
        self.assertTrue(on_isotropic_tangent(CIRCLE, ProjPoint((0, 0, 1)), I_POINT))
        self.assertFalse(on_isotropic_tangent(CIRCLE, ProjPoint((2, 1, 1)), I_POINT))


class TestFormulas(unittest.TestCase):

    def test_circle(self):
        check = verify_formulas(CIRCLE, ProjPoint((2, 1, 1)))
        self.assertTrue(check.report.matched)
        self.assertEqual((check.report.computed_degree, check.report.computed_class), (6, 4))
        self.assertEqual(check.report.phi_map_degree, 1)
        self.assertEqual(check.attempts, 1)
        d = check.to_dict()
        self.assertEqual(d['predicted'], {'degree': 6, 'class': 4})
        self.assertEqual(d['invariants']['mu_I'], 1)

    def test_parabola(self):
        check = verify_formulas(PARABOLA, ProjPoint((1, 2, 1)))
        self.assertEqual((check.report.computed_degree, check.report.computed_class), (6, 5))

    def test_cubics(self):
        # 一般光源下：结点三次曲线 11/9，尖点三次曲线 9/7
        for F, expected, seed in ((NODAL, (11, 9), 21), (CUSPIDAL, (9, 7), 22)):
            S = generic_source(F, seed=seed)
            check = verify_formulas(F, S, seed=seed)
            self.assertTrue(check.report.matched)
            self.assertEqual((check.report.computed_degree, check.report.computed_class), expected)
            self.assertEqual((check.report.predicted_degree, check.report.predicted_class), expected)

    def test_biduality(self):
        self.assertTrue(biduality_holds(CIRCLE))
        self.assertTrue(biduality_holds(PARABOLA))


class TestBadSource(unittest.TestCase):

    def test_circle_within_bound(self):
        report = bad_source_curve(CIRCLE, ProjPoint((3, 4, 5)))
        self.assertEqual(report.bound, 10)
        self.assertTrue(report.within_bound)
        self.assertGreaterEqual(report.degree, 2)
        self.assertTrue(report.to_dict()['within_bound'])

    def test_several_circle_points(self):
        for text in ("[3:4:5]", "[5:-12:13]", "[-8:15:17]"):
            report = bad_source_curve(CIRCLE, ProjPoint.parse(text))
            self.assertEqual(report.bound, 10)
            self.assertTrue(report.within_bound, text)

    def test_point_outside_C0(self):
        with self.assertRaises(PreconditionError) as ctx:
            bad_source_curve(CIRCLE, I_POINT)
        self.assertEqual(ctx.exception.reason, "not_in_C0")


class TestCatalog(unittest.TestCase):

    def test_stored_points_in_C0(self):
        for entry in CATALOG:
            F = parse_poly(entry['curve'])
            for text in entry['points']:
                self.assertTrue(in_C0(F, ProjPoint.parse(text)), f"{entry['name']} {text}")

    def test_test_entries(self):
        self.assertTrue(set(TEST_ENTRIES) <= set(CATALOG_NAMES))

    def test_verify_circle_entry(self):
        verifier = CausticVerifier(seed=3, sources_per_entry=1, samples=20, bad_source_points=2)
        entry = next(e for e in CATALOG if e['name'] == "circle")
        result = verifier.verify_entry(entry, seed=3)
        self.assertEqual(result['errors'], [])
        self.assertTrue(result['success'])
        self.assertEqual(result['d_dual'], 2)
        self.assertTrue(result['biduality'])
        self.assertTrue(result['quetelet_dandelin']['match'])
        self.assertEqual(len(result['bad_source']), 2)
        source = result['sources'][0]
        self.assertEqual(source['computed'], {'degree': 6, 'class': 4})
        self.assertEqual(source['birationality']['verdict'], "injective")

    def test_unknown_entry(self):
        with self.assertRaises(PreconditionError):
            CausticVerifier().run(entries=["hyperbola"], parallel=False)

    def test_summary_table(self):
        summary = {'results': [
            {'name': "circle", 'sources': [{
                'source': "[2:1:1]",
                'predicted': {'degree': 6, 'class': 4},
                'computed': {'degree': 6, 'class': 4},
                'birationality': {'verdict': "injective"},
            }]},
            {'name': "nodal_cubic", 'sources': []},
        ]}
        df = summary_table(summary)
        self.assertEqual(list(df['curve']), ["circle", "nodal_cubic"])
        self.assertEqual(df.loc[0, 'computed_class'], 4)


if __name__ == "__main__":
    unittest.main()
