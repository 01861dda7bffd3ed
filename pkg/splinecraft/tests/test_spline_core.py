import numpy as np
from django.test import SimpleTestCase

from ..spline_core import (CurveSet, InvalidCurveError, InvalidSurfaceError, SplineCurve2D,
                           SurfaceKind, SurfaceSpec, basis_matrix, basis_row,
                           clamped_uniform_knots, de_boor_point, eval_curve,
                           eval_derivative, evaluate_surface, extrude, parameter_grid,
                           revolve, sample_curve, surface_normals)
from .fixtures import GENERATOR, random_curve, surface_spec


class TestKnots(SimpleTestCase):

    def test_clamped_uniform_knots(self):
        self.assertEqual(clamped_uniform_knots(4, 3).tolist(), [0, 0, 0, 0, 1, 1, 1, 1])
        self.assertEqual(clamped_uniform_knots(5, 3).tolist(),
                         [0, 0, 0, 0, 0.5, 1, 1, 1, 1])
        knots = clamped_uniform_knots(6, 3)
        self.assertEqual(len(knots), 10)
        self.assertAlmostEqual(knots[4], 1 / 3)
        self.assertAlmostEqual(knots[5], 2 / 3)

    def test_too_few_points(self):
        with self.assertRaises(InvalidCurveError):
            clamped_uniform_knots(3, 3)

    def test_partition_of_unity(self):
        rng = np.random.default_rng(0)
        for m in (4, 5, 6):
            for t in np.concatenate([[0.0, 1.0], rng.uniform(size=50)]):
                row = basis_row(m, t)
                self.assertLess(abs(row.sum() - 1.0), 1e-12)
                self.assertTrue(np.all(row >= 0.0))

    def test_basis_matrix(self):
        for m in (4, 5, 6):
            matrix = basis_matrix(m, 33)
            self.assertEqual(matrix.shape, (33, m))
            self.assertLess(np.abs(matrix.sum(axis=1) - 1.0).max(), 1e-12)
            self.assertTrue(np.all(matrix >= -1e-15))
            self.assertFalse(matrix.flags.writeable)
            recursive = np.array([basis_row(m, t) for t in parameter_grid(33)])
            self.assertLess(np.abs(matrix - recursive).max(), 1e-12)

    def test_basis_matrix_counts(self):
        with self.assertRaises(InvalidCurveError):
            basis_matrix(7, 10)


class TestCurve(SimpleTestCase):

    def test_point_count_limits(self):
        with self.assertRaises(InvalidCurveError):
            SplineCurve2D(np.zeros((3, 2)))
        with self.assertRaises(InvalidCurveError):
            SplineCurve2D(np.zeros((7, 2)))
        with self.assertRaises(InvalidCurveError):
            SplineCurve2D([[0, 0], [1, 1], [np.nan, 0], [1, 0]])

    def test_control_points_frozen(self):
        curve = SplineCurve2D(GENERATOR)
        with self.assertRaises(ValueError):
            curve.control_points[0, 0] = 1.0

    def test_curveset_limit(self):
        rng = np.random.default_rng(1)
        with self.assertRaises(InvalidCurveError):
            CurveSet(tuple(random_curve(rng) for _ in range(4)))

    def test_de_boor_oracle(self):
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(1000):
            curve = random_curve(rng)
            t = rng.uniform()
            expected = de_boor_point(curve.control_points, t)
            worst = max(worst, np.abs(eval_curve(curve, t) - expected).max())
        self.assertLess(worst, 1e-12)

    def test_endpoint_interpolation(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            curve = random_curve(rng)
            np.testing.assert_allclose(eval_curve(curve, 0.0), curve.control_points[0],
                                       atol=1e-12)
            np.testing.assert_allclose(eval_curve(curve, 1.0), curve.control_points[-1],
                                       atol=1e-12)

    def test_sample_curve_matches_eval_curve(self):
        curve = random_curve(np.random.default_rng(4), 6)
        samples = sample_curve(curve, 100)
        self.assertEqual(samples.shape, (100, 2))
        for k in (0, 1, 37, 99):
            np.testing.assert_array_equal(samples[k], eval_curve(curve, k / 99))

    def test_convex_hull(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            curve = random_curve(rng)
            samples = sample_curve(curve, 200)
            low = curve.control_points.min(axis=0) - 1e-12
            high = curve.control_points.max(axis=0) + 1e-12
            self.assertTrue(np.all((samples >= low) & (samples <= high)))

    def test_linearity(self):
        rng = np.random.default_rng(6)
        p, q = rng.uniform(size=(5, 2)), rng.uniform(size=(5, 2))
        combined = SplineCurve2D(0.3 * p + 0.7 * q)
        expected = (0.3 * sample_curve(SplineCurve2D(p), 50)
                    + 0.7 * sample_curve(SplineCurve2D(q), 50))
        np.testing.assert_allclose(sample_curve(combined, 50), expected, atol=1e-12)

    def test_derivative(self):
        curve = random_curve(np.random.default_rng(7), 5)
        ts = np.array([0.1, 0.45, 0.8])
        h = 1e-6
        numeric = (sample_at(curve, ts + h) - sample_at(curve, ts - h)) / (2 * h)
        np.testing.assert_allclose(eval_derivative(curve, ts), numeric, atol=1e-6)


def sample_at(curve, ts):
    return np.array([eval_curve(curve, t) for t in ts])


class TestSurface(SimpleTestCase):

    def test_spec_validation(self):
        surface_spec().validate()
        flat = GENERATOR.copy()
        flat[2, 1] = flat[1, 1]
        with self.assertRaises(InvalidSurfaceError):
            SurfaceSpec(SplineCurve2D(flat), SurfaceKind.EXTRUSION, 0.5).validate()
        near_axis = GENERATOR.copy()
        near_axis[0, 0] = 0.01
        with self.assertRaises(InvalidSurfaceError):
            SurfaceSpec(SplineCurve2D(near_axis), SurfaceKind.REVOLUTION).validate()

    def test_revolve(self):
        spec = surface_spec()
        grid = revolve(spec, 16, 10)
        self.assertEqual(grid.shape, (160, 3))
        profile = sample_curve(spec.generator, 10)
        np.testing.assert_allclose(grid[:10, 0], profile[:, 0])
        np.testing.assert_allclose(grid[:10, 2], 0.0, atol=1e-15)
        rings = grid.reshape(16, 10, 3)
        np.testing.assert_allclose(np.hypot(rings[..., 0], rings[..., 2]),
                                   np.broadcast_to(profile[:, 0], (16, 10)), atol=1e-12)
        np.testing.assert_allclose(rings[..., 1], np.broadcast_to(profile[:, 1], (16, 10)))

    def test_extrude(self):
        spec = surface_spec(SurfaceKind.EXTRUSION, height=0.6)
        grid = extrude(spec, 3, 8)
        self.assertEqual(grid.shape, (24, 3))
        np.testing.assert_allclose(np.unique(grid[:, 2]), [0.0, 0.3, 0.6])
        np.testing.assert_array_equal(extrude(spec, 1, 8)[:, 2], np.zeros(8))

    def test_kind_mismatch(self):
        with self.assertRaises(InvalidSurfaceError):
            revolve(surface_spec(SurfaceKind.EXTRUSION), 4, 4)
        with self.assertRaises(InvalidSurfaceError):
            extrude(surface_spec(), 4, 4)

    def test_evaluate_surface_matches_grid(self):
        spec = surface_spec()
        params = np.column_stack([parameter_grid(10), np.zeros(10)])
        np.testing.assert_allclose(evaluate_surface(spec, params), revolve(spec, 16, 10)[:10],
                                   atol=1e-12)

    def test_normals_are_unit(self):
        rng = np.random.default_rng(8)
        for kind in SurfaceKind:
            normals = surface_normals(surface_spec(kind), rng.uniform(size=(30, 2)))
            np.testing.assert_allclose(np.linalg.norm(normals, axis=1), 1.0)
