import tempfile
from pathlib import Path
from unittest import mock

import numpy as np
import pandas as pd
from django.test import SimpleTestCase, tag

from ..autodiff import NonFiniteError
from ..classic_fit import FitConfig
from ..models import ModelKind, build_model, load_model
from ..spline_core import CurveSet
from ..synth_data import (GenConfig, Mode, RasterImage, Scene2D, generate_dataset,
                          write_dataset)
from ..train_eval import (NOT_APPLICABLE, DatasetModeError, InitComparison, NetworkPredictor,
                          OraclePredictor, TrainConfig, TrainConfigError,
                          TrainingAbortedError, batch_indices, check_mode, compare_init,
                          evaluate, load_split, loss_line,
                          matched_point_counts, matched_squared_error, split_indices, train)
from .fixtures import TINY_MODEL, random_curve, random_curveset

MODEL_32 = TINY_MODEL.with_options(image_size=32)
QUICK_FIT = FitConfig(max_iters=10, n_dense=200, restarts=2)


def records(mode, count=4, seed=0):
    return generate_dataset(GenConfig.for_mode(mode, size=32, count=count, seed=seed,
                                               cloud_size=64))


class TestSplits(SimpleTestCase):

    def test_disjoint_and_complete(self):
        train_part, test_part = split_indices(20, seed=3)
        self.assertEqual(len(train_part), 14)
        self.assertFalse(set(train_part) & set(test_part))
        self.assertEqual(sorted(np.concatenate([train_part, test_part])), list(range(20)))

    def test_seeded(self):
        np.testing.assert_array_equal(split_indices(30, 1)[0], split_indices(30, 1)[0])
        self.assertFalse(np.array_equal(split_indices(30, 1)[0], split_indices(30, 2)[0]))

    def test_load_split(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'v.bin'
            write_dataset(records(Mode.V, count=10), path)
            train_part, test_part = load_split(path, ModelKind.V, seed=0)
            self.assertEqual((len(train_part), len(test_part)), (7, 3))
            with self.assertRaises(DatasetModeError):
                load_split(path, ModelKind.REV3D, seed=0)


class TestCheckMode(SimpleTestCase):

    def scene(self, *counts):
        rng = np.random.default_rng(0)
        label = CurveSet(tuple(random_curve(rng, m) for m in counts))
        return Scene2D(image=RasterImage(np.zeros((32, 32))), label=label)

    def test_accepts_matching_records(self):
        self.assertEqual(len(check_mode([self.scene(4)], ModelKind.V)), 1)
        check_mode([self.scene(5, 5)], ModelKind.M)
        check_mode([self.scene(4, 6, 5)], ModelKind.MV)

    def test_rejects_mismatches(self):
        with self.assertRaises(DatasetModeError):
            check_mode([self.scene(4, 5)], ModelKind.V)
        with self.assertRaises(DatasetModeError):
            check_mode([self.scene(5, 4)], ModelKind.M)
        with self.assertRaises(DatasetModeError):
            check_mode([self.scene(5)], ModelKind.REV3D)
        surfaces = records(Mode.REV, count=1)
        with self.assertRaises(DatasetModeError):
            check_mode(surfaces, ModelKind.EXT3D)
        with self.assertRaises(DatasetModeError):
            check_mode(surfaces, ModelKind.MV)
        self.assertEqual(check_mode(surfaces, ModelKind.REV3D_PC), surfaces)


class TestTrainConfig(SimpleTestCase):

    def test_from_settings(self):
        cfg = TrainConfig.from_settings('MV', max_steps=5, lr=None)
        self.assertIs(cfg.mode, ModelKind.MV)
        self.assertEqual((cfg.max_steps, cfg.lr, cfg.batch_size), (5, 1e-4, 32))
        self.assertEqual(cfg.loss_weights.lam_point, 0.1)

    def test_validation(self):
        for options in ({'batch_size': 0}, {'lr': 0.0}, {'weight_decay': -1.0},
                        {'max_steps': 0}, {'train_fraction': 1.0}):
            with self.assertRaises(TrainConfigError):
                TrainConfig(**options)
        with self.assertRaises(ValueError):
            TrainConfig(mode='XYZ')


class TestTrainingLoop(SimpleTestCase):

    def setUp(self):
        self.records = records(Mode.V, count=4)
        self.cfg = TrainConfig(mode=ModelKind.V, batch_size=2, max_steps=3, log_every=1,
                               lr=1e-3, seed=0)

    def test_loss_line(self):
        self.assertEqual(loss_line(3, 0.5), 'step 3 loss 0.5')
        self.assertEqual(float(loss_line(1, 0.1).split()[-1]), 0.1)

    def test_batches_cover_each_epoch(self):
        batches = batch_indices(5, 2, np.random.default_rng(0))
        epoch = np.concatenate([next(batches) for _ in range(3)])
        self.assertEqual(sorted(epoch), [0, 1, 2, 3, 4])

    def test_smoke(self):
        result = train(self.cfg, self.records, model_config=MODEL_32)
        self.assertEqual(result.steps, 3)
        self.assertTrue(all(np.isfinite(result.losses)))
        self.assertEqual(result.log, [loss_line(s, l) for s, l in enumerate(result.losses, 1)])
        self.assertIs(result.model.kind, ModelKind.V)

    def test_deterministic(self):
        first = train(self.cfg, self.records, model_config=MODEL_32)
        second = train(self.cfg, self.records, model_config=MODEL_32)
        self.assertEqual(first.losses, second.losses)
        for name in first.model.store:
            np.testing.assert_array_equal(first.model.store[name].values,
                                          second.model.store[name].values)

    def test_parameters_move(self):
        model = build_model(ModelKind.V, MODEL_32)
        before = model.store.state_dict()
        train(self.cfg, self.records, model=model)
        moved = [not np.array_equal(before[name], model.store[name].values)
                 for name in model.store]
        self.assertTrue(any(moved))

    def test_checkpoint_and_loss_log(self):
        with tempfile.TemporaryDirectory() as directory:
            checkpoint = str(Path(directory) / 'v.spck')
            loss_log = Path(directory) / 'loss.txt'
            cfg = self.cfg.with_options(checkpoint=checkpoint, loss_log=str(loss_log),
                                        eval_every=2)
            result = train(cfg, self.records, model_config=MODEL_32)
            model, manifest = load_model(checkpoint)
            self.assertEqual(manifest['config']['step'], 3)
            self.assertEqual(manifest['config']['train']['mode'], 'V')
            self.assertEqual(loss_log.read_text().splitlines(), result.log)
        for name in model.store:
            np.testing.assert_array_equal(model.store[name].values,
                                          result.model.store[name].values)

    def test_aborts_on_non_finite_loss(self):
        with mock.patch('splinecraft.train_eval.trainer.train_step',
                        side_effect=NonFiniteError('log produced non-finite values.')):
            with self.assertRaises(TrainingAbortedError):
                train(self.cfg, self.records, model_config=MODEL_32)
        with mock.patch('splinecraft.train_eval.trainer.train_step',
                        return_value=float('nan')):
            with self.assertRaises(TrainingAbortedError):
                train(self.cfg, self.records, model_config=MODEL_32)

    def test_input_errors(self):
        with self.assertRaises(TrainConfigError):
            train(self.cfg)
        with self.assertRaises(TrainConfigError):
            train(self.cfg, [])
        with self.assertRaises(DatasetModeError):
            train(self.cfg.with_options(mode=ModelKind.REV3D), self.records)


class TestMatching(SimpleTestCase):

    def test_matched_squared_error(self):
        rng = np.random.default_rng(1)
        label = random_curveset(rng, 3, m=5)
        self.assertEqual(matched_squared_error(label, label), (0.0, 15))
        shifted = CurveSet(tuple(type(c)(c.control_points + 0.01) for c in label))
        error, points = matched_squared_error(shifted, label)
        self.assertAlmostEqual(error, 15 * 2 * 0.01 ** 2)
        self.assertEqual(points, 15)
        self.assertEqual(matched_squared_error(CurveSet(label.curves[:2]), label)[1], 10)

    def test_matched_point_counts(self):
        rng = np.random.default_rng(2)
        label = CurveSet((random_curve(rng, 4), random_curve(rng, 6)))
        self.assertEqual(matched_point_counts(label, label), (2, 2))
        pred = CurveSet((random_curve(rng, 5),))
        self.assertEqual(matched_point_counts(pred, label), (0, 1))


class TestEvaluate(SimpleTestCase):

    def test_oracle_single_curve(self):
        report, rows = evaluate(OraclePredictor(ModelKind.V), records(Mode.V), 'V',
                                with_fits=False)
        summary = report.to_dict()
        self.assertEqual(set(summary), {
            'mse', 'point_acc', 'curve_acc', 'chamfer_nn', 'chamfer_nn_init',
            'chamfer_random_init', 'n_instances'})
        self.assertEqual(summary['n_instances'], 4)
        self.assertEqual(summary['mse'], 0.0)
        self.assertEqual(summary['point_acc'], 100.0)
        self.assertEqual(summary['curve_acc'], NOT_APPLICABLE)
        self.assertEqual(summary['chamfer_nn_init'], NOT_APPLICABLE)
        self.assertGreaterEqual(summary['chamfer_nn'], 0.0)
        self.assertEqual(list(rows['instance']), [0, 1, 2, 3])

    def test_oracle_multi_curve(self):
        report, _ = evaluate(OraclePredictor(ModelKind.M), records(Mode.M), ModelKind.M,
                             with_fits=False)
        self.assertEqual(report.curve_acc, 100.0)
        self.assertIsNone(report.point_acc)
        self.assertEqual(report.mse, 0.0)
        report, _ = evaluate(OraclePredictor(ModelKind.MV), records(Mode.MV),
                             ModelKind.MV, with_fits=False)
        self.assertEqual((report.curve_acc, report.point_acc), (100.0, 100.0))

    def test_oracle_surface(self):
        report, rows = evaluate(OraclePredictor(ModelKind.REV3D_PC), records(Mode.REV, 2),
                                ModelKind.REV3D_PC)
        summary = report.to_dict()
        for key in ('mse', 'point_acc', 'curve_acc', 'chamfer_nn_init',
                    'chamfer_random_init'):
            self.assertEqual(summary[key], NOT_APPLICABLE)
        self.assertGreaterEqual(summary['chamfer_nn'], 0.0)
        self.assertEqual(list(rows.columns), ['instance', 'chamfer_nn'])

    def test_fits_never_worse_than_prediction(self):
        _, rows = evaluate(OraclePredictor(ModelKind.V), records(Mode.V, 2), ModelKind.V,
                           fit_cfg=QUICK_FIT)
        self.assertTrue(np.all(rows['chamfer_nn_init'] <= rows['chamfer_nn']))
        self.assertTrue(np.all(rows['chamfer_random_init'] >= 0))

    def test_network_predictor(self):
        model = build_model(ModelKind.MV, MODEL_32)
        report, rows = evaluate(NetworkPredictor(model), records(Mode.MV, 2), ModelKind.MV,
                                with_fits=False, workers=2)
        self.assertEqual(report.n_instances, 2)
        self.assertTrue(0.0 <= report.curve_acc <= 100.0)
        self.assertTrue(np.all(rows['pred_curves'].between(1, 3)))

    def test_network_surface_predictor(self):
        model = build_model(ModelKind.EXT3D, MODEL_32)
        prediction = NetworkPredictor(model).predict(records(Mode.EXT, 1)[0])
        self.assertEqual(prediction.points.shape, (24, 3))
        self.assertGreater(prediction.spec.height, 0.0)

    def test_nothing_to_evaluate(self):
        with self.assertRaises(ValueError):
            evaluate(OraclePredictor(ModelKind.V), [], ModelKind.V)


class TestCompareInit(SimpleTestCase):

    @tag('slow')
    def test_oracle_comparison(self):
        comparison = compare_init(OraclePredictor(ModelKind.V), records(Mode.V, 2),
                                  ModelKind.V, QUICK_FIT)
        self.assertEqual(len(comparison.rows), 2)
        self.assertTrue(np.all(comparison.rows['chamfer_nn_init']
                               <= comparison.rows['chamfer_nn']))
        summary = comparison.summary()
        self.assertEqual(summary['n_instances'], 2)
        self.assertTrue(summary['nn_init_not_worse_than_nn'])
        self.assertTrue(0.0 <= summary['nn_init_wins'] <= 1.0)
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'compare.csv'
            comparison.to_csv(path)
            self.assertEqual(list(pd.read_csv(path).columns),
                             ['instance', 'chamfer_nn', 'chamfer_nn_init',
                              'chamfer_random_init'])

    def test_summary_arithmetic(self):
        rows = pd.DataFrame({'instance': [0, 1], 'chamfer_nn': [4.0, 6.0],
                             'chamfer_nn_init': [1.0, 3.0],
                             'chamfer_random_init': [2.0, 2.0]})
        summary = InitComparison(rows).summary()
        self.assertEqual(summary['mean_chamfer_nn'], 5.0)
        self.assertEqual(summary['ratio_nn_init_to_random_init'], 1.0)
        self.assertEqual(summary['nn_init_wins'], 0.5)
        self.assertFalse(summary['ordering_nn_init_random_init_nn'])
        zero = rows.assign(chamfer_random_init=[0.0, 0.0])
        self.assertIsNone(InitComparison(zero).ratio)

    def test_needs_2d_mode(self):
        with self.assertRaises(ValueError):
            compare_init(OraclePredictor(ModelKind.REV3D), [], ModelKind.REV3D)
