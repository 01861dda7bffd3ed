import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase
from scipy.special import expit

from ..autodiff import (AdamState, CheckpointError, ContractError, NonFiniteError,
                        ParameterStore, ShapeError, Tape, Tensor, adam_step,
                        decode_checkpoint, encode_checkpoint, gradcheck, gru_cell,
                        gru_parameter_shapes, load_checkpoint, numerical_gradient, ops,
                        save_checkpoint)

TOLERANCE = 1e-3


def leaf(rng, *shape, low=-1.0, high=1.0):
    return Tensor(rng.uniform(low, high, size=shape), requires_grad=True)


class GradcheckMixin:

    def assertGradients(self, fn, params, seed=0):
        """Checks fn(*params) projected onto fixed random weights."""
        weights = np.random.default_rng(seed).normal(size=fn(*params).shape)

        def loss():
            return ops.sum(ops.mul(fn(*params), weights))
        self.assertLess(gradcheck(loss, list(params)), TOLERANCE)


class TestElementwiseGradients(GradcheckMixin, SimpleTestCase):

    def setUp(self):
        self.rng = np.random.default_rng(0)

    def test_binary_with_broadcasting(self):
        a, b = leaf(self.rng, 3, 4), leaf(self.rng, 4)
        for op in (ops.add, ops.sub, ops.mul):
            self.assertGradients(op, (a, b))

    def test_unary(self):
        a = leaf(self.rng, 5)
        for op in (ops.neg, ops.square, ops.sigmoid, ops.tanh, ops.exp, ops.softplus):
            self.assertGradients(op, (a,))

    def test_relu_away_from_zero(self):
        a = Tensor([-0.7, -0.2, 0.3, 0.9], requires_grad=True)
        self.assertGradients(ops.relu, (a,))

    def test_log(self):
        self.assertGradients(ops.log, (leaf(self.rng, 4, low=0.5, high=2.0),))

    def test_softmax(self):
        a = leaf(self.rng, 3, 4)
        self.assertGradients(lambda x: ops.softmax(x, axis=1), (a,))
        self.assertGradients(lambda x: ops.softmax(x, axis=0), (a,))

    def test_nll(self):
        self.assertGradients(lambda x: ops.nll(x, 1), (leaf(self.rng, 2),))
        self.assertGradients(lambda x: ops.nll(x, 2), (leaf(self.rng, 3, low=-3.0, high=3.0),))

    def test_nll_large_logit_gap(self):
        logits = Tensor([1000.0, 0.0], requires_grad=True)
        self.assertAlmostEqual(float(ops.nll(logits, 1).values), 1000.0)
        with Tape() as tape:
            loss = ops.nll(logits, 0)
        self.assertEqual(float(loss.values), 0.0)
        np.testing.assert_allclose(tape.backward(loss)[logits], [0.0, 0.0], atol=1e-12)
        with Tape() as tape:
            loss = ops.nll(logits, 1)
        np.testing.assert_allclose(tape.backward(loss)[logits], [1.0, -1.0], atol=1e-12)

    def test_nll_class_out_of_range(self):
        with self.assertRaises(ShapeError):
            ops.nll(Tensor([0.1, 0.2]), 2)


class TestStructuralGradients(GradcheckMixin, SimpleTestCase):

    def setUp(self):
        self.rng = np.random.default_rng(1)

    def test_matmul(self):
        self.assertGradients(ops.matmul, (leaf(self.rng, 3, 4), leaf(self.rng, 4, 2)))
        self.assertGradients(ops.matmul, (leaf(self.rng, 3, 4), leaf(self.rng, 4)))
        self.assertGradients(ops.matmul, (leaf(self.rng, 4), leaf(self.rng, 4, 3)))
        self.assertGradients(ops.matmul, (leaf(self.rng, 2, 3, 4), leaf(self.rng, 4, 2)))

    def test_linear(self):
        self.assertGradients(ops.linear,
                             (leaf(self.rng, 5), leaf(self.rng, 5, 3), leaf(self.rng, 3)))

    def test_shapes(self):
        a = leaf(self.rng, 3, 4)
        self.assertGradients(ops.transpose, (a,))
        self.assertGradients(lambda x: ops.reshape(x, (2, 6)), (a,))
        self.assertGradients(lambda x, y: ops.concat([x, y], axis=1),
                             (a, leaf(self.rng, 3, 2)))
        self.assertGradients(lambda x, y: ops.stack([x, y]), (a, leaf(self.rng, 3, 4)))

    def test_slicing(self):
        a = leaf(self.rng, 4, 3)
        self.assertGradients(lambda x: x[1:3, 0], (a,))
        self.assertGradients(lambda x: ops.gather_rows(x, [0, 2, 2, 3]), (a,))

    def test_reductions(self):
        a = leaf(self.rng, 3, 4)
        self.assertGradients(lambda x: ops.sum(x, axis=1), (a,))
        self.assertGradients(lambda x: ops.mean(x, axis=0, keepdims=True), (a,))
        self.assertGradients(lambda x: ops.cumsum(x, axis=1), (a,))
        self.assertGradients(lambda x: ops.max(x, axis=0), (a,))
        self.assertGradients(ops.mean_pool_spatial, (leaf(self.rng, 2, 3, 4),))

    def test_conv2d(self):
        w, b = leaf(self.rng, 2, 3, 3, 3), leaf(self.rng, 2)
        self.assertGradients(ops.conv2d, (leaf(self.rng, 3, 5, 4), w, b))
        self.assertGradients(ops.conv2d, (leaf(self.rng, 2, 3, 4, 4), w, b))

    def test_maxpool2d(self):
        values = self.rng.permutation(32).reshape(2, 4, 4) / 10.0
        self.assertGradients(ops.maxpool2d, (Tensor(values, requires_grad=True),))

    def test_gru_cell(self):
        store = ParameterStore(seed=2)
        store.add_many(gru_parameter_shapes(3, 4))
        x, h = leaf(self.rng, 3), leaf(self.rng, 4)
        self.assertGradients(lambda x, h: gru_cell(x, h, store), (x, h))
        params = [store[name] for name in ('gru.W_z', 'gru.U_r', 'gru.b_h')]
        weights = self.rng.normal(size=4)
        loss = lambda: ops.sum(ops.mul(gru_cell(x, h, store), weights))  # noqa: E731
        self.assertLess(gradcheck(loss, params), TOLERANCE)


class TestForwardValues(SimpleTestCase):

    def test_gru_cell_equations(self):
        rng = np.random.default_rng(3)
        store = ParameterStore(seed=4)
        store.add_many(gru_parameter_shapes(2, 3))
        for name in store:
            store[name].values = rng.normal(size=store[name].shape)
        x, h = rng.normal(size=2), rng.normal(size=3)
        p = {name: store[name].values for name in store}
        z = expit(p['gru.W_z'] @ x + p['gru.U_z'] @ h + p['gru.b_z'])
        r = expit(p['gru.W_r'] @ x + p['gru.U_r'] @ h + p['gru.b_r'])
        candidate = np.tanh(p['gru.W_h'] @ x + p['gru.U_h'] @ (r * h) + p['gru.b_h'])
        expected = (1 - z) * h + z * candidate
        np.testing.assert_allclose(gru_cell(Tensor(x), Tensor(h), store).values, expected,
                                   atol=1e-12)

    def test_conv2d_matches_direct_sum(self):
        rng = np.random.default_rng(5)
        x, w = rng.normal(size=(1, 4, 4)), rng.normal(size=(1, 1, 3, 3))
        out = ops.conv2d(Tensor(x), Tensor(w)).values
        padded = np.pad(x[0], 1)
        expected = np.array([[np.sum(padded[i:i + 3, j:j + 3] * w[0, 0]) for j in range(4)]
                             for i in range(4)])
        np.testing.assert_allclose(out[0], expected, atol=1e-12)

    def test_maxpool2d_values(self):
        x = np.arange(16.0).reshape(4, 4)
        np.testing.assert_array_equal(ops.maxpool2d(Tensor(x)).values, [[5, 7], [13, 15]])


class TestTape(SimpleTestCase):

    def test_untouched_parameters_get_zeros(self):
        a, b = Tensor([1.0, 2.0], requires_grad=True), Tensor([3.0], requires_grad=True)
        with Tape() as tape:
            loss = ops.sum(ops.square(a))
        grads = tape.backward(loss, [a, b])
        np.testing.assert_array_equal(grads[a], [2.0, 4.0])
        np.testing.assert_array_equal(grads[b], [0.0])

    def test_shared_inputs_accumulate(self):
        a = Tensor([3.0], requires_grad=True)
        with Tape() as tape:
            loss = ops.sum(ops.mul(a, a))
        np.testing.assert_array_equal(tape.backward(loss)[a], [6.0])

    def test_contracts(self):
        a = Tensor([1.0, 2.0], requires_grad=True)
        with Tape() as tape:
            vector = ops.square(a)
        with self.assertRaises(ContractError):
            tape.backward(vector)
        with Tape() as other:
            loss = ops.sum(a)
        with self.assertRaises(ContractError):
            tape.backward(loss)
        self.assertEqual(len(other), 1)
        with self.assertRaises(ContractError):
            Tensor([1.0, 2.0]).item()

    def test_no_tape_no_record(self):
        a = Tensor([1.0], requires_grad=True)
        self.assertIsNone(ops.square(a).node)
        with Tape() as tape:
            untracked = ops.square(Tensor([1.0]))
        self.assertIsNone(untracked.node)
        self.assertEqual(len(tape), 0)

    def test_non_finite(self):
        with self.assertRaises(NonFiniteError):
            ops.log(Tensor([0.0]))
        with self.assertRaises(NonFiniteError):
            ops.log(Tensor([-1.0]))

    def test_shape_errors(self):
        with self.assertRaises(ShapeError):
            ops.matmul(Tensor(np.ones((2, 3))), Tensor(np.ones((2, 3))))
        with self.assertRaises(ShapeError):
            ops.add(Tensor(np.ones(3)), Tensor(np.ones(4)))
        with self.assertRaises(ShapeError):
            ops.maxpool2d(Tensor(np.ones((3, 3))))

    def test_numerical_gradient(self):
        values = np.array([1.0, -2.0])
        grad = numerical_gradient(lambda: float(np.sum(values ** 2)), values)
        np.testing.assert_allclose(grad, [2.0, -4.0], atol=1e-8)
        np.testing.assert_array_equal(values, [1.0, -2.0])


class TestAdam(SimpleTestCase):

    def test_first_step_moves_by_lr(self):
        param = Tensor([1.0, -1.0], requires_grad=True)
        adam_step({'w': param}, {'w': np.array([0.5, -2.0])},
                  AdamState(lr=1e-3, weight_decay=0.0))
        np.testing.assert_allclose(param.values, [1.0 - 1e-3, -1.0 + 1e-3], atol=1e-10)

    def test_weight_decay(self):
        folded = Tensor([2.0], requires_grad=True)
        adam_step({'w': folded}, {'w': np.zeros(1)}, AdamState(lr=1e-3, weight_decay=0.1))
        np.testing.assert_allclose(folded.values, [2.0 - 1e-3], atol=1e-10)
        decoupled = Tensor([2.0], requires_grad=True)
        adam_step({'w': decoupled}, {'w': np.zeros(1)},
                  AdamState(lr=1e-3, weight_decay=0.1, decoupled=True))
        np.testing.assert_allclose(decoupled.values, [2.0 - 1e-3 * 0.1 * 2.0], atol=1e-12)

    def test_bias_correction_state(self):
        state = AdamState()
        param = Tensor([0.0], requires_grad=True)
        for _ in range(3):
            adam_step({'w': param}, {'w': np.ones(1)}, state)
        self.assertEqual(state.step, 3)
        self.assertIn('w', state.first)

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeError):
            adam_step({'w': Tensor(np.zeros(2))}, {'w': np.zeros(3)}, AdamState())


class TestParameterStore(SimpleTestCase):

    def test_seeded_initialisation(self):
        first, second = ParameterStore(seed=5), ParameterStore(seed=5)
        for store in (first, second):
            store.add('w', (4, 3))
            store.add('b', (3,), init='zeros')
        np.testing.assert_array_equal(first['w'].values, second['w'].values)
        self.assertTrue(np.all(np.abs(first['w'].values) <= np.sqrt(6.0 / 7.0)))
        np.testing.assert_array_equal(first['b'].values, np.zeros(3))
        self.assertEqual(first.count(), 15)
        self.assertEqual(first.names(), ['w', 'b'])

    def test_add_many_and_duplicates(self):
        store = ParameterStore()
        store.add_many(gru_parameter_shapes(2, 3))
        self.assertEqual(len(store), 9)
        np.testing.assert_array_equal(store['gru.b_z'].values, np.zeros(3))
        with self.assertRaises(KeyError):
            store.add('gru.b_z', (3,))

    def test_state_dict(self):
        store = ParameterStore(seed=1)
        store.add('w', (2, 2))
        state = store.state_dict()
        store['w'].values = np.zeros((2, 2))
        store.load_state_dict(state)
        np.testing.assert_array_equal(store['w'].values, state['w'])
        with self.assertRaises(ShapeError):
            store.load_state_dict({'w': np.zeros(3)})
        with self.assertRaises(KeyError):
            store.load_state_dict({})


class TestCheckpoint(SimpleTestCase):

    def setUp(self):
        self.store = ParameterStore(seed=6)
        self.store.add('a', (2, 3))
        self.store.add('b', (3,))

    def test_encode_decode(self):
        data = encode_checkpoint(self.store.state_dict(), 'V', {'lr': 1e-4})
        self.assertEqual(data[:4], b'SPCK')
        manifest, arrays = decode_checkpoint(data)
        self.assertEqual(manifest['kind'], 'V')
        self.assertEqual(manifest['config'], {'lr': 1e-4})
        self.assertEqual(manifest['tensors'], [['a', [2, 3]], ['b', [3]]])
        for name in ('a', 'b'):
            np.testing.assert_array_equal(arrays[name], self.store[name].values)

    def test_corrupt_data(self):
        data = encode_checkpoint(self.store.state_dict(), 'V')
        for broken in (b'XXXX' + data[4:], data[:-8], data + b'\x00', data[:3]):
            with self.assertRaises(CheckpointError):
                decode_checkpoint(broken)

    def test_files(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'model.spck'
            save_checkpoint(path, self.store, 'M')
            manifest, arrays = load_checkpoint(path)
            self.assertEqual(manifest['kind'], 'M')
            np.testing.assert_array_equal(arrays['a'], self.store['a'].values)
            with self.assertRaises(CheckpointError):
                load_checkpoint(Path(directory) / 'missing.spck')
