import unittest

import numpy as np

from compnet.core.assumptions import check_assumptions
from compnet.core.errors import AssumptionViolation, DimensionError
from compnet.core.loss import total_loss
from compnet.core.output_vector import OutputVector
from compnet.stacking.stacker import build_gram_system, loss_gradient, solve_optimal_theta, stack


def random_instance(rng, n, k):
    outputs = [OutputVector.ones(n)] + [OutputVector(rng.normal(size=n)) for _ in range(k)]
    return outputs, rng.normal(size=n)


class TestStacker(unittest.TestCase):

    def test_gram_of_constant_component_is_n(self):
        system = build_gram_system([OutputVector.ones(4)], [1.0, 2.0, 3.0, 4.0])
        self.assertEqual(4.0, system.gram[0][0])
        self.assertEqual(0, system.k)

    def test_gram_of_orthonormal_outputs_is_identity(self):
        outputs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        np.testing.assert_array_equal(np.eye(3), build_gram_system(outputs, [1.0, 1.0, 1.0]).gram)

    def test_gram_matches_double_loop(self):
        rng = np.random.default_rng(11)
        outputs, targets = random_instance(rng, 8, 3)
        system = build_gram_system(outputs, targets)
        for s in range(4):
            self.assertAlmostEqual(sum(a * b for a, b in zip(outputs[s].values, targets)), system.rhs[s], places=12)
            for t in range(4):
                expected = sum(a * b for a, b in zip(outputs[s].values, outputs[t].values))
                self.assertAlmostEqual(expected, system.gram[s][t], places=12)
        np.testing.assert_array_equal(system.gram, system.gram.T)

    def test_perfect_single_component(self):
        solution = stack([OutputVector.ones(3), [1.0, 2.0, 3.0]], [1.0, 2.0, 3.0])
        np.testing.assert_allclose([0.0, 1.0], solution.theta, atol=1e-12)
        self.assertAlmostEqual(0.0, solution.loss, places=20)
        self.assertTrue(solution.is_unit_vector)

    def test_two_equations_two_unknowns(self):
        solution = stack([[1.0, 1.0], [1.0, 0.0]], [1.0, 2.0])
        np.testing.assert_allclose([2.0, -1.0], solution.theta, atol=1e-12)
        self.assertAlmostEqual(0.0, solution.loss, places=20)
        self.assertFalse(solution.is_unit_vector)

    def test_matches_pseudo_inverse_on_random_instances(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n = int(rng.integers(8, 65))
            k = int(rng.integers(1, 6))
            outputs, targets = random_instance(rng, n, k)
            matrix = np.column_stack([output.values for output in outputs])
            expected = np.linalg.pinv(matrix) @ targets
            solution = stack(outputs, targets)
            np.testing.assert_allclose(expected, solution.theta, atol=1e-8)
            self.assertAlmostEqual(total_loss(matrix @ expected, targets), solution.loss, delta=1e-8)
            self.assertLessEqual(solution.loss, min(solution.unit_losses) + 1e-10)

    def test_common_scale_scales_the_loss_quadratically(self):
        rng = np.random.default_rng(21)
        outputs, targets = random_instance(rng, 30, 3)
        base = stack(outputs, targets)
        for c in (0.5, 3.0, 1e3):
            scaled = [outputs[0]] + [OutputVector(c * output.values) for output in outputs[1:]]
            solution = stack(scaled, c * targets)
            self.assertAlmostEqual(c * c * base.loss, solution.loss, delta=1e-9 * c * c * base.loss)
            np.testing.assert_allclose(c * base.theta[0], solution.theta[0], rtol=1e-9, atol=1e-12)
            np.testing.assert_allclose(base.theta[1:], solution.theta[1:], rtol=1e-9, atol=1e-12)

    def test_scaling_one_output_divides_its_weight(self):
        rng = np.random.default_rng(22)
        outputs, targets = random_instance(rng, 30, 3)
        base = stack(outputs, targets)
        for c in (0.25, 4.0, -2.0):
            scaled = list(outputs)
            scaled[2] = OutputVector(c * outputs[2].values)
            solution = stack(scaled, targets)
            self.assertAlmostEqual(base.theta[2] / c, solution.theta[2], delta=1e-9 * abs(base.theta[2] / c))
            self.assertAlmostEqual(base.loss, solution.loss, delta=1e-9 * base.loss)

    def test_solve_succeeds_exactly_when_outputs_are_independent(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            n = int(rng.integers(3, 20))
            k = int(rng.integers(1, 6))
            outputs, targets = random_instance(rng, n, k)
            if rng.random() < 0.5:
                replaced = int(rng.integers(1, k + 1))
                others = [output.values for index, output in enumerate(outputs) if index != replaced]
                outputs[replaced] = OutputVector(np.column_stack(others) @ rng.normal(size=len(others)))
            independent = check_assumptions(outputs, targets, n).a1_linear_independence
            try:
                stack(outputs, targets)
                solved = True
            except AssumptionViolation:
                solved = False
            self.assertEqual(independent, solved)

    def test_best_unit_prefers_lowest_index_on_ties(self):
        outputs = [[1.0, 1.0, 1.0], [1.0, 1.0, 1.0 + 1e-3], [0.0, 0.0, 0.0]]
        solution = stack(outputs[:2] + [[0.5, -0.5, 0.0]], [0.0, 0.0, 0.0])
        self.assertEqual(2, solution.best_unit_index)
        solution = stack([[1.0, 0.0], [0.0, 1.0]], [0.5, 0.5])
        self.assertEqual(0, solution.best_unit_index)

    def test_dependent_outputs_name_the_component(self):
        f1 = np.array([0.5, 1.5, -2.0, 3.0])
        with self.assertRaises(AssumptionViolation) as context:
            stack([OutputVector.ones(4), f1, f1.copy()], [1.0, 0.0, 1.0, 0.0])
        self.assertEqual(2, context.exception.component_index)

    def test_gradient_vanishes_at_optimum(self):
        rng = np.random.default_rng(7)
        outputs, targets = random_instance(rng, 20, 3)
        solution = stack(outputs, targets)
        np.testing.assert_allclose(np.zeros(4), loss_gradient(solution.theta, outputs, targets), atol=1e-9)

    def test_gradient_vanishes_at_perfect_unit(self):
        y = [1.0, 2.0, 4.0]
        gradient = loss_gradient([0.0, 1.0], [OutputVector.ones(3), y], y)
        np.testing.assert_allclose([0.0, 0.0], gradient, atol=1e-12)

    def test_gradient_matches_finite_difference(self):
        rng = np.random.default_rng(8)
        outputs, targets = random_instance(rng, 12, 2)
        matrix = np.column_stack([output.values for output in outputs])
        theta = rng.normal(size=3)
        gradient = loss_gradient(theta, outputs, targets)
        h = 1e-5
        for s in range(3):
            step = np.zeros(3)
            step[s] = h
            numeric = (total_loss(matrix @ (theta + step), targets) - total_loss(matrix @ (theta - step), targets)) \
                / (2 * h)
            self.assertLess(abs(numeric - gradient[s]), 1e-6 * max(1.0, abs(gradient[s])))

    def test_gradient_at_best_unit_is_reported(self):
        rng = np.random.default_rng(9)
        outputs, targets = random_instance(rng, 15, 2)
        solution = stack(outputs, targets)
        unit = np.zeros(3)
        unit[solution.best_unit_index] = 1.0
        np.testing.assert_allclose(loss_gradient(unit, outputs, targets), solution.gradient_at_best_unit,
                                   atol=1e-10)

    def test_unit_solution_has_zero_gradient(self):
        y = np.array([1.0, -1.0, 2.0, 0.0])
        # f1 - y is perpendicular to f0 and to f1, so e_1 is optimal
        solution = stack([OutputVector.ones(4), y], y)
        self.assertTrue(solution.is_unit_vector)
        self.assertTrue(np.all(np.abs(loss_gradient(solution.theta, [OutputVector.ones(4), y], y)) < 1e-9))

    def test_solve_rejects_outputs_of_other_system(self):
        rng = np.random.default_rng(10)
        outputs, targets = random_instance(rng, 10, 2)
        system = build_gram_system(outputs[:2], targets)
        with self.assertRaises(DimensionError):
            solve_optimal_theta(system, outputs, targets)

    def test_solution_dict_reports_rmse(self):
        rng = np.random.default_rng(12)
        outputs, targets = random_instance(rng, 16, 1)
        document = stack(outputs, targets).to_dict()
        self.assertAlmostEqual(np.sqrt(document["sse"] / 16), document["rmse"], places=12)


if __name__ == '__main__':
    unittest.main()
