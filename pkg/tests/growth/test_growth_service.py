import unittest

import numpy as np

from compnet.activation import IDENTITY, LOGISTIC, TANH
from compnet.components.table import TableComponent
from compnet.core.dataset import Dataset
from compnet.core.errors import AssumptionViolation, ConfigError, GraphError
from compnet.core.loss import total_loss
from compnet.core.output_vector import OutputVector
from compnet.growth.composite_graph import single_component_graph
from compnet.growth.growth_service import WidthExtension, add_depth, add_width, extend, grow_greedy, grow_width, \
    stack_layer
from compnet.scaled.scaled_service import plan_loss, scaled_stack
from compnet.stacking.stacker import stack
from compnet.tracker.run_tracker import global_data


def random_tables(rng, n, k):
    return [TableComponent(f"f{index + 1}", rng.normal(size=n)) for index in range(k)]


class TestGrowthService(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(31)
        self.data = Dataset([], self.rng.normal(size=40))

    def test_add_width_with_perfect_component(self):
        previous = single_component_graph(TableComponent("f1", self.rng.normal(size=40)))
        perfect = TableComponent("f2", self.data.targets)
        graph, solution = add_width(previous, perfect, self.data)
        extension = WidthExtension.from_solution(solution)
        self.assertAlmostEqual(0.0, extension.alpha0, places=10)
        self.assertAlmostEqual(1.0, extension.alpha1, places=10)
        self.assertAlmostEqual(0.0, total_loss(graph.output(self.data), self.data.targets), places=18)

    def test_add_width_with_collinear_component_raises(self):
        values = self.rng.normal(size=40)
        previous = single_component_graph(TableComponent("f1", values))
        with self.assertRaises(AssumptionViolation):
            add_width(previous, TableComponent("f2", 3.0 * values), self.data)

    def test_add_width_matches_pair_stack(self):
        first, second, third = random_tables(self.rng, 40, 3)
        graph, _ = add_width(single_component_graph(first), second, self.data)
        old_loss = total_loss(graph.output(self.data), self.data.targets)
        widened, solution = add_width(graph, third, self.data)
        new_loss = total_loss(widened.output(self.data), self.data.targets)

        oracle = stack([OutputVector.ones(40), graph.output(self.data), third.values()], self.data.targets)
        self.assertLessEqual(new_loss, old_loss + 1e-12)
        self.assertAlmostEqual(oracle.loss, new_loss, places=9)
        np.testing.assert_allclose(oracle.theta, solution.theta, atol=1e-10)
        np.testing.assert_allclose(WidthExtension.from_solution(solution).combine(graph.output(self.data),
                                                                                  third.values()),
                                   widened.output(self.data), atol=1e-10)
        # width growth keeps a single linear root
        self.assertEqual(1, widened.depth())
        self.assertEqual(["f1", "f2", "f3"], widened.root_node().children)

    def test_add_depth_with_identity_matches_add_width(self):
        first, second, third = random_tables(self.rng, 40, 3)
        graph, _ = add_width(single_component_graph(first), second, self.data)
        _, width_solution = add_width(graph, third, self.data)
        deeper, depth_solution = add_depth(graph, third, self.data)
        np.testing.assert_array_equal(width_solution.theta, depth_solution.theta)
        self.assertEqual(graph.depth() + 1, deeper.depth())

    def test_add_depth_with_logistic_improves(self):
        for _ in range(10):
            first, second = random_tables(self.rng, 40, 2)
            previous = single_component_graph(first)
            old_loss = total_loss(previous.output(self.data), self.data.targets)
            deeper, _ = add_depth(previous, second, self.data, LOGISTIC)
            self.assertLess(total_loss(deeper.output(self.data), self.data.targets), old_loss)
            self.assertEqual(1, deeper.depth())

    def test_extend_reports_scaled_plan(self):
        first, second = random_tables(self.rng, 40, 2)
        extension = extend(single_component_graph(first), second, self.data, TANH)
        self.assertTrue(extension.wrapped)
        self.assertLess(extension.loss, extension.solution.best_unit_loss)

    def test_single_layer_matches_stacker(self):
        components = random_tables(self.rng, 40, 3)
        outputs = [OutputVector.ones(40)] + [OutputVector(component.values()) for component in components]
        graph, trace = grow_greedy(components, 1, self.data)
        self.assertAlmostEqual(stack(outputs, self.data.targets).loss, trace.final_loss(), places=9)

        graph, trace = grow_greedy(components, 1, self.data, LOGISTIC)
        _, _, plan = scaled_stack(outputs, self.data.targets, LOGISTIC)
        self.assertAlmostEqual(plan_loss(plan, outputs, self.data.targets), trace.final_loss(), places=6)

    def test_single_component_layer_beats_component(self):
        component = random_tables(self.rng, 40, 1)[0]
        _, trace = grow_greedy([component], 1, self.data)
        self.assertLessEqual(trace.final_loss(), total_loss(component.values(), self.data.targets))

    def test_greedy_trace_is_non_increasing(self):
        for seed in range(20):
            rng = np.random.default_rng(seed)
            data = Dataset([], rng.normal(size=200))
            components = random_tables(rng, 200, 3)
            for activation in (IDENTITY, LOGISTIC):
                graph, trace = grow_greedy(components, 3, data, activation)
                self.assertTrue(trace.is_non_increasing())
                self.assertLess(trace.final_loss(), min(trace.component_losses.values()))
                self.assertEqual(3, len(trace.stages))

    def test_greedy_depth_is_the_number_of_layers(self):
        components = random_tables(self.rng, 40, 3)
        for activation in (IDENTITY, LOGISTIC):
            for h in range(1, 5):
                graph, trace = grow_greedy(components, h, self.data, activation)
                self.assertEqual(h, graph.depth())
                self.assertEqual(h, trace.stages[-1].depth)

    def test_extend_rejects_a_different_component_with_a_used_id(self):
        first, second = random_tables(self.rng, 40, 2)
        previous = single_component_graph(first)
        impostor = TableComponent("f1", second.values())
        with self.assertRaises(GraphError):
            extend(previous, impostor, self.data)
        with self.assertRaises(GraphError):
            add_width(previous, impostor, self.data)

    def test_extend_keeps_the_width_pair(self):
        first, second = random_tables(self.rng, 40, 2)
        previous = single_component_graph(first)
        extension = extend(previous, second, self.data, IDENTITY, nest=True)
        self.assertEqual(extension.solution.theta[1], extension.width.alpha0)
        self.assertEqual(extension.solution.theta[2], extension.width.alpha1)
        np.testing.assert_allclose(extension.width.combine(first.values(), second.values()),
                                   extension.graph.output(self.data), rtol=1e-12, atol=1e-12)

    def test_greedy_is_independent_of_workers(self):
        components = random_tables(self.rng, 40, 3)
        _, single = grow_greedy(components, 3, self.data, TANH, workers=1)
        _, parallel = grow_greedy(components, 3, self.data, TANH, workers=3)
        self.assertEqual(single.losses(), parallel.losses())

    def test_greedy_needs_a_layer(self):
        with self.assertRaises(ConfigError):
            grow_greedy(random_tables(self.rng, 40, 1), 0, self.data)
        with self.assertRaises(ConfigError):
            grow_greedy([], 1, self.data)

    def test_stack_layer_names_every_child(self):
        components = random_tables(self.rng, 40, 2)
        extension = stack_layer(components, self.data, node_id="top")
        self.assertEqual("top", extension.graph.root)
        self.assertEqual(["f1", "f2"], extension.graph.root_node().children)

    def test_grow_width_adds_components_in_order(self):
        components = random_tables(self.rng, 40, 4)
        graph, trace = grow_width(components, self.data)
        self.assertTrue(trace.is_non_increasing())
        self.assertEqual(["start", "width", "width", "width"], [stage.operation for stage in trace.stages])
        self.assertEqual(1, graph.depth())

    def test_observer_records_stages(self):
        observer = global_data["observer"]
        observer.reset()
        grow_greedy(random_tables(self.rng, 40, 2), 2, self.data, observe=True)
        self.assertEqual(2, len(observer.stage_losses))
        observer.reset()


if __name__ == '__main__':
    unittest.main()
