import os
import tempfile
import unittest

import numpy as np
from scipy.special import expit

from compnet.activation import LOGISTIC, TANH
from compnet.components.affine import Affine
from compnet.components.constant_one import ConstantOne
from compnet.components.table import TableComponent
from compnet.core.dataset import Dataset
from compnet.core.errors import DimensionError, GraphError
from compnet.growth.composite_graph import CompositeGraph, evaluate_graph, single_component_graph
from compnet.growth.glue_node import GlueNode
from compnet.growth.graph_io import load_graph, save_graph


class TestCompositeGraph(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(21)
        self.data = Dataset([rng.normal(size=(12, 2))], rng.normal(size=12))
        self.table_values = rng.normal(size=12)
        self.affine = Affine("a", rng.normal(size=2), bias=0.3, slot=0)
        self.table = TableComponent("b", self.table_values)
        self.inner = GlueNode("glue1", ["a", "b"], rng.normal(size=3), TANH)
        self.outer = GlueNode("glue2", ["glue1", "a"], rng.normal(size=3), LOGISTIC)
        self.graph = CompositeGraph([self.affine, self.table], [self.inner, self.outer], "glue2")

    def test_single_table_graph_returns_its_values(self):
        graph = single_component_graph(self.table)
        np.testing.assert_array_equal(self.table_values, evaluate_graph(graph, self.data).values)
        self.assertEqual(0, graph.depth())

    def test_bias_only_layer_is_constant(self):
        graph = CompositeGraph([ConstantOne("f0")], [GlueNode("g", ["f0"], [0.0, 2.5])], "g")
        np.testing.assert_array_equal(np.full(12, 2.5), evaluate_graph(graph, self.data).values)

    def test_depth_two_graph_matches_hand_expansion(self):
        a = self.data.inputs_for(0) @ self.affine.parameters()["weights"] + 0.3
        t1 = self.inner.theta
        t2 = self.outer.theta
        inner = np.tanh(t1[0] + t1[1] * a + t1[2] * self.table_values)
        expected = expit(t2[0] + t2[1] * inner + t2[2] * a)
        np.testing.assert_allclose(expected, evaluate_graph(self.graph, self.data).values, atol=1e-12)
        self.assertEqual(2, self.graph.depth())
        self.assertEqual(["a", "b", "glue1", "glue2"], self.graph.order())

    def test_evaluation_is_deterministic(self):
        self.assertEqual(evaluate_graph(self.graph, self.data), evaluate_graph(self.graph, self.data))

    def test_cycle_is_rejected(self):
        first = GlueNode("g1", ["g2"], [0.0, 1.0])
        second = GlueNode("g2", ["g1"], [0.0, 1.0])
        with self.assertRaises(GraphError):
            CompositeGraph([], [first, second], "g1")

    def test_unknown_references_are_rejected(self):
        with self.assertRaises(GraphError):
            CompositeGraph([self.table], [GlueNode("g", ["missing"], [0.0, 1.0])], "g")
        with self.assertRaises(GraphError):
            CompositeGraph([self.table], [], "nothing")

    def test_duplicate_ids_are_rejected(self):
        with self.assertRaises(GraphError):
            CompositeGraph([self.table, TableComponent("b", self.table_values)], [], "b")
        with self.assertRaises(GraphError):
            GlueNode("g", ["b", "b"], [0.0, 1.0, 1.0])

    def test_glue_weights_must_fit_children(self):
        with self.assertRaises(DimensionError):
            GlueNode("g", ["a", "b"], [0.0, 1.0])

    def test_trainable_parameters_skip_frozen_nodes(self):
        keys = set(self.graph.trainable_parameters())
        self.assertEqual({"component:a:weights", "component:a:bias", "glue:glue1:theta", "glue:glue2:theta"}, keys)
        self.assertEqual(9, self.graph.trainable_parameter_count())
        self.assertEqual({}, self.graph.frozen().trainable_parameters())

    def test_set_parameter_changes_output(self):
        before = self.graph.output(self.data)
        self.graph.set_parameter("glue:glue2:theta", [0.0, 0.0, 0.0])
        np.testing.assert_allclose(np.full(12, 0.5), self.graph.output(self.data))
        self.assertFalse(np.array_equal(before, self.graph.output(self.data)))
        with self.assertRaises(GraphError):
            self.graph.set_parameter("glue:glue9:theta", [0.0])

    def test_frozen_graph_refuses_changes(self):
        frozen = self.graph.frozen()
        with self.assertRaises(GraphError):
            frozen.set_parameter("glue:glue1:theta", [0.0, 0.0, 0.0])
        self.assertEqual(frozen.frozen_checksum(), frozen.copy().frozen_checksum())

    def test_relabel_keeps_values(self):
        renamed = self.graph.relabel({"a": "a.2", "glue2": "top"})
        self.assertEqual("top", renamed.root)
        self.assertTrue(renamed.has_node("a.2"))
        self.assertEqual("a", self.graph.components["a"].id)
        np.testing.assert_array_equal(self.graph.output(self.data), renamed.output(self.data))

    def test_next_glue_id_skips_used_ids(self):
        self.assertEqual("glue3", self.graph.next_glue_id())

    def test_saved_graph_loads_with_same_output(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "graph.json")
            save_graph(self.graph, path)
            loaded = load_graph(path)
        np.testing.assert_array_equal(self.graph.output(self.data), loaded.output(self.data))
        self.assertEqual(self.graph.depth(), loaded.depth())


if __name__ == '__main__':
    unittest.main()
