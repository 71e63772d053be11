import copy
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import numpy as np

from compnet.activation import IDENTITY
from compnet.components import TABLE
from compnet.components.affine import Affine
from compnet.components.component import Component
from compnet.components.component_io import component_from_dict
from compnet.components.table import TableComponent
from compnet.core.dataset import Dataset
from compnet.core.errors import AssumptionViolation, CompnetError, ConfigError, DivergenceError
from compnet.core.loss import total_loss
from compnet.experiment import FROZEN, LINEAR_GLUING, NO_GLUING, TRAINABLE
from compnet.experiment.experiment_config import ExperimentConfig, RosterEntry
from compnet.experiment.report import ExperimentReport, ReportRow
from compnet.experiment.synthetic import generate_synthetic
from compnet.growth import STRICT_TOLERANCE
from compnet.growth.composite_graph import CompositeGraph, single_component_graph
from compnet.growth.growth_service import extend, stack_layer
from compnet.training.initializer import reinitialized
from compnet.training.sgd_trainer import sgd_train
from compnet.training.train_config import TrainConfig

logger = logging.getLogger(__name__)


class Model:
    """A row of the report together with the graph behind it."""

    def __init__(self, row: ReportRow, graph: CompositeGraph):
        self.row = row
        self.graph = graph


class ExperimentRunner:
    """
    Runs the composition grid. Part 1 holds every component on its own, frozen (x) as given or pre-trained, and
    trainable (o) with fresh weights trained alone. Part 2 glues every pair of components in every mode with every
    gluing activation. Every later part glues the frozen best model of the part before with every component.

    A composite starts from the closed-form stack (or its scaled version) over its parents and is fine-tuned with
    SGD; the fine-tuned weights are kept only when they lower the training loss, so no composite is worse on the
    training data than its parents.
    """

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.train, self.test = self._load_data()
        # Tables hold outputs per record, the test versions replace the train versions when testing
        self.test_tables: Dict[str, TableComponent] = {}
        self.components: Dict[str, Component] = {}
        self.part_one: Dict[str, Model] = {}

    def _load_data(self) -> (Dataset, Dataset):
        if self.cfg.synthetic is not None:
            return generate_synthetic(self.cfg.synthetic)
        return Dataset.from_csv(self.cfg.csv_path).split(self.cfg.train_fraction)

    def _seed(self, *path: int) -> int:
        return int(np.random.SeedSequence([self.cfg.seed, *path]).generate_state(1)[0])

    def _train_config(self, seed: int) -> TrainConfig:
        base = self.cfg.train
        return TrainConfig(learning_rate=base.learning_rate, epochs=base.epochs,
                           batch_size=min(base.batch_size, self.train.n), seed=seed, shuffle=base.shuffle,
                           check_snapshots=base.check_snapshots, init_best_child=base.init_best_child)

    def _train_safely(self, graph: CompositeGraph, seed: int) -> (CompositeGraph, str):
        """Trains a copy of the graph and keeps it only when the training loss went below that of the graph."""
        if graph.trainable_parameter_count() == 0:
            return graph, ""
        start_sse = total_loss(graph.output(self.train), self.train.targets)
        candidate = graph.copy()
        try:
            trace = sgd_train(candidate, self.train, self._train_config(seed))
        except DivergenceError as e:
            logger.warning(f"Training diverged at epoch {e.epoch}, keeping the start")
            return graph, f"diverged at epoch {e.epoch}"
        if not trace.frozen_unchanged():
            raise CompnetError("Frozen parameters changed during training")
        if trace.final_sse() < start_sse - STRICT_TOLERANCE:
            return candidate, "trained"
        return graph, "training did not improve"

    def _test_graph(self, graph: CompositeGraph) -> CompositeGraph:
        if not self.test_tables:
            return graph
        components = [self.test_tables.get(node_id, component) for node_id, component in graph.components.items()]
        return CompositeGraph(components, list(graph.glue_nodes.values()), graph.root)

    def _row(self, part: int, model: str, gluing: str, flags: str, graph: CompositeGraph, parents: List[str],
             notes: str) -> Model:
        train_sse = total_loss(graph.output(self.train), self.train.targets)
        test_sse = total_loss(self._test_graph(graph).output(self.test), self.test.targets)
        row = ReportRow(part, model, gluing, flags, train_sse, test_sse, self.train.n, self.test.n,
                        graph.trainable_parameter_count(), parents, notes)
        return Model(row, graph)

    def _build_component(self, entry: RosterEntry, mode: str, index: int) -> Component:
        name = f"{mode}{entry.id}"
        document = {**entry.document, "id": name}
        component = component_from_dict(document)
        if entry.document.get("kind") == TABLE:
            return self._split_table(component)

        if mode == TRAINABLE:
            return reinitialized(component, np.random.default_rng(self._seed(1, index)))
        if entry.pretrain and component.parameter_count() > 0:
            component = self._pretrain(component, index)
        return component.freeze()

    def _split_table(self, table: TableComponent) -> TableComponent:
        values = table.values()
        if len(values) != self.train.n + self.test.n:
            raise ConfigError(f"Table {table.id} holds {len(values)} values, the dataset has "
                              f"{self.train.n + self.test.n} records")
        self.test_tables[table.id] = TableComponent(table.id, values[self.train.n:])
        return TableComponent(table.id, values[:self.train.n], source=table.source)

    def _pretrain(self, component: Component, index: int) -> Component:
        """Fits a component to the training data before it is frozen: least squares for affine models, SGD else."""
        if isinstance(component, Affine):
            inputs = component.inputs_from(self.train)
            design = np.column_stack([inputs, np.ones(self.train.n)])
            solution, *_ = np.linalg.lstsq(design, self.train.targets, rcond=None)
            return Affine(component.id, solution[:-1], solution[-1], slot=component.slot)
        start = reinitialized(component, np.random.default_rng(self._seed(0, index)))
        graph, _ = self._train_safely(single_component_graph(start), self._seed(0, index, 1))
        return graph.components[component.id]

    def _part_one(self, report: ExperimentReport):
        for index, entry in enumerate(self.cfg.roster):
            for mode in entry.modes:
                component = self._build_component(entry, mode, index)
                graph = single_component_graph(component)
                notes = "pre-trained" if mode == FROZEN else "re-initialised"
                if mode == TRAINABLE:
                    graph, outcome = self._train_safely(graph, self._seed(1, index, 1))
                    notes = f"{notes}, {outcome}" if outcome else notes
                self.components[component.id] = graph.components[component.id]
                model = self._row(1, component.id, NO_GLUING, mode, graph, [], notes)
                self.part_one[component.id] = model
                report.add(model.row)

    def _better_parent(self, parents: List[Model]) -> Model:
        return min(parents, key=lambda parent: parent.row.train_sse)

    def _glued(self, part: int, index: int, name: str, flags: str, gluing: str, parents: List[Model],
               build) -> Model:
        label = LINEAR_GLUING if gluing == IDENTITY else gluing
        keys = [parent.row.key for parent in parents]
        try:
            extension = build()
        except AssumptionViolation as e:
            logger.warning(f"Model {name} ({label}) violates linear independence, keeping its best parent")
            return self._row(part, name, label, flags, self._better_parent(parents).graph, keys,
                             f"linear independence violated: {e}")

        notes = ["fallback" if extension.fallback else ("scaled" if extension.wrapped else "stacked")]
        graph = extension.graph
        if self.cfg.fine_tune:
            graph, outcome = self._train_safely(graph, self._seed(part, index))
            if outcome:
                notes.append(outcome)
        return self._row(part, name, label, flags, graph, keys, ", ".join(notes))

    def _run_tasks(self, tasks) -> List[Model]:
        if self.cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=self.cfg.workers) as executor:
                return list(executor.map(lambda task: task(), tasks))
        return [task() for task in tasks]

    def _part_two(self, report: ExperimentReport) -> List[Model]:
        tasks = []
        roster = self.cfg.roster
        for i in range(len(roster)):
            for j in range(i + 1, len(roster)):
                for mode_i in roster[i].modes:
                    for mode_j in roster[j].modes:
                        for gluing in self.cfg.gluings:
                            tasks.append(self._pair_task(len(tasks), f"{mode_i}{roster[i].id}",
                                                         f"{mode_j}{roster[j].id}", gluing))
        models = self._run_tasks(tasks)
        for model in models:
            report.add(model.row)
        return models

    def _pair_task(self, index: int, first: str, second: str, gluing: str):
        parents = [self.part_one[first], self.part_one[second]]
        components = [self.components[first], self.components[second]]
        return lambda: self._glued(2, index, f"{first}+{second}", first[0] + second[0], gluing, parents,
                                   lambda: stack_layer(components, self.train, gluing))

    def _later_part(self, part: int, previous: Model, report: ExperimentReport) -> List[Model]:
        frozen = previous.graph.frozen()
        best = Model(previous.row, frozen)
        tasks = []
        for name in self.part_one:
            for gluing in self.cfg.gluings:
                tasks.append(self._chain_task(part, len(tasks), best, name, gluing))
        models = self._run_tasks(tasks)
        for model in models:
            report.add(model.row)
        return models

    def _chain_task(self, part: int, index: int, best: Model, name: str, gluing: str):
        parents = [best, self.part_one[name]]
        component = self.components[name]
        if best.graph.has_node(name):
            # The frozen copy inside the best model may differ from the component after fine-tuning
            component = copy.deepcopy(component)
            component.id = f"{name}.{part}"
            if name in self.test_tables:
                self.test_tables[component.id] = TableComponent(component.id, self.test_tables[name].values())
        return lambda: self._glued(part, index, f"({best.row.model})+{name}", FROZEN + name[0], gluing, parents,
                                   lambda: extend(best.graph, component, self.train, gluing, nest=True))

    @staticmethod
    def _best(models: List[Model]) -> Optional[Model]:
        if not models:
            return None
        return min(enumerate(models), key=lambda item: (item[1].row.test_rmse, item[0]))[1]

    def run(self) -> ExperimentReport:
        report = ExperimentReport()
        self._part_one(report)
        logger.info(f"Part 1: {len(report)} rows")

        models = list(self.part_one.values())
        if self.cfg.parts >= 2 and len(self.cfg.roster) >= 2:
            models = self._part_two(report)
            logger.info(f"Part 2: {len(models)} rows")
            for part in range(3, self.cfg.parts + 1):
                models = self._later_part(part, self._best(models), report)
                logger.info(f"Part {part}: {len(models)} rows")

        report.mark_best()
        return report


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return ExperimentRunner(cfg).run()
