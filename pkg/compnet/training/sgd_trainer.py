import logging

import numpy as np

from compnet.core.errors import DivergenceError
from compnet.core.loss import rmse, total_loss
from compnet.growth.composite_graph import CompositeGraph
from compnet.tracker.run_tracker import global_data
from compnet.training import LOG_EVERY
from compnet.training.backprop import backprop_gradients
from compnet.training.initializer import initialize_glue
from compnet.training.snapshot import check_snapshot_assumptions
from compnet.training.train_config import TrainConfig
from compnet.training.train_trace import EpochRecord, TrainTrace

logger = logging.getLogger(__name__)


def _copy_parameters(graph: CompositeGraph) -> dict:
    return {key: np.array(value) for key, value in graph.trainable_parameters().items()}


def sgd_train(graph: CompositeGraph, data, cfg: TrainConfig, validation=None, observe: bool = False) -> TrainTrace:
    """
    Trains the graph in place with minibatch SGD. The gradients of a batch are computed first, then every trainable
    parameter is updated at once. Frozen parameters are never touched. With init_best_child set, every trainable
    gluing node starts as the unit vector of its best child.

    :param graph: the composite network to train
    :param data: the training data
    :param cfg: training settings
    :param validation: optional dataset for the validation RMSE per epoch
    :param observe: record the epoch losses in the run observer
    :return: the trace of the run
    :raises DivergenceError: when the training loss is no longer finite
    """
    cfg.validate(data.n)
    rng = np.random.default_rng(cfg.seed)
    if cfg.init_best_child:
        initialize_glue(graph, rng, data, at_best_child=True)
    trace = TrainTrace(initial_sse=total_loss(graph.output(data), data.targets),
                       initial_parameters=_copy_parameters(graph),
                       frozen_checksum_before=graph.frozen_checksum())
    if not graph.trainable_parameters():
        logger.warning("Graph has no trainable parameters, the loss will not change")

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(data.n) if cfg.shuffle else np.arange(data.n)
        for start in range(0, data.n, cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            gradients = backprop_gradients(graph, data, batch)
            parameters = graph.trainable_parameters()
            updates = {key: parameters[key] - cfg.learning_rate * gradient for key, gradient in gradients.items()}
            for key, value in updates.items():
                graph.set_parameter(key, value)

        with np.errstate(over="ignore", invalid="ignore"):
            train_sse = total_loss(graph.output(data), data.targets)
        if not np.isfinite(train_sse):
            raise DivergenceError(f"Training loss is not finite after epoch {epoch}", epoch)

        val_rmse = None
        if validation is not None:
            val_rmse = rmse(total_loss(graph.output(validation), validation.targets), validation.n)
        trace.add(EpochRecord(epoch, train_sse, rmse(train_sse, data.n), val_rmse))

        if cfg.check_snapshots:
            report = check_snapshot_assumptions(graph, data)
            trace.snapshot_reports.append((epoch, report))
            if observe:
                global_data["observer"].add_snapshot_report(epoch, report)
        if observe:
            global_data["observer"].add_epoch(epoch, train_sse)
        if epoch % LOG_EVERY == 0 or epoch == cfg.epochs:
            logger.info(f"Epoch {epoch}: train SSE {train_sse:.6g}")

    trace.finish(_copy_parameters(graph), graph.frozen_checksum())
    return trace
