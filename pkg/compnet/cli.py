"""
Command line entry point: stack, grow, train, verify, experiment and gen-data. Exit code 0 means success (for verify:
the bound holds), 1 a configuration error, 2 a numerical failure or a bound that does not hold.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from compnet.activation import ACTIVATIONS, IDENTITY
from compnet.components.component_io import load_components
from compnet.core.dataset import Dataset
from compnet.core.errors import CompnetError, ConfigError
from compnet.core.output_vector import OutputVector
from compnet.experiment import RULES, AUTOREGRESSIVE_RULE
from compnet.experiment.experiment_config import ExperimentConfig, default_experiment_config
from compnet.experiment.experiment_runner import run_experiment
from compnet.experiment.report import CSV, JSON, emit_report
from compnet.experiment.synthetic import SyntheticSpec, generate_synthetic
from compnet.growth.graph_io import graph_to_dict, load_graph, save_graph
from compnet.growth.growth_service import grow_greedy, grow_width
from compnet.stacking.stacker import stack
from compnet.tracker.run_tracker import global_data
from compnet.training.sgd_trainer import sgd_train
from compnet.training.train_config import TrainConfig
from compnet.util.config_loader import ConfigLoader
from compnet.verification.bound_verifier import angle_concentration, multilayer_bound, no_worse_frequency, \
    two_model_frequency
from compnet.verification.samplers import GAUSSIAN, SAMPLERS
from compnet.verification.trial_config import TrialConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILURE = 2

VERIFIERS = {
    "angle": angle_concentration,
    "no-worse": no_worse_frequency,
    "two-model": two_model_frequency,
    "multilayer": multilayer_bound,
}


def _write(text: str, out: Optional[str]):
    if out is None:
        print(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as file:
            file.write(text + "\n")
    except IOError as e:
        raise IOError(f"Could not write {out}: {e}") from e


def _components_and_data(args: argparse.Namespace):
    data = Dataset.from_csv(args.data)
    components = load_components(args.components, base_path=os.path.dirname(os.path.abspath(args.components)))
    return components, data


def cmd_stack(args: argparse.Namespace) -> int:
    components, data = _components_and_data(args)
    outputs = [OutputVector.ones(data.n)] + [OutputVector(component.evaluate_rows(data)) for component in components]
    solution = stack(outputs, data.targets)
    logger.info(str(solution))
    _write(solution.to_json(), args.out)
    return EXIT_OK


def _start_observing(args: argparse.Namespace):
    if args.observe:
        global_data["observer"].reset()


def _observed() -> dict:
    observed = global_data["observer"].to_dict()
    logger.info(f"Observed {len(observed['stages'])} growth stages and {len(observed['epochs'])} epochs")
    return observed


def cmd_grow(args: argparse.Namespace) -> int:
    components, data = _components_and_data(args)
    _start_observing(args)
    if args.mode == "width":
        graph, trace = grow_width(components, data, activation=args.activation, observe=args.observe)
    else:
        graph, trace = grow_greedy(components, args.layers, data, activation=args.activation, workers=args.workers,
                                   observe=args.observe)
    if args.save_graph:
        save_graph(graph, args.save_graph)
    document = {"graph": graph_to_dict(graph), "trace": trace.to_dict()}
    if args.observe:
        document["observed"] = _observed()
    _write(json.dumps(document, indent=2), args.out)
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    data = Dataset.from_csv(args.data)
    graph = load_graph(args.graph, base_path=os.path.dirname(os.path.abspath(args.graph)))
    validation = Dataset.from_csv(args.validation) if args.validation else None
    cfg = TrainConfig(learning_rate=args.learning_rate, epochs=args.epochs, batch_size=args.batch_size,
                      seed=args.seed, shuffle=not args.no_shuffle, check_snapshots=args.check_snapshots,
                      init_best_child=args.init_best_child)
    _start_observing(args)
    trace = sgd_train(graph, data, cfg, validation=validation, observe=args.observe)
    if args.observe:
        _observed()
    if args.save_graph:
        save_graph(graph, args.save_graph)
    if args.format == CSV and args.out:
        trace.to_csv(args.out)
    elif args.format == CSV:
        _write(trace.to_csv().rstrip("\n"), None)
    else:
        _write(trace.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = TrialConfig(n=args.n, k=args.k, h=args.h, trials=args.trials, seed=args.seed,
                      distribution=args.distribution, c=args.c, activation=args.activation,
                      noise_scale=args.noise_scale, workers=args.workers)
    report = VERIFIERS[args.check](cfg)
    _write(report.to_json(), args.out)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig.from_json_file(args.config) if args.config else default_experiment_config(args.seed)
    if args.workers > 1:
        cfg.workers = args.workers
    report = run_experiment(cfg)
    if args.out:
        emit_report(report, args.out, args.format)
    elif cfg.report_path:
        emit_report(report, cfg.report_path, cfg.report_format)
    else:
        os.makedirs(args.out_dir, exist_ok=True)
        emit_report(report, os.path.join(args.out_dir, f"report.{args.format}"), args.format)
    for part in report.parts():
        best = report.best_of_part(part)
        logger.info(f"Best of part {part}: {best.model} ({best.gluing}), test RMSE {best.test_rmse:.4f}")
    return EXIT_OK


def cmd_gen_data(args: argparse.Namespace) -> int:
    spec = SyntheticSpec(n_train=args.n_train, n_test=args.n_test,
                         feature_counts=[int(count) for count in args.features.split(",")],
                         rule=args.rule, noise=args.noise, seed=args.seed)
    train, test = generate_synthetic(spec)
    out_dir = args.out or args.out_dir
    os.makedirs(out_dir, exist_ok=True)
    train.to_csv(os.path.join(out_dir, "train.csv"))
    test.to_csv(os.path.join(out_dir, "test.csv"))
    logger.info(f"Wrote {train.n} train and {test.n} test records to {out_dir}")
    return EXIT_OK


def build_parser(loader: ConfigLoader) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=loader.get_seed(), help="seed of every random choice")
    common.add_argument("--config", type=str, default=None, help="JSON config document")
    common.add_argument("--out", type=str, default=None, help="output file, stdout when omitted")
    common.add_argument("--format", choices=[CSV, JSON], default=CSV)
    common.add_argument("--workers", type=int, default=loader.get_workers())

    parser = argparse.ArgumentParser(prog="compnet", description="Composite networks from frozen and trainable "
                                                                 "components")
    parser.set_defaults(out_dir=loader.get_out_dir())
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("stack", parents=[common], help="Solve the optimal linear stack of components")
    ps.add_argument("--data", required=True, help="dataset CSV")
    ps.add_argument("--components", required=True, help="components JSON")
    ps.set_defaults(func=cmd_stack)

    pg = sub.add_parser("grow", parents=[common], help="Grow a composite network")
    pg.add_argument("--data", required=True)
    pg.add_argument("--components", required=True)
    pg.add_argument("--layers", type=int, default=1)
    pg.add_argument("--mode", choices=["greedy", "width"], default="greedy")
    pg.add_argument("--activation", choices=ACTIVATIONS, default=IDENTITY)
    pg.add_argument("--save-graph", type=str, default=None)
    pg.add_argument("--observe", action="store_true", help="record every stage in the run observer")
    pg.set_defaults(func=cmd_grow)

    pt = sub.add_parser("train", parents=[common], help="Train a composite network with SGD")
    pt.add_argument("--data", required=True)
    pt.add_argument("--graph", required=True, help="graph JSON")
    pt.add_argument("--validation", type=str, default=None)
    pt.add_argument("--learning-rate", type=float, default=0.01)
    pt.add_argument("--epochs", type=int, default=100)
    pt.add_argument("--batch-size", type=int, default=32)
    pt.add_argument("--no-shuffle", action="store_true")
    pt.add_argument("--check-snapshots", action="store_true")
    pt.add_argument("--init-best-child", action="store_true",
                    help="start every trainable gluing node at the unit vector of its best child")
    pt.add_argument("--observe", action="store_true", help="record every epoch in the run observer")
    pt.add_argument("--save-graph", type=str, default=None)
    pt.set_defaults(func=cmd_train)

    pv = sub.add_parser("verify", parents=[common], help="Monte Carlo check of an improvement bound")
    pv.add_argument("check", choices=sorted(VERIFIERS))
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--k", type=int, default=1)
    pv.add_argument("--h", type=int, default=1)
    pv.add_argument("--trials", type=int, default=1000)
    pv.add_argument("--c", type=float, default=1.0)
    pv.add_argument("--distribution", choices=SAMPLERS, default=GAUSSIAN)
    pv.add_argument("--activation", choices=ACTIVATIONS, default=IDENTITY)
    pv.add_argument("--noise-scale", type=float, default=1.0)
    pv.set_defaults(func=cmd_verify)

    pe = sub.add_parser("experiment", parents=[common], help="Run the frozen/trainable composition grid")
    pe.set_defaults(func=cmd_experiment)

    pd_ = sub.add_parser("gen-data", parents=[common], help="Generate a synthetic train and test dataset")
    pd_.add_argument("--rule", choices=RULES, default=AUTOREGRESSIVE_RULE)
    pd_.add_argument("--n-train", type=int, default=400)
    pd_.add_argument("--n-test", type=int, default=100)
    pd_.add_argument("--features", type=str, default="4,3,3", help="feature count per component slot")
    pd_.add_argument("--noise", type=float, default=1.0)
    pd_.set_defaults(func=cmd_gen_data)

    return parser


def main(argv: List[str] = None) -> int:
    load_dotenv()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=str, default=None)
    known, _ = pre.parse_known_args(argv)
    try:
        loader = ConfigLoader(known.config)
        logging.basicConfig(level=loader.get_log_level(),
                            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        args = build_parser(loader).parse_args(argv)
        return args.func(args)
    except (ConfigError, IOError) as e:
        logger.error(f"Configuration problem: {e}")
        return EXIT_CONFIG
    except CompnetError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
