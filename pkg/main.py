"""
Main entry point - command dispatch for detection, evaluation, signatures and reconstruction
"""

import argparse
import logging
import sys
from collections import Counter

from src.data import (
    read_events_csv,
    read_grid_file,
    read_power_csv,
    read_scenario_file,
    read_truth_csv,
    write_events_csv,
    write_power_csv,
    write_truth_csv,
)
from src.detection import DETECTORS, FALLING, MACRO, MAIN, MICRO, RISING, run_detector
from src.evaluation import SweepRunner, match_events
from src.reconstruction import reconstruct_from_tree, synthesize_scenario
from src.signatures import build_tree, learn_signatures, load_tree, query_tree, save_tree, verify_steady_state
from src.utils.config import Config
from src.utils.constants import METRIC_COLUMNS
from src.utils.errors import ArgumentError, ToolkitError
from src.utils.logging import ToolkitLogger, get_logger

logger = get_logger("main")

EXIT_OK = 0
EXIT_DATA_ERROR = 1


def detector_params(detector, rm, rw, threshold, rf=None):
    """Map the shared --rm/--rw/--threshold flags onto a detector's parameters"""
    if detector.startswith("wamma"):
        return {"r_m": rm, "r_w": rw, "p_thre": threshold}
    if detector == "wm":
        return {"r_d": rw, "r_m": rm, "r_f": rf if rf is not None else rm, "p_thre": threshold}
    return {"r": rw, "p_thre": threshold}


def summarize_events(events):
    """Event counts by direction and provenance"""
    directions = Counter(e.direction for e in events)
    provenance = Counter(e.provenance for e in events)
    summary = {"total": len(events)}
    summary.update({name: directions.get(name, 0) for name in (RISING, FALLING)})
    summary.update({name: provenance.get(name, 0) for name in (MAIN, MACRO, MICRO)})
    return summary


def format_metrics(report):
    header = "  ".join(f"{name:>6}" for name in METRIC_COLUMNS)
    return f"{header}\n{report.as_row()}\n"


class LoadEventToolkit:
    """Orchestrates file I/O around the detectors, sweeps, signature tree and generator"""

    def __init__(self):
        self.logger = logger

    def detect(self, input_path, rate, detector, params, out_path, column="power"):
        """
        Detect events in a power CSV and write them as an events CSV

        Args:
            input_path: str, power CSV
            rate: float, Hz
            detector: str, registered detector name
            params: dict of detector parameters
            out_path: str, events CSV
            column: str, power column name

        Returns:
            list of DetectedEvent
        """
        self.logger.info("Step 1/3: Loading power series")
        series = read_power_csv(input_path, rate, column=column)

        self.logger.info(f"Step 2/3: Running {detector}")
        events = run_detector(detector, series, params)
        summary = summarize_events(events)
        self.logger.info(
            f"{summary['total']} event(s): {summary[RISING]} rising, {summary[FALLING]} falling; "
            f"{summary[MAIN]} main, {summary[MACRO]} macro, {summary[MICRO]} micro"
        )

        self.logger.info("Step 3/3: Writing events")
        write_events_csv(events, out_path, series.rate, series.origin_time)
        return events

    def evaluate(self, events_path, truth_path, tolerance=None):
        tolerance = Config.MATCH_TOLERANCE_S if tolerance is None else tolerance
        records = read_events_csv(events_path)
        truth = read_truth_csv(truth_path)
        report = match_events(records, truth, tolerance, rate=1.0)
        self.logger.info(f"TP={report.tp} FP={report.fp} FN={report.fn}")
        return report

    def sweep(self, input_path, rate, truth_path, detector, grid_path, out_path, tolerance=None, column="power"):
        self.logger.info("Step 1/3: Loading series, truth and grid")
        series = read_power_csv(input_path, rate, column=column)
        truth = read_truth_csv(truth_path)
        grid = read_grid_file(grid_path)

        self.logger.info(f"Step 2/3: Sweeping {grid.size()} combination(s)")
        result = SweepRunner().run(series, truth, detector, grid, tolerance)

        self.logger.info("Step 3/3: Writing report")
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(result.format_report())
        return result

    def extract(self, input_path, rate, events_path, out_path, appliance, p_thre, column="power"):
        """Learn signature sets from detected events and save them as a tree"""
        self.logger.info("Step 1/3: Loading series and events")
        series = read_power_csv(input_path, rate, column=column)
        events = [r.to_event(series.rate, series.origin_time) for r in read_events_csv(events_path)]

        self.logger.info("Step 2/3: Extracting signatures")
        sets = learn_signatures(series, events, p_thre)
        if not sets:
            raise ArgumentError("no state transitions found to build a tree from")

        self.logger.info("Step 3/3: Writing signature tree")
        tree = build_tree(appliance, sets)
        save_tree(tree, out_path)
        return tree

    def query(self, tree_path, observed, ssp=None):
        tree = load_tree(tree_path)
        matches = query_tree(tree, observed)
        if ssp is not None:
            matches = verify_steady_state(matches, ssp)
        return matches

    def reconstruct(self, tree_path, rate, cycles, seed, out_path, truth_path=None):
        tree = load_tree(tree_path)
        series, truth = reconstruct_from_tree(tree, rate, cycles, seed=seed)
        write_power_csv(series, out_path)
        if truth_path:
            write_truth_csv(truth, truth_path)
        self.logger.info(f"Reconstructed {len(series)} samples with {len(truth)} transition(s)")
        return series, truth

    def generate(self, spec_path, out_path, truth_path):
        spec = read_scenario_file(spec_path)
        result = synthesize_scenario(spec)
        write_power_csv(result.series, out_path)
        write_truth_csv(result.truth, truth_path)
        return result


def _parse_observed(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise ArgumentError("--query needs 'form,dts,trs,dsp,tdt'")
    try:
        return (parts[0], *(float(p) for p in parts[1:]))
    except ValueError as exc:
        raise ArgumentError(f"--query values must be numeric: {exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(description="Load event detection and signature toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    detect = commands.add_parser("detect", help="Detect transition events in a power CSV")
    detect.add_argument("--input", required=True)
    detect.add_argument("--rate", type=float, required=True, help="Sample rate in Hz")
    detect.add_argument("--rm", type=float, required=True, help="Margin width in seconds")
    detect.add_argument("--rw", type=float, required=True, help="Window width in seconds")
    detect.add_argument("--rf", type=float, default=None, help="wm only: boundary block width (default --rm)")
    detect.add_argument("--threshold", type=float, required=True, help="Power threshold in watts")
    detect.add_argument("--detector", choices=sorted(DETECTORS), default="wamma")
    detect.add_argument("--column", default="power")
    detect.add_argument("--out", required=True)

    evaluate = commands.add_parser("evaluate", help="Score an events file against ground truth")
    evaluate.add_argument("--events", required=True)
    evaluate.add_argument("--truth", required=True)
    evaluate.add_argument("--tolerance", type=float, default=None, help="Seconds")

    sweep = commands.add_parser("sweep", help="Evaluate a detector over a parameter grid")
    sweep.add_argument("--input", required=True)
    sweep.add_argument("--rate", type=float, required=True)
    sweep.add_argument("--truth", required=True)
    sweep.add_argument("--detector", choices=sorted(DETECTORS), required=True)
    sweep.add_argument("--grid", required=True)
    sweep.add_argument("--tolerance", type=float, default=None)
    sweep.add_argument("--column", default="power")
    sweep.add_argument("--out", required=True)

    extract = commands.add_parser("extract", help="Learn a signature tree from detected events")
    extract.add_argument("--input", required=True)
    extract.add_argument("--rate", type=float, required=True)
    extract.add_argument("--events", required=True)
    extract.add_argument("--appliance", default="appliance")
    extract.add_argument("--threshold", type=float, default=15.0, help="Keypoint tolerance in watts")
    extract.add_argument("--column", default="power")
    extract.add_argument("--out", required=True)

    tree = commands.add_parser("tree", help="Rank tree paths for an observed transition")
    tree.add_argument("--query", required=True, help="form,dts,trs,dsp,tdt")
    tree.add_argument("--tree", required=True)
    tree.add_argument("--ssp", type=float, default=None, help="Observed steady power for verification")

    reconstruct = commands.add_parser("reconstruct", help="Generate cycles from a signature tree")
    reconstruct.add_argument("--tree", required=True)
    reconstruct.add_argument("--rate", type=float, required=True)
    reconstruct.add_argument("--cycles", type=int, required=True)
    reconstruct.add_argument("--seed", type=int, default=0)
    reconstruct.add_argument("--out", required=True)
    reconstruct.add_argument("--truth", default=None)

    generate = commands.add_parser("generate", help="Synthesize a labelled multi-appliance scenario")
    generate.add_argument("--spec", required=True)
    generate.add_argument("--out", required=True)
    generate.add_argument("--truth", required=True)
    return parser


def dispatch(args, toolkit=None):
    toolkit = toolkit or LoadEventToolkit()
    if args.command == "detect":
        params = detector_params(args.detector, args.rm, args.rw, args.threshold, args.rf)
        toolkit.detect(args.input, args.rate, args.detector, params, args.out, args.column)
    elif args.command == "evaluate":
        print(format_metrics(toolkit.evaluate(args.events, args.truth, args.tolerance)), end="")
    elif args.command == "sweep":
        toolkit.sweep(args.input, args.rate, args.truth, args.detector, args.grid, args.out, args.tolerance, args.column)
    elif args.command == "extract":
        toolkit.extract(args.input, args.rate, args.events, args.out, args.appliance, args.threshold, args.column)
    elif args.command == "tree":
        for rank, match in enumerate(toolkit.query(args.tree, _parse_observed(args.query), args.ssp), start=1):
            print(f"{rank}\t{match.label}\t{match.score:.6f}")
    elif args.command == "reconstruct":
        toolkit.reconstruct(args.tree, args.rate, args.cycles, args.seed, args.out, args.truth)
    elif args.command == "generate":
        toolkit.generate(args.spec, args.out, args.truth)
    return EXIT_OK


def main(argv=None):
    """Entry point; argparse exits with status 2 on usage errors"""
    args = build_parser().parse_args(argv)
    if args.verbose:
        ToolkitLogger().set_console_level(logging.DEBUG)
    try:
        return dispatch(args)
    except (ToolkitError, OSError) as exc:
        logger.error(str(exc))
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
