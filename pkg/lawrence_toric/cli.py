"""
Command line front end.

Reports go to stdout as JSON or aligned text; logs go to stderr. The exit
status is 0 on success, 1 for bad input, 2 when a hypothesis of the theory
fails and 3 when a resource cap is hit.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from .base import ExitCode, LawrenceError, TermOrder, TutteMethod
from .engine import AnalysisEngine
from .exactlin import RatMatrix
from .graphs import AnyGraph, Graph, edge_order, graph_matrix
from .tables import TableEngine
from .utility import (
    is_graph_text,
    parse_fractions,
    parse_graph_text,
    parse_matrix_text,
    read_text,
)


# Command line order names to edge orders of graphs
EDGE_ORDERS: Dict[str, str] = {"natural": "lex", "file": "natural", "example45": "example45"}

INPUT_KINDS: Tuple[str, ...] = ("auto", "matrix", "graph")


def build_parser() -> argparse.ArgumentParser:
    """"""
    common: argparse.ArgumentParser = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--term-order", choices=[o.value for o in TermOrder], default=TermOrder.DEGREVLEX.value)
    common.add_argument("--cap-minors", type=int, default=None)
    common.add_argument("--cap-ground", type=int, default=None)
    common.add_argument("--cap-cycles", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--verbose", action="store_true", help="log progress to stderr")

    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="lawrence-toric",
        description="Degrees and ML degrees of Lawrence toric varieties",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="analyze an integer matrix")
    analyze.add_argument("file")
    analyze.add_argument("--oracle", action="store_true", help="cross-check the degree combinatorially")

    graph = commands.add_parser("graph", parents=[common], help="analyze a graph edge list")
    graph.add_argument("file")
    graph.add_argument("--order", choices=list(EDGE_ORDERS), default=None, help="edge order for zero-activity forests")

    model = commands.add_parser("model", parents=[common], help="run a statistical model")
    model.add_argument("name")
    model.add_argument("args", nargs="*")

    tutte = commands.add_parser("tutte", parents=[common], help="Tutte polynomial of a matrix or graph")
    tutte.add_argument("file")
    tutte.add_argument("--input", choices=INPUT_KINDS, default="auto", help="file kind, guessed from the header by default")
    tutte.add_argument("--method", choices=[m.value for m in TutteMethod], default=TutteMethod.DC.value)
    tutte.add_argument("--order", choices=list(EDGE_ORDERS), default=None, help="ground set order for activities")

    circuits = commands.add_parser("circuits", parents=[common], help="list circuits")
    circuits.add_argument("file")
    circuits.add_argument("--input", choices=INPUT_KINDS, default="auto")

    emit = commands.add_parser("emit", parents=[common], help="write the likelihood equations")
    emit.add_argument("file")
    emit.add_argument("--input", choices=INPUT_KINDS, default="auto")
    emit.add_argument("--u", nargs="+", default=None)
    emit.add_argument("--w", nargs="+", default=None)
    emit.add_argument("--eliminated", action="store_true")

    tables = commands.add_parser("tables", parents=[common], help="degree tables of K(m1,m2)")
    tables.add_argument("--max", type=int, default=6)
    tables.add_argument("--check", type=int, default=0, help="pipeline cross-check up to this size")

    commands.add_parser("models", parents=[common], help="list model plugins")

    return parser


def read_input(path: str, kind: str = "auto") -> Tuple[RatMatrix, Optional[AnyGraph]]:
    """(matrix, graph or None) from a matrix or graph file"""
    text: str = read_text(path)
    if kind == "graph" or (kind == "auto" and is_graph_text(text)):
        graph: AnyGraph = parse_graph_text(text)
        return graph_matrix(graph), graph
    return parse_matrix_text(text), None


def ground_order(graph: Optional[AnyGraph], matrix: RatMatrix, name: Optional[str]) -> Optional[List[int]]:
    """"""
    if name is None:
        return None
    if graph is not None:
        return edge_order(graph.underlying() if not isinstance(graph, Graph) else graph, EDGE_ORDERS[name])
    if name == "example45":
        return list(reversed(range(matrix.cols)))
    return None


def format_text(report: dict) -> str:
    """`key: value` lines in report order"""
    lines: List[str] = []
    for key, value in report.items():
        if key == "schema":
            continue
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  " + " ".join(f"{k}={_text_value(v)}" for k, v in item.items()))
        elif isinstance(value, dict):
            lines.append(f"{key}: " + " ".join(f"{k}={_text_value(v)}" for k, v in value.items()))
        else:
            lines.append(f"{key}: {_text_value(value)}")
    return "\n".join(lines) + "\n"


def _text_value(value) -> str:
    """"""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(_text_value(v) for v in value)
    return str(value)


def run(args: argparse.Namespace, engine: AnalysisEngine) -> dict:
    """Dispatch one subcommand to the engine"""
    if args.command == "analyze":
        return engine.analyze(
            parse_matrix_text(read_text(args.file)),
            oracle=args.oracle,
            order=TermOrder(args.term_order),
        )

    if args.command == "graph":
        order_name: Optional[str] = EDGE_ORDERS[args.order] if args.order else None
        return engine.analyze_graph(parse_graph_text(read_text(args.file)), order_name)

    if args.command == "model":
        return engine.run_model(args.name, args.args)

    if args.command == "tutte":
        matrix, graph = read_input(args.file, args.input)
        return engine.tutte(matrix, TutteMethod(args.method), ground_order(graph, matrix, args.order))

    if args.command == "circuits":
        matrix, graph = read_input(args.file, args.input)
        labels: Optional[Sequence[str]] = None
        if graph is not None:
            labels = (graph if isinstance(graph, Graph) else graph.underlying()).labels
        return engine.list_circuits(matrix, labels)

    if args.command == "tables":
        table_engine: TableEngine = TableEngine()
        table_engine.set_parameters(args.max, args.check, engine.setting["cap_ground"])
        table_engine.run_tables()
        table_engine.calculate_result()

        report: dict = engine.new_report("tables")
        report.update(table_engine.to_report())
        report["text"] = table_engine.format_tables()
        return report

    report = engine.new_report("models")
    report["models"] = [
        {"name": name, "parameters": engine.get_model_class_parameters(name)}
        for name in engine.get_all_model_names()
    ]
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point"""
    parser: argparse.ArgumentParser = build_parser()
    try:
        args: argparse.Namespace = parser.parse_args(argv)
    except SystemExit as e:
        # argparse reports usage errors with status 2
        return ExitCode.OK.value if not e.code else ExitCode.INPUT_ERROR.value

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s\t%(levelname)s\t%(message)s",
        stream=sys.stderr,
    )

    engine: AnalysisEngine = AnalysisEngine()
    engine.init_engine()
    engine.update_setting({
        "cap_minors": args.cap_minors,
        "cap_ground": args.cap_ground,
        "cap_cycles": args.cap_cycles,
        "seed": args.seed,
    })

    if args.command == "emit":
        try:
            matrix, _ = read_input(args.file, args.input)
            text: str = engine.emit(
                matrix,
                parse_fractions(args.u),
                parse_fractions(args.w),
                args.eliminated,
                args.seed,
            )
        except LawrenceError as e:
            print(f"error: {e.reason}: {e}", file=sys.stderr)
            return e.exit_code.value
        sys.stdout.write(text)
        return ExitCode.OK.value

    report: dict = engine.call_command(args.command, run, args, engine)

    if args.format == "json":
        report.pop("text", None)
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
    elif args.command == "tables" and "text" in report:
        sys.stdout.write(report["text"])
    else:
        sys.stdout.write(format_text(report))

    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
