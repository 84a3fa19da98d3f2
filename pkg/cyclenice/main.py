"""
Command-line entry point for the cycle-nice toolkit.

Exit codes: 0 cycle-nice or success, 1 not cycle-nice, 2 out of scope or
precondition failed, 3 parse or I/O error, 4 resource cap exceeded.
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

from pydantic import BaseModel, ValidationError

from cyclenice.config import Settings
from cyclenice.construction.atlas import atlas, render_report
from cyclenice.construction.generator import generate_corpus
from cyclenice.construction.operations import dump_sequence
from cyclenice.construction.recognizer import recognize
from cyclenice.errors import CycleNiceError, GraphFormatError, InvariantViolation, LoopError
from cyclenice.graph.cycles import cycle_from_vertices, cycle_nice_oracle, ear_decomposition, validate_ear_decomposition
from cyclenice.graph.formats import FORMATS, read_graph, to_dot
from cyclenice.graph.matching import has_perfect_matching, is_matching_covered
from cyclenice.graph.multigraph import Multigraph, is_connected, is_k_connected, is_nonseparable
from cyclenice.graph.predicates import identify_base, is_claw_free, is_planar
from cyclenice.schemas import BaseKind, BaseTag, CycleSpec, GenConfig, GraphProperties, OracleVerdict, Verdict, VerdictReason

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_NICE = 1
EXIT_OUT_OF_SCOPE = 2
EXIT_FORMAT = 3

_EVEN_CYCLE_TAG = re.compile(r"^(?:EvenCycle\((\d+)\)|C(\d+))$")


def parse_base(text: str) -> Union[BaseTag, str]:
    """Parse ``Random``, ``Diamond``, ``K4``, ``C6bar``, ``EvenCycle(n)`` or ``Cn``."""
    if text == "Random":
        return text
    match = _EVEN_CYCLE_TAG.match(text)
    if match:
        return BaseTag.even_cycle(int(match.group(1) or match.group(2)))
    try:
        return BaseTag.of(BaseKind(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"unknown base {text!r}") from e


def _parse_weights(text: str) -> List[float]:
    try:
        weights = [float(x) for x in text.split(",")]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"weights must be numbers: {text!r}") from e
    if len(weights) != 3:
        raise argparse.ArgumentTypeError("exactly three weights are needed")
    return weights


def _parse_vertices(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"cycle must be comma-separated vertex indices: {text!r}") from e


def _emit(args: argparse.Namespace, model: BaseModel, text: str) -> None:
    print(model.model_dump_json(indent=2, exclude_none=True) if args.json else text)


def _format_cycle(c: CycleSpec) -> str:
    return " ".join(str(v) for v in c.vertices) + f" (edges {', '.join(str(i) for i in c.edge_ids)})"


def describe_verdict(verdict: Verdict) -> str:
    if verdict.kind == "Accept":
        steps = len(verdict.certificate.steps)
        return f"cycle-nice: certificate from {verdict.certificate.base.name} with {steps} step{'s' if steps != 1 else ''}"
    if verdict.kind == "AcceptOracle":
        return f"cycle-nice: {verdict.note}"
    if verdict.kind == "OutOfScope":
        return f"out of scope: {verdict.reason.value}"
    if verdict.reason == VerdictReason.NOT_MATCHABLE:
        return "not cycle-nice: the graph has no perfect matching, so cycle-niceness is undefined"
    return f"not cycle-nice: even cycle {_format_cycle(verdict.witness)} is not nice"


def describe_oracle(verdict: OracleVerdict) -> str:
    if verdict.kind == "CycleNice":
        return "cycle-nice: every even cycle is nice"
    if verdict.kind == "NotMatchable":
        return "not cycle-nice: the graph has no perfect matching, so cycle-niceness is undefined"
    return f"not cycle-nice: even cycle {_format_cycle(verdict.witness)} is not nice"


def verdict_exit_code(verdict: Verdict) -> int:
    if verdict.is_cycle_nice is None:
        return EXIT_OUT_OF_SCOPE
    return EXIT_OK if verdict.is_cycle_nice else EXIT_NOT_NICE


def _read(args: argparse.Namespace) -> Multigraph:
    return read_graph(args.file, args.format)


def cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    try:
        g = _read(args)
    except LoopError as e:
        logger.info(f"Input has a loop: {e.detail}")
        verdict = Verdict.out_of_scope(VerdictReason.HAS_LOOPS)
        _emit(args, verdict, describe_verdict(verdict))
        return EXIT_OUT_OF_SCOPE
    cap = args.cap if args.cap is not None else settings.cycle_cap

    if args.method == "oracle":
        oracle = cycle_nice_oracle(g, cap)
        _emit(args, oracle, describe_oracle(oracle))
        return EXIT_OK if oracle.kind == "CycleNice" else EXIT_NOT_NICE

    verdict = recognize(g, cycle_cap=cap, claim_path_cap=settings.claim_path_cap)
    logger.info(f"Structural verdict: {verdict.kind}")
    if args.method == "structural":
        _emit(args, verdict, describe_verdict(verdict))
        return verdict_exit_code(verdict)

    oracle = cycle_nice_oracle(g, cap)
    if args.json:
        print(json.dumps({
            "structural": verdict.model_dump(mode="json", exclude_none=True),
            "oracle": oracle.model_dump(mode="json", exclude_none=True),
        }, indent=2))
    else:
        print(f"structural: {describe_verdict(verdict)}")
        print(f"oracle: {describe_oracle(oracle)}")
    if verdict.is_cycle_nice is None:
        return EXIT_OUT_OF_SCOPE
    if verdict.is_cycle_nice != (oracle.kind == "CycleNice"):
        logger.error(f"Recognizer and oracle disagree on {args.file}")
        print("error: recognizer and oracle disagree", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE
    return verdict_exit_code(verdict)


def cmd_props(args: argparse.Namespace, settings: Settings) -> int:
    g = _read(args)
    props = GraphProperties(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        claw_free=is_claw_free(g),
        planar=is_planar(g),
        connected=is_connected(g),
        two_connected=is_nonseparable(g),
        three_connected=is_k_connected(g, 3),
        perfect_matching=has_perfect_matching(g),
        matching_covered=is_matching_covered(g),
        base=identify_base(g).name,
    )
    lines = [f"{name}: {value}" for name, value in props.model_dump().items()]
    _emit(args, props, "\n".join(lines))
    if args.dot:
        print(to_dot(g), end="")
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, settings: Settings) -> int:
    g = _read(args)
    verdict = recognize(g, cycle_cap=settings.cycle_cap, claim_path_cap=settings.claim_path_cap)
    if verdict.kind == "Accept":
        payload = dump_sequence(verdict.certificate)
    elif verdict.witness is not None:
        payload = verdict.witness.model_dump_json(indent=2)
    else:
        payload = verdict.model_dump_json(indent=2, exclude_none=True)
    try:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot write {args.out}: {e}") from e
    logger.info(f"Wrote {verdict.kind} result to {args.out}")
    _emit(args, verdict, describe_verdict(verdict))
    return verdict_exit_code(verdict)


def cmd_ears(args: argparse.Namespace, settings: Settings) -> int:
    g = _read(args)
    cycle = cycle_from_vertices(g, args.cycle)
    budget = args.budget if args.budget is not None else settings.ear_budget
    dec = ear_decomposition(g, cycle, budget)
    problems = validate_ear_decomposition(g, dec)
    if problems:
        raise InvariantViolation(f"ear decomposition failed validation: {problems}")
    lines = [f"initial cycle: {' '.join(str(v) for v in dec.initial_vertices)}"]
    for index, ear in enumerate(dec.ears):
        lines.append(f"ear {index} (length {ear.length}): {' '.join(str(v) for v in ear.vertices)}")
    _emit(args, dec, "\n".join(lines))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    cfg = GenConfig(
        base=args.base,
        n_ops=args.ops,
        seed=args.seed,
        max_path_len=args.max_path_len,
        require_claw_free_planar=args.claw_free_planar,
        op_weights=tuple(args.weights),
    )
    written = generate_corpus(cfg, args.count, Path(args.out), settings.max_proposals)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_atlas(args: argparse.Namespace, settings: Settings) -> int:
    report = atlas(args.max_n, settings.cycle_cap)
    text = render_report(report)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise GraphFormatError(f"cannot write {args.out}: {e}") from e
        logger.info(f"Wrote atlas report to {args.out}")
    _emit(args, report, text.rstrip("\n"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    common.add_argument("--log-level", default=None, help="Logging level (default from CYCLENICE_LOG_LEVEL or INFO)")
    common.add_argument("--format", choices=FORMATS, default=None, help="Input format (default by extension)")

    parser = argparse.ArgumentParser(prog="cyclenice", description="Recognize and construct cycle-nice graphs")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="Decide whether a graph is cycle-nice")
    check.add_argument("file")
    check.add_argument("--method", choices=("oracle", "structural", "both"), default="structural")
    check.add_argument("--cap", type=int, default=None, help="Even-cycle limit for the oracle")
    check.set_defaults(handler=cmd_check)

    props = commands.add_parser("props", parents=[common], help="Print structural properties")
    props.add_argument("file")
    props.add_argument("--dot", action="store_true", help="Also print the graph in DOT")
    props.set_defaults(handler=cmd_props)

    decompose = commands.add_parser("decompose", parents=[common], help="Write a certificate or a witness")
    decompose.add_argument("file")
    decompose.add_argument("--out", required=True)
    decompose.set_defaults(handler=cmd_decompose)

    ears = commands.add_parser("ears", parents=[common], help="Ear decomposition from a nice even cycle")
    ears.add_argument("file")
    ears.add_argument("--cycle", type=_parse_vertices, required=True, help="Cyclic vertex sequence v0,v1,...")
    ears.add_argument("--budget", type=int, default=None, help="Search node limit")
    ears.set_defaults(handler=cmd_ears)

    gen = commands.add_parser("generate", parents=[common], help="Write random cycle-nice graphs with certificates")
    gen.add_argument("--base", type=parse_base, default="Random")
    gen.add_argument("--ops", type=int, default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--claw-free-planar", action="store_true")
    gen.add_argument("--out", required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--max-path-len", type=int, default=5)
    gen.add_argument("--weights", type=_parse_weights, default=[1.0, 1.0, 1.0])
    gen.set_defaults(handler=cmd_generate)

    atl = commands.add_parser("atlas", parents=[common], help="Classify all small graphs")
    atl.add_argument("--max-n", type=int, default=7)
    atl.add_argument("--out", default=None)
    atl.set_defaults(handler=cmd_atlas)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and map errors to exit codes.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env()
    except ValidationError as e:
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return EXIT_FORMAT
    logging.basicConfig(level=(args.log_level or settings.log_level).upper(), stream=sys.stderr)

    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        return handler(args, settings)
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e.detail}", exc_info=True)
        print("error: internal invariant violated", file=sys.stderr)
        return e.exit_code
    except CycleNiceError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except (OSError, ValidationError) as e:
        logger.error(f"Input or output failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except Exception as e:
        logger.error(f"Unexpected failure: {str(e)}", exc_info=True)
        raise


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
