"""Command-line interface for the fast robber toolkit."""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

import numpy as np

from . import bounds, catalog, game
from .errors import PursuitError
from .graph import girth, pad_with_path, read_graph_source, write_graph
from .schema import COP_STRATEGIES, SimulationSpec, Transcript
from .simulation import SimulationRunner, replay_transcript, run_batch
from .solver import solve_cop_number
from .types import CopMultiset, GameState, Graph, canonical_cops

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2

GRAPH_HELP = "catalog:<name> (checked first) or a path to an edge-list file"


def _emit_json(out: TextIO, payload: Any) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _cmd_girth(args: argparse.Namespace, out: TextIO) -> int:
    value = girth(read_graph_source(args.graph))
    if args.json:
        _emit_json(out, {"graph": args.graph, "girth": value})
    else:
        out.write(f"{value if value is not None else 'acyclic'}\n")
    return EXIT_OK


def _cmd_copnum(args: argparse.Namespace, out: TextIO) -> int:
    g = read_graph_source(args.graph)
    value, reports = solve_cop_number(g, args.speed, args.max_cops)
    if args.json:
        _emit_json(out, {
            "graph": args.graph,
            "speed": args.speed,
            "max_cops": args.max_cops,
            "cop_number": value,
            "reports": [report.to_dict() for report in reports],
        })
    else:
        out.write(f"{value if value is not None else f'> {args.max_cops}'}\n")
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace, out: TextIO) -> int:
    if args.plan is not None:
        plan = bounds.padding_plan(args.plan, args.speed)
        if args.json:
            _emit_json(out, plan.to_dict())
        else:
            out.write(
                f"d={plan.d} girth={plan.girth} host<={plan.host_order_bound} "
                f"path={plan.path_vertices} (speed {plan.family_speed} family)\n"
            )
        return EXIT_OK
    if args.table:
        rows = bounds.bound_table(args.d, args.speed)
        if args.json:
            _emit_json(out, {"d": args.d, "t": args.speed, "rows": [row.to_dict() for row in rows]})
        else:
            for row in rows:
                out.write(f"m={row.m:<4} alpha={str(row.alpha):<8} bound={row.bound} ({float(row.bound):.6g})\n")
        return EXIT_OK

    m = args.m if args.m is not None else bounds.best_m(args.d, args.speed)
    params = bounds.BoundParams(args.d, args.speed, m)
    value = bounds.lemma1_bound(params)
    payload: Dict[str, Any] = {
        **params.to_dict(),
        "bound": str(value),
        "bound_decimal": float(value),
        "guaranteed_cops": bounds.guaranteed_cops(params),
        "claim_bound": bounds.claim_bound(args.d, args.speed),
        "claim_bound_exact": bounds.claim_bound_exact(args.d, args.speed),
        "averaging_budget": str(bounds.averaging_budget(params)),
        "satisfies_speed_hypothesis": params.satisfies_speed_hypothesis,
    }
    if args.json:
        _emit_json(out, payload)
        return EXIT_OK
    out.write(f"{value} ({float(value):.6g})\n")
    out.write(f"alpha={params.alpha} guaranteed_cops={payload['guaranteed_cops']} "
              f"claim_bound={payload['claim_bound']}\n")
    if not params.satisfies_speed_hypothesis:
        out.write("note: t > d+1, outside the bound's speed hypothesis\n")
    return EXIT_OK


def _cmd_catalog(args: argparse.Namespace, out: TextIO) -> int:
    if args.action == "list":
        entries = catalog.list_entries()
        if args.json:
            _emit_json(out, [
                {key: value for key, value in asdict(entry).items() if key not in {"edges", "lcf", "lcf_repeats"}}
                for entry in entries
            ])
        else:
            for entry in entries:
                marker = " moore" if entry.moore_extremal else ""
                out.write(f"{entry.name:<16} degree={entry.degree} girth={entry.girth} order={entry.order}{marker}\n")
        return EXIT_OK
    if not args.name:
        raise argparse.ArgumentTypeError("catalog get needs a name")
    out.write(write_graph(catalog.build(args.name)))
    return EXIT_OK


def _cmd_pad_path(args: argparse.Namespace, out: TextIO) -> int:
    out.write(write_graph(pad_with_path(read_graph_source(args.graph), args.n)))
    return EXIT_OK


def _spec_from_args(args: argparse.Namespace, strategy: str) -> SimulationSpec:
    script: List[List[int]] = []
    if getattr(args, "script", None):
        script = json.loads(Path(args.script).read_text(encoding="utf-8"))
    return SimulationSpec(
        graph=args.graph,
        speed=args.speed,
        cop_count=args.cops,
        cop_strategy=strategy,
        max_rounds=args.max_rounds,
        seed=args.seed,
        m=args.m,
        start_vertex=args.start,
        script=script,
    )


def _write_transcripts(args: argparse.Namespace, out: TextIO, transcripts: List[Transcript]) -> None:
    if args.out:
        text = transcripts[0].json() if len(transcripts) == 1 else json.dumps(
            [item.to_dict() for item in transcripts], indent=2, sort_keys=True
        )
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    if args.json:
        if len(transcripts) == 1:
            out.write(transcripts[0].json() + "\n")
        else:
            _emit_json(out, [item.to_dict() for item in transcripts])
        return
    for index, item in enumerate(transcripts):
        verdict = item.verdict.to_dict() if item.verdict else {}
        out.write(f"[{index}] seed={item.spec.seed} verdict={json.dumps(verdict, sort_keys=True)}\n")


def _cmd_simulate(args: argparse.Namespace, out: TextIO) -> int:
    spec = _spec_from_args(args, args.strategy)
    if args.repeat > 1:
        transcripts = run_batch(spec, args.repeat, args.jobs)
    else:
        transcripts = [SimulationRunner(spec).run()]
    _write_transcripts(args, out, transcripts)
    return EXIT_OK


def human_policy(input_fn: Callable[[str], str], out: TextIO) -> Callable[..., CopMultiset]:
    """Cop policy that asks at a prompt and re-prompts with the legal list on bad input."""

    def policy(g: Graph, state: GameState, rng: Sequence[np.random.Generator] = ()) -> CopMultiset:
        candidates = game.cop_move_candidates(g, state)
        out.write(f"round {state.round + 1}: cops at {list(state.cops)}, robber at {state.robber}\n")
        while True:
            line = input_fn("cops> ")
            try:
                choice: Optional[CopMultiset] = canonical_cops(int(token) for token in line.replace(",", " ").split())
            except ValueError:
                choice = None
            if choice in candidates:
                return choice  # type: ignore[return-value]
            legal = "; ".join(" ".join(str(v) for v in option) for option in candidates)
            out.write(f"illegal move, choose one of: {legal}\n")

    return policy


def _cmd_play(args: argparse.Namespace, out: TextIO, input_fn: Callable[[str], str]) -> int:
    spec = _spec_from_args(args, "human")
    runner = SimulationRunner(spec, cop_policy=human_policy(input_fn, out))
    transcript = runner.run()
    if transcript.robber is not None:
        out.write(f"robber started at {transcript.robber}\n")
    _write_transcripts(args, out, [transcript])
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace, out: TextIO) -> int:
    transcript = Transcript.loads(Path(args.transcript).read_text(encoding="utf-8"))
    graph = read_graph_source(args.graph) if args.graph else None
    verdict = replay_transcript(transcript, graph)
    if args.json:
        _emit_json(out, {"replayed": True, "verdict": verdict.to_dict()})
    else:
        out.write(f"ok {json.dumps(verdict.to_dict(), sort_keys=True)}\n")
    return EXIT_OK


def _add_simulation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("graph", help=GRAPH_HELP)
    parser.add_argument("--speed", type=int, default=2)
    parser.add_argument("--cops", type=int, default=1)
    parser.add_argument("--max-rounds", type=int, default=100)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--m", type=int, default=None, help="witness size (default d^t // 2)")
    parser.add_argument("--start", type=int, default=0, help="vertex holding every cop initially")
    parser.add_argument("--out", default=None, help="write the transcript JSON here")
    parser.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fast-robber", description="Cops and a fast robber on graphs.")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    commands = parser.add_subparsers(dest="command", required=True)

    girth_parser = commands.add_parser("girth", help="length of a shortest cycle")
    girth_parser.add_argument("graph", help=GRAPH_HELP)
    girth_parser.add_argument("--json", action="store_true")

    copnum = commands.add_parser("copnum", help="exact cop number by retrograde analysis")
    copnum.add_argument("graph", help=GRAPH_HELP)
    copnum.add_argument("--speed", type=int, default=1)
    copnum.add_argument("--max-cops", type=int, default=3)
    copnum.add_argument("--json", action="store_true")

    bound = commands.add_parser("bound", help="exact lower-bound arithmetic")
    bound.add_argument("--d", type=int, default=2)
    bound.add_argument("--speed", type=int, default=2)
    bound.add_argument("--m", type=int, default=None)
    bound.add_argument("--table", action="store_true", help="bound for every admissible m")
    bound.add_argument("--plan", type=int, default=None, metavar="N", help="host/path sizes for n = N")
    bound.add_argument("--json", action="store_true")

    simulate = commands.add_parser("simulate", help="cop strategy against the witness robber")
    _add_simulation_flags(simulate)
    simulate.add_argument("--strategy", choices=[name for name in COP_STRATEGIES if name != "human"], default="greedy")
    simulate.add_argument("--script", default=None, help="JSON list of cop multisets, first is the placement")
    simulate.add_argument("--repeat", type=int, default=1)
    simulate.add_argument("--jobs", type=int, default=1)

    play = commands.add_parser("play", help="enter cop moves at a prompt")
    _add_simulation_flags(play)

    catalog_parser = commands.add_parser("catalog", help="named high-girth graphs")
    catalog_parser.add_argument("action", choices=["list", "get"])
    catalog_parser.add_argument("name", nargs="?")
    catalog_parser.add_argument("--json", action="store_true")

    pad = commands.add_parser("pad-path", help="attach a path so the graph has N vertices")
    pad.add_argument("graph", help=GRAPH_HELP)
    pad.add_argument("--n", type=int, required=True)

    replay = commands.add_parser("replay", help="re-check a transcript against the rules")
    replay.add_argument("transcript")
    replay.add_argument("--graph", default=None, help="override the graph named in the transcript")
    replay.add_argument("--json", action="store_true")
    return parser


def cli_dispatch(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    input_fn: Callable[[str], str] = input,
) -> int:
    """Run one command; returns 0 on success, 1 on domain errors, 2 on usage errors."""

    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code) if isinstance(exit_.code, int) else EXIT_USAGE
    logging.basicConfig(level=getattr(logging, args.log_level), stream=err)

    handlers = {
        "girth": _cmd_girth,
        "copnum": _cmd_copnum,
        "bound": _cmd_bound,
        "simulate": _cmd_simulate,
        "catalog": _cmd_catalog,
        "pad-path": _cmd_pad_path,
        "replay": _cmd_replay,
    }
    try:
        if args.command == "play":
            return _cmd_play(args, out, input_fn)
        return handlers[args.command](args, out)
    except argparse.ArgumentTypeError as error:
        err.write(f"usage error: {error}\n")
        return EXIT_USAGE
    except (PursuitError, OSError, EOFError, json.JSONDecodeError) as error:
        err.write(f"error: {error}\n")
        return EXIT_DOMAIN_ERROR


def main() -> None:
    sys.exit(cli_dispatch())


__all__ = ["build_parser", "cli_dispatch", "human_policy", "main"]
