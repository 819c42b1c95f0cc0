"""Command-line interface.

Subcommands
    compute   indices for one scenario, optionally with a bloc merged in
    compare   per-voter power changes between two scenarios
    presets   list bundled scenarios and bloc presets
    emit      named analysis datasets (table1..table8, fig1..fig8)

Scenarios are referenced either by bundled name (eu27, eu33, eu36,
eec1958) or by path to a scenario file, in which case --population must
point at a population CSV.  Data goes to stdout, diagnostics to stderr;
exit codes: 0 success, 1 input or validation problem, 2 resource
refusal.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import TextIO

from . import __version__, dataio, engine, fixtures, oracle, report, scenarios
from .errors import InputError, NormalizationError, ResourceLimitError
from .scenarios import Scenario


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        super().__init__(message)
        self.usage = parser.format_usage()


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 1
        raise _UsageError(self, message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="votingpower", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_output_flags(p):
        p.add_argument("--format", choices=report.FORMATS, default="text")
        p.add_argument("--decimals", type=int, default=2, metavar="K")

    def add_game_flags(p):
        p.add_argument("--population", metavar="PATH", help="population CSV for scenario files")
        p.add_argument(
            "--blocking-minority",
            choices=("on", "off"),
            default=None,
            help="override the scenario's blocking-minority toggle",
        )
        p.add_argument(
            "--index",
            choices=("banzhaf", "ss", "both"),
            default="both",
            help="which index family to compute",
        )

    p_compute = sub.add_parser("compute", help="power indices for one scenario")
    p_compute.add_argument("--scenario", required=True, metavar="NAME|PATH")
    p_compute.add_argument("--bloc", metavar="ID", help="merge a preset bloc before computing")
    add_game_flags(p_compute)
    add_output_flags(p_compute)
    p_compute.add_argument(
        "--verify",
        action="store_true",
        help="cross-check against the enumeration oracle when n <= the oracle limit",
    )
    p_compute.add_argument("--oracle-limit", type=int, default=oracle.DEFAULT_PLAYER_LIMIT, metavar="N")

    p_compare = sub.add_parser("compare", help="power changes between two scenarios")
    p_compare.add_argument("--base", required=True, metavar="NAME|PATH")
    p_compare.add_argument("--target", required=True, metavar="NAME|PATH")
    p_compare.add_argument("--paradox", action="store_true", help="list incumbents that gained power")
    add_game_flags(p_compare)
    add_output_flags(p_compare)

    sub.add_parser("presets", help="list bundled scenarios and bloc presets")

    p_emit = sub.add_parser("emit", help="emit a named analysis dataset")
    p_emit.add_argument("artifact", choices=report.ARTIFACT_NAMES, metavar="ARTIFACT")
    add_output_flags(p_emit)

    return parser


def _load_scenario(ref: str, population: str | None) -> Scenario:
    if ref in fixtures.FIXTURE_NAMES:
        if population is not None:
            raise InputError(
                f"--population cannot be combined with bundled scenario {ref!r}"
            )
        return scenarios.builtin_scenario(ref)
    path = Path(ref)
    if not path.exists():
        raise InputError(
            f"scenario {ref!r} is neither a bundled name "
            f"({', '.join(fixtures.FIXTURE_NAMES)}) nor an existing file"
        )
    if population is None:
        raise InputError("scenario files require --population PATH")
    table = dataio.load_population_table(Path(population).read_text(encoding="utf-8"))
    config = dataio.load_scenario_config(path.read_text(encoding="utf-8"))
    return scenarios.make_scenario(table, config)


def _apply_blocking(scenario: Scenario, flag: str | None) -> Scenario:
    if flag is None:
        return scenario
    return replace(
        scenario, options=replace(scenario.options, include_blocking=flag == "on")
    )


def _compute_indices(game, index: str):
    if index == "banzhaf":
        return engine.banzhaf(game)
    if index == "ss":
        return engine.shapley_shubik(game)
    return engine.compute_all(game)


def _oracle_indices(game, index: str, limit: int):
    if index == "banzhaf":
        return oracle.oracle_banzhaf(game, limit)
    if index == "ss":
        return oracle.oracle_shapley(game, limit)
    return oracle.oracle_all(game, limit)


def _cmd_compute(ns, out: TextIO, err: TextIO) -> int:
    scenario = _apply_blocking(_load_scenario(ns.scenario, ns.population), ns.blocking_minority)
    if ns.bloc:
        scenario = scenarios.with_bloc(scenario, ns.bloc)
    game = scenarios.scenario_game(scenario)
    result = _compute_indices(game, ns.index)
    if ns.verify:
        if game.n <= ns.oracle_limit:
            reference = _oracle_indices(game, ns.index, ns.oracle_limit)
            if reference.entries != result.entries:
                err.write("error: engine result disagrees with enumeration oracle\n")
                return 1
            err.write(f"verified against enumeration oracle (n={game.n})\n")
        else:
            err.write(
                f"oracle verification skipped: n={game.n} exceeds --oracle-limit {ns.oracle_limit}\n"
            )
    out.write(report.render(result, format=ns.format, decimals=ns.decimals))
    return 0


def _cmd_compare(ns, out: TextIO, err: TextIO) -> int:
    base_scenario = _apply_blocking(_load_scenario(ns.base, ns.population), ns.blocking_minority)
    target_scenario = _apply_blocking(_load_scenario(ns.target, ns.population), ns.blocking_minority)
    base = _compute_indices(scenarios.scenario_game(base_scenario), ns.index)
    target = _compute_indices(scenarios.scenario_game(target_scenario), ns.index)
    diff = scenarios.compare(base, target, base_scenario.name, target_scenario.name)
    paradox = scenarios.detect_paradox(diff) if ns.paradox else None
    out.write(report.render(diff, format=ns.format, decimals=ns.decimals, paradox=paradox))
    return 0


def _cmd_presets(out: TextIO) -> int:
    out.write("scenarios:\n")
    for name in fixtures.FIXTURE_NAMES:
        table, config = fixtures.fixture(name)
        out.write(
            f"  {name}: {len(config.members)} voters, "
            f"pop {config.pop_fraction}, seats {config.seat_fraction}, "
            f"blocking {'on' if config.include_blocking else 'off'}\n"
        )
    out.write("bloc presets:\n")
    for bloc_id, bloc in scenarios.BLOC_PRESETS.items():
        out.write(f"  {bloc_id}: {bloc.name} = {' '.join(bloc.members)}\n")
    return 0


def run(
    argv: list[str] | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Parse arguments and execute; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise _UsageError(parser, "a subcommand is required")
        if ns.command == "compute":
            return _cmd_compute(ns, out, err)
        if ns.command == "compare":
            return _cmd_compare(ns, out, err)
        if ns.command == "presets":
            return _cmd_presets(out)
        if ns.command == "emit":
            out.write(report.emit_artifact(ns.artifact, format=ns.format, decimals=ns.decimals))
            return 0
        raise _UsageError(parser, f"unknown command {ns.command!r}")
    except _UsageError as exc:
        err.write(exc.usage)
        err.write(f"error: {exc}\n")
        return 1
    except (InputError, NormalizationError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except ResourceLimitError as exc:
        err.write(f"resource error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
