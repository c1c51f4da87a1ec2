"""Command-line front end.

Subcommands:
    run            simulate a user scenario file
    reproduce      simulate builtin matchups and emit reference-table-style rows
    compare        simulate builtin matchups and diff against the bundled references
    mae            per-model mean absolute error (from bundled data or fresh runs)
    list-units     show the unit catalog with derived stats
    list-matchups  show the builtin matchups

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import yaml

from . import report
from .engine import ModelId
from .errors import CombatError
from .montecarlo import AggregateResult, ExperimentSpec, run_experiment
from .scenarios import (
    PAIRINGS,
    ROUNDS,
    MatchupSpec,
    builtin_matchups,
    load_scenario,
    reference_table,
)
from .units import (
    UnitCatalog,
    default_catalog,
    effective_bonus_dps,
    effective_dps,
    effective_health,
    load_catalog,
)

TABLE1_COLUMNS = ("round", "type", "match",
                  "1-1", "1-2", "1-3", "1-4", "2-1", "2-2", "2-3", "2-4",
                  "1-%", "2-%")


def _add_common(parser: argparse.ArgumentParser, simulation: bool = True) -> None:
    parser.add_argument("--catalog", metavar="PATH",
                        help="unit catalog file (default: bundled catalog, "
                             "or $SC2COMBAT_CATALOG if set)")
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--output", metavar="PATH", help="write report here instead of stdout")
    if simulation:
        parser.add_argument("--trials", type=int, default=1000)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--jobs", type=int, default=1,
                            help="worker processes (results identical for any value)")


def _add_filters(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", default="all",
                        choices=("apx1", "apx2", "apx3", "apx4", "all"),
                        help="model to run (default all)")
    parser.add_argument("--round", default="all", dest="round_",
                        choices=("1", "2", "3", "4", "all"),
                        help="benchmark round (default all)")
    parser.add_argument("--match", default="all",
                        choices=("pvt", "tvz", "pvz", "all"),
                        help="race pairing (default all)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sc2combat",
        description="Damage-pool approximation models of army combat.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a scenario file")
    p_run.add_argument("--scenario", required=True, metavar="PATH")
    p_run.add_argument("--model", default=None,
                       choices=("apx1", "apx2", "apx3", "apx4"),
                       help="model to run (overrides the scenario file)")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_rep = sub.add_parser("reproduce", help="rerun builtin matchups, reference-table layout")
    _add_filters(p_rep)
    _add_common(p_rep)
    p_rep.set_defaults(func=_cmd_reproduce)

    p_cmp = sub.add_parser("compare", help="diff fresh runs against the bundled references")
    _add_filters(p_cmp)
    _add_common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_mae = sub.add_parser("mae", help="mean absolute error per model vs the test rows")
    group = p_mae.add_mutually_exclusive_group()
    group.add_argument("--from-reference", action="store_true", default=True,
                       help="use the bundled model rows (default)")
    group.add_argument("--simulate", action="store_true",
                       help="run fresh simulations instead of the bundled model rows")
    p_mae.add_argument("--chart", action="store_true", help="append a plain-text bar chart")
    _add_common(p_mae)
    p_mae.set_defaults(func=_cmd_mae)

    p_units = sub.add_parser("list-units", help="show the unit catalog")
    _add_common(p_units, simulation=False)
    p_units.set_defaults(func=_cmd_list_units)

    p_match = sub.add_parser("list-matchups", help="show the builtin matchups")
    _add_common(p_match, simulation=False)
    p_match.set_defaults(func=_cmd_list_matchups)

    return parser


def _catalog_from(args: argparse.Namespace) -> UnitCatalog:
    if args.catalog:
        return load_catalog(args.catalog)
    return default_catalog()


def _emit(args: argparse.Namespace, text: str) -> None:
    text = text.rstrip("\n")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _parse_models(text: str) -> list[ModelId]:
    if text.lower() == "all":
        return list(ModelId)
    return [ModelId.parse(text)]


def _parse_rounds(text: str) -> list[int]:
    if text.lower() == "all":
        return list(ROUNDS)
    return [int(text)]


def _parse_matches(text: str) -> list[str]:
    if text.lower() == "all":
        return list(PAIRINGS)
    for pairing in PAIRINGS:
        if text.lower() == pairing.lower():
            return [pairing]
    raise CombatError(f"unknown match: {text!r}")


def _selected_matchups(args: argparse.Namespace) -> list[MatchupSpec]:
    rounds = _parse_rounds(args.round_)
    matches = _parse_matches(args.match)
    return [m for m in builtin_matchups()
            if m.round in rounds and m.pairing in matches]


def _run_selected(args: argparse.Namespace, catalog: UnitCatalog) -> list[AggregateResult]:
    results = []
    for model in _parse_models(args.model):
        for matchup in _selected_matchups(args):
            spec = ExperimentSpec(matchup=matchup, model=model,
                                  trials=args.trials, master_seed=args.seed)
            results.append(run_experiment(spec, catalog, n_jobs=args.jobs))
    return results


def _survivor_cells(means: tuple[float, ...] | None, fmt: str) -> list[object]:
    """Four survivor columns; integers in table view, one decimal otherwise."""
    cells: list[object] = []
    for i in range(4):
        if means is None or i >= len(means):
            value = None if means is None else 0.0
        else:
            value = means[i]
        if value is None:
            cells.append(0 if fmt == "table" else None)
        elif fmt == "table":
            cells.append(round(value))
        elif fmt == "csv":
            cells.append(f"{value:.1f}")
        else:
            cells.append(round(value, 1))
    return cells


def _win_cell(value: float, fmt: str) -> object:
    return f"{value:.2f}" if fmt != "json" else round(value, 2)


def _table1_row(result: AggregateResult, fmt: str) -> list[object]:
    matchup = result.spec.matchup
    return (
        [matchup.round, result.spec.model.name, matchup.pairing]
        + _survivor_cells(result.mean_survivors1, fmt)
        + _survivor_cells(result.mean_survivors2, fmt)
        + [_win_cell(result.reported_win1, fmt), _win_cell(result.reported_win2, fmt)]
    )


def _cmd_run(args: argparse.Namespace) -> int:
    catalog = _catalog_from(args)
    with open(args.scenario, "r", encoding="utf-8") as handle:
        scenario = load_scenario(handle, catalog)
    if args.model:
        model = ModelId.parse(args.model)
    elif scenario.model is not None:
        model = scenario.model
    else:
        model = ModelId.APX4
    trials = scenario.trials if scenario.trials is not None else args.trials
    seed = scenario.seed if scenario.seed is not None else args.seed
    spec = ExperimentSpec(matchup=scenario.matchup, model=model,
                          trials=trials, master_seed=seed)
    result = run_experiment(spec, catalog, n_jobs=args.jobs)

    def survivors(names: Sequence[str], means: tuple[float, ...] | None) -> object:
        if means is None:
            return None
        pairs = [(name, round(mean, 2)) for name, mean in zip(names, means)]
        if args.format == "json":
            return dict(pairs)
        return " ".join(f"{name}:{mean}" for name, mean in pairs)

    names1 = [name for name, _ in scenario.matchup.army1]
    names2 = [name for name, _ in scenario.matchup.army2]
    columns = ("scenario", "model", "trials", "seed",
               "win1", "win2", "draw", "stalemates", "survivors1", "survivors2")
    row = [
        scenario.matchup.label, model.name, trials, seed,
        _win_cell(result.win1, args.format), _win_cell(result.win2, args.format),
        _win_cell(result.draw, args.format), result.stalemate_count,
        survivors(names1, result.mean_survivors1),
        survivors(names2, result.mean_survivors2),
    ]
    _emit(args, report.render(args.format, columns, [row]))
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    catalog = _catalog_from(args)
    results = _run_selected(args, catalog)
    results.sort(key=lambda r: (r.spec.matchup.round, r.spec.model.value,
                                PAIRINGS.index(r.spec.matchup.pairing)))
    rows = [_table1_row(result, args.format) for result in results]
    _emit(args, report.render(args.format, TABLE1_COLUMNS, rows))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    catalog = _catalog_from(args)
    results = _run_selected(args, catalog)
    rows = report.comparison_rows(reference_table(), results)
    rows.sort(key=lambda r: (r.round, r.model.value, PAIRINGS.index(r.match)))
    columns = ("round", "match", "model", "win1_sim", "win1_model", "win1_test",
               "delta_vs_test", "delta_vs_model")
    cells = [
        [row.round, row.match, row.model.name,
         _win_cell(row.simulated_win1, args.format),
         _win_cell(row.reference_win1, args.format),
         _win_cell(row.test_win1, args.format),
         _win_cell(row.delta_vs_test, args.format),
         _win_cell(row.delta_vs_reference, args.format)]
        for row in rows
    ]
    _emit(args, report.render(args.format, columns, cells))
    return 0


def _cmd_mae(args: argparse.Namespace) -> int:
    reference = reference_table()
    if args.simulate:
        catalog = _catalog_from(args)
        results = []
        for model in ModelId:
            for matchup in builtin_matchups():
                spec = ExperimentSpec(matchup=matchup, model=model,
                                      trials=args.trials, master_seed=args.seed)
                results.append(run_experiment(spec, catalog, n_jobs=args.jobs))
        summary = report.mae_by_model(reference, results)
    else:
        summary = report.mae_by_model(reference)
    columns = ("model", "mae")
    rows = [
        [model.name, f"{summary.errors[model]:.4f}" if args.format != "json"
         else round(summary.errors[model], 4)]
        for model in ModelId
    ]
    text = report.render(args.format, columns, rows)
    if args.chart and args.format == "table":
        text += "\n\n" + report.ascii_bar_chart(summary)
    _emit(args, text)
    return 0


def _cmd_list_units(args: argparse.Namespace) -> int:
    catalog = _catalog_from(args)
    columns = ("name", "race", "health", "shields", "armor", "dps", "aoe_area",
               "ranged", "bonus_dps", "bonus_vs", "attributes",
               "eff_health", "eff_dps", "eff_bonus_dps")
    rows = [
        [u.name, u.race.value, u.base_health, u.shields, u.armor, u.base_dps,
         u.aoe_area, u.ranged, u.bonus_base_dps,
         " ".join(sorted(u.bonus_vs)), " ".join(sorted(u.attributes)),
         round(effective_health(u), 2), round(effective_dps(u), 2),
         round(effective_bonus_dps(u), 2)]
        for u in catalog
    ]
    _emit(args, report.render(args.format, columns, rows))
    return 0


def _cmd_list_matchups(args: argparse.Namespace) -> int:
    def army_text(army: tuple[tuple[str, int], ...]) -> str:
        return " + ".join(f"{count} {name}" for name, count in army)

    columns = ("round", "match", "army1", "army2")
    rows = [
        [m.round, m.pairing, army_text(m.army1), army_text(m.army2)]
        for m in builtin_matchups()
    ]
    _emit(args, report.render(args.format, columns, rows))
    return 0


def run_command(argv: Sequence[str] | None = None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CombatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
