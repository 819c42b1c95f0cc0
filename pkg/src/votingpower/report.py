"""Deterministic rendering of results plus named dataset emission.

Three formats share one contract: voters sorted by descending Banzhaf
index (Shapley-Shubik when Banzhaf was not computed), ties broken by
roster order; percentages rounded half-to-even at the requested number
of decimals; JSON additionally carries every underlying rational as an
exact ``numerator/denominator`` string.  Identical inputs produce
byte-identical output.

The ``emit_*`` helpers materialise the bundled analysis datasets: the
27/33/36-member power tables, the bloc comparison tables, and the
per-figure data files (voter, banzhaf, shapley columns).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from . import engine, scenarios
from .engine import PowerResult, VoterPower
from .errors import InputError
from .game import And, Or, RuleExpr, WeightedRule, WeightKind
from .scenarios import (
    BLOC_PRESETS,
    DiffReport,
    FamilyDiff,
    ParadoxReport,
    Scenario,
    builtin_scenario,
    compare,
    nordic_reference_annotation,
    scenario_game,
    with_bloc,
)

FORMATS = ("text", "csv", "json")


def percent_units(x: Fraction, decimals: int) -> int:
    """x (a fraction of 1) as an integer count of 10^-decimals percent,
    rounded half to even in exact arithmetic."""
    return round(x * 100 * 10**decimals)


def _units_to_string(units: int, decimals: int) -> str:
    sign = "-" if units < 0 else ""
    mag = abs(units)
    if decimals == 0:
        return f"{sign}{mag}"
    q = 10**decimals
    return f"{sign}{mag // q}.{mag % q:0{decimals}d}"


def percent_string(x: Fraction, decimals: int) -> str:
    """Exact half-even percent rendering of a fraction of 1."""
    return _units_to_string(percent_units(x, decimals), decimals)


def pp_string(x: Fraction, decimals: int) -> str:
    """Percentage-point quantity (already scaled): rendered like a percent."""
    return _units_to_string(round(x * 10**decimals), decimals)


def fraction_string(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def describe_expr(expr: RuleExpr) -> str:
    if isinstance(expr, WeightedRule):
        kind = "seats" if expr.kind is WeightKind.SEATS else "pop"
        return f"{kind} >= {expr.quota}"
    joiner = " AND " if isinstance(expr, And) else " OR "
    return "(" + joiner.join(describe_expr(c) for c in expr.children) + ")"


def _check_decimals(decimals: int) -> None:
    if not 0 <= decimals <= 10:
        raise InputError(f"decimals must be in 0..10, got {decimals}")


def _check_format(format: str) -> None:
    if format not in FORMATS:
        raise InputError(f"unknown format {format!r}; known: {', '.join(FORMATS)}")


def _sorted_entries(result: PowerResult) -> list[VoterPower]:
    def key(pair):
        pos, e = pair
        primary = e.banzhaf_index if e.banzhaf_index is not None else e.shapley_shubik
        return (-(primary if primary is not None else 0), pos)

    return [e for _, e in sorted(enumerate(result.entries), key=key)]


def _verify_column_sum(units: list[int], n: int, decimals: int, column: str) -> None:
    # each rounded entry is off by at most half an ulp, so the column
    # may drift from 100% by at most n half-ulps
    target = 100 * 10**decimals
    if 2 * abs(sum(units) - target) > n:
        raise RuntimeError(
            f"{column} column sums to {sum(units)} units, outside "
            f"{target} +- {n} half-ulps"
        )


def _power_header(result: PowerResult) -> list[str]:
    roster = result.game.roster
    return [
        f"players: {result.n}",
        f"total population weight: {roster.total_pop}",
        f"total seat weight: {roster.total_seats}",
        f"decision rule: {describe_expr(result.game.expr)}",
    ]


def _render_power_text(result: PowerResult, decimals: int) -> str:
    roster = result.game.roster
    entries = _sorted_entries(result)
    rows = []
    for e in entries:
        voter = roster.get(e.id)
        row = [e.id, e.name, percent_string(Fraction(voter.pop_weight, roster.total_pop), decimals)]
        row.append("" if e.banzhaf_index is None else percent_string(e.banzhaf_index, decimals))
        row.append("" if e.shapley_shubik is None else percent_string(e.shapley_shubik, decimals))
        rows.append(row)
    header = ["id", "voter", "pop%", "banzhaf%", "shapley_shubik%"]
    widths = [max(len(header[c]), *(len(r[c]) for r in rows)) for c in range(5)]
    lines = _power_header(result)
    lines.append("")
    lines.append("  ".join(h.ljust(widths[c]) for c, h in enumerate(header)).rstrip())
    for r in rows:
        cells = [r[0].ljust(widths[0]), r[1].ljust(widths[1])]
        cells += [r[c].rjust(widths[c]) for c in range(2, 5)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _render_power_csv(result: PowerResult, decimals: int) -> str:
    roster = result.game.roster
    entries = _sorted_entries(result)
    lines = ["id,name,pop_pct,banzhaf_pct,shapley_shubik_pct"]
    banzhaf_units: list[int] = []
    shapley_units: list[int] = []
    for e in entries:
        voter = roster.get(e.id)
        pop = percent_string(Fraction(voter.pop_weight, roster.total_pop), decimals)
        b = s = ""
        if e.banzhaf_index is not None:
            units = percent_units(e.banzhaf_index, decimals)
            banzhaf_units.append(units)
            b = _units_to_string(units, decimals)
        if e.shapley_shubik is not None:
            units = percent_units(e.shapley_shubik, decimals)
            shapley_units.append(units)
            s = _units_to_string(units, decimals)
        lines.append(f"{e.id},{e.name},{pop},{b},{s}")
    if banzhaf_units:
        _verify_column_sum(banzhaf_units, result.n, decimals, "banzhaf_pct")
    if shapley_units:
        _verify_column_sum(shapley_units, result.n, decimals, "shapley_shubik_pct")
    return "\n".join(lines) + "\n"


def _voter_json(e: VoterPower, roster, decimals: int) -> dict:
    voter = roster.get(e.id)
    out: dict = {
        "id": e.id,
        "name": e.name,
        "pop_weight": voter.pop_weight,
        "seat_weight": voter.seat_weight,
        "pop_pct": percent_string(Fraction(voter.pop_weight, roster.total_pop), decimals),
    }
    if e.banzhaf_score is not None:
        out["banzhaf_score"] = e.banzhaf_score
    if e.banzhaf_value is not None:
        out["banzhaf_value"] = fraction_string(e.banzhaf_value)
    if e.banzhaf_index is not None:
        out["banzhaf_index"] = fraction_string(e.banzhaf_index)
        out["banzhaf_pct"] = percent_string(e.banzhaf_index, decimals)
    if e.shapley_shubik is not None:
        out["shapley_shubik"] = fraction_string(e.shapley_shubik)
        out["shapley_shubik_pct"] = percent_string(e.shapley_shubik, decimals)
    return out


def _render_power_json(result: PowerResult, decimals: int) -> str:
    roster = result.game.roster
    doc = {
        "kind": "power_result",
        "players": result.n,
        "total_pop": roster.total_pop,
        "total_seats": roster.total_seats,
        "decision_rule": describe_expr(result.game.expr),
        "decimals": decimals,
        "voters": [_voter_json(e, roster, decimals) for e in _sorted_entries(result)],
    }
    return json.dumps(doc, indent=2) + "\n"


def _sorted_diff_rows(report: DiffReport):
    def key(pair):
        pos, row = pair
        fam = row.banzhaf if row.banzhaf is not None else row.shapley_shubik
        return (-(fam.before if fam is not None else 0), pos)

    return [r for _, r in sorted(enumerate(report.rows), key=key)]


def _family_cells(diff: FamilyDiff | None, decimals: int) -> list[str]:
    if diff is None:
        return ["", "", "", ""]
    rel = diff.rel_diff
    return [
        percent_string(diff.before, decimals),
        percent_string(diff.after, decimals),
        pp_string(diff.pp_diff, decimals),
        "" if rel is None else pp_string(rel, decimals),
    ]


_DIFF_COLUMNS = [
    "id",
    "name",
    "banzhaf_before_pct",
    "banzhaf_after_pct",
    "banzhaf_pp_diff",
    "banzhaf_rel_diff_pct",
    "shapley_shubik_before_pct",
    "shapley_shubik_after_pct",
    "shapley_shubik_pp_diff",
    "shapley_shubik_rel_diff_pct",
]


def _diff_table_rows(report: DiffReport, decimals: int) -> list[list[str]]:
    rows = []
    for r in _sorted_diff_rows(report):
        rows.append(
            [r.id, r.name]
            + _family_cells(r.banzhaf, decimals)
            + _family_cells(r.shapley_shubik, decimals)
        )
    return rows


def _render_diff_text(report: DiffReport, decimals: int, paradox: ParadoxReport | None) -> str:
    lines = [f"comparison: {report.base_name} -> {report.target_name}"]
    rows = _diff_table_rows(report, decimals)
    widths = [
        max(len(_DIFF_COLUMNS[c]), *(len(r[c]) for r in rows)) if rows else len(_DIFF_COLUMNS[c])
        for c in range(len(_DIFF_COLUMNS))
    ]
    lines.append("")
    lines.append("  ".join(h.ljust(widths[c]) for c, h in enumerate(_DIFF_COLUMNS)).rstrip())
    for r in rows:
        cells = [r[0].ljust(widths[0]), r[1].ljust(widths[1])]
        cells += [r[c].rjust(widths[c]) for c in range(2, len(_DIFF_COLUMNS))]
        lines.append("  ".join(cells).rstrip())
    if report.entrants:
        lines.append("")
        lines.append("entrants: " + ", ".join(f"{i} ({n})" for i, n in report.entrants))
    if report.departed:
        lines.append("departed: " + ", ".join(f"{i} ({n})" for i, n in report.departed))
    if paradox is not None:
        lines.append("")
        if paradox.note:
            lines.append(f"paradox check: {paradox.note}")
        elif not paradox.gainers:
            lines.append("paradox check: no incumbent gained power")
        else:
            lines.append("incumbents gaining power:")
            for g in paradox.gainers:
                lines.append(
                    f"  {g.voter_id} ({g.name}), {g.family}: +{pp_string(g.pp_diff, decimals)} pp"
                )
    return "\n".join(lines) + "\n"


def _render_diff_csv(report: DiffReport, decimals: int, paradox: ParadoxReport | None) -> str:
    lines = [",".join(_DIFF_COLUMNS)]
    for r in _diff_table_rows(report, decimals):
        lines.append(",".join(r))
    for voter_id, name in report.entrants:
        lines.append(f"# entrant: {voter_id},{name}")
    for voter_id, name in report.departed:
        lines.append(f"# departed: {voter_id},{name}")
    if paradox is not None:
        if paradox.note:
            lines.append(f"# paradox: {paradox.note}")
        else:
            for g in paradox.gainers:
                lines.append(
                    f"# paradox-gainer: {g.voter_id},{g.family},{pp_string(g.pp_diff, decimals)}"
                )
    return "\n".join(lines) + "\n"


def _render_diff_json(report: DiffReport, decimals: int, paradox: ParadoxReport | None) -> str:
    def family_json(diff: FamilyDiff | None) -> dict | None:
        if diff is None:
            return None
        rel = diff.rel_diff
        return {
            "before": fraction_string(diff.before),
            "after": fraction_string(diff.after),
            "before_pct": percent_string(diff.before, decimals),
            "after_pct": percent_string(diff.after, decimals),
            "pp_diff": fraction_string(diff.pp_diff),
            "pp_diff_rounded": pp_string(diff.pp_diff, decimals),
            "rel_diff_pct": None if rel is None else pp_string(rel, decimals),
        }

    doc: dict = {
        "kind": "diff_report",
        "base": report.base_name,
        "target": report.target_name,
        "decimals": decimals,
        "rows": [
            {
                "id": r.id,
                "name": r.name,
                "banzhaf": family_json(r.banzhaf),
                "shapley_shubik": family_json(r.shapley_shubik),
            }
            for r in _sorted_diff_rows(report)
        ],
        "entrants": [{"id": i, "name": n} for i, n in report.entrants],
        "departed": [{"id": i, "name": n} for i, n in report.departed],
    }
    if paradox is not None:
        doc["paradox"] = {
            "note": paradox.note,
            "gainers": [
                {
                    "id": g.voter_id,
                    "name": g.name,
                    "family": g.family,
                    "pp_diff": fraction_string(g.pp_diff),
                    "pp_diff_rounded": pp_string(g.pp_diff, decimals),
                }
                for g in paradox.gainers
            ],
        }
    return json.dumps(doc, indent=2) + "\n"


def render(
    obj: PowerResult | DiffReport,
    format: str = "text",
    decimals: int = 2,
    paradox: ParadoxReport | None = None,
) -> str:
    """Render a power result or diff report in text, csv, or json."""
    _check_format(format)
    _check_decimals(decimals)
    if isinstance(obj, PowerResult):
        if format == "text":
            return _render_power_text(obj, decimals)
        if format == "csv":
            return _render_power_csv(obj, decimals)
        return _render_power_json(obj, decimals)
    if isinstance(obj, DiffReport):
        if format == "text":
            return _render_diff_text(obj, decimals, paradox)
        if format == "csv":
            return _render_diff_csv(obj, decimals, paradox)
        return _render_diff_json(obj, decimals, paradox)
    raise InputError(f"cannot render object of type {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Named dataset emission


ARTIFACT_NAMES = tuple(f"table{i}" for i in range(1, 9)) + tuple(
    f"fig{i}" for i in range(1, 9)
)

_FIGURE_BLOCS = {
    "fig1": "franco_german",
    "fig2": "weimar",
    "fig3": "founders",
    "fig4": "v4",
    "fig5": "2004",
    "fig6": "nordic",
}

# Paper-ordered bloc rows of the two comparison tables.
_COMPARISON_BLOCS = ("franco_german", "weimar", "v4", "2004", "founders", "nordic")


def _compute(scenario: Scenario) -> PowerResult:
    return engine.compute_all(scenario_game(scenario))


def _table_doc(name: str, columns: list[str], rows: list[list[str]], notes: list[str]) -> dict:
    return {"kind": "dataset", "name": name, "columns": columns, "rows": rows, "notes": notes}


def _format_doc(doc: dict, format: str) -> str:
    if format == "json":
        return json.dumps(doc, indent=2) + "\n"
    columns, rows, notes = doc["columns"], doc["rows"], doc["notes"]
    if format == "csv":
        lines = [",".join(columns)]
        lines += [",".join(r) for r in rows]
        lines += [f"# note: {n}" for n in notes]
        return "\n".join(lines) + "\n"
    widths = [
        max(len(columns[c]), *(len(r[c]) for r in rows)) if rows else len(columns[c])
        for c in range(len(columns))
    ]
    lines = [doc["name"]]
    lines.append("  ".join(h.ljust(widths[c]) for c, h in enumerate(columns)).rstrip())
    for r in rows:
        cells = [r[0].ljust(widths[0])]
        cells += [r[c].rjust(widths[c]) for c in range(1, len(columns))]
        lines.append("  ".join(cells).rstrip())
    lines += [f"note: {n}" for n in notes]
    return "\n".join(lines) + "\n"


def _power_rows(result: PowerResult, ids: Iterable[str], decimals: int) -> list[list[str]]:
    roster = result.game.roster
    rows = []
    for voter_id in ids:
        e = result.entry(voter_id)
        voter = roster.get(voter_id)
        rows.append(
            [
                e.name,
                percent_string(Fraction(voter.pop_weight, roster.total_pop), decimals),
                percent_string(e.banzhaf_index, decimals),
                percent_string(e.shapley_shubik, decimals),
            ]
        )
    return rows


_POWER_COLUMNS = ["country", "pop_pct", "banzhaf_pct", "shapley_shubik_pct"]


def _top_by_pop(result: PowerResult, count: int) -> list[str]:
    roster = result.game.roster
    order = sorted(
        enumerate(roster.voters), key=lambda pair: (-pair[1].pop_weight, pair[0])
    )
    return [v.id for _, v in order[:count]]


def _emit_power_table(name: str, decimals: int) -> dict:
    if name in ("table1", "table2", "table3"):
        result = _compute(builtin_scenario("eu27"))
        ids = [v.id for v in result.game.roster.voters]
        segment = {"table1": ids[0:5], "table2": ids[5:19], "table3": ids[19:27]}[name]
        return _table_doc(name, _POWER_COLUMNS, _power_rows(result, segment, decimals), [])
    if name == "table4":
        result = _compute(builtin_scenario("eu33"))
        entrants = [v.id for v in result.game.roster.voters[27:]]
        return _table_doc(name, _POWER_COLUMNS, _power_rows(result, entrants, decimals), [])
    if name == "table6":
        result = _compute(builtin_scenario("eu36"))
        return _table_doc(
            name, _POWER_COLUMNS, _power_rows(result, _top_by_pop(result, 7), decimals), []
        )
    if name == "table7":
        result = _compute(builtin_scenario("eu36"))
        entrant_ids = [v.id for v in result.game.roster.voters[27:]]
        by_pop = sorted(
            entrant_ids, key=lambda i: -result.game.roster.get(i).pop_weight
        )
        return _table_doc(name, _POWER_COLUMNS, _power_rows(result, by_pop, decimals), [])
    raise InputError(f"unknown artifact {name!r}")


def _emit_bloc_comparison(name: str, decimals: int) -> dict:
    target_name = "eu33" if name == "table5" else "eu36"
    base = builtin_scenario("eu27")
    target = builtin_scenario(target_name)
    columns = [
        "coalition",
        "eu27_banzhaf_pct",
        "eu27_shapley_shubik_pct",
        f"{target_name}_banzhaf_pct",
        f"{target_name}_shapley_shubik_pct",
        "banzhaf_rel_diff_pct",
        "shapley_shubik_rel_diff_pct",
    ]
    rows = []
    notes: list[str] = []
    for bloc_id in _COMPARISON_BLOCS:
        base_result = _compute(with_bloc(base, bloc_id))
        target_result = _compute(with_bloc(target, bloc_id))
        b = FamilyDiff(
            before=base_result.banzhaf_index(bloc_id),
            after=target_result.banzhaf_index(bloc_id),
        )
        s = FamilyDiff(
            before=base_result.shapley_index(bloc_id),
            after=target_result.shapley_index(bloc_id),
        )
        rows.append(
            [
                BLOC_PRESETS[bloc_id].name,
                percent_string(b.before, decimals),
                percent_string(s.before, decimals),
                percent_string(b.after, decimals),
                percent_string(s.after, decimals),
                "" if b.rel_diff is None else pp_string(b.rel_diff, decimals),
                "" if s.rel_diff is None else pp_string(s.rel_diff, decimals),
            ]
        )
        if bloc_id == "nordic":
            notes.append(nordic_reference_annotation(base_result))
    return _table_doc(name, columns, rows, notes)


def _emit_figure_power(name: str, decimals: int) -> dict:
    bloc_id = _FIGURE_BLOCS[name]
    result = _compute(with_bloc(builtin_scenario("eu27"), bloc_id))
    rows = []
    for e in _sorted_entries(result):
        rows.append(
            [
                e.name,
                percent_string(e.banzhaf_index, decimals),
                percent_string(e.shapley_shubik, decimals),
            ]
        )
    notes = [nordic_reference_annotation(result)] if name == "fig6" else []
    return _table_doc(name, ["voter", "banzhaf_pct", "shapley_shubik_pct"], rows, notes)


def _emit_figure_diff(name: str, decimals: int) -> dict:
    target_name = "eu33" if name == "fig7" else "eu36"
    base = _compute(builtin_scenario("eu27"))
    target = _compute(builtin_scenario(target_name))
    report = compare(base, target, "eu27", target_name)
    rows = []
    for r in _sorted_diff_rows(report):
        rows.append(
            [
                r.name,
                pp_string(r.banzhaf.pp_diff, decimals),
                pp_string(r.shapley_shubik.pp_diff, decimals),
            ]
        )
    return _table_doc(
        name, ["voter", "banzhaf_pp_diff", "shapley_shubik_pp_diff"], rows, []
    )


def emit_artifact(name: str, format: str = "text", decimals: int = 2) -> str:
    """Produce one of the named datasets (table1..table8, fig1..fig8)."""
    _check_format(format)
    _check_decimals(decimals)
    if name in ("table1", "table2", "table3", "table4", "table6", "table7"):
        doc = _emit_power_table(name, decimals)
    elif name in ("table5", "table8"):
        doc = _emit_bloc_comparison(name, decimals)
    elif name in _FIGURE_BLOCS:
        doc = _emit_figure_power(name, decimals)
    elif name in ("fig7", "fig8"):
        doc = _emit_figure_diff(name, decimals)
    else:
        raise InputError(
            f"unknown artifact {name!r}; known: {', '.join(ARTIFACT_NAMES)}"
        )
    return _format_doc(doc, format)
