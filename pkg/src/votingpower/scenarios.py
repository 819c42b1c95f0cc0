"""Named voting scenarios, bloc presets, and cross-scenario comparison.

A scenario bundles a roster with qualified-majority options and an
optional bloc partition.  The analysis layer on top computes power
results, diffs them across enlargements, and flags incumbents whose
power *rises* when the body grows (the counterintuitive gain that small
states can realize because the member-state quota climbs faster than
their population share falls).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from . import engine, fixtures
from .dataio import PopulationTable, ScenarioConfig
from .engine import PowerResult
from .errors import InputError
from .game import (
    Bloc,
    BlocPartition,
    Roster,
    VotingGame,
    build_qmv,
    merge_blocs,
)

# Recurring cooperation patterns among the 27 incumbents.  Membership
# lists are data so they can be audited against the source dataset.
BLOC_PRESETS: dict[str, Bloc] = {
    bloc.id: bloc
    for bloc in (
        Bloc("franco_german", "Franco-German axis", ("DE", "FR")),
        Bloc("weimar", "Weimar Triangle", ("DE", "FR", "PL")),
        Bloc("founders", "Founding members", ("BE", "DE", "FR", "IT", "LU", "NL")),
        Bloc("v4", "Visegrad Group", ("PL", "CZ", "HU", "SK")),
        Bloc("2004", "2004 accession group", ("CZ", "CY", "EE", "HU", "LV", "LT", "MT", "PL", "SK", "SI")),
        Bloc("nordic", "Nordic group", ("DK", "EE", "FI", "LV", "LT", "SE")),
    )
}

BANZHAF = "banzhaf"
SHAPLEY_SHUBIK = "shapley_shubik"
FAMILIES = (BANZHAF, SHAPLEY_SHUBIK)


@dataclass(frozen=True)
class QmvOptions:
    pop_fraction: Fraction
    seat_fraction: Fraction
    blocking_members: int
    include_blocking: bool


@dataclass(frozen=True)
class Scenario:
    name: str
    roster: Roster
    options: QmvOptions
    partition: BlocPartition | None = None


def make_scenario(table: PopulationTable, config: ScenarioConfig) -> Scenario:
    """Bind a scenario config to a population table.

    Members must resolve against the table; roster order follows the
    config's member list.
    """
    voters = [table.get(m) for m in config.members]
    partition = BlocPartition(config.blocs) if config.blocs else None
    return Scenario(
        name=config.name,
        roster=Roster(tuple(voters)),
        options=QmvOptions(
            pop_fraction=config.pop_fraction,
            seat_fraction=config.seat_fraction,
            blocking_members=config.blocking_members,
            include_blocking=config.include_blocking,
        ),
        partition=partition,
    )


def builtin_scenario(name: str) -> Scenario:
    table, config = fixtures.fixture(name)
    return make_scenario(table, config)


def scenario_game(scenario: Scenario) -> VotingGame:
    """Merge the scenario's blocs (if any), then build its QMV game."""
    roster = scenario.roster
    if scenario.partition is not None:
        roster = merge_blocs(roster, scenario.partition)
    return build_qmv(
        roster,
        pop_fraction=scenario.options.pop_fraction,
        seat_fraction=scenario.options.seat_fraction,
        blocking_members=scenario.options.blocking_members,
        include_blocking=scenario.options.include_blocking,
    )


def with_bloc(scenario: Scenario, bloc_id: str) -> Scenario:
    """Scenario with one more bloc applied.

    A bloc the scenario's partition already contains (e.g. declared in
    its config file) is accepted as a no-op; anything else resolves
    against the package-wide presets.
    """
    if scenario.partition is not None and any(
        b.id == bloc_id for b in scenario.partition.blocs
    ):
        return scenario
    bloc = BLOC_PRESETS.get(bloc_id)
    if bloc is None:
        raise InputError(
            f"unknown bloc preset {bloc_id!r}; known: {', '.join(sorted(BLOC_PRESETS))}"
        )
    roster_ids = set(scenario.roster.ids())
    missing = [m for m in bloc.members if m not in roster_ids]
    if missing:
        raise InputError(
            f"bloc {bloc_id!r} member(s) {missing} not in scenario {scenario.name!r}"
        )
    existing = scenario.partition.blocs if scenario.partition else ()
    return replace(scenario, partition=BlocPartition(existing + (bloc,)))


def bloc_power(scenario: Scenario, bloc_id: str, memory_budget: int | None = None) -> PowerResult:
    """Both index families for the scenario with the given bloc merged in."""
    game = scenario_game(with_bloc(scenario, bloc_id))
    if memory_budget is None:
        return engine.compute_all(game)
    return engine.compute_all(game, memory_budget=memory_budget)


@dataclass(frozen=True)
class FamilyDiff:
    """Before/after pair for one index family, all exact rationals."""

    before: Fraction
    after: Fraction

    @property
    def pp_diff(self) -> Fraction:
        """Change in percentage points: (after - before) * 100."""
        return (self.after - self.before) * 100

    @property
    def rel_diff(self) -> Fraction | None:
        """Relative change in percent, None when the base index is zero."""
        if self.before == 0:
            return None
        return self.pp_diff / self.before


@dataclass(frozen=True)
class DiffRow:
    id: str
    name: str
    banzhaf: FamilyDiff | None
    shapley_shubik: FamilyDiff | None

    def family(self, family: str) -> FamilyDiff | None:
        if family == BANZHAF:
            return self.banzhaf
        if family == SHAPLEY_SHUBIK:
            return self.shapley_shubik
        raise InputError(f"unknown index family {family!r}")


@dataclass(frozen=True)
class DiffReport:
    """Per-incumbent power changes between two computed games."""

    base_name: str
    target_name: str
    rows: tuple[DiffRow, ...]
    entrants: tuple[tuple[str, str], ...]  # (id, name) only in target
    departed: tuple[tuple[str, str], ...]  # (id, name) only in base


def compare(
    base: PowerResult,
    target: PowerResult,
    base_name: str = "base",
    target_name: str = "target",
) -> DiffReport:
    """Diff two power results voter-by-voter.

    Incumbents (present in both) get exact pp and relative diffs per
    family; voters only in the target are listed as entrants, voters
    only in the base as departed.
    """
    base_ids = {e.id for e in base.entries}
    target_by_id = {e.id: e for e in target.entries}
    rows: list[DiffRow] = []
    departed: list[tuple[str, str]] = []
    for b in base.entries:
        t = target_by_id.get(b.id)
        if t is None:
            departed.append((b.id, b.name))
            continue
        banzhaf = None
        if b.banzhaf_index is not None and t.banzhaf_index is not None:
            banzhaf = FamilyDiff(before=b.banzhaf_index, after=t.banzhaf_index)
        shapley = None
        if b.shapley_shubik is not None and t.shapley_shubik is not None:
            shapley = FamilyDiff(before=b.shapley_shubik, after=t.shapley_shubik)
        rows.append(DiffRow(id=b.id, name=b.name, banzhaf=banzhaf, shapley_shubik=shapley))
    if not rows:
        raise InputError(
            f"no common voters between {base_name!r} and {target_name!r}"
        )
    entrants = tuple((e.id, e.name) for e in target.entries if e.id not in base_ids)
    return DiffReport(
        base_name=base_name,
        target_name=target_name,
        rows=tuple(rows),
        entrants=entrants,
        departed=tuple(departed),
    )


@dataclass(frozen=True)
class ParadoxGain:
    voter_id: str
    name: str
    family: str
    pp_diff: Fraction


@dataclass(frozen=True)
class ParadoxReport:
    """Incumbents whose index strictly rose across an enlargement."""

    gainers: tuple[ParadoxGain, ...]
    note: str | None = None


def detect_paradox(report: DiffReport) -> ParadoxReport:
    """Find incumbents that gained power from an enlargement.

    Only meaningful when the target added voters; without entrants the
    result is empty with an explanatory note.
    """
    if not report.entrants:
        return ParadoxReport(
            gainers=(),
            note="no entrants in this comparison; gains would not be an "
            "enlargement effect",
        )
    gainers: list[ParadoxGain] = []
    for family in FAMILIES:
        for row in report.rows:
            diff = row.family(family)
            if diff is not None and diff.pp_diff > 0:
                gainers.append(
                    ParadoxGain(
                        voter_id=row.id, name=row.name, family=family, pp_diff=diff.pp_diff
                    )
                )
    return ParadoxReport(gainers=tuple(gainers))


# Published reference values for the Nordic bloc under the 27-member
# scenario disagree between the tabular and the chart rendition of the
# same dataset; both candidates are kept as data and the exact
# computation reports which (if either) it confirms.
NORDIC_EU27_CANDIDATES = (
    ("tabular source", Fraction(1495, 100), Fraction(1072, 100)),
    ("chart source", Fraction(1755, 100), Fraction(1335, 100)),
)


def nordic_reference_annotation(
    result: PowerResult, tolerance_pp: Fraction = Fraction(20, 100)
) -> str:
    """One-line verdict on the conflicting Nordic reference values.

    Takes a power result for the 27-member scenario with the ``nordic``
    bloc merged; compares the bloc's computed percentages against both
    recorded candidates at the given percentage-point tolerance.
    """
    entry = result.entry("nordic")
    if entry.banzhaf_index is None or entry.shapley_shubik is None:
        raise InputError("annotation needs both index families computed")
    banzhaf_pct = entry.banzhaf_index * 100
    shapley_pct = entry.shapley_shubik * 100
    matches = [
        label
        for label, b_ref, s_ref in NORDIC_EU27_CANDIDATES
        if abs(banzhaf_pct - b_ref) <= tolerance_pp and abs(shapley_pct - s_ref) <= tolerance_pp
    ]
    def fmt(x: Fraction) -> str:
        return f"{float(x):.2f}"
    computed = f"computed {fmt(banzhaf_pct)} (banzhaf) / {fmt(shapley_pct)} (shapley-shubik)"
    candidates = "; ".join(
        f"{label}: {fmt(b)} / {fmt(s)}" for label, b, s in NORDIC_EU27_CANDIDATES
    )
    if matches:
        verdict = f"matches the {' and '.join(matches)} within {fmt(tolerance_pp)} pp"
    else:
        verdict = f"matches neither candidate within {fmt(tolerance_pp)} pp"
    return (
        f"nordic bloc, 27-member scenario: reference values disagree ({candidates}); "
        f"{computed} {verdict}"
    )
