"""Parsing and serialization of population tables and scenario files.

Population CSV
    Header line ``id,name,pop`` or ``id,name,pop,seats``; one voter per
    row; weights are integers (seats defaults to 1).  Lines starting
    with ``#`` are comments; a ``# unit: <label>`` comment declares the
    population unit.  UTF-8 throughout.

Scenario file
    Line-oriented ``key = value`` pairs.  Keys:

    ================== =================================================
    name               scenario name
    members            space-separated voter ids
    bloc.<id>          space-separated member ids forming a voting bloc
    pop_fraction       population threshold as ``num/den``
    seat_fraction      member-state threshold as ``num/den``
    blocking_members   minimum size of a blocking minority (integer)
    include_blocking   ``true`` or ``false``
    ================== =================================================

    Defaults: 65/100 population, 55/100 seats, 4 blocking members,
    blocking rule off.

Both loaders reject malformed lines with their line number; duplicate
ids, overlapping blocs, and negative weights are reported as validation
errors naming the offender.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .game import (
    DEFAULT_BLOCKING_MEMBERS,
    DEFAULT_POP_FRACTION,
    DEFAULT_SEAT_FRACTION,
    Bloc,
    BlocPartition,
    Voter,
)

DEFAULT_UNIT = "weight units"


@dataclass(frozen=True)
class PopulationTable:
    """Validated voter rows plus the unit the population column is in."""

    rows: tuple[Voter, ...]
    unit: str = DEFAULT_UNIT

    def __post_init__(self):
        if not self.rows:
            raise ValidationError("population table must have at least one row")
        seen = set()
        for row in self.rows:
            if row.id in seen:
                raise ValidationError(f"duplicate voter id {row.id!r}")
            seen.add(row.id)

    @property
    def total_pop(self) -> int:
        return sum(r.pop_weight for r in self.rows)

    def get(self, voter_id: str) -> Voter:
        for r in self.rows:
            if r.id == voter_id:
                return r
        raise ValidationError(f"unknown voter id {voter_id!r}")

    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.rows)


@dataclass(frozen=True)
class ScenarioConfig:
    """A named selection of voters plus qualified-majority options."""

    name: str
    members: tuple[str, ...]
    blocs: tuple[Bloc, ...] = ()
    pop_fraction: Fraction = DEFAULT_POP_FRACTION
    seat_fraction: Fraction = DEFAULT_SEAT_FRACTION
    blocking_members: int = DEFAULT_BLOCKING_MEMBERS
    include_blocking: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValidationError("scenario must have a name")
        if not self.members:
            raise ValidationError("scenario must list at least one member")
        seen = set()
        for m in self.members:
            if m in seen:
                raise ValidationError(f"member {m!r} listed twice")
            seen.add(m)
        BlocPartition(self.blocs)  # enforces disjointness
        for bloc in self.blocs:
            outside = [m for m in bloc.members if m not in seen]
            if outside:
                raise ValidationError(
                    f"bloc {bloc.id!r} references non-member voter(s): {outside}"
                )


def _int_field(raw: str, line_no: int, column: int, what: str) -> int:
    text = raw.strip()
    if not text or not (text.isdigit() or (text[0] == "-" and text[1:].isdigit())):
        raise ParseError(line_no, f"{what} must be an integer, got {raw!r}", column)
    return int(text)


def load_population_table(text: str) -> PopulationTable:
    """Parse a population CSV into a validated table."""
    unit = DEFAULT_UNIT
    rows: list[Voter] = []
    header_seen = False
    seen_ids: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("unit:"):
                unit = body[5:].strip()
            continue
        parts = [p.strip() for p in line.split(",")]
        if not header_seen:
            if parts not in (["id", "name", "pop"], ["id", "name", "pop", "seats"]):
                raise ParseError(
                    line_no, f"expected header 'id,name,pop[,seats]', got {line!r}"
                )
            header_seen = True
            continue
        if len(parts) not in (3, 4):
            raise ParseError(line_no, f"expected 3 or 4 fields, got {len(parts)}")
        voter_id, name = parts[0], parts[1]
        if not voter_id:
            raise ParseError(line_no, "empty voter id", column=1)
        pop = _int_field(parts[2], line_no, 3, "pop")
        seats = _int_field(parts[3], line_no, 4, "seats") if len(parts) == 4 else 1
        if pop < 0:
            raise ValidationError(f"line {line_no}: pop weight must be >= 0, got {pop}")
        if seats < 1:
            raise ValidationError(f"line {line_no}: seat weight must be >= 1, got {seats}")
        if voter_id in seen_ids:
            raise ValidationError(
                f"line {line_no}: duplicate voter id {voter_id!r} "
                f"(first seen on line {seen_ids[voter_id]})"
            )
        seen_ids[voter_id] = line_no
        rows.append(Voter(voter_id, name, pop, seats))
    if not header_seen:
        raise ParseError(1, "missing header line 'id,name,pop[,seats]'")
    if not rows:
        raise ValidationError("population table must have at least one row")
    return PopulationTable(rows=tuple(rows), unit=unit)


def serialize_population_table(table: PopulationTable) -> str:
    """Inverse of :func:`load_population_table` up to comments."""
    lines = [f"# unit: {table.unit}", "id,name,pop,seats"]
    for r in table.rows:
        lines.append(f"{r.id},{r.name},{r.pop_weight},{r.seat_weight}")
    return "\n".join(lines) + "\n"


def _parse_fraction(raw: str, line_no: int) -> Fraction:
    parts = raw.split("/")
    if len(parts) != 2:
        raise ParseError(line_no, f"expected 'num/den', got {raw!r}")
    num = _int_field(parts[0], line_no, 1, "numerator")
    den = _int_field(parts[1], line_no, 2, "denominator")
    if den <= 0:
        raise ParseError(line_no, f"denominator must be positive, got {den}")
    return Fraction(num, den)


def load_scenario_config(text: str) -> ScenarioConfig:
    """Parse a scenario file into a validated config with defaults filled."""
    values: dict[str, object] = {}
    blocs: list[Bloc] = []
    seen_keys: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(line_no, f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in seen_keys:
            raise ParseError(
                line_no, f"key {key!r} already set on line {seen_keys[key]}"
            )
        seen_keys[key] = line_no
        if key == "name":
            values["name"] = value
        elif key == "members":
            values["members"] = tuple(value.split())
        elif key.startswith("bloc."):
            bloc_id = key[5:]
            if not bloc_id:
                raise ParseError(line_no, "bloc key needs a name after 'bloc.'")
            members = tuple(value.split())
            if not members:
                raise ParseError(line_no, f"bloc {bloc_id!r} lists no members")
            blocs.append(Bloc(id=bloc_id, name=bloc_id, members=members))
        elif key == "pop_fraction":
            values["pop_fraction"] = _parse_fraction(value, line_no)
        elif key == "seat_fraction":
            values["seat_fraction"] = _parse_fraction(value, line_no)
        elif key == "blocking_members":
            values["blocking_members"] = _int_field(value, line_no, 1, "blocking_members")
        elif key == "include_blocking":
            if value not in ("true", "false"):
                raise ParseError(line_no, f"include_blocking must be true|false, got {value!r}")
            values["include_blocking"] = value == "true"
        else:
            raise ParseError(line_no, f"unknown key {key!r}")
    if "name" not in values:
        raise ValidationError("scenario file must set 'name'")
    if "members" not in values:
        raise ValidationError("scenario file must set 'members'")
    return ScenarioConfig(blocs=tuple(blocs), **values)  # type: ignore[arg-type]


def serialize_scenario_config(config: ScenarioConfig) -> str:
    """Inverse of :func:`load_scenario_config` up to comments."""
    lines = [
        f"name = {config.name}",
        f"members = {' '.join(config.members)}",
        f"pop_fraction = {config.pop_fraction.numerator}/{config.pop_fraction.denominator}",
        f"seat_fraction = {config.seat_fraction.numerator}/{config.seat_fraction.denominator}",
        f"blocking_members = {config.blocking_members}",
        f"include_blocking = {'true' if config.include_blocking else 'false'}",
    ]
    for bloc in config.blocs:
        lines.append(f"bloc.{bloc.id} = {' '.join(bloc.members)}")
    return "\n".join(lines) + "\n"
