"""Bundled rosters for the EU Council analysis and a 1958 regression case.

Provenance of the numbers
    The 27-member roster stores each country's published 2023 population
    share, quantized to 0.01% (about the Eurostat shares rounded to two
    decimals), as an integer number of centi-percent units: Germany
    18.81% -> 1881.  The shares sum to 99.99%, so the roster total is
    9999 units rather than 10000; quotas are always computed from the
    actual total.

    Candidate-country weights are derived, not copied: the source
    dataset publishes each candidate's share of the *enlarged* total
    plus the growth of the total itself (+3.9% for the six Western
    Balkan states, +14.5% once Ukraine, Moldova, and Georgia join), so a
    candidate's weight in 27-member units is

        round(share * growth * 9999)

    computed in exact rational arithmetic (ties to even; none occur).
    :func:`derive_candidate_weight` is that step, re-runnable as data
    changes.  Incumbent weights are identical across the 27-, 33-, and
    36-member rosters; only the totals differ.

    The 1958 case reproduces the six-member Council of the European
    Economic Community: vote weights 4, 4, 4, 2, 2, 1 and a decision
    quota of 12 of the 17 votes.  Both weight columns carry the vote
    weights and both thresholds are set to 12/17, which makes the
    double rule collapse to the single historical vote rule; it is the
    canonical null-player regression (Luxembourg can never swing a
    decision).
"""

from __future__ import annotations

from fractions import Fraction

from .dataio import PopulationTable, ScenarioConfig
from .errors import InputError
from .game import Voter

# (id, name, population share in centi-percent of the 27-member total)
EU27_ROWS = (
    ("DE", "Germany", 1881),
    ("FR", "France", 1518),
    ("IT", "Italy", 1312),
    ("ES", "Spain", 1072),
    ("PL", "Poland", 820),
    ("RO", "Romania", 425),
    ("NL", "Netherlands", 397),
    ("BE", "Belgium", 262),
    ("CZ", "Czech Republic", 241),
    ("SE", "Sweden", 235),
    ("PT", "Portugal", 233),
    ("EL", "Greece", 232),
    ("HU", "Hungary", 214),
    ("AT", "Austria", 203),
    ("BG", "Bulgaria", 144),
    ("DK", "Denmark", 132),
    ("FI", "Finland", 124),
    ("SK", "Slovakia", 121),
    ("IE", "Ireland", 116),
    ("HR", "Croatia", 86),
    ("LT", "Lithuania", 64),
    ("SI", "Slovenia", 47),
    ("LV", "Latvia", 42),
    ("EE", "Estonia", 30),
    ("CY", "Cyprus", 21),
    ("LU", "Luxembourg", 15),
    ("MT", "Malta", 12),
)

EU27_TOTAL = sum(pop for _, _, pop in EU27_ROWS)  # 9999 centi-percent units

# Western Balkan candidates: published share of the 33-member total, in
# centi-percent; joining grows the total population by 3.9%.
BALKAN_SHARES = (
    ("RS", "Serbia", 149),
    ("BA", "Bosnia and Herzegovina", 71),
    ("AL", "Albania", 61),
    ("MK", "North Macedonia", 45),
    ("XK", "Kosovo", 38),
    ("ME", "Montenegro", 13),
)
BALKAN_GROWTH = Fraction(1039, 1000)

# Ukraine, Georgia, Moldova: published share of the 36-member total, in
# centi-percent; the two enlargements together grow the total by 14.5%.
TRIO_SHARES = (
    ("UA", "Ukraine", 799),
    ("GE", "Georgia", 73),
    ("MD", "Moldova", 49),
)
TRIO_GROWTH = Fraction(1145, 1000)

EEC1958_ROWS = (
    ("FR", "France", 4),
    ("DE", "Germany", 4),
    ("IT", "Italy", 4),
    ("BE", "Belgium", 2),
    ("NL", "Netherlands", 2),
    ("LU", "Luxembourg", 1),
)

POP_UNIT = "centi-percent of the 27-member total population"


def derive_candidate_weight(share_centipercent: int, growth: Fraction) -> int:
    """Candidate weight in 27-member units from its post-enlargement share.

    share * growth * base_total, rounded half-to-even in exact rational
    arithmetic.  The share is a fraction of the enlarged total, so the
    growth factor converts it back onto the incumbent grid.
    """
    return round(Fraction(share_centipercent, 10_000) * growth * EU27_TOTAL)


def _eu27_voters() -> tuple[Voter, ...]:
    return tuple(Voter(i, n, p) for i, n, p in EU27_ROWS)


def _balkan_voters() -> tuple[Voter, ...]:
    return tuple(
        Voter(i, n, derive_candidate_weight(s, BALKAN_GROWTH)) for i, n, s in BALKAN_SHARES
    )


def _trio_voters() -> tuple[Voter, ...]:
    return tuple(
        Voter(i, n, derive_candidate_weight(s, TRIO_GROWTH)) for i, n, s in TRIO_SHARES
    )


def fixture(name: str) -> tuple[PopulationTable, ScenarioConfig]:
    """Bundled (population table, scenario config) pair.

    Known names: ``eu27``, ``eu33``, ``eu36``, ``eec1958``.
    """
    if name == "eu27":
        rows = _eu27_voters()
        table = PopulationTable(rows=rows, unit=POP_UNIT)
        config = ScenarioConfig(name="eu27", members=table.ids())
        return table, config
    if name == "eu33":
        rows = _eu27_voters() + _balkan_voters()
        table = PopulationTable(rows=rows, unit=POP_UNIT)
        config = ScenarioConfig(name="eu33", members=table.ids())
        return table, config
    if name == "eu36":
        rows = _eu27_voters() + _balkan_voters() + _trio_voters()
        table = PopulationTable(rows=rows, unit=POP_UNIT)
        config = ScenarioConfig(name="eu36", members=table.ids())
        return table, config
    if name == "eec1958":
        rows = tuple(Voter(i, n, w, w) for i, n, w in EEC1958_ROWS)
        table = PopulationTable(rows=rows, unit="council votes")
        config = ScenarioConfig(
            name="eec1958",
            members=table.ids(),
            pop_fraction=Fraction(12, 17),
            seat_fraction=Fraction(12, 17),
        )
        return table, config
    raise InputError(f"unknown fixture {name!r}; known: eu27, eu33, eu36, eec1958")


FIXTURE_NAMES = ("eu27", "eu33", "eu36", "eec1958")
