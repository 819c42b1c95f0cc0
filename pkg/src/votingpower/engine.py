"""Exact power indices via dynamic programming over weight grids.

For each voter i the engine counts, without enumerating them, the
coalitions of the remaining voters by (player count t, excess seat
weight e, population weight w).  Seat weight decomposes as t + e
because almost every voter holds exactly one seat; only merged blocs
contribute excess, so the e axis stays tiny and the table is close to
(n x W) instead of (n x W x n).  A coalition cell is a swing for i
exactly when the rule tree rejects (t + e, w) but accepts the cell
shifted by i's own weights; the tree is evaluated once per (seats, pop)
cell on a boolean grid, never per coalition.

Counts are plain int64 (safe up to 62 players; a guard refuses more),
and everything downstream of the counts is exact: Banzhaf values and
indices as Fractions of big integers, Shapley-Shubik via factorial
weights over the per-size swing counts.  Rounding happens only at
rendering.

Per-voter tables are rebuilt from scratch rather than divided out of a
global table; at n <= 36 the n-fold rebuild is cheap and avoids the
error-prone sparse polynomial division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NormalizationError, ResourceLimitError
from .game import And, Or, RuleExpr, VotingGame, WeightedRule, WeightKind

DEFAULT_MEMORY_BUDGET = 256 * 1024 * 1024  # bytes per swing table
_MAX_PLAYERS = 62  # int64 holds every count up to 2^61 cells summing to 2^61


@dataclass(frozen=True)
class VoterPower:
    """Power of one voter; fields are None for families not computed."""

    id: str
    name: str
    banzhaf_score: int | None = None
    banzhaf_value: Fraction | None = None
    banzhaf_index: Fraction | None = None
    shapley_shubik: Fraction | None = None


@dataclass(frozen=True)
class PowerResult:
    """Per-voter indices in roster order, plus the game they belong to."""

    game: VotingGame
    entries: tuple[VoterPower, ...]

    @property
    def n(self) -> int:
        return self.game.n

    @property
    def quotas(self) -> tuple[tuple[str, int], ...]:
        """(weight kind, quota) for every threshold leaf of the game."""
        from .game import expr_leaves

        return tuple((leaf.kind.value, leaf.quota) for leaf in expr_leaves(self.game.expr))

    @property
    def has_banzhaf(self) -> bool:
        return self.entries[0].banzhaf_index is not None

    @property
    def has_shapley(self) -> bool:
        return self.entries[0].shapley_shubik is not None

    def entry(self, voter_id: str) -> VoterPower:
        for e in self.entries:
            if e.id == voter_id:
                return e
        raise KeyError(voter_id)

    def banzhaf_index(self, voter_id: str) -> Fraction:
        index = self.entry(voter_id).banzhaf_index
        if index is None:
            raise ValueError("Banzhaf family not computed for this result")
        return index

    def shapley_index(self, voter_id: str) -> Fraction:
        phi = self.entry(voter_id).shapley_shubik
        if phi is None:
            raise ValueError("Shapley-Shubik family not computed for this result")
        return phi


@dataclass(frozen=True)
class SwingTable:
    """Coalition counts over N minus one voter, by (size, excess seats, pop).

    counts[t, e, w] is the number of coalitions with t players whose
    seat weight is t + e and population weight is w.  Cells sum to
    2^(n-1) exactly.
    """

    voter_id: str
    counts: np.ndarray

    @property
    def total_coalitions(self) -> int:
        return int(self.counts.sum())


def _win_grid(expr: RuleExpr, total_seats: int, total_pop: int) -> np.ndarray:
    """Boolean win[s, w] for every aggregate weight pair of the roster."""
    s = np.arange(total_seats + 1)[:, None]
    w = np.arange(total_pop + 1)[None, :]

    def rec(node: RuleExpr) -> np.ndarray:
        if isinstance(node, WeightedRule):
            axis = s if node.kind is WeightKind.SEATS else w
            return axis >= node.quota
        parts = [rec(c) for c in node.children]
        combine = np.logical_and if isinstance(node, And) else np.logical_or
        out = parts[0]
        for p in parts[1:]:
            out = combine(out, p)
        return out

    return np.broadcast_to(rec(expr), (total_seats + 1, total_pop + 1))


def _count_table(game: VotingGame, excluded: int, memory_budget: int) -> np.ndarray:
    """DP table counts[t, e, w] over coalitions of the roster minus one voter."""
    voters = game.roster.voters
    n = len(voters)
    width = game.roster.total_pop + 1
    excess = sum(v.seat_weight - 1 for i, v in enumerate(voters) if i != excluded)
    nbytes = n * (excess + 1) * width * 8
    if nbytes > memory_budget:
        raise ResourceLimitError(
            f"swing table needs {n} sizes x {excess + 1} excess-seat levels x "
            f"{width} population cells = {nbytes} bytes, over the "
            f"{memory_budget}-byte budget"
        )
    table = np.zeros((n, excess + 1, width), dtype=np.int64)
    table[0, 0, 0] = 1
    added = 0
    for j, v in enumerate(voters):
        if j == excluded:
            continue
        added += 1
        wj, ej = v.pop_weight, v.seat_weight - 1
        for t in range(min(added, n - 1), 0, -1):
            table[t, ej:, wj:] += table[t - 1, : excess + 1 - ej, : width - wj]
    return table


def _swings_by_size(
    table: np.ndarray, win: np.ndarray, seat_i: int, pop_i: int
) -> np.ndarray:
    """g[t] = number of size-t coalitions losing without i and winning with i."""
    n, levels, width = table.shape
    valid = width - pop_i  # cells beyond total_pop - pop_i hold no coalitions
    g = np.zeros(n, dtype=np.int64)
    for t in range(n):
        plane = table[t]
        if not plane.any():
            continue
        for e in range(levels):
            s = t + e
            crit = win[s + seat_i, pop_i:] & ~win[s, :valid]
            g[t] += int(plane[e, :valid] @ crit)
    return g


def swing_table(
    game: VotingGame, voter_id: str, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> SwingTable:
    """Expose one voter's coalition-count table (mainly for validation)."""
    ids = game.roster.ids()
    if voter_id not in ids:
        raise KeyError(voter_id)
    return SwingTable(
        voter_id=voter_id,
        counts=_count_table(game, ids.index(voter_id), memory_budget),
    )


def _compute(
    game: VotingGame, want_banzhaf: bool, want_shapley: bool, memory_budget: int
) -> PowerResult:
    voters = game.roster.voters
    n = len(voters)
    if n > _MAX_PLAYERS:
        raise ResourceLimitError(
            f"{n} players exceeds the {_MAX_PLAYERS}-player int64 counting range"
        )
    win = _win_grid(game.expr, game.roster.total_seats, game.roster.total_pop)
    swings = []
    for i, v in enumerate(voters):
        table = _count_table(game, i, memory_budget)
        swings.append(_swings_by_size(table, win, v.seat_weight, v.pop_weight))
    scores = [int(g.sum()) for g in swings]
    total = sum(scores)
    if total == 0:
        raise NormalizationError("no voter is critical in any coalition")
    fact = [math.factorial(k) for k in range(n + 1)]
    entries = []
    for v, g, eta in zip(voters, swings, scores):
        phi = None
        if want_shapley:
            numer = sum(fact[t] * fact[n - 1 - t] * int(g[t]) for t in range(n))
            phi = Fraction(numer, fact[n])
        entries.append(
            VoterPower(
                id=v.id,
                name=v.name,
                banzhaf_score=eta if want_banzhaf else None,
                banzhaf_value=Fraction(eta, 1 << (n - 1)) if want_banzhaf else None,
                banzhaf_index=Fraction(eta, total) if want_banzhaf else None,
                shapley_shubik=phi,
            )
        )
    return PowerResult(game=game, entries=tuple(entries))


def banzhaf(game: VotingGame, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PowerResult:
    """Banzhaf scores, values, and normalised indices, all exact."""
    return _compute(game, want_banzhaf=True, want_shapley=False, memory_budget=memory_budget)


def shapley_shubik(game: VotingGame, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PowerResult:
    """Shapley-Shubik indices as exact rationals."""
    return _compute(game, want_banzhaf=False, want_shapley=True, memory_budget=memory_budget)


def compute_all(game: VotingGame, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PowerResult:
    """Both families from one pass over shared swing tables."""
    return _compute(game, want_banzhaf=True, want_shapley=True, memory_budget=memory_budget)
