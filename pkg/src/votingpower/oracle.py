"""Brute-force reference: power indices by full coalition enumeration.

Walks all 2^n coalitions of a game, evaluating the rule tree on per-mask
weight sums.  Deliberately shares no counting machinery with the
generating-function engine so the two can validate each other; only the
rule-tree datatype and the result container are common.  Guarded by an
explicit player limit to keep accidental 2^36 enumerations out of test
runs.

The weight-sum tables are built by bit-doubling over mask-indexed numpy
arrays, which keeps n = 22..26 runs at desk scale.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .engine import PowerResult, VoterPower
from .errors import NormalizationError, ResourceLimitError
from .game import And, RuleExpr, VotingGame, WeightedRule, WeightKind

DEFAULT_PLAYER_LIMIT = 22


def _subset_sums(weights: list[int], dtype=np.int64) -> np.ndarray:
    """sums[mask] = total weight of the voters whose bits are set in mask."""
    n = len(weights)
    sums = np.zeros(1 << n, dtype=dtype)
    for i, w in enumerate(weights):
        block = sums.reshape(-1, 2, 1 << i)
        block[:, 1, :] = block[:, 0, :] + w
    return sums


def _wins(expr: RuleExpr, seat_sums: np.ndarray, pop_sums: np.ndarray) -> np.ndarray:
    if isinstance(expr, WeightedRule):
        sums = seat_sums if expr.kind is WeightKind.SEATS else pop_sums
        return sums >= expr.quota
    parts = [_wins(c, seat_sums, pop_sums) for c in expr.children]
    combine = np.logical_and if isinstance(expr, And) else np.logical_or
    out = parts[0]
    for p in parts[1:]:
        out = combine(out, p)
    return out


def _check_limit(game: VotingGame, limit: int, what: str) -> None:
    if game.n > limit:
        raise ResourceLimitError(
            f"{what}: {game.n} players exceeds the enumeration limit of {limit}; "
            f"pass a higher limit explicitly to force a 2^{game.n} sweep"
        )


def _swing_counts(game: VotingGame) -> list[np.ndarray]:
    """Per voter i: counts[t] of coalitions S (i not in S, |S| = t) that
    lose as-is and win once i joins."""
    voters = game.roster.voters
    n = len(voters)
    seat_sums = _subset_sums([v.seat_weight for v in voters])
    pop_sums = _subset_sums([v.pop_weight for v in voters])
    win = _wins(game.expr, seat_sums, pop_sums)
    sizes = _subset_sums([1] * n, dtype=np.int8)
    swings: list[np.ndarray] = []
    for i in range(n):
        w = win.reshape(-1, 2, 1 << i)
        s = sizes.reshape(-1, 2, 1 << i)
        crit = w[:, 1, :] & ~w[:, 0, :]
        swings.append(np.bincount(s[:, 0, :][crit], minlength=n))
    return swings


def _result(game: VotingGame, swings: list[np.ndarray], banzhaf: bool, shapley: bool) -> PowerResult:
    n = game.n
    scores = [int(g.sum()) for g in swings]
    total = sum(scores)
    if total == 0:
        raise NormalizationError("no voter is critical in any coalition")
    fact = [math.factorial(k) for k in range(n + 1)]
    entries = []
    for voter, g, eta in zip(game.roster.voters, swings, scores):
        phi = None
        if shapley:
            numer = sum(fact[t] * fact[n - 1 - t] * int(g[t]) for t in range(n))
            phi = Fraction(numer, fact[n])
        entries.append(
            VoterPower(
                id=voter.id,
                name=voter.name,
                banzhaf_score=eta if banzhaf else None,
                banzhaf_value=Fraction(eta, 1 << (n - 1)) if banzhaf else None,
                banzhaf_index=Fraction(eta, total) if banzhaf else None,
                shapley_shubik=phi,
            )
        )
    return PowerResult(game=game, entries=tuple(entries))


def oracle_banzhaf(game: VotingGame, limit: int = DEFAULT_PLAYER_LIMIT) -> PowerResult:
    """Exact Banzhaf scores/values/indices by enumerating every coalition."""
    _check_limit(game, limit, "oracle_banzhaf")
    return _result(game, _swing_counts(game), banzhaf=True, shapley=False)


def oracle_shapley(game: VotingGame, limit: int = DEFAULT_PLAYER_LIMIT) -> PowerResult:
    """Exact Shapley-Shubik indices by subset-based pivot counting."""
    _check_limit(game, limit, "oracle_shapley")
    return _result(game, _swing_counts(game), banzhaf=False, shapley=True)


def oracle_all(game: VotingGame, limit: int = DEFAULT_PLAYER_LIMIT) -> PowerResult:
    """Both index families from a single enumeration pass."""
    _check_limit(game, limit, "oracle_all")
    return _result(game, _swing_counts(game), banzhaf=True, shapley=True)
