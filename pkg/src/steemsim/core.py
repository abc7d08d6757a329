"""Shared domain types and the ideal-order reference computation.

A simulated feed is a list of posts identified by dense integer ids
0..P-1, voted on by players with dense ids 0..N-1. Each player holds a
subjective likability value in [0, 1] for each post; the sum of a post's
likabilities over all players is its ideal score, and the list sorted by
descending ideal score (ties broken by ascending post id) is the ideal
order that curation quality is measured against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class ConfigError(ValueError):
    """Invalid configuration: bad parameter values, dimension mismatches."""


@dataclass(frozen=True)
class SystemParams:
    """Mechanism constants for one simulation.

    ``vote_scale`` and ``vote_offset`` are the linear coefficients of the
    vote-value rule; ``regen`` is the fraction of full Voting Power
    restored per round. ``attention_span`` is how many top list entries a
    player inspects when choosing a vote.
    """

    num_players: int
    num_rounds: int
    num_posts: int
    attention_span: int
    vote_scale: float
    vote_offset: float
    regen: float

    def __post_init__(self) -> None:
        if self.num_players < 1:
            raise ConfigError("num_players must be >= 1")
        if self.num_rounds < 0:
            raise ConfigError("num_rounds must be >= 0")
        if self.num_posts < 1:
            raise ConfigError("num_posts must be >= 1")
        if not 1 <= self.attention_span <= self.num_posts:
            raise ConfigError("attention_span must be in [1, num_posts]")
        for name in ("vote_scale", "vote_offset", "regen"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite")
        if self.vote_scale <= 0:
            raise ConfigError("vote_scale must be > 0")
        if self.vote_offset < 0:
            raise ConfigError("vote_offset must be >= 0")
        if self.regen <= 0:
            raise ConfigError("regen must be > 0")


class LikabilityMatrix:
    """N x P array of per-(player, post) likability values in [0, 1].

    Immutable once constructed; rows are read-only numpy views.
    """

    def __init__(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("likability matrix must be 2-dimensional")
        if values.size and (np.min(values) < 0.0 or np.max(values) > 1.0):
            raise ValueError("likability values must lie in [0, 1]")
        values = values.copy()
        values.setflags(write=False)
        self._values = values

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def num_players(self) -> int:
        return self._values.shape[0]

    @property
    def num_posts(self) -> int:
        return self._values.shape[1]

    def row(self, player_id: int) -> np.ndarray:
        """Likability row for one player, indexed by post id."""
        return self._values[player_id]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LikabilityMatrix):
            return NotImplemented
        return self._values.shape == other._values.shape and bool(
            np.array_equal(self._values, other._values)
        )


@dataclass(frozen=True)
class Vote:
    """A (post, weight) pair; weight must lie in [0, 1]."""

    post_id: int
    weight: float


@dataclass
class PlayerState:
    """Per-player mechanism state.

    ``steem_power`` is fixed for the whole run; ``voting_power`` lives in
    [0, 1] and is spent by voting and restored by regeneration. ``voted``
    is the set of post ids this player has successfully voted on.
    """

    steem_power: float
    voting_power: float = 1.0
    voted: set[int] = field(default_factory=set)


@dataclass
class FeedState:
    """The shared post list: cumulative scores, current order, round count.

    ``order`` is a permutation of post ids with index 0 the top of the
    list, sorted by non-increasing score; ties keep their relative order
    from before the last re-sort (stable).
    """

    scores: list[float]
    order: list[int]
    round: int = 0


def ideal_score(likabilities_of_post: "list[float] | np.ndarray") -> float:
    """Sum of one post's likabilities over all players.

    Uses exactly-rounded summation so the result does not depend on
    player ordering. An empty input sums to 0.
    """
    return math.fsum(float(v) for v in likabilities_of_post)


def ideal_order(matrix: LikabilityMatrix) -> list[int]:
    """Post ids sorted by descending ideal score, ties by ascending id."""
    scores = [ideal_score(matrix.values[:, j]) for j in range(matrix.num_posts)]
    return sorted(range(matrix.num_posts), key=lambda j: (-scores[j], j))
