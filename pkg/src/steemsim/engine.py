"""The feed functionality: state, vote handling, and the round loop.

Each round regenerates every player's Voting Power once (capped at 1)
and then activates every player exactly once, in ascending player-id
order. An activated player sees the top entries of the current list that
she has not voted yet, and may cast one vote. An accepted vote with
pre-vote Voting Power V and weight w

* adds steem_power * (a*V*w + b) to the post's score, and
* costs the voter a*V + b of Voting Power (floored at 0),

with a = vote_scale and b = vote_offset. The cost is charged at the
full-weight rate regardless of w, so a full-power voter always needs
ceil((a+b)/regen) rounds before the next vote; that constant is what the
convergence analysis in :mod:`steemsim.analysis` is built on. After every
accepted vote the list is re-sorted by score, stably, so ties keep their
standing order.

Runs are strictly sequential and deterministic. ``run`` skips over
stretches of rounds in which provably nothing but regeneration happens
(no player could vote); the skip reproduces per-round behavior exactly
for the shipped policies (see :mod:`steemsim.strategies`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import ConfigError, FeedState, LikabilityMatrix, PlayerState, SystemParams, Vote, ideal_order
from .metrics import MetricsSample, kendall_tau, spearman_rho, t_ideal_rank
from .strategies import Policy


@dataclass
class EngineState:
    params: SystemParams
    feed: FeedState
    players: list[PlayerState]
    rng_seed: int = 0


@dataclass(frozen=True)
class VoteOutcome:
    accepted: bool
    score_delta: float
    vp_after: float


def init(
    params: SystemParams,
    steem_powers: Sequence[float],
    initial_order: Sequence[int],
    rng_seed: int = 0,
) -> EngineState:
    """Fresh state: zero scores, full Voting Power, empty voted sets."""
    if len(steem_powers) != params.num_players:
        raise ConfigError(
            f"expected {params.num_players} steem powers, got {len(steem_powers)}"
        )
    if any(sp < 0 for sp in steem_powers):
        raise ConfigError("steem powers must be >= 0")
    if sorted(initial_order) != list(range(params.num_posts)):
        raise ConfigError("initial_order must be a permutation of all post ids")
    feed = FeedState(
        scores=[0.0] * params.num_posts, order=list(initial_order), round=0
    )
    players = [PlayerState(steem_power=float(sp)) for sp in steem_powers]
    return EngineState(params=params, feed=feed, players=players, rng_seed=rng_seed)


def regenerate(state: EngineState) -> EngineState:
    """One round's worth of Voting Power recovery for every player."""
    regen = state.params.regen
    for player in state.players:
        if player.voting_power < 1.0:
            player.voting_power = min(1.0, player.voting_power + regen)
    return state


def visible_prefix(state: EngineState) -> list[tuple[int, int]]:
    """Top min(attention_span, num_posts) entries of the list, top first."""
    span = min(state.params.attention_span, state.params.num_posts)
    return [(post, pos) for pos, post in enumerate(state.feed.order[:span])]


def player_view(state: EngineState, player_id: int) -> list[tuple[int, int]]:
    """The list slice offered to one player when she is activated.

    The highest-ranked posts the player has not voted yet, at most
    attention_span of them; empty only once she has voted everything.
    """
    span = state.params.attention_span
    voted = state.players[player_id].voted
    view: list[tuple[int, int]] = []
    for pos, post in enumerate(state.feed.order):
        if post not in voted:
            view.append((post, pos))
            if len(view) == span:
                break
    return view


def reorder(feed: FeedState) -> FeedState:
    """Stable re-sort of the whole list by non-increasing score."""
    feed.order = sorted(feed.order, key=feed.scores.__getitem__, reverse=True)
    return feed


def _promote(feed: FeedState, post: int) -> None:
    """Move one post whose score just increased to its sorted position.

    Equivalent to :func:`reorder` when the list was sorted beforehand:
    entries above the post with a strictly smaller score slide down one;
    equal scores stay ahead of it (stability).
    """
    order = feed.order
    scores = feed.scores
    pos = order.index(post)
    s = scores[post]
    lo, hi = 0, pos
    while lo < hi:
        mid = (lo + hi) // 2
        if scores[order[mid]] < s:
            hi = mid
        else:
            lo = mid + 1
    if lo < pos:
        order[lo + 1 : pos + 1] = order[lo:pos]
        order[lo] = post


def handle_vote(
    state: EngineState, player_id: int, vote: Vote
) -> tuple[EngineState, VoteOutcome]:
    """Apply one vote: score the post, charge the voter, re-sort the list.

    A repeat vote on the same post by the same player is rejected and
    leaves the state untouched.
    """
    params = state.params
    if not 0 <= vote.post_id < params.num_posts:
        raise ValueError(f"invalid post id {vote.post_id}")
    if not 0.0 <= vote.weight <= 1.0:
        raise ValueError(f"vote weight {vote.weight} outside [0, 1]")
    player = state.players[player_id]
    if vote.post_id in player.voted:
        return state, VoteOutcome(False, 0.0, player.voting_power)
    vp = player.voting_power
    delta = player.steem_power * (params.vote_scale * vp * vote.weight + params.vote_offset)
    cost = params.vote_scale * vp + params.vote_offset
    state.feed.scores[vote.post_id] += delta
    player.voting_power = max(0.0, vp - cost)
    player.voted.add(vote.post_id)
    _promote(state.feed, vote.post_id)
    return state, VoteOutcome(True, delta, player.voting_power)


def _advance_round(state: EngineState, policies: Sequence[Policy]) -> int:
    """Regenerate, then activate every player once. Returns accepted votes."""
    regenerate(state)
    accepted = 0
    for player_id, policy in enumerate(policies):
        player = state.players[player_id]
        if policy.full_power_gated and player.voting_power < 1.0:
            continue
        decision = policy.decide(player_view(state, player_id), player)
        if decision is not None:
            _, outcome = handle_vote(state, player_id, decision)
            if outcome.accepted:
                accepted += 1
    state.feed.round += 1
    return accepted


def run_round(state: EngineState, policies: Sequence[Policy]) -> EngineState:
    """Execute the next round in place."""
    if state.feed.round >= state.params.num_rounds:
        raise ValueError("all rounds already executed")
    if len(policies) != state.params.num_players:
        raise ConfigError("one policy per player required")
    _advance_round(state, policies)
    return state


def _rounds_until_full(vp: float, regen: float) -> int:
    """Future rounds until a player is back at full power.

    Matches the engine's arithmetic exactly: advancing j rounds applies
    j-1 regenerations in bulk and one more inside the executed round.
    """
    if vp >= 1.0:
        return 0
    j = max(1, math.ceil((1.0 - vp) / regen))

    def full_at(steps: int) -> bool:
        bulk = min(1.0, vp + (steps - 1) * regen)
        return min(1.0, bulk + regen) >= 1.0

    while j > 1 and full_at(j - 1):
        j -= 1
    while not full_at(j):
        j += 1
    return j


def _skip_quiet_rounds(
    state: EngineState, policies: Sequence[Policy], limit: int
) -> int:
    """Bulk-apply regeneration across rounds in which nobody can vote.

    Valid right after a zero-vote round: the feed and voted sets are
    static, so the only decision input that can change is Voting Power,
    and only gated players below full power can flip to voting. Advances
    the round counter to just before the earliest such wake-up (or to
    ``limit``) and returns the number of rounds skipped.
    """
    current = state.feed.round
    wake = None
    for policy, player in zip(policies, state.players):
        if policy.full_power_gated and player.voting_power < 1.0:
            j = _rounds_until_full(player.voting_power, state.params.regen)
            if wake is None or j < wake:
                wake = j
    if wake is None:
        target = limit
    else:
        target = min(current + wake - 1, limit)
    k = target - current
    if k > 0:
        regen = state.params.regen
        for player in state.players:
            if player.voting_power < 1.0:
                player.voting_power = min(1.0, player.voting_power + k * regen)
        state.feed.round = target
    return k


def run(
    params: SystemParams,
    matrix: LikabilityMatrix,
    steem_powers: Sequence[float],
    initial_order: Sequence[int],
    policies: Sequence[Policy],
    sample_every: int = 1,
    rng_seed: int = 0,
) -> tuple[EngineState, list[MetricsSample]]:
    """Execute a full run and sample curation quality along the way.

    Samples are taken at round 0, every ``sample_every`` rounds, and at
    the final round. The whole run is a deterministic function of its
    arguments. For a single-post feed the correlation metrics are
    reported as 1.0 (a one-entry list is trivially in ideal order).
    """
    if sample_every < 1:
        raise ConfigError("sample_every must be >= 1")
    if len(policies) != params.num_players:
        raise ConfigError("one policy per player required")
    if matrix.num_players != params.num_players or matrix.num_posts != params.num_posts:
        raise ConfigError("likability matrix shape does not match params")
    state = init(params, steem_powers, initial_order, rng_seed=rng_seed)
    ideal = ideal_order(matrix)
    total_rounds = params.num_rounds

    cached: tuple[int, float, float] | None = None

    def current_metrics() -> tuple[int, float, float]:
        nonlocal cached
        if cached is None:
            order = state.feed.order
            t = t_ideal_rank(order, ideal)
            if params.num_posts >= 2:
                tau = kendall_tau(order, ideal)
                rho = spearman_rho(order, ideal)
            else:
                tau = rho = 1.0
            cached = (t, tau, rho)
        return cached

    samples: list[MetricsSample] = []

    def take_sample(round_no: int) -> None:
        t, tau, rho = current_metrics()
        samples.append(MetricsSample(round_no, t, tau, rho))

    take_sample(0)
    next_due = sample_every
    while state.feed.round < total_rounds:
        votes = _advance_round(state, policies)
        if votes:
            cached = None
        while next_due <= state.feed.round:
            take_sample(next_due)
            next_due += sample_every
        if votes == 0 and state.feed.round < total_rounds:
            _skip_quiet_rounds(state, policies, total_rounds)
            while next_due <= state.feed.round:
                take_sample(next_due)
                next_due += sample_every
    if samples[-1].round != total_rounds:
        take_sample(total_rounds)
    return state, samples
