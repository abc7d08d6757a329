import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steemsim.core import ConfigError, FeedState, LikabilityMatrix, SystemParams, Vote
from steemsim.engine import (
    handle_vote,
    init,
    player_view,
    regenerate,
    reorder,
    run,
    run_round,
    visible_prefix,
)
from steemsim.strategies import HonestMode, HonestPolicy, HonestPolicyConfig


def make_params(**overrides):
    base = dict(
        num_players=2,
        num_rounds=10,
        num_posts=3,
        attention_span=3,
        vote_scale=0.02,
        vote_offset=1e-4,
        regen=0.01,
    )
    base.update(overrides)
    return SystemParams(**base)


class TestInit:
    def test_fresh_state(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        assert state.feed.scores == [0.0, 0.0, 0.0]
        assert state.feed.order == [0, 1, 2]
        assert state.feed.round == 0
        assert [p.voting_power for p in state.players] == [1.0, 1.0]
        assert all(p.voted == set() for p in state.players)

    def test_duplicate_initial_order_rejected(self):
        with pytest.raises(ConfigError):
            init(make_params(), [1.0, 1.0], [0, 0, 2])

    def test_steem_power_dimension_mismatch(self):
        with pytest.raises(ConfigError):
            init(make_params(), [1.0], [0, 1, 2])

    def test_negative_steem_power_rejected(self):
        with pytest.raises(ConfigError):
            init(make_params(), [1.0, -0.5], [0, 1, 2])

    def test_arbitrary_initial_order_kept(self):
        state = init(make_params(), [1.0, 1.0], [2, 0, 1])
        assert state.feed.order == [2, 0, 1]


class TestRegenerate:
    def test_adds_regen(self):
        state = init(make_params(regen=0.3), [1.0, 1.0], [0, 1, 2])
        state.players[0].voting_power = 0.5
        regenerate(state)
        assert state.players[0].voting_power == pytest.approx(0.8)

    def test_clamps_at_one(self):
        state = init(make_params(regen=0.01), [1.0, 1.0], [0, 1, 2])
        state.players[0].voting_power = 0.9999
        regenerate(state)
        assert state.players[0].voting_power == 1.0

    def test_idempotent_at_cap(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        regenerate(state)
        assert all(p.voting_power == 1.0 for p in state.players)


class TestViews:
    def test_prefix_limited_by_attention_span(self):
        params = make_params(num_posts=70, attention_span=10)
        state = init(params, [1.0, 1.0], list(range(70)))
        assert visible_prefix(state) == [(p, p) for p in range(10)]

    def test_prefix_covers_whole_list_when_span_allows(self):
        params = make_params(num_posts=3, attention_span=3)
        state = init(params, [1.0, 1.0], [2, 0, 1])
        assert visible_prefix(state) == [(2, 0), (0, 1), (1, 2)]

    def test_prefix_degenerate_span(self):
        params = make_params(num_posts=3, attention_span=1)
        state = init(params, [1.0, 1.0], [1, 0, 2])
        assert visible_prefix(state) == [(1, 0)]

    def test_player_view_skips_posts_already_voted(self):
        params = make_params(num_posts=5, attention_span=2)
        state = init(params, [1.0, 1.0], [0, 1, 2, 3, 4])
        state.players[0].voted = {0, 2}
        assert player_view(state, 0) == [(1, 1), (3, 3)]
        assert player_view(state, 1) == [(0, 0), (1, 1)]

    def test_player_view_empty_once_everything_voted(self):
        params = make_params(num_posts=3, attention_span=2)
        state = init(params, [1.0, 1.0], [0, 1, 2])
        state.players[0].voted = {0, 1, 2}
        assert player_view(state, 0) == []


class TestHandleVote:
    def test_score_delta_and_power_cost(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        _, outcome = handle_vote(state, 0, Vote(1, 0.5))
        assert outcome.accepted
        assert outcome.score_delta == pytest.approx(0.0101)
        # the cost is charged at the full-weight rate: a * VP + b
        assert outcome.vp_after == pytest.approx(1.0 - 0.0201)
        assert state.feed.scores[1] == pytest.approx(0.0101)

    def test_full_weight_cost_is_scale_plus_offset(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        _, outcome = handle_vote(state, 0, Vote(0, 1.0))
        assert 1.0 - outcome.vp_after == pytest.approx(0.02 + 1e-4)
        assert outcome.score_delta == pytest.approx(0.02 + 1e-4)

    def test_steem_power_multiplies_score_not_cost(self):
        state = init(make_params(), [3.0, 1.0], [0, 1, 2])
        _, outcome = handle_vote(state, 0, Vote(2, 1.0))
        assert outcome.score_delta == pytest.approx(3.0 * 0.0201)
        assert outcome.vp_after == pytest.approx(1.0 - 0.0201)

    def test_duplicate_vote_rejected_without_state_change(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        handle_vote(state, 0, Vote(1, 0.5))
        scores = list(state.feed.scores)
        vp = state.players[0].voting_power
        _, outcome = handle_vote(state, 0, Vote(1, 0.9))
        assert not outcome.accepted
        assert outcome.score_delta == 0.0
        assert state.feed.scores == scores
        assert state.players[0].voting_power == vp

    def test_invalid_post_id_errors(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        with pytest.raises(ValueError):
            handle_vote(state, 0, Vote(3, 0.5))

    def test_out_of_range_weight_errors(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        with pytest.raises(ValueError):
            handle_vote(state, 0, Vote(0, 1.5))

    def test_voting_power_floors_at_zero(self):
        state = init(make_params(vote_scale=0.9, vote_offset=0.2), [1.0, 1.0], [0, 1, 2])
        _, outcome = handle_vote(state, 0, Vote(0, 1.0))
        assert outcome.vp_after == 0.0
        assert outcome.score_delta == pytest.approx(1.1)

    def test_accepts_votes_outside_the_visible_prefix(self):
        params = make_params(num_posts=5, attention_span=1)
        state = init(params, [1.0, 1.0], [0, 1, 2, 3, 4])
        _, outcome = handle_vote(state, 0, Vote(4, 1.0))
        assert outcome.accepted

    def test_reorders_after_vote(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        handle_vote(state, 0, Vote(2, 1.0))
        assert state.feed.order[0] == 2


class TestReorder:
    def test_all_ties_keep_current_order(self):
        feed = FeedState(scores=[0.0, 0.0, 0.0], order=[2, 0, 1])
        assert reorder(feed).order == [2, 0, 1]

    def test_sorts_by_descending_score(self):
        feed = FeedState(scores=[1.0, 3.0, 2.0], order=[0, 1, 2])
        assert reorder(feed).order == [1, 2, 0]

    def test_single_vote_can_move_bottom_post_to_top(self):
        state = init(make_params(), [1.0, 1.0], [0, 1, 2])
        handle_vote(state, 0, Vote(2, 1.0))
        assert state.feed.order == [2, 0, 1]

    @given(
        st.integers(2, 8).flatmap(
            lambda n: st.tuples(
                st.permutations(list(range(n))),
                st.lists(
                    st.floats(0.0, 5.0, allow_nan=False), min_size=n, max_size=n
                ),
                st.integers(0, n - 1),
                st.floats(0.0, 3.0, allow_nan=False),
            )
        )
    )
    def test_promotion_matches_full_stable_sort(self, case):
        # handle_vote promotes the single bumped post; must equal reorder()
        order, raw_scores, post, bump = case
        order = list(order)
        scores = sorted(raw_scores, reverse=True)
        by_post = [0.0] * len(order)
        for pos, p in enumerate(order):
            by_post[p] = scores[pos]
        params = make_params(
            num_players=1, num_posts=len(order), attention_span=1, vote_scale=1.0
        )
        state = init(params, [1.0], order)
        state.feed.scores = list(by_post)
        state.feed.scores[post] += bump
        expected = reorder(
            FeedState(scores=list(state.feed.scores), order=list(order))
        ).order
        from steemsim.engine import _promote

        _promote(state.feed, post)
        assert state.feed.order == expected


class TestRunRound:
    def test_all_abstaining_round_only_regenerates(self):
        params = make_params()
        state = init(params, [1.0, 1.0], [0, 1, 2])
        for player in state.players:
            player.voted = {0, 1, 2}
            player.voting_power = 0.5
        matrix = np.full((2, 3), 0.5)
        policies = [HonestPolicy(matrix[i]) for i in range(2)]
        run_round(state, policies)
        assert state.feed.scores == [0.0, 0.0, 0.0]
        assert all(p.voting_power == pytest.approx(0.51) for p in state.players)
        assert state.feed.round == 1

    def test_single_player_single_post_score(self):
        params = make_params(num_players=1, num_posts=1, attention_span=1)
        state = init(params, [1.0], [0])
        likes = np.array([0.7])
        run_round(state, [HonestPolicy(likes)])
        assert state.feed.scores[0] == pytest.approx(1.0 * (0.02 * 0.7 + 1e-4))

    def test_round_counter_increments(self):
        params = make_params(num_players=1, num_posts=1, attention_span=1)
        state = init(params, [1.0], [0])
        run_round(state, [HonestPolicy(np.array([0.5]))])
        assert state.feed.round == 1

    def test_later_players_see_the_reordered_list(self):
        from steemsim.strategies import SelfishPolicy

        params = make_params(num_players=2, num_posts=2, attention_span=1)
        # player 0 lifts the bottom post to the top mid-round; player 1's
        # one-post view must then show the new top, not the old one
        state = init(params, [1.0, 1.0], [0, 1])
        run_round(state, [SelfishPolicy(1), HonestPolicy(np.array([0.5, 0.6]))])
        assert state.feed.order[0] == 1
        assert state.players[1].voted == {1}

    def test_exhausted_rounds_error(self):
        params = make_params(num_rounds=1, num_players=1, num_posts=1, attention_span=1)
        state = init(params, [1.0], [0])
        policies = [HonestPolicy(np.array([0.5]))]
        run_round(state, policies)
        with pytest.raises(ValueError):
            run_round(state, policies)


class TestRun:
    def _small(self, seed=0, num_rounds=40, mode=HonestMode.FULL_POWER_ONLY):
        params = make_params(
            num_players=3,
            num_posts=4,
            attention_span=2,
            num_rounds=num_rounds,
            regen=(0.02 + 1e-4) / 2.5,
        )
        rng = np.random.default_rng(seed)
        matrix = LikabilityMatrix(rng.random((3, 4)))
        policies = [
            HonestPolicy(matrix.row(i), HonestPolicyConfig(mode)) for i in range(3)
        ]
        return params, matrix, policies

    def test_zero_rounds_returns_one_sample(self):
        params, matrix, policies = self._small(num_rounds=0)
        state, samples = run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies)
        assert state.feed.round == 0
        assert len(samples) == 1
        assert samples[0].round == 0

    def test_identical_runs_are_bit_identical(self):
        params, matrix, policies = self._small(seed=42)
        out1 = run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies, sample_every=7)
        params, matrix, policies = self._small(seed=42)
        out2 = run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies, sample_every=7)
        assert out1[1] == out2[1]
        assert out1[0].feed.scores == out2[0].feed.scores
        assert out1[0].feed.order == out2[0].feed.order

    def test_sampling_grid_and_final_round(self):
        params, matrix, policies = self._small(num_rounds=25)
        _, samples = run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies, sample_every=10)
        assert [s.round for s in samples] == [0, 10, 20, 25]

    def test_skipping_matches_per_round_stepping(self):
        params, matrix, policies = self._small(seed=9, num_rounds=60)
        state_fast, _ = run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies, sample_every=60)
        params, matrix, policies = self._small(seed=9, num_rounds=60)
        state_slow = init(params, [1.0] * 3, [0, 1, 2, 3])
        for _ in range(60):
            run_round(state_slow, policies)
        assert state_fast.feed.scores == state_slow.feed.scores
        assert state_fast.feed.order == state_slow.feed.order
        assert [p.voted for p in state_fast.players] == [
            p.voted for p in state_slow.players
        ]

    def test_eager_mode_runs_and_totals_match_vote_count(self):
        params, matrix, policies = self._small(num_rounds=30, mode=HonestMode.EAGER)
        state, _ = run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies, sample_every=30)
        assert all(len(p.voted) == 4 for p in state.players)

    def test_policy_count_mismatch(self):
        params, matrix, policies = self._small()
        with pytest.raises(ConfigError):
            run(params, matrix, [1.0] * 3, [0, 1, 2, 3], policies[:2])
