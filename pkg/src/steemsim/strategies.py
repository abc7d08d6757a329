"""Player policies: honest voting and the selfish voting-ring deviation.

A policy decision is either a Vote or None (abstain). Decisions are pure
functions of the offered view, the player's own state, and the policy's
configuration, so replays are deterministic.

The engine relies on one piece of policy metadata for round skipping:
``full_power_gated``. A gated policy must abstain whenever the player's
Voting Power is below 1; a non-gated policy's decision must not depend
on Voting Power at all. Both built-in policies honor this contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Protocol, Sequence

import numpy as np

from .core import PlayerState, Vote

#: A view entry is (post_id, position-in-the-global-list), top first.
ViewEntry = tuple[int, int]

#: None means abstain.
PolicyDecision = Optional[Vote]


class HonestMode(Enum):
    FULL_POWER_ONLY = "full_power_only"
    EAGER = "eager"


@dataclass(frozen=True)
class HonestPolicyConfig:
    mode: HonestMode = HonestMode.FULL_POWER_ONLY


def honest_decide(
    view: Sequence[ViewEntry],
    player: PlayerState,
    likabilities: np.ndarray,
    config: HonestPolicyConfig,
) -> PolicyDecision:
    """Vote for the most-liked unvoted post in view, weight = likability.

    In FULL_POWER_ONLY mode the player abstains unless her Voting Power
    is exactly 1 (reachable exactly through the regeneration clamp).
    Likability ties break toward the lowest post id.
    """
    candidates = [post for post, _ in view if post not in player.voted]
    if not candidates:
        return None
    if config.mode is HonestMode.FULL_POWER_ONLY and player.voting_power != 1.0:
        return None
    best = min(candidates, key=lambda post: (-float(likabilities[post]), post))
    return Vote(best, float(likabilities[best]))


def selfish_decide(
    view: Sequence[ViewEntry], player: PlayerState, target_post: int
) -> PolicyDecision:
    """Full-weight vote for the ring's target post, once, at full power.

    The target need not be visible; ring members know what they are
    boosting. Never votes for any other post.
    """
    if target_post in player.voted or player.voting_power != 1.0:
        return None
    return Vote(target_post, 1.0)


class Policy(Protocol):
    full_power_gated: bool

    def decide(
        self, view: Sequence[ViewEntry], player: PlayerState
    ) -> PolicyDecision: ...


class HonestPolicy:
    """Honest strategy bound to one player's likability row."""

    def __init__(
        self,
        likabilities: np.ndarray,
        config: HonestPolicyConfig = HonestPolicyConfig(),
    ) -> None:
        self.likabilities = likabilities
        self.config = config
        self.full_power_gated = config.mode is HonestMode.FULL_POWER_ONLY

    def decide(
        self, view: Sequence[ViewEntry], player: PlayerState
    ) -> PolicyDecision:
        return honest_decide(view, player, self.likabilities, self.config)


class SelfishPolicy:
    """Voting-ring member devoted to a single target post."""

    full_power_gated = True

    def __init__(self, target_post: int) -> None:
        self.target_post = target_post

    def decide(
        self, view: Sequence[ViewEntry], player: PlayerState
    ) -> PolicyDecision:
        return selfish_decide(view, player, self.target_post)
