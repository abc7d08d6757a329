"""Closed-form convergence prediction for the voting mechanism.

A full-power vote costs vote_scale + vote_offset of Voting Power, so a
player needs ceil((a+b)/regen) rounds between full-power votes. With
equal Steem Power everywhere, a run fully converges to the ideal order
exactly when the round budget lets every player cast one vote per post
at full power: R - 1 >= (P - 1) * ceil((a+b)/regen). Unequal Steem Power
breaks the proportionality between accumulated score and ideal score, so
even the top spot is not guaranteed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core import SystemParams

# Relative slack when deciding whether a cost/regen ratio is an integer;
# guards ceil() against float representation error on exact boundaries.
_INTEGER_SNAP = 1e-9


class Verdict(Enum):
    CONVERGES_FULLY = "converges_fully"
    NOT_ONE_CONVERGES = "not_one_converges"


class Reason(Enum):
    UNEQUAL_STEEM_POWER = "unequal_steem_power"
    INSUFFICIENT_ROUNDS = "insufficient_rounds"
    SUFFICIENT_ROUNDS = "sufficient_rounds"


@dataclass(frozen=True)
class ConvergencePrediction:
    verdict: Verdict
    reason: Reason
    threshold: int
    required_rounds: int

    def __post_init__(self) -> None:
        full = self.verdict is Verdict.CONVERGES_FULLY
        sufficient = self.reason is Reason.SUFFICIENT_ROUNDS
        if full != sufficient:
            raise ValueError("verdict/reason combination is inconsistent")


def regen_threshold(vote_scale: float, vote_offset: float, regen: float) -> int:
    """Rounds needed to restore full Voting Power after a full-power vote."""
    if regen <= 0:
        raise ValueError("regen must be > 0")
    ratio = (vote_scale + vote_offset) / regen
    nearest = round(ratio)
    if abs(ratio - nearest) <= _INTEGER_SNAP * max(1.0, abs(ratio)):
        return max(1, int(nearest))
    return max(1, math.ceil(ratio))


def predict(
    params: SystemParams, steem_powers: Sequence[float]
) -> ConvergencePrediction:
    """Convergence class for a run with honest full-power voters."""
    threshold = regen_threshold(params.vote_scale, params.vote_offset, params.regen)
    required = (params.num_posts - 1) * threshold + 1
    if any(sp != steem_powers[0] for sp in steem_powers):
        return ConvergencePrediction(
            Verdict.NOT_ONE_CONVERGES, Reason.UNEQUAL_STEEM_POWER, threshold, required
        )
    if params.num_rounds - 1 >= (params.num_posts - 1) * threshold:
        return ConvergencePrediction(
            Verdict.CONVERGES_FULLY, Reason.SUFFICIENT_ROUNDS, threshold, required
        )
    return ConvergencePrediction(
        Verdict.NOT_ONE_CONVERGES, Reason.INSUFFICIENT_ROUNDS, threshold, required
    )
