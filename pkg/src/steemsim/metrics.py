"""Curation-quality measures comparing a live post list to the ideal order.

All three measures operate on strict permutations of the same post-id
set, so no tie corrections are needed anywhere:

* t-ideal rank: length of the longest prefix of the live list that
  exactly matches the ideal order.
* Kendall's tau: (concordant - discordant) / (P(P-1)/2) over all post
  pairs, comparing ideal rank against live rank.
* Spearman's rho: 1 - 6*sum(d^2) / (P(P^2-1)) with d the per-post rank
  difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class MetricsSample:
    """One time-series row: quality of the list after ``round`` rounds."""

    round: int
    t_ideal_rank: int
    kendall_tau: float
    spearman_rho: float


def _check_permutations(real_order: Sequence[int], ideal: Sequence[int]) -> None:
    if len(real_order) != len(ideal) or set(real_order) != set(ideal):
        raise ValueError("orders must be permutations of the same post ids")
    if len(set(real_order)) != len(real_order):
        raise ValueError("orders must not contain duplicate post ids")


def t_ideal_rank(real_order: Sequence[int], ideal: Sequence[int]) -> int:
    """Largest t such that the first t entries of both orders coincide."""
    _check_permutations(real_order, ideal)
    t = 0
    for got, want in zip(real_order, ideal):
        if got != want:
            break
        t += 1
    return t


def _rank_vectors(
    real_order: Sequence[int], ideal: Sequence[int]
) -> tuple[np.ndarray, np.ndarray]:
    """Per-post rank positions (ideal, real), aligned by post id order."""
    n = len(ideal)
    ideal_rank = {post: i for i, post in enumerate(ideal)}
    real_rank = {post: i for i, post in enumerate(real_order)}
    posts = sorted(ideal_rank)
    u = np.fromiter((ideal_rank[p] for p in posts), dtype=np.int64, count=n)
    v = np.fromiter((real_rank[p] for p in posts), dtype=np.int64, count=n)
    return u, v


def kendall_tau(real_order: Sequence[int], ideal: Sequence[int]) -> float:
    """Kendall rank correlation between the live order and the ideal one."""
    _check_permutations(real_order, ideal)
    n = len(ideal)
    if n < 2:
        raise ValueError("kendall_tau needs at least 2 posts")
    u, v = _rank_vectors(real_order, ideal)
    du = np.sign(u[:, None] - u[None, :])
    dv = np.sign(v[:, None] - v[None, :])
    agree = int(np.sum(np.triu(du * dv, k=1)))  # +1 concordant, -1 discordant
    return agree / (n * (n - 1) // 2)


def spearman_rho(real_order: Sequence[int], ideal: Sequence[int]) -> float:
    """Spearman rank correlation between the live order and the ideal one."""
    _check_permutations(real_order, ideal)
    n = len(ideal)
    if n < 2:
        raise ValueError("spearman_rho needs at least 2 posts")
    u, v = _rank_vectors(real_order, ideal)
    d = u - v
    sum_sq = int(np.dot(d, d))
    return 1.0 - 6.0 * sum_sq / (n * (n * n - 1))


def selfish_gain(
    final_order: Sequence[int], ideal: Sequence[int], target_post: int
) -> int:
    """Positions the target gained versus its deserved spot.

    Ideal position minus final position, 0-based; positive means the
    post ended up higher on the list than its ideal score warrants.
    """
    if target_post not in ideal or target_post not in final_order:
        raise ValueError(f"target post {target_post} absent from an order")
    return list(ideal).index(target_post) - list(final_order).index(target_post)
