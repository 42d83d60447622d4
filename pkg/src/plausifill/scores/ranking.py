"""Margin-based pairwise ranking loss for old/new revision scores."""

from __future__ import annotations


def pairwise_ranking_loss(score_old: float, score_new: float) -> float:
    """``max(0, score_old - score_new + 1)``: zero once the newer revision
    outscores the older one by the unit margin."""
    return max(0.0, score_old - score_new + 1.0)
