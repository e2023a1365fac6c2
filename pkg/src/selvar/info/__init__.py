"""
Estimadores de información: tablas de contingencia, MI por pares y MI kNN.
"""

from .knn import independence_test, kraskov_mi, screen_variables
from .pairwise import (
    all_pairwise_scores,
    discrete_pair_mi,
    edge_scores_frame,
    gaussian_pair_mi,
    lr_test,
    mixed_pair_mi,
    pair_score,
)
from .tabulation import cross_tabulate, group_stats

__all__ = [
    'independence_test',
    'kraskov_mi',
    'screen_variables',
    'all_pairwise_scores',
    'discrete_pair_mi',
    'edge_scores_frame',
    'gaussian_pair_mi',
    'lr_test',
    'mixed_pair_mi',
    'pair_score',
    'cross_tabulate',
    'group_stats',
]
