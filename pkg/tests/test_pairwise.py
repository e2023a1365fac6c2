"""
Tests de la información mutua por pares y de las puntuaciones de arista.
"""

import math

import numpy as np
import pytest
from scipy import stats

from selvar.info import (
    all_pairwise_scores,
    discrete_pair_mi,
    edge_scores_frame,
    gaussian_pair_mi,
    group_stats,
    lr_test,
    mixed_pair_mi,
    pair_score,
)
from selvar.models import (
    CellCounts,
    ConstantColumnError,
    Criterion,
    EdgeKind,
    Flags,
    PreconditionError,
    VarianceMode,
)


@pytest.mark.unit
class TestDiscretePairMi:

    def test_independent_table(self):
        result = discrete_pair_mi(CellCounts.from_counts([[10, 10], [10, 10]]))

        assert result.mi == 0.0
        assert result.df == 1

    def test_diagonal_table(self):
        result = discrete_pair_mi(CellCounts.from_counts([[20, 0], [0, 20]]))

        assert result.mi == pytest.approx(40 * math.log(2), rel=1e-12)
        assert result.df == 1

    @pytest.mark.parametrize('seed', range(100))
    def test_half_g_squared(self, seed):
        """La MI coincide con la mitad de la desviación G² calculada con scipy."""
        rng = np.random.default_rng(seed)
        shape = tuple(rng.integers(2, 6, size=2))
        counts = rng.integers(1, 40, size=shape)

        result = discrete_pair_mi(CellCounts.from_counts(counts))
        g2, _, dof, _ = stats.chi2_contingency(counts, correction=False, lambda_='log-likelihood')

        assert result.mi == pytest.approx(g2 / 2.0, rel=1e-10)
        assert result.df == dof

    def test_zero_margin_collapses_level(self):
        result = discrete_pair_mi(CellCounts.from_counts([[5, 3], [0, 0], [2, 7]]))

        assert Flags.ZERO_MARGIN in result.flags
        assert result.df == 1

    def test_constant_column(self):
        result = discrete_pair_mi(CellCounts.from_counts([[5, 3, 2]]))

        assert result.mi == 0.0
        assert Flags.CONSTANT_COLUMN in result.flags

    def test_n_mismatch(self):
        with pytest.raises(PreconditionError):
            discrete_pair_mi(CellCounts.from_counts([[1, 2], [3, 4]]), n=11)


@pytest.mark.unit
class TestGaussianPairMi:

    def test_pearson_oracle(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=100)
        y = 0.6 * x + rng.normal(size=100)
        rho = stats.pearsonr(x, y)[0]

        result = gaussian_pair_mi(x, y)

        assert result.mi == pytest.approx(-50.0 * math.log(1.0 - rho ** 2), rel=1e-10)
        assert result.df == 1

    def test_perfect_correlation(self):
        x = np.arange(10.0)

        result = gaussian_pair_mi(x, 3.0 * x + 1.0)

        assert math.isinf(result.mi)
        assert Flags.DEGENERATE_CORRELATION in result.flags

    def test_constant_column(self):
        with pytest.raises(ConstantColumnError):
            gaussian_pair_mi(np.ones(5), np.arange(5.0))


@pytest.mark.unit
class TestMixedPairMi:
    """Casos a mano con A=[0,1], B=[2,3]."""

    @pytest.fixture
    def hand_stats(self, make_table):
        table = make_table({'g': [0, 0, 1, 1], 'c': [0.0, 1.0, 2.0, 3.0]}, levels={'g': ['A', 'B']})
        return group_stats(table, 'g', 'c')

    def test_homogeneous(self, hand_stats):
        result = mixed_pair_mi(hand_stats, 4, VarianceMode.HOMOGENEOUS)

        assert result.mi == pytest.approx(2.0 * math.log(5.0), abs=1e-12)
        assert result.df == 1

    def test_heterogeneous(self, hand_stats):
        result = mixed_pair_mi(hand_stats, 4, VarianceMode.HETEROGENEOUS)

        assert result.mi == pytest.approx(2.0 * math.log(5.0), abs=1e-12)
        assert result.df == 2

    def test_zero_group_variance_falls_back(self, make_table):
        table = make_table({'g': [0, 0, 1, 1, 1], 'c': [1.0, 1.0, 2.0, 3.0, 4.0]},
                           levels={'g': ['A', 'B']})

        result = mixed_pair_mi(group_stats(table, 'g', 'c'), mode=VarianceMode.HETEROGENEOUS)

        assert Flags.DEGENERATE_GROUP_VARIANCE in result.flags
        assert result.df == 1


def test_lr_test_critical_value():
    result = lr_test(1.92, 1)

    assert result.statistic == pytest.approx(3.84)
    assert result.p_value == pytest.approx(0.05, abs=1e-3)


@pytest.mark.unit
class TestPairwiseScores:

    def test_independent_columns_have_negative_bic(self, make_table):
        rng = np.random.default_rng(2024)
        table = make_table({
            'x1': rng.normal(size=1000),
            'x2': rng.normal(size=1000),
            'd1': rng.integers(0, 3, size=1000),
            'd2': rng.integers(0, 2, size=1000),
        }, levels={'d1': ['a', 'b', 'c'], 'd2': ['u', 'v']})

        scores = all_pairwise_scores(table)

        assert len(scores) == 6
        assert all(score.weight_bic < 0 for score in scores)

    def test_penalties(self, make_table):
        rng = np.random.default_rng(1)
        x = rng.normal(size=50)
        table = make_table({'x': x, 'y': x + rng.normal(size=50)})

        score = pair_score(table, 0, 1)

        assert score.weight_aic == pytest.approx(score.mi - 2.0)
        assert score.weight_bic == pytest.approx(score.mi - math.log(50))
        assert score.weight(Criterion.AIC) == score.weight_aic
        assert score.kind is EdgeKind.CC

    def test_constant_column_becomes_sentinel(self, make_table):
        table = make_table({'x': np.ones(20), 'y': np.arange(20.0)})

        score = pair_score(table, 0, 1)

        assert score.mi == 0.0
        assert Flags.CONSTANT_COLUMN in score.flags

    def test_infinite_edge_flag(self, make_table):
        x = np.arange(20.0)
        table = make_table({'x': x, 'y': 2.0 * x})

        score = pair_score(table, 0, 1)

        assert math.isinf(score.weight_bic)
        assert Flags.INFINITE_EDGE in score.flags

    def test_mixed_kind_follows_variance_mode(self, make_table):
        rng = np.random.default_rng(9)
        g = rng.integers(0, 2, size=60)
        table = make_table({'g': g, 'c': g + rng.normal(size=60)}, levels={'g': ['a', 'b']})

        assert pair_score(table, 0, 1).kind is EdgeKind.MIX_HOM
        assert pair_score(table, 0, 1, VarianceMode.HETEROGENEOUS).kind is EdgeKind.MIX_HET

    def test_order_does_not_depend_on_threads(self, make_table):
        rng = np.random.default_rng(3)
        table = make_table({f"x{i}": rng.normal(size=80) for i in range(5)})

        serial = all_pairwise_scores(table, threads=1)
        parallel = all_pairwise_scores(table, threads=4)

        assert [s.pair for s in serial] == [(u, v) for u in range(5) for v in range(u + 1, 5)]
        assert serial == parallel

    def test_scores_frame(self, make_table):
        rng = np.random.default_rng(4)
        table = make_table({'a': rng.normal(size=30), 'b': rng.normal(size=30)})

        frame = edge_scores_frame(all_pairwise_scores(table), table.names)

        assert frame.loc[0, 'name_u'] == 'a'
        assert frame.loc[0, 'name_v'] == 'b'
        assert 0.0 <= frame.loc[0, 'p_value'] <= 1.0


@pytest.mark.unit
class TestInvariances:
    """La MI por pares no depende del orden del par, del etiquetado de niveles ni de la escala."""

    @classmethod
    def setup_class(cls):
        rng = np.random.default_rng(77)
        cls.x = rng.normal(size=300)
        cls.g = rng.integers(0, 3, size=300)
        cls.h = (cls.g + rng.integers(0, 2, size=300)) % 4
        cls.c = cls.g + cls.x

    def _table(self, make_table, g, h, c, x):
        return make_table({'g': g, 'h': h, 'c': c, 'x': x},
                          levels={'g': ['a', 'b', 'c'], 'h': ['p', 'q', 'r', 's']})

    def test_pair_order(self, make_table):
        table = self._table(make_table, self.g, self.h, self.c, self.x)

        for u, v in [(0, 1), (0, 2), (2, 3), (1, 3)]:
            assert pair_score(table, u, v) == pair_score(table, v, u)

    def test_swapped_columns(self, make_table):
        table = make_table({'c': self.c, 'g': self.g}, levels={'g': ['a', 'b', 'c']})
        swapped = make_table({'g': self.g, 'c': self.c}, levels={'g': ['a', 'b', 'c']})

        assert pair_score(table, 0, 1).mi == pair_score(swapped, 0, 1).mi

    def test_discrete_level_permutation(self):
        counts = np.array([[12, 3, 5], [4, 20, 1], [7, 2, 9], [1, 6, 8]])
        permuted = counts[[2, 0, 3, 1]][:, [1, 2, 0]]

        base = discrete_pair_mi(CellCounts.from_counts(counts))
        result = discrete_pair_mi(CellCounts.from_counts(permuted))

        assert result.mi == pytest.approx(base.mi, rel=1e-10)
        assert result.df == base.df

    @pytest.mark.parametrize('mode', [VarianceMode.HOMOGENEOUS, VarianceMode.HETEROGENEOUS])
    def test_mixed_relabel_and_rescale(self, make_table, mode):
        relabel = np.array([2, 0, 1])
        table = self._table(make_table, self.g, self.h, self.c, self.x)
        other = self._table(make_table, relabel[self.g], self.h, 3.0 * self.c - 7.0, self.x)

        base = mixed_pair_mi(group_stats(table, 'g', 'c'), mode=mode)
        result = mixed_pair_mi(group_stats(other, 'g', 'c'), mode=mode)

        assert result.mi == pytest.approx(base.mi, abs=1e-10)
        assert result.df == base.df

    def test_gaussian_affine(self):
        base = gaussian_pair_mi(self.x, self.c)
        result = gaussian_pair_mi(3.0 * self.x - 7.0, -0.5 * self.c + 2.0)

        assert result.mi == pytest.approx(base.mi, rel=1e-10)
