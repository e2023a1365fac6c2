"""
Tests del estimador kNN de información mutua y del test por permutaciones.
"""

import math

import numpy as np
import pytest

from selvar.config import KraskovConfig
from selvar.info import independence_test, kraskov_mi, screen_variables
from selvar.models import AllTiedError, PreconditionError, TooFewSamplesError


@pytest.mark.unit
class TestKraskovMi:

    def test_too_few_samples(self):
        with pytest.raises(TooFewSamplesError):
            kraskov_mi([1.0, 2.0, 3.0], [3.0, 1.0, 2.0], k=3)

    def test_constant_column(self):
        with pytest.raises(AllTiedError):
            kraskov_mi(np.ones(20), np.arange(20.0))

    def test_length_mismatch(self):
        with pytest.raises(PreconditionError):
            kraskov_mi(np.arange(10.0), np.arange(9.0))

    def test_deterministic(self):
        rng = np.random.default_rng(0)
        x = rng.integers(0, 3, size=100)
        y = x + rng.normal(size=100)

        assert kraskov_mi(x, y, seed=5) == kraskov_mi(x, y, seed=5)

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=300)
        y = np.sin(x) + 0.5 * rng.normal(size=300)

        assert kraskov_mi(x, y, seed=2) == kraskov_mi(y, x, seed=2)

    @pytest.mark.slow
    def test_monotone_transform(self):
        """Una transformación monótona de x apenas cambia la estimación."""
        changes = []
        for seed in range(10):
            rng = np.random.default_rng([13, seed])
            x = rng.normal(size=1000)
            y = 0.7 * x + rng.normal(size=1000)
            changes.append(abs(kraskov_mi(np.exp(x), y, seed=seed) - kraskov_mi(x, y, seed=seed)))

        assert np.median(changes) < 0.05

    @pytest.mark.slow
    def test_gaussian_oracle(self):
        """ρ = 0.9, n = 1000: mediana a menos de 0.1 de -½·ln(1 - 0.81)."""
        estimates = []
        for seed in range(20):
            rng = np.random.default_rng(seed)
            x = rng.normal(size=1000)
            y = 0.9 * x + math.sqrt(1 - 0.81) * rng.normal(size=1000)
            estimates.append(kraskov_mi(x, y, seed=seed))

        assert np.median(estimates) == pytest.approx(-0.5 * math.log(1 - 0.81), abs=0.1)

    @pytest.mark.slow
    def test_independent_near_zero(self):
        estimates = []
        for seed in range(20):
            rng = np.random.default_rng(100 + seed)
            x = rng.normal(size=1000)
            estimates.append(kraskov_mi(x, rng.permutation(x), seed=seed))

        assert abs(np.median(estimates)) <= 0.05


@pytest.mark.unit
class TestIndependenceTest:

    def test_strong_dependence_hits_p_floor(self):
        """Con 99 permutaciones el p-valor mínimo es 0.01."""
        rng = np.random.default_rng(263)
        x = rng.normal(size=263)

        result = independence_test(x, x + 0.1 * rng.normal(size=263))

        assert result.p_value == pytest.approx(0.01)
        assert result.reject

    def test_same_seed_same_p_value(self):
        rng = np.random.default_rng(8)
        x = rng.normal(size=80)
        y = 0.2 * x + rng.normal(size=80)
        cfg = KraskovConfig(seed=3)

        serial = independence_test(x, y, cfg)
        parallel = independence_test(x, y, cfg, threads=3)

        assert serial == parallel

    @pytest.mark.slow
    def test_null_rejection_rate(self):
        rejections = 0
        for trial in range(400):
            rng = np.random.default_rng([7, trial])
            result = independence_test(rng.normal(size=200), rng.normal(size=200),
                                       KraskovConfig(seed=trial))
            rejections += result.reject

        assert 0.02 <= rejections / 400 <= 0.08

    @pytest.mark.slow
    def test_power_at_moderate_dependence(self):
        rejections = 0
        for trial in range(40):
            rng = np.random.default_rng([11, trial])
            x = rng.normal(size=200)
            y = 0.5 * x + math.sqrt(0.75) * rng.normal(size=200)
            rejections += independence_test(x, y, KraskovConfig(seed=trial)).reject

        assert rejections / 40 > 0.95


def test_screen_variables_keeps_order_and_names(make_table):
    rng = np.random.default_rng(21)
    a = rng.normal(size=150)
    table = make_table({'Y': a + 0.3 * rng.normal(size=150), 'A': a, 'N': rng.normal(size=150)})

    results = screen_variables(table, 'Y', ['A', 'N'], KraskovConfig(seed=1))

    assert [r.variable for r in results] == ['A', 'N']
    assert results[0].reject
