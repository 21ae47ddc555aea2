import math
from collections import Counter

import numpy as np
import pytest
from mpmath import mp, mpf, ceil as mpceil, floor as mpfloor, log as mplog
from scipy import stats

from dynedgecolor.errors import InvalidEpsilon
from dynedgecolor.randomness import EdgeRandomness, Rng, derive_params


def reference_params(eps, delta):
    """Independent high-precision evaluation of the parameter formulas."""
    mp.dps = 50
    e = mpf(eps)
    T = int(mpfloor((1 / e) * mplog(1 / e)))
    K = int(mpceil((8 / e**2) * mplog(1 / e)))
    gamma = 1 / (30 * mpf(T))
    dp = max(2, int(mpceil(mpf(delta) ** gamma)))
    return T, K, dp


@pytest.mark.parametrize(
    "eps,delta,T,K",
    [(0.5, 2**30, 1, 23), (0.1, 10**6, 23, 1843), (0.3, 64, 4, 108), (0.2, 64, 8, 322)],
)
def test_param_table(eps, delta, T, K):
    p = derive_params(eps, delta)
    assert (p.T, p.K) == (T, K)
    rT, rK, rdp = reference_params(eps, delta)
    assert (p.T, p.K) == (rT, rK)
    assert p.delta_prime == rdp
    assert p.gamma == pytest.approx(1 / (30 * T))


def test_large_delta_example():
    p = derive_params(0.5, 2**30)
    assert p.gamma == pytest.approx(1 / 30)
    assert p.delta_prime == 2
    assert p.eta == 2**29
    assert not p.collapsed


def test_collapse_small_delta():
    p = derive_params(0.5, 2)
    assert p.collapsed and p.eta == 1
    assert p.sub_palette_size == math.ceil(1.5 * 2)


@pytest.mark.parametrize("eps", [0, -0.1, 0.6, float("nan")])
def test_invalid_epsilon(eps):
    with pytest.raises(InvalidEpsilon):
        derive_params(eps, 8)


def test_round_probabilities():
    assert derive_params(0.5, 64).round_probabilities() == pytest.approx([0.5, 0.5])
    probs = derive_params(0.1, 10**6).round_probabilities()
    assert len(probs) == 24
    assert probs[-1] == pytest.approx(0.9**23)
    assert probs[-1] == pytest.approx(0.0886, abs=1e-4)
    assert sum(probs) == pytest.approx(1.0)


def test_draw_determinism_and_incarnation():
    p = derive_params(0.3, 64)
    a, b = Rng(5, p), Rng(5, p)
    e = (3, 9)
    assert a.draw(e) == b.draw(e)
    assert a.sample_round(e) == a.sample_round(e)
    first = a.draw(e)
    a.fresh_incarnation(e)
    assert a.incarnation(e) == 1
    assert a.draw(e) != first
    assert isinstance(first, EdgeRandomness)


def test_single_color_palette():
    p = derive_params(0.5, 2)
    p = type(p)(**{**p.__dict__, "sub_palette_size": 1})
    assert set(Rng(0, p).sample_color_sequence((0, 1))) == {1}


def test_color_mean_within_three_sigma():
    p = derive_params(0.3, 64)
    P = p.sub_palette_size
    rng = Rng(11, p)
    vals = np.array([c for k in range(10**6 // p.K + 1) for c in rng.sample_color_sequence((k, k + 1))][: 10**6])
    sigma = math.sqrt((P * P - 1) / 12 / len(vals))
    assert abs(vals.mean() - (P + 1) / 2) < 3 * sigma


def test_partition_uniform():
    p = derive_params(0.5, 2**10)
    p = type(p)(**{**p.__dict__, "eta": 4})
    rng = Rng(2, p)
    counts = Counter(rng.sample_partition_index((k, k + 1)) for k in range(10**6))
    assert set(counts) == {1, 2, 3, 4}
    assert stats.chisquare([counts[j] for j in range(1, 5)]).pvalue > 0.001


def test_eta_one():
    p = derive_params(0.5, 2)
    assert {Rng(0, p).sample_partition_index((k, k + 1)) for k in range(500)} == {1}


def test_no_sequence_collisions():
    p = derive_params(0.3, 64)
    rng = Rng(0, p)
    seqs = {rng.sample_color_sequence((k, k + 1)) for k in range(10**5)}
    assert len(seqs) == 10**5


def test_seed_changes_everything():
    p = derive_params(0.3, 64)
    e = (1, 2)
    assert Rng(0, p).sample_color_sequence(e) != Rng(1, p).sample_color_sequence(e)
