import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catbn import benchmarks
from catbn.dataset import Dataset, Variable
from catbn.graph import d_separated
from catbn.select import rank_features, select_features

from helpers import exact_mi


def _dataset(cols, names):
    rows = np.column_stack(cols).astype(np.int64)
    vars_ = [Variable(n, tuple(str(i) for i in range(int(rows[:, j].max()) + 1)))
             for j, n in enumerate(names)]
    return Dataset(vars_, rows)


def test_copy_of_target_ranks_first_with_fraction_one():
    rng = np.random.default_rng(0)
    t = rng.integers(0, 3, 2000)
    noise = rng.integers(0, 2, 2000)
    d = _dataset([noise, t, t], ["noise", "copy", "T"])
    ranked = rank_features(d, "T")
    assert ranked[0].name == "copy"
    assert ranked[0].fraction_of_target_entropy == pytest.approx(1.0, abs=1e-12)


def test_independent_features_are_dropped():
    # balanced design: every (f1, f2, t) cell appears equally often -> MI exactly zero
    grid = np.array(np.meshgrid([0, 1], [0, 1], [0, 1], indexing="ij")).reshape(3, -1).T
    rows = np.repeat(grid, 50, axis=0)
    d = _dataset([rows[:, 0], rows[:, 1], rows[:, 2]], ["F1", "F2", "T"])
    for r in rank_features(d, "T"):
        assert r.fraction_of_target_entropy == pytest.approx(0.0, abs=1e-12)
    assert select_features(d, "T", 0.01) == []
    assert select_features(d, "T", 0.99) == []


def test_threshold_validation():
    d = _dataset([np.array([0, 1, 0, 1]), np.array([0, 1, 1, 0])], ["X", "T"])
    for bad in (0.0, 1.0, -0.5):
        with pytest.raises(ValueError):
            select_features(d, "T", bad)


def test_tiered_selection_matches_d_connection(tiered_bn, tiered_50k):
    target = benchmarks.TIERED_TARGET
    dependent = {v for v in tiered_bn.names if v != target
                 and not d_separated(tiered_bn.dag, v, target, ())}
    assert dependent == {"CstDst", "EvcNtc", "Nbr", "FamFrds", "Rsk"}
    assert set(select_features(tiered_50k, target, 0.01)) == dependent


def test_tiered_ranking_follows_exact_mi(tiered_bn, tiered_50k):
    target = benchmarks.TIERED_TARGET
    exact = {v: exact_mi(tiered_bn, v, target) for v in tiered_bn.names if v != target}
    ranked = rank_features(tiered_50k, target)
    for r in ranked:
        assert r.mi == pytest.approx(exact[r.name], abs=3e-3)
    # adjacent pair gaps in the exact values are at least 0.005 nats except near zero
    top = [r.name for r in ranked[:5]]
    assert top == sorted(exact, key=exact.get, reverse=True)[:5]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0.001, 0.999), min_size=2, max_size=10))
def test_selection_is_monotone_in_threshold(tiered_50k, fracs):
    fracs = sorted(fracs)
    sets = [set(select_features(tiered_50k, "Evc", f)) for f in fracs]
    for lo, hi in zip(sets, sets[1:]):
        assert hi <= lo
