import numpy as np
import pytest

from catbn.citest import DSeparationOracle
from catbn.constraints import build_constraints, violations
from catbn.dataset import Dataset, Variable
from catbn.graph import Pdag, cpdag_of
from catbn.pc_stable import PcConfig, learn_skeleton_pcstable, pc_stable

from helpers import all_dags


def test_config_validation():
    with pytest.raises(ValueError):
        PcConfig(alpha=0)
    with pytest.raises(ValueError):
        PcConfig(max_condition_size=-1)


def test_independent_pair_gives_empty_skeleton():
    rng = np.random.default_rng(1)
    rows = rng.integers(0, 2, size=(5000, 2))
    d = Dataset([Variable("X", ("0", "1")), Variable("Y", ("0", "1"))], rows)
    skel, seps = learn_skeleton_pcstable(d)
    assert skel.n_edges() == 0
    assert seps.get_sep("X", "Y") == frozenset()


def test_chain_skeleton_and_sepset(chain_50k):
    skel, seps = learn_skeleton_pcstable(chain_50k)
    assert skel.skeleton_pairs() == {frozenset("AB"), frozenset("BC")}
    assert seps.get_sep("A", "C") == frozenset({"B"})


def test_every_removed_pair_has_a_sepset(tiered_50k):
    skel, seps = learn_skeleton_pcstable(tiered_50k)
    names = tiered_50k.names
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            assert skel.adjacent(a, b) == (seps.get_sep(a, b) is None)


def test_column_permutation_invariance(tiered_50k):
    base_skel, base_seps = learn_skeleton_pcstable(tiered_50k)
    rng = np.random.default_rng(5)
    for _ in range(3):
        perm = list(rng.permutation(tiered_50k.names))
        skel, seps = learn_skeleton_pcstable(tiered_50k.subset(perm))
        assert skel.skeleton_pairs() == base_skel.skeleton_pairs()
        assert {k: len(v) for k, v in seps.items()} == {k: len(v) for k, v in base_seps.items()}


def test_collider_orientation(collider_50k):
    g = pc_stable(collider_50k)
    assert g.directed == {("A", "C"), ("B", "C")}
    assert not g.undirected


def test_chain_with_blacklist(chain_50k):
    c = build_constraints({"A": 1, "B": 1, "C": 1}, None, [("C", "B")])
    g = pc_stable(chain_50k, constraints=c)
    assert g.directed == {("B", "C")}
    assert g.skeleton_pairs() == {frozenset("AB"), frozenset("BC")}
    assert g.has_undirected("A", "B")
    assert violations(g, c) == []


def test_forbidden_pair_never_appears(chain_50k):
    c = build_constraints({"A": 1, "B": 1, "C": 1}, None, [("A", "B"), ("B", "A")])
    g = pc_stable(chain_50k, constraints=c)
    assert not g.adjacent("A", "B")


def test_tiered_recovery_single_seed(tiered_bn, tiered_50k):
    from catbn.graph import shd
    assert shd(pc_stable(tiered_50k), cpdag_of(tiered_bn.dag)) <= 1


def test_oracle_seam_all_four_node_dags():
    for dag in all_dags(list("ABCD")):
        assert pc_stable(DSeparationOracle(dag)) == cpdag_of(dag)


def test_max_condition_size_zero_keeps_marginally_dependent_pairs(chain_50k):
    skel, _ = learn_skeleton_pcstable(chain_50k, PcConfig(max_condition_size=0))
    assert skel.adjacent("A", "C")
