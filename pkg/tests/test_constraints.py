import itertools

import pytest

from catbn.constraints import (TARGET_TIER, Admissibility, ConstraintError, ConstraintSet,
                               admissibility, build_constraints, violations)
from catbn.graph import Pdag


def test_three_tier_example():
    c = build_constraints({"CstDst": 1, "Rsk": 3}, "Evc")
    assert c.is_blacklisted("Rsk", "CstDst")
    assert not c.is_blacklisted("CstDst", "Rsk")
    assert c.is_blacklisted("Evc", "Rsk")
    assert c.tier_of["Evc"] == TARGET_TIER
    assert admissibility(c, "CstDst", "Rsk") is Admissibility.FORCED_X_TO_Y
    assert admissibility(c, "Rsk", "CstDst") is Admissibility.FORCED_Y_TO_X


def test_single_tier_only_blocks_target_outgoing():
    feats = ["A", "B", "C"]
    c = build_constraints({f: 1 for f in feats}, "T")
    assert c.blacklist == {("T", f) for f in feats}


def test_extra_both_directions_forbids_pair():
    c = build_constraints({"A": 1, "B": 1}, None, [("A", "B"), ("B", "A")])
    assert c.is_forbidden("A", "B")
    assert admissibility(c, "A", "B") is Admissibility.FORBIDDEN


def test_unassigned_variable_is_an_error():
    with pytest.raises(ConstraintError):
        build_constraints({"A": 1}, "T", variables=["A", "B", "T"])


def test_bad_tier_and_self_pair():
    with pytest.raises(ConstraintError):
        build_constraints({"A": "one"}, "T")
    with pytest.raises(ConstraintError):
        build_constraints({"A": 1}, "T", [("A", "A")])


def test_no_pair_both_ways_without_user_input():
    tiers = {"a": 1, "b": 1, "c": 2, "d": 3, "e": 3}
    c = build_constraints(tiers, "t")
    for x, y in itertools.combinations(list(tiers) + ["t"], 2):
        assert not c.is_forbidden(x, y)


def test_admissibility_consistent_with_blacklist_exhaustively():
    tiers = {"a": 1, "b": 2, "c": 2, "d": 3}
    c = build_constraints(tiers, "t", [("b", "c"), ("a", "d")])
    names = list(tiers) + ["t"]
    for x, y in itertools.permutations(names, 2):
        fwd, back = (x, y) in c.blacklist, (y, x) in c.blacklist
        expected = {(False, False): Admissibility.FREE,
                    (True, False): Admissibility.FORCED_Y_TO_X,
                    (False, True): Admissibility.FORCED_X_TO_Y,
                    (True, True): Admissibility.FORBIDDEN}[(fwd, back)]
        assert admissibility(c, x, y) is expected
    assert admissibility(None, "a", "b") is Admissibility.FREE
    with pytest.raises(ValueError):
        admissibility(c, "a", "a")


def test_violations_sweep():
    c = build_constraints({"A": 1, "B": 2}, "T", [("A", "B"), ("B", "A")])
    g = Pdag(["A", "B", "T"], directed=[("T", "A")], undirected=[("A", "B")])
    msgs = violations(g, c)
    assert any("T -> A" in m for m in msgs)
    assert any("forbidden" in m for m in msgs)
    assert violations(Pdag(["A", "B", "T"], directed=[("A", "T")]), c) == []


def test_restricted_to():
    c = build_constraints({"A": 1, "B": 2, "C": 3}, "T")
    r = c.restricted_to(["A", "C", "T"])
    assert all("B" not in p for p in r.blacklist)
    assert r.is_blacklisted("C", "A")
    assert isinstance(r, ConstraintSet)
