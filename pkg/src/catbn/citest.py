"""Conditional-independence testers shared by the structure learners.

A tester exposes ``names``, ``test(x, y, z) -> CiResult`` and
``association(x, y, z) -> float``. :class:`G2Test` answers from data;
:class:`DSeparationOracle` answers from a known DAG and lets the learners be
checked without sampling noise.
"""

from __future__ import annotations

from typing import Iterable, Protocol, Sequence

from .dataset import Dataset
from .graph import Pdag, d_separated
from .infotheory import CiResult, g2_test


class CiTester(Protocol):
    names: Sequence[str]

    def test(self, x: str, y: str, z: Iterable[str]) -> CiResult: ...

    def association(self, x: str, y: str, z: Iterable[str]) -> float: ...


def _key(x: str, y: str, z: Iterable[str]):
    return (min(x, y), max(x, y), frozenset(z))


class G2Test:
    """G^2 test at level ``alpha`` with per-instance memoisation."""

    def __init__(self, data: Dataset, alpha: float = 0.05):
        self.data = data
        self.alpha = alpha
        self.names = data.names
        self._tests: dict = {}
        self.n_tests = 0

    def test(self, x, y, z=()) -> CiResult:
        key = _key(x, y, z)
        res = self._tests.get(key)
        if res is None:
            a, b, s = key
            res = g2_test(self.data, a, b, sorted(s), self.alpha)
            self._tests[key] = res
            self.n_tests += 1
        return res

    def association(self, x, y, z=()) -> float:
        # the G^2 statistic is 2N times the conditional MI, so reuse the test
        return self.test(x, y, z).statistic / (2.0 * self.data.n_rows)


class DSeparationOracle:
    """Perfect CI answers read off a DAG by d-separation.

    Dependent queries report association 1 and p-value 0; independent
    queries report association 0 and p-value 1.
    """

    def __init__(self, dag: Pdag):
        if not dag.is_dag():
            raise ValueError("oracle needs a DAG")
        self.dag = dag
        self.names = list(dag.nodes)
        self._cache: dict = {}

    def separated(self, x, y, z=()) -> bool:
        key = _key(x, y, z)
        sep = self._cache.get(key)
        if sep is None:
            sep = d_separated(self.dag, x, y, key[2])
            self._cache[key] = sep
        return sep

    def test(self, x, y, z=()) -> CiResult:
        sep = self.separated(x, y, z)
        return CiResult(0.0 if sep else float("inf"), 1, 1.0 if sep else 0.0, sep)

    def association(self, x, y, z=()) -> float:
        return 0.0 if self.separated(x, y, z) else 1.0


def as_tester(source, alpha: float = 0.05) -> CiTester:
    if isinstance(source, Dataset):
        return G2Test(source, alpha)
    if hasattr(source, "test") and hasattr(source, "names"):
        return source
    raise TypeError(f"expected a Dataset or CI tester, got {type(source).__name__}")
