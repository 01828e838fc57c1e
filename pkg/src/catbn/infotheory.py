"""Entropy, (conditional) mutual information and the G^2 independence test.

All quantities use natural logarithms, so the likelihood-ratio statistic is
exactly ``2 * N * CMI``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import Dataset

_FPMIN = 1e-300
_MAX_ITER = 10_000
_TOL = 1e-15


@dataclass(frozen=True)
class CiResult:
    statistic: float
    df: int
    p_value: float
    independent: bool


def _plogp_sum(c: np.ndarray, n: float) -> float:
    c = c[c > 0]
    p = c / n
    return float(-(p * np.log(p)).sum())


def entropy(d: Dataset, x: str) -> float:
    """Plug-in entropy of column ``x`` in nats."""
    c = np.bincount(d.column(x), minlength=d.arity(x)).astype(float)
    return _plogp_sum(c, c.sum())


_DENSE_LIMIT = 1 << 22


def _strata_tables(d: Dataset, x: str, y: str, z: Sequence[str]) -> np.ndarray:
    """Count tables of (x, y) for every conditioning configuration that occurs."""
    if x == y:
        raise ValueError("x and y must differ")
    if x in z or y in z:
        raise ValueError("x and y must not be in the conditioning set")
    rx, ry = d.arity(x), d.arity(y)
    cfg = np.zeros(d.n_rows, dtype=np.int64)
    n_cfg = 1
    for v in z:
        r = d.arity(v)
        cfg = cfg * r + d.column(v)
        n_cfg *= r
    if n_cfg * rx * ry > _DENSE_LIMIT:
        _, cfg = np.unique(cfg, return_inverse=True)
        cfg = cfg.reshape(-1)
        n_cfg = int(cfg.max()) + 1
    flat = (cfg * rx + d.column(x)) * ry + d.column(y)
    t = np.bincount(flat, minlength=n_cfg * rx * ry).reshape(n_cfg, rx, ry)
    if n_cfg > 1:
        t = t[t.any(axis=(1, 2))]
    return t.astype(float)


def _cmi_from_tables(t: np.ndarray) -> float:
    n = t.sum()
    nz = t.sum(axis=(1, 2), keepdims=True)
    nxz = t.sum(axis=2, keepdims=True)
    nyz = t.sum(axis=1, keepdims=True)
    mask = t > 0
    num = (t * nz)[mask]
    den = (nxz * nyz)[mask]
    return float((t[mask] * np.log(num / den)).sum() / n)


def mutual_information(d: Dataset, x: str, y: str) -> float:
    return conditional_mi(d, x, y, ())


def conditional_mi(d: Dataset, x: str, y: str, z: Sequence[str] = ()) -> float:
    """Plug-in ``I(x; y | z)`` in nats; empty ``z`` gives plain mutual information."""
    val = _cmi_from_tables(_strata_tables(d, x, y, list(z)))
    return max(val, 0.0)


def _adjusted_df(t: np.ndarray) -> int:
    rx = (t.sum(axis=2) > 0).sum(axis=1)
    ry = (t.sum(axis=1) > 0).sum(axis=1)
    occupied = t.sum(axis=(1, 2)) > 0
    df = int(((rx - 1) * (ry - 1))[occupied].sum())
    return max(df, 1)


def g2_test(d: Dataset, x: str, y: str, z: Sequence[str] = (), alpha: float = 0.05) -> CiResult:
    """Likelihood-ratio test of ``x`` independent of ``y`` given ``z``.

    Degrees of freedom are summed over occupied strata, each contributing
    ``(rx' - 1)(ry' - 1)`` with ``rx'``, ``ry'`` the number of levels that
    actually occur in that stratum; the total is floored at 1.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    t = _strata_tables(d, x, y, list(z))
    stat = max(2.0 * t.sum() * _cmi_from_tables(t), 0.0)
    df = _adjusted_df(t)
    p = chi_square_sf(stat, df)
    return CiResult(stat, df, p, p > alpha)


# -- chi-square survival via the regularized incomplete gamma function ------


def _gamma_p_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _TOL:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    # modified Lentz evaluation
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    dd = 1.0 / b
    h = dd
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        dd = an * dd + b
        if abs(dd) < _FPMIN:
            dd = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        dd = 1.0 / dd
        delta = dd * c
        h *= delta
        if abs(delta - 1.0) < _TOL:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma ``Q(a, x) = Gamma(a, x) / Gamma(a)``."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_contfrac(a, x)


def chi_square_sf(statistic: float, df: int) -> float:
    """``P(X > statistic)`` for ``X ~ chi2(df)``."""
    if df < 1:
        raise ValueError("df must be at least 1")
    if statistic <= 0:
        return 1.0
    q = regularized_gamma_q(df / 2.0, statistic / 2.0)
    return min(max(q, 0.0), 1.0)
