"""Nonparametric comparison of one deterministic optimizer against stochastic competitors.

Competitor numbers arrive as tables (function x dimension rows, one column
per algorithm); nothing here runs a competitor.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import stats

EXACT_MAX_N = 25


class SchemaError(ValueError):
    """Malformed result table. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


# -- one-sample Wilcoxon signed-rank ----------------------------------------


def _exact_upper_tail(doubled_ranks: Sequence[int], w2: int) -> float:
    """P(W+ >= w2 / 2) under the null, by DP over sign assignments.

    Ranks are doubled so average ranks from ties stay integral.
    """
    total = sum(doubled_ranks)
    counts = np.zeros(total + 1, dtype=object)
    counts[0] = 1
    for r in doubled_ranks:
        counts[r:] = counts[r:] + counts[: total + 1 - r].copy()
    return float(sum(counts[w2:]) / (1 << len(doubled_ranks)))


@dataclass(frozen=True)
class WilcoxonResult:
    p_value: float
    verdict: str  # "+", "=" or "-"
    w_plus: float
    w_minus: float
    n: int
    method: str


def wilcoxon_one_sample(samples: Sequence[float], reference: float, alpha: float = 0.05) -> WilcoxonResult:
    """Two-sided signed-rank test of ``samples`` against ``reference``.

    Zero differences are dropped. Exact null distribution for up to 25
    non-zero differences, normal approximation with continuity and tie
    correction beyond. Verdict ``+`` means the samples are significantly
    larger (worse, when minimising), ``-`` significantly smaller.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("samples must be non-empty")
    d = x - float(reference)
    d = d[d != 0]
    n = d.size
    if n == 0:
        return WilcoxonResult(1.0, "=", 0.0, 0.0, 0, "none")
    ranks = stats.rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    if n <= EXACT_MAX_N:
        doubled = [int(round(2 * r)) for r in ranks]
        hi = int(round(2 * max(w_plus, w_minus)))
        p = min(1.0, 2.0 * _exact_upper_tail(doubled, hi))
        method = "exact"
    else:
        mean = n * (n + 1) / 4.0
        _, tie_counts = np.unique(ranks, return_counts=True)
        var = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(tie_counts**3 - tie_counts)) / 48.0
        z = (abs(w_plus - mean) - 0.5) / math.sqrt(var) if var > 0 else 0.0
        p = min(1.0, 2.0 * float(stats.norm.sf(max(z, 0.0))))
        method = "normal"
    verdict = "="
    if p < alpha:
        verdict = "+" if w_plus > w_minus else "-"
    return WilcoxonResult(p, verdict, w_plus, w_minus, n, method)


# -- result tables -----------------------------------------------------------


@dataclass(frozen=True)
class ResultTable:
    rows: tuple[tuple[str, int], ...]
    algorithms: tuple[str, ...]
    values: np.ndarray  # (N, k), minimisation

    def __post_init__(self):
        if self.values.shape != (len(self.rows), len(self.algorithms)):
            raise SchemaError("values shape does not match rows x algorithms")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise SchemaError("duplicate algorithm column")

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.algorithms)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.algorithms.index(name)]

    @classmethod
    def from_csv(cls, source: str | Path | io.TextIOBase) -> "ResultTable":
        if isinstance(source, (str, Path)):
            with open(source, newline="", encoding="utf-8") as fh:
                return cls.from_csv(fh)
        reader = csv.reader(source)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty table", 1) from None
        header = [h.strip() for h in header]
        if header[:2] != ["function", "dim"] or len(header) < 3:
            raise SchemaError("header must be function,dim,<alg1>,<alg2>,...", 1)
        algs = tuple(header[2:])
        rows, vals = [], []
        for line, rec in enumerate(reader, start=2):
            if not rec or all(not c.strip() for c in rec):
                continue
            if len(rec) != len(header):
                raise SchemaError(f"expected {len(header)} fields, got {len(rec)}", line)
            try:
                dim = int(rec[1])
                vals.append([float(c) for c in rec[2:]])
            except ValueError as e:
                raise SchemaError(str(e), line) from None
            if any(math.isnan(v) for v in vals[-1]):
                raise SchemaError("missing cell", line)
            rows.append((rec[0].strip(), dim))
        if not rows:
            raise SchemaError("table has no data rows")
        return cls(tuple(rows), algs, np.array(vals, dtype=float))


# -- Friedman and Holm -------------------------------------------------------


@dataclass(frozen=True)
class FriedmanResult:
    mean_ranks: dict[str, float]
    statistic: float
    p_value: float
    N: int
    k: int


def row_ranks(values: np.ndarray) -> np.ndarray:
    """Rank within each row, 1 = smallest, ties share the average rank."""
    return stats.rankdata(np.asarray(values, dtype=float), axis=1)


def friedman(table: ResultTable) -> FriedmanResult:
    if table.k < 3 or table.N < 2:
        raise ValueError("Friedman test needs k >= 3 algorithms and N >= 2 rows")
    R = row_ranks(table.values)
    mean = R.mean(axis=0)
    N, k = table.N, table.k
    # classic form without tie correction
    chi2 = 12.0 * N / (k * (k + 1)) * float(np.sum(mean**2)) - 3.0 * N * (k + 1)
    p = float(stats.chi2.sf(chi2, k - 1))
    return FriedmanResult(dict(zip(table.algorithms, map(float, mean))), float(chi2), p, N, k)


@dataclass(frozen=True)
class HolmRow:
    algorithm: str
    rank_control: float
    rank: float
    z: float
    p_raw: float
    p_holm: float
    significant: bool

    @property
    def decision(self) -> str:
        return "Significant" if self.significant else "Not significant"


def holm_posthoc(
    mean_ranks: dict[str, float], k: int, N: int, control: str, alpha: float = 0.05
) -> list[HolmRow]:
    """Control-vs-each comparisons on Friedman mean ranks with Holm step-down.

    ``Z = (R_j - R_c) / sqrt(k (k + 1) / (6 N))``, two-sided normal p-values.
    Rows come back in step-down order (smallest raw p first); the control's
    own row (Z = 0) is appended last and is not part of the Holm family.
    """
    if control not in mean_ranks:
        raise KeyError(f"control {control!r} not among {sorted(mean_ranks)}")
    if k < 2 or N < 1:
        raise ValueError("need k >= 2 and N >= 1")
    se = math.sqrt(k * (k + 1) / (6.0 * N))
    rc = mean_ranks[control]
    comps = []
    for name, r in mean_ranks.items():
        if name == control:
            continue
        z = (r - rc) / se
        comps.append((name, r, z, float(2.0 * stats.norm.sf(abs(z)))))
    comps.sort(key=lambda c: (c[3], c[0]))
    m = len(comps)
    out, running = [], 0.0
    for i, (name, r, z, p) in enumerate(comps):
        running = max(running, min(1.0, (m - i) * p))
        out.append(HolmRow(name, rc, r, z, p, running, running < alpha))
    out.append(HolmRow(control, rc, rc, 0.0, 1.0, 1.0, False))
    return out
