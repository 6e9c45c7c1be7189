"""Two-level search over the generator space.

The outer loop walks candidate generators ``alpha`` upward from ``alpha_0``;
every valid generator triggers the inner loop, which evaluates the objective
on all ``2n`` decoded states of its cycle and keeps the minimum ``g(alpha)``.
The outer step is chosen by three tiers in strict priority:

1. stagnation: more than ``s_max`` non-improving generators -> explore step,
2. local descent: ``g(alpha) < g(previous)`` and budget left -> exploit step,
3. otherwise -> explore step, exploitation budget reset.

Invalid candidates advance by the explore step at zero evaluation cost.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .encoding import EncodingScheme, default_delta
from .generator import (
    FAST_PATH_MAX_BITS,
    alpha_bound,
    closed_form_state,
    cycle_matrix,
    cycle_states,
    is_generator,
    is_generator_array,
    walk_states,
)

# objectives map an (..., d) array of points to an (...) array of values
Objective = Callable[[np.ndarray], np.ndarray]

EXPLORE = "explore"
EXPLOIT = "exploit"
STAGNATION = "stagnation-jump"
SKIPPED = "skipped-invalid"


class InvalidGeneratorError(ValueError):
    pass


class SweepCapError(RuntimeError):
    pass


class DegenerateSequenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    """Everything that determines a run.

    ``explore_step`` is the coarse step (Delta) and ``exploit_step`` the fine
    one (delta). ``explore_step=None`` takes the scheme's default step and
    ``alpha_max=None`` the closed-form bound for its bit width; ``resolve``
    fills both in.
    """

    explore_step: int | None = None
    exploit_step: int = 2
    s_max: int = 5000
    e_max: int = 60
    alpha_0: int = 0
    alpha_max: int | None = None
    max_evals: int | None = None
    allow_even_bits: bool = False
    record_history: bool = True

    def __post_init__(self):
        for name in ("explore_step", "exploit_step"):
            v = getattr(self, name)
            if v is None and name == "explore_step":
                continue
            if int(v) != v or v <= 0 or v % 2:
                raise ValueError(f"{name} must be a positive even integer, got {v}")
        if self.alpha_0 < 0 or self.alpha_0 % 2:
            raise ValueError(f"alpha_0 must be a non-negative even integer, got {self.alpha_0}")
        if self.alpha_max is not None and self.alpha_0 > self.alpha_max:
            raise ValueError("alpha_0 exceeds alpha_max")
        if self.s_max < 1 or self.e_max < 0:
            raise ValueError("s_max must be >= 1 and e_max >= 0")
        if self.max_evals is not None and self.max_evals < 1:
            raise ValueError("max_evals must be positive")

    def bound(self, n: int) -> int:
        if self.alpha_max is not None:
            return self.alpha_max
        return alpha_bound(n, allow_even=self.allow_even_bits)[0]

    def resolve(self, scheme: EncodingScheme) -> "OptimizerConfig":
        """Copy with every defaulted field made concrete for ``scheme``."""
        step = self.explore_step or default_delta(scheme.widths)
        return replace(self, explore_step=step, alpha_max=self.bound(scheme.total_bits))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class RunResult:
    best_point: list[float] | None
    best_value: float
    generators_evaluated: int
    function_evaluations: int
    distinct_points: int
    bits: int
    alpha_final: int
    budget_exhausted: bool = False
    config: OptimizerConfig | None = None
    convergence_history: list[tuple[int, float]] = field(default_factory=list)
    exploitation_history: list[tuple[int, float | None, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        def num(v):
            return None if v is None or not math.isfinite(v) else v

        return {
            "best_point": self.best_point,
            "best_value": num(self.best_value),
            "generators_evaluated": self.generators_evaluated,
            "function_evaluations": self.function_evaluations,
            "distinct_points": self.distinct_points,
            "bits": self.bits,
            "alpha_final": str(self.alpha_final),
            "budget_exhausted": self.budget_exhausted,
        }


def cycle_period(alpha: int, n: int) -> int:
    """Smallest p dividing 2n with ``alpha`` back after p steps."""
    for p in range(1, 2 * n + 1):
        if (2 * n) % p == 0 and closed_form_state(p, alpha, n) == alpha:
            return p
    raise AssertionError("period must divide 2n")


def _finite_or_inf(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return np.where(np.isnan(v), np.inf, v)


def _cycle(alpha: int, scheme: EncodingScheme, objective: Objective):
    """Decoded points, objective values and period of alpha's 2n-step walk."""
    n = scheme.total_bits
    if n <= FAST_PATH_MAX_BITS:
        S = cycle_states(alpha, n)
        period = (2 * n) // int(np.count_nonzero(S == S[0]))
    else:
        S = walk_states(alpha, n)
        period = cycle_period(alpha, n)
    X = scheme.decode_many(S)
    return X, _finite_or_inf(objective(X)), period


def evaluate_generator(
    alpha: int, scheme: EncodingScheme, objective: Objective, check: bool = True
) -> tuple[float, np.ndarray | None]:
    """Minimum of ``objective`` over the 2n decoded states starting at ``alpha``.

    Ties keep the earliest state. Returns ``(inf, None)`` when no state has a
    finite value.
    """
    if check and not is_generator(alpha, scheme.total_bits):
        raise InvalidGeneratorError(f"{alpha} is not a generator for n={scheme.total_bits}")
    X, vals, _ = _cycle(alpha, scheme, objective)
    return _argmin(X, vals)


def _argmin(X, vals):
    i = int(np.argmin(vals))
    if not vals[i] < math.inf:
        return math.inf, None
    return float(vals[i]), X[i]


def optimize(objective: Objective, scheme: EncodingScheme, config: OptimizerConfig) -> RunResult:
    n = scheme.total_bits
    config = config.resolve(scheme)
    bound = config.alpha_max
    per_gen = 2 * n
    small, large = config.exploit_step, config.explore_step

    best_value = math.inf
    best_point = None
    f_prev = math.inf
    stag = exploit = 0
    K = evals = distinct = 0
    conv: list[tuple[int, float]] = []
    hist: list[tuple[int, float | None, str]] = []
    record = config.record_history
    exhausted = False
    alpha = config.alpha_0

    while alpha <= bound:
        if not is_generator(alpha, n):
            if record:
                hist.append((alpha, None, SKIPPED))
            alpha += large
            continue
        if config.max_evals is not None and evals + per_gen > config.max_evals:
            exhausted = True
            break

        X, vals, period = _cycle(alpha, scheme, objective)
        g, x = _argmin(X, vals)
        K += 1
        evals += per_gen
        distinct += period

        if g < best_value:
            best_value, best_point = g, x
            stag = 0
        else:
            stag += 1

        if stag > config.s_max:
            tag = STAGNATION
            nxt = alpha + large
            stag = 0
        elif exploit < config.e_max and g < f_prev:
            tag = EXPLOIT
            nxt = alpha + small
            exploit += 1
        else:
            tag = EXPLORE
            nxt = alpha + large
            exploit = 0
        f_prev = g

        if record:
            conv.append((evals, best_value))
            hist.append((alpha, g, tag))
        alpha = nxt

    return RunResult(
        best_point=None if best_point is None else [float(v) for v in best_point],
        best_value=best_value,
        generators_evaluated=K,
        function_evaluations=evals,
        distinct_points=distinct,
        bits=n,
        alpha_final=alpha,
        budget_exhausted=exhausted,
        config=config,
        convergence_history=conv,
        exploitation_history=hist,
    )


@dataclass(frozen=True)
class SweepRow:
    alpha: int
    g: float
    period: int


def _sweep_range(objective, scheme, lo, hi, chunk) -> list[SweepRow]:
    n = scheme.total_bits
    rows: list[SweepRow] = []
    if n <= FAST_PATH_MAX_BITS:
        for start in range(lo, hi + 1, 2 * chunk):
            cand = np.arange(start, min(hi, start + 2 * chunk - 2) + 1, 2, dtype=np.uint64)
            gens = cand[is_generator_array(cand, n)]
            if gens.size == 0:
                continue
            S = cycle_matrix(gens, n)
            vals = _finite_or_inf(objective(scheme.decode_many(S)))
            g = vals.min(axis=1)
            # S[:, 0] reappears 2n/p times in a row of 2n states
            periods = (2 * n) // np.count_nonzero(S == S[:, :1], axis=1)
            rows.extend(
                SweepRow(int(a), float(v), int(p)) for a, v, p in zip(gens, g, periods)
            )
        return rows
    for a in range(lo, hi + 1, 2):
        if is_generator(a, n):
            g, _ = evaluate_generator(a, scheme, objective, check=False)
            rows.append(SweepRow(a, g, cycle_period(a, n)))
    return rows


def exhaustive_sweep(
    objective: Objective,
    scheme: EncodingScheme,
    upper: int | None = None,
    cap: int = 2_000_000,
    workers: int = 1,
    chunk: int = 1 << 14,
    allow_even_bits: bool = False,
) -> list[SweepRow]:
    """Evaluate ``g`` at every generator in ``[0, upper]`` (default ``alpha_max``).

    ``cap`` bounds the expected generator count (about ``2^n / 2n``).
    With ``workers > 1`` the range is split into even-aligned blocks that are
    swept concurrently; the merged rows equal the sequential result.
    """
    n = scheme.total_bits
    if upper is None:
        upper = alpha_bound(n, allow_even=allow_even_bits)[0]
    expected = min(upper // 2 + 1, (1 << n) // (2 * n) + 1)
    if expected > cap:
        raise SweepCapError(f"~{expected} generators for n={n} exceeds cap {cap}")
    if workers <= 1:
        return _sweep_range(objective, scheme, 0, upper, chunk)
    edges = np.linspace(0, upper + 1, workers + 1).astype(object)
    bounds = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        lo = int(lo) + (int(lo) & 1)
        hi = int(hi) - 1
        if lo <= hi:
            bounds.append((lo, hi))
    with ThreadPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(lambda b: _sweep_range(objective, scheme, b[0], b[1], chunk), bounds))
    return [row for part in parts for row in part]


def lag_autocorrelation(values: Sequence[float], k: int) -> float:
    """Pearson correlation between ``values[:-k]`` and ``values[k:]``.

    Pairs with a non-finite member are dropped. A constant sequence has no
    defined correlation; 0.0 is returned with a ``DegenerateSequenceWarning``.
    """
    v = np.asarray(values, dtype=float)
    if k < 1:
        raise ValueError("lag must be >= 1")
    if v.size <= k + 1:
        raise ValueError(f"need more than {k + 1} values for lag {k}")
    a, b = v[:-k], v[k:]
    ok = np.isfinite(a) & np.isfinite(b)
    a, b = a[ok], b[ok]
    if a.size < 2 or np.ptp(a) == 0 or np.ptp(b) == 0:
        warnings.warn("constant sequence: autocorrelation defined as 0", DegenerateSequenceWarning)
        return 0.0
    a = a - a.mean()
    b = b - b.mean()
    return float(np.dot(a, b) / math.sqrt(np.dot(a, a) * np.dot(b, b)))
