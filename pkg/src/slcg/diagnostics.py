"""Point clouds from S-LCG, RANDU and a uniform reference, plus uniformity statistics."""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import special, stats
from scipy.spatial import cKDTree

from .encoding import EncodingScheme, VariableSpec
from .generator import check_bits, enumerate_cycle, is_generator

RANDU_MULTIPLIER = 65539
RANDU_MODULUS = 1 << 31

# Exploration step used for the 31-bit, 3-D uniformity study. See README.
DEFAULT_CLOUD_DELTA = 629_484

SOURCES = ("slcg", "randu", "uniform")


class PartialCloudWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    source: str
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")

    @property
    def count(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])


def split_widths(n: int, d: int) -> tuple[int, ...]:
    """Equal widths with the remainder on the last variable (31, 3 -> 10|10|11)."""
    if d < 1 or n < d:
        raise ValueError(f"cannot split {n} bits into {d} variables")
    base = n // d
    return (base,) * (d - 1) + (n - base * (d - 1),)


def unit_scheme(n: int, d: int) -> EncodingScheme:
    return EncodingScheme(tuple(VariableSpec(0.0, 1.0, b) for b in split_widths(n, d)))


def slcg_cloud(n: int, d: int, Delta: int = DEFAULT_CLOUD_DELTA, count: int | None = 6200) -> PointCloud:
    """Walk candidates 0, Delta, 2*Delta, ... and decode every state of each generator's cycle.

    Non-generators are skipped. The walk stops at ``(2^n - 1) // 2``, above
    which no state can be a cycle minimum, so short cycles whose generator
    exceeds ``alpha_max`` are included. ``count=None`` collects everything.
    Running out of candidates short of ``count`` returns the partial cloud
    with a ``PartialCloudWarning``.
    """
    check_bits(n)
    if Delta <= 0 or Delta % 2:
        raise ValueError("Delta must be a positive even integer")
    scheme = unit_scheme(n, d)
    bound = ((1 << n) - 1) // 2
    states: list[int] = []
    alpha = 0
    while alpha <= bound and (count is None or len(states) < count):
        if is_generator(alpha, n):
            states.extend(enumerate_cycle(alpha, n).states)
        alpha += Delta
    if count is not None:
        if len(states) < count:
            warnings.warn(
                f"only {len(states)} of {count} points before the walk ran out of candidates",
                PartialCloudWarning,
            )
        states = states[:count]
    P = scheme.decode_many(states) if states else np.empty((0, d))
    return PointCloud(P, "slcg", {"n": n, "dim": d, "Delta": Delta, "widths": list(scheme.widths)})


def randu_states(count: int, seed: int = 1) -> list[int]:
    if seed % 2 == 0 or seed <= 0:
        raise ValueError("RANDU seed must be a positive odd integer")
    out = []
    x = seed
    for _ in range(count):
        x = (RANDU_MULTIPLIER * x) % RANDU_MODULUS
        out.append(x)
    return out


def randu_cloud(count: int, d: int, seed: int = 1) -> PointCloud:
    """Consecutive RANDU outputs grouped into d-tuples, divided by 2^31."""
    xs = np.array(randu_states(count * d, seed), dtype=float) / RANDU_MODULUS
    return PointCloud(xs.reshape(count, d), "randu", {"dim": d, "seed": seed})


def uniform_cloud(count: int, d: int, seed: int = 0) -> PointCloud:
    """Reference cloud from the counter-based Philox stream (reproducible across platforms)."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    return PointCloud(rng.random((count, d)), "uniform", {"dim": d, "seed": seed})


def make_cloud(source: str, n: int, d: int, count: int, Delta: int | None = None, seed: int | None = None):
    if source == "slcg":
        return slcg_cloud(n, d, Delta or DEFAULT_CLOUD_DELTA, count)
    if source == "randu":
        return randu_cloud(count, d, 1 if seed is None else seed)
    if source == "uniform":
        return uniform_cloud(count, d, 0 if seed is None else seed)
    raise ValueError(f"unknown source {source!r}")


def expected_nn_distance(N: int, d: int) -> float:
    """Mean nearest-neighbour distance of a Poisson process of N points in the unit d-cube.

    ``Gamma(1 + 1/d) / (N * V_d) ** (1/d)`` with ``V_d`` the unit d-ball volume;
    no edge correction.
    """
    V = math.pi ** (d / 2) / special.gamma(1 + d / 2)
    return float(special.gamma(1 + 1 / d) / (N * V) ** (1 / d))


@dataclass(frozen=True)
class UniformityReport:
    count: int
    dim: int
    bins_per_axis: int
    chi2: float
    chi2_p: float
    ks_worst: float
    nn_ratio: float
    nn_cv: float
    max_abs_corr: float
    degenerate: bool

    def to_dict(self) -> dict:
        return {k: (None if isinstance(v, float) and not math.isfinite(v) else v)
                for k, v in asdict(self).items()}


def uniformity_report(cloud: PointCloud | np.ndarray, bins_per_axis: int = 5) -> UniformityReport:
    P = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=float)
    if P.ndim != 2 or P.shape[0] == 0:
        raise ValueError("cloud must be a non-empty (N, d) array")
    if bins_per_axis < 2:
        raise ValueError("bins_per_axis must be >= 2")
    N, d = P.shape
    degenerate = bool(np.all(P == P[0]))

    idx = np.clip((P * bins_per_axis).astype(int), 0, bins_per_axis - 1)
    observed = np.bincount(
        np.ravel_multi_index(idx.T, (bins_per_axis,) * d), minlength=bins_per_axis**d
    )
    chi = stats.chisquare(observed)

    ks = max(stats.kstest(P[:, j], "uniform").statistic for j in range(d))

    if N > 1:
        dist, _ = cKDTree(P).query(P, k=2)
        nn = dist[:, 1]
        mean = float(nn.mean())
        ratio = mean / expected_nn_distance(N, d)
        cv = float(nn.std() / mean) if mean > 0 else math.nan
    else:
        ratio, cv = 0.0, math.nan
    degenerate = degenerate or not ratio > 0

    corr = 0.0
    sd = P.std(axis=0)
    live = np.flatnonzero(sd > 0)
    if live.size >= 2:
        R = np.corrcoef(P[:, live].T)
        corr = float(np.max(np.abs(R[np.triu_indices(live.size, 1)])))

    return UniformityReport(
        count=N,
        dim=d,
        bins_per_axis=bins_per_axis,
        chi2=float(chi.statistic),
        chi2_p=float(chi.pvalue),
        ks_worst=float(ks),
        nn_ratio=float(ratio),
        nn_cv=cv,
        max_abs_corr=corr,
        degenerate=degenerate,
    )
