"""The 26-function benchmark suite (F1-F26).

F1-F13 and F17-F26 follow the classical suite of Yao, Liu & Lin (1999) as
distributed with the grey wolf optimizer code; F14-F16 are scalable
multimodal functions from Yang's test-problem collection. Every objective
takes an ``(..., d)`` array and returns ``(...)``.

Deviations from the textbook definitions, kept deliberately:

* F6 is ``sum(|x + 0.5|^2)`` without the floor (the grey wolf variant).
* F7 replaces ``uniform[0, 1)`` noise by a counter-based hash of the
  quantised input, so the function is deterministic.
* F14-F16 are provisional identifications (Michalewicz, Yang N.3, Yang N.4).

=====  ======================  ==================  ===============================
id     name                    bounds              minimum
=====  ======================  ==================  ===============================
F1     sphere                  [-100, 100]         0 at 0
F2     Schwefel 2.22           [-10, 10]           0 at 0
F3     Schwefel 1.2            [-100, 100]         0 at 0
F4     Schwefel 2.21           [-100, 100]         0 at 0
F5     Rosenbrock              [-30, 30]           0 at 1
F6     shifted sphere (step)   [-100, 100]         0 at -0.5
F7     quartic + noise         [-1.28, 1.28]       0 (noise floor) at 0
F8     Schwefel 2.26           [-500, 500]         -418.98288727 d at 420.9687
F9     Rastrigin               [-5.12, 5.12]       0 at 0
F10    Ackley                  [-32, 32]           0 at 0
F11    Griewank                [-600, 600]         0 at 0
F12    penalized 1             [-50, 50]           0 at -1
F13    penalized 2             [-50, 50]           0 at 1
F14    Michalewicz (m=10)      [0, pi]             -1.8013 (d=2)
F15    Yang N.3 (b=15, m=5)    [-20, 20]           -1 at 0
F16    Yang N.4                [-10, 10]           -1 at 0
F17    Shekel foxholes         [-65.536, 65.536]   0.998004 (d=2)
F18    Kowalik                 [-5, 5]             3.0749e-4 (d=4)
F19    six-hump camel          [-5, 5]             -1.0316285 (d=2)
F20    Branin                  [-5,10] x [0,15]    0.397887 (d=2)
F21    Goldstein-Price         [-2, 2]             3 (d=2)
F22    Hartman 3               [0, 1]              -3.86278 (d=3)
F23    Hartman 6               [0, 1]              -3.32237 (d=6)
F24    Shekel 5                [0, 10]             -10.1532 (d=4)
F25    Shekel 7                [0, 10]             -10.4029 (d=4)
F26    Shekel 10               [0, 10]             -10.5364 (d=4)
=====  ======================  ==================  ===============================
"""
from __future__ import annotations

import numpy as np

from .problems import Problem


class UnknownProblemError(KeyError):
    pass


class DimensionError(ValueError):
    pass


# -- scalable unimodal --------------------------------------------------------


def sphere(x):
    return np.sum(x**2, axis=-1)


def schwefel_2_22(x):
    a = np.abs(x)
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def schwefel_1_2(x):
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def schwefel_2_21(x):
    return np.max(np.abs(x), axis=-1)


def rosenbrock(x):
    a, b = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (b - a**2) ** 2 + (a - 1.0) ** 2, axis=-1)


def shifted_sphere(x):
    return np.sum(np.abs(x + 0.5) ** 2, axis=-1)


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def _splitmix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def hash_noise(x: np.ndarray) -> np.ndarray:
    """Deterministic uniform [0, 1) value per point, from its coordinates.

    Each coordinate is quantised to 2^-32 and folded into a splitmix64 chain,
    so equal inputs always give equal noise.
    """
    q = np.round(np.asarray(x, dtype=float) * 2.0**32).astype(np.int64).view(np.uint64)
    h = np.full(q.shape[:-1], 0x243F6A8885A308D3, dtype=np.uint64)
    with np.errstate(over="ignore"):
        for j in range(q.shape[-1]):
            h = _splitmix(h + _GOLDEN + q[..., j])
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53


def quartic_noise(x):
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(i * x**4, axis=-1) + hash_noise(x)


# -- scalable multimodal ------------------------------------------------------


def schwefel_2_26(x):
    return -np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def rastrigin(x):
    return np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def ackley(x):
    d = x.shape[-1]
    return (
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x**2, axis=-1) / d))
        - np.exp(np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d)
        + 20.0
        + np.e
    )


def griewank(x):
    i = np.sqrt(np.arange(1, x.shape[-1] + 1))
    return np.sum(x**2, axis=-1) / 4000.0 - np.prod(np.cos(x / i), axis=-1) + 1.0


def _u(x, a, k, m):
    return np.sum(
        np.where(x > a, k * (x - a) ** m, 0.0) + np.where(x < -a, k * (-x - a) ** m, 0.0),
        axis=-1,
    )


def penalized_1(x):
    d = x.shape[-1]
    y = 1.0 + (x + 1.0) / 4.0
    core = (
        10.0 * np.sin(np.pi * y[..., 0]) ** 2
        + np.sum((y[..., :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[..., 1:]) ** 2), axis=-1)
        + (y[..., -1] - 1.0) ** 2
    )
    return np.pi / d * core + _u(x, 10.0, 100.0, 4)


def penalized_2(x):
    core = (
        np.sin(3.0 * np.pi * x[..., 0]) ** 2
        + np.sum((x[..., :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[..., 1:]) ** 2), axis=-1)
        + (x[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[..., -1]) ** 2)
    )
    return 0.1 * core + _u(x, 5.0, 100.0, 4)


def michalewicz(x, m: int = 10):
    i = np.arange(1, x.shape[-1] + 1)
    return -np.sum(np.sin(x) * np.sin(i * x**2 / np.pi) ** (2 * m), axis=-1)


def yang_3(x, beta: float = 15.0, m: int = 5):
    return (
        np.exp(-np.sum((x / beta) ** (2 * m), axis=-1)) - 2.0 * np.exp(-np.sum(x**2, axis=-1))
    ) * np.prod(np.cos(x) ** 2, axis=-1)


def yang_4(x):
    return (np.sum(np.sin(x) ** 2, axis=-1) - np.exp(-np.sum(x**2, axis=-1))) * np.exp(
        -np.sum(np.sin(np.sqrt(np.abs(x))) ** 2, axis=-1)
    )


# -- fixed dimension ----------------------------------------------------------

_FOXHOLES = np.array(
    [
        [-32, -16, 0, 16, 32] * 5,
        [-32] * 5 + [-16] * 5 + [0] * 5 + [16] * 5 + [32] * 5,
    ],
    dtype=float,
)


def foxholes(x):
    diff = x[..., :, None] - _FOXHOLES  # (..., 2, 25)
    j = np.arange(1, 26)
    inner = 1.0 / (j + np.sum(diff**6, axis=-2))
    return 1.0 / (1.0 / 500.0 + np.sum(inner, axis=-1))


_KOWALIK_A = np.array(
    [0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
)
_KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16])


def kowalik(x):
    x1, x2, x3, x4 = (x[..., i, None] for i in range(4))
    b = _KOWALIK_B
    model = x1 * (b**2 + b * x2) / (b**2 + b * x3 + x4)
    return np.sum((_KOWALIK_A - model) ** 2, axis=-1)


def six_hump_camel(x):
    x1, x2 = x[..., 0], x[..., 1]
    return 4 * x1**2 - 2.1 * x1**4 + x1**6 / 3 + x1 * x2 - 4 * x2**2 + 4 * x2**4


def branin(x):
    x1, x2 = x[..., 0], x[..., 1]
    return (
        (x2 - 5.1 / (4 * np.pi**2) * x1**2 + 5 / np.pi * x1 - 6) ** 2
        + 10 * (1 - 1 / (8 * np.pi)) * np.cos(x1)
        + 10
    )


def goldstein_price(x):
    x1, x2 = x[..., 0], x[..., 1]
    a = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1**2 - 14 * x2 + 6 * x1 * x2 + 3 * x2**2)
    b = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1**2 + 48 * x2 - 36 * x1 * x2 + 27 * x2**2)
    return a * b


_H3_A = np.array([[3, 10, 30], [0.1, 10, 35], [3, 10, 30], [0.1, 10, 35]], dtype=float)
_H3_P = np.array(
    [[0.3689, 0.117, 0.2673], [0.4699, 0.4387, 0.747], [0.1091, 0.8732, 0.5547], [0.03815, 0.5743, 0.8828]]
)
_H6_A = np.array(
    [
        [10, 3, 17, 3.5, 1.7, 8],
        [0.05, 10, 17, 0.1, 8, 14],
        [3, 3.5, 1.7, 10, 17, 8],
        [17, 8, 0.05, 10, 0.1, 14],
    ],
    dtype=float,
)
_H6_P = np.array(
    [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ]
)
_H_C = np.array([1.0, 1.2, 3.0, 3.2])


def _hartman(x, A, P):
    inner = np.sum(A * (x[..., None, :] - P) ** 2, axis=-1)
    return -np.sum(_H_C * np.exp(-inner), axis=-1)


def hartman_3(x):
    return _hartman(x, _H3_A, _H3_P)


def hartman_6(x):
    return _hartman(x, _H6_A, _H6_P)


_SHEKEL_A = np.array(
    [
        [4, 4, 4, 4],
        [1, 1, 1, 1],
        [8, 8, 8, 8],
        [6, 6, 6, 6],
        [3, 7, 3, 7],
        [2, 9, 2, 9],
        [5, 5, 3, 3],
        [8, 1, 8, 1],
        [6, 2, 6, 2],
        [7, 3.6, 7, 3.6],
    ],
    dtype=float,
)
_SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


def _shekel(x, m):
    diff = x[..., None, :] - _SHEKEL_A[:m]
    return -np.sum(1.0 / (np.sum(diff**2, axis=-1) + _SHEKEL_C[:m]), axis=-1)


def shekel_5(x):
    return _shekel(x, 5)


def shekel_7(x):
    return _shekel(x, 7)


def shekel_10(x):
    return _shekel(x, 10)


# -- registry -----------------------------------------------------------------

SCHWEFEL_226_OPT = 420.96874603892866
SCHWEFEL_226_PER_DIM = -418.98288727243374

# scalable: (name, fn, per-variable bounds, optimum(d), location(d))
# fixed: (name, fn, bounds list, optimum, location); optima refined to ~1e-12
_SCALABLE: dict[str, tuple] = {
    "F1": ("sphere", sphere, (-100, 100), lambda d: 0.0, lambda d: (0.0,) * d),
    "F2": ("schwefel_2_22", schwefel_2_22, (-10, 10), lambda d: 0.0, lambda d: (0.0,) * d),
    "F3": ("schwefel_1_2", schwefel_1_2, (-100, 100), lambda d: 0.0, lambda d: (0.0,) * d),
    "F4": ("schwefel_2_21", schwefel_2_21, (-100, 100), lambda d: 0.0, lambda d: (0.0,) * d),
    "F5": ("rosenbrock", rosenbrock, (-30, 30), lambda d: 0.0, lambda d: (1.0,) * d),
    "F6": ("shifted_sphere", shifted_sphere, (-100, 100), lambda d: 0.0, lambda d: (-0.5,) * d),
    "F7": ("quartic_noise", quartic_noise, (-1.28, 1.28), lambda d: 0.0, lambda d: None),
    "F8": (
        "schwefel_2_26",
        schwefel_2_26,
        (-500, 500),
        lambda d: SCHWEFEL_226_PER_DIM * d,
        lambda d: (SCHWEFEL_226_OPT,) * d,
    ),
    "F9": ("rastrigin", rastrigin, (-5.12, 5.12), lambda d: 0.0, lambda d: (0.0,) * d),
    "F10": ("ackley", ackley, (-32, 32), lambda d: 0.0, lambda d: (0.0,) * d),
    "F11": ("griewank", griewank, (-600, 600), lambda d: 0.0, lambda d: (0.0,) * d),
    "F12": ("penalized_1", penalized_1, (-50, 50), lambda d: 0.0, lambda d: (-1.0,) * d),
    "F13": ("penalized_2", penalized_2, (-50, 50), lambda d: 0.0, lambda d: (1.0,) * d),
    "F14": (
        "michalewicz",
        michalewicz,
        (0, np.pi),
        lambda d: _MICHALEWICZ.get(d, (None, None))[0],
        lambda d: _MICHALEWICZ.get(d, (None, None))[1],
    ),
    "F15": ("yang_3", yang_3, (-20, 20), lambda d: -1.0, lambda d: (0.0,) * d),
    "F16": ("yang_4", yang_4, (-10, 10), lambda d: -1.0, lambda d: (0.0,) * d),
}

# d=2 minimiser refined with L-BFGS-B; d=5, 10 are literature values
_MICHALEWICZ = {
    2: (-1.8013034100985519, (2.2029055122742425, 1.5707963237319649)),
    5: (-4.687658179, None),
    10: (-9.66015, None),
}

_FIXED: dict[str, tuple] = {
    "F17": ("foxholes", foxholes, [(-65.536, 65.536)] * 2, 0.99800383779445,
            (-31.978334472937256, -31.978340788129035)),
    "F18": ("kowalik", kowalik, [(-5, 5)] * 4, 0.00030748598780560606,
            (0.1928334531220072, 0.19083624744042324, 0.12311730138624344, 0.13576599305292816)),
    "F19": ("six_hump_camel", six_hump_camel, [(-5, 5)] * 2, -1.0316284534898776,
            (0.08984201478761819, -0.7126564066667309)),
    "F20": ("branin", branin, [(-5, 10), (0, 15)], 0.39788735772973816, (np.pi, 2.275)),
    "F21": ("goldstein_price", goldstein_price, [(-2, 2)] * 2, 3.0, (0.0, -1.0)),
    "F22": ("hartman_3", hartman_3, [(0, 1)] * 3, -3.8627821478207554,
            (0.11461434203082951, 0.555648850790533, 0.8525469538460128)),
    "F23": ("hartman_6", hartman_6, [(0, 1)] * 6, -3.322368011415515,
            (0.20168951037794658, 0.15001069146456325, 0.4768739733706766,
             0.2753324288543796, 0.3116516165632252, 0.6573005308464771)),
    "F24": ("shekel_5", shekel_5, [(0, 10)] * 4, -10.153199679058229,
            (4.000037152376545, 4.000133278657559, 4.000037151057551, 4.00013327709042)),
    "F25": ("shekel_7", shekel_7, [(0, 10)] * 4, -10.402940566818662,
            (4.000572914277064, 4.000689366040856, 3.9994897107938114, 3.999606160006755)),
    "F26": ("shekel_10", shekel_10, [(0, 10)] * 4, -10.536409816692045,
            (4.000746530253313, 4.000592936779709, 3.9996633957714787, 3.9995097993299975)),
}

BENCHMARK_IDS = tuple(f"F{i}" for i in range(1, 27))
SCALABLE_IDS = tuple(_SCALABLE)
FIXED_IDS = tuple(_FIXED)


def native_dim(fid: str) -> int | None:
    """Fixed dimension of ``fid``, or None for scalable functions."""
    if fid in _FIXED:
        return len(_FIXED[fid][2])
    if fid in _SCALABLE:
        return None
    raise UnknownProblemError(fid)


def get_benchmark(fid: str, d: int | None = None) -> Problem:
    fid = fid.upper()
    if fid in _SCALABLE:
        name, fn, (lo, hi), opt, loc = _SCALABLE[fid]
        if d is None:
            raise DimensionError(f"{fid} is scalable; a dimension is required")
        if d < 2:
            raise DimensionError(f"{fid} needs d >= 2, got {d}")
        return Problem(
            id=fid,
            dim=d,
            bounds=tuple((float(lo), float(hi)) for _ in range(d)),
            objective=fn,
            known_optimum=opt(d),
            optimum_location=loc(d),
            description=name,
        )
    if fid in _FIXED:
        name, fn, bounds, opt, loc = _FIXED[fid]
        if d is not None and d != len(bounds):
            raise DimensionError(f"{fid} is fixed at d={len(bounds)}, got {d}")
        return Problem(
            id=fid,
            dim=len(bounds),
            bounds=tuple((float(lo), float(hi)) for lo, hi in bounds),
            objective=fn,
            known_optimum=opt,
            optimum_location=loc,
            description=name,
        )
    raise UnknownProblemError(f"unknown benchmark {fid!r}")


def iter_suite(d_scalable: int = 2):
    """Yield every problem, scalable ones at ``d_scalable``, fixed at their own d."""
    for fid in BENCHMARK_IDS:
        yield get_benchmark(fid, d_scalable if fid in _SCALABLE else None)

