"""Constrained engineering designs: spring, welded beam, pressure vessel.

Formulations follow the usual grey wolf optimizer benchmark set. Constraints
are ``g(x) <= 0``. Pressure-vessel shell and head thicknesses are integer
multiples of 0.0625 in; their scheme encodes them as discrete segments.
"""
from __future__ import annotations

import numpy as np

from .encoding import EncodingScheme, VariableSpec, default_scheme
from .problems import Problem

THICKNESS_STEP = 0.0625
THICKNESS_BITS = 7  # 1..128 multiples of 0.0625


class UnknownDesignError(KeyError):
    pass


# -- tension/compression spring: x = (wire d, coil D, active coils N) --------


def spring_cost(x):
    d, D, N = x[..., 0], x[..., 1], x[..., 2]
    return (N + 2.0) * D * d**2


def spring_constraints(x):
    d, D, N = x[..., 0], x[..., 1], x[..., 2]
    g1 = 1.0 - D**3 * N / (71785.0 * d**4)
    # D == d makes g2 infinite, which reads as infeasible
    with np.errstate(divide="ignore", invalid="ignore"):
        g2 = (4.0 * D**2 - d * D) / (12566.0 * (D * d**3 - d**4)) + 1.0 / (5108.0 * d**2) - 1.0
    g3 = 1.0 - 140.45 * d / (D**2 * N)
    g4 = (d + D) / 1.5 - 1.0
    return np.stack([g1, g2, g3, g4], axis=-1)


# -- welded beam: x = (h, l, t, b) --------------------------------------------

_P, _L, _E, _G = 6000.0, 14.0, 30e6, 12e6
_TAU_MAX, _SIGMA_MAX, _DELTA_MAX = 13600.0, 30000.0, 0.25


def welded_beam_cost(x):
    h, l, t, b = (x[..., i] for i in range(4))
    return 1.10471 * h**2 * l + 0.04811 * t * b * (14.0 + l)


def welded_beam_constraints(x):
    h, l, t, b = (x[..., i] for i in range(4))
    tau_p = _P / (np.sqrt(2.0) * h * l)
    M = _P * (_L + l / 2.0)
    R = np.sqrt(l**2 / 4.0 + ((h + t) / 2.0) ** 2)
    J = 2.0 * (np.sqrt(2.0) * h * l * (l**2 / 12.0 + ((h + t) / 2.0) ** 2))
    tau_pp = M * R / J
    tau = np.sqrt(tau_p**2 + 2.0 * tau_p * tau_pp * l / (2.0 * R) + tau_pp**2)
    sigma = 6.0 * _P * _L / (b * t**2)
    delta = 4.0 * _P * _L**3 / (_E * t**3 * b)
    p_c = (
        4.013 * _E * np.sqrt(t**2 * b**6 / 36.0) / _L**2
        * (1.0 - t / (2.0 * _L) * np.sqrt(_E / (4.0 * _G)))
    )
    return np.stack(
        [
            tau - _TAU_MAX,
            sigma - _SIGMA_MAX,
            h - b,
            0.10471 * h**2 + 0.04811 * t * b * (14.0 + l) - 5.0,
            0.125 - h,
            delta - _DELTA_MAX,
            _P - p_c,
        ],
        axis=-1,
    )


# -- pressure vessel: x = (Ts, Th, R, L) --------------------------------------


def pressure_vessel_cost(x):
    ts, th, r, l = (x[..., i] for i in range(4))
    return 0.6224 * ts * r * l + 1.7781 * th * r**2 + 3.1661 * ts**2 * l + 19.84 * ts**2 * r


def pressure_vessel_constraints(x):
    ts, th, r, l = (x[..., i] for i in range(4))
    return np.stack(
        [
            -ts + 0.0193 * r,
            -th + 0.00954 * r,
            -np.pi * r**2 * l - 4.0 / 3.0 * np.pi * r**3 + 1296000.0,
            l - 240.0,
        ],
        axis=-1,
    )


def _vessel_scheme(bits_per_variable: int) -> EncodingScheme:
    thick = VariableSpec(
        THICKNESS_STEP, THICKNESS_STEP * (1 << THICKNESS_BITS), THICKNESS_BITS, step=THICKNESS_STEP
    )
    rest = default_scheme([(10.0, 200.0), (10.0, 200.0)], bits_per_variable, force_odd=False)
    widths = [THICKNESS_BITS, THICKNESS_BITS, *rest.widths]
    if sum(widths) % 2 == 0:
        widths[-1] += 1
    return EncodingScheme(
        (thick, thick, VariableSpec(10.0, 200.0, widths[2]), VariableSpec(10.0, 200.0, widths[3]))
    )


_DESIGNS = {
    "spring": dict(
        bounds=((0.05, 2.0), (0.25, 1.3), (2.0, 15.0)),
        objective=spring_cost,
        constraints=spring_constraints,
        description="tension/compression spring weight",
    ),
    "welded_beam": dict(
        bounds=((0.1, 2.0), (0.1, 10.0), (0.1, 10.0), (0.1, 2.0)),
        objective=welded_beam_cost,
        constraints=welded_beam_constraints,
        description="welded beam fabrication cost",
    ),
    "pressure_vessel": dict(
        bounds=((THICKNESS_STEP, THICKNESS_STEP * 128), (THICKNESS_STEP, THICKNESS_STEP * 128),
                (10.0, 200.0), (10.0, 200.0)),
        objective=pressure_vessel_cost,
        constraints=pressure_vessel_constraints,
        description="cylindrical pressure vessel cost, thicknesses in 0.0625 in steps",
        scheme_factory=_vessel_scheme,
    ),
}

DESIGN_IDS = tuple(_DESIGNS)


def constrained_problem(pid: str) -> Problem:
    try:
        spec = dict(_DESIGNS[pid])
    except KeyError:
        raise UnknownDesignError(f"unknown design problem {pid!r}") from None
    return Problem(id=pid, dim=len(spec["bounds"]), **spec)
