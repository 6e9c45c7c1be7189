"""Problem container shared by the benchmark suite and the engineering designs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .encoding import DEFAULT_BITS_PER_VARIABLE, EncodingScheme, default_scheme

# objective and constraints take an (..., d) array and reduce the last axis
BatchFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Problem:
    """A box-bounded minimisation problem.

    ``objective`` is vectorised over leading axes. ``constraints`` returns an
    ``(..., m)`` array; a point is feasible iff every entry is <= 0.
    """

    id: str
    dim: int
    bounds: tuple[tuple[float, float], ...]
    objective: BatchFn
    constraints: BatchFn | None = None
    known_optimum: float | None = None
    optimum_location: tuple[float, ...] | None = None
    description: str = ""
    scheme_factory: Callable[[int], EncodingScheme] | None = field(default=None, compare=False)

    def __call__(self, x: Sequence[float]) -> float:
        return float(self.objective(np.asarray(x, dtype=float)[None, :])[0])

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(self.objective(np.asarray(X, dtype=float)), dtype=float)

    def constraint_values(self, x: Sequence[float]) -> np.ndarray:
        if self.constraints is None:
            return np.empty(0)
        return np.asarray(self.constraints(np.asarray(x, dtype=float)[None, :])[0])

    def is_feasible(self, x: Sequence[float]) -> bool:
        return bool(np.all(self.constraint_values(x) <= 0))

    def scheme(self, bits_per_variable: int = DEFAULT_BITS_PER_VARIABLE) -> EncodingScheme:
        if self.scheme_factory is not None:
            return self.scheme_factory(bits_per_variable)
        return default_scheme(self.bounds, bits_per_variable)

    def gap(self, value: float) -> float | None:
        """Relative gap to the known optimum, or absolute when ``|f*| <= 1e-6``."""
        if self.known_optimum is None:
            return None
        f = self.known_optimum
        if abs(f) > 1e-6:
            return abs(value - f) / abs(f)
        return abs(value - f)


def death_penalty(problem: Problem) -> BatchFn:
    """Objective that is +inf wherever any constraint is violated."""
    if problem.constraints is None:
        raise ValueError(f"{problem.id} has no constraints")
    f, g = problem.objective, problem.constraints

    def penalised(X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        vals = np.asarray(f(X), dtype=float)
        # NaN constraint values count as violations
        infeasible = np.any(~(np.asarray(g(X)) <= 0), axis=-1)
        return np.where(infeasible, np.inf, vals)

    return penalised


def unconstrained(problem: Problem) -> Problem:
    """``problem`` with its constraints folded into the objective by death penalty."""
    if problem.constraints is None:
        return problem
    return Problem(
        id=problem.id,
        dim=problem.dim,
        bounds=problem.bounds,
        objective=death_penalty(problem),
        known_optimum=problem.known_optimum,
        optimum_location=problem.optimum_location,
        description=problem.description,
        scheme_factory=problem.scheme_factory,
    )
