"""Run configuration: JSON round trip, validation and problem/scheme resolution."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

from .benchmarks import BENCHMARK_IDS, get_benchmark
from .encoding import DEFAULT_BITS_PER_VARIABLE, EncodingScheme, build_delta
from .engineering import DESIGN_IDS, constrained_problem
from .optimizer import OptimizerConfig
from .problems import Problem, unconstrained

JSON_SAFE_INT = (1 << 53) - 1


class ConfigError(ValueError):
    """Schema violation. ``where`` names the offending field or line."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def big_int(value: Any, where: str) -> int:
    """Accept an int or a decimal string (for integers beyond double precision)."""
    if isinstance(value, bool):
        raise ConfigError(where, "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().isdigit():
        return int(value)
    raise ConfigError(where, f"expected an integer, got {value!r}")


def int_out(value: int | None):
    """Integers that a double cannot hold exactly are written as strings."""
    if value is None or abs(value) <= JSON_SAFE_INT:
        return value
    return str(value)


def resolve_problem(pid: str, dim: int | None = None) -> Problem:
    if pid in DESIGN_IDS:
        return unconstrained(constrained_problem(pid))
    if pid in BENCHMARK_IDS:
        return get_benchmark(pid, dim)
    raise ConfigError("problem", f"unknown problem {pid!r}")


def parse_delta(value: Any, widths, where: str = "optimizer.Delta") -> int | None:
    """An integer, a decimal string, or a list of per-variable bit patterns."""
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        try:
            return build_delta(list(value), widths)
        except ValueError as e:
            raise ConfigError(where, str(e)) from None
    if isinstance(value, str) and "," in value:
        return parse_delta(value.split(","), widths, where)
    return big_int(value, where)


_OPT_KEYS = {"delta_step", "Delta", "s_max", "e_max", "alpha_0", "alpha_max", "max_evals"}
_TOP_KEYS = {"problem", "dim", "bits", "scheme", "optimizer", "emit_history", "out"}


@dataclass
class RunConfig:
    problem: str
    bits: int = DEFAULT_BITS_PER_VARIABLE
    dim: int | None = None
    scheme: dict | None = None
    optimizer: dict = field(default_factory=dict)
    emit_history: bool = True
    out: str | None = None

    @classmethod
    def from_dict(cls, data: Any) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
        unknown = set(data) - _TOP_KEYS
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown field")
        for key in ("problem", "bits"):
            if key not in data:
                raise ConfigError(key, "required field missing")
        if not isinstance(data["problem"], str):
            raise ConfigError("problem", "expected a string")
        bits = data["bits"]
        if isinstance(bits, bool) or not isinstance(bits, int) or bits < 1:
            raise ConfigError("bits", "expected a positive integer")
        dim = data.get("dim")
        if dim is not None and (isinstance(dim, bool) or not isinstance(dim, int) or dim < 1):
            raise ConfigError("dim", "expected a positive integer")
        opt = data.get("optimizer", {}) or {}
        if not isinstance(opt, dict):
            raise ConfigError("optimizer", "expected an object")
        unknown = set(opt) - _OPT_KEYS
        if unknown:
            raise ConfigError(f"optimizer.{sorted(unknown)[0]}", "unknown field")
        scheme = data.get("scheme")
        if scheme is not None:
            try:
                EncodingScheme.from_dict(scheme)
            except ValueError as e:
                raise ConfigError("scheme", str(e)) from None
        return cls(
            problem=data["problem"],
            bits=bits,
            dim=dim,
            scheme=scheme,
            optimizer=dict(opt),
            emit_history=bool(data.get("emit_history", True)),
            out=data.get("out"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        text = Path(path).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"line {e.lineno}", e.msg) from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    # -- resolution ----------------------------------------------------------

    def build(self) -> tuple[Problem, EncodingScheme, OptimizerConfig]:
        problem = resolve_problem(self.problem, self.dim)
        if self.scheme is not None:
            scheme = EncodingScheme.from_dict(self.scheme)
            if scheme.dim != problem.dim:
                raise ConfigError("scheme", f"{scheme.dim} variables for a {problem.dim}-D problem")
        else:
            scheme = problem.scheme(self.bits)
        o = self.optimizer
        try:
            cfg = OptimizerConfig(
                explore_step=parse_delta(o.get("Delta"), scheme.widths),
                exploit_step=big_int(o.get("delta_step", 2), "optimizer.delta_step"),
                s_max=big_int(o.get("s_max", 5000), "optimizer.s_max"),
                e_max=big_int(o.get("e_max", 60), "optimizer.e_max"),
                alpha_0=big_int(o.get("alpha_0", 0), "optimizer.alpha_0"),
                alpha_max=None if o.get("alpha_max") is None else big_int(o["alpha_max"], "optimizer.alpha_max"),
                max_evals=None if o.get("max_evals") is None else big_int(o["max_evals"], "optimizer.max_evals"),
                record_history=self.emit_history,
            )
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError("optimizer", str(e)) from None
        return problem, scheme, cfg.resolve(scheme)

    def effective(self) -> dict:
        """The config with every default made explicit, as written into outputs."""
        problem, scheme, cfg = self.build()
        return {
            "problem": self.problem,
            "dim": problem.dim,
            "bits": self.bits,
            "scheme": scheme.to_dict(),
            "optimizer": {
                "delta_step": cfg.exploit_step,
                "Delta": int_out(cfg.explore_step),
                "s_max": cfg.s_max,
                "e_max": cfg.e_max,
                "alpha_0": int_out(cfg.alpha_0),
                "alpha_max": int_out(cfg.alpha_max),
                "max_evals": cfg.max_evals,
            },
            "emit_history": self.emit_history,
        }
