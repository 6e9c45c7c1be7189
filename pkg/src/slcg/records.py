"""Deterministic JSON and CSV writers.

Floats use Python's shortest round-trip repr with a '.' separator, files end
lines with LF, and every file carries the effective configuration (CSV files
as a leading ``# config: {...}`` comment line).
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .optimizer import RunResult


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path: Path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json_text(obj))
    return path


def csv_text(header: Sequence[str], rows: Iterable[Sequence], config: dict | None = None) -> str:
    lines = []
    if config is not None:
        lines.append("# config: " + json.dumps(config, sort_keys=True, separators=(",", ":")))
    lines.append(",".join(header))
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path: Path, header, rows, config: dict | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(csv_text(header, rows, config))
    return path


def read_csv_rows(path: Path) -> tuple[list[str], list[list[str]]]:
    """Header and rows of a file written by ``write_csv`` (comment lines skipped)."""
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if not ln.startswith("#")]
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]


def write_run(out: Path, result: RunResult, config: dict, extra: dict | None = None) -> list[Path]:
    """result.json plus, when histories were kept, convergence.csv and exploitation.csv."""
    out = Path(out)
    body = {"config": config, "result": result.to_dict()}
    if extra:
        body.update(extra)
    paths = [write_json(out / "result.json", body)]
    if result.config is not None and result.config.record_history:
        paths.append(write_csv(out / "convergence.csv", ("evals", "best"), result.convergence_history, config))
        paths.append(
            write_csv(out / "exploitation.csv", ("alpha", "g", "step_type"), result.exploitation_history, config)
        )
    return paths
