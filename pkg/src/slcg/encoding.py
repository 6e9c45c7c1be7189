"""Bit-splitting: one n-bit state <-> one point of a d-dimensional grid.

Variable 1 occupies the least significant bits. Segment ``S_j`` of width
``b_j`` maps to ``L_j + S_j / (2^b_j - 1) * (U_j - L_j)`` so both bounds are
reachable. A variable may instead carry a fixed ``step`` (discrete levels,
``L_j + S_j * step``), used for thickness-like design variables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .generator import FAST_PATH_MAX_BITS

DEFAULT_BITS_PER_VARIABLE = 20


class WidthMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class VariableSpec:
    lower: float
    upper: float
    bits: int
    step: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("bounds must be finite")
        if not self.lower < self.upper:
            raise ValueError(f"lower {self.lower} must be < upper {self.upper}")
        if int(self.bits) != self.bits or self.bits < 1:
            raise ValueError(f"bits must be a positive int, got {self.bits}")
        if self.step is not None:
            top = self.lower + ((1 << self.bits) - 1) * self.step
            if self.step <= 0 or not math.isclose(top, self.upper, rel_tol=1e-12):
                raise ValueError(
                    f"discrete variable: lower + (2^bits - 1) * step = {top}, "
                    f"expected upper = {self.upper}"
                )

    @property
    def levels(self) -> int:
        return 1 << self.bits

    def value(self, segment):
        """Map segment integer(s) to problem units."""
        if self.step is not None:
            return self.lower + segment * self.step
        return self.lower + segment / ((1 << self.bits) - 1) * (self.upper - self.lower)

    def segment(self, v: float) -> int:
        """Nearest segment integer for a coordinate (inverse quantizer)."""
        if self.step is not None:
            s = round((v - self.lower) / self.step)
        else:
            s = round((v - self.lower) / (self.upper - self.lower) * ((1 << self.bits) - 1))
        return min(max(int(s), 0), (1 << self.bits) - 1)

    def to_dict(self) -> dict:
        d = {"lower": self.lower, "upper": self.upper, "bits": self.bits}
        if self.step is not None:
            d["step"] = self.step
        return d


@dataclass(frozen=True)
class EncodingScheme:
    variables: tuple[VariableSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("scheme needs at least one variable")

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple(v.bits for v in self.variables)

    @property
    def total_bits(self) -> int:
        return sum(self.widths)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, o = [], 0
        for b in self.widths:
            out.append(o)
            o += b
        return tuple(out)

    @property
    def lower(self) -> np.ndarray:
        return np.array([v.lower for v in self.variables])

    @property
    def upper(self) -> np.ndarray:
        return np.array([v.upper for v in self.variables])

    def segments(self, state: int) -> list[int]:
        out = []
        for b in self.widths:
            out.append(state & ((1 << b) - 1))
            state >>= b
        return out

    def decode(self, state: int, n: int | None = None) -> np.ndarray:
        if n is not None and n != self.total_bits:
            raise WidthMismatchError(
                f"state width {n} != scheme total_bits {self.total_bits}"
            )
        if state < 0 or state >> self.total_bits:
            raise WidthMismatchError(f"state does not fit in {self.total_bits} bits")
        return np.array(
            [v.value(s) for v, s in zip(self.variables, self.segments(state))],
            dtype=float,
        )

    def decode_many(self, states) -> np.ndarray:
        """Decode a batch of states to an ``(len(states), d)`` array.

        Accepts a uint64 array (n <= 63) or any sequence of Python ints.
        """
        if isinstance(states, np.ndarray) and states.dtype == np.uint64:
            return self._decode_uint64(states)
        states = list(states)
        if self.total_bits <= FAST_PATH_MAX_BITS:
            return self._decode_uint64(np.array(states, dtype=np.uint64))
        return self._decode_bigint(states)

    def _decode_uint64(self, s: np.ndarray) -> np.ndarray:
        out = np.empty(s.shape + (self.dim,), dtype=float)
        for j, (v, off) in enumerate(zip(self.variables, self.offsets)):
            seg = (s >> np.uint64(off)) & np.uint64((1 << v.bits) - 1)
            out[..., j] = v.value(seg.astype(np.float64))
        return out

    def _decode_bigint(self, states: Sequence[int]) -> np.ndarray:
        # unpack every state to a little-endian bit row, then weight each segment
        n = self.total_bits
        nbytes = (n + 7) // 8
        buf = b"".join(int(x).to_bytes(nbytes, "little") for x in states)
        bits = np.unpackbits(
            np.frombuffer(buf, dtype=np.uint8).reshape(len(states), nbytes),
            axis=1,
            bitorder="little",
        )
        out = np.empty((len(states), self.dim), dtype=float)
        for j, (v, off) in enumerate(zip(self.variables, self.offsets)):
            seg_bits = bits[:, off : off + v.bits]
            if v.bits <= 52:
                w = np.left_shift(1, np.arange(v.bits, dtype=np.int64)).astype(np.float64)
                seg = seg_bits @ w
            else:
                seg = np.array([int("".join(map(str, r[::-1])), 2) for r in seg_bits], dtype=float)
            out[:, j] = v.value(seg)
        return out

    def encode(self, point: Iterable[float]) -> int:
        """Nearest grid state for a point; exact inverse of ``decode`` on the grid."""
        point = list(point)
        if len(point) != self.dim:
            raise WidthMismatchError(f"point has {len(point)} coords, scheme has {self.dim}")
        state = 0
        for v, off, x in zip(self.variables, self.offsets, point):
            state |= v.segment(x) << off
        return state

    def to_dict(self) -> dict:
        return {"variables": [v.to_dict() for v in self.variables]}

    @classmethod
    def from_dict(cls, data: dict) -> "EncodingScheme":
        try:
            return cls(tuple(VariableSpec(**v) for v in data["variables"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed scheme: {exc}") from exc


def default_scheme(
    bounds: Sequence[Sequence[float]],
    bits_per_variable: int = DEFAULT_BITS_PER_VARIABLE,
    force_odd: bool = True,
) -> EncodingScheme:
    """Same width for every variable; the last one gets an extra bit if the total is even."""
    widths = [bits_per_variable] * len(bounds)
    if force_odd and sum(widths) % 2 == 0:
        widths[-1] += 1
    return EncodingScheme(
        tuple(VariableSpec(float(lo), float(hi), b) for (lo, hi), b in zip(bounds, widths))
    )


def build_delta(patterns: Sequence, widths: Sequence[int], allow_odd: bool = False) -> int:
    """Concatenate per-variable bit patterns into one integer step.

    ``patterns[0]`` fills the least significant ``widths[0]`` bits. A pattern is
    a ``'0'/'1'`` string of exactly its width, or a non-negative int that fits.
    """
    if len(patterns) != len(widths):
        raise WidthMismatchError(f"{len(patterns)} patterns for {len(widths)} widths")
    delta, off = 0, 0
    for p, b in zip(patterns, widths):
        if isinstance(p, str):
            if len(p) != b or set(p) - {"0", "1"}:
                raise WidthMismatchError(f"pattern {p!r} is not a {b}-bit string")
            val = int(p, 2)
        else:
            val = int(p)
            if val < 0 or val >> b:
                raise WidthMismatchError(f"pattern {val} does not fit in {b} bits")
        delta |= val << off
        off += b
    if delta & 1 and not allow_odd:
        raise ValueError("odd step would leave the even generator lattice; pass allow_odd=True")
    return delta


def default_delta(widths: Sequence[int]) -> int:
    """Default exploration step: pattern 8 for variable 1, pattern 1 for all others.

    Each step moves every variable above the first by one grid level and the
    first by eight, so consecutive candidates differ in all coordinates. A
    first variable narrower than 4 bits gets the largest power of two below
    its top bit instead. A single variable has no higher segment to step, so
    it gets ``2^(b // 2)``.
    """
    widths = list(widths)
    if len(widths) == 1:
        return 1 << max(1, widths[0] // 2)
    b1 = widths[0]
    first = 8 if b1 >= 4 else (1 << (b1 - 1) if b1 >= 2 else 0)
    return build_delta([first] + [1] * (len(widths) - 1), widths)
