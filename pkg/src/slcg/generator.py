"""Cycle algebra of the structured LCG  x -> (2x + 1) mod (2^n + 1).

States are plain Python ints in ``[0, 2^n - 1]`` so that arbitrarily wide
schemes (hundreds of bits) work unchanged. The value ``2^n`` is a fixed point
of the map and lies outside the n-bit representation; it is never produced.

For ``n <= 63`` the ``*_array`` helpers give a vectorised uint64 path that
must agree bit-for-bit with the integer path.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: largest n for which ``enumerate_generators`` allocates its visited mask
DEFAULT_ENUMERATION_CAP = 26
#: widest state the uint64 fast path accepts
FAST_PATH_MAX_BITS = 63


class EnumerationCapError(ValueError):
    """Raised when an exhaustive enumeration would exceed its memory cap."""


class EvenBitWidthError(ValueError):
    """Raised when an odd-only quantity is requested for an even bit width."""


def check_bits(n: int, allow_even: bool = True) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"bit width must be an int, got {type(n).__name__}")
    n = int(n)
    if n < 3:
        raise ValueError(f"bit width must be >= 3, got {n}")
    if not allow_even and n % 2 == 0:
        raise EvenBitWidthError(f"bit width must be odd, got {n}")
    return n


def check_state(x: int, n: int) -> int:
    x = int(x)
    if x < 0 or x >> n:
        raise ValueError(f"state {x} outside [0, 2^{n} - 1]")
    return x


def modulus(n: int) -> int:
    return (1 << n) + 1


def step(x: int, n: int) -> int:
    """One application of the map, done with shifts.

    Shifting left drops the top bit; the dropped bit comes back inverted at
    the bottom, which is the same as ``(2x + 1) mod (2^n + 1)``.
    """
    return ((x << 1) & ((1 << n) - 1)) | (1 ^ (x >> (n - 1)))


def step_reference(x: int, n: int) -> int:
    """The map evaluated literally with modular arithmetic."""
    return (2 * x + 1) % ((1 << n) + 1)


def closed_form_state(k: int, x0: int, n: int) -> int:
    """State after ``k`` steps from ``x0``: ``2^k x0 + 2^k - 1 (mod 2^n + 1)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    m = (1 << n) + 1
    p = pow(2, k, m)
    return (p * x0 + p - 1) % m


def iterate(x: int, n: int, k: int) -> int:
    for _ in range(k):
        x = step(x, n)
    return x


def is_generator(alpha: int, n: int, full_cycle: bool = False) -> bool:
    """True iff ``alpha`` is the smallest state on its cycle.

    Walks ``n + 1`` states and rejects as soon as one falls outside the band
    ``[alpha, 2^n - 1 - alpha]``. Cycles are closed under complement and the
    band is symmetric under complement, so the first half of the orbit is
    enough. ``full_cycle=True`` walks the whole orbit instead (cross-check).
    """
    mask = (1 << n) - 1
    complement = mask - alpha
    if alpha > complement:
        return False
    state = alpha
    limit = 2 * n if full_cycle else n + 1
    for _ in range(limit):
        if state < alpha or state > complement:
            return False
        state = ((state << 1) & mask) | (1 ^ (state >> (n - 1)))
    return True


@dataclass(frozen=True)
class Cycle:
    """One orbit of the map, rotated so that it starts at its minimum."""

    generator: int
    states: tuple[int, ...]
    n: int

    @property
    def period(self) -> int:
        return len(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, x: object) -> bool:
        return x in self.states


def enumerate_cycle(alpha: int, n: int) -> Cycle:
    """Orbit of ``alpha``; any member of the same cycle gives the same result."""
    alpha = check_state(alpha, n)
    states = [alpha]
    x = step(alpha, n)
    while x != alpha:
        states.append(x)
        x = step(x, n)
    i = states.index(min(states))
    states = states[i:] + states[:i]
    return Cycle(generator=states[0], states=tuple(states), n=n)


def enumerate_generators(
    n: int,
    limit: int | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    full_period_only: bool = False,
) -> list[int]:
    """All cycle minima in increasing order, by scan-and-mark.

    Scans ``0, 1, 2, ...``; each unvisited state becomes a generator and its
    whole orbit is marked. Memory is one byte per state, hence the cap.

    ``full_period_only`` keeps only generators whose cycle has period 2n.
    Short cycles exist (e.g. {42, 85} for n=7) and their minima can exceed
    ``alpha_max(n)``, which bounds the full-period generators only.
    """
    n = check_bits(n)
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds enumeration cap {cap}")
    size = 1 << n
    mask = size - 1
    top = n - 1
    visited = bytearray(size)
    gens: list[int] = []
    pos = visited.find(0)
    full = 2 * n
    while pos != -1:
        x = pos
        period = 0
        while True:
            visited[x] = 1
            period += 1
            x = ((x << 1) & mask) | (1 ^ (x >> top))
            if x == pos:
                break
        if not full_period_only or period == full:
            gens.append(pos)
            if limit is not None and len(gens) >= limit:
                break
        pos = visited.find(0, pos + 1)
    return gens


def alpha_max(n: int) -> int:
    """Largest full-period generator for odd ``n``: ``(4/3)(4^((n-3)/2) - 1)``.

    Exact integer arithmetic. Short-cycle generators above this value exist
    (the period-2 cycle starting at ``(2^n + 1)/3 - 1``) and are outside the
    search range by design.
    """
    n = check_bits(n, allow_even=False)
    return 4 * (4 ** ((n - 3) // 2) - 1) // 3


def alpha_max_recursive(n: int) -> int:
    n = check_bits(n, allow_even=False)
    a = 0
    for _ in range(5, n + 1, 2):
        a = 4 * a + 4
    return a


def alpha_bound(n: int, allow_even: bool = False, margin: int = 2) -> tuple[int, bool]:
    """Outer-loop bound for ``n`` bits and whether it comes from the closed form.

    Even ``n`` is only accepted with ``allow_even``; the bound is then
    ``floor(2^n / 6) + margin``, a heuristic not backed by the odd-n formula.
    """
    n = check_bits(n)
    if n % 2:
        return alpha_max(n), True
    if not allow_even:
        raise EvenBitWidthError(
            f"n={n} is even; pass allow_even=True to use the heuristic bound"
        )
    b = (1 << n) // 6 + margin
    return b - (b & 1), False


# -- uint64 fast path (n <= 63) -------------------------------------------


def _check_fast(n: int) -> None:
    if n > FAST_PATH_MAX_BITS:
        raise ValueError(f"fast path supports n <= {FAST_PATH_MAX_BITS}, got {n}")


def step_array(x: np.ndarray, n: int) -> np.ndarray:
    _check_fast(n)
    x = np.asarray(x, dtype=np.uint64)
    mask = np.uint64((1 << n) - 1)
    one = np.uint64(1)
    return ((x << one) & mask) | (one ^ (x >> np.uint64(n - 1)))


def is_generator_array(alpha: np.ndarray, n: int) -> np.ndarray:
    _check_fast(n)
    alpha = np.asarray(alpha, dtype=np.uint64)
    complement = np.uint64((1 << n) - 1) - alpha
    ok = alpha <= complement
    state = alpha.copy()
    for _ in range(n + 1):
        ok &= (state >= alpha) & (state <= complement)
        state = step_array(state, n)
    return ok


def cycle_matrix(alphas, n: int) -> np.ndarray:
    """``(len(alphas), 2n)`` uint64 array; row i holds 2n steps from alphas[i]."""
    _check_fast(n)
    s = np.asarray(alphas, dtype=np.uint64).reshape(-1)
    out = np.empty((s.size, 2 * n), dtype=np.uint64)
    for k in range(2 * n):
        out[:, k] = s
        s = step_array(s, n)
    return out


def walk_states(alpha: int, n: int, count: int | None = None) -> list[int]:
    """``count`` (default 2n) consecutive states starting at ``alpha``."""
    count = 2 * n if count is None else count
    mask = (1 << n) - 1
    top = n - 1
    out = []
    x = alpha
    for _ in range(count):
        out.append(x)
        x = ((x << 1) & mask) | (1 ^ (x >> top))
    return out


def _rotation_tables(n: int):
    k = np.arange(n, dtype=np.uint64)
    low = (np.uint64(1) << k) - np.uint64(1)
    return k, np.uint64(n) - k, low, np.uint64((1 << n) - 1)


_ROTATIONS: dict[int, tuple] = {}


def cycle_states(alpha: int, n: int) -> np.ndarray:
    """The 2n states from ``alpha`` as uint64, in closed form.

    Step k < n is a left rotation by k with the k wrapped bits inverted;
    steps n..2n-1 are the complements of steps 0..n-1.
    """
    _check_fast(n)
    tab = _ROTATIONS.get(n)
    if tab is None:
        tab = _ROTATIONS[n] = _rotation_tables(n)
    k, back, low, mask = tab
    a = np.uint64(alpha)
    # shifting a uint64 by 64 is undefined, and back[0] == n may be 63
    wrapped = np.where(k == 0, np.uint64(0), ~(a >> np.minimum(back, np.uint64(63))) & low)
    first = ((a << k) & mask) | wrapped
    return np.concatenate([first, first ^ mask])
