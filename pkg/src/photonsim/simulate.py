"""Permanent-based strong simulation and seeded sampling.

The transition amplitude between occupation lists s (input) and t (output)
under a channel unitary U is

    amplitude = Per(U[t, s]) / sqrt(prod_i s_i! * prod_j t_j!)

where U[t, s] repeats column i s_i times and row j t_j times.  Permanents
are evaluated with Ryser's inclusion-exclusion formula.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import MixedSector, TooLarge
from .fock import FockState, StateVector, sort_key

#: Hard default for the largest permanent, overridable via this env var.
PERMANENT_CAP_ENV = "PHOTONSIM_PERMANENT_CAP"
_DEFAULT_CAP = 16

# Above this size the batch-enumeration variant wins over the Python loop.
_VECTOR_THRESHOLD = 10


def _configured_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get(PERMANENT_CAP_ENV, _DEFAULT_CAP))


def permanent(matrix, cap: int | None = None) -> complex:
    """Permanent of a square complex matrix via Ryser's formula.

    Subsets are visited in Gray-code order with single-row updates for small
    matrices; larger ones use a vectorized batch enumeration of the same
    inclusion-exclusion sum.  `cap` guards against runaway cost (default 16,
    or the PHOTONSIM_PERMANENT_CAP environment variable).
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise TooLarge(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    cap = _configured_cap(cap)
    if n > cap:
        raise TooLarge(f"permanent of size {n} exceeds cap {cap}")
    if n == 0:
        return 1.0 + 0j
    if n <= _VECTOR_THRESHOLD:
        return _permanent_gray(a)
    return _permanent_batched(a)


def _permanent_gray(a: np.ndarray) -> complex:
    """Ryser sum over column subsets, Gray-code order, O(2^n * n)."""
    n = a.shape[0]
    rows = [list(row) for row in a]
    sums = [0j] * n
    total = 0j
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        bit = new_gray ^ gray
        j = bit.bit_length() - 1
        if new_gray & bit:
            for i in range(n):
                sums[i] += rows[i][j]
        else:
            for i in range(n):
                sums[i] -= rows[i][j]
        gray = new_gray
        prod = 1.0 + 0j
        for v in sums:
            prod *= v
        total += prod if (n - gray.bit_count()) % 2 == 0 else -prod
    return total


def _permanent_batched(a: np.ndarray) -> complex:
    """Same Ryser sum, enumerating all column subsets in one array sweep."""
    n = a.shape[0]
    count = 1 << n
    sums = np.zeros((count, n), dtype=complex)
    popcount = np.zeros(count, dtype=np.int64)
    size = 1
    for j in range(n):
        sums[size : 2 * size] = sums[:size] + a[:, j]
        popcount[size : 2 * size] = popcount[:size] + 1
        size *= 2
    prods = np.prod(sums[1:], axis=1)
    signs = np.where((n - popcount[1:]) % 2 == 0, 1.0, -1.0)
    return complex(np.sum(signs * prods))


def amplitude(matrix, source: FockState, target: FockState, cap: int | None = None) -> complex:
    """Transition amplitude <target| U |source>; 0 when sectors differ."""
    if source.n != target.n:
        return 0j
    u = np.asarray(matrix, dtype=complex)
    cols = [i for i, v in enumerate(source.occupations) for _ in range(v)]
    rows = [j for j, v in enumerate(target.occupations) for _ in range(v)]
    per = permanent(u[np.ix_(rows, cols)], cap=cap)
    norm = math.sqrt(
        math.prod(math.factorial(v) for v in source.occupations)
        * math.prod(math.factorial(v) for v in target.occupations)
    )
    return per / norm


def batch_amplitudes(matrix, source: FockState, targets, cap: int | None = None):
    """Amplitudes <t| U |source> for a list of same-register targets.

    Ryser's column-subset sums depend only on the source, so one
    (2^n x channels) sweep is shared by every target; each target then
    reduces it with a product over its own row multiset.  Much faster than
    per-pair `amplitude` calls when many outcomes share one input.
    """
    u = np.asarray(matrix, dtype=complex)
    n = source.n
    cap = _configured_cap(cap)
    if n > cap:
        raise TooLarge(f"permanent of size {n} exceeds cap {cap}")
    cols = [i for i, v in enumerate(source.occupations) for _ in range(v)]
    count = 1 << n
    sums = np.zeros((count, u.shape[0]), dtype=complex)
    popcount = np.zeros(count, dtype=np.int64)
    size = 1
    for j in cols:
        sums[size : 2 * size] = sums[:size] + u[:, j]
        popcount[size : 2 * size] = popcount[:size] + 1
        size *= 2
    signs = np.where((n - popcount) % 2 == 0, 1.0 + 0j, -1.0 + 0j)
    s_norm = math.prod(math.factorial(v) for v in source.occupations)
    out = []
    for target in targets:
        if target.n != n:
            out.append(0j)
            continue
        acc = signs.copy()
        for j, v in enumerate(target.occupations):
            for _ in range(v):
                acc *= sums[:, j]
        norm = math.sqrt(
            s_norm * math.prod(math.factorial(v) for v in target.occupations)
        )
        out.append(complex(acc.sum()) / norm)
    return out


def sector_basis(n: int, channels: int):
    """All occupation tuples of n photons over `channels`, canonical order.

    Canonical order is descending lexicographic (first channel fills first):
    (n,0,...), (n-1,1,0,...), ..., (0,...,n).
    """
    if channels == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in sector_basis(n - first, channels - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class Distribution:
    """Probabilities over same-sector Fock states."""

    entries: dict[FockState, float]
    sector: int

    def items(self) -> list[tuple[FockState, float]]:
        return sorted(self.entries.items(), key=lambda kv: sort_key(kv[0]))

    def total(self) -> float:
        return sum(self.entries.values())

    def probability(self, state: FockState) -> float:
        return self.entries.get(state, 0.0)


def evolve(matrix, state: StateVector, cap: int | None = None) -> StateVector:
    """Output amplitudes of a state vector under a channel unitary."""
    n = state.require_sector()
    out: dict[FockState, complex] = {}
    polarized = state.polarized
    for occ in sector_basis(n, state.channels):
        target = FockState(occ, polarized)
        amp = sum(
            coeff * amplitude(matrix, term, target, cap=cap)
            for term, coeff in state.items()
        )
        if abs(amp) > 1e-12:
            out[target] = amp
    return StateVector(out, channels=state.channels, polarized=polarized)


def distribution(matrix, state: StateVector, cap: int | None = None) -> Distribution:
    """Output probability distribution of a normalized state vector.

    Raises MixedSector when the input has no fixed photon number.
    """
    n = state.require_sector()
    evolved = evolve(matrix, state, cap=cap)
    entries = {s: abs(a) ** 2 for s, a in evolved.items()}
    return Distribution(entries, n)


class SplitMix64:
    """Deterministic 64-bit PRNG (splitmix increment-and-scramble)."""

    _MASK = (1 << 64) - 1
    _GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self._state = seed & self._MASK

    def next_uint64(self) -> int:
        self._state = (self._state + self._GAMMA) & self._MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def next_double(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class SampleCount:
    """Observed outcome counts from a finite number of shots."""

    counts: dict[FockState, int]
    shots: int
    seed: int

    def items(self) -> list[tuple[FockState, int]]:
        return sorted(self.counts.items(), key=lambda kv: sort_key(kv[0]))


def sample(dist: Distribution, shots: int, seed: int) -> SampleCount:
    """Draw `shots` outcomes by inverse CDF over the canonical outcome order.

    Bit-identical across runs for the same distribution, shots and seed.
    """
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    ordered = dist.items()
    cumulative = []
    acc = 0.0
    for _, p in ordered:
        acc += p
        cumulative.append(acc)
    rng = SplitMix64(seed)
    counts: dict[FockState, int] = {}
    if not ordered:
        return SampleCount({}, shots, seed)
    for _ in range(shots):
        u = rng.next_double() * acc
        lo, hi = 0, len(cumulative) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if u < cumulative[mid]:
                hi = mid
            else:
                lo = mid + 1
        state = ordered[lo][0]
        counts[state] = counts.get(state, 0) + 1
    return SampleCount(counts, shots, seed)
