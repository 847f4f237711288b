"""Fock-basis states and sparse state vectors for photonic mode registers.

A register is a fixed list of spatial modes, optionally polarization-resolved.
In a polarized register every spatial mode splits into two channels, H and V,
and channel index = 2*mode + (0 for H, 1 for V).  States are occupation-number
tuples over channels; the normalization convention is
|n> = (a^dag)^n / sqrt(n!) |0>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .errors import InvalidOccupation, MixedSector, RegisterMismatch

#: Amplitudes below this magnitude are dropped after state-vector operations.
PRUNE_TOL = 1e-12


class Polarization(Enum):
    H = 0
    V = 1


def channel(mode: int, pol: Polarization | None = None) -> int:
    """Channel index of `mode` (unpolarized) or of its H/V component."""
    if pol is None:
        return mode
    return 2 * mode + pol.value


@dataclass(frozen=True)
class FockState:
    """Occupation numbers over the channels of one register."""

    occupations: tuple[int, ...]
    polarized: bool = False

    def __post_init__(self):
        occ = tuple(int(n) for n in self.occupations)
        object.__setattr__(self, "occupations", occ)
        for n in occ:
            if n < 0:
                raise InvalidOccupation(f"negative occupation {n} in {occ}")
        if self.polarized and len(occ) % 2 != 0:
            raise RegisterMismatch(
                f"polarized register needs an even channel count, got {len(occ)}"
            )

    @property
    def n(self) -> int:
        """Total photon number."""
        return sum(self.occupations)

    @property
    def channels(self) -> int:
        return len(self.occupations)

    @property
    def modes(self) -> int:
        """Number of spatial modes."""
        return len(self.occupations) // 2 if self.polarized else len(self.occupations)

    def mode_occupation(self, mode: int) -> int:
        """Photons in a spatial mode (H+V combined when polarized)."""
        if self.polarized:
            return self.occupations[2 * mode] + self.occupations[2 * mode + 1]
        return self.occupations[mode]

    def __str__(self) -> str:
        from .notation import format_state

        return format_state(self)


def make_state(occupations: Iterable[int], polarized: bool = False) -> FockState:
    """Build a Fock basis state from per-channel occupation numbers."""
    return FockState(tuple(occupations), polarized)


def same_register(a: FockState, b: FockState) -> bool:
    return a.channels == b.channels and a.polarized == b.polarized


def sort_key(state: FockState):
    """Canonical ordering key: descending lexicographic on occupations.

    This is the order in which sector bases are enumerated (first mode
    fills first), so |1,0> sorts before |0,1>.
    """
    return tuple(-n for n in state.occupations)


class StateVector:
    """Sparse complex superposition of Fock states on one register."""

    __slots__ = ("_amp", "channels", "polarized")

    def __init__(
        self,
        amplitudes: Mapping[FockState, complex] | None = None,
        channels: int | None = None,
        polarized: bool = False,
    ):
        amp: dict[FockState, complex] = {}
        if amplitudes:
            first = next(iter(amplitudes))
            channels = first.channels if channels is None else channels
            polarized = first.polarized
            for state, a in amplitudes.items():
                if state.channels != channels or state.polarized != polarized:
                    raise RegisterMismatch(
                        f"state {state.occupations} does not fit register "
                        f"({channels} channels, polarized={polarized})"
                    )
                a = complex(a)
                if abs(a) >= PRUNE_TOL:
                    amp[state] = a
        if channels is None:
            raise RegisterMismatch("empty state vector needs an explicit channel count")
        self._amp = amp
        self.channels = channels
        self.polarized = polarized

    @classmethod
    def basis(cls, state: FockState) -> "StateVector":
        return cls({state: 1.0 + 0j})

    def items(self) -> list[tuple[FockState, complex]]:
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._amp.items(), key=lambda kv: sort_key(kv[0]))

    def amplitude(self, state: FockState) -> complex:
        return self._amp.get(state, 0j)

    @property
    def sector(self) -> int | None:
        """Common photon number of all terms, or None if mixed/empty."""
        counts = {s.n for s in self._amp}
        if len(counts) == 1:
            return counts.pop()
        return None

    def require_sector(self) -> int:
        n = self.sector
        if n is None:
            raise MixedSector("state vector has no single photon-number sector")
        return n

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._amp.values()))

    def normalized(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise InvalidOccupation("cannot normalize the zero vector")
        return self * (1.0 / nrm)

    def __len__(self) -> int:
        return len(self._amp)

    def __add__(self, other: "StateVector") -> "StateVector":
        if self.channels != other.channels or self.polarized != other.polarized:
            raise RegisterMismatch("adding state vectors from different registers")
        out = dict(self._amp)
        for state, a in other._amp.items():
            out[state] = out.get(state, 0j) + a
        return StateVector(out, channels=self.channels, polarized=self.polarized)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "StateVector":
        return StateVector(
            {s: a * scalar for s, a in self._amp.items()},
            channels=self.channels,
            polarized=self.polarized,
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StateVector)
            and self.channels == other.channels
            and self.polarized == other.polarized
            and self._amp == other._amp
        )

    def __repr__(self) -> str:
        terms = " + ".join(f"({a:.6g})*{s}" for s, a in self.items())
        return f"StateVector({terms or '0'})"


def apply_creation(state: StateVector, ch: int) -> StateVector:
    """Apply the bosonic creation operator on channel `ch`: sqrt(n+1) factors."""
    _check_channel(state, ch)
    out: dict[FockState, complex] = {}
    for fock, a in state._amp.items():
        occ = list(fock.occupations)
        occ[ch] += 1
        out[FockState(tuple(occ), fock.polarized)] = a * math.sqrt(occ[ch])
    return StateVector(out, channels=state.channels, polarized=state.polarized)


def apply_annihilation(state: StateVector, ch: int) -> StateVector:
    """Apply the annihilation operator on channel `ch`; vacuum terms vanish."""
    _check_channel(state, ch)
    out: dict[FockState, complex] = {}
    for fock, a in state._amp.items():
        n = fock.occupations[ch]
        if n == 0:
            continue
        occ = list(fock.occupations)
        occ[ch] -= 1
        key = FockState(tuple(occ), fock.polarized)
        out[key] = out.get(key, 0j) + a * math.sqrt(n)
    return StateVector(out, channels=state.channels, polarized=state.polarized)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> with the usual conjugation on the left argument."""
    if a.channels != b.channels or a.polarized != b.polarized:
        raise RegisterMismatch("inner product between different registers")
    if len(a._amp) > len(b._amp):
        return sum(b._amp[s] * v.conjugate() for s, v in a._amp.items() if s in b._amp)
    return sum(a._amp[s].conjugate() * v for s, v in b._amp.items() if s in a._amp)


def _check_channel(state: StateVector, ch: int):
    if not 0 <= ch < state.channels:
        from .errors import OutOfRange

        raise OutOfRange(f"channel {ch} outside register of {state.channels} channels")
