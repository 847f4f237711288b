"""Text notation for Fock states.

Unpolarized:  |0,1,0,1,0,0>
Polarized:    |1:V,0>        one V photon in mode 0, mode 1 empty
              |0,{P:H}>      {P:H} is sugar for a single H photon
              |1:H+1:V,0>    both polarizations occupied in one mode

Whitespace is ignored.  A state that mixes polarized entries with nonzero
plain-integer entries is rejected: photons must carry a polarization
everywhere or nowhere.
"""

from __future__ import annotations

from .errors import MixedRegister, ParseError
from .fock import FockState, Polarization


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        got = self.peek()
        if got != ch:
            shown = repr(got) if got else "end of input"
            raise ParseError(f"expected {ch!r}, found {shown}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            got = self.text[start] if start < len(self.text) else ""
            shown = repr(got) if got else "end of input"
            raise ParseError(f"expected a number, found {shown}", start)
        return int(self.text[start : self.pos])

    def polarization(self) -> Polarization:
        got = self.peek()
        if got == "H":
            self.pos += 1
            return Polarization.H
        if got == "V":
            self.pos += 1
            return Polarization.V
        shown = repr(got) if got else "end of input"
        raise ParseError(f"expected polarization H or V, found {shown}", self.pos)


def _parse_entry(sc: _Scanner):
    """One mode entry: returns (plain_count, {pol: count}) with one side used."""
    if sc.peek() == "{":
        # {P:H} sugar for a single polarized photon
        sc.expect("{")
        sc.expect("P")
        sc.expect(":")
        pol = sc.polarization()
        sc.expect("}")
        return None, {pol: 1}
    count = sc.integer()
    if sc.peek() != ":":
        return count, None
    sc.expect(":")
    pol = sc.polarization()
    parts = {pol: count}
    while sc.peek() == "+":
        sc.expect("+")
        more = sc.integer()
        sc.expect(":")
        pol = sc.polarization()
        parts[pol] = parts.get(pol, 0) + more
    return None, parts


def parse_state(text: str) -> FockState:
    """Parse a state string into a FockState.

    Raises ParseError (with byte offset) on malformed input and
    MixedRegister when polarized and nonzero plain entries are mixed.
    """
    sc = _Scanner(text)
    sc.expect("|")
    entries = []
    offsets = []
    while True:
        offsets.append(sc.pos)
        entries.append(_parse_entry(sc))
        if sc.peek() == ",":
            sc.expect(",")
            continue
        break
    sc.expect(">")
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError(f"trailing input {sc.text[sc.pos]!r}", sc.pos)

    polarized = any(parts is not None for _, parts in entries)
    if not polarized:
        return FockState(tuple(plain for plain, _ in entries), polarized=False)

    occ: list[int] = []
    for (plain, parts), off in zip(entries, offsets):
        if parts is None:
            if plain != 0:
                raise MixedRegister(
                    f"plain occupation {plain} at offset {off} in a polarized state; "
                    "photons need a polarization"
                )
            occ += [0, 0]
        else:
            occ += [parts.get(Polarization.H, 0), parts.get(Polarization.V, 0)]
    return FockState(tuple(occ), polarized=True)


def format_state(state: FockState) -> str:
    """Canonical text form; parse_state(format_state(s)) == s."""
    if not state.polarized:
        return "|" + ",".join(str(n) for n in state.occupations) + ">"
    entries = []
    for m in range(state.modes):
        n_h = state.occupations[2 * m]
        n_v = state.occupations[2 * m + 1]
        parts = []
        if n_h:
            parts.append(f"{n_h}:H")
        if n_v:
            parts.append(f"{n_v}:V")
        entries.append("+".join(parts) if parts else "0")
    return "|" + ",".join(entries) + ">"
