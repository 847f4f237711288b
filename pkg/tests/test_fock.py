import math

import pytest

from photonsim.errors import (
    InvalidOccupation,
    MixedSector,
    OutOfRange,
    RegisterMismatch,
)
from photonsim.fock import (
    FockState,
    Polarization,
    StateVector,
    apply_annihilation,
    apply_creation,
    channel,
    inner_product,
    make_state,
    sort_key,
)


def test_basic_state_properties():
    s = make_state((1, 0, 2, 0))
    assert s.n == 3
    assert s.channels == 4
    assert s.modes == 4
    assert s.mode_occupation(2) == 2


def test_polarized_channel_layout():
    # channel = 2*mode + (0 for H, 1 for V)
    assert channel(3) == 3
    assert channel(3, Polarization.H) == 6
    assert channel(3, Polarization.V) == 7
    s = make_state((1, 0, 0, 2), polarized=True)
    assert s.modes == 2
    assert s.mode_occupation(0) == 1
    assert s.mode_occupation(1) == 2


def test_negative_occupation_rejected():
    with pytest.raises(InvalidOccupation):
        make_state((1, -1))


def test_polarized_needs_even_channels():
    with pytest.raises(RegisterMismatch):
        make_state((1, 0, 0), polarized=True)


def test_canonical_order_is_descending_lexicographic():
    states = [make_state(o) for o in [(0, 2), (1, 1), (2, 0), (0, 0)]]
    states.sort(key=sort_key)
    assert [s.occupations for s in states] == [(2, 0), (1, 1), (0, 2), (0, 0)]


def test_statevector_basis_and_amplitude():
    s = make_state((1, 0))
    v = StateVector.basis(s)
    assert v.amplitude(s) == 1.0 + 0j
    assert v.amplitude(make_state((0, 1))) == 0j
    assert len(v) == 1


def test_statevector_algebra_and_pruning():
    a = StateVector.basis(make_state((1, 0)))
    b = StateVector.basis(make_state((0, 1)))
    v = (a + b) * (1 / math.sqrt(2))
    assert abs(v.norm() - 1.0) < 1e-12
    # subtracting a term to below the prune threshold removes it
    w = v - (1 / math.sqrt(2)) * b
    assert len(w) == 1
    assert abs(w.amplitude(make_state((1, 0))) - 1 / math.sqrt(2)) < 1e-12


def test_statevector_register_checks():
    a = StateVector.basis(make_state((1, 0)))
    b = StateVector.basis(make_state((1, 0, 0)))
    with pytest.raises(RegisterMismatch):
        a + b
    with pytest.raises(RegisterMismatch):
        StateVector()  # no states and no channel count


def test_sector_and_mixed_sector():
    a = StateVector.basis(make_state((1, 0)))
    assert a.sector == 1
    mixed = a + StateVector.basis(make_state((1, 1)))
    assert mixed.sector is None
    with pytest.raises(MixedSector):
        mixed.require_sector()


def test_items_in_canonical_order():
    v = (
        StateVector.basis(make_state((0, 2)))
        + StateVector.basis(make_state((2, 0)))
        + StateVector.basis(make_state((1, 1)))
    )
    assert [s.occupations for s, _ in v.items()] == [(2, 0), (1, 1), (0, 2)]


def test_creation_annihilation_factors():
    v = StateVector.basis(make_state((1, 0)))
    up = apply_creation(v, 0)
    assert abs(up.amplitude(make_state((2, 0))) - math.sqrt(2)) < 1e-12
    down = apply_annihilation(up, 0)
    # a adag' |1> picks up sqrt(2)*sqrt(2) = 2
    assert abs(down.amplitude(make_state((1, 0))) - 2.0) < 1e-12
    # annihilating the vacuum channel gives the zero vector
    assert len(apply_annihilation(v, 1)) == 0


def test_channel_bounds_checked():
    v = StateVector.basis(make_state((1, 0)))
    with pytest.raises(OutOfRange):
        apply_creation(v, 2)


def test_inner_product_conjugates_left():
    a = StateVector.basis(make_state((1, 0))) * 1j
    b = StateVector.basis(make_state((1, 0))) * 2.0
    assert abs(inner_product(a, b) - (-2j)) < 1e-12
    assert abs(inner_product(b, a) - 2j) < 1e-12


def test_normalize_zero_vector_rejected():
    empty = StateVector(channels=2)
    with pytest.raises(InvalidOccupation):
        empty.normalized()
