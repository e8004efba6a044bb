"""Entropy and coherence measures against closed-form values."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdistill import (
    DensityMatrix,
    DomainError,
    InvalidState,
    binary_entropy,
    clean_spectrum,
    conditional_entropy,
    dephase,
    from_state_vector,
    l1_coherence,
    qi_relative_entropy,
    relative_entropy_coherence,
    shannon_entropy,
    von_neumann_entropy,
    w_type,
    xlog2,
)
from conftest import random_state_vector

LOG2_3 = np.log2(3.0)


def plus_state() -> DensityMatrix:
    return from_state_vector([1.0, 1.0], ("A",))


def test_xlog2_zero_cutoff():
    out = xlog2(np.array([0.0, 1e-16, 0.5, 1.0]))
    assert out[0] == 0.0
    assert out[1] == 0.0
    assert out[2] == pytest.approx(-0.5)
    assert out[3] == 0.0


def test_shannon_entropy_uniform():
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-12)


def test_shannon_entropy_ignores_zeros():
    assert shannon_entropy([0.5, 0.5, 0.0, 0.0]) == pytest.approx(1.0, abs=1e-12)


def test_shannon_entropy_of_point_mass_is_positive_zero():
    value = shannon_entropy([1.0])
    assert value == 0.0
    assert np.copysign(1.0, value) == 1.0


def test_binary_entropy_closed_form_third():
    # H(1/3) = log2(3) - 2/3
    assert binary_entropy(1.0 / 3.0) == pytest.approx(LOG2_3 - 2.0 / 3.0, abs=1e-12)


def test_binary_entropy_symmetry_and_peak():
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-12)
    assert binary_entropy(0.2) == pytest.approx(binary_entropy(0.8), abs=1e-12)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0


def test_binary_entropy_domain():
    with pytest.raises(DomainError):
        binary_entropy(-0.1)
    with pytest.raises(DomainError):
        binary_entropy(1.1)


def test_von_neumann_entropy_pure_and_mixed(bell):
    assert von_neumann_entropy(bell) == pytest.approx(0.0, abs=1e-10)
    mixed = DensityMatrix(np.eye(4, dtype=complex) / 4.0, ("A", "B"))
    assert von_neumann_entropy(mixed) == pytest.approx(2.0, abs=1e-12)


def test_clean_spectrum_clips_and_renormalizes():
    out = clean_spectrum(np.array([0.6, 0.4, -1e-10]))
    assert out.min() == 0.0
    assert out.sum() == pytest.approx(1.0, abs=1e-14)


def test_clean_spectrum_rejects_large_negatives():
    with pytest.raises(InvalidState):
        clean_spectrum(np.array([1.001, -1e-3]))


def test_dephase_kills_targeted_off_diagonals(bell):
    full = dephase(bell, ("A", "B"))
    assert np.allclose(full.matrix, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-14)
    partial = dephase(bell, ("B",))
    # |00><11| has differing B bits, so it dies even under the one-sided map
    assert np.allclose(partial.matrix, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-14)


def test_dephase_single_side_keeps_other_coherence():
    # (|00> + |01> + |10> + |11>)/2: dephasing B keeps the A-side coherence
    rho = from_state_vector([1.0, 1.0, 1.0, 1.0], ("A", "B"))
    out = dephase(rho, ("B",))
    assert out.matrix[0, 2] == pytest.approx(0.25)
    assert out.matrix[0, 1] == pytest.approx(0.0)


def test_relative_entropy_coherence_plus_state():
    assert relative_entropy_coherence(plus_state()) == pytest.approx(1.0, abs=1e-12)


def test_relative_entropy_coherence_incoherent_state():
    rho = DensityMatrix(np.diag([0.7, 0.3]).astype(complex), ("A",))
    assert relative_entropy_coherence(rho) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_coherence_w_state(w_half):
    # pure state with three equal nonzero amplitudes
    assert relative_entropy_coherence(w_half) == pytest.approx(LOG2_3, abs=1e-10)


def test_l1_coherence_values(w_half):
    assert l1_coherence(plus_state()) == pytest.approx(1.0, abs=1e-12)
    assert l1_coherence(w_half) == pytest.approx(2.0, abs=1e-10)


def test_qi_relative_entropy_bell(bell):
    assert qi_relative_entropy(bell, ("B",)) == pytest.approx(1.0, abs=1e-10)
    assert qi_relative_entropy(bell, ("A", "B")) == pytest.approx(1.0, abs=1e-10)


def test_qi_relative_entropy_needs_a_label(bell):
    with pytest.raises(Exception):
        qi_relative_entropy(bell, ())


def test_conditional_entropy_bell(bell):
    assert conditional_entropy(bell, ("B",)) == pytest.approx(-1.0, abs=1e-10)


def test_conditional_entropy_product_state():
    rho = from_state_vector([1.0, 1.0, 0.0, 0.0], ("A", "B"))
    # A is pure |0...>-like on its own, so S(AB) - S(B) = -0 = 0
    assert conditional_entropy(rho, ("B",)) == pytest.approx(0.0, abs=1e-10)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_coherence_nonnegative_and_bounded(seed):
    rho = from_state_vector(random_state_vector(2, seed), ("A", "B"))
    cr = relative_entropy_coherence(rho)
    assert cr >= -1e-10
    assert cr <= 2.0 + 1e-10


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_dephase_is_idempotent(seed):
    rho = from_state_vector(random_state_vector(2, seed), ("A", "B"))
    once = dephase(rho, ("B",))
    twice = dephase(once, ("B",))
    assert np.allclose(once.matrix, twice.matrix, atol=0.0)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_dephasing_never_lowers_entropy(seed):
    rho = from_state_vector(random_state_vector(2, seed), ("A", "B"))
    assert von_neumann_entropy(dephase(rho, ("A",))) >= von_neumann_entropy(rho) - 1e-10


@settings(deadline=None, max_examples=40)
@given(p=st.floats(min_value=0.0, max_value=1.0))
def test_family_coherence_matches_amplitude_entropy(p):
    # pure state: C_r = S(diag of amplitudes squared)
    psi = w_type(p)
    expected = shannon_entropy(np.real(np.diag(psi.matrix)))
    assert relative_entropy_coherence(psi) == pytest.approx(expected, abs=1e-9)
