"""State families, channels, and random-state generation."""

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdistill import (
    ChannelSpec,
    DomainError,
    FamilyParam,
    InvalidInitialization,
    apply_channel,
    bell_pair,
    channel_isometry,
    density_to_json,
    from_state_vector,
    ghz_n,
    ghz_type,
    make_family,
    random_density,
    random_pure,
    schmidt_form_eligible,
    tensor,
    w_n,
    w_type,
)

GOLDEN = Path(__file__).parent / "data" / "random_density_seed42.json"

probabilities = st.floats(min_value=0.0, max_value=1.0)


def amplitudes(rho) -> np.ndarray:
    # pure states only: dominant eigenvector, phase-fixed on its largest entry
    values, vectors = np.linalg.eigh(rho.matrix)
    vec = vectors[:, -1]
    pivot = vec[np.argmax(np.abs(vec))]
    return vec * (np.conj(pivot) / abs(pivot))


def test_w_type_amplitudes():
    vec = np.abs(amplitudes(w_type(0.3)))
    assert vec[4] == pytest.approx(1.0 / np.sqrt(3.0), abs=1e-12)
    assert vec[2] == pytest.approx(np.sqrt(2.0 * 0.7 / 3.0), abs=1e-12)
    assert vec[1] == pytest.approx(np.sqrt(2.0 * 0.3 / 3.0), abs=1e-12)
    assert np.count_nonzero(vec > 1e-12) == 3


def test_w_type_symmetric_point():
    vec = np.abs(amplitudes(w_type(0.5)))
    for index in (1, 2, 4):
        assert vec[index] == pytest.approx(1.0 / np.sqrt(3.0), abs=1e-12)


def test_ghz_type_amplitudes():
    vec = np.abs(amplitudes(ghz_type(0.4)))
    assert vec[0] == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)
    assert vec[6] == pytest.approx(np.sqrt(0.6 / 2.0), abs=1e-12)
    assert vec[7] == pytest.approx(np.sqrt(0.4 / 2.0), abs=1e-12)


def test_ghz_type_endpoints(bell):
    # p=0 is a Bell pair on AB with C in |0>; p=1 is the standard GHZ
    zero = ghz_type(0.0)
    expected = tensor(bell, from_state_vector([1.0, 0.0], ("C",)))
    assert np.allclose(zero.matrix, expected.matrix, atol=1e-12)
    one = np.abs(amplitudes(ghz_type(1.0)))
    assert one[0] == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)
    assert one[7] == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)


def test_family_labels():
    assert w_type(0.5).labels == ("A", "B", "C")
    assert ghz_type(0.5).labels == ("A", "B", "C")
    assert bell_pair().labels == ("A", "B")
    assert ghz_n(4).labels == ("A", "B1", "B2", "B3")
    assert w_n(3).labels == ("A", "B1", "B2")


def test_parameter_domain():
    with pytest.raises(DomainError):
        w_type(-0.01)
    with pytest.raises(DomainError):
        ghz_type(1.01)
    with pytest.raises(DomainError):
        ghz_n(1)


def test_make_family_dispatch():
    assert make_family(FamilyParam("w", p=0.5)).labels == ("A", "B", "C")
    assert make_family(FamilyParam("bell")).labels == ("A", "B")
    assert make_family(FamilyParam("w-n", n=4)).n_qubits == 4
    with pytest.raises(DomainError):
        make_family(FamilyParam("w"))
    with pytest.raises(DomainError):
        make_family(FamilyParam("nope", p=0.5))


def test_ghz_n_matrix_corners():
    rho = ghz_n(4)
    assert rho.matrix[0, 0] == pytest.approx(0.5, abs=1e-12)
    assert rho.matrix[15, 15] == pytest.approx(0.5, abs=1e-12)
    assert rho.matrix[0, 15] == pytest.approx(0.5, abs=1e-12)


def test_w_n_single_excitation_support():
    vec = np.abs(amplitudes(w_n(4)))
    for index in (1, 2, 4, 8):
        assert vec[index] == pytest.approx(0.5, abs=1e-12)
    assert np.count_nonzero(vec > 1e-12) == 4


def test_channel_spec_validation():
    with pytest.raises(DomainError):
        ChannelSpec("q", 0.5)
    with pytest.raises(DomainError):
        ChannelSpec("w", 1.5)


@settings(deadline=None, max_examples=30)
@given(p=probabilities, kind=st.sampled_from(["w", "ghz"]))
def test_channel_isometry_property(p, kind):
    v = channel_isometry(ChannelSpec(kind, p))
    assert v.shape == (4, 2)
    assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


@settings(deadline=None, max_examples=20)
@given(p=probabilities)
def test_w_channel_generates_w_family(p):
    initial = from_state_vector(
        np.array([0.0, np.sqrt(2.0), 1.0, 0.0]) / np.sqrt(3.0), ("A", "B")
    )
    out = apply_channel(initial, ChannelSpec("w", p))
    assert out.labels == ("A", "B", "C")
    assert np.allclose(out.matrix, w_type(p).matrix, atol=1e-12)


@settings(deadline=None, max_examples=20)
@given(p=probabilities)
def test_ghz_channel_generates_ghz_family(p):
    initial = from_state_vector(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0), ("A", "B"))
    out = apply_channel(initial, ChannelSpec("ghz", p))
    assert np.allclose(out.matrix, ghz_type(p).matrix, atol=1e-12)


def test_apply_channel_accepts_blank_preexisting_ancilla():
    initial = tensor(bell_pair(), from_state_vector([1.0, 0.0], ("C",)))
    out = apply_channel(initial, ChannelSpec("ghz", 0.3))
    assert np.allclose(out.matrix, ghz_type(0.3).matrix, atol=1e-12)


def test_apply_channel_rejects_populated_ancilla():
    initial = tensor(bell_pair(), from_state_vector([0.0, 1.0], ("C",)))
    with pytest.raises(InvalidInitialization):
        apply_channel(initial, ChannelSpec("ghz", 0.3))


def test_random_density_shape_and_rank():
    rho = random_density(3, rank=2, seed=11)
    assert rho.labels == ("A", "B", "C")
    eigs = np.sort(np.linalg.eigvalsh(rho.matrix))[::-1]
    assert eigs[2:] == pytest.approx(np.zeros(6), abs=1e-12)
    assert eigs.sum() == pytest.approx(1.0, abs=1e-10)


def test_random_density_seed_reproducible():
    a = random_density(2, rank=3, seed=5)
    b = random_density(2, rank=3, seed=5)
    c = random_density(2, rank=3, seed=6)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.allclose(a.matrix, c.matrix)


def test_random_density_golden_file():
    rho = random_density(2, rank=2, seed=42)
    stored = json.loads(GOLDEN.read_text(encoding="utf-8"))
    assert density_to_json(rho) == stored


def test_random_pure_is_pure():
    rho = random_pure(2, seed=9)
    assert rho.purity() == pytest.approx(1.0, abs=1e-12)


def test_schmidt_form_eligible_families():
    for p in (0.0, 0.3, 1.0):
        assert schmidt_form_eligible(w_type(p), "A")
        assert schmidt_form_eligible(ghz_type(p), "A")
    assert schmidt_form_eligible(ghz_n(4), "A")


def test_schmidt_form_three_rays_ineligible():
    vec = np.zeros(8)
    vec[0] = 1.0           # |0>|00>
    vec[5] = 1.0           # |1>|01>
    vec[2] = 1.0 / np.sqrt(2.0)   # (|0> + |1>)|10>
    vec[6] = 1.0 / np.sqrt(2.0)
    psi = from_state_vector(vec / np.linalg.norm(vec), ("A", "B", "C"))
    assert not schmidt_form_eligible(psi, "A")


def test_schmidt_form_requires_purity():
    mixed = random_density(3, rank=4, seed=3)
    assert not schmidt_form_eligible(mixed, "A")
