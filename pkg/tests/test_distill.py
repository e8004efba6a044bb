"""Optimizer for the assisted-distillation objective, against closed forms."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdistill import (
    DensityMatrix,
    DomainError,
    InvalidPartition,
    LabelNotFound,
    OptimizerConfig,
    ProjectiveBasis,
    average_coherence,
    binary_entropy,
    c_cop,
    dephase,
    from_state_vector,
    ghz_n,
    ghz_type,
    multipartite_inequality_check,
    objective_grid,
    partial_trace,
    random_density,
    tau,
    tau_symmetrized,
    theorem3_objective,
    von_neumann_entropy,
    w_type,
)
from conftest import random_state_vector

LOG2_3 = np.log2(3.0)

# residual of the symmetric three-qubit single-excitation state after a
# theta=pi/4 measurement has spectrum {(1 + sqrt(5)/3)/2, (1 - sqrt(5)/3)/2}
W_HALF_PAIR_RATE = binary_entropy(2.0 / 3.0) - binary_entropy((1.0 + np.sqrt(5.0) / 3.0) / 2.0)
W_HALF_TAU = LOG2_3 - 2.0 * W_HALF_PAIR_RATE


def test_config_validation():
    with pytest.raises(DomainError):
        OptimizerConfig(coarse_grid=(0, 5))
    with pytest.raises(DomainError):
        OptimizerConfig(refine_shrink=1.5)
    with pytest.raises(DomainError):
        OptimizerConfig(refine_iterations=-1)
    with pytest.raises(DomainError):
        OptimizerConfig(tolerance=0.0)


def test_label_validation(w_half):
    with pytest.raises(LabelNotFound):
        c_cop(w_half, "Z")
    with pytest.raises(InvalidPartition):
        c_cop(w_half, "A", ("A",))
    with pytest.raises(InvalidPartition):
        c_cop(w_half, "A", ())


def test_w_full_partition_rate(w_half):
    report = c_cop(w_half, "A", ("B", "C"))
    assert report.value == pytest.approx(LOG2_3, abs=1e-9)
    assert report.optimal_basis.theta == pytest.approx(np.pi / 4, abs=1e-6)
    assert report.optimal_basis.phi == pytest.approx(0.0, abs=1e-6)


def test_w_single_partition_rate(w_half):
    report = c_cop(w_half, "A", ("B",))
    assert report.value == pytest.approx(W_HALF_PAIR_RATE, abs=1e-9)
    assert report.optimal_basis.theta == pytest.approx(np.pi / 4, abs=1e-4)


def test_w_tau_closed_form(w_half):
    report = tau(w_half, "A", "B", "C")
    assert report.tau == pytest.approx(W_HALF_TAU, abs=1e-8)
    assert report.c_abc.value == pytest.approx(LOG2_3, abs=1e-9)
    assert report.c_ab.value == pytest.approx(report.c_ac.value, abs=1e-9)
    assert report.tau == pytest.approx(
        report.c_abc.value - report.c_ab.value - report.c_ac.value, abs=0.0
    )


@pytest.mark.parametrize("p", [0.1, 0.5, 0.8])
def test_ghz_single_partition_closed_form(p):
    report = c_cop(ghz_type(p), "A", ("C",))
    assert report.value == pytest.approx(binary_entropy(p) / 2.0, abs=1e-9)
    assert report.optimal_basis.theta <= 1e-4


def test_default_partition_is_every_other_label(w_half):
    explicit = c_cop(w_half, "A", ("B", "C"))
    implied = c_cop(w_half, "A")
    assert implied.value == pytest.approx(explicit.value, abs=0.0)


def test_degenerate_objective_tie_breaks_to_origin():
    mixed = DensityMatrix(np.eye(4, dtype=complex) / 4.0, ("A", "B"))
    report = c_cop(mixed, "A")
    assert report.value == pytest.approx(0.0, abs=1e-12)
    assert report.optimal_basis.theta == 0.0
    assert report.optimal_basis.phi == 0.0


def test_report_trace_is_monotone(w_half):
    report = c_cop(w_half, "A", ("B",))
    values = [value for _, value in report.objective_trace]
    assert values
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))
    assert report.value == pytest.approx(values[-1], abs=0.0)


@settings(deadline=None, max_examples=15)
@given(
    seed=st.integers(min_value=0, max_value=10**6),
    theta=st.floats(min_value=0.0, max_value=np.pi / 2),
    phi=st.floats(min_value=0.0, max_value=2 * np.pi, exclude_max=True),
)
def test_grid_matches_componental_evaluation(seed, theta, phi):
    rho = from_state_vector(random_state_vector(3, seed), ("A", "B", "C"))
    grid = objective_grid(rho, "B", ("A", "C"), np.array([theta]), np.array([phi]))
    direct = average_coherence(rho, "B", ProjectiveBasis(theta, phi), ("A", "C"))
    assert grid[0, 0] == pytest.approx(direct, abs=1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_pure_two_qubit_rate_is_dephased_marginal_entropy(seed):
    psi = from_state_vector(random_state_vector(2, seed), ("A", "B"))
    expected = von_neumann_entropy(dephase(partial_trace(psi, ("B",)), ("B",)))
    report = c_cop(psi, "A", ("B",))
    assert report.value == pytest.approx(expected, abs=1e-6)


def test_tau_symmetrized_w_state(w_half):
    # the symmetric point is invariant under relabeling, so the minimum
    # over measured-qubit choices equals the labeled value
    assert tau_symmetrized(w_half) == pytest.approx(W_HALF_TAU, abs=1e-8)


@pytest.mark.parametrize("seed", [10, 11, 12])
def test_theorem3_shared_basis_is_a_lower_bound(seed):
    rho = random_density(3, rank=2, seed=seed)
    value, basis = theorem3_objective(rho, "A")
    report = c_cop(rho, "A")
    assert value <= report.value + 1e-6
    assert 0.0 <= basis.theta <= np.pi / 2


def test_inequality_check_ghz4():
    report = multipartite_inequality_check(ghz_n(4), "A")
    assert report.precondition_ok
    assert report.warning is None
    assert len(report.rhs_terms) == 3
    assert report.slack == pytest.approx(1.0, abs=1e-6)
    assert report.slack == pytest.approx(
        report.lhs.value - sum(term.value for _, term in report.rhs_terms), abs=0.0
    )


def test_inequality_check_w_state_slack(w_half):
    report = multipartite_inequality_check(w_half, "A")
    assert report.precondition_ok
    assert report.slack == pytest.approx(W_HALF_TAU, abs=1e-8)


def test_inequality_check_biseparable_equality():
    # Bell pair on AB with a blank third qubit: the bound is tight
    report = multipartite_inequality_check(ghz_type(0.0), "A")
    assert report.precondition_ok
    assert report.slack == pytest.approx(0.0, abs=1e-6)


def test_inequality_check_flags_false_schmidt_claim():
    mixed = random_density(3, rank=3, seed=21)
    report = multipartite_inequality_check(mixed, "A", schmidt_form=True)
    assert not report.precondition_ok
    assert report.warning is not None and "PreconditionViolation" in report.warning


def test_inequality_check_autodetects_ineligible():
    mixed = random_density(3, rank=3, seed=22)
    report = multipartite_inequality_check(mixed, "A")
    assert not report.precondition_ok
