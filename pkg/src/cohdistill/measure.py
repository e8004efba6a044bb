"""Projective measurements on a single auxiliary qubit.

A measurement basis is parameterized by polar and azimuthal angles,

    |b+> = cos(theta)|0> + sin(theta) e^{i phi} |1>
    |b-> = sin(theta)|0> - cos(theta) e^{i phi} |1>

and applying it to a labeled subsystem yields outcome probabilities and
normalized residual densities on the remaining subsystems.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coherence import relative_entropy_coherence
from .densmat import DensityMatrix, partial_trace
from .errors import DomainError, InvalidPartition

# Below this probability an outcome is flagged degenerate and its residual
# is undefined; degenerate outcomes contribute zero to any average.
DEGENERATE_PROBABILITY = 1e-12

_ANGLE_SLACK = 1e-9


@dataclass(frozen=True)
class ProjectiveBasis:
    """Rank-1 orthogonal qubit basis at polar angle theta, azimuth phi."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not -_ANGLE_SLACK <= self.theta <= np.pi / 2 + _ANGLE_SLACK:
            raise DomainError(f"theta {self.theta} outside [0, pi/2]")
        if not -_ANGLE_SLACK <= self.phi < 2 * np.pi + _ANGLE_SLACK:
            raise DomainError(f"phi {self.phi} outside [0, 2*pi)")
        object.__setattr__(self, "theta", float(min(max(self.theta, 0.0), np.pi / 2)))
        object.__setattr__(self, "phi", float(self.phi) % (2 * np.pi))

    @property
    def vector_plus(self) -> np.ndarray:
        return np.array(
            [np.cos(self.theta), np.sin(self.theta) * np.exp(1j * self.phi)]
        )

    @property
    def vector_minus(self) -> np.ndarray:
        return np.array(
            [np.sin(self.theta), -np.cos(self.theta) * np.exp(1j * self.phi)]
        )

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vector_plus, self.vector_minus

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        vp, vm = self.vectors()
        return np.outer(vp, vp.conj()), np.outer(vm, vm.conj())


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    residual: DensityMatrix | None
    degenerate: bool = False


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities paired with residual states."""

    outcomes: tuple[MeasurementOutcome, ...]

    @property
    def probabilities(self) -> list[float]:
        return [outcome.probability for outcome in self.outcomes]


def ancilla_blocks(rho: DensityMatrix, target: str) -> np.ndarray:
    """The four blocks of rho indexed by the target qubit.

    Returns an array of shape (2, 2, d, d) where element [j, k] is the
    operator <j|rho|k> on the remaining subsystems, so that the
    unnormalized residual for a measurement vector v is
    sum_jk conj(v_j) v_k blocks[j, k].
    """
    n = rho.n_qubits
    pos = rho.position(target)
    tensor_form = rho.matrix.reshape((2,) * (2 * n))
    tensor_form = np.moveaxis(tensor_form, (pos, n + pos), (0, 1))
    d = 2 ** (n - 1)
    return np.ascontiguousarray(tensor_form.reshape(2, 2, d, d))


def apply_measurement(
    rho: DensityMatrix, target: str, basis: ProjectiveBasis
) -> MeasurementEnsemble:
    """Measure the target qubit, returning probabilities and residuals.

    P_i = Tr((Xi_i (x) I) rho) and residual_i = Tr_target((Xi_i (x) I) rho) / P_i.
    Outcomes with P_i below 1e-12 are flagged degenerate with no residual.
    """
    blocks = ancilla_blocks(rho, target)
    rest = tuple(name for name in rho.labels if name != target)
    outcomes = []
    for v in basis.vectors():
        unnormalized = (
            (np.conj(v[0]) * v[0]) * blocks[0, 0]
            + (np.conj(v[0]) * v[1]) * blocks[0, 1]
            + (np.conj(v[1]) * v[0]) * blocks[1, 0]
            + (np.conj(v[1]) * v[1]) * blocks[1, 1]
        )
        probability = float(np.real(np.trace(unnormalized)))
        if probability < DEGENERATE_PROBABILITY:
            outcomes.append(MeasurementOutcome(max(probability, 0.0), None, True))
            continue
        residual = DensityMatrix(unnormalized / probability, rest, check=rho.check)
        outcomes.append(MeasurementOutcome(probability, residual))
    return MeasurementEnsemble(tuple(outcomes))


def average_coherence(
    rho: DensityMatrix,
    target: str,
    basis: ProjectiveBasis,
    measure_on: Iterable[str],
) -> float:
    """Average relative-entropy coherence of the post-measurement residuals.

    Returns sum_i P_i C_r(residual_i restricted to measure_on); degenerate
    outcomes contribute zero.
    """
    measure_on = list(measure_on)
    if target in measure_on:
        raise InvalidPartition(f"measured qubit {target!r} cannot host coherence")
    if not measure_on:
        raise InvalidPartition("measure_on must name at least one subsystem")
    total = 0.0
    for outcome in apply_measurement(rho, target, basis).outcomes:
        if outcome.degenerate:
            continue
        reduced = partial_trace(outcome.residual, measure_on)
        total += outcome.probability * relative_entropy_coherence(reduced)
    return total


def residual_closed_form_ghz(
    p: float, theta: float
) -> tuple[DensityMatrix, DensityMatrix]:
    """Closed-form residual states on C for the GHZ-type family.

    Measuring the first qubit of the GHZ-type state at angle theta (any
    azimuth, which drops out) leaves C in

        rho_+ = [[1 - p sin^2(theta),  w sin^2(theta)],
                 [w sin^2(theta),      p sin^2(theta)]]

    with w = sqrt(p(1-p)), and rho_- with cos^2(theta) in place of
    sin^2(theta). Both outcomes occur with probability 1/2.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p {p} outside [0, 1]")
    w = np.sqrt(p * (1.0 - p))
    s2 = np.sin(theta) ** 2
    c2 = np.cos(theta) ** 2
    rho_plus = np.array([[1.0 - p * s2, w * s2], [w * s2, p * s2]])
    rho_minus = np.array([[1.0 - p * c2, w * c2], [w * c2, p * c2]])
    return (
        DensityMatrix(rho_plus, ("C",)),
        DensityMatrix(rho_minus, ("C",)),
    )
