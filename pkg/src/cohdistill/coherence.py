"""Entropy and coherence measures in the fixed computational reference basis.

All entropies are in bits (logarithm base 2) and 0*log(0) is taken as 0.
Eigenvalues below 1e-15 are treated as exact zeros; small negative
eigenvalues in [-1e-9, 0) are clipped and the spectrum renormalized,
anything more negative is rejected as an invalid state.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .densmat import DensityMatrix, partial_trace
from .errors import DomainError, InvalidState, LabelNotFound

ZERO_EIGENVALUE = 1e-15
CLIP_FLOOR = -1e-9


def clean_spectrum(values) -> np.ndarray:
    """Sanitize an eigenvalue list into a probability spectrum.

    Entries in [-1e-9, 0) are clipped to 0 and the result renormalized to
    unit sum. Entries below -1e-9 indicate a genuinely non-positive
    operator and raise InvalidState.
    """
    vals = np.asarray(values, dtype=float).reshape(-1)
    if vals.size and float(vals.min()) < CLIP_FLOOR:
        raise InvalidState(
            f"eigenvalue {vals.min():.3e} below the clipping floor {CLIP_FLOOR}"
        )
    vals = np.clip(vals, 0.0, None)
    total = float(vals.sum())
    if total <= 0.0:
        raise InvalidState("spectrum has no positive mass")
    return vals / total


def xlog2(values: np.ndarray) -> np.ndarray:
    """Elementwise x log2 x with the 0 log 0 = 0 convention.

    Entries at or below the zero cutoff (including small negatives from
    finite-precision eigensolves) map to 0.
    """
    values = np.asarray(values, dtype=float)
    out = np.zeros_like(values)
    mask = values > ZERO_EIGENVALUE
    out[mask] = values[mask] * np.log2(values[mask])
    return out


def shannon_entropy(probabilities: Iterable[float]) -> float:
    """H = -sum p log2 p over a probability list, with 0 log 0 = 0."""
    p = np.asarray(list(probabilities), dtype=float)
    p = p[p > ZERO_EIGENVALUE]
    if p.size == 0:
        return 0.0
    return float(-np.sum(p * np.log2(p))) + 0.0


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy H(x) = -x log2 x - (1-x) log2 (1-x)."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary_entropy argument {x} outside [0, 1]")
    return shannon_entropy([x, 1.0 - x])


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, evaluated from the eigenvalue spectrum."""
    spectrum = clean_spectrum(np.linalg.eigvalsh(rho.matrix))
    return shannon_entropy(spectrum)


def _dephasing_mask(n_qubits: int, target_positions: Iterable[int]) -> np.ndarray:
    dim = 2 ** n_qubits
    idx = np.arange(dim)
    mask = np.ones((dim, dim), dtype=bool)
    for pos in target_positions:
        bit = (idx >> (n_qubits - 1 - pos)) & 1
        mask &= bit[:, None] == bit[None, :]
    return mask


def dephase(rho: DensityMatrix, targets: Iterable[str]) -> DensityMatrix:
    """Zero every matrix element off-diagonal in any target qubit's index.

    The reference basis is the computational basis of each target. The map
    is idempotent and preserves the diagonal exactly.
    """
    targets = list(targets)
    positions = [rho.position(name) for name in targets]
    mask = _dephasing_mask(rho.n_qubits, positions)
    return DensityMatrix(np.where(mask, rho.matrix, 0.0), rho.labels, check=rho.check)


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    """C_r = S(delta rho) - S(rho) with delta dephasing every subsystem.

    The fully dephased state is diagonal, so its entropy is the Shannon
    entropy of the diagonal.
    """
    diagonal = clean_spectrum(np.real(np.diagonal(rho.matrix)))
    return shannon_entropy(diagonal) - von_neumann_entropy(rho)


def l1_coherence(rho: DensityMatrix) -> float:
    """Sum of moduli of all off-diagonal entries."""
    moduli = np.abs(rho.matrix)
    return float(moduli.sum() - np.trace(moduli).real)


def qi_relative_entropy(rho: DensityMatrix, incoherent_part: Iterable[str]) -> float:
    """Quantum-incoherent relative entropy S(dephase(rho, part)) - S(rho).

    Upper-bounds every assisted-distillation rate on the same partition.
    """
    part = list(incoherent_part)
    if not part:
        raise LabelNotFound("incoherent_part must name at least one subsystem")
    return von_neumann_entropy(dephase(rho, part)) - von_neumann_entropy(rho)


def conditional_entropy(rho: DensityMatrix, given: Iterable[str]) -> float:
    """S(joint) - S(marginal on the conditioning subsystems)."""
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, given))
