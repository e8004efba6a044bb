"""Dense complex-matrix foundation for labeled qubit systems.

States are stored as full complex matrices over an ordered tuple of qubit
labels; label position 0 is the most significant bit of the row index, so
|abc> sits at index 4a + 2b + c. All operations are pure functions and the
wrapped arrays are frozen after construction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InvalidPartition,
    InvalidState,
    LabelCollision,
    LabelNotFound,
    NotHermitian,
)

# Numerical contracts for a valid density matrix.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-9


def _as_complex_matrix(matrix) -> np.ndarray:
    m = np.array(matrix, dtype=np.complex128, order="C")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidState(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest modulus of M - M^dagger, entrywise."""
    return float(np.abs(matrix - matrix.conj().T).max())


@dataclass(frozen=True, eq=False)
class ValidationReport:
    """Defect summary produced by validate_density."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def valid(self) -> bool:
        return (
            self.hermiticity_defect <= HERMITICITY_TOL
            and self.trace_defect <= TRACE_TOL
            and self.min_eigenvalue >= EIGENVALUE_FLOOR
        )

    def describe(self) -> str:
        flag = "valid" if self.valid else "invalid"
        return (
            f"{flag}: hermiticity defect {self.hermiticity_defect:.3e}, "
            f"trace defect {self.trace_defect:.3e}, "
            f"min eigenvalue {self.min_eigenvalue:.3e}"
        )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A unit-trace, Hermitian, positive-semidefinite matrix over labeled qubits.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix of dimension 2**len(labels), row-major.
    labels : sequence of str
        Unique subsystem names; the ordering fixes the index arithmetic
        and is never silently permuted by any operation.
    check : bool
        When True (default) the density-matrix invariants are enforced:
        Hermitian within 1e-12, trace 1 within 1e-10, smallest eigenvalue
        not below -1e-9.
    """

    matrix: np.ndarray
    labels: tuple[str, ...]
    check: bool = True

    def __post_init__(self):
        m = _as_complex_matrix(self.matrix)
        labels = tuple(str(name) for name in self.labels)
        if len(labels) == 0:
            raise InvalidState("at least one subsystem label is required")
        if len(set(labels)) != len(labels):
            raise LabelCollision(f"duplicate subsystem labels in {labels}")
        if m.shape[0] != 2 ** len(labels):
            raise InvalidState(
                f"matrix dimension {m.shape[0]} does not match "
                f"2^{len(labels)} for labels {labels}"
            )
        if self.check:
            report = validate_density(m)
            if not report.valid:
                raise InvalidState(report.describe())
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def position(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelNotFound(f"label {label!r} not in {self.labels}") from None

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def from_state_vector(vector, labels: Sequence[str]) -> DensityMatrix:
    """Outer product |v><v| of a normalized state vector."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise InvalidState("state vector has vanishing norm")
    v = v / norm
    return DensityMatrix(np.outer(v, v.conj()), tuple(labels))


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product with concatenated labels."""
    overlap = set(a.labels) & set(b.labels)
    if overlap:
        raise LabelCollision(f"labels {sorted(overlap)} appear on both factors")
    return DensityMatrix(np.kron(a.matrix, b.matrix), a.labels + b.labels)


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Trace out every subsystem not named in keep.

    Surviving labels retain their original relative order regardless of the
    order given in keep.
    """
    keep = list(keep)
    if not keep:
        raise InvalidPartition("keep must name at least one subsystem")
    keep_set = set(keep)
    for name in keep_set:
        if name not in rho.labels:
            raise LabelNotFound(f"label {name!r} not in {rho.labels}")
    n = rho.n_qubits
    keep_pos = [i for i, name in enumerate(rho.labels) if name in keep_set]
    if len(keep_pos) == n:
        return rho
    traced = [i for i in range(n) if i not in keep_pos]
    tensor_form = rho.matrix.reshape((2,) * (2 * n))
    remaining = n
    for axis in sorted(traced, reverse=True):
        tensor_form = np.trace(tensor_form, axis1=axis, axis2=axis + remaining)
        remaining -= 1
    d = 2 ** len(keep_pos)
    out_labels = tuple(rho.labels[i] for i in keep_pos)
    return DensityMatrix(tensor_form.reshape(d, d), out_labels, check=rho.check)


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted descending
    and eigenvectors as the matching columns, satisfying
    m = V diag(lambda) V^dagger within 1e-9.
    """
    if isinstance(m, DensityMatrix):
        m = m.matrix
    m = _as_complex_matrix(m)
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_TOL:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds {HERMITICITY_TOL}")
    values, vectors = np.linalg.eigh(m)
    order = np.argsort(values)[::-1]
    return values[order].copy(), vectors[:, order].copy()


def validate_density(rho) -> ValidationReport:
    """Measure the three density-matrix defects without raising."""
    if isinstance(rho, DensityMatrix):
        m = rho.matrix
    else:
        m = _as_complex_matrix(rho)
    herm = hermiticity_defect(m)
    trace_defect = float(abs(np.trace(m) - 1.0))
    sym = (m + m.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(sym).min())
    return ValidationReport(herm, trace_defect, min_eig)


# ---------------------------------------------------------------------------
# JSON interchange: {"labels": [...], "dim": d, "re": [...], "im": [...]}
# with re/im flattened row-major.

def density_to_json(rho: DensityMatrix) -> dict:
    flat = rho.matrix.reshape(-1)
    return {
        "labels": list(rho.labels),
        "dim": rho.dim,
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def density_from_json(obj: dict) -> DensityMatrix:
    try:
        labels = tuple(str(x) for x in obj["labels"])
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidState(f"malformed density-matrix object: {exc}") from exc
    if dim != 2 ** len(labels):
        raise InvalidState(f"dim {dim} does not match 2^{len(labels)} labels")
    if re.shape != (dim * dim,) or im.shape != (dim * dim,):
        raise InvalidState(
            f"re/im must be flat arrays of length {dim * dim}, "
            f"got {re.shape} and {im.shape}"
        )
    matrix = (re + 1j * im).reshape(dim, dim)
    report = validate_density(matrix)
    if not report.valid:
        raise InvalidState(report.describe())
    return DensityMatrix(matrix, labels)


def load_density(path) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidState(f"not valid JSON: {exc}") from exc
    return density_from_json(obj)


def save_density(rho: DensityMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(density_to_json(rho), handle)
        handle.write("\n")
