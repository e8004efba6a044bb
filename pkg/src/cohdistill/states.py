"""State factory: named families, the two excitation-recording channels,
and seeded random densities for property tests.

The one-parameter families interpolate between a product state and a
maximally correlated one:

    w-type:   (1/sqrt(3))|100> + sqrt(2(1-p)/3)|010> + sqrt(2p/3)|001>
    ghz-type: (1/sqrt(2))(|000> + sqrt(1-p)|110> + sqrt(p)|111>)

on labels (A, B, C). Both are generated by a channel acting on B that
adjoins a fresh ancilla C: the w channel moves the B excitation to C with
amplitude sqrt(p) (amplitude-damping-like), the ghz channel keeps B and
records the excitation in C (phase-damping-like).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densmat import DensityMatrix, from_state_vector, partial_trace
from .errors import DomainError, InvalidInitialization

FAMILY_NAMES = ("w", "ghz", "ghz-n", "w-n", "bell")


@dataclass(frozen=True)
class FamilyParam:
    """Family selector: p for the parameterized families, n for the N-qubit ones."""

    family: str
    p: float | None = None
    n: int | None = None


def _check_p(p: float | None) -> float:
    if p is None:
        raise DomainError("this family requires the parameter p")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p {p} outside [0, 1]")
    return float(p)


def w_type(p: float) -> DensityMatrix:
    """W-type family state on labels (A, B, C)."""
    p = _check_p(p)
    vec = np.zeros(8)
    vec[4] = 1.0 / np.sqrt(3.0)              # |100>
    vec[2] = np.sqrt(2.0 * (1.0 - p) / 3.0)  # |010>
    vec[1] = np.sqrt(2.0 * p / 3.0)          # |001>
    return from_state_vector(vec, ("A", "B", "C"))


def ghz_type(p: float) -> DensityMatrix:
    """GHZ-type family state on labels (A, B, C)."""
    p = _check_p(p)
    vec = np.zeros(8)
    vec[0] = 1.0 / np.sqrt(2.0)              # |000>
    vec[6] = np.sqrt((1.0 - p) / 2.0)        # |110>
    vec[7] = np.sqrt(p / 2.0)                # |111>
    return from_state_vector(vec, ("A", "B", "C"))


def bell_pair() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2) on labels (A, B)."""
    vec = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    return from_state_vector(vec, ("A", "B"))


def _n_party_labels(n: int) -> tuple[str, ...]:
    return ("A",) + tuple(f"B{i}" for i in range(1, n))


def ghz_n(n: int) -> DensityMatrix:
    """N-qubit GHZ state (|0...0> + |1...1>)/sqrt(2)."""
    if n < 2:
        raise DomainError(f"ghz-n requires n >= 2, got {n}")
    vec = np.zeros(2 ** n)
    vec[0] = vec[-1] = 1.0 / np.sqrt(2.0)
    return from_state_vector(vec, _n_party_labels(n))


def w_n(n: int) -> DensityMatrix:
    """N-qubit W state, uniform superposition of single excitations."""
    if n < 2:
        raise DomainError(f"w-n requires n >= 2, got {n}")
    vec = np.zeros(2 ** n)
    for k in range(n):
        vec[2 ** k] = 1.0 / np.sqrt(n)
    return from_state_vector(vec, _n_party_labels(n))


def make_family(param: FamilyParam) -> DensityMatrix:
    """Build a family state from a FamilyParam selector."""
    family = param.family.lower()
    if family == "w":
        return w_type(_check_p(param.p))
    if family == "ghz":
        return ghz_type(_check_p(param.p))
    if family == "bell":
        return bell_pair()
    if family in ("ghz-n", "w-n"):
        if param.n is None:
            raise DomainError(f"family {family!r} requires the qubit count n")
        return ghz_n(param.n) if family == "ghz-n" else w_n(param.n)
    raise DomainError(f"unknown family {param.family!r}; choose from {FAMILY_NAMES}")


# ---------------------------------------------------------------------------
# Channels


@dataclass(frozen=True)
class ChannelSpec:
    """kind 'w' or 'ghz', with branching weight p."""

    kind: str
    p: float

    def __post_init__(self):
        if self.kind not in ("w", "ghz"):
            raise DomainError(f"unknown channel kind {self.kind!r}")
        _check_p(self.p)


def channel_isometry(spec: ChannelSpec) -> np.ndarray:
    """The isometry V: H_B -> H_B (x) H_C defining the channel.

    V|0>_B = |00>_BC and

        w:   V|1>_B = sqrt(1-p)|10> + sqrt(p)|01>
        ghz: V|1>_B = sqrt(1-p)|10> + sqrt(p)|11>

    Columns are orthonormal, so the map preserves norm exactly.
    """
    v = np.zeros((4, 2))
    v[0, 0] = 1.0                              # |00> <- |0>
    v[2, 1] = np.sqrt(1.0 - spec.p)            # |10> <- |1>
    if spec.kind == "w":
        v[1, 1] = np.sqrt(spec.p)              # |01> <- |1>
    else:
        v[3, 1] = np.sqrt(spec.p)              # |11> <- |1>
    return v


def apply_channel(
    rho: DensityMatrix,
    spec: ChannelSpec,
    source: str = "B",
    ancilla: str = "C",
) -> DensityMatrix:
    """Send the source qubit through the channel, adjoining the ancilla.

    If the ancilla label already exists its marginal must be |0><0| (it is
    then replaced); otherwise it is appended as the last subsystem of the
    output.
    """
    if ancilla in rho.labels:
        marginal = partial_trace(rho, [ancilla]).matrix
        if abs(marginal[0, 0] - 1.0) > 1e-10:
            raise InvalidInitialization(
                f"ancilla {ancilla!r} is populated (|0> weight {marginal[0, 0].real:.6f})"
            )
        rho = partial_trace(rho, [name for name in rho.labels if name != ancilla])
    n = rho.n_qubits
    k = rho.position(source)
    # V as a (b_out, c_out, b_in) tensor.
    v3 = channel_isometry(spec).reshape(2, 2, 2)
    t = rho.matrix.reshape((2,) * (2 * n))
    # Row side: replace the source row axis, appending the ancilla row axis
    # after the existing rows.
    t = np.tensordot(v3, t, axes=(2, k))
    t = np.moveaxis(t, (0, 1), (k, n))
    # Column side: same contraction with the conjugate isometry. Rows now
    # occupy n+1 axes, so the source column axis sits at n+1+k.
    t = np.tensordot(v3.conj(), t, axes=(2, n + 1 + k))
    t = np.moveaxis(t, (0, 1), (n + 1 + k, 2 * n + 1))
    d = 2 ** (n + 1)
    return DensityMatrix(t.reshape(d, d), rho.labels + (ancilla,))


# ---------------------------------------------------------------------------
# Random corpus

_DEFAULT_LABELS = "ABCDEFGH"


def random_density(
    n_qubits: int, rank: int, seed: int, labels: tuple[str, ...] | None = None
) -> DensityMatrix:
    """Seeded random density of the given rank.

    A complex Gaussian matrix G of shape (2**n, rank) gives
    rho = G G^dagger / Tr(G G^dagger), which is deterministic per seed.
    """
    d = 2 ** n_qubits
    if not 1 <= rank <= d:
        raise DomainError(f"rank {rank} outside [1, {d}]")
    if labels is None:
        if n_qubits > len(_DEFAULT_LABELS):
            raise DomainError(f"supply labels explicitly for n > {len(_DEFAULT_LABELS)}")
        labels = tuple(_DEFAULT_LABELS[:n_qubits])
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real, labels)


def random_pure(n_qubits: int, seed: int, labels: tuple[str, ...] | None = None) -> DensityMatrix:
    return random_density(n_qubits, 1, seed, labels)


# ---------------------------------------------------------------------------
# Structural precondition for the N-party distribution inequality


def schmidt_form_eligible(rho: DensityMatrix, ancilla: str, tol: float = 1e-7) -> bool:
    """Check the two-branch structure behind the distribution inequality.

    A pure state qualifies when every computational basis state of the
    non-ancilla subsystems couples to one of at most two mutually
    orthogonal ancilla states, i.e. the ancilla marginal admits the
    required two-term decomposition aligned with the reference basis of
    the rest. Mixed inputs never qualify.
    """
    if rho.purity() < 1.0 - 1e-9:
        return False
    values, vectors = np.linalg.eigh(rho.matrix)
    psi = vectors[:, int(np.argmax(values))]
    k = rho.position(ancilla)
    amps = np.moveaxis(psi.reshape((2,) * rho.n_qubits), k, 0).reshape(2, -1)
    rays: list[np.ndarray] = []
    for column in amps.T:
        norm = np.linalg.norm(column)
        if norm <= 1e-12:
            continue
        v = column / norm
        matched = False
        for ray in rays:
            overlap = abs(np.vdot(ray, v))
            if overlap >= 1.0 - tol:
                matched = True
                break
            if overlap > tol:
                return False
        if not matched:
            rays.append(v)
            if len(rays) > 2:
                return False
    return True
