"""Assisted-distillation optimizer.

The distillable-coherence rate under a single projective measurement of one
ancilla qubit is the average relative-entropy coherence of the residual
states.  c_cop maximizes that average over all measurement bases

    |b+> = cos(theta)|0> + sin(theta) e^{i phi} |1>,
    |b-> = sin(theta)|0> - cos(theta) e^{i phi} |1>,

by a coarse grid scan followed by pattern-search refinement.  The objective
is evaluated in a vectorized form: with the ancilla blocks B[j, k] of the
reduced state, the unnormalized residual for outcome vector v is
sum_jk conj(v_j) v_k B[j, k], and

    P * C_r(W / P) = sum_i lam_i log2 lam_i - sum_i d_i log2 d_i

for eigenvalues lam and diagonal d of the unnormalized block W, so outcome
probabilities never need to be divided out (degenerate outcomes contribute
zero automatically).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coherence import xlog2
from .densmat import DensityMatrix, partial_trace
from .errors import DomainError, InvalidPartition
from .measure import ProjectiveBasis, ancilla_blocks
from .states import schmidt_form_eligible

_TIE_RTOL = 4e-15
_IMPROVE_RTOL = 1e-15
_CHUNK_ROWS = 128


@dataclass(frozen=True)
class OptimizerConfig:
    """Grid-then-refine search settings."""

    coarse_grid: tuple[int, int] = (91, 73)
    refine_iterations: int = 40
    refine_shrink: float = 0.5
    tolerance: float = 1e-6

    def __post_init__(self):
        n_theta, n_phi = self.coarse_grid
        if n_theta < 2 or n_phi < 1:
            raise DomainError(f"coarse grid {self.coarse_grid} needs n_theta >= 2, n_phi >= 1")
        if self.refine_iterations < 0:
            raise DomainError("refine_iterations must be nonnegative")
        if not 0.0 < self.refine_shrink < 1.0:
            raise DomainError(f"refine_shrink {self.refine_shrink} outside (0, 1)")
        if self.tolerance <= 0.0:
            raise DomainError("tolerance must be positive")


DEFAULT_CONFIG = OptimizerConfig()


@dataclass(frozen=True)
class DistillReport:
    """Optimization result: best average residual coherence in bits."""

    value: float
    optimal_basis: ProjectiveBasis
    objective_trace: tuple[tuple[ProjectiveBasis, float], ...] = field(repr=False, default=())


@dataclass(frozen=True)
class TauReport:
    """Distribution core tau = c_abc - c_ab - c_ac from three independent runs."""

    c_abc: DistillReport
    c_ab: DistillReport
    c_ac: DistillReport
    tau: float


@dataclass(frozen=True)
class InequalityReport:
    """Joint-versus-pairwise distillation comparison for one ancilla.

    slack = lhs.value - sum of rhs term values.  The inequality slack >= 0
    is only guaranteed when the state is pure and has the two-branch
    structure checked by schmidt_form_eligible; precondition_ok records
    whether that held.
    """

    lhs: DistillReport
    rhs_terms: tuple[tuple[str, DistillReport], ...]
    slack: float
    precondition_ok: bool
    warning: str | None = None


def _block_entropy_terms(w: np.ndarray) -> np.ndarray:
    """sum_i lam_i log2 lam_i - sum_i d_i log2 d_i for a batch of blocks."""
    diag = np.einsum("...ii->...i", w).real
    if w.shape[-1] == 2:
        a = w[..., 0, 0].real
        b = w[..., 1, 1].real
        off = w[..., 0, 1]
        trace = a + b
        det = a * b - (off.real * off.real + off.imag * off.imag)
        disc = np.sqrt(np.maximum(trace * trace - 4.0 * det, 0.0))
        eigs = np.stack([(trace - disc) / 2.0, (trace + disc) / 2.0], axis=-1)
    else:
        eigs = np.linalg.eigvalsh(w)
    return xlog2(eigs).sum(axis=-1) - xlog2(diag).sum(axis=-1)


class _Objective:
    """Average-residual-coherence objective for one (ancilla, targets) split.

    Instances are callable on broadcastable theta/phi arrays and return the
    objective with matching shape.
    """

    def __init__(self, rho: DensityMatrix, ancilla: str, targets: tuple[str, ...]):
        reduced = partial_trace(rho, (ancilla,) + targets)
        self.blocks = ancilla_blocks(reduced, ancilla)
        self.dim = self.blocks.shape[-1]

    def __call__(self, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
        thetas, phis = np.broadcast_arrays(np.asarray(thetas, float), np.asarray(phis, float))
        c = np.cos(thetas)
        s = np.sin(thetas)
        cc = (c * c)[..., None, None]
        ss = (s * s)[..., None, None]
        cse = (c * s * np.exp(1j * phis))[..., None, None]
        b = self.blocks
        w_plus = cc * b[0, 0] + cse * b[0, 1] + cse.conj() * b[1, 0] + ss * b[1, 1]
        w_minus = ss * b[0, 0] - cse * b[0, 1] - cse.conj() * b[1, 0] + cc * b[1, 1]
        return _block_entropy_terms(w_plus) + _block_entropy_terms(w_minus)


def _normalize_partition(
    rho: DensityMatrix, ancilla: str, distill_on
) -> tuple[str, tuple[str, ...]]:
    rho.position(ancilla)
    if distill_on is None:
        targets = tuple(name for name in rho.labels if name != ancilla)
    else:
        targets = tuple(distill_on)
    if not targets:
        raise InvalidPartition("distill_on must name at least one subsystem")
    if ancilla in targets:
        raise InvalidPartition(f"ancilla {ancilla!r} cannot be distilled on")
    for name in targets:
        rho.position(name)
    if len(set(targets)) != len(targets):
        raise InvalidPartition(f"duplicate labels in distill_on {targets}")
    return ancilla, targets


def _grid_angles(cfg: OptimizerConfig) -> tuple[np.ndarray, np.ndarray]:
    n_theta, n_phi = cfg.coarse_grid
    thetas = np.linspace(0.0, math.pi / 2.0, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    return thetas, phis


def _evaluate_grid(evaluate, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    values = np.empty((thetas.size, phis.size))
    # Chunk over theta rows to keep the batched block arrays small.
    for start in range(0, thetas.size, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, thetas.size)
        values[start:stop] = evaluate(thetas[start:stop, None], phis[None, :])
    return values


def _grid_argmax(values: np.ndarray) -> tuple[int, int]:
    """Row-major first index among near-maximal entries.

    Rows scan theta ascending and columns phi ascending, so the first
    near-maximal entry is the tie-break winner: smallest theta, then phi.
    """
    vmax = float(values.max())
    mask = values >= vmax - _TIE_RTOL * max(1.0, abs(vmax))
    flat = int(np.argmax(mask))
    return flat // values.shape[1], flat % values.shape[1]


def _refine(evaluate, theta, phi, value, step_theta, step_phi, cfg: OptimizerConfig):
    """Compass pattern search from the grid winner.

    Moves to a strictly better axis neighbor, otherwise halves the steps;
    stops once both steps drop below cfg.tolerance.
    """
    two_pi = 2.0 * math.pi
    trace = [(ProjectiveBasis(theta, phi), value)]
    for _ in range(cfg.refine_iterations):
        if max(step_theta, step_phi) < cfg.tolerance:
            break
        cand_theta = np.array([
            min(theta + step_theta, math.pi / 2.0),
            max(theta - step_theta, 0.0),
            theta,
            theta,
        ])
        cand_phi = np.array([phi, phi, (phi + step_phi) % two_pi, (phi - step_phi) % two_pi])
        cand_values = evaluate(cand_theta, cand_phi)
        best = int(np.argmax(cand_values))
        if cand_values[best] > value + _IMPROVE_RTOL * max(1.0, abs(value)):
            theta = float(cand_theta[best])
            phi = float(cand_phi[best])
            value = float(cand_values[best])
        else:
            step_theta *= cfg.refine_shrink
            step_phi *= cfg.refine_shrink
        trace.append((ProjectiveBasis(theta, phi), value))
    return theta, phi, value, trace


def _optimize(evaluate, cfg: OptimizerConfig) -> DistillReport:
    thetas, phis = _grid_angles(cfg)
    values = _evaluate_grid(evaluate, thetas, phis)
    i, j = _grid_argmax(values)
    theta = float(thetas[i])
    phi = float(phis[j])
    value = float(values[i, j])
    step_theta = float(thetas[1] - thetas[0])
    step_phi = 2.0 * math.pi / phis.size
    theta, phi, value, trace = _refine(evaluate, theta, phi, value, step_theta, step_phi, cfg)
    return DistillReport(value=value, optimal_basis=ProjectiveBasis(theta, phi),
                         objective_trace=tuple(trace))


def objective_grid(
    rho: DensityMatrix,
    ancilla: str,
    distill_on,
    thetas: np.ndarray,
    phis: np.ndarray,
) -> np.ndarray:
    """Objective values on the outer product of the given angle arrays.

    Exposed for exhaustive-grid cross-checks; c_cop uses the same evaluator.
    """
    ancilla, targets = _normalize_partition(rho, ancilla, distill_on)
    objective = _Objective(rho, ancilla, targets)
    return _evaluate_grid(objective, np.asarray(thetas, float), np.asarray(phis, float))


def c_cop(
    rho: DensityMatrix,
    ancilla: str,
    distill_on=None,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
) -> DistillReport:
    """Best average residual coherence over projective measurements of the ancilla.

    distill_on names the subsystems whose joint coherence is distilled
    (default: every non-ancilla subsystem); other subsystems are traced out.
    """
    ancilla, targets = _normalize_partition(rho, ancilla, distill_on)
    return _optimize(_Objective(rho, ancilla, targets), cfg)


def tau(
    rho: DensityMatrix,
    ancilla: str,
    part1: str,
    part2: str,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
) -> TauReport:
    """Distribution core: joint rate minus the two single-target rates.

    The three maximizations are independent searches; the joint term never
    shares its basis with the single-target terms.
    """
    if len({ancilla, part1, part2}) != 3:
        raise InvalidPartition(f"need three distinct labels, got {(ancilla, part1, part2)}")
    c_abc = c_cop(rho, ancilla, (part1, part2), cfg)
    c_ab = c_cop(rho, ancilla, (part1,), cfg)
    c_ac = c_cop(rho, ancilla, (part2,), cfg)
    return TauReport(c_abc=c_abc, c_ab=c_ab, c_ac=c_ac,
                     tau=c_abc.value - c_ab.value - c_ac.value)


def tau_symmetrized(rho: DensityMatrix, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """Minimum of the distribution core over the three ancilla choices."""
    if rho.n_qubits != 3:
        raise InvalidPartition(f"tau_symmetrized needs a 3-qubit state, got {rho.n_qubits}")
    best = math.inf
    for name in rho.labels:
        rest = tuple(other for other in rho.labels if other != name)
        best = min(best, tau(rho, name, rest[0], rest[1], cfg).tau)
    return best


def theorem3_objective(
    rho: DensityMatrix,
    ancilla: str,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
) -> tuple[float, ProjectiveBasis]:
    """Best single shared basis for the sum of per-subsystem residual coherences.

    One measurement of the ancilla serves every remaining subsystem at once:
    the objective is sum over outcomes of P_i times the sum over non-ancilla
    qubits of the residual marginal's relative-entropy coherence.  Its
    maximum lower-bounds the joint rate c_cop(rho, ancilla).
    """
    rho.position(ancilla)
    targets = tuple(name for name in rho.labels if name != ancilla)
    if len(targets) < 2:
        raise InvalidPartition("need at least two non-ancilla subsystems")
    parts = [_Objective(rho, ancilla, (name,)) for name in targets]

    def evaluate(thetas, phis):
        total = parts[0](thetas, phis)
        for part in parts[1:]:
            total = total + part(thetas, phis)
        return total

    report = _optimize(evaluate, cfg)
    return report.value, report.optimal_basis


def multipartite_inequality_check(
    rho: DensityMatrix,
    ancilla: str,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
    schmidt_form: bool | None = None,
) -> InequalityReport:
    """Compare the joint rate against the sum of single-target rates.

    schmidt_form asserts the two-branch precondition; None (default) detects
    it structurally.  The slack is reported either way, but only a state
    satisfying the precondition is guaranteed slack >= -cfg.tolerance.
    """
    rho.position(ancilla)
    targets = tuple(name for name in rho.labels if name != ancilla)
    if not targets:
        raise InvalidPartition("state has no non-ancilla subsystems")
    pure = rho.purity() >= 1.0 - 1e-9
    warning = None
    if schmidt_form is None:
        precondition_ok = schmidt_form_eligible(rho, ancilla)
    elif schmidt_form and not pure:
        precondition_ok = False
        warning = ("PreconditionViolation: schmidt_form asserted on a mixed state "
                   f"(purity {rho.purity():.6f}); inequality not asserted")
    else:
        precondition_ok = bool(schmidt_form)
    lhs = c_cop(rho, ancilla, targets, cfg)
    rhs_terms = tuple((name, c_cop(rho, ancilla, (name,), cfg)) for name in targets)
    slack = lhs.value - sum(report.value for _, report in rhs_terms)
    return InequalityReport(lhs=lhs, rhs_terms=rhs_terms, slack=slack,
                            precondition_ok=precondition_ok, warning=warning)
