"""Multipartite correlation measures for qubit states.

Covers the two-qubit pair measures (concurrence, entanglement of
formation, mutual information), the squared-entanglement-of-formation
deficit delta_sef and the three-tangle for pure tripartite states, and
tripartite discord d3 built from measured conditional entropies.

Conditional-entropy minimizations search rank-1 product projective
measurements only (two angles per measured qubit), with the same
grid-then-pattern-search strategy as the distillation optimizer and the
same deterministic smallest-angles tie-break.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .coherence import binary_entropy, von_neumann_entropy, xlog2
from .densmat import DensityMatrix, partial_trace
from .errors import (
    DimensionError,
    DomainError,
    InvalidPartition,
    OrderingUnavailable,
    PurityRequired,
)

_PURITY_TOL = 1e-9
_TIE_RTOL = 4e-15
_STEP_FLOOR = 1e-8
_CHUNK = 8192
_NEGATIVE_CLIP = 1e-6

_SIGMA_YY = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
])


@dataclass(frozen=True)
class DiscordConfig:
    """Search settings for the measured-conditional-entropy minimizations.

    measurement_grid is the (n_theta, n_phi) coarse grid per measured
    qubit; a two-qubit measurement takes the product of two such grids.
    """

    measurement_grid: tuple[int, int] = (19, 19)
    refine_iterations: int = 40

    def __post_init__(self):
        n_theta, n_phi = self.measurement_grid
        if n_theta < 1 or n_phi < 1:
            raise DomainError(f"measurement grid {self.measurement_grid} must be positive")
        if self.refine_iterations < 0:
            raise DomainError("refine_iterations must be nonnegative")


DEFAULT_DISCORD_CONFIG = DiscordConfig()


@dataclass(frozen=True)
class CorrelationRow:
    """Per-state bundle of the three headline measures and pair intermediates.

    Pair dictionaries are keyed by ordered label pairs following the
    state's label order.
    """

    delta_sef: float
    d3: float
    three_tangle: float
    concurrences: dict[tuple[str, str], float]
    ef_values: dict[tuple[str, str], float]
    mutual_informations: dict[tuple[str, str], float]


# ---------------------------------------------------------------------------
# Two-qubit measures


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.dim != 4:
        raise DimensionError(f"need a 2-qubit density, got dimension {rho.dim}")


def concurrence(rho: DensityMatrix) -> float:
    """Spin-flip concurrence of a two-qubit density.

    C = max(0, l1 - l2 - l3 - l4) with l the descending square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    _require_two_qubits(rho)
    m = rho.matrix
    flipped = _SIGMA_YY @ m.conj() @ _SIGMA_YY
    eigs = np.linalg.eigvals(m @ flipped).real
    roots = np.sqrt(np.clip(eigs, 0.0, None))
    roots[::-1].sort()
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def entanglement_of_formation(rho: DensityMatrix) -> float:
    """Closed-form two-qubit entanglement of formation, in bits."""
    c = concurrence(rho)
    return binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def mutual_information(rho: DensityMatrix, part1, part2) -> float:
    """S(rho_1) + S(rho_2) - S(rho) for a bipartition of rho's subsystems."""
    part1 = tuple(part1)
    part2 = tuple(part2)
    if not part1 or not part2:
        raise InvalidPartition("both parts must be nonempty")
    if set(part1) & set(part2):
        raise InvalidPartition(f"parts overlap: {set(part1) & set(part2)}")
    if set(part1) | set(part2) != set(rho.labels):
        raise InvalidPartition("parts must cover all subsystems; reduce the state first")
    s1 = von_neumann_entropy(partial_trace(rho, part1))
    s2 = von_neumann_entropy(partial_trace(rho, part2))
    return s1 + s2 - von_neumann_entropy(rho)


# ---------------------------------------------------------------------------
# Pure tripartite measures


def _require_pure_tripartite(psi: DensityMatrix) -> None:
    if psi.n_qubits != 3:
        raise DimensionError(f"need a 3-qubit state, got {psi.n_qubits} qubits")
    purity = psi.purity()
    if purity < 1.0 - _PURITY_TOL:
        raise PurityRequired(f"purity {purity:.9f} below 1 - {_PURITY_TOL}")


def delta_sef(psi: DensityMatrix, apex: str | None = None) -> float:
    """S^2 of the apex marginal minus the squared pair E_f values.

    Uses the pure-state identity equating the apex-versus-rest
    entanglement of formation with the apex marginal entropy, hence the
    purity requirement.  apex defaults to the first label.
    """
    _require_pure_tripartite(psi)
    apex = psi.labels[0] if apex is None else apex
    others = [name for name in psi.labels if name != apex]
    if len(others) != 2:
        raise InvalidPartition(f"apex {apex!r} not one of {psi.labels}")
    s_apex = von_neumann_entropy(partial_trace(psi, (apex,)))
    total = s_apex * s_apex
    for other in others:
        ef = entanglement_of_formation(partial_trace(psi, (apex, other)))
        total -= ef * ef
    return total


def three_tangle(psi: DensityMatrix, apex: str | None = None) -> float:
    """Residual tangle 4 det(rho_apex) - C^2(apex,b) - C^2(apex,c)."""
    _require_pure_tripartite(psi)
    apex = psi.labels[0] if apex is None else apex
    others = [name for name in psi.labels if name != apex]
    if len(others) != 2:
        raise InvalidPartition(f"apex {apex!r} not one of {psi.labels}")
    marginal = partial_trace(psi, (apex,)).matrix
    total = 4.0 * float(np.linalg.det(marginal).real)
    for other in others:
        c = concurrence(partial_trace(psi, (apex, other)))
        total -= c * c
    return total


# ---------------------------------------------------------------------------
# Measured conditional entropy


def _basis_vectors(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Outcome vectors of the (theta, phi) basis, shape (..., outcome, component)."""
    c = np.cos(thetas)
    s = np.sin(thetas)
    e = np.exp(1j * phis)
    out = np.empty(thetas.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = s * e
    out[..., 1, 0] = s
    out[..., 1, 1] = -c * e
    return out


class _ConditionalEntropy:
    """Average post-measurement entropy of the target, as a function of angles.

    Callable on an (..., 2 * n_measured) angle array laid out as
    (theta_1, phi_1[, theta_2, phi_2]).
    """

    def __init__(self, rho: DensityMatrix, target: tuple[str, ...], measured: tuple[str, ...]):
        reduced = partial_trace(rho, target + measured)
        n = reduced.n_qubits
        positions = [reduced.position(name) for name in measured]
        tensor = reduced.matrix.reshape((2,) * (2 * n))
        source = positions + [n + p for p in positions]
        tensor = np.moveaxis(tensor, source, range(len(source)))
        self.n_measured = len(measured)
        self.dim = 2 ** (n - self.n_measured)
        # blocks[j1, (j2,) k1, (k2,) a, b]: measured row indices, measured
        # column indices, then the target block.
        shape = (2,) * (2 * self.n_measured) + (self.dim, self.dim)
        self.blocks = np.ascontiguousarray(tensor.reshape(shape))

    def _outcome_blocks(self, angles: np.ndarray) -> np.ndarray:
        u = _basis_vectors(angles[:, 0], angles[:, 1])
        if self.n_measured == 1:
            return np.einsum("csj,csk,jkab->csab", u.conj(), u, self.blocks, optimize=True)
        v = _basis_vectors(angles[:, 2], angles[:, 3])
        w = np.einsum("csj,csk,ctm,ctn,jmknab->cstab",
                      u.conj(), u, v.conj(), v, self.blocks, optimize=True)
        return w.reshape(w.shape[0], 4, self.dim, self.dim)

    def __call__(self, angles: np.ndarray) -> np.ndarray:
        angles = np.asarray(angles, dtype=float)
        lead = angles.shape[:-1]
        flat = angles.reshape(-1, angles.shape[-1])
        values = np.empty(flat.shape[0])
        for start in range(0, flat.shape[0], _CHUNK):
            stop = min(start + _CHUNK, flat.shape[0])
            w = self._outcome_blocks(flat[start:stop])
            prob = np.einsum("...ii->...", w).real
            if self.dim == 2:
                a = w[..., 0, 0].real
                b = w[..., 1, 1].real
                off = w[..., 0, 1]
                det = a * b - (off.real * off.real + off.imag * off.imag)
                disc = np.sqrt(np.maximum(prob * prob - 4.0 * det, 0.0))
                eigs = np.stack([(prob - disc) / 2.0, (prob + disc) / 2.0], axis=-1)
            else:
                eigs = np.linalg.eigvalsh(w)
            # sum_outcomes p S(W/p) = sum_outcomes [p log2 p - sum_i lam_i log2 lam_i]
            values[start:stop] = (xlog2(prob) - xlog2(eigs).sum(axis=-1)).sum(axis=-1)
        return values.reshape(lead)


def _angle_grid(cfg: DiscordConfig, n_measured: int) -> tuple[np.ndarray, list[float]]:
    n_theta, n_phi = cfg.measurement_grid
    thetas = np.linspace(0.0, math.pi / 2.0, n_theta) if n_theta > 1 else np.array([0.0])
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    axes = [thetas, phis] * n_measured
    mesh = np.meshgrid(*axes, indexing="ij")
    combos = np.stack([g.ravel() for g in mesh], axis=-1)
    theta_step = float(thetas[1] - thetas[0]) if n_theta > 1 else math.pi / 4.0
    phi_step = 2.0 * math.pi / n_phi
    steps = [theta_step, phi_step] * n_measured
    return combos, steps


def _argmin_first(values: np.ndarray) -> int:
    vmin = float(values.min())
    mask = values <= vmin + _TIE_RTOL * max(1.0, abs(vmin))
    return int(np.argmax(mask))


def _refine_min(evaluate, angles: np.ndarray, value: float, steps: list[float],
                iterations: int) -> float:
    two_pi = 2.0 * math.pi
    steps = list(steps)
    angles = angles.copy()
    for _ in range(iterations):
        if max(steps) < _STEP_FLOOR:
            break
        candidates = []
        for axis, step in enumerate(steps):
            for sign in (1.0, -1.0):
                cand = angles.copy()
                cand[axis] += sign * step
                if axis % 2 == 0:
                    cand[axis] = min(max(cand[axis], 0.0), math.pi / 2.0)
                else:
                    cand[axis] %= two_pi
                candidates.append(cand)
        batch = np.stack(candidates)
        cand_values = evaluate(batch)
        best = _argmin_first(cand_values)
        if cand_values[best] < value - 1e-15 * max(1.0, abs(value)):
            angles = batch[best]
            value = float(cand_values[best])
        else:
            steps = [s * 0.5 for s in steps]
    return value


def measured_conditional_entropy(
    rho: DensityMatrix,
    target,
    measured,
    cfg: DiscordConfig = DEFAULT_DISCORD_CONFIG,
) -> float:
    """Minimum average entropy of the target after measuring the named qubits.

    The minimum runs over rank-1 product projective measurements of one or
    two qubits; subsystems outside target and measured are traced out.
    """
    target = (target,) if isinstance(target, str) else tuple(target)
    measured = (measured,) if isinstance(measured, str) else tuple(measured)
    if not target:
        raise InvalidPartition("target must be nonempty")
    if len(measured) not in (1, 2):
        raise InvalidPartition(f"measured must contain 1 or 2 qubits, got {len(measured)}")
    if set(target) & set(measured):
        raise InvalidPartition(f"target and measured overlap: {set(target) & set(measured)}")
    objective = _ConditionalEntropy(rho, target, measured)
    combos, steps = _angle_grid(cfg, len(measured))
    values = objective(combos)
    idx = _argmin_first(values)
    return _refine_min(objective, combos[idx], float(values[idx]), steps,
                       cfg.refine_iterations)


# ---------------------------------------------------------------------------
# Tripartite discord


def _pair_discord(rho_pair: DensityMatrix, cfg: DiscordConfig) -> float:
    """Symmetrized two-qubit discord: I minus the better one-sided classical part."""
    x, y = rho_pair.labels
    info = mutual_information(rho_pair, (x,), (y,))
    s_x = von_neumann_entropy(partial_trace(rho_pair, (x,)))
    s_y = von_neumann_entropy(partial_trace(rho_pair, (y,)))
    classical = max(
        s_x - measured_conditional_entropy(rho_pair, (x,), (y,), cfg),
        s_y - measured_conditional_entropy(rho_pair, (y,), (x,), cfg),
    )
    return info - classical


def tripartite_discord(rho: DensityMatrix, cfg: DiscordConfig = DEFAULT_DISCORD_CONFIG) -> float:
    """Genuine tripartite discord: total discord minus the best pairwise part.

    Total correlation T = sum of marginal entropies - S(rho); the classical
    part J maximizes S_i - S(i|j) + S_k - S(k|ij) over the six orderings;
    D = T - J.  The bipartite part D2 is the largest symmetrized pair
    discord, so a Bell pair in tensor with a pure ancilla scores 0.
    Returns D - D2, with values in [-1e-6, 0) clipped to 0.
    """
    if rho.n_qubits != 3:
        raise DimensionError(f"need a 3-qubit density, got {rho.n_qubits} qubits")
    labels = rho.labels
    marginal_entropy = {
        name: von_neumann_entropy(partial_trace(rho, (name,))) for name in labels
    }
    total = sum(marginal_entropy.values()) - von_neumann_entropy(rho)

    pair_reduced = {
        (x, y): partial_trace(rho, (x, y))
        for x, y in itertools.combinations(labels, 2)
    }
    cond_single = {}
    for (x, y), reduced in pair_reduced.items():
        cond_single[(x, y)] = measured_conditional_entropy(reduced, (x,), (y,), cfg)
        cond_single[(y, x)] = measured_conditional_entropy(reduced, (y,), (x,), cfg)
    cond_pair = {
        name: measured_conditional_entropy(
            rho, (name,), tuple(other for other in labels if other != name), cfg
        )
        for name in labels
    }

    classical = max(
        marginal_entropy[i] - cond_single[(i, j)] + marginal_entropy[k] - cond_pair[k]
        for i, j, k in itertools.permutations(labels)
    )
    discord_total = total - classical

    discord_pair = max(_pair_discord(reduced, cfg) for reduced in pair_reduced.values())
    d3 = discord_total - discord_pair
    if -_NEGATIVE_CLIP <= d3 < 0.0:
        return 0.0
    return d3


def tripartite_discord_pure_shortcut(
    psi: DensityMatrix, cfg: DiscordConfig = DEFAULT_DISCORD_CONFIG
) -> float:
    """Marginal-entropy shortcut for the tripartite discord of pure states.

    For a permutation (i, j, k) with I(rho_ij) >= I(rho_ik) >= I(rho_jk)
    the discord reduces to S(rho_k).  The witnessing permutation is found
    internally (first match in label order); cfg is accepted for signature
    parity with the full computation and unused.
    """
    del cfg
    if psi.n_qubits != 3:
        raise DimensionError(f"need a 3-qubit state, got {psi.n_qubits} qubits")
    purity = psi.purity()
    if purity < 1.0 - _PURITY_TOL:
        raise PurityRequired(f"purity {purity:.9f} below 1 - {_PURITY_TOL}")
    info = {}
    for x, y in itertools.combinations(psi.labels, 2):
        reduced = partial_trace(psi, (x, y))
        info[(x, y)] = info[(y, x)] = mutual_information(reduced, (x,), (y,))
    slack = 1e-9
    for i, j, k in itertools.permutations(psi.labels):
        if info[(i, j)] >= info[(i, k)] - slack and info[(i, k)] >= info[(j, k)] - slack:
            return von_neumann_entropy(partial_trace(psi, (k,)))
    raise OrderingUnavailable("no mutual-information ordering witnesses the shortcut")


def correlation_row(psi: DensityMatrix, cfg: DiscordConfig = DEFAULT_DISCORD_CONFIG) -> CorrelationRow:
    """All pair intermediates plus the three headline measures for a pure state.

    d3 uses the pure-state shortcut, falling back to the full optimization
    if no mutual-information ordering witnesses it.
    """
    _require_pure_tripartite(psi)
    concurrences = {}
    ef_values = {}
    infos = {}
    for x, y in itertools.combinations(psi.labels, 2):
        reduced = partial_trace(psi, (x, y))
        concurrences[(x, y)] = concurrence(reduced)
        ef_values[(x, y)] = entanglement_of_formation(reduced)
        infos[(x, y)] = mutual_information(reduced, (x,), (y,))
    try:
        d3 = tripartite_discord_pure_shortcut(psi)
    except OrderingUnavailable:
        d3 = tripartite_discord(psi, cfg)
    return CorrelationRow(
        delta_sef=delta_sef(psi),
        d3=d3,
        three_tangle=three_tangle(psi),
        concurrences=concurrences,
        ef_values=ef_values,
        mutual_informations=infos,
    )
