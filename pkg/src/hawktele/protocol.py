"""Weak-measurement-assisted teleportation through the Hawking channel.

Two independent routes compute everything here:

* :func:`simulate_circuit` pushes state vectors through the full circuit
  (EPR pair, pre-weak measurement, Kruskal embedding, post-weak measurement
  on region I, Bell measurement with Pauli corrections, trace over region II).
* The ``*_closed`` functions evaluate the analytic expressions directly.

Post-measurement strengths are handled through their complement
``q_bar = 1 - q`` because both optimal policies are defined in terms of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.integrate import quad

from .horizon import HawkingMode, as_mode, kruskal_embed
from .qla import (
    PAULI_I,
    PAULI_X,
    PAULI_Z,
    DensityMatrix,
    StateVector,
    apply_local,
    concurrence_wootters,
    fidelity_pure,
    ket,
    partial_trace,
    tensor_product,
)
from .weakmeas import (
    MeasurementStrength,
    apply_selective,
    as_strength,
    post_weak_operator,
    pre_weak_operator,
)

TYPE1 = "type1"
TYPE2 = "type2"
OPTIMAL_POLICIES = (TYPE1, TYPE2)

QPolicy = Union[str, float]

BELL_STATES = {
    "Phi+": np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
    "Phi-": np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2),
    "Psi+": np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2),
    "Psi-": np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2),
}
CORRECTIONS = {
    "Phi+": PAULI_I,
    "Phi-": PAULI_Z,
    "Psi+": PAULI_X,
    "Psi-": PAULI_Z @ PAULI_X,
}


class DegenerateProtocolError(ValueError):
    """The kept-branch probability vanishes, so no output state exists."""


@dataclass(frozen=True)
class InputState:
    """Qubit ``cos(theta/2)|0> + sin(theta/2) e^{i delta}|1>`` held by Alice."""

    theta: float
    delta: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not math.isfinite(self.delta):
            raise ValueError("delta must be finite")

    @property
    def alpha(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def beta(self) -> complex:
        return math.sin(self.theta / 2) * complex(math.cos(self.delta), math.sin(self.delta))

    def ket(self, label: str = "in") -> StateVector:
        return ket((label,), [self.alpha, self.beta])


@dataclass(frozen=True)
class ProtocolConfig:
    """Pre-measurement strength, post-measurement policy and Hawking mode.

    ``q_policy`` is ``"type1"``, ``"type2"`` or a number giving ``q`` directly.
    Floats passed for ``p`` and ``mode`` are promoted to
    :class:`MeasurementStrength` and :class:`HawkingMode`.
    """

    p: MeasurementStrength
    mode: HawkingMode
    q_policy: QPolicy = TYPE1
    q: MeasurementStrength = field(init=False)

    def __post_init__(self):
        p = as_strength(self.p)
        mode = as_mode(self.mode)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mode", mode)
        policy = self.q_policy
        if isinstance(policy, str):
            if policy not in OPTIMAL_POLICIES:
                raise ValueError(f"unknown q policy {policy!r}")
            if p.complement == 0.0:
                raise DegenerateProtocolError(
                    f"p = 1 leaves nothing to reverse under the {policy} policy"
                )
            qbar = q_bar_type1(p, mode) if policy == TYPE1 else q_bar_type2(p, mode)
            q = MeasurementStrength.from_complement(qbar)
        else:
            q = as_strength(policy)
        object.__setattr__(self, "q", q)
        if self.normalization == 0.0:
            raise DegenerateProtocolError("p = q = 1: both weak measurements always fail")

    @classmethod
    def from_values(cls, p: float, t: float, q_policy: QPolicy = TYPE1) -> "ProtocolConfig":
        return cls(MeasurementStrength.of(p), HawkingMode.from_ratio(t), q_policy)

    @property
    def normalization(self) -> float:
        """N = p_bar zeta^2 + q_bar + p_bar q_bar eta^2."""
        return _normalization(self.p.complement, self.q.complement, self.mode)


def _normalization(pbar: float, qbar: float, mode: HawkingMode) -> float:
    return pbar * mode.zeta2 + qbar + pbar * qbar * mode.eta2


# ---------------------------------------------------------------------------
# closed forms


def closed_form_output(state: InputState, config: ProtocolConfig) -> DensityMatrix:
    """Bob's corrected region-I state averaged over the four Bell outcomes."""
    pbar, qbar = config.p.complement, config.q.complement
    z, z2, e2 = config.mode.zeta, config.mode.zeta2, config.mode.eta2
    a, b = state.alpha, state.beta
    a2, b2 = a * a, abs(b) ** 2
    n = config.normalization
    off = 2 * a * b.conjugate() * z * math.sqrt(pbar * qbar)
    m = np.array(
        [
            [a2 * pbar * z2 + a2 * qbar + b2 * e2 * pbar * qbar, off],
            [off.conjugate(), b2 * pbar * z2 + b2 * qbar + a2 * e2 * pbar * qbar],
        ],
        dtype=complex,
    )
    return DensityMatrix(("I",), m / n)


def fidelity_closed(state: InputState, config: ProtocolConfig) -> float:
    pbar, qbar = config.p.complement, config.q.complement
    z, z2, e2 = config.mode.zeta, config.mode.zeta2, config.mode.eta2
    a2, b2 = state.alpha**2, abs(state.beta) ** 2
    num = (
        (a2 * a2 + b2 * b2) * (pbar * z2 + qbar)
        + 2 * a2 * b2 * pbar * qbar * e2
        + 4 * a2 * b2 * math.sqrt(pbar * qbar) * z
    )
    return num / config.normalization


def average_fidelity_at(p, q_bar: float, mode) -> float:
    """Average fidelity over theta as a function of the post-strength complement."""
    pbar = as_strength(p).complement
    mode = as_mode(mode)
    z, z2, e2 = mode.zeta, mode.zeta2, mode.eta2
    num = 3 * (pbar * z2 + q_bar) + pbar * q_bar * e2 + 2 * math.sqrt(pbar * q_bar) * z
    return num / (4 * _normalization(pbar, q_bar, mode))


def average_infidelity_at(p, q_bar: float, mode) -> float:
    """``1 - average_fidelity_at``, written without cancellation.

    Equal to ((sqrt(p_bar) zeta - sqrt(q_bar))^2 + 3 p_bar eta^2 q_bar) / (4N).
    """
    pbar = as_strength(p).complement
    mode = as_mode(mode)
    gap = math.sqrt(pbar) * mode.zeta - math.sqrt(q_bar)
    return (gap * gap + 3 * pbar * mode.eta2 * q_bar) / (4 * _normalization(pbar, q_bar, mode))


def average_fidelity(config: ProtocolConfig) -> float:
    return average_fidelity_at(config.p, config.q.complement, config.mode)


def average_fidelity_numeric(config: ProtocolConfig, delta: float = 0.0) -> float:
    """(1/pi) * integral of the single-state fidelity over theta, by quadrature."""
    val, _ = quad(
        lambda th: fidelity_closed(InputState(th, delta), config),
        0.0,
        math.pi,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return val / math.pi


def success_probability(config: ProtocolConfig) -> float:
    """Probability that both weak measurements land on their kept branch: N/2."""
    return config.normalization / 2


def _check_reversible(p) -> MeasurementStrength:
    p = as_strength(p)
    if p.complement == 0.0:
        raise DegenerateProtocolError("optimal post-measurement needs p < 1")
    return p


def q_bar_type1(p, mode) -> float:
    """Complement of the type-1 optimum: p_bar * zeta^2."""
    p = _check_reversible(p)
    return p.complement * as_mode(mode).zeta2


def q_type1(p, mode) -> float:
    return 1.0 - q_bar_type1(p, mode)


def success_prob_type1(p, mode) -> float:
    p = _check_reversible(p)
    mode = as_mode(mode)
    pbar = p.complement
    return pbar * mode.zeta2 / 2 * (2 + pbar * mode.eta2)


def average_fidelity_type1(p, mode) -> float:
    pbar = _check_reversible(p).complement
    e2 = as_mode(mode).eta2
    return (8 + pbar * e2) / (8 + 4 * pbar * e2)


def q_bar_type2(p, mode) -> float:
    """Complement of the type-2 optimum, the stationary point of the average fidelity."""
    p = _check_reversible(p)
    mode = as_mode(mode)
    r2 = p.complement * mode.eta2
    root = math.sqrt(r2 * r2 + r2 + 1) - r2
    return p.complement * mode.zeta2 * root * root / (1 + r2) ** 2


def q_type2(p, mode) -> float:
    return 1.0 - q_bar_type2(p, mode)


def golden_section_min(f, a: float, b: float, tol: float = 1e-10, max_iter: int = 200) -> float:
    """Minimize a unimodal ``f`` on ``[a, b]``; returns the abscissa."""
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    candidates = [(f(a), a), (fc, c), (fd, d), (f(b), b)]
    return min(candidates, key=lambda pair: pair[0])[1]


def optimize_q_bar_numeric(p, mode, grid_step: float = 1e-3, tol: float = 1e-10) -> float:
    """Numerically maximize the average fidelity over q_bar in (0, 1].

    A coarse grid picks the best cell (first one on ties, i.e. the smallest
    q_bar), then golden-section refines inside the neighbouring cells.
    """
    p = _check_reversible(p)
    mode = as_mode(mode)

    def loss(qb: float) -> float:
        return average_infidelity_at(p, qb, mode)

    n = int(round(1.0 / grid_step))
    grid = np.arange(1, n + 1) * grid_step
    values = np.array([loss(qb) for qb in grid])
    k = int(np.argmin(values))
    lo = max(0.0, grid[k] - grid_step)
    hi = min(1.0, grid[k] + grid_step)
    return golden_section_min(loss, lo, hi, tol=tol)


def optimize_q_numeric(p, mode, **kwargs) -> float:
    return 1.0 - optimize_q_bar_numeric(p, mode, **kwargs)


def reduced_state_AI(config: ProtocolConfig) -> DensityMatrix:
    """Alice-Bob(region I) state after both weak measurements, before Bell measurement."""
    pbar, qbar = config.p.complement, config.q.complement
    z, z2, e2 = config.mode.zeta, config.mode.zeta2, config.mode.eta2
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = pbar * z2
    m[1, 1] = pbar * qbar * e2
    m[3, 3] = qbar
    m[0, 3] = m[3, 0] = math.sqrt(pbar * qbar) * z
    return DensityMatrix(("A", "I"), m / config.normalization)


def concurrence_closed(config: ProtocolConfig) -> float:
    pbar, qbar = config.p.complement, config.q.complement
    return 2 * math.sqrt(pbar * qbar) * config.mode.zeta / config.normalization


def concurrence_type1(p, mode) -> float:
    pbar = _check_reversible(p).complement
    return 2 / (2 + pbar * as_mode(mode).eta2)


# ---------------------------------------------------------------------------
# circuit oracle


@dataclass(frozen=True)
class BellOutcome:
    label: str
    state: DensityMatrix
    weight: float


@dataclass(frozen=True)
class ProtocolOutcome:
    rho_out: DensityMatrix
    fidelity: float
    success_probability: float
    concurrence_AI: float
    per_bell_outcome: tuple[BellOutcome, ...]
    rho_AI: DensityMatrix
    stage_probabilities: tuple[float, float]


def prepare_shared_state(state: InputState, config: ProtocolConfig) -> tuple[StateVector, tuple[float, float]]:
    """Circuit up to (not including) the Bell measurement.

    Returns the unnormalized state over ``("in", "A", "I", "II")`` together
    with the kept-branch probabilities of the pre- and post-measurement.
    """
    epr = ket(("A", "B"), np.array([1, 0, 0, 1]) / math.sqrt(2))
    psi = tensor_product(state.ket("in"), epr)
    psi, p_pre = apply_selective(pre_weak_operator(config.p), "B", psi)
    psi = kruskal_embed(psi, config.mode, "B", ("I", "II"))
    psi, p_post = apply_selective(post_weak_operator(config.q), "I", psi)
    return psi, (p_pre, p_post)


def simulate_circuit(state: InputState, config: ProtocolConfig) -> ProtocolOutcome:
    """Brute-force state-vector run of the whole protocol."""
    psi, stages = prepare_shared_state(state, config)
    total = psi.norm_weight
    if total == 0.0:
        raise DegenerateProtocolError("kept-branch probability is zero")

    rho_ai = partial_trace(psi.density_matrix(), ("A", "I")).normalized()

    outcomes = []
    rho_out = None
    for label, bell in BELL_STATES.items():
        branch = apply_local(np.outer(bell, bell.conj()), ("in", "A"), psi)
        branch = apply_local(CORRECTIONS[label], ("I",), branch)
        bob = partial_trace(branch.density_matrix(), ("I",))
        weight = bob.trace_weight / total
        outcomes.append(BellOutcome(label, bob.normalized(), weight))
        part = bob.scaled(1.0 / total)
        rho_out = part if rho_out is None else rho_out + part

    return ProtocolOutcome(
        rho_out=rho_out,
        fidelity=fidelity_pure(state.ket("I"), rho_out),
        success_probability=stages[0] * stages[1],
        concurrence_AI=concurrence_wootters(rho_ai),
        per_bell_outcome=tuple(outcomes),
        rho_AI=rho_ai,
        stage_probabilities=stages,
    )
