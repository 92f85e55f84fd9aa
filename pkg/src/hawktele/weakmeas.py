"""Pre- and post-weak measurements applied as selective (kept-branch) channels.

Only the kept elements ``m0`` and ``M0`` are ever applied to states; the
discarded branches exist as matrices for completeness checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qla import DensityMatrix, StateVector, apply_local

OPERATOR_NORM_ATOL = 1e-12


@dataclass(frozen=True)
class MeasurementStrength:
    """Strength in [0, 1] with its complement kept explicitly.

    Optimal post-measurement strengths are naturally expressed through the
    complement, so building from it avoids a lossy ``1 - (1 - x)`` round trip.
    """

    value: float
    complement: float

    def __post_init__(self):
        for name in ("value", "complement"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0) or math.isnan(v):
                raise ValueError(f"measurement strength {name} must lie in [0, 1], got {v}")

    @classmethod
    def of(cls, value: float) -> "MeasurementStrength":
        value = float(value)
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"measurement strength must lie in [0, 1], got {value}")
        return cls(value, 1.0 - value)

    @classmethod
    def from_complement(cls, complement: float) -> "MeasurementStrength":
        complement = float(complement)
        if not (0.0 <= complement <= 1.0):
            raise ValueError(f"strength complement must lie in [0, 1], got {complement}")
        return cls(1.0 - complement, complement)


def as_strength(x) -> MeasurementStrength:
    return x if isinstance(x, MeasurementStrength) else MeasurementStrength.of(x)


def pre_weak_operator(p) -> np.ndarray:
    """Kept element m0 = diag(sqrt(1-p), 1)."""
    s = as_strength(p)
    return np.diag([math.sqrt(s.complement), 1.0]).astype(complex)


def pre_weak_failure(p) -> np.ndarray:
    """Discarded element m1 = diag(sqrt(p), 0)."""
    s = as_strength(p)
    return np.diag([math.sqrt(s.value), 0.0]).astype(complex)


def post_weak_operator(q) -> np.ndarray:
    """Kept reversal element M0 = diag(1, sqrt(1-q))."""
    s = as_strength(q)
    return np.diag([1.0, math.sqrt(s.complement)]).astype(complex)


def post_weak_failure(q) -> np.ndarray:
    """Discarded reversal element M1 = diag(0, sqrt(q))."""
    s = as_strength(q)
    return np.diag([0.0, math.sqrt(s.value)]).astype(complex)


def _check_element(op: np.ndarray) -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"measurement element must be 2x2, got {op.shape}")
    if np.linalg.norm(op, 2) > 1.0 + OPERATOR_NORM_ATOL:
        raise ValueError("operator norm exceeds 1: not a valid measurement element")
    return op


def apply_selective(op, mode_label: str, s: StateVector) -> tuple[StateVector, float]:
    """Apply a kept measurement element to one mode.

    Returns the unnormalized post-measurement state and the probability of
    the kept branch relative to the input weight.
    """
    op = _check_element(op)
    if s.norm_weight == 0.0:
        raise ValueError("cannot measure the zero vector")
    out = apply_local(op, (mode_label,), s)
    return out, out.norm_weight / s.norm_weight


def apply_selective_density(op, rho: DensityMatrix) -> tuple[DensityMatrix, float]:
    """Single-qubit selective channel ``rho -> op rho op^dagger`` (unnormalized)."""
    op = _check_element(op)
    if rho.n_modes != 1:
        raise ValueError("apply_selective_density acts on single-mode operators")
    out = DensityMatrix(rho.mode_labels, op @ rho.entries @ op.conj().T)
    return out, out.trace_weight / rho.trace_weight
