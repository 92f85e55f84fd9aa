"""Hawking-channel coefficients and the Kruskal vacuum embedding of one Dirac mode."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .qla import ModeError, StateVector, apply_local

ZERO_TEMPERATURE_CUTOFF = 1e-6


def _check_ratio(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"temperature ratio must be finite and >= 0, got {t}")
    return t


def mode_coefficients(t: float) -> tuple[float, float]:
    """Return ``(zeta, eta)`` for the temperature ratio ``t = T / omega``.

    zeta**2 and eta**2 are the Fermi factors ``1/(exp(-1/t) + 1)`` and
    ``1/(exp(1/t) + 1)``; both are evaluated through the logistic function so
    that neither overflows for small ``t``.
    """
    t = _check_ratio(t)
    if t < ZERO_TEMPERATURE_CUTOFF:
        return 1.0, 0.0
    x = 1.0 / t
    return math.sqrt(expit(x)), math.sqrt(expit(-x))


def temperature_from_mass(mass: float) -> float:
    """Hawking temperature ``1 / (8 pi M)`` in Planck units."""
    mass = float(mass)
    if not mass > 0 or not math.isfinite(mass):
        raise ValueError(f"black-hole mass must be positive and finite, got {mass}")
    return 1.0 / (8.0 * math.pi * mass)


@dataclass(frozen=True)
class HawkingMode:
    """A single fermionic mode seen by an observer hovering near the horizon."""

    temperature_ratio: float
    zeta: float
    eta: float

    @classmethod
    def from_ratio(cls, t: float) -> "HawkingMode":
        zeta, eta = mode_coefficients(t)
        return cls(float(t), zeta, eta)

    @classmethod
    def from_mass(cls, mass: float, frequency: float) -> "HawkingMode":
        if not frequency > 0:
            raise ValueError("mode frequency must be positive")
        return cls.from_ratio(temperature_from_mass(mass) / frequency)

    @property
    def zeta2(self) -> float:
        return self.zeta * self.zeta

    @property
    def eta2(self) -> float:
        return self.eta * self.eta

    def isometry(self) -> np.ndarray:
        """4x2 map from the Kruskal mode onto (region I, region II)."""
        v = np.zeros((4, 2), dtype=complex)
        v[0b00, 0] = self.zeta
        v[0b11, 0] = self.eta
        v[0b10, 1] = 1.0
        return v


def as_mode(mode) -> HawkingMode:
    if isinstance(mode, HawkingMode):
        return mode
    return HawkingMode.from_ratio(mode)


def kruskal_embed(
    s: StateVector,
    mode,
    label: str = "B",
    out_labels: tuple[str, str] = ("I", "II"),
) -> StateVector:
    """Replace mode ``label`` by its region I / region II decomposition.

    |0>_B -> zeta|0>_I|0>_II + eta|1>_I|1>_II and |1>_B -> |1>_I|0>_II.
    """
    if label not in s.mode_labels:
        raise ModeError(f"state has no mode {label!r}: {s.mode_labels}")
    return apply_local(as_mode(mode).isometry(), (label,), s, new_labels=out_labels)
