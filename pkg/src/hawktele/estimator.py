"""scikit-learn style front end.

``fit`` resolves the post-measurement strength for the chosen policy; the
prediction methods then evaluate the teleportation of each input qubit, one
row of ``(theta[, delta])`` per state. This lets the protocol sit inside
``GridSearchCV``-style parameter scans and pipelines.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .horizon import HawkingMode
from .protocol import (
    OPTIMAL_POLICIES,
    InputState,
    ProtocolConfig,
    average_fidelity,
    closed_form_output,
    concurrence_closed,
    fidelity_closed,
    simulate_circuit,
    success_probability,
)

METHODS = ("closed", "circuit")


def check_angles(X) -> np.ndarray:
    """Validate input qubit angles and return an ``(n, 2)`` array of (theta, delta).

    A single column is read as theta with delta = 0.
    """
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] == 1:
        X = np.hstack([X, np.zeros_like(X)])
    elif X.shape[1] != 2:
        raise ValueError(f"expected 1 or 2 columns (theta[, delta]), got {X.shape[1]}")
    theta = X[:, 0]
    if np.any(theta < 0) or np.any(theta > math.pi):
        raise ValueError("theta must lie in [0, pi]")
    return X


def check_strength(value, name: str) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


class WeakMeasurementTeleporter(BaseEstimator):
    """Teleport qubits through the Hawking channel with weak-measurement protection.

    Parameters
    ----------
    p : float
        Pre-measurement strength in [0, 1].
    temperature_ratio : float
        Hawking temperature over mode frequency, T / omega.
    q_policy : {"type1", "type2", "manual"}
        How the post-measurement strength is chosen.
    q : float or None
        Post-measurement strength, used only with ``q_policy="manual"``.
    method : {"closed", "circuit"}
        Evaluate with the analytic expressions or the state-vector circuit.

    Attributes
    ----------
    config_ : ProtocolConfig
    q_ : float
        Resolved post-measurement strength.
    average_fidelity_, success_probability_, concurrence_ : float
    """

    def __init__(self, p=0.0, temperature_ratio=0.0, q_policy="type2", q=None, method="closed"):
        self.p = p
        self.temperature_ratio = temperature_ratio
        self.q_policy = q_policy
        self.q = q
        self.method = method

    def fit(self, X=None, y=None):
        if X is not None:
            check_angles(X)
        p = check_strength(self.p, "p")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.q_policy == "manual":
            if self.q is None:
                raise ValueError("q must be given with q_policy='manual'")
            policy = check_strength(self.q, "q")
        elif self.q_policy in OPTIMAL_POLICIES:
            policy = self.q_policy
        else:
            raise ValueError(f"unknown q_policy {self.q_policy!r}")
        self.config_ = ProtocolConfig(p, HawkingMode.from_ratio(self.temperature_ratio), policy)
        self.q_ = self.config_.q.value
        self.average_fidelity_ = average_fidelity(self.config_)
        self.success_probability_ = success_probability(self.config_)
        self.concurrence_ = concurrence_closed(self.config_)
        return self

    def _states(self, X):
        check_is_fitted(self, "config_")
        return [InputState(th, de) for th, de in check_angles(X)]

    def predict(self, X) -> np.ndarray:
        """Teleportation fidelity for each input qubit."""
        states = self._states(X)
        if self.method == "circuit":
            return np.array([simulate_circuit(s, self.config_).fidelity for s in states])
        return np.array([fidelity_closed(s, self.config_) for s in states])

    def predict_state(self, X) -> np.ndarray:
        """Bob's output density matrices, shape ``(n, 2, 2)``."""
        states = self._states(X)
        if self.method == "circuit":
            mats = [simulate_circuit(s, self.config_).rho_out.entries for s in states]
        else:
            mats = [closed_form_output(s, self.config_).entries for s in states]
        return np.array(mats)

    def transform(self, X) -> np.ndarray:
        """Real features of the output state: rho_00, rho_11, Re rho_01, Im rho_01."""
        rho = self.predict_state(X)
        return np.column_stack([rho[:, 0, 0].real, rho[:, 1, 1].real, rho[:, 0, 1].real, rho[:, 0, 1].imag])

    def score(self, X, y=None) -> float:
        """Mean fidelity over the given input states."""
        return float(np.mean(self.predict(X)))
