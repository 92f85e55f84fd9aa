"""Weak-measurement-assisted teleportation of a fermionic qubit near a Schwarzschild horizon."""
from .horizon import HawkingMode, kruskal_embed, mode_coefficients, temperature_from_mass
from .protocol import (
    DegenerateProtocolError,
    InputState,
    ProtocolConfig,
    ProtocolOutcome,
    average_fidelity,
    average_fidelity_numeric,
    closed_form_output,
    concurrence_closed,
    fidelity_closed,
    optimize_q_numeric,
    q_type1,
    q_type2,
    reduced_state_AI,
    simulate_circuit,
    success_prob_type1,
    success_probability,
)
from .estimator import WeakMeasurementTeleporter

__all__ = [
    "DegenerateProtocolError",
    "HawkingMode",
    "InputState",
    "ProtocolConfig",
    "ProtocolOutcome",
    "WeakMeasurementTeleporter",
    "average_fidelity",
    "average_fidelity_numeric",
    "closed_form_output",
    "concurrence_closed",
    "fidelity_closed",
    "kruskal_embed",
    "mode_coefficients",
    "optimize_q_numeric",
    "q_type1",
    "q_type2",
    "reduced_state_AI",
    "simulate_circuit",
    "success_prob_type1",
    "success_probability",
    "temperature_from_mass",
]
