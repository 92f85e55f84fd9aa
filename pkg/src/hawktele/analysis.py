"""Parameter sweeps behind the fidelity, probability and concurrence curves.

Rows are plain dicts keyed by column name so they can go straight to
:func:`write_csv` or into a ``pandas.DataFrame``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .horizon import HawkingMode
from .protocol import (
    OPTIMAL_POLICIES,
    TYPE1,
    TYPE2,
    ProtocolConfig,
    QPolicy,
    average_fidelity,
    concurrence_closed,
    success_probability,
)

PAPER = "paper"
CONSISTENT = "consistent"
BASELINES = (PAPER, CONSISTENT)

FIDELITY_COLUMNS = ("t", "p", "q", "F_av", "P", "C")
CONCURRENCE_COLUMNS = ("t", "p", "C1", "C2", "F1", "F2")
GRID_COLUMNS = ("p", "q", "C_imp", "F_imp")

BASELINE_NOTES = {
    PAPER: "F0 = (zeta+1)^2/4, the published no-measurement baseline; "
    "it differs from F_av(p=0,q=0) = (zeta^2+zeta+2)/4 by (1-zeta)/4",
    CONSISTENT: "F0 = F_av(p=0,q=0) = (zeta^2+zeta+2)/4, the average fidelity "
    "without weak measurements",
}


@dataclass(frozen=True)
class SweepSpec:
    t_min: float = 0.01
    t_max: float = 20.0
    t_steps: int = 200
    p_values: Sequence[float] = (0.0, 0.5, 0.8, 0.9)
    q_policy: QPolicy = TYPE1
    grid_resolution: int = 201
    baseline_convention: str = PAPER
    t_values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise ValueError("temperature bounds must be finite")
        if self.t_min < 0:
            raise ValueError(f"t_min must be >= 0, got {self.t_min}")
        if not self.t_max > self.t_min:
            raise ValueError("t_max must exceed t_min")
        if int(self.t_steps) != self.t_steps or self.t_steps < 2:
            raise ValueError("t_steps must be an integer >= 2")
        if not self.p_values:
            raise ValueError("p_values must not be empty")
        for p in self.p_values:
            if not (0.0 <= p < 1.0):
                raise ValueError(f"every p must lie in [0, 1), got {p}")
        if isinstance(self.q_policy, str) and self.q_policy not in OPTIMAL_POLICIES:
            raise ValueError(f"unknown q policy {self.q_policy!r}")
        if self.grid_resolution < 1:
            raise ValueError("grid_resolution must be positive")
        if self.baseline_convention not in BASELINES:
            raise ValueError(f"baseline_convention must be one of {BASELINES}")
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        object.__setattr__(
            self, "t_values", np.linspace(self.t_min, self.t_max, int(self.t_steps))
        )


@dataclass(frozen=True)
class ImprovementPoint:
    p: float
    q: float
    C_imp: float
    F_imp: float

    def as_row(self) -> dict:
        return {"p": self.p, "q": self.q, "C_imp": self.C_imp, "F_imp": self.F_imp}


def sweep_fidelity(spec: SweepSpec) -> list[dict]:
    """Average fidelity, success probability and concurrence, t outer and p inner."""
    rows = []
    for t in spec.t_values:
        mode = HawkingMode.from_ratio(t)
        for p in spec.p_values:
            cfg = ProtocolConfig(p, mode, spec.q_policy)
            rows.append(
                {
                    "t": float(t),
                    "p": p,
                    "q": cfg.q.value,
                    "F_av": average_fidelity(cfg),
                    "P": success_probability(cfg),
                    "C": concurrence_closed(cfg),
                }
            )
    return rows


def sweep_concurrence(spec: SweepSpec) -> list[dict]:
    """Concurrence (and average fidelity) under both optimal policies."""
    rows = []
    for t in spec.t_values:
        mode = HawkingMode.from_ratio(t)
        for p in spec.p_values:
            c1 = ProtocolConfig(p, mode, TYPE1)
            c2 = ProtocolConfig(p, mode, TYPE2)
            rows.append(
                {
                    "t": float(t),
                    "p": p,
                    "C1": concurrence_closed(c1),
                    "C2": concurrence_closed(c2),
                    "F1": average_fidelity(c1),
                    "F2": average_fidelity(c2),
                }
            )
    return rows


def baseline_fidelity(mode: HawkingMode, convention: str = PAPER) -> float:
    if convention == PAPER:
        return (mode.zeta + 1) ** 2 / 4
    if convention == CONSISTENT:
        return average_fidelity(ProtocolConfig(0.0, mode, 0.0))
    raise ValueError(f"baseline_convention must be one of {BASELINES}")


def grid_axis(resolution: int) -> np.ndarray:
    """``resolution`` evenly spaced strengths covering [0, 1)."""
    return np.arange(int(resolution)) / int(resolution)


def improvement_grid(spec: SweepSpec, t_fixed: float) -> list[ImprovementPoint]:
    """Concurrence and fidelity gains over a (p, q) grid at fixed temperature.

    Points are ordered p outer, q inner.
    """
    if not t_fixed >= 0:
        raise ValueError(f"t_fixed must be >= 0, got {t_fixed}")
    mode = HawkingMode.from_ratio(t_fixed)
    c0 = mode.zeta
    f0 = baseline_fidelity(mode, spec.baseline_convention)
    axis = grid_axis(spec.grid_resolution)
    points = []
    for p in axis:
        for q in axis:
            cfg = ProtocolConfig(float(p), mode, float(q))
            points.append(
                ImprovementPoint(
                    float(p),
                    float(q),
                    concurrence_closed(cfg) - c0,
                    average_fidelity(cfg) - f0,
                )
            )
    return points


def format_number(x) -> str:
    """Decimal notation, 12 significant digits, no exponent."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if x == 0.0:
        return "0"
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def write_csv(
    rows: Iterable[dict],
    path,
    columns: Sequence[str] | None = None,
    comments: Sequence[str] = (),
) -> None:
    """Write rows as UTF-8 CSV with LF line endings.

    ``comments`` are emitted first as ``# ...`` lines.
    """
    rows = list(rows)
    if columns is None:
        if not rows:
            raise ValueError("columns are required when there are no rows")
        columns = list(rows[0])
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            for line in comments:
                fh.write(f"# {line}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_number(row[c]) for c in columns])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc
