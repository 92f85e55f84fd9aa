"""Dense complex linear algebra over labeled two-level modes.

Basis ordering puts the leftmost mode label in the most significant bit, so a
state over modes ``("in", "A", "I", "II")`` stores the amplitude of
``|i j k l>`` at index ``8*i + 4*j + 2*k + l``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import mpmath
import numpy as np

HERMITIAN_ATOL = 1e-12
PSD_ATOL = 1e-10
NORM_ATOL = 1e-12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class ModeError(ValueError):
    """Raised for duplicate, missing or mismatched mode labels."""


def _check_labels(labels: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ModeError(f"duplicate mode label in {labels}")
    return labels


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """A (possibly unnormalized) pure state over labeled qubit modes.

    ``norm_weight`` is the squared norm of ``amplitudes``. Operations that
    apply measurement elements leave the vector unnormalized on purpose so
    the weight of the kept branch can be read off.
    """

    mode_labels: tuple[str, ...]
    amplitudes: np.ndarray
    norm_weight: float = field(init=False)

    def __post_init__(self):
        labels = _check_labels(self.mode_labels)
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size != 2 ** len(labels):
            raise ModeError(
                f"{amps.size} amplitudes do not match {len(labels)} modes"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "mode_labels", labels)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "norm_weight", float(np.vdot(amps, amps).real))

    @classmethod
    def basis(cls, labels: Sequence[str], bits: Sequence[int]) -> "StateVector":
        labels = tuple(labels)
        if len(bits) != len(labels):
            raise ModeError("one bit per mode is required")
        amps = np.zeros(2 ** len(labels), dtype=complex)
        amps[int("".join(str(int(b)) for b in bits) or "0", 2)] = 1.0
        return cls(labels, amps)

    @property
    def n_modes(self) -> int:
        return len(self.mode_labels)

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_weight - 1.0) <= NORM_ATOL

    def normalized(self) -> "StateVector":
        if self.norm_weight == 0.0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return StateVector(self.mode_labels, self.amplitudes / np.sqrt(self.norm_weight))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per mode."""
        return self.amplitudes.reshape((2,) * self.n_modes)

    def density_matrix(self) -> "DensityMatrix":
        """Unnormalized projector; its trace weight equals ``norm_weight``."""
        return DensityMatrix(self.mode_labels, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian positive semidefinite operator over labeled qubit modes.

    ``trace_weight`` keeps the trace before normalization. Validation can be
    skipped with ``check=False`` for intermediate objects built internally.
    """

    mode_labels: tuple[str, ...]
    entries: np.ndarray
    trace_weight: float = field(init=False)
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        labels = _check_labels(self.mode_labels)
        mat = _frozen(self.entries)
        dim = 2 ** len(labels)
        if mat.shape != (dim, dim):
            raise ModeError(f"matrix of shape {mat.shape} does not match {len(labels)} modes")
        if not np.all(np.isfinite(mat)):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "mode_labels", labels)
        object.__setattr__(self, "entries", mat)
        object.__setattr__(self, "trace_weight", float(np.trace(mat).real))
        if self.check:
            scale = max(1.0, float(np.max(np.abs(mat))))
            if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_ATOL * scale:
                raise ValueError("density matrix is not Hermitian")
            if np.linalg.eigvalsh(mat).min() < -PSD_ATOL * scale:
                raise ValueError("density matrix is not positive semidefinite")

    @property
    def n_modes(self) -> int:
        return len(self.mode_labels)

    @property
    def is_normalized(self) -> bool:
        return abs(self.trace_weight - 1.0) <= NORM_ATOL

    def normalized(self) -> "DensityMatrix":
        if self.trace_weight <= 0.0:
            raise ZeroDivisionError("cannot normalize a zero-trace operator")
        return DensityMatrix(self.mode_labels, self.entries / self.trace_weight, check=self.check)

    def __add__(self, other: "DensityMatrix") -> "DensityMatrix":
        if other.mode_labels != self.mode_labels:
            raise ModeError("cannot add operators over different modes")
        return DensityMatrix(self.mode_labels, self.entries + other.entries, check=self.check)

    def scaled(self, weight: float) -> "DensityMatrix":
        return DensityMatrix(self.mode_labels, weight * self.entries, check=self.check)


def ket(labels: Sequence[str], amplitudes) -> StateVector:
    return StateVector(tuple(labels), np.asarray(amplitudes, dtype=complex))


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product with ``a``'s modes placed before ``b``'s."""
    overlap = set(a.mode_labels) & set(b.mode_labels)
    if overlap:
        raise ModeError(f"modes {sorted(overlap)} appear in both factors")
    return StateVector(a.mode_labels + b.mode_labels, np.kron(a.amplitudes, b.amplitudes))


def apply_local(
    op,
    target_modes: Sequence[str] | str,
    s: StateVector,
    new_labels: Sequence[str] | None = None,
) -> StateVector:
    """Apply ``op`` to ``target_modes`` of ``s``, identity elsewhere.

    ``op`` may be rectangular (an isometry such as 2 -> 4): its column count
    must equal ``2**len(target_modes)`` and, when the row count differs,
    ``new_labels`` names the output modes, which take the place of the first
    target mode in the ordering. The result is left unnormalized.
    """
    if isinstance(target_modes, str):
        target_modes = (target_modes,)
    targets = tuple(target_modes)
    _check_labels(targets)
    missing = [m for m in targets if m not in s.mode_labels]
    if missing:
        raise ModeError(f"unknown mode(s) {missing}; state has {s.mode_labels}")

    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[1] != 2 ** len(targets):
        raise ModeError(
            f"operator of shape {op.shape} cannot act on {len(targets)} mode(s)"
        )
    n_out = int(round(np.log2(op.shape[0]))) if op.shape[0] > 0 else -1
    if n_out < 0 or 2**n_out != op.shape[0]:
        raise ModeError(f"operator row count {op.shape[0]} is not a power of two")
    if new_labels is None:
        if n_out != len(targets):
            raise ModeError("new_labels is required when the operator changes the mode count")
        out_labels = targets
    else:
        out_labels = tuple(new_labels)
        if len(out_labels) != n_out:
            raise ModeError(f"{len(out_labels)} new labels for {n_out} output modes")

    axes = [s.mode_labels.index(m) for m in targets]
    rest = [i for i in range(s.n_modes) if i not in axes]
    psi = np.transpose(s.tensor(), axes + rest).reshape(2 ** len(targets), -1)
    out = (op @ psi).reshape((2,) * n_out + (2,) * len(rest))

    rest_labels = [s.mode_labels[i] for i in rest]
    if new_labels is None:
        # same modes in, same modes out: restore the original axis order
        current = list(targets) + rest_labels
        final_labels = list(s.mode_labels)
    else:
        # output modes take the place of the first target mode
        current = list(out_labels) + rest_labels
        insert_at = sum(1 for i in rest if i < min(axes))
        final_labels = rest_labels[:insert_at] + list(out_labels) + rest_labels[insert_at:]
    perm = [current.index(lbl) for lbl in final_labels]
    out = np.transpose(out, perm)
    return StateVector(tuple(final_labels), out.reshape(-1))


def partial_trace(rho: DensityMatrix, keep_modes: Sequence[str] | str) -> DensityMatrix:
    """Trace out every mode not in ``keep_modes``; kept modes follow the given order."""
    if isinstance(keep_modes, str):
        keep_modes = (keep_modes,)
    keep = _check_labels(keep_modes)
    if not keep:
        raise ModeError("keep_modes must not be empty")
    missing = [m for m in keep if m not in rho.mode_labels]
    if missing:
        raise ModeError(f"unknown mode(s) {missing}; operator has {rho.mode_labels}")

    n = rho.n_modes
    t = rho.entries.reshape((2,) * (2 * n))
    keep_idx = [rho.mode_labels.index(m) for m in keep]
    row = list(range(n))
    col = list(range(n, 2 * n))
    for i in range(n):
        if i not in keep_idx:
            col[i] = row[i]
    out_sub = keep_idx + [n + i for i in keep_idx]
    reduced = np.einsum(t, row + col, out_sub)
    dim = 2 ** len(keep)
    return DensityMatrix(keep, reduced.reshape(dim, dim), check=rho.check)


def fidelity_pure(psi: StateVector, rho: DensityMatrix) -> float:
    """Overlap <psi|rho|psi> of a pure state with a mixed state."""
    if psi.n_modes != rho.n_modes:
        raise ModeError("state and density matrix act on different numbers of modes")
    if not psi.is_normalized or not rho.is_normalized:
        raise ValueError("fidelity_pure expects normalized arguments")
    v = psi.amplitudes
    return float(np.vdot(v, rho.entries @ v).real)


def concurrence_wootters(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The spin-flipped product is diagonalized at 40 decimal digits: states of
    interest here are rank deficient, and in double precision the square
    root turns ~1e-17 eigenvalue noise into ~1e-9 concurrence error.
    """
    if rho.n_modes != 2:
        raise ModeError("concurrence is defined for two modes only")
    m = rho.entries / rho.trace_weight
    if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -PSD_ATOL:
        raise ValueError("density matrix is not positive semidefinite")
    yy = np.kron(PAULI_Y, PAULI_Y)
    with mpmath.workdps(40):
        mm = mpmath.matrix(m.tolist())
        mc = mpmath.matrix(m.conj().tolist())
        y = mpmath.matrix(yy.tolist())
        ev = mpmath.eig(mm * y * mc * y, left=False, right=False)
        ev = [mpmath.re(e) for e in ev]
        if min(ev) < -PSD_ATOL:
            raise ValueError("spin-flipped product has a negative eigenvalue")
        lam = sorted((mpmath.sqrt(max(e, 0)) for e in ev), reverse=True)
        c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(1.0, max(0.0, float(c))))


def x_state_concurrence(rho: DensityMatrix) -> float:
    """Closed-form concurrence for a two-qubit X-shaped density matrix."""
    m = rho.entries / rho.trace_weight
    c1 = abs(m[0, 3]) - np.sqrt(m[1, 1].real * m[2, 2].real)
    c2 = abs(m[1, 2]) - np.sqrt(m[0, 0].real * m[3, 3].real)
    return float(2 * max(0.0, c1, c2))
