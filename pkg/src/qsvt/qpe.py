"""Quantum Fourier transform, conditional Hamiltonian evolution, and the
full phase-estimation unitary with its exact inverse.

Eigenvalue encoding: a configuration fixes an evolution time-step
``t0``.  The register label for eigenvalue ``lam`` is
``c = round(lam * t0 * T / (2 pi))`` with ``T = 2**t_bits``, decoded by
``lam(c) = c * 2 pi / (t0 * T)``.  The conditional evolution applies
``exp(i A c t0)`` on the subspace where register C holds ``c``,
realized as one controlled power ``exp(i A 2^w t0)`` per register
qubit (bit weight ``2^w``), which is equivalent and exponentially
cheaper than one control per label.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sim
from .errors import ValidationError
from .sim import QuantumState, RegisterLayout
from .spectral import herm_exp

ENCODING_TOL = 1e-9
CLEARED_TOL = 1e-12


@dataclass(frozen=True)
class PhaseEstimationConfig:
    t_bits: int
    t0: float
    exact: bool

    def __post_init__(self) -> None:
        if self.t_bits < 1:
            raise ValidationError("t_bits must be at least 1")
        if not self.t0 > 0:
            raise ValidationError("t0 must be positive")

    @property
    def T(self) -> int:
        return 1 << self.t_bits


@dataclass(frozen=True)
class EigenEncoding:
    """Map from eigenvalues to C-register integer labels, with decode."""

    eigenvalues: tuple[float, ...]
    labels: tuple[int, ...]
    t_bits: int
    t0: float

    def decode(self, label: int) -> float:
        return label * 2.0 * np.pi / (self.t0 * (1 << self.t_bits))


def _labels_for(eigenvalues: np.ndarray, t0: float, t_bits: int) -> np.ndarray:
    return np.rint(eigenvalues * t0 * (1 << t_bits) / (2.0 * np.pi)).astype(int)


def choose_t0(eigenvalues, t_bits: int) -> PhaseEstimationConfig:
    """Pick the evolution step for a spectrum.

    Integer eigenvalues below 2**t_bits get t0 = 2 pi / 2**t_bits and
    label c = lam exactly.  Anything else is scaled so the largest
    eigenvalue lands on the top label, with the exactness flag computed
    from whether every label is integral.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.ndim != 1 or len(lam) == 0:
        raise ValidationError("eigenvalues must be a non-empty vector")
    if np.any(lam <= 0):
        raise ValidationError("eigenvalues must be positive")
    if len(np.unique(lam)) != len(lam):
        raise ValidationError("eigenvalues must be distinct")
    T = 1 << t_bits
    rounded = np.rint(lam)
    integral = np.all(np.abs(lam - rounded) <= ENCODING_TOL * np.maximum(1.0, lam))
    if integral and rounded.max() < T:
        cfg = PhaseEstimationConfig(t_bits, 2.0 * np.pi / T, True)
    else:
        t0 = 2.0 * np.pi * (1.0 - 2.0**-t_bits) / lam.max()
        raw = lam * t0 * T / (2.0 * np.pi)
        exact = bool(np.all(np.abs(raw - np.rint(raw)) <= ENCODING_TOL) and raw.max() < T)
        cfg = PhaseEstimationConfig(t_bits, t0, exact)
    encode(lam, cfg)  # validates label injectivity
    return cfg


def encode(eigenvalues, cfg: PhaseEstimationConfig) -> EigenEncoding:
    """Assign labels under cfg; rejects collisions after rounding."""
    lam = np.asarray(eigenvalues, dtype=float)
    labels = _labels_for(lam, cfg.t0, cfg.t_bits)
    if np.any(labels < 0) or np.any(labels >= cfg.T):
        raise ValidationError("eigenvalue label out of register range")
    if len(np.unique(labels)) != len(labels):
        raise ValidationError("eigenvalue collision after rounding to t_bits precision")
    return EigenEncoding(tuple(lam), tuple(int(c) for c in labels), cfg.t_bits, cfg.t0)


def _dft_matrix(width: int) -> np.ndarray:
    size = 1 << width
    j = np.arange(size)
    return np.exp(2j * np.pi / size * np.outer(j, j)) / np.sqrt(size)


def qft(state: QuantumState, qubits) -> QuantumState:
    """Forward transform: |c> -> (1/sqrt T) sum_j exp(2 pi i c j / T)|j>."""
    qubits = list(qubits)
    return sim.apply_unitary(state, _dft_matrix(len(qubits)), qubits)


def iqft(state: QuantumState, qubits) -> QuantumState:
    qubits = list(qubits)
    return sim.apply_unitary(state, _dft_matrix(len(qubits)).conj().T, qubits)


def conditional_evolution(
    state: QuantumState,
    cfg: PhaseEstimationConfig,
    reg_C,
    reg_B_left,
    a: np.ndarray,
    inverse: bool = False,
) -> QuantumState:
    """For each C label c, evolve the u-factor of B by exp(i A c t0)."""
    reg_C = list(reg_C)
    reg_B_left = list(reg_B_left)
    a = np.asarray(a, dtype=complex)
    if a.shape[0] != (1 << len(reg_B_left)):
        raise ValidationError(
            f"Hamiltonian dim {a.shape[0]} does not match the controlled sub-factor"
        )
    sign = -1.0 if inverse else 1.0
    t = len(reg_C)
    for i, q in enumerate(reg_C):
        weight = 1 << (t - 1 - i)
        u = herm_exp(a, sign * weight * cfg.t0)
        sim.apply_controlled(state, u, q, 1, reg_B_left)
    return state


def _u_factor_qubits(layout: RegisterLayout, a: np.ndarray) -> list[int]:
    dim = a.shape[0]
    if dim & (dim - 1):
        raise ValidationError("Hamiltonian dimension must be a power of two")
    k = dim.bit_length() - 1
    if k > len(layout.reg_B):
        raise ValidationError("Hamiltonian larger than register B")
    return list(layout.reg_B)[:k]


def phase_estimate(
    state: QuantumState, cfg: PhaseEstimationConfig, layout: RegisterLayout, a
) -> QuantumState:
    """Write eigenvalue labels of ``a`` into register C."""
    a = np.asarray(a, dtype=complex)
    mass = sim.register_mass(state, layout.reg_C)
    if mass[1:].sum() > CLEARED_TOL:
        raise ValidationError("register C not cleared")
    h = sim.hadamard()
    for q in layout.reg_C:
        sim.apply_unitary(state, h, [q])
    conditional_evolution(state, cfg, layout.reg_C, _u_factor_qubits(layout, a), a)
    iqft(state, layout.reg_C)
    return state


def phase_estimate_inverse(
    state: QuantumState, cfg: PhaseEstimationConfig, layout: RegisterLayout, a
) -> QuantumState:
    """Exact adjoint of :func:`phase_estimate`: reversed gate sequence
    with conjugated phases."""
    a = np.asarray(a, dtype=complex)
    qft(state, layout.reg_C)
    conditional_evolution(
        state, cfg, layout.reg_C, _u_factor_qubits(layout, a), a, inverse=True
    )
    h = sim.hadamard()
    for q in layout.reg_C:
        sim.apply_unitary(state, h, [q])
    return state
