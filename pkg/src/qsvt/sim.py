"""Dense state-vector simulation primitives.

Conventions used throughout the package:

* Qubit 0 is the most significant bit of a basis-state index.  For an
  ``n``-qubit state, basis index ``x`` assigns qubit ``q`` the bit
  ``(x >> (n - 1 - q)) & 1``.
* Within a register (a ``range`` of qubit indices) the first qubit is
  the most significant bit of the register's value.
* Operations mutate the passed state in place and return it.  A state
  has a single writer at a time; independent states may be driven from
  different threads freely.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FullyThresholdedError, NormalizationError, ValidationError

MAX_QUBITS = 26
NORM_TOL = 1e-10
UNITARY_TOL = 1e-10
POST_SELECT_FLOOR = 1e-12


def hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def pauli_x() -> np.ndarray:
    return np.array([[0, 1], [1, 0]], dtype=complex)


def ry(angle: float) -> np.ndarray:
    """Rotation about Y: ry(a)|0> = cos(a/2)|0> + sin(a/2)|1>."""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class RegisterLayout:
    """Qubit assignment: ancilla a, threshold register L, eigenvalue
    register C, data register B.  Registers must tile 0..n-1; L may be
    empty."""

    ancilla: int
    reg_L: range
    reg_C: range
    reg_B: range

    def __post_init__(self) -> None:
        flat = [self.ancilla, *self.reg_L, *self.reg_C, *self.reg_B]
        if len(set(flat)) != len(flat):
            raise ValidationError("register ranges overlap")
        if sorted(flat) != list(range(len(flat))):
            raise ValidationError("registers must tile qubits 0..n-1 without gaps")
        if len(self.reg_B) == 0:
            raise ValidationError("data register B must be non-empty")

    @property
    def n_qubits(self) -> int:
        return 1 + len(self.reg_L) + len(self.reg_C) + len(self.reg_B)

    @classmethod
    def standard(cls, m_bits: int, t_bits: int, b_bits: int) -> "RegisterLayout":
        """Ancilla at qubit 0, then L, C, B in order."""
        lo_c = 1 + m_bits
        lo_b = lo_c + t_bits
        return cls(0, range(1, lo_c), range(lo_c, lo_b), range(lo_b, lo_b + b_bits))


@dataclass
class QuantumState:
    n_qubits: int
    amplitudes: np.ndarray

    def copy(self) -> "QuantumState":
        return QuantumState(self.n_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def _tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n_qubits)


def new_state(layout: RegisterLayout, max_qubits: int = MAX_QUBITS) -> QuantumState:
    """All-zeros basis state for the given layout."""
    n = layout.n_qubits
    if n > max_qubits:
        raise ValidationError(f"qubit budget exceeded: {n} > {max_qubits}")
    amp = np.zeros(1 << n, dtype=complex)
    amp[0] = 1.0
    return QuantumState(n, amp)


def _check_norm(state: QuantumState) -> None:
    n = state.norm()
    if abs(n - 1.0) > NORM_TOL:
        raise NormalizationError(f"state norm drifted to {n!r}")


def _require_unitary(matrix: np.ndarray) -> None:
    dim = matrix.shape[0]
    err = np.abs(matrix.conj().T @ matrix - np.eye(dim)).max()
    if err > UNITARY_TOL:
        raise ValidationError(f"matrix is not unitary (deviation {err:.3e})")


def _require_targets(state: QuantumState, targets: list[int], dim: int) -> None:
    if len(set(targets)) != len(targets):
        raise ValidationError("target qubits must be distinct")
    if any(t < 0 or t >= state.n_qubits for t in targets):
        raise ValidationError("target qubit out of range")
    if dim != (1 << len(targets)):
        raise ValidationError(f"matrix dim {dim} does not match {len(targets)} targets")


def _apply_on_axes(tensor: np.ndarray, matrix: np.ndarray, axes: list[int]) -> None:
    k = len(axes)
    moved = np.moveaxis(tensor, axes, range(k))
    shape = moved.shape
    out = (matrix @ moved.reshape(1 << k, -1)).reshape(shape)
    moved[...] = out


def apply_unitary(state: QuantumState, matrix: np.ndarray, targets) -> QuantumState:
    """Apply ``matrix`` on ``targets`` (first target = most significant
    bit of the gate's label) and identity elsewhere."""
    u = np.asarray(matrix, dtype=complex)
    targets = list(targets)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError("gate matrix must be square")
    _require_targets(state, targets, u.shape[0])
    _require_unitary(u)
    _apply_on_axes(state._tensor(), u, targets)
    _check_norm(state)
    return state


def apply_controlled(
    state: QuantumState,
    matrix: np.ndarray,
    control_qubit: int,
    control_value: int,
    targets,
) -> QuantumState:
    """Apply ``matrix`` on ``targets`` only where ``control_qubit``
    equals ``control_value``."""
    u = np.asarray(matrix, dtype=complex)
    targets = list(targets)
    if control_qubit in targets:
        raise ValidationError("control qubit overlaps targets")
    if control_value not in (0, 1):
        raise ValidationError("control value must be 0 or 1")
    _require_targets(state, targets + [control_qubit], 2 * u.shape[0])
    _require_unitary(u)
    tensor = state._tensor()
    index = [slice(None)] * state.n_qubits
    index[control_qubit] = control_value
    sub = tensor[tuple(index)]
    remapped = [t - (t > control_qubit) for t in targets]
    _apply_on_axes(sub, u, remapped)
    _check_norm(state)
    return state


def complete_permutation(mapping: dict[int, int], width: int) -> np.ndarray:
    """Complete a partial injective label map to a full permutation.

    Canonical completion: unmapped labels keep their value when that
    value is still free, otherwise they take the smallest free target,
    in ascending label order.
    """
    size = 1 << width
    perm = np.full(size, -1, dtype=np.int64)
    used = set()
    for src, dst in mapping.items():
        if not (0 <= src < size and 0 <= dst < size):
            raise ValidationError("label map entry out of range")
        if dst in used:
            raise ValidationError("label map is not injective")
        perm[src] = dst
        used.add(dst)
    free = sorted(set(range(size)) - used)
    free_set = set(free)
    cursor = 0
    for src in range(size):
        if perm[src] >= 0:
            continue
        if src in free_set:
            perm[src] = src
            free_set.remove(src)
        else:
            while free[cursor] not in free_set:
                cursor += 1
            perm[src] = free[cursor]
            free_set.remove(free[cursor])
    return perm


def apply_basis_oracle(state: QuantumState, qubits, mapping) -> QuantumState:
    """Permute basis labels of the given register set.

    ``mapping`` is either a partial injective dict (completed
    canonically, see :func:`complete_permutation`) or a full
    permutation array of length ``2**len(qubits)``.
    """
    qubits = list(qubits)
    w = len(qubits)
    _require_targets(state, qubits, 1 << w)
    if isinstance(mapping, dict):
        perm = complete_permutation(mapping, w)
    else:
        perm = np.asarray(mapping, dtype=np.int64)
        if perm.shape != (1 << w,) or len(np.unique(perm)) != 1 << w:
            raise ValidationError("oracle map is not a permutation")
    n = state.n_qubits
    idx = np.arange(1 << n, dtype=np.int64)
    label = np.zeros_like(idx)
    for i, q in enumerate(qubits):
        label |= ((idx >> (n - 1 - q)) & 1) << (w - 1 - i)
    new_label = perm[label]
    out = idx
    for i, q in enumerate(qubits):
        pos = n - 1 - q
        bit = (new_label >> (w - 1 - i)) & 1
        out = (out & ~(1 << pos)) | (bit << pos)
    new_amp = np.empty_like(state.amplitudes)
    new_amp[out] = state.amplitudes
    state.amplitudes = new_amp
    _check_norm(state)
    return state


def load_register(state: QuantumState, reg, amplitudes) -> QuantumState:
    """Load a unit vector into one register; all other qubits must be 0."""
    reg = list(reg)
    w = len(reg)
    vec = np.asarray(amplitudes, dtype=complex)
    if vec.shape != (1 << w,):
        raise ValidationError(f"expected {1 << w} amplitudes, got {vec.shape}")
    if abs(np.linalg.norm(vec) - 1.0) > NORM_TOL:
        raise ValidationError("register content must have unit norm")
    tensor = state._tensor()
    moved = np.moveaxis(tensor, reg, range(w))
    shape = moved.shape
    flat = moved.reshape(1 << w, -1)
    off_mass = float(np.sum(np.abs(flat[:, 1:]) ** 2))
    if off_mass > 1e-12:
        raise ValidationError("other registers are not in |0>")
    new = np.zeros_like(flat)
    new[:, 0] = vec
    moved[...] = new.reshape(shape)
    _check_norm(state)
    return state


def post_select(
    state: QuantumState, qubit: int, value: int, floor: float = POST_SELECT_FLOOR
) -> tuple[QuantumState, float]:
    """Condition on ``qubit`` reading ``value``.

    Returns the renormalized conditional state and the pre-measurement
    probability of that outcome.  Probability below ``floor`` signals a
    fully thresholded spectrum and raises.
    """
    if value not in (0, 1):
        raise ValidationError("measurement value must be 0 or 1")
    _require_targets(state, [qubit], 2)
    tensor = state._tensor()
    index = [slice(None)] * state.n_qubits
    index[qubit] = value
    prob = float(np.sum(np.abs(tensor[tuple(index)]) ** 2))
    if prob < floor:
        raise FullyThresholdedError(
            f"outcome probability {prob:.3e} below floor {floor:.3e}"
        )
    index[qubit] = 1 - value
    tensor[tuple(index)] = 0.0
    state.amplitudes /= np.sqrt(prob)
    _check_norm(state)
    return state, prob


def overlap(a: QuantumState, b: QuantumState) -> complex:
    """Inner product <a|b>."""
    if a.n_qubits != b.n_qubits:
        raise ValidationError("states have different dimensions")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def register_mass(state: QuantumState, qubits) -> np.ndarray:
    """Probability of each label of the given register set."""
    qubits = list(qubits)
    w = len(qubits)
    moved = np.moveaxis(state._tensor(), qubits, range(w))
    flat = moved.reshape(1 << w, -1)
    return np.sum(np.abs(flat) ** 2, axis=1)
