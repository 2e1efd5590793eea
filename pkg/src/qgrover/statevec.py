"""Dense state-vector simulation of a small quantum machine.

The machine holds ``2**B`` complex amplitudes for ``B`` allocated qubits.
Basis index bit ``j`` is machine qubit ``j``; newly allocated qubits are
appended as the most significant bits. A :class:`Register` lists machine
qubits so that its element ``i`` carries weight ``2**i`` in the register's
integer value.

Randomness comes from :func:`numpy.random.default_rng` (PCG64) seeded with
the machine seed. Each call to :meth:`Machine.measure` draws exactly one
``Generator.random()`` double, so a fixed seed and a fixed sequence of
operations reproduce the same outcomes bit for bit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, InvalidRegister, NumericalError, OverlapError

MAX_QUBITS = 30
MAX_HADAMARD_ORDER = 10

STATE_TOL = 1e-12
PROBABILITY_TOL = 1e-9

_SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Register:
    """Ordered tuple of machine qubit indices, least significant first."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != len(idx):
            raise InvalidRegister(f"duplicate qubit in register {idx}")
        if any(i < 0 for i in idx):
            raise InvalidRegister(f"negative qubit index in register {idx}")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Register(self.indices[key])
        if not 0 <= key < len(self.indices):
            raise InvalidRegister(f"index {key} outside register of width {len(self)}")
        return Register((self.indices[key],))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m

    @classmethod
    def concat(cls, regs: Iterable["Register"]) -> "Register":
        out: list[int] = []
        for r in regs:
            out.extend(r.indices)
        return cls(tuple(out))


@dataclass(frozen=True)
class MeasurementOutcome:
    value: int
    probability: float


class Machine:
    """A quantum machine with a fixed qubit budget.

    Use :func:`new_machine` or the constructor directly; both validate the
    budget. All gate methods mutate the machine in place.
    """

    def __init__(self, max_qubits: int = MAX_QUBITS, seed: int = 0):
        if not isinstance(max_qubits, (int, np.integer)) or not 1 <= max_qubits <= MAX_QUBITS:
            raise CapacityError(f"max_qubits must be in [1, {MAX_QUBITS}], got {max_qubits!r}")
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.max_qubits = int(max_qubits)
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)
        self._psi = np.ones(1, dtype=np.complex128)
        self._n = 0
        self._index_cache: np.ndarray | None = None

    def __repr__(self):
        return f"Machine(qubits={self._n}/{self.max_qubits}, seed={self.seed})"

    @property
    def num_qubits(self) -> int:
        return self._n

    @property
    def free_qubits(self) -> int:
        return self.max_qubits - self._n

    # -- bookkeeping ---------------------------------------------------

    def _indices(self) -> np.ndarray:
        if self._index_cache is None or self._index_cache.shape[0] != self._psi.shape[0]:
            self._index_cache = np.arange(self._psi.shape[0], dtype=np.int64)
        return self._index_cache

    def _check(self, reg: Register) -> None:
        if not isinstance(reg, Register):
            raise InvalidRegister(f"expected a Register, got {type(reg).__name__}")
        for i in reg.indices:
            if i >= self._n:
                raise InvalidRegister(f"qubit {i} not allocated (machine has {self._n})")

    def allocate(self, width: int) -> Register:
        """Append ``width`` qubits in |0> and return their register."""
        width = int(width)
        if width < 0:
            raise CapacityError(f"register width must be non-negative, got {width}")
        if self._n + width > self.max_qubits:
            raise CapacityError(
                f"allocating {width} qubits exceeds capacity "
                f"({self._n} used of {self.max_qubits})"
            )
        old = self._psi
        self._psi = np.zeros(old.shape[0] << width, dtype=np.complex128)
        self._psi[: old.shape[0]] = old
        reg = Register(tuple(range(self._n, self._n + width)))
        self._n += width
        return reg

    def reset(self) -> None:
        """Force every allocated qubit to |0...0> without measuring."""
        self._psi[:] = 0
        self._psi[0] = 1.0

    def snapshot_amplitudes(self) -> np.ndarray:
        """Copy of the amplitude vector."""
        return self._psi.copy()

    def probabilities(self) -> np.ndarray:
        return np.abs(self._psi) ** 2

    def norm_deviation(self) -> float:
        return abs(float(np.sum(self.probabilities())) - 1.0)

    def load_amplitudes(self, amplitudes: Sequence[complex]) -> None:
        """Overwrite the state; the vector must already be normalized to 1e-9."""
        vec = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if vec.shape[0] != self._psi.shape[0]:
            raise InvalidRegister(
                f"expected {self._psi.shape[0]} amplitudes, got {vec.shape[0]}"
            )
        if not np.all(np.isfinite(vec)):
            raise NumericalError("amplitudes must be finite")
        norm = float(np.sqrt(np.sum(np.abs(vec) ** 2)))
        if abs(norm * norm - 1.0) > PROBABILITY_TOL:
            raise NumericalError(f"state not normalized (|psi|^2 = {norm * norm!r})")
        self._psi = vec / norm

    def register_probability(self, reg: Register, value: int) -> float:
        """Probability that measuring ``reg`` would yield ``value`` (no collapse)."""
        self._check(reg)
        return float(self._marginal(reg)[int(value)])

    # -- gates ---------------------------------------------------------

    def apply_hadamard(self, reg: Register) -> None:
        self._check(reg)
        for q in reg.indices:
            view = self._psi.reshape(-1, 2, 1 << q)
            a = view[:, 0, :].copy()
            b = view[:, 1, :]
            view[:, 0, :] = (a + b) * _SQRT1_2
            view[:, 1, :] = (a - b) * _SQRT1_2

    def apply_not(self, reg: Register) -> None:
        self._check(reg)
        if len(reg):
            self._psi = self._psi[self._indices() ^ reg.mask]

    def apply_cnot(self, target: Register, controls: Register) -> None:
        """Flip ``target`` on basis states where every control bit is 1."""
        self._check(target)
        self._check(controls)
        if len(target) != 1:
            raise InvalidRegister(f"CNot target must have width 1, got {len(target)}")
        if set(target.indices) & set(controls.indices):
            raise OverlapError("CNot target is also a control")
        idx = self._indices()
        cmask = controls.mask
        hit = (idx & cmask) == cmask
        self._psi = self._psi[np.where(hit, idx ^ target.mask, idx)]

    def apply_cphase(self, angle: float, reg: Register) -> None:
        """Multiply amplitudes whose ``reg`` bits are all 1 by ``exp(i*angle)``."""
        self._check(reg)
        mask = reg.mask
        hit = (self._indices() & mask) == mask
        self._psi[hit] *= cmath.exp(1j * float(angle))

    # -- measurement ---------------------------------------------------

    def _register_values(self, reg: Register) -> np.ndarray:
        idx = self._indices()
        values = np.zeros_like(idx)
        for i, q in enumerate(reg.indices):
            values |= ((idx >> q) & 1) << i
        return values

    def _marginal(self, reg: Register, values: np.ndarray | None = None) -> np.ndarray:
        if values is None:
            values = self._register_values(reg)
        return np.bincount(values, weights=self.probabilities(), minlength=1 << len(reg))

    def measure(self, reg: Register) -> MeasurementOutcome:
        """Sample ``reg`` and collapse the machine onto the observed value."""
        self._check(reg)
        values = self._register_values(reg)
        marginal = self._marginal(reg, values)
        total = float(marginal.sum())
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise NumericalError(f"total probability {total!r} deviates from 1")
        cdf = np.cumsum(marginal)
        u = self.rng.random() * cdf[-1]
        v = int(np.searchsorted(cdf, u, side="right"))
        if v >= marginal.shape[0] or marginal[v] <= 0.0:
            v = int(np.flatnonzero(marginal > 0.0)[-1])
        keep = values == v
        self._psi[~keep] = 0
        self._psi /= math.sqrt(float(np.sum(np.abs(self._psi) ** 2)))
        return MeasurementOutcome(v, float(marginal[v] / total))


def new_machine(max_qubits: int = MAX_QUBITS, seed: int = 0) -> Machine:
    return Machine(max_qubits, seed)


def hadamard_matrix(m: int) -> np.ndarray:
    """Normalized ``2**m x 2**m`` Hadamard matrix built by the block recursion."""
    if not 0 <= m <= MAX_HADAMARD_ORDER:
        raise CapacityError(f"hadamard_matrix order must be in [0, {MAX_HADAMARD_ORDER}], got {m}")
    h = np.ones((1, 1))
    for _ in range(m):
        h = np.block([[h, h], [h, -h]]) * _SQRT1_2
    return h


def global_phase_distance(expected: np.ndarray, actual: np.ndarray) -> float:
    """Max elementwise distance after removing one global phase from ``actual``.

    The phase is estimated from the largest-magnitude entry of ``expected``.
    """
    expected = np.asarray(expected, dtype=np.complex128)
    actual = np.asarray(actual, dtype=np.complex128)
    k = int(np.argmax(np.abs(expected)))
    if abs(actual[k]) == 0.0:
        return float(np.max(np.abs(expected - actual)))
    phase = (expected[k] / abs(expected[k])) / (actual[k] / abs(actual[k]))
    return float(np.max(np.abs(expected - phase * actual)))
