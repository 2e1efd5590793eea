"""Grover search on the state-vector machine.

The pipeline mirrors the QCL listing shipped with the package
(``qgrover.qcl.LISTING``): size the registers from the target, then repeat
rounds of ``reset; H(q); iterasi x (phase flip; diffusion); measure`` until
the measured value equals the target.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field

from .errors import AncillaError, CapacityError, DomainError, OverlapError, RoundLimitError
from .statevec import MAX_QUBITS, PROBABILITY_TOL, Machine, Register, new_machine

DEFAULT_MAX_ROUNDS = 1000


def _as_int(value, name):
    if isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {value!r}") from None


def qubits_needed(bil: int) -> int:
    """Width of the search register for target ``bil``: floor(log2 bil) + 1."""
    bil = _as_int(bil, "bil")
    if bil < 1:
        raise DomainError(f"search target must be >= 1, got {bil}")
    return bil.bit_length()


def iterations_needed(jmlqubit: int) -> int:
    """Grover iterations per round: ceil(pi/8 * sqrt(2**jmlqubit))."""
    jmlqubit = _as_int(jmlqubit, "jmlqubit")
    if jmlqubit < 1:
        raise DomainError(f"qubit count must be >= 1, got {jmlqubit}")
    return math.ceil(math.pi / 8 * math.sqrt(2.0**jmlqubit))


def analytic_success_probability(n: int, k: int) -> float:
    """sin^2((2k+1) * asin(2**(-n/2))) for one marked item among 2**n."""
    theta = math.asin(2.0 ** (-n / 2))
    return math.sin((2 * k + 1) * theta) ** 2


@dataclass(frozen=True)
class SearchParams:
    bil: int
    jmlqubit: int
    iterasi: int
    max_rounds: int = DEFAULT_MAX_ROUNDS
    seed: int = 0

    def __post_init__(self):
        if self.bil < 1:
            raise DomainError(f"search target must be >= 1, got {self.bil}")
        if self.jmlqubit != qubits_needed(self.bil):
            raise DomainError(f"jmlqubit={self.jmlqubit} is not the bit length of {self.bil}")
        if self.iterasi != iterations_needed(self.jmlqubit):
            raise DomainError(f"iterasi={self.iterasi} does not match jmlqubit={self.jmlqubit}")
        if self.max_rounds < 1:
            raise DomainError("max_rounds must be >= 1")

    @classmethod
    def for_target(cls, bil: int, max_rounds: int = DEFAULT_MAX_ROUNDS, seed: int = 0):
        n = qubits_needed(bil)
        return cls(bil, n, iterations_needed(n), max_rounds, seed)


@dataclass(frozen=True)
class SearchReport:
    input: int
    qubits: int
    iterations_per_round: int
    measured_values: tuple[int, ...] = field(default_factory=tuple)

    @property
    def rounds(self) -> int:
        return len(self.measured_values)

    @property
    def total_iterations(self) -> int:
        return self.iterations_per_round * self.rounds

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "qubits": self.qubits,
            "iterations": self.iterations_per_round,
            "measured": list(self.measured_values),
            "rounds": self.rounds,
            "total_iterations": self.total_iterations,
        }


@dataclass(frozen=True)
class ProbabilityProbe:
    n: int
    k: int
    analytic_p: float
    simulated_p: float

    @property
    def delta(self) -> float:
        return abs(self.analytic_p - self.simulated_p)


def _zero_bit_register(x: Register, bil: int) -> Register:
    return Register(tuple(q for i, q in enumerate(x.indices) if not (bil >> i) & 1))


def query(machine: Machine, x: Register, f: Register, bil: int) -> None:
    """Flip ``f`` exactly where ``x`` encodes ``bil``; ``x`` is left untouched."""
    if len(f) != 1:
        raise DomainError(f"flag register must have width 1, got {len(f)}")
    if set(x.indices) & set(f.indices):
        raise OverlapError("search and flag registers overlap")
    if not 0 <= bil < (1 << len(x)):
        raise DomainError(f"{bil} does not fit in a {len(x)}-qubit register")
    zeros = _zero_bit_register(x, bil)
    machine.apply_not(zeros)
    machine.apply_cnot(f, x)
    machine.apply_not(zeros)


def phase_flip_marked(machine: Machine, x: Register, f: Register, bil: int) -> None:
    """Negate the amplitude of ``|bil>`` via phase kickback on a clean ancilla."""
    if len(f) != 1:
        raise DomainError(f"flag register must have width 1, got {len(f)}")
    p_clean = machine.register_probability(f, 0)
    if abs(p_clean - 1.0) > PROBABILITY_TOL:
        raise AncillaError(f"flag qubit not in |0> (P(0) = {p_clean:.12g})")
    query(machine, x, f, bil)
    machine.apply_cphase(math.pi, f)
    query(machine, x, f, bil)  # X and CNot are self-inverse


def diffuse(machine: Machine, q: Register) -> None:
    """Inversion about the mean: H, X, CPhase(pi), X, H on ``q``."""
    machine.apply_hadamard(q)
    machine.apply_not(q)
    machine.apply_cphase(math.pi, q)
    machine.apply_not(q)
    machine.apply_hadamard(q)


def grover_iteration(machine: Machine, x: Register, f: Register, bil: int) -> None:
    phase_flip_marked(machine, x, f, bil)
    diffuse(machine, x)


def grover_search(params: SearchParams, machine: Machine | None = None) -> SearchReport:
    """Run rounds until the measured register equals ``params.bil``.

    If ``machine`` is omitted a fresh one seeded with ``params.seed`` is used;
    otherwise the caller's machine (and its RNG stream) is consumed.
    """
    if machine is None:
        machine = new_machine(min(MAX_QUBITS, params.jmlqubit + 1), params.seed)
    if machine.free_qubits < params.jmlqubit + 1:
        raise CapacityError(
            f"search for {params.bil} needs {params.jmlqubit + 1} free qubits, "
            f"machine has {machine.free_qubits}"
        )
    q = machine.allocate(params.jmlqubit)
    f = machine.allocate(1)
    measured: list[int] = []
    while True:
        machine.reset()
        machine.apply_hadamard(q)
        for _ in range(params.iterasi):
            grover_iteration(machine, q, f, params.bil)
        value = machine.measure(q).value
        measured.append(value)
        if value == params.bil:
            break
        if len(measured) >= params.max_rounds:
            machine.reset()
            raise RoundLimitError(
                f"no hit for {params.bil} after {params.max_rounds} rounds"
            )
    machine.reset()
    return SearchReport(params.bil, params.jmlqubit, params.iterasi, tuple(measured))


def search(bil: int, seed: int = 0, max_rounds: int = DEFAULT_MAX_ROUNDS,
           max_qubits: int = MAX_QUBITS) -> SearchReport:
    """Convenience wrapper: size, allocate and run a search for ``bil``."""
    params = SearchParams.for_target(bil, max_rounds=max_rounds, seed=seed)
    return grover_search(params, new_machine(max_qubits, seed))


def probe(n: int, bil: int, k: int, machine: Machine | None = None) -> ProbabilityProbe:
    """Apply ``k`` Grover iterations to the uniform state and read P(bil) exactly."""
    if n < 1:
        raise DomainError(f"register width must be >= 1, got {n}")
    if k < 0:
        raise DomainError(f"iteration count must be >= 0, got {k}")
    if not 0 <= bil < (1 << n):
        raise DomainError(f"{bil} does not fit in a {n}-qubit register")
    if machine is None:
        machine = new_machine(min(MAX_QUBITS, n + 1))
    if machine.free_qubits < n + 1:
        raise CapacityError(f"probe needs {n + 1} free qubits, machine has {machine.free_qubits}")
    q = machine.allocate(n)
    f = machine.allocate(1)
    machine.reset()
    machine.apply_hadamard(q)
    for _ in range(k):
        grover_iteration(machine, q, f, bil)
    simulated = machine.register_probability(q, bil)
    return ProbabilityProbe(n, k, analytic_success_probability(n, k), simulated)
