"""Classical state-vector simulation of Grover's search.

Three layers: :mod:`qgrover.statevec` (the machine), :mod:`qgrover.grover`
(the search pipeline and its analytic success probability) and
:mod:`qgrover.qcl` (an interpreter for the QCL subset the search was
originally written in). :mod:`qgrover.cli` wraps them as ``qgrover``.
"""

from .grover import (
    ProbabilityProbe,
    SearchParams,
    SearchReport,
    analytic_success_probability,
    diffuse,
    grover_iteration,
    grover_search,
    iterations_needed,
    phase_flip_marked,
    probe,
    query,
    qubits_needed,
    search,
)
from .statevec import (
    MAX_QUBITS,
    Machine,
    MeasurementOutcome,
    Register,
    global_phase_distance,
    hadamard_matrix,
    new_machine,
)

__version__ = "0.1.0"
