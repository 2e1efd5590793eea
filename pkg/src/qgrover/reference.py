"""Published Grover-simulation results used for regression checks.

Each row is ``(input, qubits, iterations, measured values, total iterations)``
as originally reported for the QCL implementation. Measured values other
than the final one depend on the random stream and are not reproducible.
"""

REFERENCE_TABLE = (
    (10, 4, 2, (10,), 2),
    (30, 5, 3, (30,), 3),
    (175, 8, 7, (175,), 7),
    (500, 9, 9, (373, 500), 18),
    (1000, 10, 13, (327, 1000), 26),
    (1676, 11, 18, (1676,), 18),
    (2000, 11, 18, (1645, 1497, 1493, 703, 2000), 90),
    (2200, 12, 26, (3765, 2349, 2200), 78),
    (8111, 13, 36, (8111,), 36),
    (9999, 14, 54, (9999,), 54),
)

REFERENCE_INPUTS = tuple(row[0] for row in REFERENCE_TABLE)

# The ceil(pi/8 * sqrt(2**14)) formula gives 51, not the 54 that was reported.
KNOWN_ITERATION_DEVIATIONS = {9999: 54}
