"""
Hadamard transform: recursion, entry formula, and the gate
==========================================================

The normalized Hadamard matrix doubles in size at each step,
``H_m = [[H, H], [H, -H]] / sqrt(2)``. Its ``(k, n)`` entry is
``2**(-m/2) * (-1)**popcount(k & n)``. Applying the single-qubit gate to
every qubit of a register is the same linear map, without ever building
the matrix.
"""

# %%
# Small matrices
import numpy as np

from qgrover import Register, hadamard_matrix, new_machine

np.set_printoptions(precision=4, suppress=True)
for m in range(3):
    print(f"H_{m} * 2^({m}/2) =")
    print(np.rint(hadamard_matrix(m) * 2 ** (m / 2)).astype(int))

# %%
# The bitwise-dot-product formula gives the same entries.
m = 3
k, n = np.meshgrid(np.arange(2**m), np.arange(2**m), indexing="ij")
popcount = np.vectorize(lambda v: bin(v).count("1"))
formula = (-1.0) ** popcount(k & n) / 2 ** (m / 2)
print("max |recursive - formula| =", np.max(np.abs(hadamard_matrix(m) - formula)))

# %%
# On the simulator, H on |000> gives the uniform superposition ...
machine = new_machine(3, seed=0)
q = machine.allocate(3)
machine.apply_hadamard(q)
print("H|000> =", machine.snapshot_amplitudes().real)

# %%
# ... and a second application undoes it.
machine.apply_hadamard(q)
print("H H|000> =", machine.snapshot_amplitudes().real)

# %%
# H|1> = (|0> - |1>)/sqrt(2)
one = new_machine(1)
r = one.allocate(1)
one.apply_not(r)
one.apply_hadamard(Register((0,)))
print("H|1> =", one.snapshot_amplitudes().real)
