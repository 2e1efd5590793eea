"""
How likely is one round to succeed?
===================================

Each round prepares the uniform state and applies
``ceil(pi/8 * sqrt(2**n))`` Grover iterations. That is about half of the
textbook-optimal count, so a single round succeeds with a probability
well below one. The simulator's exact marked-state probability tracks
``sin^2((2k+1) * asin(2**(-n/2)))`` to machine precision.
"""

# %%
from qgrover import analytic_success_probability, iterations_needed, probe

print(f"{'n':>3} {'k':>4} {'analytic':>12} {'simulated':>12} {'|delta|':>10} {'E[rounds]':>10}")
for n in range(1, 13):
    k = iterations_needed(n)
    p = probe(n, 2**n - 1, k)
    print(f"{n:>3} {k:>4} {p.analytic_p:>12.6f} {p.simulated_p:>12.6f} {p.delta:>10.1e} "
          f"{1 / p.analytic_p:>10.3f}")

# %%
# The probability climbs with every iteration until it overshoots.
n = 6
for k in range(0, 8):
    print(k, round(analytic_success_probability(n, k), 6))
