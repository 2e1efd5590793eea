"""
Running the original QCL program
================================

The package ships the QCL listing the search was first written in. It
lexes, parses and runs on the same machine the native engine uses, so with
equal seeds both produce the same sequence of measured values.
"""

# %%
from qgrover import new_machine, search
from qgrover.qcl import LISTING, format_program, interpret, parse

program = parse(LISTING)
print("procedures:", program.names)

# %%
# Pretty-printed form of the diffusion procedure
print(format_program(program).split("\n\n")[1])

# %%
result = interpret(program, "mulai", new_machine(30, seed=5), input_feed=[175])
print("\n".join(result.output[-6:]))

# %%
measured = [value for _, value in result.measurements]
print("interpreter:", measured)
print("engine:     ", list(search(175, seed=5).measured_values))
