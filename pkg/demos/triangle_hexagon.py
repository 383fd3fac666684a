"""
A three-party state that needs a CSS-H code
============================================

The triangle state has a Y on every qubit of one generator.  The
four-qubit code cannot purify it as given, while the seven-qubit code can,
with three checks per master generator.  Feeding four copies through the
four-qubit code anyway produces a six-qubit hexagon graph state.
"""

from stabpurify import builtin, builtin_state, build_check_plan, classify_state
from stabpurify.dense import verify_decoded_state
from stabpurify.multicopy import MultiCopySetup, encoded_state
from stabpurify.protocol import NoiseModel, enumerate_exact
from stabpurify.stabilizer import css_frame, graph_state

tri = builtin_state("triangle")
print("class:", classify_state(tri), "via frame", css_frame(tri))

# The given generators fail the encoded-generator condition with C4
rep = build_check_plan(tri, builtin("C4"))
print("C4:", rep.detail)

# A local Clifford frame turns it into a CSS state, and then C4 works
auto = build_check_plan(tri, builtin("C4"), frame="auto")
print("C4 after the frame change:", len(auto.checks), "checks")

# C7 needs no frame change
plan7 = build_check_plan(tri, builtin("C7"))
print("C7:", len(plan7.checks), "checks")
rep7 = enumerate_exact(plan7, NoiseModel.depolarizing(0.01, 21))
print(f"C7 at p=0.01: fidelity {rep7.fidelity:.5f} vs single copy {1 - rep7.input_infidelity:.5f}")

# Four copies through C4: logical qubit l of party c sits at index l * 3 + c
hexagon = graph_state(6, [(0, 4), (4, 2), (2, 3), (3, 1), (1, 5), (5, 0)])
setup = MultiCopySetup(tri, 4)
print("encoded == hexagon:", encoded_state(setup, builtin("C4")) == hexagon)
print("dense check:", verify_decoded_state(setup, builtin("C4"), target=hexagon))
