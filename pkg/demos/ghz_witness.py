"""
When a code cannot see the errors
=================================

A GHZ state written with generators ZZI, IZZ, XXX is pushed through the
five-qubit code.  One of the master generators never shows up in a check,
and the plan builder says which row spoils the candidate arrays.
"""

from stabpurify import builtin, builtin_state, build_check_plan, format_report
from stabpurify.multicopy import MultiCopySetup, encoded_state, witness_row

ghz = builtin_state("ghz3-path")
report = build_check_plan(ghz, builtin("C5"))
print(format_report(report))
print("offending row:", witness_row(report).letters())

# Without errors the encoded state is still the GHZ state
print("encoded state:", encoded_state(MultiCopySetup(ghz, 5), builtin("C5")))
