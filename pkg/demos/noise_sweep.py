"""
Yield and fidelity against noise strength
=========================================

Exact enumeration and Monte Carlo side by side for the compatible builtin
pairs, over a small grid of depolarizing strengths.
"""

import numpy as np

from stabpurify import builtin, builtin_state, build_check_plan
from stabpurify.protocol import NoiseModel, enumerate_exact, simulate_monte_carlo

pairs = [("bell", "C4"), ("bell", "C5"), ("triangle", "C6"), ("triangle", "C7")]
grid = np.array([0.001, 0.005, 0.01, 0.02, 0.05])

print(f"{'pair':<14}{'p':>7}{'yield':>10}{'fidelity':>11}{'mc fid':>10}{'in fid':>9}")
for state, code in pairs:
    plan = build_check_plan(builtin_state(state), builtin(code))
    nq = plan.setup.num_qubits
    for p in grid:
        noise = NoiseModel.depolarizing(float(p), nq)
        ex = enumerate_exact(plan, noise)
        mc = simulate_monte_carlo(plan, noise, 20_000, seed=0, workers=4)
        print(f"{state + '/' + code:<14}{p:>7g}{ex.yield_:>10.4f}{ex.fidelity:>11.5f}"
              f"{mc.fidelity:>10.5f}{1 - ex.input_infidelity:>9.5f}")
