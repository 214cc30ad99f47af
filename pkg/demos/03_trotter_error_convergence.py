"""Measuring Trotter error and its convergence order.

The product formula S_l(t/r)**r approximates exp(iHt); the deviation shrinks
as r**(-l).  This script builds one SYK instance, evolves it exactly by
eigendecomposition and approximately by first- and second-order schedules,
and shows the error halving (l = 1) and quartering (l = 2) as r doubles.
The r rounds are applied by repeated squaring of the one-round matrix, so
r = 10**4 costs only ~14 matrix products.

Run:  python demos/03_trotter_error_convergence.py
"""

import math

import numpy as np

from syklab.linalg import assemble, exact_evolution
from syklab.model import sample_dense
from syklab.trotter import build_schedule, fixed_state_error, observed_error

n, k, t = 8, 4, 1.0
inst = sample_dense(n, k, seed=11)
dim = 2 ** (n // 2)
exact = exact_evolution(assemble(inst), t)

print(f"SYK n={n}, k={k}, Gamma={inst.gamma_count}, t={t}")
print("\nnormalized Frobenius error vs Trotter number:")
print(f"{'r':>6}  {'l=1':>12}  {'ratio':>6}  {'l=2':>12}  {'ratio':>6}")
prev = {1: None, 2: None}
for r in (64, 128, 256, 512):
    errs = {
        l: observed_error(inst, l, t, r, 2, exact=exact) for l in (1, 2)
    }
    ratios = {
        l: (f"{prev[l] / errs[l]:.3f}" if prev[l] else "-") for l in (1, 2)
    }
    print(f"{r:>6}  {errs[1]:>12.4e}  {ratios[1]:>6}  "
          f"{errs[2]:>12.4e}  {ratios[2]:>6}")
    prev = errs
print("expected ratios: 2 (first order), 4 (second order)")

# second-order schedule structure: reverse sweep then forward sweep at t/2
sched = build_schedule(2, 3)
print(f"\nS_2 schedule for 3 terms: {sched.steps}")

# fixed-state error is never larger than the spectral-norm error
rng = np.random.default_rng(5)
state = rng.normal(size=dim) + 1j * rng.normal(size=dim)
state /= np.linalg.norm(state)
r = 128
fixed = fixed_state_error(inst, 2, t, r, state)
spectral = observed_error(inst, 2, t, r, math.inf)
print(f"\nfixed-state error {fixed:.4e} <= spectral error {spectral:.4e}: "
      f"{fixed <= spectral + 1e-12}")
