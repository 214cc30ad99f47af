"""syklab: a simulation laboratory for Trotterized SYK and sparse SYK models.

Submodules
----------
pauli        exact symplectic Pauli-string algebra and signed-permutation action
fermions     Jordan-Wigner Majoranas and k-local term operators
model        hyperedge ordering and dense/sparse disorder sampling
linalg       dense backend: assembly, exact evolution, Schatten norms, MC averages
trotter      Lie-Trotter-Suzuki schedules and Trotterized evolution
bounds       Q(n,k), analytical error bounds, Trotter-number solver, gate counts
chains       brute-force nested-commutator combinatorics and coloring oracles
experiments  scan drivers, CSV emission, verification reports
cli          command-line front end (scan-n, scan-t, solve-r, ...)
"""

from . import bounds, chains, experiments, fermions, linalg, model, pauli, trotter

__all__ = [
    "bounds",
    "chains",
    "experiments",
    "fermions",
    "linalg",
    "model",
    "pauli",
    "trotter",
]

__version__ = "0.1.0"
