"""Oriented Lagrangians and the canonical intertwiners between their models.

Every oriented line L gives a model of the Heisenberg representation.  The
normalized averaging maps theta(L1, L2) between models compose without any
scalar ambiguity, and transporting along g recovers the kernel formula for rho.
"""

import itertools

import numpy as np

from torus_weil import lagrangian
from torus_weil.symplectic import sl2_elements
from torus_weil.weil import rho

p = 5
Ls = lagrangian.enumerate_oriented_lagrangians(p)
print(f"{len(Ls)} oriented Lagrangians at p={p}")

err = max(lagrangian.associativity_error(*t) for t in itertools.product(Ls, repeat=3))
print(f"associativity over all {len(Ls) ** 3} triples: max error {err:.2e}")

L1, L2 = Ls[0], Ls[2]
print(f"|a(L1, L2)| * sqrt(p) = {abs(lagrangian.normalization_a(L1, L2)) * np.sqrt(p):.6f}")

fits = [lagrangian.fit_scalar(lagrangian.canonical_weil(g, p), rho(g, p)) for g in sl2_elements(p)]
print("canonical Weil action vs kernel formula: scalars",
      sorted({complex(round(c.real, 9), round(c.imag, 9)) for c, _ in fits}), "max residual",
      f"{max(r for _, r in fits):.1e}")
