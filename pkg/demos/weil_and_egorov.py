"""The Weil representation of SL2(F_p) and the Egorov identity.

Builds rho(g) from the Bruhat-cell kernels, checks that it is an honest
representation and that conjugating the Heisenberg operators by it moves
phase-space points linearly.
"""

import itertools

import numpy as np

from torus_weil.heisenberg import pi_vector
from torus_weil.symplectic import S_GEN, T_GEN, sl2_elements
from torus_weil.weil import egorov_check, multiplicativity_error, rho

p = 7
print(f"p = {p}, |SL2(F_p)| = {len(sl2_elements(p))}")

# rho(S) is a normalized finite Fourier transform
F = rho(S_GEN, p)
print("rho(S) unitary:", np.allclose(F @ F.conj().T, np.eye(p)))
print("rho(S)^4 = I:", np.allclose(np.linalg.matrix_power(F, 4), np.eye(p)))

# multiplicativity on a sample of pairs
G = sl2_elements(p)
worst = max(multiplicativity_error(G[i], G[j], p) for i, j in itertools.product(range(0, len(G), 17), repeat=2))
print(f"max |rho(g) rho(h) - rho(gh)| on a sample: {worst:.2e}")

# Egorov: rho(B) pi(v) rho(B)^-1 = pi(B v)
V = list(itertools.product(range(p), repeat=2))
print(f"Egorov error over generators x V: {max(egorov_check(B, v, p) for B in (S_GEN, T_GEN) for v in V):.2e}")

# the cat map A = [[2,1],[1,1]] acting on a translate-modulate operator
A = (2, 1, 1, 1)
lhs = rho(A, p) @ pi_vector((1, 0), p) @ rho(A, p).conj().T
print("rho(A) pi(1,0) rho(A)^-1 == pi(2,1):", np.allclose(lhs, pi_vector((2, 1), p)))
