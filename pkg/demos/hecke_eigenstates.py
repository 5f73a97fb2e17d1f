"""Hecke eigenstates of the quantized cat map and the size of their Wigner values.

For A = [[2,1],[1,1]] the centralizer T_A of A mod p is a cyclic torus.  Its
character eigenvectors are the Hecke eigenstates; their matrix coefficients
W(xi) = <v|pi(xi)v> are small.  The character-sum bound 2 sqrt(p) gives
|W| <= 2 sqrt(p) / |T_A|, which at split primes is slightly weaker than 2/sqrt(p).
"""

import numpy as np

from torus_weil import hecke

A = (2, 1, 1, 1)
print(" p  kind   |T|  max|W|*sqrt(p)/2  max|W|*|T|/(2 sqrt p)")
for p in (7, 11, 13, 19, 29, 37, 41, 53):
    r = hecke.bound_row(A, p)
    print(f"{p:3d} {r['kind']:6s} {r['order']:3d}  {r['max_normalized']:16.4f}  {r['max_sharp']:20.4f}")

# split case: the Wigner value is an explicit exponential sum
p = 11
T = hecke.hecke_torus(A, p)
basis = hecke.hecke_basis(T)
j = min(basis)
xi = (1, 2)
w = hecke.wigner_matrix(basis[j], p)[xi]
s = hecke.split_formula(T, T.characters()[j], xi)
print(f"\np={p} chi_{j} xi={xi}: Wigner {w.real:+.6f}, exponential sum {s.real:+.6f}")

# the quadratic character of a split torus has a 2-dimensional eigenspace
print("rank of the quadratic eigenspace at p=11:", hecke.eigenspace_rank(T, T.quadratic))
tab = hecke.restated_sum_table(T)
tab[:, 0, 0] = 0
print("max quadratic character sum at p=11:", round(float(np.max(np.abs(tab[T.order // 2]))), 6), "= p - 2")
