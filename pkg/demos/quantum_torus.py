"""The quantum torus at rational Planck constant M/N.

Clock and shift matrices give the N-dimensional irreducible representation;
the scalar by which s(N xi) acts is a twisted character, and the one fixed by
SL2(Z) is unique.
"""

import numpy as np

from torus_weil import qtorus

for M, N in ((1, 2), (1, 5), (3, 7)):
    h = qtorus.RationalPlanck(M, N)
    rep = qtorus.build_irrep(h)
    q = qtorus.attached_character(rep)
    found = qtorus.uniqueness_search(h)
    print(f"hbar = {M}/{N}: dim {rep.dim}, relation error {qtorus.relation_error(rep):.1e}, "
          f"q(e1), q(e2) = {np.round(q.basis_values, 6)}, SL2(Z)-fixed characters found: {len(found)}")

f = {(1, 0): 0.5, (-1, 0): 0.5}
g = {(0, 1): 0.5, (0, -1): 0.5}
print("\nsemiclassical defect ||(i/hbar)[Op f, Op g] - Op{f, g}|| for f = cos 2 pi x, g = cos 2 pi y")
for N, d in qtorus.semiclassical_commutator(f, g, [5, 10, 20, 40, 80]):
    print(f"  N = {N:3d}: {d:.5f}")

rep2 = qtorus.build_irrep(qtorus.RationalPlanck(1, 3), n=2)
print(f"\nfour-dimensional torus, hbar = 1/3: dim {rep2.dim}, relation error {qtorus.relation_error(rep2, 1):.1e}")
