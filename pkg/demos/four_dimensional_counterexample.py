"""An ergodic cat map on the 4-torus whose quantization has a non-equidistributed eigenstate.

A = diag(B, B^-T) preserves a Lagrangian sublattice, and its quantization fixes
the constant function, whose matrix coefficient at any nonzero xi of that
Lagrangian is 1 rather than the Haar average 0.
"""

from torus_weil import highdim

B = highdim.example_one_candidates()[0]
cert = highdim.ergodicity_certificate(B)
print(f"B = {B}: eigenvalues of A have min distance {cert.min_distance_to_circle:.4f} to the unit circle; "
      f"cyclotomic factors {cert.cyclotomic_factors or 'none'}")
for p in (5, 7, 11):
    v = highdim.counterexample_value(B, p, (1, 0))
    print(f"p = {p}: <phi | pi(1,0) phi> = {v.real:.12f}")

rep = highdim.centralizer_structure((2, 1, 1, 1), 7)
print(f"\ncentralizer of diag(A0, A0^-T), A0 = [[2,1],[1,1]], p=7 ({rep.kind}):")
print(f"  inside the block subgroup: order {rep.block_order}, commutative {rep.block_commutative}")
print(f"  inside Sp(4, F_7): order {rep.sp_order}; a non-commuting pair:")
X, Y = rep.witness
print(X, Y, sep="\n\n")
