"""A four-dimensional ergodic cat map whose quantization is not Hecke ergodic.

For B in GL2(Z) the block matrix A = diag(B, B^-T) is symplectic on Z^4 and
preserves the Lagrangian sublattice of the first two coordinates.  Its
quantization acts on functions on F_p^2 by phi -> legendre(det B) phi(B^-1 x),
so the constant function is a common eigenvector while the translation
operators of the invariant Lagrangian fix it: the matrix coefficient is 1,
not the Haar average 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import sympy

from .arith import check_prime, inv, legendre
from .symplectic import as_matrix, standard_form

__all__ = [
    "block_element",
    "ErgodicityCertificate",
    "ergodicity_certificate",
    "example_one_candidates",
    "rho_block",
    "translation_operator",
    "counterexample_value",
    "CentralizerReport",
    "centralizer_structure",
]


def _int_inverse_transpose(B) -> np.ndarray:
    a, b, c, d = as_matrix(B)
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError(f"det{(a, b, c, d)} = {det}: B must lie in GL2(Z)")
    # B^-1 = adj(B) / det, with det = +-1
    return np.array([[d, -c], [-b, a]], dtype=np.int64) * det


def block_element(B, p: int | None = None) -> np.ndarray:
    """A = diag(B, B^-T), reduced mod p when p is given."""
    Bm = np.array(as_matrix(B), dtype=np.int64).reshape(2, 2)
    A = np.zeros((4, 4), dtype=np.int64)
    A[:2, :2] = Bm
    A[2:, 2:] = _int_inverse_transpose(B)
    if p is not None:
        A %= check_prime(p)
    return A


# cyclotomic polynomials of degree <= 4 are Phi_n for these n
_SMALL_CYCLOTOMIC = (1, 2, 3, 4, 5, 6, 8, 10, 12)


@dataclass(frozen=True)
class ErgodicityCertificate:
    eigenvalues: tuple[complex, ...]
    min_distance_to_circle: float
    cyclotomic_factors: tuple[int, ...]

    @property
    def numeric_ok(self) -> bool:
        return self.min_distance_to_circle > 1e-9

    @property
    def ergodic(self) -> bool:
        """No eigenvalue is a root of unity (exact test on the characteristic polynomial)."""
        return not self.cyclotomic_factors


def ergodicity_certificate(B) -> ErgodicityCertificate:
    A = block_element(B)
    eig = np.linalg.eigvals(A.astype(float))
    x = sympy.symbols("x")
    charpoly = sympy.Matrix(A.tolist()).charpoly(x).as_expr()
    factors = [f for f, _ in sympy.factor_list(charpoly, x)[1]]
    hits = tuple(n for n in _SMALL_CYCLOTOMIC
                 if any(sympy.rem(f, sympy.cyclotomic_poly(n, x), x) == 0 and sympy.degree(f, x) == sympy.totient(n)
                        for f in factors))
    dist = float(np.min(np.abs(np.abs(eig) - 1)))
    return ErgodicityCertificate(tuple(complex(z) for z in eig), dist, hits)


def example_one_candidates(bound: int = 2) -> list[tuple[int, int, int, int]]:
    """Matrices of determinant -1 with entries in [-bound, bound] and no root-of-unity eigenvalue."""
    out = []
    for B in itertools.product(range(-bound, bound + 1), repeat=4):
        if B[0] * B[3] - B[1] * B[2] == -1 and ergodicity_certificate(B).ergodic:
            out.append(B)
    return sorted(out, key=lambda B: (sum(abs(c) for c in B), [-c for c in B]))


def rho_block(B, p: int) -> np.ndarray:
    """phi -> legendre(det B) phi(B^-1 x) on functions on F_p^2 (index x0 * p + x1)."""
    p = check_prime(p)
    a, b, c, d = (x % p for x in as_matrix(B))
    det = (a * d - b * c) % p
    if det == 0:
        raise ValueError("B is not invertible mod p")
    di = inv(det, p)
    Binv = np.array([[d, -b], [-c, a]], dtype=np.int64) * di % p
    pts = np.array(list(itertools.product(range(p), repeat=2)), dtype=np.int64)
    src = pts @ Binv.T % p
    R = np.zeros((p * p, p * p))
    R[np.arange(p * p), src[:, 0] * p + src[:, 1]] = legendre(det, p)
    return R


def translation_operator(xi, p: int) -> np.ndarray:
    """(pi(xi) phi)(x) = phi(x + xi) for xi in the invariant Lagrangian F_p^2."""
    pts = np.array(list(itertools.product(range(p), repeat=2)), dtype=np.int64)
    dst = (pts + np.asarray(xi, dtype=np.int64)) % p
    T = np.zeros((p * p, p * p))
    T[np.arange(p * p), dst[:, 0] * p + dst[:, 1]] = 1.0
    return T


def counterexample_value(B, p: int, xi) -> complex:
    """<phi | pi(xi) phi> for the normalized constant function phi = 1/p."""
    p = check_prime(p)
    xi = tuple(int(c) % p for c in xi)
    if len(xi) != 2 or xi == (0, 0):
        raise ValueError("xi must be a nonzero vector of F_p^2")
    phi = np.full(p * p, 1.0 / p)
    R = rho_block(B, p)
    if np.max(np.abs(R @ phi - R[0].sum() * phi)) > 1e-12:
        raise AssertionError("the constant function is not an eigenvector")
    return complex(np.vdot(phi, translation_operator(xi, p) @ phi))


@dataclass(frozen=True)
class CentralizerReport:
    p: int
    kind: str
    block_order: int
    block_commutative: bool
    sp_order: int | None
    witness: tuple[np.ndarray, np.ndarray]


def _commutant_basis(B, p: int) -> np.ndarray:
    """Basis of the commutant of diag(B, B^-T) in M4(F_p), for B in SL2 non-scalar mod p.

    B^-T = W B W^-1 with W = [[0, 1], [-1, 0]], so with Q = diag(I, W) the commutant is
    Q M2(F_p[B]) Q^-1, spanned by Q (E_ij kron B^k) Q^-1, k = 0, 1.
    """
    Bm = np.array(as_matrix(B), dtype=np.int64).reshape(2, 2)
    W = np.array([[0, 1], [-1, 0]], dtype=np.int64)
    Q = np.zeros((4, 4), dtype=np.int64)
    Q[:2, :2] = np.eye(2, dtype=np.int64)
    Q[2:, 2:] = W
    Qi = np.zeros((4, 4), dtype=np.int64)
    Qi[:2, :2] = np.eye(2, dtype=np.int64)
    Qi[2:, 2:] = -W
    out = []
    for i, j in itertools.product(range(2), repeat=2):
        E = np.zeros((2, 2), dtype=np.int64)
        E[i, j] = 1
        for Bk in (np.eye(2, dtype=np.int64), Bm):
            out.append(Q @ np.kron(E, Bk) @ Qi % p)
    return np.array(out)


def _symplectic_in_span(basis: np.ndarray, p: int, chunk: int = 400_000):
    """Yield every symplectic matrix in the F_p-span of ``basis`` (vectorized over coefficients)."""
    J = standard_form(2) % p
    k = basis.shape[0]
    flat = basis.reshape(k, 16)
    total = p ** k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coeffs = np.stack([(idx // p ** i) % p for i in range(k)], axis=1)
        X = (coeffs @ flat % p).reshape(-1, 4, 4)
        G = np.matmul(np.matmul(X.transpose(0, 2, 1), J), X) % p
        yield from X[np.all(G == J, axis=(1, 2))]


def centralizer_structure(B, p: int, count_limit: int = 7) -> CentralizerReport:
    """Centralizer of diag(B, B^-T) inside the block subgroup and inside Sp(4, F_p).

    In the block subgroup it is F_p[B]^x, which is commutative.  The full symplectic
    centralizer is enumerated inside the eight-dimensional commutant (for p <= count_limit)
    and always contains the non-commuting pair returned as ``witness``.
    """
    p = check_prime(p)
    B = as_matrix(B)
    if B[0] * B[3] - B[1] * B[2] != 1:
        raise ValueError("B must lie in SL2(Z)")
    if abs(B[0] + B[3]) <= 2:
        raise ValueError("B must be hyperbolic")
    disc = ((B[0] + B[3]) ** 2 - 4) % p
    if disc == 0:
        raise ValueError(f"p={p} divides tr(B)^2 - 4")
    kind = "Split" if legendre(disc, p) == 1 else "Inert"
    Bp = np.array(B, dtype=np.int64).reshape(2, 2) % p

    block = []
    for M in itertools.product(range(p), repeat=4):
        Mm = np.array(M, dtype=np.int64).reshape(2, 2)
        if (M[0] * M[3] - M[1] * M[2]) % p and not ((Mm @ Bp - Bp @ Mm) % p).any():
            block.append(Mm)
    commutative = all(not ((X @ Y - Y @ X) % p).any() for X in block for Y in block)

    A = block_element(B, p)
    basis = _commutant_basis(B, p)
    assert all(not ((X @ A - A @ X) % p).any() for X in basis)

    # witness from the scalar-coefficient slice Q (G kron I) Q^-1, G in M2(F_p)
    scalar_slice = basis[0::2]
    members = list(_symplectic_in_span(scalar_slice, p))
    witness = None
    for X, Y in itertools.combinations(members, 2):
        if ((X @ Y - Y @ X) % p).any():
            witness = (X, Y)
            break
    if witness is None:
        raise AssertionError("no non-commuting pair found")
    sp_order = sum(1 for _ in _symplectic_in_span(basis, p)) if p <= count_limit else None
    return CentralizerReport(p, kind, len(block), commutative, sp_order, witness)
