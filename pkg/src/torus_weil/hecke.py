"""Hecke tori, their eigenvectors and Wigner values, and the exponential sums around them.

Character pairing: the projector attached to chi is

    P_chi = (1/|T|) sum_B conj(chi(B)) rho(B),

so that rho(B) v = chi(B) v on its range.  Characters are indexed by powers of
the chosen generator g of T: chi_j(g^k) = exp(2 pi i j k / |T|).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg
import scipy.stats

from .arith import CyclicCharacter, check_prime, half, inv, legendre, psi
from .heisenberg import pi_vector
from .symplectic import (
    IDENTITY,
    as_matrix,
    element_order,
    is_hyperbolic,
    mat_apply,
    mat_inv,
    mat_mul,
    sl2_elements,
    trace,
)
from .weil import rho

__all__ = [
    "ParabolicPrimeError",
    "NotHyperbolicError",
    "MultiplicityTwoError",
    "NotSplitError",
    "TorusKind",
    "HeckeTorus",
    "WignerValue",
    "hecke_torus",
    "brute_force_centralizer",
    "projector",
    "eigenspace_rank",
    "hecke_eigenvector",
    "hecke_basis",
    "wigner",
    "wigner_matrix",
    "trace_function",
    "trace_function_table",
    "diagonal_trace",
    "restated_sum",
    "restated_sum_table",
    "diagonalizer",
    "split_formula",
    "averaged_operator",
    "l_norm_identity",
    "bound_row",
    "SatoTateRow",
    "arcsine_cdf",
    "sato_tate_row",
    "sato_tate",
]


class ParabolicPrimeError(ValueError):
    """tr(A)^2 - 4 vanishes mod p: the centralizer is not a torus."""


class NotHyperbolicError(ValueError):
    pass


class MultiplicityTwoError(ValueError):
    """The eigenspace of the requested character is two-dimensional."""


class NotSplitError(ValueError):
    pass


class TorusKind(enum.Enum):
    SPLIT = "Split"
    INERT = "Inert"


@dataclass(frozen=True)
class HeckeTorus:
    A: tuple[int, int, int, int]
    p: int
    kind: TorusKind
    generator: tuple[int, int, int, int]
    elements: tuple[tuple[int, int, int, int], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict:
        return {B: k for k, B in enumerate(self.elements)}

    def index_of(self, B) -> int:
        """k with B = generator**k."""
        B = tuple(int(x) % self.p for x in B)
        try:
            return self._index[B]
        except KeyError:
            raise ValueError(f"{B} is not in the torus") from None

    def characters(self) -> list[CyclicCharacter]:
        return [CyclicCharacter(self.order, j) for j in range(self.order)]

    @property
    def quadratic(self) -> CyclicCharacter:
        return CyclicCharacter(self.order, self.order // 2)

    def chi(self, chi: CyclicCharacter, B) -> complex:
        return chi(self.index_of(B))

    @cached_property
    def rho_stack(self) -> np.ndarray:
        """rho(generator**k) for k = 0..order-1, stacked."""
        out = np.stack([rho(B, self.p) for B in self.elements])
        out.setflags(write=False)
        return out


@dataclass(frozen=True)
class WignerValue:
    chi: CyclicCharacter
    xi: tuple[int, int]
    value: complex
    p: int

    @property
    def normalized(self) -> complex:
        """value * sqrt(p) / 2; the bound says |normalized| <= 1."""
        return self.value * np.sqrt(self.p) / 2


def _check_chi(T: HeckeTorus, chi: CyclicCharacter):
    if chi.order != T.order:
        raise ValueError(f"character of order {chi.order} does not match |T| = {T.order}")


def hecke_torus(A, p: int) -> HeckeTorus:
    """Centralizer of A mod p in SL2(F_p), with kind and a generator."""
    p = check_prime(p)
    A = as_matrix(A)
    try:
        hyperbolic = is_hyperbolic(A)
    except ValueError as exc:
        raise NotHyperbolicError(str(exc)) from None
    if not hyperbolic:
        raise NotHyperbolicError(f"|tr A| = {abs(trace(A))} <= 2")
    disc = (trace(A) ** 2 - 4) % p
    if disc == 0:
        raise ParabolicPrimeError(f"tr(A)^2 - 4 = 0 mod {p}")
    Ab = tuple(x % p for x in A)
    # A is not scalar mod p, so its commutant in M2(F_p) is {x I + y A}
    members = []
    for x in range(p):
        for y in range(p):
            B = ((x + y * Ab[0]) % p, y * Ab[1] % p, y * Ab[2] % p, (x + y * Ab[3]) % p)
            if (B[0] * B[3] - B[1] * B[2]) % p == 1:
                members.append(B)
    kind = TorusKind.SPLIT if legendre(disc, p) == 1 else TorusKind.INERT
    m = len(members)
    expected = p - 1 if kind is TorusKind.SPLIT else p + 1
    if m != expected:
        raise AssertionError(f"centralizer has {m} elements, expected {expected}")
    generator = next(B for B in sorted(members) if element_order(B, p) == m)
    powers = [IDENTITY]
    for _ in range(m - 1):
        powers.append(mat_mul(powers[-1], generator, p))
    return HeckeTorus(Ab, p, kind, generator, tuple(powers))


def brute_force_centralizer(A, p: int) -> set:
    """Centralizer by filtering all of SL2(F_p); for cross-checks at small p."""
    Ab = tuple(int(x) % p for x in as_matrix(A))
    return {B for B in sl2_elements(p) if mat_mul(B, Ab, p) == mat_mul(Ab, B, p)}


def projector(T: HeckeTorus, chi: CyclicCharacter) -> np.ndarray:
    _check_chi(T, chi)
    weights = np.conj(chi(np.arange(T.order)))
    return np.tensordot(weights, T.rho_stack, axes=1) / T.order


def eigenspace_rank(T: HeckeTorus, chi: CyclicCharacter) -> int:
    return int(round(np.trace(projector(T, chi)).real))


def _unit_phase(v: np.ndarray) -> np.ndarray:
    # fix the phase: largest entry (first among ties) real and positive
    k = int(np.argmax(np.round(np.abs(v), 12)))
    return v * (abs(v[k]) / v[k]) / np.linalg.norm(v)


def hecke_eigenvector(T: HeckeTorus, chi: CyclicCharacter) -> np.ndarray:
    """Unit vector spanning the chi-eigenspace of the torus."""
    P = projector(T, chi)
    r = int(round(np.trace(P).real))
    if r == 2:
        raise MultiplicityTwoError(f"character {chi.index} of the split torus at p={T.p} has a 2-dimensional eigenspace")
    if r != 1:
        raise ValueError(f"character {chi.index} does not occur (rank {r})")
    col = P[:, int(np.argmax(np.linalg.norm(P, axis=0)))]
    return _unit_phase(col)


def hecke_basis(T: HeckeTorus) -> dict[int, np.ndarray]:
    """All one-dimensional eigenspaces at once, from a Schur form of rho(generator).

    Returns {j: unit eigenvector} for every character index j of rank 1.
    """
    R = rho(T.generator, T.p)
    U, Z = scipy.linalg.schur(R, output="complex")
    lam = np.diag(U)
    m = T.order
    idx = np.mod(np.rint(np.angle(lam) * m / (2 * np.pi)).astype(int), m)
    if np.max(np.abs(lam - np.exp(2j * np.pi * idx / m))) > 1e-8:
        raise AssertionError("rho(generator) has eigenvalues outside the character group")
    counts = np.bincount(idx, minlength=m)
    return {int(j): _unit_phase(Z[:, k]) for k, j in enumerate(idx) if counts[j] == 1}


def wigner_matrix(v: np.ndarray, p: int) -> np.ndarray:
    """W[lam, mu] = <v | pi(lam, mu) v> for all (lam, mu), via one FFT per shift."""
    x = np.arange(p)
    lam = x[:, None]
    U = np.conj(v)[None, :] * v[(x[None, :] + lam) % p]
    S = p * np.fft.ifft(U, axis=1)
    return psi(half(p) * lam * x[None, :], p) * S


def wigner(T: HeckeTorus, chi: CyclicCharacter, xi) -> WignerValue:
    xi = tuple(int(c) % T.p for c in xi)
    if xi == (0, 0):
        raise ValueError("xi must be nonzero")
    v = hecke_eigenvector(T, chi)
    return WignerValue(chi, xi, complex(np.vdot(v, pi_vector(xi, T.p) @ v)), T.p)


def trace_function(B, xi, p: int) -> complex:
    """F(B, xi) = Tr(rho(B) pi(xi))."""
    return complex(np.sum(rho(B, p) * pi_vector(xi, p).T))


def trace_function_table(B, p: int) -> np.ndarray:
    """F(B, (lam, mu)) for all (lam, mu), indexed [lam, mu]."""
    R = rho(B, p)
    x = np.arange(p)
    lam = x[:, None]
    D = R[(x[None, :] + lam) % p, x[None, :]]  # D[lam, y] = R[y + lam, y]
    return psi(half(p) * lam * x[None, :], p) * (p * np.fft.ifft(D, axis=1))


def diagonal_trace(a: int, xi, p: int) -> complex:
    """Closed form of F(diag(a, 1/a), (lam, mu)) for a != 0, 1."""
    a %= p
    if a in (0, 1):
        raise ValueError("a must differ from 0 and 1")
    lam, mu = xi
    return legendre(a, p) * psi(half(p) * lam * mu * (a + 1) * inv(a - 1, p), p)


def restated_sum(T: HeckeTorus, chi: CyclicCharacter, xi) -> complex:
    """sum_B F(B, xi) conj(chi(B)) = |T| Tr(P_chi pi(xi))."""
    _check_chi(T, chi)
    return complex(sum(np.conj(chi(k)) * trace_function(B, xi, T.p) for k, B in enumerate(T.elements)))


def restated_sum_table(T: HeckeTorus) -> np.ndarray:
    """restated_sum for every character index j and every xi, indexed [j, lam, mu]."""
    F = np.stack([trace_function_table(B, T.p) for B in T.elements])
    # sum_k exp(-2 pi i j k / m) F_k is the DFT along k
    return np.fft.fft(F, axis=0)


def _sqrt_mod(n: int, p: int) -> int:
    n %= p
    for r in range(p):
        if r * r % p == n:
            return r
    raise ValueError(f"{n} is not a square mod {p}")


def diagonalizer(T: HeckeTorus) -> tuple[tuple[int, int, int, int], int]:
    """(S, alpha): S in SL2(F_p) with S^-1 A S = diag(alpha, 1/alpha)."""
    if T.kind is not TorusKind.SPLIT:
        raise NotSplitError(f"the torus at p={T.p} is inert")
    p = T.p
    a, b, c, d = T.A
    r = _sqrt_mod((a + d) ** 2 - 4, p)
    alpha = (a + d + r) * half(p) % p
    beta = inv(alpha, p)

    def kernel(ev):
        # nonzero solution of (A - ev) u = 0
        if b % p or (a - ev) % p:
            return (b % p, (ev - a) % p)
        return ((ev - d) % p, c % p)

    u1, u2 = kernel(alpha), kernel(beta)
    det = (u1[0] * u2[1] - u2[0] * u1[1]) % p
    k = inv(det, p)
    S = (u1[0], u2[0] * k % p, u1[1], u2[1] * k % p)
    return S, alpha


def split_formula(T: HeckeTorus, chi: CyclicCharacter, xi) -> complex:
    """(1/|T|) sum_{a != 0, 1} conj(chi(B_a)) legendre(a) psi(k (a + 1) / (a - 1)).

    B_a = S diag(a, 1/a) S^-1 runs over the torus and k = lam mu / 2 with
    (lam, mu) = S^-1 xi.  The a = 1 term is the identity, whose trace against
    pi(xi) vanishes for xi != 0, so the sum equals the Wigner value exactly.
    """
    _check_chi(T, chi)
    S, _ = diagonalizer(T)
    p = T.p
    lam, mu = mat_apply(mat_inv(S, p), xi, p)
    kappa = half(p) * lam * mu
    total = 0j
    for a in range(2, p):
        Ba = mat_mul(mat_mul(S, (a, 0, 0, inv(a, p)), p), mat_inv(S, p), p)
        phase = psi(kappa * (a + 1) * inv(a - 1, p), p)
        total += np.conj(T.chi(chi, Ba)) * legendre(a, p) * phase
    return complex(total / T.order)


def averaged_operator(T: HeckeTorus, xi) -> np.ndarray:
    """(1/|T|) sum_B rho(B) pi(xi) rho(B)^-1."""
    P = pi_vector(xi, T.p)
    acc = np.zeros((T.p, T.p), dtype=complex)
    for R in T.rho_stack:
        acc += R @ P @ R.conj().T
    return acc / T.order


def l_norm_identity(T: HeckeTorus, xi, N: int, max_terms: int = 10**7) -> tuple[float, complex]:
    """Both sides of Tr(|Av(xi)|^(2N)) = (p / |T|^(2N)) sum psi(sum_{i<j} omega(x_i, x_j) / 2).

    The sum runs over 2N-tuples from the orbit T xi (with multiplicity) summing to 0.
    """
    if N < 1:
        raise ValueError("N must be positive")
    p, m = T.p, T.order
    if m ** (2 * N) > max_terms:
        raise ValueError(f"|orbit|^{2 * N} = {m ** (2 * N)} exceeds the limit {max_terms}")
    Av = averaged_operator(T, xi)
    sv = np.linalg.svd(Av, compute_uv=False)
    lhs = float(np.sum(sv ** (2 * N)))
    orbit = np.array([mat_apply(B, xi, p) for B in T.elements], dtype=np.int64)
    k = 2 * N
    total = 0j
    for head in itertools.product(range(m), repeat=k - 1):
        pts = orbit[list(head)]
        last = (-pts.sum(axis=0)) % p
        hits = np.nonzero((orbit == last).all(axis=1))[0]
        for h in hits:
            tup = np.vstack([pts, orbit[h]])
            lam, mu = tup[:, 0], tup[:, 1]
            w = np.outer(lam, mu) - np.outer(mu, lam)
            total += psi(half(p) * int(np.triu(w, 1).sum()), p)
    return lhs, complex(p * total / m ** k)


def bound_row(A, p: int) -> dict:
    """Bound check at one prime over non-quadratic chi and xi != 0.

    ``max_normalized`` is max |W| sqrt(p) / 2.  The character-sum bound 2 sqrt(p)
    only yields |W| <= 2 sqrt(p) / |T|, which exceeds 2 / sqrt(p) when the torus
    splits; ``max_sharp`` = max |W| |T| / (2 sqrt(p)) is that sharp ratio.
    """
    T = hecke_torus(A, p)
    basis = hecke_basis(T)
    q = T.quadratic.index if T.order % 2 == 0 else None
    worst = 0.0
    for j, v in basis.items():
        if j == q:
            continue
        W = wigner_matrix(v, p)
        W[0, 0] = 0
        worst = max(worst, float(np.max(np.abs(W))))
    return {"p": p, "kind": T.kind.value, "order": T.order, "characters": len(basis) - (q in basis),
            "max_normalized": worst * float(np.sqrt(p)) / 2,
            "max_sharp": worst * T.order / (2 * float(np.sqrt(p)))}


@dataclass(frozen=True)
class SatoTateRow:
    p: int
    order: int
    kind: str
    count: int
    ks: float
    max_abs: float
    values: tuple[float, ...] = field(repr=False)


def arcsine_cdf(x):
    """CDF of the projection of uniform measure on the circle to a diameter."""
    return 0.5 + np.arcsin(np.clip(x, -1.0, 1.0)) / np.pi


def sato_tate_row(A, p: int, xi=(1, 0)) -> SatoTateRow:
    """Normalized Wigner values W sqrt(p) / 2 at xi over all non-quadratic rank-one characters."""
    T = hecke_torus(A, p)
    basis = hecke_basis(T)
    q = T.quadratic.index if T.order % 2 == 0 else None
    lam, mu = (int(c) % p for c in xi)
    vals = []
    raw_max = 0.0
    for j in sorted(basis):
        if j == q:
            continue
        w = wigner_matrix(basis[j], p)[lam, mu] * np.sqrt(p) / 2
        raw_max = max(raw_max, abs(w))
        vals.append(float(np.clip(w.real, -1.0, 1.0)))
    ks = float(scipy.stats.kstest(vals, arcsine_cdf).statistic)
    return SatoTateRow(p, T.order, T.kind.value, len(vals), ks, raw_max, tuple(vals))


def sato_tate(A, primes, xi=(1, 0)) -> list[SatoTateRow]:
    return [sato_tate_row(A, p, xi) for p in primes]
