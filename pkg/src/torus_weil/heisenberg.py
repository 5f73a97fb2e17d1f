"""The finite Heisenberg group H = V x F_p and its Schroedinger representation.

States are functions on the line V1 = span(e1), indexed by x = 0..p-1.  With
this choice the operator of v = (lam, mu) has kernel

    pi(v)[x, y] = psi(lam mu / 2 + mu x) * [y == x + lam],

and pi_heis is a homomorphism for the group law
(v, s)(v', s') = (v + v', s + s' + omega(v, v') / 2).
Consequently pi(u) pi(v) = psi(omega(u, v) / 2) pi(u + v).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .arith import check_prime, half, psi
from .symplectic import omega

__all__ = [
    "HeisenbergElement",
    "h_mul",
    "translation",
    "modulation",
    "pi_vector",
    "pi_heis",
    "pi_kernel",
    "apply_pi",
    "commutant_dimension",
]


@dataclass(frozen=True)
class HeisenbergElement:
    v: tuple[int, int]
    lam: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(x) % self.p for x in self.v))
        object.__setattr__(self, "lam", int(self.lam) % self.p)

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return h_mul(self, other)

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement((-self.v[0], -self.v[1]), -self.lam, self.p)

    @classmethod
    def identity(cls, p: int) -> "HeisenbergElement":
        return cls((0, 0), 0, p)


def h_mul(e: HeisenbergElement, f: HeisenbergElement) -> HeisenbergElement:
    if e.p != f.p:
        raise ValueError(f"modulus mismatch: {e.p} vs {f.p}")
    p = e.p
    v = (e.v[0] + f.v[0], e.v[1] + f.v[1])
    return HeisenbergElement(v, e.lam + f.lam + half(p) * omega(e.v, f.v), p)


def translation(shift: int, p: int) -> np.ndarray:
    """(L f)(x) = f(x + shift)."""
    return np.roll(np.eye(p, dtype=complex), shift, axis=1)


def modulation(mu: int, p: int) -> np.ndarray:
    """Multiplication by psi(omega(x e1, mu e2)) = psi(mu x)."""
    return np.diag(psi(mu * np.arange(p), p))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=4096)
def _pi_cached(lam: int, mu: int, p: int) -> np.ndarray:
    x = np.arange(p)
    K = np.zeros((p, p), dtype=complex)
    K[x, (x + lam) % p] = psi(half(p) * lam * mu + mu * x, p)
    return _frozen(K)


def pi_vector(v, p: int) -> np.ndarray:
    """Operator pi(v) of v = (lam, mu) in V (read-only array)."""
    p = check_prime(p)
    lam, mu = (int(c) % p for c in v)
    return _pi_cached(lam, mu, p)


def pi_heis(e: HeisenbergElement) -> np.ndarray:
    """psi(lam) pi(v) for e = (v, lam)."""
    return psi(e.lam, e.p) * pi_vector(e.v, e.p)


def pi_kernel(e: HeisenbergElement) -> np.ndarray:
    """Entrywise kernel psi(q p / 2 + p x + lam) [y = x + q], with (q, p) the coordinates of e.v.

    Built entry by entry as an independent check on pi_heis.
    """
    p = e.p
    q, m = e.v
    K = np.zeros((p, p), dtype=complex)
    for x in range(p):
        for y in range(p):
            if (y - x - q) % p == 0:
                K[x, y] = psi(half(p) * q * m + m * x + e.lam, p)
    return K


def apply_pi(v, f: np.ndarray, p: int) -> np.ndarray:
    """pi(v) f in O(p) (shift and phase), for sweeps over many v."""
    lam, mu = (int(c) % p for c in v)
    x = np.arange(p)
    return psi(half(p) * lam * mu + mu * x, p) * np.roll(f, -lam, axis=0)


def commutant_dimension(ops, tol: float = 1e-8) -> int:
    """Dimension of {X : X M = M X for all M in ops}.

    Computed as the nullity of the positive semidefinite Gram matrix of the
    stacked Sylvester maps X -> X M - M X.
    """
    ops = [np.asarray(M, dtype=complex) for M in ops]
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].shape[0]
    if any(M.shape != (n, n) for M in ops):
        raise ValueError("operators must share one square shape")
    eye = np.eye(n)
    gram = np.zeros((n * n, n * n), dtype=complex)
    for M in ops:
        # column-major vec: vec(XM - MX) = (M^T kron I - I kron M) vec(X)
        A = np.kron(M.T, eye) - np.kron(eye, M)
        gram += A.conj().T @ A
    w = scipy.linalg.eigvalsh(gram)
    scale = max(1.0, float(np.max(np.abs(w))))
    return int(np.sum(w < tol * scale))
