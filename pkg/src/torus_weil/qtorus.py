"""The quantum torus at rational Planck constant hbar = M/N, in dimension 2n for n = 1, 2.

Two algebras are modelled, both spanned by symbols s(xi), xi in Z^{2n}:

* ``"rieffel"``: s(xi + eta) = exp(pi i hbar omega(xi, eta)) s(xi) s(eta);
* ``"twisted"``: the same relation with an extra sign (-1)^(eps omega(xi, eta)), eps = MN mod 2.

An irreducible representation sends s(N xi) to a scalar q(xi); q is a
character up to the sign (-1)^(k omega(xi, eta)) with k = MN mod 2 for the
Rieffel algebra and k = 0 for the twisted one.  Lattice vectors are written
(q_1..q_n, p_1..p_n).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .heisenberg import commutant_dimension, pi_vector
from .symplectic import standard_form

__all__ = [
    "RationalPlanck",
    "TwistedCharacter",
    "QuantumTorusRep",
    "sp_generators",
    "fixed_twisted_character",
    "build_irrep",
    "attached_character",
    "twisted_law_error",
    "gamma_invariance_check",
    "uniqueness_search",
    "relation_error",
    "poisson_bracket",
    "semiclassical_commutator",
    "heisenberg_relation_error",
    "irreducible",
]


@dataclass(frozen=True)
class RationalPlanck:
    M: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if math.gcd(self.M, self.N) != 1:
            raise ValueError(f"gcd({self.M}, {self.N}) != 1")

    @property
    def hbar(self) -> float:
        return self.M / self.N

    @property
    def epsilon(self) -> int:
        return (self.M * self.N) % 2

    @property
    def gamma(self) -> complex:
        return complex(np.exp(-2j * np.pi * self.M / self.N))


def _omega_int(u, v) -> int:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    n = u.size // 2
    return int(u[:n] @ v[n:] - u[n:] @ v[:n])


@dataclass(frozen=True)
class TwistedCharacter:
    """q on Z^{2n} from its basis values, with q(xi + eta) = (-1)^(twist omega) q(xi) q(eta)."""

    basis_values: tuple[complex, ...]
    twist: int

    def __call__(self, xi) -> complex:
        xi = [int(c) for c in np.asarray(xi).reshape(-1)]
        if len(xi) != len(self.basis_values):
            raise ValueError("dimension mismatch")
        n = len(xi) // 2
        # q(sum x_i e_i): basis powers times the signs of the pairwise products
        val = complex(np.prod([complex(b) ** x for b, x in zip(self.basis_values, xi)]))
        cross = sum(xi[k] * xi[n + k] for k in range(n))
        return val * (-1) ** (self.twist * cross % 2)

    def act(self, B) -> "TwistedCharacter":
        """q^B(xi) = q(B^-1 xi)."""
        B = np.asarray(B, dtype=np.int64)
        Binv = np.rint(np.linalg.inv(B)).astype(np.int64)
        dim = len(self.basis_values)
        return TwistedCharacter(tuple(self(Binv @ np.eye(dim, dtype=np.int64)[k]) for k in range(dim)), self.twist)


def sp_generators(n: int) -> list[np.ndarray]:
    """Generators of Sp(2n, Z): S, T for n = 1; J and the unipotents [[I, E], [0, I]] for n = 2."""
    if n == 1:
        return [np.array([[0, 1], [-1, 0]]), np.array([[1, 1], [0, 1]])]
    if n != 2:
        raise ValueError("only n = 1, 2 are supported")
    J = standard_form(2)
    eye = np.eye(2, dtype=np.int64)
    out = [J]
    for E in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]):
        out.append(np.block([[eye, np.array(E)], [np.zeros((2, 2), dtype=np.int64), eye]]))
    return out


def fixed_twisted_character(h: RationalPlanck) -> TwistedCharacter:
    """q_o(m, n) = (-1)^(MN (mn + m + n)) for the Rieffel torus in dimension 2."""
    s = (-1) ** h.epsilon
    return TwistedCharacter((s, s), h.epsilon)


@dataclass(frozen=True)
class QuantumTorusRep:
    h: RationalPlanck
    n: int
    algebra: str

    @property
    def dim(self) -> int:
        return self.h.N ** self.n

    @property
    def sign_exponent(self) -> int:
        """Exponent of (-1)^omega in the defining relation."""
        return self.h.epsilon if self.algebra == "twisted" else 0

    @cached_property
    def _clock_shift(self):
        N = self.h.N
        X = np.roll(np.eye(N, dtype=complex), 1, axis=1)  # (X f)(k) = f(k + 1)
        C = np.diag(self.h.gamma ** np.arange(N))
        if self.algebra == "rieffel":
            # rescaling by (-1)^M puts the attached character at q_o
            X, C = (-1) ** self.h.M * X, (-1) ** self.h.M * C
        return X, C

    def _power(self, A: np.ndarray, k: int) -> np.ndarray:
        return np.linalg.matrix_power(A, k % (2 * self.h.N))

    @lru_cache(maxsize=4096)
    def _op(self, xi: tuple[int, ...]) -> np.ndarray:
        n = self.n
        m, k = np.array(xi[:n]), np.array(xi[n:])
        X, C = self._clock_shift
        out = np.ones((1, 1), dtype=complex)
        for a, b in zip(m, k):
            out = np.kron(out, self._power(X, int(a)) @ self._power(C, int(b)))
        dot = int(m @ k)
        phase = np.exp(1j * np.pi * self.h.hbar * dot) * (-1) ** (self.sign_exponent * dot % 2)
        out = phase * out
        out.setflags(write=False)
        return out

    def op(self, xi) -> np.ndarray:
        """pi(xi) = sign * exp(pi i hbar m.k) X^m C^k for xi = (m, k)."""
        xi = tuple(int(c) for c in np.asarray(xi).reshape(-1))
        if len(xi) != 2 * self.n:
            raise ValueError(f"expected a vector of length {2 * self.n}")
        return self._op(xi)

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(c) for c in row) for row in np.eye(2 * self.n, dtype=np.int64)]

    def quantize(self, coeffs: dict) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for xi, a in coeffs.items():
            out += a * self.op(xi)
        return out


def build_irrep(h: RationalPlanck, n: int = 1, algebra: str | None = None) -> QuantumTorusRep:
    """N^n-dimensional clock/shift representation; Rieffel algebra for n = 1, twisted for n = 2 by default."""
    if n not in (1, 2):
        raise ValueError("only n = 1, 2 are supported")
    if algebra is None:
        algebra = "rieffel" if n == 1 else "twisted"
    if algebra not in ("rieffel", "twisted"):
        raise ValueError(f"unknown algebra {algebra!r}")
    return QuantumTorusRep(h, n, algebra)


def attached_character(rep: QuantumTorusRep, tol: float = 1e-10) -> TwistedCharacter:
    """Read q off pi(N e_i) = q(e_i) I."""
    vals = []
    for e in rep.basis():
        A = rep.op(tuple(rep.h.N * c for c in e))
        c = A[0, 0]
        if np.max(np.abs(A - c * np.eye(rep.dim))) > tol:
            raise AssertionError("pi(N e) is not scalar")
        vals.append(complex(c))
    twist = (rep.sign_exponent * rep.h.N ** 2 + rep.h.M * rep.h.N) % 2
    return TwistedCharacter(tuple(vals), twist)


def _box(dim: int, radius: int):
    return itertools.product(range(-radius, radius + 1), repeat=dim)


def twisted_law_error(q: TwistedCharacter, radius: int = 10, sign_exponent: int | None = None) -> float:
    """max |q(xi + eta) - (-1)^(k omega) q(xi) q(eta)| over a box of pairs (n = 1)."""
    k = q.twist if sign_exponent is None else sign_exponent
    dim = len(q.basis_values)
    pts = list(_box(dim, radius)) if dim == 2 else list(_box(dim, min(radius, 2)))
    vals = {xi: q(xi) for xi in pts}
    worst = 0.0
    for xi in pts:
        for eta in pts:
            s = tuple(a + b for a, b in zip(xi, eta))
            lhs = q(s)
            rhs = (-1) ** (k * _omega_int(xi, eta) % 2) * vals[xi] * vals[eta]
            worst = max(worst, abs(lhs - rhs))
    return worst


def gamma_invariance_check(q, B, radius: int = 10) -> float:
    """max |q(B^-1 xi) / q(xi) - 1| over the box; q may be a TwistedCharacter or a RationalPlanck."""
    if isinstance(q, RationalPlanck):
        q = attached_character(build_irrep(q, 1))
    B = np.asarray(B, dtype=np.int64)
    if round(np.linalg.det(B)) != 1:
        raise ValueError("B must have determinant 1")
    Binv = np.rint(np.linalg.inv(B)).astype(np.int64)
    dim = len(q.basis_values)
    r = radius if dim == 2 else min(radius, 3)
    worst = 0.0
    for xi in _box(dim, r):
        worst = max(worst, abs(q(Binv @ np.array(xi)) / q(xi) - 1))
    return worst


def uniqueness_search(h: RationalPlanck, n: int = 1, twist: int | None = None) -> list[TwistedCharacter]:
    """All twisted characters with 2N-th root of unity basis values fixed by the Sp(2n, Z) generators."""
    if twist is None:
        twist = h.epsilon if n == 1 else 0
    roots = [complex(np.exp(1j * np.pi * k / h.N)) for k in range(2 * h.N)]
    found = []
    for vals in itertools.product(roots, repeat=2 * n):
        q = TwistedCharacter(vals, twist)
        ok = True
        for B in sp_generators(n):
            qb = q.act(B)
            if max(abs(a - b) for a, b in zip(qb.basis_values, q.basis_values)) > 1e-9:
                ok = False
                break
        if ok:
            found.append(q)
    return found


def relation_error(rep: QuantumTorusRep, radius: int = 2) -> float:
    """max |pi(xi + eta) - (-1)^(eps omega) exp(pi i hbar omega) pi(xi) pi(eta)| on a box."""
    worst = 0.0
    pts = list(_box(2 * rep.n, radius))
    for xi in pts:
        for eta in pts:
            w = _omega_int(xi, eta)
            c = (-1) ** (rep.sign_exponent * w % 2) * np.exp(1j * np.pi * rep.h.hbar * w)
            s = tuple(a + b for a, b in zip(xi, eta))
            worst = max(worst, float(np.max(np.abs(rep.op(s) - c * rep.op(xi) @ rep.op(eta)))))
    return worst


def poisson_bracket(fcoeffs: dict, gcoeffs: dict) -> dict:
    """{e_xi, e_eta} = 2 pi omega(xi, eta) e_{xi + eta}, extended bilinearly.

    This is the limit of (i / hbar)[pi(e_xi), pi(e_eta)] for the relation above.
    """
    out: dict = {}
    for xi, a in fcoeffs.items():
        for eta, b in gcoeffs.items():
            w = _omega_int(xi, eta)
            if w:
                s = tuple(x + y for x, y in zip(xi, eta))
                out[s] = out.get(s, 0) + 2 * np.pi * w * a * b
    return {k: v for k, v in out.items() if v != 0}


def semiclassical_commutator(fcoeffs: dict, gcoeffs: dict, N_list) -> list[tuple[int, float]]:
    """Spectral norm of (i/hbar)[Op f, Op g] - Op({f, g}) at hbar = 1/N."""
    bracket = poisson_bracket(fcoeffs, gcoeffs)
    rows = []
    for N in N_list:
        rep = build_irrep(RationalPlanck(1, N), 1)
        F, G = rep.quantize(fcoeffs), rep.quantize(gcoeffs)
        D = 1j * N * (F @ G - G @ F) - rep.quantize(bracket)
        rows.append((int(N), float(np.linalg.norm(D, 2))))
    return rows


def heisenberg_relation_error(p: int, radius: int = 2) -> float:
    """The mod-p Schroedinger operators, lifted to Z^2, obey the twisted relation at hbar = -1/p."""
    h = RationalPlanck(-1, p)
    worst = 0.0
    for xi in _box(2, radius):
        for eta in _box(2, radius):
            w = _omega_int(xi, eta)
            c = (-1) ** (h.epsilon * w % 2) * np.exp(1j * np.pi * h.hbar * w)
            s = (xi[0] + eta[0], xi[1] + eta[1])
            worst = max(worst, float(np.max(np.abs(pi_vector(s, p) - c * pi_vector(xi, p) @ pi_vector(eta, p)))))
    return worst


def irreducible(rep: QuantumTorusRep) -> bool:
    return commutant_dimension([rep.op(e) for e in rep.basis()]) == 1
