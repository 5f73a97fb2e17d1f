"""Oriented Lagrangians, their Heisenberg models, and the canonical intertwiners.

A model vector of the oriented line L is a function f on H with
f((l, s) e) = psi(s) f(e) for l in L.  It is determined by its values on the
transversal {(t c, 0) : t in F_p}, where c is a fixed complement of L, so it is
stored as a length-p vector.  For L = span(e2) the complement is e1 and the
right translation action of H reproduces pi_heis exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import check_prime, half, inv, legendre, psi
from .heisenberg import HeisenbergElement, h_mul
from .symplectic import mat_apply, mat_inv, omega

__all__ = [
    "OrientedLagrangian",
    "enumerate_oriented_lagrangians",
    "reference_lagrangian",
    "evaluation_matrix",
    "right_action",
    "theta_hat",
    "normalization_a",
    "theta",
    "associativity_error",
    "lemma_constants",
    "translate_model",
    "canonical_weil",
    "fit_scalar",
    "model_space_dimension",
]


def _normalize_line(v, p: int) -> tuple[int, int]:
    a, b = (int(x) % p for x in v)
    if a:
        return (1, b * inv(a, p) % p)
    if b:
        return (0, 1)
    raise ValueError("the zero vector spans no line")


def _scalar_on(base, v) -> int:
    # t with v = t * base, for base a normalized direction
    return int(v[0]) if base[0] else int(v[1])


@dataclass(frozen=True)
class OrientedLagrangian:
    """A line span(direction) with the sign ``orientation`` attached to the direction vector."""

    direction: tuple[int, int]
    orientation: int
    p: int

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        d = tuple(int(x) % self.p for x in self.direction)
        norm = _normalize_line(d, self.p)
        if norm != d:
            # re-express the sign on the canonical representative
            t = _scalar_on(norm, d)
            object.__setattr__(self, "orientation", self.orientation * legendre(inv(t, self.p), self.p))
        object.__setattr__(self, "direction", norm)

    @property
    def complement(self) -> tuple[int, int]:
        return (0, 1) if self.direction[0] else (1, 0)

    def contains(self, v) -> bool:
        return omega(self.direction, v, self.p) == 0

    def coordinate(self, v) -> int:
        """t with v = t * direction; raises if v is not on the line."""
        if not self.contains(v):
            raise ValueError(f"{tuple(v)} is not on the line spanned by {self.direction}")
        a, b = (int(x) % self.p for x in v)
        return a if self.direction[0] else b

    def sign(self, v) -> int:
        """rho_L(v) = legendre(t) * orientation for v = t * direction."""
        return legendre(self.coordinate(v), self.p) * self.orientation

    def flipped(self) -> "OrientedLagrangian":
        return OrientedLagrangian(self.direction, -self.orientation, self.p)

    def points(self) -> list[tuple[int, int]]:
        l0, l1 = self.direction
        return [(t * l0 % self.p, t * l1 % self.p) for t in range(self.p)]

    def split(self, v) -> tuple[int, int]:
        """(s, t) with v = s direction + t complement."""
        p = self.p
        (l0, l1), (c0, c1) = self.direction, self.complement
        det_inv = inv(l0 * c1 - l1 * c0, p)
        a, b = v
        return ((a * c1 - b * c0) * det_inv % p, (l0 * b - l1 * a) * det_inv % p)


def enumerate_oriented_lagrangians(p: int) -> list[OrientedLagrangian]:
    p = check_prime(p)
    lines = [(1, m) for m in range(p)] + [(0, 1)]
    return [OrientedLagrangian(l, o, p) for l in lines for o in (1, -1)]


def reference_lagrangian(p: int) -> OrientedLagrangian:
    """span(e2) with orientation +1; its model is identified with functions on span(e1)."""
    return OrientedLagrangian((0, 1), 1, p)


def evaluation_matrix(L: OrientedLagrangian, points) -> np.ndarray:
    """Rows E such that f(e_k) = (E f)_k for the stored transversal values f of a model vector.

    points is a sequence of (v, s) pairs in H.
    """
    p = L.p
    w_lc = omega(L.direction, L.complement)
    E = np.zeros((len(points), p), dtype=complex)
    for k, (v, s) in enumerate(points):
        a, t = L.split(v)
        E[k, t] = psi(s - half(p) * a * t * w_lc, p)
    return E


def _transversal(L: OrientedLagrangian) -> list[tuple[tuple[int, int], int]]:
    c0, c1 = L.complement
    return [((t * c0 % L.p, t * c1 % L.p), 0) for t in range(L.p)]


def right_action(L: OrientedLagrangian, h: HeisenbergElement) -> np.ndarray:
    """(R_h f)(e) = f(e h) on the model of L."""
    pts = []
    for v, s in _transversal(L):
        e = h_mul(HeisenbergElement(v, s, L.p), h)
        pts.append((e.v, e.lam))
    return evaluation_matrix(L, pts)


@lru_cache(maxsize=4096)
def theta_hat(L1: OrientedLagrangian, L2: OrientedLagrangian) -> np.ndarray:
    """Averaging operator f -> (e -> sum_{l in L2} f(l e)) from the model of L1 to that of L2."""
    p = L1.p
    acc = np.zeros((p, p), dtype=complex)
    for t, (v, s) in enumerate(_transversal(L2)):
        e = HeisenbergElement(v, s, p)
        pts = [(x.v, x.lam) for x in (h_mul(HeisenbergElement(l, 0, p), e) for l in L2.points())]
        acc[t] = evaluation_matrix(L1, pts).sum(axis=0)
    acc.setflags(write=False)
    return acc


def normalization_a(L1: OrientedLagrangian, L2: OrientedLagrangian, xi=None) -> complex:
    """(1/p) sum_{l in L1} psi(omega(l, xi)/2) rho_1(l) rho_2(xi), xi a nonzero vector of L2."""
    p = L1.p
    if L1.direction == L2.direction:
        raise ValueError("normalization_a needs lines in general position")
    if xi is None:
        xi = L2.direction
    xi = tuple(int(x) % p for x in xi)
    if xi == (0, 0) or not L2.contains(xi):
        raise ValueError(f"xi={xi} must be a nonzero vector of L2")
    total = sum(psi(half(p) * omega(l, xi), p) * L1.sign(l) for l in L1.points())
    return complex(total * L2.sign(xi) / p)


@lru_cache(maxsize=4096)
def theta(L1: OrientedLagrangian, L2: OrientedLagrangian) -> np.ndarray:
    """Canonical intertwiner from the model of L1 to the model of L2."""
    if L1.p != L2.p:
        raise ValueError("modulus mismatch")
    if L1.direction == L2.direction:
        out = np.eye(L1.p, dtype=complex) * (1 if L1.orientation == L2.orientation else -1)
    else:
        out = normalization_a(L1, L2) * theta_hat(L1, L2)
    out.setflags(write=False)
    return out


def associativity_error(L1, L2, L3) -> float:
    return float(np.max(np.abs(theta(L2, L3) @ theta(L1, L2) - theta(L1, L3))))


def lemma_constants(L1, L2, L3, xi=None) -> tuple[complex, complex]:
    """(C, D) for three lines in general position.

    r maps l in L2 to the unique vector of L3 with l + r(l) in L1.
    C = sum_{l in L2} psi(omega(l, r(l))/2),
    D = (1/p) sum_{l in L2} psi(-omega(l, r(xi))/2) rho_2(l) rho_2(xi).
    """
    p = L1.p
    if len({L1.direction, L2.direction, L3.direction}) < 3:
        raise ValueError("lemma_constants needs three distinct lines")
    ratio = -omega(L1.direction, L2.direction) * inv(omega(L1.direction, L3.direction), p) % p

    def r(v):
        u = L2.coordinate(v) * ratio % p
        return (u * L3.direction[0] % p, u * L3.direction[1] % p)

    if xi is None:
        xi = L2.direction
    C = sum(psi(half(p) * omega(l, r(l)), p) for l in L2.points())
    rx = r(xi)
    D = sum(psi(-half(p) * omega(l, rx), p) * L2.sign(l) for l in L2.points()) * L2.sign(xi) / p
    return complex(C), complex(D)


def translate_model(g, L: OrientedLagrangian) -> tuple[OrientedLagrangian, np.ndarray]:
    """f -> f^g with f^g(e) = f(g^-1 e): returns (g L with transported orientation, matrix)."""
    p = L.p
    g = tuple(int(x) % p for x in g)
    gi = mat_inv(g, p)
    gl = mat_apply(g, L.direction, p)
    target_dir = _normalize_line(gl, p)
    # orientation of g L at its representative: rho_L(g^-1 representative)
    gL = OrientedLagrangian(target_dir, L.sign(mat_apply(gi, target_dir, p)), p)
    pts = [(mat_apply(gi, v, p), s) for v, s in _transversal(gL)]
    return gL, evaluation_matrix(L, pts)


def canonical_weil(g, p: int) -> np.ndarray:
    """theta(g V2, V2) composed with f -> f^g, acting on the model of V2 = span(e2)."""
    p = check_prime(p)
    ref = reference_lagrangian(p)
    gL, T = translate_model(g, ref)
    return theta(gL, ref) @ T


def fit_scalar(A: np.ndarray, B: np.ndarray) -> tuple[complex, float]:
    """Least-squares c with A ~ c B, and the residual max |A - c B|."""
    b = B.reshape(-1)
    c = complex(np.vdot(b, A.reshape(-1)) / np.vdot(b, b))
    return c, float(np.max(np.abs(A - c * B)))


def model_space_dimension(L: OrientedLagrangian) -> int:
    """Rank of the equivariance projector on all functions on H (p^3 points)."""
    p = L.p
    n = p ** 3

    def index(e: HeisenbergElement) -> int:
        return (e.v[0] * p + e.v[1]) * p + e.lam

    P = np.zeros((n, n), dtype=complex)
    for a in range(p):
        for b in range(p):
            for s in range(p):
                e = HeisenbergElement((a, b), s, p)
                row = index(e)
                for l in L.points():
                    for lam in range(p):
                        P[row, index(h_mul(HeisenbergElement(l, lam, p), e))] += psi(-lam, p)
    P /= p * p
    return int(np.linalg.matrix_rank(P, tol=1e-8))
