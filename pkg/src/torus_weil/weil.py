"""The Weil representation of SL2(F_p) on functions on F_p, via Bruhat-cell kernels.

For g = [[a, b], [c, d]] with b != 0 the kernel is

    a_g psi(-d x^2 / 2b + (1/b - c + a d / b) x y / 2 - a y^2 / 2b),

with a_g the Gauss coefficient of b; on the lower Borel cell g = [[a, 0], [r, 1/a]]
it is legendre(a) psi(-r x^2 / 2a) [y = x / a].  Operators act by
(K f)(x) = sum_y K[x, y] f(y), and satisfy rho(g) pi(v) rho(g)^-1 = pi(g v).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .arith import check_prime, gauss_coefficient, half, inv, legendre, psi
from .heisenberg import HeisenbergElement, pi_vector
from .symplectic import BruhatCell, bruhat_cell, mat_apply, mat_inv

__all__ = [
    "rho",
    "rho_inverse",
    "big_cell_phase",
    "egorov_check",
    "multiplicativity_error",
    "total_kernel",
    "quantize_function",
]


def _check_det(g, p: int) -> tuple[int, int, int, int]:
    g = tuple(int(x) % p for x in np.asarray(g).reshape(-1))
    if len(g) != 4:
        raise ValueError("expected a 2x2 matrix")
    a, b, c, d = g
    if (a * d - b * c) % p != 1:
        raise ValueError(f"det{g} != 1 mod {p}")
    return g


def big_cell_phase(g, x, y, p: int):
    """R_g(x, y), as a residue mod p, for g in the big cell."""
    a, b, c, d = g
    bi = inv(b, p)
    h = half(p)
    return (-h * bi * d * x * x + h * (bi - c + a * bi * d) * x * y - h * a * bi * y * y) % p


@lru_cache(maxsize=20000)
def _rho_cached(g: tuple[int, int, int, int], p: int) -> np.ndarray:
    a, b, c, d = g
    if bruhat_cell(g, p) is BruhatCell.BIG:
        X, Y = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
        K = gauss_coefficient(b, p) * psi(big_cell_phase(g, X, Y, p), p)
    else:
        ai = inv(a, p)
        x = np.arange(p)
        K = np.zeros((p, p), dtype=complex)
        K[x, ai * x % p] = legendre(a, p) * psi(-half(p) * c * ai * x * x, p)
    K.setflags(write=False)
    return K


def rho(g, p: int) -> np.ndarray:
    """rho(g) for g in SL2(F_p) (read-only, cached)."""
    p = check_prime(p)
    return _rho_cached(_check_det(g, p), p)


def rho_inverse(g, p: int) -> np.ndarray:
    return rho(mat_inv(_check_det(g, p), p), p)


def multiplicativity_error(g, h, p: int) -> float:
    gh = tuple(int(x) % p for x in (np.asarray(g).reshape(2, 2) @ np.asarray(h).reshape(2, 2)).reshape(-1))
    return float(np.max(np.abs(rho(g, p) @ rho(h, p) - rho(gh, p))))


def egorov_check(B, v, p: int) -> float:
    """max |rho(B) pi(v) rho(B)^-1 - pi(B v)|."""
    B = _check_det(B, p)
    lhs = rho(B, p) @ pi_vector(v, p) @ rho_inverse(B, p)
    return float(np.max(np.abs(lhs - pi_vector(mat_apply(B, v, p), p))))


def total_kernel(g, e: HeisenbergElement) -> np.ndarray:
    """Closed-form kernel of rho(g) pi_heis(e) on the big cell.

    R(g, e, x, y) = R_g(x, y - q) + R_e(y - q, y) with R_e(z, y) = q m / 2 + m z + lam.
    """
    p = e.p
    g = _check_det(g, p)
    if bruhat_cell(g, p) is not BruhatCell.BIG:
        raise ValueError("total_kernel is only given in closed form on the big cell; use rho(g) @ pi_heis(e)")
    q, m = e.v
    X, Y = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    Z = (Y - q) % p
    R = big_cell_phase(g, X, Z, p) + half(p) * q * m + m * Z + e.lam
    return gauss_coefficient(g[1], p) * psi(R, p)


def quantize_function(coeffs: dict, p: int) -> np.ndarray:
    """Op(f) = sum_xi a_xi pi(xi mod p) for a trigonometric polynomial {xi: a_xi}."""
    p = check_prime(p)
    out = np.zeros((p, p), dtype=complex)
    for xi, a in coeffs.items():
        out += a * pi_vector(tuple(int(c) % p for c in xi), p)
    return out
