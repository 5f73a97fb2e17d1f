"""Arithmetic over F_p: additive and multiplicative characters, Gauss sums.

Residues are plain Python ints (or integer numpy arrays) taken mod p.  The
additive character is fixed once and for all as psi(x) = exp(2 pi i x / p).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "check_prime",
    "is_prime",
    "primes_between",
    "inv",
    "half",
    "psi",
    "legendre",
    "legendre_table",
    "gauss_sum",
    "gauss_coefficient",
    "CyclicCharacter",
    "cyclic_characters",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> int:
    """Validate the working prime; small primes and p = 2 are rejected."""
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p < 5:
        raise ValueError(f"p={p} is too small: odd primes p >= 5 are required")
    return p


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def inv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def half(p: int) -> int:
    """The residue 2^-1 mod p."""
    return (p + 1) // 2


def psi(x, p: int):
    """Additive character exp(2 pi i x / p); works elementwise on arrays."""
    x = np.mod(x, p)
    out = np.exp(2j * np.pi * x / p)
    if np.ndim(out) == 0:
        return complex(out)
    return out


@lru_cache(maxsize=None)
def _legendre_tuple(p: int) -> tuple[int, ...]:
    table = [-1] * p
    table[0] = 0
    for x in range(1, p):
        table[x * x % p] = 1
    return tuple(table)


def legendre_table(p: int) -> np.ndarray:
    """Array s with s[a] = legendre(a, p) for a in 0..p-1."""
    return np.array(_legendre_tuple(p), dtype=np.int64)


def legendre(a, p: int):
    """Legendre symbol with the convention legendre(0) = 0."""
    table = legendre_table(p)
    out = table[np.mod(a, p)]
    if np.ndim(out) == 0:
        return int(out)
    return out


def gauss_sum(c: int, p: int) -> complex:
    """sum_t psi(c t) legendre(t)."""
    t = np.arange(p)
    return complex(np.sum(psi(c * t, p) * legendre_table(p)))


def gauss_coefficient(b: int, p: int) -> complex:
    """Normalising coefficient (1/p) sum_t psi(b t / 2) legendre(t) of the big-cell kernel.

    Its modulus is 1/sqrt(p) for every b != 0.
    """
    b = int(b) % p
    if b == 0:
        raise ValueError("gauss_coefficient needs b != 0")
    return gauss_sum(half(p) * b, p) / p


@dataclass(frozen=True)
class CyclicCharacter:
    """Character of a cyclic group of order ``order`` sending the generator to exp(2 pi i index/order)."""

    order: int
    index: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "index", self.index % self.order)

    def __call__(self, k):
        """Value on generator**k."""
        out = np.exp(2j * np.pi * self.index * np.asarray(k) / self.order)
        if np.ndim(out) == 0:
            return complex(out)
        return out

    def __mul__(self, other: "CyclicCharacter") -> "CyclicCharacter":
        if self.order != other.order:
            raise ValueError("characters of different groups")
        return CyclicCharacter(self.order, self.index + other.index)

    def conj(self) -> "CyclicCharacter":
        return CyclicCharacter(self.order, -self.index)

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    @property
    def is_quadratic(self) -> bool:
        return 2 * self.index == self.order


def cyclic_characters(m: int) -> list[CyclicCharacter]:
    if m < 1:
        raise ValueError("m must be positive")
    return [CyclicCharacter(m, j) for j in range(m)]
