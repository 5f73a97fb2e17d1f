"""The symplectic plane V = F_p^2, SL2 over Z and F_p, and small Sp(2n) helpers.

A 2x2 matrix [[a, b], [c, d]] is passed around as the flat tuple (a, b, c, d);
over F_p every entry is reduced to [0, p).  Vectors of V are tuples (lam, mu).
Larger symplectic matrices (used for n = 2) are integer numpy arrays.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .arith import check_prime, inv

__all__ = [
    "IDENTITY",
    "S_GEN",
    "T_GEN",
    "BruhatCell",
    "as_matrix",
    "parse_matrix",
    "parse_vector",
    "det",
    "trace",
    "omega",
    "standard_form",
    "reduce_mod_p",
    "reduce_vector",
    "mat_mul",
    "mat_inv",
    "mat_pow",
    "mat_apply",
    "is_hyperbolic",
    "bruhat_cell",
    "sl2_elements",
    "sl2_order",
    "element_order",
    "random_sl2",
    "random_vector",
    "is_symplectic",
]

IDENTITY = (1, 0, 0, 1)
S_GEN = (0, 1, -1, 0)
T_GEN = (1, 1, 0, 1)


class BruhatCell(enum.Enum):
    BIG = "BigCell"
    LOWER_BOREL = "LowerBorel"


def as_matrix(A) -> tuple[int, int, int, int]:
    """Flatten a 2x2 matrix given as nested sequence, array or 4-tuple."""
    flat = np.asarray(A).reshape(-1)
    if flat.size != 4:
        raise ValueError(f"expected a 2x2 matrix, got {flat.size} entries")
    return tuple(int(x) for x in flat)


def parse_matrix(text: str) -> tuple[int, int, int, int]:
    """Parse "a,b,c,d" (row-major)."""
    try:
        parts = [int(s) for s in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"cannot parse matrix {text!r}") from exc
    if len(parts) != 4:
        raise ValueError(f"matrix {text!r} needs exactly 4 integers")
    return tuple(parts)


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse vector {text!r}") from exc


def det(A) -> int:
    a, b, c, d = as_matrix(A)
    return a * d - b * c


def trace(A) -> int:
    a, _, _, d = as_matrix(A)
    return a + d


def standard_form(n: int) -> np.ndarray:
    """Gram matrix J of omega on Z^{2n}, coordinates (q_1..q_n, p_1..p_n)."""
    eye = np.eye(n, dtype=np.int64)
    zero = np.zeros((n, n), dtype=np.int64)
    return np.block([[zero, eye], [-eye, zero]])


def omega(u, v, p: int | None = None) -> int:
    """omega(u, v) = <u_q, v_p> - <u_p, v_q>; for n = 1 this is lam mu' - mu lam'."""
    u = np.asarray(u, dtype=np.int64).reshape(-1)
    v = np.asarray(v, dtype=np.int64).reshape(-1)
    if u.shape != v.shape or u.size % 2:
        raise ValueError(f"omega needs two vectors of equal even length, got {u.size} and {v.size}")
    n = u.size // 2
    val = int(u[:n] @ v[n:] - u[n:] @ v[:n])
    return val % p if p is not None else val


def reduce_mod_p(A, p: int) -> tuple[int, int, int, int]:
    """Reduce an integer matrix of determinant 1 to SL2(F_p)."""
    p = check_prime(p)
    A = as_matrix(A)
    if det(A) != 1:
        raise ValueError(f"det{A} = {det(A)}, expected 1")
    return tuple(x % p for x in A)


def reduce_vector(v, p: int) -> tuple[int, ...]:
    return tuple(int(x) % p for x in np.asarray(v).reshape(-1))


def mat_mul(g, h, p: int | None = None) -> tuple[int, int, int, int]:
    a, b, c, d = g
    e, f, k, l = h
    out = (a * e + b * k, a * f + b * l, c * e + d * k, c * f + d * l)
    if p is not None:
        out = tuple(x % p for x in out)
    return out


def mat_inv(g, p: int | None = None) -> tuple[int, int, int, int]:
    """Inverse of a determinant-one matrix."""
    a, b, c, d = g
    out = (d, -b, -c, a)
    if p is not None:
        if (a * d - b * c) % p != 1:
            raise ValueError("mat_inv expects det = 1")
        out = tuple(x % p for x in out)
    elif a * d - b * c != 1:
        raise ValueError("mat_inv expects det = 1")
    return out


def mat_pow(g, k: int, p: int) -> tuple[int, int, int, int]:
    if k < 0:
        return mat_pow(mat_inv(g, p), -k, p)
    out = IDENTITY
    base = tuple(x % p for x in g)
    while k:
        if k & 1:
            out = mat_mul(out, base, p)
        base = mat_mul(base, base, p)
        k >>= 1
    return out


def mat_apply(g, v, p: int | None = None) -> tuple[int, int]:
    a, b, c, d = g
    lam, mu = v
    out = (a * lam + b * mu, c * lam + d * mu)
    if p is not None:
        out = (out[0] % p, out[1] % p)
    return out


def is_hyperbolic(A) -> bool:
    A = as_matrix(A)
    if det(A) != 1:
        raise ValueError(f"det{A} = {det(A)}, expected 1")
    return abs(trace(A)) > 2


def bruhat_cell(g, p: int) -> BruhatCell:
    """Opposite Bruhat decomposition: big cell iff the upper-right entry is nonzero."""
    return BruhatCell.BIG if g[1] % p else BruhatCell.LOWER_BOREL


def sl2_order(p: int) -> int:
    return p * (p * p - 1)


@lru_cache(maxsize=8)
def sl2_elements(p: int) -> tuple[tuple[int, int, int, int], ...]:
    """All of SL2(F_p), in a fixed deterministic order."""
    p = check_prime(p)
    out = []
    for a in range(p):
        for c in range(p):
            if a == 0 and c == 0:
                continue
            if a:
                ai = inv(a, p)
                for b in range(p):
                    out.append((a, b, c, (1 + b * c) * ai % p))
            else:
                b = (-inv(c, p)) % p
                for d in range(p):
                    out.append((a, b, c, d))
    return tuple(out)


def element_order(g, p: int) -> int:
    g = tuple(x % p for x in g)
    x, k = g, 1
    while x != IDENTITY:
        x = mat_mul(x, g, p)
        k += 1
    return k


def random_sl2(rng: np.random.Generator, p: int) -> tuple[int, int, int, int]:
    group = sl2_elements(p)
    return group[int(rng.integers(len(group)))]


def random_vector(rng: np.random.Generator, p: int, nonzero: bool = False) -> tuple[int, int]:
    while True:
        v = tuple(int(x) for x in rng.integers(0, p, size=2))
        if not nonzero or v != (0, 0):
            return v


def is_symplectic(M, p: int | None = None) -> bool:
    """M^T J M = J (mod p when p is given)."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        return False
    J = standard_form(M.shape[0] // 2)
    diff = M.T @ J @ M - J
    if p is not None:
        diff %= p
    return not diff.any()
