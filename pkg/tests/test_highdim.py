import itertools

import numpy as np
import pytest

from torus_weil import highdim
from torus_weil.symplectic import is_symplectic


def test_block_element():
    A = highdim.block_element((2, 1, 1, 1))
    assert is_symplectic(A)
    assert (A[:2, :2] == [[2, 1], [1, 1]]).all() and (A[2:, 2:] == [[1, -1], [-1, 2]]).all()
    assert is_symplectic(highdim.block_element((1, 1, 1, 0), 7), 7)
    with pytest.raises(ValueError):
        highdim.block_element((2, 0, 0, 1))


def test_ergodicity():
    cert = highdim.ergodicity_certificate((2, 1, 1, 1))
    assert cert.ergodic and cert.numeric_ok
    roots = sorted(abs(z) for z in cert.eigenvalues)
    assert np.allclose(roots, sorted([(3 - 5 ** 0.5) / 2] * 2 + [(3 + 5 ** 0.5) / 2] * 2))
    flip = highdim.ergodicity_certificate((0, 1, 1, 0))
    assert not flip.ergodic and not flip.numeric_ok
    assert 1 in flip.cyclotomic_factors and 2 in flip.cyclotomic_factors
    assert not highdim.ergodicity_certificate((0, 1, -1, 0)).ergodic


def test_example_one_candidate():
    cands = highdim.example_one_candidates()
    assert cands[0] == (1, 1, 1, 0)
    for B in cands:
        assert B[0] * B[3] - B[1] * B[2] == -1
        assert highdim.ergodicity_certificate(B).numeric_ok


def test_rho_block(rng):
    p = 5
    assert np.allclose(highdim.rho_block((1, 0, 0, 1), p), np.eye(p * p))
    Bs = [B for B in itertools.product(range(p), repeat=4) if (B[0] * B[3] - B[1] * B[2]) % p]
    for _ in range(100):
        B1, B2 = (Bs[int(i)] for i in rng.integers(len(Bs), size=2))
        prod = tuple((np.array(B1).reshape(2, 2) @ np.array(B2).reshape(2, 2) % p).reshape(-1))
        R = highdim.rho_block(B1, p) @ highdim.rho_block(B2, p)
        assert np.allclose(R, highdim.rho_block(prod, p))
        U = highdim.rho_block(B1, p)
        assert np.allclose(U @ U.T, np.eye(p * p))
    phi = np.ones(p * p)
    B = (1, 1, 1, 0)
    assert np.allclose(highdim.rho_block(B, p) @ phi, -phi if p % 4 == 3 else phi)


@pytest.mark.parametrize("p", (5, 7, 11))
def test_counterexample_value(p):
    B = highdim.example_one_candidates()[0]
    for xi in itertools.product(range(p), repeat=2):
        if xi != (0, 0):
            assert abs(highdim.counterexample_value(B, p, xi) - 1) < 1e-12
    # Haar integral of the character xi on the torus is 0 for xi != 0
    grid = np.linspace(0, 1, 64, endpoint=False)
    X, Y = np.meshgrid(grid, grid)
    assert abs(np.mean(np.exp(2j * np.pi * (1 * X + 0 * Y)))) < 1e-12
    with pytest.raises(ValueError):
        highdim.counterexample_value(B, p, (0, 0))


def test_centralizer_structure_inert():
    rep = highdim.centralizer_structure((2, 1, 1, 1), 7)
    assert rep.kind == "Inert"
    assert rep.block_order == 7 * 7 - 1 and rep.block_commutative
    assert rep.sp_order == 2688  # |U(2, F_49)| = p (p^2 - 1) (p + 1)
    X, Y = rep.witness
    assert ((X @ Y - Y @ X) % 7).any()
    A = highdim.block_element((2, 1, 1, 1), 7)
    for Z in (X, Y):
        assert is_symplectic(Z, 7)
        assert not ((Z @ A - A @ Z) % 7).any()


def test_centralizer_structure_split():
    B = (5, 2, 2, 1)  # trace 6, disc 32 = 4 mod 7 is a square
    rep = highdim.centralizer_structure(B, 7)
    assert rep.kind == "Split"
    assert rep.block_order == (7 - 1) ** 2
    assert rep.sp_order == 2016  # |GL2(F_7)|
    X, Y = rep.witness
    assert ((X @ Y - Y @ X) % 7).any()


def test_centralizer_structure_large_p_skips_count():
    rep = highdim.centralizer_structure((2, 1, 1, 1), 13, count_limit=7)
    assert rep.sp_order is None
    X, Y = rep.witness
    assert ((X @ Y - Y @ X) % 13).any()


def test_centralizer_rejects():
    with pytest.raises(ValueError):
        highdim.centralizer_structure((1, 1, 1, 0), 7)
    with pytest.raises(ValueError):
        highdim.centralizer_structure((1, 1, 0, 1), 7)
    with pytest.raises(ValueError):
        highdim.centralizer_structure((2, 1, 1, 1), 5)
