import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torus_weil.symplectic import (
    IDENTITY,
    S_GEN,
    BruhatCell,
    bruhat_cell,
    element_order,
    is_hyperbolic,
    is_symplectic,
    mat_apply,
    mat_inv,
    mat_mul,
    mat_pow,
    omega,
    parse_matrix,
    parse_vector,
    random_sl2,
    reduce_mod_p,
    sl2_elements,
    sl2_order,
    standard_form,
)

from conftest import SMALL_PRIMES


def test_omega_examples(rng):
    assert omega((1, 0), (0, 1)) == 1
    assert omega((3, 4), (3, 4)) == 0
    for _ in range(100):
        u, v = rng.integers(-50, 50, size=(2, 2))
        assert omega(u, v) + omega(v, u) == 0
    assert omega((1, 0, 0, 0), (0, 0, 1, 0)) == 1
    with pytest.raises(ValueError):
        omega((1, 0), (1, 0, 0, 0))


def test_omega_nondegenerate():
    J = standard_form(2)
    assert np.linalg.matrix_rank(J) == 4
    assert (J.T == -J).all()


def test_reduce_mod_p():
    assert reduce_mod_p((2, 1, 1, 1), 7) == (2, 1, 1, 1)
    assert reduce_mod_p(IDENTITY, 11) == IDENTITY
    assert reduce_mod_p((-5, 3, -2, 1), 7) == (2, 3, 5, 1)
    with pytest.raises(ValueError):
        reduce_mod_p((2, 0, 0, 1), 7)


def test_order_of_cat_map_mod_7():
    A = (2, 1, 1, 1)
    k = element_order(A, 7)
    # oracle: repeated multiplication with plain integer matrices
    M = np.array(A).reshape(2, 2)
    P = np.eye(2, dtype=np.int64)
    for n in range(1, 100):
        P = P @ M % 7
        if (P == np.eye(2)).all():
            break
    assert k == n == 8
    assert mat_pow(A, 8, 7) == IDENTITY


def test_is_hyperbolic():
    assert is_hyperbolic((2, 1, 1, 1))
    assert not is_hyperbolic(IDENTITY)
    assert not is_hyperbolic(S_GEN)
    assert is_hyperbolic((-3, 1, -1, 0))
    with pytest.raises(ValueError):
        is_hyperbolic((2, 0, 0, 1))


def test_bruhat_cells():
    assert bruhat_cell((0, 1, -1, 0), 7) is BruhatCell.BIG
    assert bruhat_cell((3, 0, 5, 5), 7) is BruhatCell.LOWER_BOREL
    G = sl2_elements(5)
    big = sum(bruhat_cell(g, 5) is BruhatCell.BIG for g in G)
    borel = sum(bruhat_cell(g, 5) is BruhatCell.LOWER_BOREL for g in G)
    assert big + borel == 120
    assert (big, borel) == (100, 20)  # p^2 (p-1) and p (p-1)


@pytest.mark.parametrize("p", (5, 7))
def test_sl2_enumeration(p):
    G = sl2_elements(p)
    # oracle: filter all p^4 matrices
    brute = {g for g in itertools.product(range(p), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % p == 1}
    assert set(G) == brute
    assert len(G) == sl2_order(p) == p * (p * p - 1)


@given(st.integers(0, 10**6), st.sampled_from(SMALL_PRIMES))
def test_group_action_preserves_omega(seed, p):
    rng = np.random.default_rng(seed)
    g = random_sl2(rng, p)
    for u, v in itertools.product(((1, 0), (0, 1), (1, 1)), repeat=2):
        assert omega(mat_apply(g, u, p), mat_apply(g, v, p), p) == omega(u, v, p)
    assert mat_mul(g, mat_inv(g, p), p) == IDENTITY
    assert is_symplectic(np.array(g).reshape(2, 2), p)


def test_reduction_is_homomorphism(rng):
    def rand_int_sl2():
        while True:
            a, b, c = (int(x) for x in rng.integers(-9, 10, size=3))
            if a and (1 + b * c) % a == 0:
                return (a, b, c, (1 + b * c) // a)

    for _ in range(100):
        g, h = rand_int_sl2(), rand_int_sl2()
        gh = tuple((np.array(g).reshape(2, 2) @ np.array(h).reshape(2, 2)).reshape(-1))
        for p in (5, 7):
            assert reduce_mod_p(gh, p) == mat_mul(reduce_mod_p(g, p), reduce_mod_p(h, p), p)


def test_parsing():
    assert parse_matrix("2,1,1,1") == (2, 1, 1, 1)
    assert parse_matrix(" -1, 0,0 ,-1") == (-1, 0, 0, -1)
    assert parse_vector("1,3") == (1, 3)
    for bad in ("1,2,3", "a,b,c,d", ""):
        with pytest.raises(ValueError):
            parse_matrix(bad)
