import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torus_weil import hecke
from torus_weil.arith import inv
from torus_weil.heisenberg import pi_vector
from torus_weil.symplectic import mat_apply, mat_inv, mat_mul, random_sl2
from torus_weil.weil import rho

from conftest import A_CAT


@pytest.fixture(scope="module")
def T7():
    return hecke.hecke_torus(A_CAT, 7)


@pytest.fixture(scope="module")
def T11():
    return hecke.hecke_torus(A_CAT, 11)


def test_torus_examples(T7, T11):
    assert T7.kind is hecke.TorusKind.INERT and T7.order == 8
    assert T11.kind is hecke.TorusKind.SPLIT and T11.order == 10
    with pytest.raises(hecke.ParabolicPrimeError):
        hecke.hecke_torus(A_CAT, 5)
    with pytest.raises(hecke.NotHyperbolicError):
        hecke.hecke_torus((0, 1, -1, 0), 7)
    with pytest.raises(hecke.NotHyperbolicError):
        hecke.hecke_torus((2, 0, 0, 1), 7)


@pytest.mark.parametrize("p", (7, 11, 13))
def test_torus_matches_brute_force(p):
    T = hecke.hecke_torus(A_CAT, p)
    assert set(T.elements) == hecke.brute_force_centralizer(A_CAT, p)
    assert len(set(T.elements)) == T.order
    assert (2, 1, 1, 1) in T.elements and (p - 1, 0, 0, p - 1) in T.elements
    for B, C in itertools.product(T.elements[:5], repeat=2):
        assert mat_mul(B, C, p) == mat_mul(C, B, p)
    assert T.index_of(T.generator) == 1
    with pytest.raises(ValueError):
        T.index_of((1, 1, 0, 1))


@pytest.mark.parametrize("p,A", [(17, (3, 2, 1, 1)), (23, (5, 2, 2, 1)), (29, A_CAT)])
def test_torus_orders_other_matrices(p, A):
    T = hecke.hecke_torus(A, p)
    assert T.order == (p - 1 if T.kind is hecke.TorusKind.SPLIT else p + 1)


def test_projectors(T7):
    p = 7
    total = np.zeros((p, p), dtype=complex)
    ranks = []
    for chi in T7.characters():
        P = hecke.projector(T7, chi)
        assert np.max(np.abs(P @ P - P)) < 1e-9
        assert np.max(np.abs(P - P.conj().T)) < 1e-9
        total += P
        ranks.append(hecke.eigenspace_rank(T7, chi))
    assert np.allclose(total, np.eye(p))
    assert sum(ranks) == p
    q = T7.quadratic.index
    assert all(r == 1 for j, r in enumerate(ranks) if j != q)


def test_parity_bookkeeping(T7, T11):
    # rho(-I) = legendre(-1) * parity fixes which characters occur
    for T in (T7, T11):
        k = T.index_of((T.p - 1, 0, 0, T.p - 1))
        R = rho((-1, 0, 0, -1), T.p)
        for chi in T.characters():
            r = hecke.eigenspace_rank(T, chi)
            if r:
                v = hecke.projector(T, chi)
                assert np.allclose(R @ v, chi(k) * v, atol=1e-9)


def test_eigenvectors(T7):
    vecs = {}
    for chi in T7.characters():
        if chi.is_quadratic:
            continue
        v = hecke.hecke_eigenvector(T7, chi)
        assert abs(np.linalg.norm(v) - 1) < 1e-12
        for B in T7.elements:
            assert np.max(np.abs(rho(B, 7) @ v - T7.chi(chi, B) * v)) < 1e-9
        vecs[chi.index] = v
    for i, j in itertools.combinations(vecs, 2):
        assert abs(np.vdot(vecs[i], vecs[j])) < 1e-9


def test_multiplicity_two(T11):
    with pytest.raises(hecke.MultiplicityTwoError):
        hecke.hecke_eigenvector(T11, T11.quadratic)
    assert hecke.eigenspace_rank(T11, T11.quadratic) == 2
    with pytest.raises(ValueError):
        hecke.projector(T11, hecke.CyclicCharacter(8, 1))


@pytest.mark.parametrize("p", (7, 11, 13))
def test_hecke_basis_agrees_with_projectors(p):
    T = hecke.hecke_torus(A_CAT, p)
    basis = hecke.hecke_basis(T)
    ranks = {chi.index: hecke.eigenspace_rank(T, chi) for chi in T.characters()}
    assert set(basis) == {j for j, r in ranks.items() if r == 1}
    for j, v in basis.items():
        u = hecke.hecke_eigenvector(T, T.characters()[j])
        assert abs(abs(np.vdot(u, v)) - 1) < 1e-9


def test_wigner_basic(T7):
    chi = T7.characters()[1]
    w = hecke.wigner(T7, chi, (2, 3))
    v = hecke.hecke_eigenvector(T7, chi)
    # phase independence
    v2 = np.exp(0.7j) * v
    assert abs(np.vdot(v2, pi_vector((2, 3), 7) @ v2) - w.value) < 1e-12
    assert abs(w.normalized - w.value * np.sqrt(7) / 2) < 1e-15
    assert abs(np.vdot(v, v) - 1) < 1e-12  # W at xi = 0 is the integral of 1
    with pytest.raises(ValueError):
        hecke.wigner(T7, chi, (0, 0))
    with pytest.raises(ValueError):
        hecke.wigner(T7, chi, (7, 14))


@pytest.mark.parametrize("p", (7, 11, 13, 17, 19))
def test_wigner_matrix_matches_direct(p):
    T = hecke.hecke_torus(A_CAT, p)
    for j, v in list(hecke.hecke_basis(T).items())[:3]:
        W = hecke.wigner_matrix(v, p)
        for xi in itertools.product(range(p), repeat=2):
            assert abs(W[xi] - np.vdot(v, pi_vector(xi, p) @ v)) < 1e-12


@pytest.mark.parametrize("p", (7, 11, 13, 19))
def test_wigner_values_real_and_conjugation_symmetric(p):
    T = hecke.hecke_torus(A_CAT, p)
    basis = hecke.hecke_basis(T)
    for j, v in basis.items():
        W = hecke.wigner_matrix(v, p)
        assert np.max(np.abs(W.imag)) < 1e-12
        jb = (-j) % T.order
        if jb in basis:
            Wb = hecke.wigner_matrix(basis[jb], p)
            assert np.allclose(np.sort(W.real.ravel()), np.sort(Wb.real.ravel()), atol=1e-9)


@pytest.mark.parametrize("p", (7, 13, 17, 23, 37, 43, 47, 53))
def test_wigner_bound_inert(p):
    # at inert primes the asymptotic form 2 / sqrt(p) already holds
    r = hecke.bound_row(A_CAT, p)
    assert r["kind"] == "Inert"
    assert r["max_normalized"] <= 1 + 1e-7


@pytest.mark.parametrize("p", (11, 19, 29, 31, 41))
def test_wigner_bound_split_sharp(p):
    r = hecke.bound_row(A_CAT, p)
    assert r["kind"] == "Split"
    assert r["max_sharp"] <= 1 + 1e-7
    assert np.isclose(r["max_sharp"], r["max_normalized"] * r["order"] / p)


def test_wigner_literal_value_frozen():
    # p = 19 split: max |W| sqrt(p) / 2 exceeds 1 (frozen value, see ledger)
    r = hecke.bound_row(A_CAT, 19)
    assert abs(r["max_normalized"] - 1.0506192583036476) < 1e-9


def test_trace_function(T7, rng):
    p = 7
    for v in itertools.product(range(p), repeat=2):
        if v != (0, 0):
            assert abs(hecke.trace_function((1, 0, 0, 1), v, p)) < 1e-12
    for _ in range(500):
        S, B = random_sl2(rng, p), random_sl2(rng, p)
        xi = tuple(int(x) for x in rng.integers(0, p, 2))
        conj = mat_mul(mat_mul(S, B, p), mat_inv(S, p), p)
        assert abs(hecke.trace_function(B, xi, p) - hecke.trace_function(conj, mat_apply(S, xi, p), p)) < 1e-9


@pytest.mark.parametrize("p", (7, 11))
def test_trace_function_table(p, rng):
    for _ in range(10):
        B = random_sl2(rng, p)
        tab = hecke.trace_function_table(B, p)
        for xi in itertools.product(range(p), repeat=2):
            assert abs(tab[xi] - hecke.trace_function(B, xi, p)) < 1e-10


def test_diagonal_trace_closed_form():
    p = 7
    for a in range(2, p):
        for xi in itertools.product(range(p), repeat=2):
            F = hecke.trace_function((a, 0, 0, inv(a, p)), xi, p)
            assert abs(F - hecke.diagonal_trace(a, xi, p)) < 1e-10
    with pytest.raises(ValueError):
        hecke.diagonal_trace(1, (1, 1), p)


@pytest.mark.parametrize("p", (7, 11, 13))
def test_restated_sum(p):
    T = hecke.hecke_torus(A_CAT, p)
    basis = hecke.hecke_basis(T)
    table = hecke.restated_sum_table(T)
    xi = (1, 2)
    for chi in T.characters()[:4]:
        rs = hecke.restated_sum(T, chi, xi)
        assert abs(rs - table[chi.index][xi]) < 1e-9
        assert abs(rs - T.order * np.trace(hecke.projector(T, chi) @ pi_vector(xi, p))) < 1e-9
        if chi.index in basis:
            assert abs(rs - T.order * hecke.wigner_matrix(basis[chi.index], p)[xi]) < 1e-9
    # Fourier inversion on the cyclic group: sum over chi gives |T| F(I, xi)
    assert abs(table[:, 1, 2].sum() - T.order * hecke.trace_function((1, 0, 0, 1), xi, p)) < 1e-9
    # xi = 0 case: sum_B Tr rho(B) conj(chi(B)), reported, exempt from the bound
    assert abs(table[0, 0, 0] - sum(np.trace(rho(B, p)) for B in T.elements)) < 1e-9


@pytest.mark.parametrize("p", (7, 11, 13, 17))
def test_character_sum_bound(p):
    T = hecke.hecke_torus(A_CAT, p)
    table = hecke.restated_sum_table(T)
    table[:, 0, 0] = 0
    q = T.order // 2
    others = np.delete(table, q, axis=0)
    assert np.max(np.abs(others)) <= 2 * np.sqrt(p) + 1e-6
    if T.kind is hecke.TorusKind.INERT:
        assert np.max(np.abs(table[q])) < 1e-9
    else:
        # quadratic character of a split torus: p - 2 on the eigenlines (see ledger)
        assert abs(np.max(np.abs(table[q])) - (p - 2)) < 1e-9


def test_split_formula(T11, T7):
    xi = (1, 2)
    basis = hecke.hecke_basis(T11)
    for j, v in basis.items():
        chi = T11.characters()[j]
        sf = hecke.split_formula(T11, chi, xi)
        w = hecke.wigner_matrix(v, 11)[xi]
        assert abs(sf - w) < 1e-12
        assert abs(sf) <= 2 * np.sqrt(11) / T11.order + 1e-12
    triv = hecke.split_formula(T11, T11.characters()[0], xi)
    assert abs(triv.imag) < 1e-12
    with pytest.raises(hecke.NotSplitError):
        hecke.split_formula(T7, T7.characters()[1], xi)


def test_diagonalizer(T11):
    S, alpha = hecke.diagonalizer(T11)
    p = 11
    D = mat_mul(mat_mul(mat_inv(S, p), T11.A, p), S, p)
    assert D == (alpha, 0, 0, inv(alpha, p))


def test_averaged_operator(T7):
    p = 7
    assert np.allclose(hecke.averaged_operator(T7, (0, 0)), np.eye(p))
    Av = hecke.averaged_operator(T7, (2, 5))
    R = rho(T7.generator, p)
    assert np.max(np.abs(R @ Av - Av @ R)) < 1e-9
    basis = hecke.hecke_basis(T7)
    U = np.column_stack([basis[j] for j in sorted(basis)])
    M = U.conj().T @ Av @ U
    assert np.max(np.abs(M - np.diag(np.diag(M)))) < 1e-9


def test_l_norm_identity(T7):
    for N, frozen in ((1, 0.875), (2, 0.2145393560574)):
        lhs, rhs = hecke.l_norm_identity(T7, (1, 0), N)
        assert abs(lhs - rhs) <= 1e-8 * lhs
        assert abs(lhs - frozen) < 1e-7
    with pytest.raises(ValueError):
        hecke.l_norm_identity(T7, (1, 0), 3, max_terms=1000)
    with pytest.raises(ValueError):
        hecke.l_norm_identity(T7, (1, 0), 0)


def test_triangle_inequality_lift(T7):
    p = 7
    f = {(0, 0): 0.3, (1, 0): 0.5, (2, 3): -0.25j, (-1, 1): 0.2}
    C = sum(abs(a) for xi, a in f.items() if xi != (0, 0))
    basis = hecke.hecke_basis(T7)
    for j, v in basis.items():
        W = hecke.wigner_matrix(v, p)
        val = sum(a * W[xi[0] % p, xi[1] % p] for xi, a in f.items())
        assert abs(val - 0.3) <= C * 2 / np.sqrt(p) + 1e-9


def test_sato_tate_row():
    row = hecke.sato_tate_row(A_CAT, 13)
    assert row.count == len(row.values) == 13 and row.kind == "Inert"
    assert all(-1 <= x <= 1 for x in row.values)
    assert 0 <= row.ks <= 1
    assert hecke.arcsine_cdf(-1) == 0 and hecke.arcsine_cdf(1) == 1 and hecke.arcsine_cdf(0) == 0.5


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_arcsine_cdf_monotone(x, y):
    lo, hi = sorted((x, y))
    assert hecke.arcsine_cdf(lo) <= hecke.arcsine_cdf(hi)
