from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowtrotter.lattice import Lattice, build_chain
from flowtrotter.majorana import (MajoranaMonomial, check_mixed_relations, edge_op,
                                  expected_commutation, iter_terms, loop_identity, majorana_commutes,
                                  majorana_mul, transfer_op, vertex_op)


def dense_majoranas(n):
    """Jordan-Wigner matrices of gamma_0..gamma_{2n-1} (independent oracle)."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]])
    Z = np.diag([1, -1]).astype(complex)
    I = np.eye(2)
    out = []
    for j in range(n):
        for op in (X, Y):
            mats = [Z] * j + [op] + [I] * (n - j - 1)
            m = mats[0]
            for a in mats[1:]:
                m = np.kron(m, a)
            out.append(m)
    return out


def dense(mono, gammas):
    m = np.eye(gammas[0].shape[0], dtype=complex) * (1j ** mono.phase)
    for a in mono.indices:
        m = m @ gammas[a]
    return m


@st.composite
def monomials(draw, n):
    return MajoranaMonomial(n, draw(st.integers(0, (1 << 2 * n) - 1)), draw(st.integers(0, 3)))


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), monomials(n), monomials(n))))
def test_product_matches_dense(args):
    n, a, b = args
    g = dense_majoranas(n)
    assert np.allclose(dense(majorana_mul(a, b), g), dense(a, g) @ dense(b, g))
    A, B = dense(a, g), dense(b, g)
    assert majorana_commutes(a, b) == np.allclose(A @ B, B @ A)


def test_generators_square_to_one_and_anticommute():
    n = 3
    for a in range(2 * n):
        ga = MajoranaMonomial(n, 1 << a)
        assert (ga * ga).is_identity
        for b in range(a + 1, 2 * n):
            assert not majorana_commutes(ga, MajoranaMonomial(n, 1 << b))


def test_vertex_and_edge_square_to_one():
    n = 3
    for j in range(n):
        v = vertex_op(j, n).monomial
        assert v.is_hermitian and (v * v).is_identity
    e = edge_op(0, 2, n).monomial
    assert e.is_hermitian and (e * e).is_identity
    assert edge_op(0, 2, n).monomial.bits == edge_op(2, 0, n).monomial.bits
    # E_kj = -E_jk
    assert (edge_op(2, 0, n).monomial.phase - edge_op(0, 2, n).monomial.phase) % 4 == 2


def test_transfer_identities():
    n = 4
    for j, k in [(0, 1), (1, 3), (2, 0)]:
        t_jk = transfer_op(j, k, n).monomial
        t_kj = transfer_op(k, j, n).monomial
        vj, vk = vertex_op(j, n).monomial, vertex_op(k, n).monomial
        # T_kj = -V_j V_k T_jk
        assert t_kj == (vj * vk * t_jk).__class__(n, (vj * vk * t_jk).bits, (vj * vk * t_jk).phase + 2)
        # T_kj = +i E_jk V_k  (factor 1/2 carried separately)
        e = edge_op(j, k, n).monomial
        assert t_kj == MajoranaMonomial(n, (e * vk).bits, (e * vk).phase + 1)
        # T_jk = i V_j E_jk
        assert t_jk == MajoranaMonomial(n, (vj * e).bits, (vj * e).phase + 1)
        assert transfer_op(j, k, n).coefficient == 0.5


def test_hopping_pair_is_minus_standard_hopping():
    # with c_j = (g_{2j} + i g_{2j+1}) / 2:  T_jk + T_kj = -(c_j^dag c_k + h.c.),  V_j = 1 - 2 n_j
    n = 2
    g = dense_majoranas(n)
    h = 0.5 * (dense(transfer_op(0, 1, n).monomial, g) + dense(transfer_op(1, 0, n).monomial, g))
    c = [(g[2 * j] + 1j * g[2 * j + 1]) / 2 for j in range(n)]
    hop = c[0].conj().T @ c[1] + c[1].conj().T @ c[0]
    assert np.allclose(h, -hop)
    num = c[0].conj().T @ c[0]
    assert np.allclose(dense(vertex_op(0, n).monomial, g), np.eye(4) - 2 * num)


@pytest.mark.parametrize("lat", [Lattice(2, 2), Lattice(3, 2), build_chain(4), Lattice(3, 3, "periodic")])
def test_clash_rule_exhaustive(lat):
    rep = check_mixed_relations(list(iter_terms(lat, include_edges=True)))
    assert rep.ok, rep.violations[:5]
    assert rep.checked > 0


def test_clash_rule_examples():
    n = 3
    assert not majorana_commutes(vertex_op(0, n).monomial, transfer_op(0, 1, n).monomial)
    assert majorana_commutes(transfer_op(0, 1, n).monomial, transfer_op(1, 2, n).monomial)
    assert not majorana_commutes(transfer_op(0, 1, n).monomial, transfer_op(2, 1, n).monomial)
    assert expected_commutation(transfer_op(0, 1, n), transfer_op(1, 2, n))


@pytest.mark.parametrize("cycle", [[0, 1, 3, 2], [0, 1, 2], [2, 0, 1, 3]])
def test_loop_identity(cycle):
    mono, k = loop_identity(cycle, 4)
    vprod = MajoranaMonomial(4)
    for j in cycle:
        vprod = vprod * vertex_op(j, 4).monomial
    assert mono == MajoranaMonomial(4, vprod.bits, vprod.phase + k)
