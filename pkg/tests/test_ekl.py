import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localdegree.ekl import (
    build_functional,
    congruence_holds,
    diagonalize,
    ekl_class,
    gram_matrix,
    milnor_form,
)
from localdegree.errors import NotIsolatedError, SingularInputError
from localdegree.field import GF, QQ
from localdegree.gw import diagonal_form, equivalent, hyperbolic, invariants, witt_decompose
from localdegree.localalg import local_algebra, socle_element
from localdegree.poly import PolyMap, PolyRing

from helpers import random_isolated

R2 = PolyRing(QQ, 2)
x, y = R2.gens()
R1 = PolyRing(QQ, 1)
(t,) = R1.gens()


def test_functional_on_quadric():
    A = local_algebra(PolyMap([x * y, -2 * x**2 + 3 * y**2]))
    phi = build_functional(A, socle_element(A))
    assert phi.values == (0, 0, 0, QQ("1/3"))


def test_functional_dimension_one():
    A = local_algebra(PolyMap([5 * t]))
    assert build_functional(A, socle_element(A)).values == (QQ("1/5"),)


def test_functional_on_cusp_gradient():
    A = local_algebra(PolyMap([3 * x**2, 2 * y]))
    phi = build_functional(A, socle_element(A))
    assert dict(zip(A.basis, phi.values)) == {(0, 0): 0, (1, 0): QQ("1/6")}


def test_gram_examples():
    A = local_algebra(PolyMap([t**2]))
    G = gram_matrix(A, build_functional(A, socle_element(A)))
    assert G.rows() == [[0, 1], [1, 0]]
    A = local_algebra(PolyMap([7 * t]))
    G = gram_matrix(A, build_functional(A, socle_element(A)))
    assert G.rows() == [[QQ("1/7")]]


def test_hyperbolic_plane_diagonalization():
    D, U = diagonalize([[0, 1], [1, 0]], field=QQ)
    assert D.diagonal == (2, -2)
    assert U == [[1, 1], [1, -1]]


def test_diagonal_input_is_left_alone():
    D, U = diagonalize([[2, 0, 0], [0, -1, 0], [0, 0, 5]], field=QQ)
    assert D.diagonal == (2, -1, 5)
    assert U == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_singular_matrix_rejected():
    with pytest.raises(SingularInputError):
        diagonalize([[1, 1], [1, 1]], field=QQ)
    with pytest.raises(ValueError):
        diagonalize([[1]])


def test_ekl_examples():
    assert equivalent(ekl_class(PolyMap([x * y, -2 * x**2 + 3 * y**2])).form, diagonal_form(QQ, 1, -1, 2, 3))
    assert equivalent(ekl_class(PolyMap([2 * t**3])).form, hyperbolic(QQ) + diagonal_form(QQ, 2))
    assert equivalent(ekl_class(PolyMap([x * y, y**4 - x**2])).form, hyperbolic(QQ, 2) + diagonal_form(QQ, 1, 1))


def test_quadric_gram_diagonalizes_to_expected_class():
    res = ekl_class(PolyMap([x * y, -x**2 + y**2]))
    assert equivalent(res.form, diagonal_form(QQ, 1, -1, 1, 1))
    assert congruence_holds(res.gram, res.form, res.transform)


def test_milnor_examples():
    assert equivalent(milnor_form(x**3 + y**2), hyperbolic(QQ))
    assert equivalent(milnor_form(x**2 + y**2), diagonal_form(QQ, 1))
    assert milnor_form(x**2 + y**2).diagonal == (QQ("1/4"),)
    assert equivalent(milnor_form(t**3), hyperbolic(QQ))


def test_milnor_not_isolated():
    with pytest.raises(NotIsolatedError):
        milnor_form(x**2, k_cap=8)


def test_pivot_strategies_agree_over_q():
    f = PolyMap([-x**3 - x**2 * y + 4 * x * y**2 + 2 * y**3, 2 * x**3 - x**2 * y - 5 * x * y**2 - y**3])
    a = ekl_class(f, pivot="first")
    b = ekl_class(f, pivot="last")
    ia, ib = invariants(a.form), invariants(b.form)
    assert (ia.rank, ia.disc, ia.signature) == (ib.rank, ib.disc, ib.signature)
    assert all(ia.hasse_at(v) == ib.hasse_at(v) for v in ia.places() | ib.places())
    assert congruence_holds(b.gram, b.form, b.transform)


cases = st.tuples(st.integers(0, 10**6), st.sampled_from([3, 5, 7]), st.sampled_from([1, 2]),
                  st.sampled_from([1, 2]))


@settings(max_examples=60, deadline=None)
@given(cases)
def test_pipeline_invariants_on_random_maps(case):
    seed, p, n, min_degree = case
    f, _ = random_isolated(random.Random(seed), p, n, 3, min_degree)
    res = ekl_class(f)
    G = res.gram
    assert G.is_symmetric() and G.rank() == G.size == res.rank
    assert res.functional(res.socle.vector) == 1
    assert congruence_holds(G, res.form, res.transform)
    if res.rank >= 2:
        assert res.functional.values[0] == 0
        assert G[0, 0] == 0
        assert witt_decompose(res.form).witt_index >= 1
    # a functional supported elsewhere in the support of E gives an isometric form
    for k in res.socle.support():
        phi = build_functional(res.algebra, res.socle, support_index=k)
        assert phi(res.socle.vector) == 1
        D, U = diagonalize(gram_matrix(res.algebra, phi))
        assert equivalent(D, res.form)
    # a different pivot rule gives an isometric form as well
    assert equivalent(ekl_class(f, pivot="last").form, res.form)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_functional_independence_over_q(seed):
    rng = random.Random(seed)
    a, b = rng.randint(1, 9), rng.randint(1, 9)
    f = PolyMap([x * y + rng.randint(-3, 3) * x**3, -a * x**2 + b * y**2 + rng.randint(-3, 3) * y**3])
    res = ekl_class(f)
    for k in res.socle.support():
        phi = build_functional(res.algebra, res.socle, support_index=k)
        D, _ = diagonalize(gram_matrix(res.algebra, phi))
        assert equivalent(D, res.form)


def test_unsupported_functional_position_rejected():
    A = local_algebra(PolyMap([x * y, -x**2 + y**2]))
    with pytest.raises(ValueError):
        build_functional(A, socle_element(A), support_index=0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_finite_field_hyperbolic_plane(p):
    K = GF(p)
    (u,) = PolyRing(K, 1).gens()
    assert equivalent(ekl_class(PolyMap([u**2])).form, hyperbolic(K))
