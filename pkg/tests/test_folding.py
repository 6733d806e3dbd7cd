import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paley_hankel.folding import (
    TrigPolynomial,
    fold_u,
    partial_product_summands,
    partial_product_u,
    product_formula_u,
    product_vector,
    refold,
    refold_coefficient_check,
)
from paley_hankel.hankel import make_paley_hankel
from paley_hankel.schur import paley_factorization, rank_one_factors
from paley_hankel.sequences import fold_set

from conftest import strong_sets

K7 = [0, 1, 3, 7]
b, c, d = 0.7, 0.45, 0.3

positive_v = st.floats(0.05, 3.0)


def mersenne(J):
    return [2**j - 1 for j in range(J + 1)]


@st.composite
def set_and_v(draw, with_zero=True, max_terms=7):
    K = draw(strong_sets(max_terms=max_terms, with_zero=with_zero))
    v = draw(st.lists(positive_v, min_size=len(K), max_size=len(K)))
    if K[0] == 0:
        v[0] = 1.0
    return K, np.array(v)


def test_fold_examples():
    u = fold_u(K7, [1, b, c, d]).u
    np.testing.assert_allclose(u, [1, b, c * b, c, d * c, d * c * b, d * b, d], rtol=1e-15)
    g = 2.5
    u = fold_u([0, 1, 5], [1, b, c], gap_value=g).u
    np.testing.assert_allclose(u, [1, b, g, c * g, c * b, c], rtol=1e-15)
    assert fold_u([0], [1.0]).u.tolist() == [1.0]


def test_fold_constant_strategy():
    u = fold_u([0, 1, 5], [1, b, c], strategy="constant", gap_value=2.0).u
    np.testing.assert_allclose(u, [1, b, 2.0, 2.0, c * b, c])


def test_fold_callable_gap():
    prof = fold_u([0, 1, 9], [1, b, c], gap_value=lambda m: 1.0 + m)
    u = prof.u
    # free first half (1, 4], mirrored second half
    np.testing.assert_allclose(u[2:5], [3.0, 4.0, 5.0])
    np.testing.assert_allclose(u[5:8], c * np.array([5.0, 4.0, 3.0]))
    assert prof.gap_value is None


def test_fold_midpoint_is_free():
    # k = 10: free positions are 2..5, mirrored 6..8
    u = fold_u([0, 1, 10], [1, b, c], gap_value=lambda m: float(m)).u
    np.testing.assert_allclose(u[2:6], [2, 3, 4, 5])
    np.testing.assert_allclose(u[6:9], c * np.array([4, 3, 2]))


def test_fold_without_zero_is_augmented():
    prof = fold_u([1, 3, 7], [b, c, d])
    assert prof.K.to_list() == K7
    np.testing.assert_allclose(prof.u, fold_u(K7, [1, b, c, d]).u)


def test_fold_rejections():
    with pytest.raises(ValueError):
        fold_u([0, 1, 2], [1, 1, 1])
    with pytest.raises(ValueError):
        fold_u(K7, [1, b, 0.0, d])
    with pytest.raises(ValueError):
        fold_u(K7, [1, b, c])
    with pytest.raises(ValueError):
        fold_u([0, 1, 5], [1, b, c], gap_value=-1.0)


def test_fold_profile_json():
    out = json.loads(json.dumps(fold_u(K7, [1, b, c, d]).to_json()))
    assert out["K"] == K7 and out["gap_strategy"] == "mirror" and len(out["u"]) == 8


@settings(max_examples=80, deadline=None)
@given(set_and_v(), st.floats(0.1, 5))
def test_fold_reflection_identity(Kv, g):
    K, v = Kv
    u = fold_u(K, v, gap_value=g).u
    assert u[0] == 1 and np.all(u > 0)
    for j in range(1, len(K)):
        k = K[j]
        for n in range((k + 1) // 2):
            assert u[k - n] == pytest.approx(v[j] * u[n], rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(set_and_v(), st.sampled_from(["mirror", "constant"]), st.floats(0.1, 5))
def test_product_formula_matches_fold(Kv, strategy, g):
    K, v = Kv
    u = fold_u(K, v, strategy=strategy, gap_value=g).u
    for k in fold_set(K, K[-1]):
        assert u[k] == pytest.approx(product_formula_u(K, v, k), rel=1e-13)


def test_product_formula_examples():
    assert product_formula_u(K7, [1, b, c, d], 0) == 1
    assert product_formula_u(K7, [1, b, c, d], 5) == pytest.approx(d * c * b)
    assert product_formula_u([0, 1, 5], [1, b, c], 2) is None
    np.testing.assert_allclose(product_vector([0, 1, 5], [1, b, c]), [1, b, 0, 0, c * b, c])


@pytest.mark.parametrize("J", range(0, 9))
def test_partial_product_equals_fold(J):
    K = mersenne(J)
    rng = np.random.default_rng(J)
    v = np.concatenate([[1.0], rng.uniform(0.1, 2, J)])
    pp = partial_product_u(K, v)
    if J == 0:
        assert pp.tolist() == [1.0]
    np.testing.assert_allclose(pp, fold_u(K, v).u, rtol=1e-13)


def test_partial_product_example():
    np.testing.assert_allclose(partial_product_u(K7, [1, b, c, d], 3), fold_u(K7, [1, b, c, d]).u)
    np.testing.assert_array_equal(partial_product_u(K7, [1, b, c, d], 0), [1.0])


@pytest.mark.parametrize("J", range(1, 7))
def test_partial_product_summands_disjoint(J):
    K = mersenne(J)
    v = np.concatenate([[1.0], np.linspace(0.3, 1.7, J)])
    terms = partial_product_summands(K, v)
    for j in range(1, J + 1):
        support = np.flatnonzero(terms[j])
        # the j-th piece lives on [k_j - k_{j-1}, k_j]
        assert support.min() >= K[j] - K[j - 1]
        assert support.max() <= K[j]
        assert len(support) == K[j - 1] + 1


def test_refold_small_steps():
    v = np.array([1, 0.5 + 0.5j, 2 - 1j, 0.25])
    Ue, Uo = refold(K7, v, J=1)
    assert Ue.coefficients == {0: 1}
    assert Uo.coefficients == {1: v[1]}
    Ue, Uo = refold(K7, v, J=2)
    assert Uo.coefficients == {1: v[1], 3: v[2]}
    assert Ue.coefficients == pytest.approx({0: 1, -2: np.conj(v[2]) * v[1]})


@pytest.mark.parametrize("J", range(0, 4))
def test_refold_zero_coefficients(J):
    Ue, Uo = refold(K7, [1, 0, 0, 0], J=J)
    assert Ue.coefficients == {0: 1} and Uo.coefficients == {}


def test_refold_checks():
    rep = refold_coefficient_check(K7, [1, b, c, d], 3)
    assert rep.ok and rep.max_error < 1e-15
    Ue, Uo = refold([0, 1, 5], [1, b, c])
    total = Ue.reflected() + Uo
    assert total[2] == 0 and total[3] == 0
    assert refold_coefficient_check([0, 1, 5], [1, b, c]).ok
    Ue, Uo = refold(K7, [1, b, c, d], J=0)
    assert (Ue.reflected() + Uo).coefficients == {0: 1}
    assert refold_coefficient_check(K7, [1, b, c, d], 0).ok


@settings(max_examples=50, deadline=None)
@given(set_and_v(with_zero=None))
def test_refold_matches_product_formula(Kv):
    K, v = Kv
    assert refold_coefficient_check(K, v).ok


@settings(max_examples=40, deadline=None)
@given(strong_sets(max_terms=8, with_zero=True), st.integers(0, 2**32 - 1))
def test_refold_minus_sign_flat(K, seed):
    v = np.random.default_rng(seed).choice([-1.0, 1.0], len(K))
    Ue, Uo = refold(K, v, sign="minus")
    total = Ue.reflected() + Uo
    for k in fold_set(K, K[-1]):
        assert abs(total[k]) == pytest.approx(1.0)


def test_trig_polynomial_basics():
    p = TrigPolynomial({1: 2.0, -1: 2.0})
    assert p(0.0) == pytest.approx(4.0)
    assert p(np.pi / 2) == pytest.approx(0.0, abs=1e-14)
    assert (p + TrigPolynomial({1: -2.0})).coefficients == {-1: 2.0}
    assert p.shifted(3, 0.5).coefficients == {4: 1.0, 2: 1.0}
    assert p.to_list() == [[-1, 2.0, 0.0], [1, 2.0, 0.0]]
    assert TrigPolynomial.constant(0).coefficients == {}


@settings(max_examples=50, deadline=None)
@given(set_and_v())
def test_rank_one_matches_paley_factors(Kv):
    K, v = Kv
    u = fold_u(K, v).u
    N = K[-1] + 1
    H = make_paley_hankel(K, v)
    rank_one = rank_one_factors(H, u, u, N).B
    paley = paley_factorization(K, v, N).B
    i = np.arange(N)
    on_support = np.isin(i[:, None] + i[None, :], K)
    np.testing.assert_allclose(rank_one[on_support], paley[on_support], rtol=1e-12)
