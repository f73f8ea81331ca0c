import math

import pytest
from hypothesis import given, settings, strategies as st

from klrdual.affinization import build_K
from klrdual.catalog import L, L_z, ambient_A, ambient_B, one_dim_module
from klrdual.modules import (GradedModule, check_relations, composition_factors, convolve,
                             direct_sum, hom_space, is_isomorphic, is_simple,
                             isomorphic_up_to_shift, q_character, quotient, shift,
                             short_exact_sequence, shuffle_product, spin, truncate,
                             ungraded_character)
from klrdual.poly import Poly

PA = ambient_A(3)
PB = ambient_B(3)
words = st.lists(st.sampled_from([1, 2, 3]), min_size=1, max_size=2).map(tuple)


def one_dim_or_none(P, w):
    try:
        return one_dim_module(P, w)
    except ValueError:
        return None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([PA, PB]), st.lists(words, min_size=2, max_size=3))
def test_convolution_dimension_shuffle_relations(P, ws):
    mods = [one_dim_or_none(P, w) for w in ws]
    if any(m is None for m in mods) or sum(len(w) for w in ws) > 4:
        return
    C = convolve(*mods)
    n = [m.n for m in mods]
    assert C.dim == math.factorial(sum(n)) // math.prod(math.factorial(k) for k in n)
    ch = ungraded_character(mods[0])
    for m in mods[1:]:
        ch = shuffle_product(ch, ungraded_character(m))
    assert ungraded_character(C) == ch
    assert check_relations(C)["ok"]


def test_one_dim_rejects_bad_word():
    # tau^2 e(1,1) = 0 holds but e(1,1) with x = 0 forces tau x - x tau = e: violated
    with pytest.raises(ValueError):
        one_dim_module(PA, (1, 1))


def test_relation_failure_detected():
    # zeroing x_1 on L(1) o L(1) breaks tau x_1 - x_2 tau = e(1,1)
    C = convolve(L(PA, 1), L(PA, 1))
    bad = GradedModule(PA, 2, C.basis, [[{} for _ in range(C.dim)], C.x[1]], C.tau)
    rep = check_relations(bad)
    assert not rep["ok"] and rep["failures"]


def test_convolution_of_polynomial_modules():
    C = convolve(L_z(PA, 1, "a").module, L_z(PA, 2, "b").module, L_z(PA, 1, "c").module)
    assert check_relations(C)["ok"]
    assert C.dim == 6
    assert set(C.ring_names()) == {"a", "b", "c"}


def test_graded_character_of_nil_hecke_product():
    # L(1) o L(1): 1 (x) v in degree 0 and tau_1 (x) v in degree -(a_1, a_1) = -2
    C = convolve(L(PA, 1), L(PA, 1))
    assert q_character(C) == {(1, 1): {0: 1, -4: 1}}


def test_simplicity_oracles():
    assert is_simple(convolve(L(PA, 1), L(PA, 1)))
    assert is_simple(convolve(L(PA, 1), L(PA, 3)))
    M = convolve(L(PA, 1), L(PA, 2))
    assert not is_simple(M)
    fac = composition_factors(M)
    assert sorted(S.dim for S in fac) == [1, 1]
    assert {S.words()[0] for S in fac} == {(1, 2), (2, 1)}


def test_composition_factors_dimensions_add():
    M = convolve(L(PA, 1), L(PA, 2), L(PA, 1))
    assert sum(S.dim for S in composition_factors(M)) == M.dim
    assert all(is_simple(S) for S in composition_factors(M))


def test_hom_spaces_and_isomorphism():
    M, N = convolve(L(PA, 1), L(PA, 2)), convolve(L(PA, 2), L(PA, 1))
    assert len(hom_space(M, M)) == 1
    assert any(hom_space(M, N, s) for s in range(-4, 5))
    assert is_isomorphic(M, M) is not None
    assert isomorphic_up_to_shift(shift(M, 4), M)[0] == -4
    assert isomorphic_up_to_shift(M, N) is None
    assert isomorphic_up_to_shift(L(PA, 1), shift(L(PA, 1), 2)) is not None
    assert is_isomorphic(L(PA, 1), shift(L(PA, 1), 2)) is None


def test_spin_quotient_and_short_exact_sequence():
    M = convolve(L(PA, 1), L(PA, 2))
    S, inc = spin(M, [{0: PA.field.one}])
    assert 0 < S.dim <= M.dim
    W = [{i: c for i, c in col.items()} for col in inc]
    S2, Q, f, g = short_exact_sequence(M, W)
    assert S2.dim + Q.dim == M.dim
    assert check_relations(S2)["ok"] and check_relations(Q)["ok"]


def test_quotient_by_non_invariant_subspace():
    M = convolve(L(PA, 1), L(PA, 2))
    sub = [k for k in range(M.dim)]
    for k in sub:
        Sk, _ = spin(M, [{k: PA.field.one}])
        if Sk.dim == M.dim:
            with pytest.raises(ValueError):
                quotient(M, [{k: PA.field.one}])
            return
    pytest.fail("no generating basis vector found")


def test_direct_sum_and_truncation():
    D = direct_sum(L(PA, 1), shift(L(PA, 1), 2))
    assert D.dim == 2 and not is_simple(D)
    K = build_K(PA, 1, 2)
    T = truncate(K.module, {K.z: 3})
    assert T.dim == 3 * K.rank
    assert check_relations(T)["ok"]


def test_module_shape_validation():
    with pytest.raises(ValueError):
        GradedModule(PA, 2, [((1, 2), 0)], [[{}]], [[{}]])
    with pytest.raises(ValueError):
        GradedModule(PA, 1, [((1,), 0)], [[{1: Poly.const(1)}]], [])
