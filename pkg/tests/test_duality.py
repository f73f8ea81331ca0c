import pytest

from conftest import datum

from klrdual.affinization import Affinization, HypothesisError
from klrdual.catalog import L, L_z, ambient_A, duality_datum, example_entries, expected_cartan
from klrdual.duality import (apply_functor, build_delta, check_axioms, datum_from_affinizations,
                             derive_cartan, exactness_check, functor_map, functor_of_product,
                             functor_on_affinization, one_dim_D, tensor_compatibility_check)
from klrdual.modules import (check_relations, convolve, direct_sum, find_proper_submodule,
                             isomorphic_up_to_shift, q_character, short_exact_sequence)

EXAMPLES = [("D", 4), ("C", 3), ("B1", 3), ("B2", 4)]


@pytest.mark.parametrize("name,ell", [(n, l) for n, ls in
                                      [("D", [3, 4, 5]), ("C", [2, 3, 4, 5]),
                                       ("B1", [3, 4, 5]), ("B2", [3, 4, 5])] for l in ls])
def test_derived_cartan_matrix(name, ell):
    _, A, finite = derive_cartan(datum(name, ell))
    assert A == expected_cartan(name, ell)
    assert finite


@pytest.mark.parametrize("name,ell", EXAMPLES)
def test_axioms_hold(name, ell):
    rep = check_axioms(datum(name, ell))
    assert [r["axiom"] for r in rep] == ["F(a)", "F(b)", "F(c)", "F(d)", "F(e)"]
    assert all(r["ok"] for r in rep), rep


def test_twisted_degrees_example_D(dD):
    # e(1,2) tau_1 = tau_1 e(2,1) has degree 1, e(2,1) tau_1 degree -1
    P = dD.paramsD
    assert P.deg2_tau(2, 1) == 2
    assert P.deg2_tau(1, 2) == -2
    assert (dD.deg2_R(1, 2), dD.deg2_R(2, 1)) == (2, -2)


def test_bad_entries_rejected():
    P = ambient_A(3)
    with pytest.raises(ValueError):
        datum_from_affinizations(P, [({1: 1}, L_z(P, 2))])
    with pytest.raises(TypeError):
        datum_from_affinizations(P, [({1: 1}, L(P, 1))])
    with pytest.raises(ValueError):
        duality_datum("B1", 2)
    with pytest.raises(ValueError):
        example_entries("E", 4)


def test_hypothesis_failure_reported():
    # L(1)_z (+) L(1)_z: the R-matrix on M o M does not specialize to a scalar
    P = ambient_A(2)
    M = direct_sum(L_z(P, 1).module, L_z(P, 1).module)
    with pytest.raises(HypothesisError):
        datum_from_affinizations(P, [({1: 1}, Affinization(M))])
    # two commuting copies of L(1)_z are a legitimate datum (Q^D_{1,2} = 1)
    d = datum_from_affinizations(P, [({1: 1}, L_z(P, 1, "z1")), ({1: 1}, L_z(P, 1, "z2"))])
    assert derive_cartan(d)[1] == [[2, 0], [0, 2]]


@pytest.mark.parametrize("name,ell,gamma", [("D", 4, {1: 1, 3: 1}), ("D", 4, {1: 2}),
                                            ("D", 4, {2: 1, 3: 1, 4: 1}), ("C", 3, {1: 1, 2: 1}),
                                            ("B1", 3, {1: 1, 2: 1}), ("B2", 4, {2: 1, 3: 1})])
def test_delta_bimodule_relations(name, ell, gamma):
    B = build_delta(datum(name, ell), gamma)
    assert B.report["right_relations"] == []
    assert B.report["bicommute"] == []


@pytest.mark.parametrize("name,ell", EXAMPLES)
def test_functor_on_generators(name, ell):
    d = datum(name, ell)
    for j in d.J:
        F = apply_functor(d, one_dim_D(d, (j,)))
        assert check_relations(F)["ok"]
        iso = isomorphic_up_to_shift(F, d.affs[j].quotient())
        assert iso is not None and iso[0] == 0


@pytest.mark.parametrize("name,ell,word", [("D", 4, (1, 3)), ("D", 4, (2, 1, 2)), ("C", 3, (1, 2)),
                                           ("C", 3, (2, 2)), ("B1", 3, (2, 1)),
                                           ("B2", 4, (1, 2)), ("B2", 4, (1, 1))])
def test_product_shortcut_matches_coequalizer(name, ell, word):
    d = datum(name, ell)
    P = convolve(*[one_dim_D(d, (j,)) for j in word])
    slow, fast = apply_functor(d, P), functor_of_product(d, word)
    assert slow.dim == fast.dim
    assert q_character(slow) == q_character(fast)
    iso = isomorphic_up_to_shift(slow, fast)
    assert iso is not None and iso[0] == 0


def test_functor_respects_order_of_products(dD):
    L1, L3 = one_dim_D(dD, (1,)), one_dim_D(dD, (3,))
    assert tensor_compatibility_check(dD, L1, L3)["ok"]
    # F(L1 o L3) is F(L1) o F(L3), not F(L3) o F(L1)
    X = apply_functor(dD, convolve(L1, L3))
    Y = convolve(apply_functor(dD, L3), apply_functor(dD, L1))
    assert isomorphic_up_to_shift(X, Y) is None


def test_exactness_check_rejects_wrong_maps(dD):
    M = convolve(one_dim_D(dD, (1,)), one_dim_D(dD, (3,)))
    S, Q, f, g = short_exact_sequence(M, find_proper_submodule(M))
    assert exactness_check(dD, S, M, Q, f, g)["ok"]
    zero = [dict() for _ in range(M.dim)]
    rep = exactness_check(dD, S, M, Q, f, zero)
    assert not rep["ok"] and not rep["surjective"]


def test_functor_map_identity(dC):
    M = convolve(one_dim_D(dC, (1,)), one_dim_D(dC, (2,)))
    FM = apply_functor(dC, M)
    ident = [{i: dC.params.field.one} for i in range(M.dim)]
    cols = functor_map(FM, FM, ident)
    assert cols == [{k: dC.params.field.one} for k in range(FM.dim)]


def test_functor_rejects_foreign_modules(dD):
    with pytest.raises(ValueError):
        apply_functor(dD, L(dD.params, 1))


def test_functor_on_affinization(dD):
    Fh = functor_on_affinization(dD, L_z(dD.paramsD, 2, "t"))
    assert Fh.rank == 1 and Fh.d2 == dD.affs[2].d2
    assert isomorphic_up_to_shift(Fh.quotient(), dD.affs[2].quotient()) is not None
