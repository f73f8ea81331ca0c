import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from klrdual.cartan import (CartanDatum, KLRParams, QPolynomialSet, SkewForm, act_on_word,
                            compose, coset_reps, generator_degree, is_min_coset_rep, length,
                            lex_word, longest_shuffle, perm_from_word, perm_inverse, split_coset,
                            validate_cartan, validate_qpolys)
from klrdual.catalog import ambient_A, ambient_B

perms = st.integers(1, 5).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


@given(perms)
def test_lex_word_is_reduced_word(p):
    w = lex_word(p)
    assert perm_from_word(w, len(p)) == p
    assert len(w) == length(p)


@given(perms, perms)
def test_compose_and_inverse(p, q):
    if len(p) != len(q):
        return
    e = tuple(range(len(p)))
    assert compose(p, perm_inverse(p)) == e
    assert length(compose(p, q)) <= length(p) + length(q)
    nu = tuple("abcde"[: len(p)])
    assert act_on_word(compose(p, q), nu) == act_on_word(p, act_on_word(q, nu))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.data())
def test_coset_reps_count_and_split(comp, data):
    n = sum(comp)
    reps = coset_reps(comp)
    assert len(reps) == math.factorial(n) // math.prod(math.factorial(m) for m in comp)
    assert all(is_min_coset_rep(p, comp) for p, _ in reps)
    p = data.draw(st.permutations(list(range(n))).map(tuple))
    w, y = split_coset(p, comp)
    assert compose(w, y) == p
    assert is_min_coset_rep(w, comp)
    assert length(p) == length(w) + length(y)


def test_longest_shuffle():
    p, w = longest_shuffle(2, 1)
    assert p == (1, 2, 0)
    assert len(w) == 2


def test_catalog_ambients_valid():
    for P in (ambient_A(3), ambient_B(3), ambient_A(5), ambient_B(5)):
        assert validate_cartan(P.datum) == []
        assert validate_qpolys(P.Q) == []
    assert ambient_B(2).datum.gcm() == [[2, -2], [-1, 2]]


def test_invalid_data_rejected():
    bad = CartanDatum([1, 2], [[2, 1], [1, 2]])
    assert any(v["condition"] == "(3)" for v in validate_cartan(bad))
    odd = CartanDatum([1, 2], [[3, -1], [-1, 2]])
    assert validate_cartan(odd)
    D = ambient_A(2).datum
    # wrong degree support for Q_12
    Q = QPolynomialSet(D, {(1, 2): {(2, 0): 1, (0, 1): -1}})
    assert any(v["condition"] == "support" for v in validate_qpolys(Q))


def test_q_table_symmetry_and_qbar():
    P = ambient_B(3)
    Q = P.Q
    for i, j in itertools.permutations([1, 2, 3], 2):
        assert Q.Q(j, i) == {(q, p): c for (p, q), c in Q.Q(i, j).items()}
    # qbar(u, v, w) = (Q(u, v) - Q(w, v)) / (u - w)
    for u, v, w in [(3, 5, 7), (2, -1, 4)]:
        assert Q.qbar_eval(1, 2, u, v, w) * (u - w) == Q.eval(1, 2, u, v) - Q.eval(1, 2, w, v)
    assert Q.is_symmetric_on([2, 3])
    assert not Q.is_symmetric_on([1, 2])


def test_twisted_degrees():
    P = ambient_A(2).with_twist(SkewForm({(1, 2): 1}))
    assert generator_degree(P, "tau", (1, 2), 1) == 2 * (1 - 1)
    assert generator_degree(P, "tau", (2, 1), 1) == 2 * (1 + 1)
    assert generator_degree(P, "x", (1, 2), 2) == 4
    with pytest.raises(IndexError):
        generator_degree(P, "tau", (1, 2), 2)
    assert not P.same_algebra(ambient_A(2))
    assert isinstance(P, KLRParams)
