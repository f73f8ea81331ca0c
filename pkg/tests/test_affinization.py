import itertools
import math

import pytest

from klrdual.affinization import (Affinization, build_K, check_affinization,
                                  composition_polynomial, intertwiner_failures, is_strong,
                                  r_endomorphism, rmatrix_normalized, rmatrix_pair, rmatrix_raw,
                                  symmetric_affinization)
from klrdual.catalog import (L, L_z, affinization_B1, affinization_L12, ambient_A, ambient_B,
                             module_B2)
from klrdual.modules import GradedModule, convolve, q_character
from klrdual.poly import Poly

PA = ambient_A(3)
PB = ambient_B(3)


def test_intertwiners_on_polynomial_convolution():
    M = convolve(L_z(PA, 1, "a").module, L_z(PA, 2, "b").module, L_z(PA, 1, "c").module)
    assert intertwiner_failures(M) == []
    N = convolve(L_z(PB, 1, "a").module, L_z(PB, 2, "b").module)
    assert intertwiner_failures(N) == []


def test_intertwiner_check_detects_wrong_tau():
    C = convolve(L_z(PA, 1, "a").module, L_z(PA, 2, "b").module)
    tau = [[{i: p * 2 for i, p in col.items()} for col in C.tau[0]]]
    bad = GradedModule(PA, 2, C.basis, C.x, tau, C.ring)
    assert intertwiner_failures(bad)


@pytest.mark.parametrize("i,j", list(itertools.product([1, 2, 3], repeat=2)))
def test_raw_rmatrix_squares_to_q(i, j):
    # R_{N,M} R_{M,N} = phi^2 e(i,j) = Q_{i,j}(x_1, x_2) + delta_{ij}
    A, B = L_z(PA, i, "a"), L_z(PA, j, "b")
    R12 = rmatrix_raw(A.module, B.module, check=True)
    R21 = rmatrix_raw(B.module, A.module, check=True)
    f = composition_polynomial(R12, R21)
    want = Poly()
    for (p, q), c in PA.Q.Q(i, j).items():
        want = want + Poly.var("a", p, c) * Poly.var("b", q)
    if i == j:
        want = want + Poly.const(1)
    assert f == want


def test_catalog_affinizations_valid_and_strong():
    for A in [L_z(PA, 1), affinization_L12(PA), build_K(PA, 1, 2), affinization_B1(PB),
              module_B2(PB)]:
        rep = check_affinization(A)
        assert rep["valid"], (A, rep)
        assert rep["strong"], A


def test_K_modules():
    P = ambient_A(2)
    for n in (2, 3):
        K = build_K(P, 1, n)
        assert K.d2 == 4 * n
        assert K.rank == math.factorial(n)
        assert q_character(K.quotient()) == q_character(convolve(*[L(P, 1)] * n))
        assert is_strong(K)


def test_symmetric_affinization_requirements():
    with pytest.raises(ValueError):
        symmetric_affinization(L_z(PA, 1).module)
    with pytest.raises(ValueError):
        symmetric_affinization(L(PB, 1, 2))      # Q_{1,2} = u^2 - v is not symmetric
    with pytest.raises(ValueError):
        Affinization(L(PA, 1))


def test_normalized_rmatrix_degrees():
    A, B = affinization_L12(PA, "a"), L_z(PA, 2, "b")
    R12, R21 = rmatrix_pair(A, B), rmatrix_pair(B, A)
    assert (R12.degree, R21.degree) == (2, -2)
    f = composition_polynomial(R12, R21)
    assert f == Poly.const(1)
    nr = rmatrix_normalized(affinization_L12(PA, "a"), L(PA, 3))
    assert not nr.specialize().is_zero()
    with pytest.raises(ValueError):
        rmatrix_pair(A, A)


def test_r_endomorphism_divided_difference():
    A = L_z(PA, 1, "a")
    R = rmatrix_pair(A, A.renamed("b"), same=True)
    r = r_endomorphism(R, "a", "b")
    assert not all(not c for c in r.cols)
    assert r.degree == R.degree - A.d2
