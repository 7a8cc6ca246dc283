import numpy as np
import pytest

from ppcount.gf import gf
from ppcount.permpoly import (FieldTooSmall, Permutation, PolyFq, SizeMismatch, all_permutations,
                              coeff_x_qm2, eval_poly, interpolate, is_low_degree,
                              random_permutation)


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    assert str(Permutation.parse("2,0,1")) == "2,0,1"


def test_identity_gf3():
    P = interpolate(gf(3), Permutation.identity(3))
    assert P.coeffs == (0, 1)
    assert P.degree == 1


def test_transposition_gf2():
    P = interpolate(gf(2), Permutation((1, 0)))
    assert P.coeffs == (1, 1)          # x + 1
    assert P.degree == 1               # q - 1: the q > 2 hypothesis matters


def test_identity_gf5():
    F = gf(5)
    sigma = Permutation.identity(5)
    assert interpolate(F, sigma).coeffs == (0, 1)
    assert is_low_degree(F, sigma)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        interpolate(gf(5), Permutation.identity(4))


def test_eval_examples():
    F5, F3 = gf(5), gf(3)
    assert eval_poly(PolyFq(F5, ()), 3) == 0
    assert PolyFq(F5, ()).degree == -1
    assert eval_poly(PolyFq(F5, (3,)), 4) == 3
    assert eval_poly(PolyFq(F3, (1, 0, 1)), 2) == 2


def test_trailing_zeros_stripped():
    assert PolyFq(gf(5), (1, 2, 0, 0)).coeffs == (1, 2)


def test_coeff_examples():
    assert coeff_x_qm2(gf(5), Permutation.identity(5)) == 0
    # -(0 + 1 + 4) = -5 = 1 in GF(3)
    assert coeff_x_qm2(gf(3), Permutation.identity(3)) == 1
    assert all(coeff_x_qm2(gf(3), s) != 0 for s in all_permutations(3))


def test_criterion_needs_q_above_2():
    with pytest.raises(FieldTooSmall):
        is_low_degree(gf(2), Permutation.identity(2))
    with pytest.raises(FieldTooSmall):
        coeff_x_qm2(gf(2), Permutation.identity(2))


@pytest.mark.parametrize("q, expected", [(3, 0), (4, 12), (5, 20)])
def test_low_degree_counts(q, expected):
    F = gf(q)
    assert sum(is_low_degree(F, s) for s in all_permutations(q)) == expected


def _check(F, sigma):
    P = interpolate(F, sigma)
    assert all(P(a) == sigma(a) for a in F.elements)
    if F.q > 2:
        assert P.degree <= F.q - 2
        assert is_low_degree(F, sigma) == (P.degree < F.q - 2)
        assert coeff_x_qm2(F, sigma) == P.coeff(F.q - 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_all_permutations_small(q):
    F = gf(q)
    for sigma in all_permutations(q):
        _check(F, sigma)


@pytest.mark.parametrize("q", [8, 9, 11, 13, 16])
def test_random_permutations(q):
    F = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(1000):
        _check(F, random_permutation(q, rng))


def test_interpolation_agrees_across_moduli():
    # same permutation of indices, different fields: both interpolate exactly
    for text in ("2^3/1,0,1,1", "2^3/1,1,0,1"):
        F = gf(text)
        _check(F, Permutation((3, 1, 4, 0, 5, 2, 7, 6)))
