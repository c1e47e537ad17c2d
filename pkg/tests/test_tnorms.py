import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmlevels.tnorms import (TNorm, apply, check_lemma_star, dyadic_grid, lambda_for_epsilon,
                             lemma_sweep, verify_tnorm_laws)

from conftest import dyadics, tnorms


def test_apply_examples():
    assert apply(TNorm.PRODUCT, Fr(3, 4), Fr(3, 4)) == Fr(9, 16)
    assert apply(TNorm.LUKASIEWICZ, Fr(3, 4), Fr(3, 4)) == Fr(1, 2)
    assert apply(TNorm.MINIMUM, Fr(3, 5), Fr(4, 5)) == Fr(3, 5)
    assert TNorm.PRODUCT(Fr(1, 2), Fr(1, 2)) == Fr(1, 4)


@pytest.mark.parametrize("t", list(TNorm))
def test_laws_on_dyadic_grid(t):
    assert verify_tnorm_laws(t, dyadic_grid(16)).ok


def test_non_tnorm_fails_associativity():
    def f(a, b):
        return max(a + b - 1, Fr(0)) ** 2

    rep = verify_tnorm_laws(f, [Fr(0), Fr(4, 5), Fr(9, 10), Fr(1)])
    assert "associativity" in rep.failed
    # independent evaluation of the two bracketings
    assert f(f(Fr(1), Fr(4, 5)), Fr(9, 10)) == Fr(2916, 10000)
    assert f(Fr(1), f(Fr(4, 5), Fr(9, 10))) == Fr(2401, 10000)


def test_non_commutative_control():
    rep = verify_tnorm_laws(lambda a, b: a * b * b, dyadic_grid(4))
    assert "commutativity" in rep.failed


def test_laws_grid_precondition():
    with pytest.raises(ValueError):
        verify_tnorm_laws(TNorm.PRODUCT, [Fr(1, 2), Fr(1)])


def test_parse():
    assert TNorm.parse("lukasiewicz") is TNorm.LUKASIEWICZ
    with pytest.raises(ValueError, match="unknown t-norm"):
        TNorm.parse("hamacher")


def test_lambda_for_epsilon_examples():
    lam = lambda_for_epsilon(TNorm.PRODUCT, Fr(1, 2))
    assert lam == Fr(1, 4)
    assert (1 - lam) * (1 - lam) == Fr(9, 16) > Fr(1, 2)
    lam = lambda_for_epsilon(TNorm.LUKASIEWICZ, Fr(1, 2))
    assert lam == Fr(1, 8)
    assert (1 - lam) + (1 - lam) - 1 == Fr(3, 4)
    assert lambda_for_epsilon(TNorm.MINIMUM, Fr(2, 3)) == Fr(1, 3)


@given(tnorms, st.fractions(min_value=Fr(1, 10 ** 6), max_value=1))
def test_lambda_for_epsilon_inequality(t, eps):
    lam = lambda_for_epsilon(t, eps)
    assert 0 < lam <= 1
    assert apply(t, 1 - lam, 1 - lam) > 1 - eps


def test_lambda_for_epsilon_rejects_zero():
    with pytest.raises(ValueError):
        lambda_for_epsilon(TNorm.PRODUCT, Fr(0))


def brute_lemma(t, a, b, d, grid):
    # direct transcription of the three conditions, quantifying over the grid
    c1 = d >= apply(t, a, b)
    c2 = all(d >= apply(t, 1 - l2, 1 - l1) for l1 in grid for l2 in grid
             if a > 1 - l1 and b > 1 - l2)
    c3 = all(d >= 1 - r for r in grid if apply(t, a, b) > 1 - r)
    return c1, c2, c3


def test_lemma_star_examples():
    g16 = dyadic_grid(16, include_zero=False)
    assert check_lemma_star(TNorm.MINIMUM, Fr(3, 5), Fr(4, 5), Fr(3, 5), g16) == (True, True, True)
    for t in TNorm:
        assert check_lemma_star(t, Fr(1), Fr(1), Fr(1), g16) == (True, True, True)


def test_lemma_star_product_example_is_grid_relative():
    a = b = Fr(3, 4)
    d = Fr(1, 2)
    g16 = dyadic_grid(16, include_zero=False)
    # on the 1/16 grid the largest 1 - rho below 9/16 is 1/2, so c3 holds
    assert brute_lemma(TNorm.PRODUCT, a, b, d, g16) == (False, True, True)
    assert check_lemma_star(TNorm.PRODUCT, a, b, d, g16) == (False, True, True)
    # a fine enough grid reaches the answer the exact conditions give
    g512 = dyadic_grid(512, include_zero=False)
    assert check_lemma_star(TNorm.PRODUCT, a, b, d, g512) == (False, False, False)


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_lemma_star_rejects_zero(bad):
    with pytest.raises(ValueError):
        check_lemma_star(TNorm.PRODUCT, *map(Fr, bad), dyadic_grid(4))


@given(tnorms, dyadics(8), dyadics(8), dyadics(8))
def test_lemma_star_matches_brute_force(t, a, b, d):
    grid = dyadic_grid(32, include_zero=False)
    assert check_lemma_star(t, a, b, d, grid) == brute_lemma(t, a, b, d, grid)


@given(tnorms, dyadics(8), dyadics(8), dyadics(8))
def test_lemma_coherence_on_256_grid(t, a, b, d):
    # denominators <= 8 keep a*b at least 1/256 away from every other grid value
    c1, c2, c3 = check_lemma_star(t, a, b, d, dyadic_grid(256, include_zero=False))
    assert c1 == c3
    assert not c1 or c2


@given(tnorms, dyadics(64), dyadics(64), dyadics(64))
def test_c1_implies_c2(t, a, b, d):
    c1, c2, _ = check_lemma_star(t, a, b, d, dyadic_grid(64, include_zero=False))
    assert not c1 or c2


@pytest.mark.parametrize("t", list(TNorm))
def test_sweep_matches_pointwise(t):
    n, g = 4, 32
    grid = dyadic_grid(g, include_zero=False)
    counts = dict.fromkeys(("c1", "c2", "c3", "c1_ne_c3"), 0)
    for a, b, d in itertools.product(dyadic_grid(n, include_zero=False), repeat=3):
        c1, c2, c3 = brute_lemma(t, a, b, d, grid)
        counts["c1"] += c1
        counts["c2"] += c2
        counts["c3"] += c3
        counts["c1_ne_c3"] += c1 != c3
    got = lemma_sweep(t, n, g)
    assert got["total"] == n ** 3
    for k, v in counts.items():
        assert got[k] == v, k
