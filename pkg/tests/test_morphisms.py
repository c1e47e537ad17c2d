import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given

from pmlevels.generators import random_morphism_instance
from pmlevels.levels import delta_transform
from pmlevels.morphisms import (SpaceMap, functor_composition_check, is_levelwise_nonexpansive,
                                is_nonexpansive, levelwise_witness, morphism_equivalence_suite,
                                nonexpansive_witness)
from pmlevels.probmet import FinitePMSpace, one_point_space
from pmlevels.tnorms import TNorm

from conftest import seeds, tnorms, valid_spaces

ID = SpaceMap.identity(("x", "y"))


def test_nonexpansive_examples(pm2, pm2p):
    assert is_nonexpansive(ID, pm2, pm2)
    assert is_nonexpansive(ID, pm2p, pm2)
    w = nonexpansive_witness(ID, pm2, pm2p)
    assert w["t"] == Fr(5, 2)
    assert pm2("x", "y", Fr(5, 2)) == Fr(1, 2) > pm2p("x", "y", Fr(5, 2)) == 0


def test_levelwise_examples(pm2, pm2p):
    F, G = delta_transform(pm2p), delta_transform(pm2)
    assert is_levelwise_nonexpansive(ID, delta_transform(pm2), delta_transform(pm2))
    assert is_levelwise_nonexpansive(ID, F, G)
    w = levelwise_witness(ID, G, F)
    assert w is not None
    lam = w["lam"]
    assert F(lam, "x", "y") > G(lam, "x", "y")
    # the quoted witness level also violates: 3 > 2
    assert F(Fr(7, 10), "x", "y") == 3 > G(Fr(7, 10), "x", "y") == 2


def test_suite_examples(pm2, pm2p):
    rep = morphism_equivalence_suite(ID, pm2, pm2)
    assert rep.ok
    rep = morphism_equivalence_suite(ID, pm2p, pm2)
    assert rep.ok
    rep = morphism_equivalence_suite(ID, pm2, pm2p)
    assert rep["nonexpansive"].status == "fail" and rep["levelwise"].status == "fail"
    assert rep["equivalence"].passed and rep["implication"].passed


def test_composition_chain(pm2, pm2p, pm2pp):
    assert functor_composition_check(ID, ID, pm2pp, pm2p, pm2)
    assert is_nonexpansive(ID.compose(ID), pm2pp, pm2)
    assert functor_composition_check(ID, ID, pm2, pm2, pm2)


def test_composition_precondition(pm2):
    other = SpaceMap(("u",), ("u",), {"u": "u"})
    with pytest.raises(ValueError):
        functor_composition_check(ID, other, pm2, pm2, pm2)


def test_map_validation():
    with pytest.raises(ValueError):
        SpaceMap(("x", "y"), ("u",), {"x": "u"})
    with pytest.raises(ValueError):
        SpaceMap(("x",), ("u",), {"x": "v"})


def test_tnorm_mismatch(pm2):
    other = FinitePMSpace(pm2.carrier, pm2.dists, TNorm.MINIMUM)
    with pytest.raises(ValueError):
        is_nonexpansive(ID, pm2, other)


@given(valid_spaces())
def test_identity_everywhere(space):
    idm = SpaceMap.identity(space.carrier)
    assert morphism_equivalence_suite(idm, space, space).ok


@given(valid_spaces())
def test_constant_into_point(space):
    pt = one_point_space("c", space.tnorm)
    f = SpaceMap(space.carrier, ("c",), {x: "c" for x in space.carrier})
    assert morphism_equivalence_suite(f, space, pt).ok


@given(seeds, tnorms)
def test_equivalence_random(seed, t):
    f, X, Y, _ = random_morphism_instance(random.Random(seed), t)
    rep = morphism_equivalence_suite(f, X, Y)
    assert rep["equivalence"].passed
    assert rep["implication"].passed
    if rep["nonexpansive"].passed:
        assert rep["contraction"].passed and rep["uniform_contraction"].passed


def test_contraction_is_weaker():
    # saturation lets any level dominate, so contraction need not give
    # non-expansiveness
    for seed in range(400):
        f, X, Y, _ = random_morphism_instance(random.Random(seed), TNorm.PRODUCT)
        rep = morphism_equivalence_suite(f, X, Y)
        if rep["contraction"].passed and not rep["nonexpansive"].passed:
            return
    pytest.fail("no instance separates the notions")


@given(seeds, tnorms)
def test_composition_random(seed, t):
    rng = random.Random(seed)
    g, Y, Z, _ = random_morphism_instance(rng, t)
    f, X, Y2, _ = random_morphism_instance(rng, t)
    # reuse Y as f's codomain by drawing f freshly onto Y's carrier
    f = SpaceMap(X.carrier, Y.carrier, {x: rng.choice(Y.carrier) for x in X.carrier})
    assert functor_composition_check(f, g, X, Y, Z)
