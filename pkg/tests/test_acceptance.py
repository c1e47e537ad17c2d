"""Acceptance criteria, one test each.

Every test appends a PASS/FAIL line that is printed in the terminal summary
(and immediately with ``-s``). A shared corpus of generated spaces feeds the
first criteria.
"""

import collections
import random
import time
from fractions import Fraction as Fr

import pytest

from pmlevels.documents import dumps, family_to_doc, space_to_doc
from pmlevels.generators import (family_mutant, random_chain_family, random_morphism_instance,
                                 random_valid_space, space_mutant)
from pmlevels.levels import (check_level_axioms, check_mixed_triangle, delta_transform,
                             duality_discrepancies, is_fin_family, level_eval,
                             level_oracle_grid, oracle_level_distance, oracle_ut_grid,
                             phi_reconstruct)
from pmlevels.morphisms import is_levelwise_nonexpansive, is_nonexpansive
from pmlevels.probmet import check_pm_axioms, is_lim_space, oracle_p5_grid, p5_grid
from pmlevels.tnorms import TNorm, lemma_sweep

from conftest import ACCEPTANCE_LINES

TNORMS = list(TNorm)
CORPUS_SIZE = 1050
GRID = 1024


def record(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(20240601)
    t0 = time.perf_counter()
    spaces = []
    for i in range(CORPUS_SIZE):
        # every seventh space carries jumps at infinity; half come from random edits
        spaces.append(random_valid_space(rng, rng.randint(1, 6), 8, TNORMS[i % 3],
                                         with_inf=i % 7 == 0, mutate=i % 2 == 1))
    return spaces, time.perf_counter() - t0


@pytest.fixture(scope="module")
def families(corpus):
    return [delta_transform(s, check=False) for s in corpus[0]]


def test_roundtrip_identity(corpus):
    spaces, gen_time = corpus
    t0 = time.perf_counter()
    bad = 0
    for s in spaces:
        fam = delta_transform(s)
        back = phi_reconstruct(fam)
        again = delta_transform(back)
        bad += dumps(space_to_doc(back)) != dumps(space_to_doc(s))
        bad += dumps(family_to_doc(again)) != dumps(family_to_doc(fam))
    elapsed = gen_time + time.perf_counter() - t0
    per_t = collections.Counter(s.tnorm.value for s in spaces)
    ok = bad == 0 and len(spaces) >= 1000 and elapsed < 60 and len(per_t) == 3
    record("round-trip identity", ok,
           f"{len(spaces)} spaces {dict(per_t)}, {bad} mismatches, {elapsed:.1f}s (limit 60s)")


def test_image_axioms(families):
    fails = collections.Counter()
    for fam in families:
        fails.update(check_level_axioms(fam).failed)
        fails.update(f"mixed:{a}" for a in check_mixed_triangle(fam).failed)
    record("image axioms", not fails,
           f"{len(families)} families checked for US UD UT UH UM LM, failures {dict(fails) or 0}")


def test_characterization_converse():
    rng = random.Random(77)
    bad = 0
    n_fam = 600
    for i in range(n_fam):
        fam = random_chain_family(rng, rng.randint(1, 6), 8, TNORMS[i % 3], with_inf=i % 5 == 0)
        if not check_level_axioms(fam).ok or not check_pm_axioms(phi_reconstruct(fam, check=False)).ok:
            bad += 1
    cats = collections.Counter()
    total = 0
    for i in range(400):
        ax = ("UH", "UT")[i % 2]
        fam = random_chain_family(rng, rng.randint(3, 6), 6, TNORMS[i % 3])
        failed = check_level_axioms(family_mutant(rng, fam, ax)).failed
        total += 1
        cats["exact" if failed == [ax] else "also-other" if ax in failed else "missed"] += 1
    rate = cats["exact"] / total
    record("characterization converse", bad == 0 and rate >= 0.95,
           f"{n_fam} families, {bad} failures; mutants {total}, exact-axiom rate {rate:.1%}, {dict(cats)}")


def test_duality(corpus, families):
    spaces, _ = corpus
    bad = sum(len(duality_discrepancies(s, f, GRID)) for s, f in zip(spaces, families))
    record("duality", bad == 0, f"{len(spaces)} spaces, {bad} discrepancies")


def test_oracle_agreement(corpus, families):
    rng = random.Random(5)
    spaces = list(corpus[0])
    fams = list(families)
    for i in range(300):
        base = random_valid_space(rng, rng.randint(3, 6), 6, TNORMS[i % 3])
        spaces.append(space_mutant(rng, base, ("P4", "P5")[i % 2]))
    for i in range(300):
        base = random_chain_family(rng, rng.randint(3, 6), 6, TNORMS[i % 3])
        fams.append(family_mutant(rng, base, ("UH", "UT")[i % 2]))
    p5_dis = p5_fail = 0
    for s in spaces:
        exact = "P5" in check_pm_axioms(s).failed
        oracle = "P5" in oracle_p5_grid(s, p5_grid(s, GRID)).failed
        p5_fail += exact
        p5_dis += exact != oracle
    ut_dis = ut_fail = 0
    for f in fams:
        exact = "UT" in check_level_axioms(f).failed
        oracle = "UT" in oracle_ut_grid(f, GRID).failed
        ut_fail += exact
        ut_dis += exact != oracle
    record("oracle agreement", p5_dis == 0 and ut_dis == 0 and p5_fail > 0 and ut_fail > 0,
           f"P5: {len(spaces)} spaces ({p5_fail} failing), {p5_dis} disagreements; "
           f"UT: {len(fams)} families ({ut_fail} failing), {ut_dis} disagreements")


def test_morphism_equivalence():
    rng = random.Random(99)
    bad = 0
    n = 1200
    kinds = collections.Counter()
    for i in range(n):
        f, X, Y, kind = random_morphism_instance(rng, TNORMS[i % 3])
        ne = is_nonexpansive(f, X, Y)
        lw = is_levelwise_nonexpansive(f, delta_transform(X, check=False), delta_transform(Y, check=False))
        kinds[(kind, ne)] += 1
        bad += ne != lw
    yes = sum(v for (k, ne), v in kinds.items() if ne)
    record("morphism equivalence", bad == 0,
           f"{n} maps ({yes} non-expansive, {n - yes} not), {bad} discrepancies")


def test_finiteness(corpus, families):
    spaces, _ = corpus
    bad = sum(is_lim_space(s) != is_fin_family(f) for s, f in zip(spaces, families))
    at_inf = sum(not is_lim_space(s) for s in spaces)
    record("finiteness correspondence", bad == 0 and at_inf >= 100,
           f"{len(spaces)} spaces ({at_inf} with a jump at infinity), {bad} discrepancies")


def test_lemma_coherence():
    t0 = time.perf_counter()
    total = ne13 = n12 = 0
    for t in TNORMS:
        c = lemma_sweep(t, 64)
        total += c["total"]
        ne13 += c["c1_ne_c3"]
        n12 += c["c1_not_c2"]
    elapsed = time.perf_counter() - t0
    record("lemma coherence", ne13 == 0 and n12 == 0 and total == 3 * 64 ** 3 and elapsed < 30,
           f"{total} triples, c1!=c3: {ne13}, c1 and not c2: {n12}, {elapsed:.1f}s (limit 30s)")


def test_worked_constants(pm2, f2):
    step = Fr(1, GRID)
    notes = []
    ok = delta_transform(pm2) == f2
    grid = level_oracle_grid(pm2, "x", "y", GRID)
    for lam, want in ((Fr(3, 10), 5), (Fr(7, 10), 2)):
        exact = level_eval(f2, lam, "x", "y")
        oracle = oracle_level_distance(pm2, lam, "x", "y", grid)
        ok &= exact == want and exact <= oracle <= exact + step
        notes.append(f"d_{lam}={exact}")
    beta = phi_reconstruct(f2)
    for gamma, want in ((1, Fr(0)), (3, Fr(1, 2)), (7, Fr(1))):
        exact = beta("x", "y", Fr(gamma))
        # beta(gamma) > c  iff  d_{1-c} < gamma, scanned over c = k/GRID
        oracle = max((Fr(k, GRID) for k in range(GRID)
                      if level_eval(f2, 1 - Fr(k, GRID), "x", "y") < gamma), default=Fr(0))
        ok &= exact == want and oracle <= exact <= oracle + step
        notes.append(f"beta({gamma})={exact}")
    record("worked constants", ok, ", ".join(notes))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
