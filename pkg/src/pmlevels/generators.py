"""Seeded random spaces, families, maps and labelled axiom-breaking mutants.

Valid instances come from chains of metrics: ``d_lam = M_i`` on the i-th lam
piece with ``M_1 >= M_2 >= ...`` pointwise, each ``M_i`` a metric. Any
t-norm lies below minimum, so (UT) only ever compares ``d_eps`` against
levels at ``lam, lam' < eps``, which dominate it; hence the chain is valid
for all three t-norms. Adding a cluster metric (0 inside a cluster, inf
across) to the first few levels gives spaces whose distributions only reach
1 at infinity.

Values use small denominators and the level cuts are dyadic with denominator
at most 16, which keeps every violation region wide compared to the
1/1024 oracle grids.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from .distributions import DistributionFunction, epsilon_zero
from .exactnum import INF
from .levels import LevelFamily, LevelProfile, check_level_axioms, phi_reconstruct
from .morphisms import SpaceMap
from .probmet import FinitePMSpace, check_pm_axioms, pair_key
from .tnorms import TNorm

VALUE_DENOMINATORS = (1, 2, 3, 4, 5, 6, 8, 10)
CUT_DENOMINATOR = 16

SPACE_MUTATIONS = ("P4", "P5")
FAMILY_MUTATIONS = ("UH", "UT")


def labels(n: int) -> list[str]:
    base = ["x", "y", "z", "u", "v", "w"]
    return base[:n] if n <= len(base) else [f"p{i}" for i in range(n)]


def _rand_value(rng: random.Random, lo: int = 0, hi: int = 6) -> Fraction:
    den = rng.choice(VALUE_DENOMINATORS)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_metric(rng: random.Random, carrier, positive: bool = True) -> dict:
    """Shortest-path closure of random edge weights (a pseudometric when ``positive`` is False)."""
    n = len(carrier)
    lo = 1 if positive else 0
    d = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        w = _rand_value(rng, 0, 6)
        if positive and w < lo:
            w += lo
        elif not positive and rng.random() < 0.4:
            w = Fraction(0)
        d[i][j] = d[j][i] = w
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return {pair_key(carrier[i], carrier[j]): d[i][j] for i, j in itertools.combinations(range(n), 2)}


def _clusters(rng: random.Random, carrier) -> dict:
    """A cluster metric with at least two clusters (when possible)."""
    n = len(carrier)
    k = rng.randint(2, max(2, n)) if n > 1 else 1
    tag = {p: rng.randrange(k) for p in carrier}
    if n > 1 and len(set(tag.values())) < 2:
        tag[carrier[0]], tag[carrier[-1]] = 0, 1
    return {pair_key(a, b): (Fraction(0) if tag[a] == tag[b] else INF)
            for a, b in itertools.combinations(carrier, 2)}


def _cuts(rng: random.Random, k: int) -> list[Fraction]:
    inner = rng.sample(range(1, CUT_DENOMINATOR), min(k - 1, CUT_DENOMINATOR - 1))
    return sorted(Fraction(c, CUT_DENOMINATOR) for c in inner) + [Fraction(1)]


def random_chain_family(rng: random.Random, n_points: int, max_pieces: int,
                        tnorm: TNorm, with_inf: bool = False, carrier=None) -> LevelFamily:
    carrier = list(carrier) if carrier is not None else labels(n_points)
    n_points = len(carrier)
    k = rng.randint(1, max_pieces)
    if with_inf and n_points > 1:
        # an infinite piece needs a finite one after it
        k = max(k, 2)
    cuts = _cuts(rng, k)
    k = len(cuts)
    # levels listed from the last piece (lam near 1) back to the first
    current = random_metric(rng, carrier, positive=True)
    levels = [current]
    for _ in range(k - 1):
        extra = random_metric(rng, carrier, positive=False)
        current = {p: current[p] + extra[p] for p in current}
        levels.append(current)
    levels.reverse()
    if with_inf and n_points > 1:
        cl = _clusters(rng, carrier)
        upto = rng.randint(1, k - 1)
        for i in range(upto):
            levels[i] = {p: levels[i][p] + cl[p] for p in levels[i]}
    profiles = {p: LevelProfile.from_pieces((cuts[i], levels[i][p]) for i in range(k))
                for p in levels[0]} if n_points > 1 else {}
    return LevelFamily(tuple(carrier), profiles, tnorm)


def random_valid_space(rng: random.Random, n_points: int, max_jumps: int, tnorm: TNorm,
                       with_inf: bool = False, mutate: bool = False) -> FinitePMSpace:
    """A space passing (P1)-(P5); ``mutate`` adds one accepted random jump edit."""
    space = phi_reconstruct(random_chain_family(rng, n_points, max_jumps, tnorm, with_inf), check=False)
    if mutate and space.dists:
        for _ in range(20):
            cand = _jump_edit(rng, space, max_jumps)
            if cand is not None and check_pm_axioms(cand).ok:
                return cand
    return space


def _jump_edit(rng: random.Random, space: FinitePMSpace, max_jumps: int) -> Optional[FinitePMSpace]:
    key = rng.choice(list(space.dists))
    jumps = list(space.dists[key].jumps)
    op = rng.randrange(3)
    if op == 0 and jumps:
        i = rng.randrange(len(jumps))
        at, to = jumps[i]
        jumps[i] = (max(Fraction(1, 10), at + rng.choice((-1, 1)) * Fraction(1, rng.choice(VALUE_DENOMINATORS))), to)
    elif op == 1 and len(jumps) < max_jumps:
        jumps.append((_rand_value(rng, 0, 12) + Fraction(1, 10),
                      Fraction(rng.randint(1, CUT_DENOMINATOR), CUT_DENOMINATOR)))
    elif len(jumps) > 1:
        jumps.pop(rng.randrange(len(jumps)))
    else:
        return None
    jumps.sort()
    try:
        d = DistributionFunction.from_jumps(jumps)
    except ValueError:
        return None
    if len(d.ats) > max_jumps:
        return None
    dists = dict(space.dists)
    dists[key] = d
    return FinitePMSpace(space.carrier, dists, space.tnorm)


def _duplicate_point(carrier, table: dict, zero, rng: random.Random):
    src = rng.choice(list(carrier))
    new = next(f"{src}{k}" for k in itertools.count(2) if f"{src}{k}" not in carrier)
    out = dict(table)
    for p in carrier:
        out[pair_key(p, new)] = zero if p == src else table[pair_key(p, src)]
    return tuple(carrier) + (new,), out


def space_mutant(rng: random.Random, space: FinitePMSpace, axiom: str) -> FinitePMSpace:
    """Break exactly ``axiom`` in a valid space."""
    if axiom == "P4":
        carrier, dists = _duplicate_point(space.carrier, dict(space.dists), epsilon_zero(), rng)
        return FinitePMSpace(carrier, dists, space.tnorm)
    if axiom == "P5":
        if len(space.carrier) < 3:
            raise ValueError("a (P5) mutant needs three points")
        x, y, z = rng.sample(list(space.carrier), 3)
        far = _last_at(space.alpha(x, y)) + _last_at(space.alpha(y, z)) + 1
        dists = dict(space.dists)
        dists[pair_key(x, z)] = DistributionFunction.from_jumps([(far, 1)])
        return FinitePMSpace(space.carrier, dists, space.tnorm)
    raise ValueError(f"unknown space mutation {axiom!r}")


def _last_at(d: DistributionFunction) -> Fraction:
    return d.ats[-1] if d.ats else Fraction(0)


def family_mutant(rng: random.Random, family: LevelFamily, axiom: str) -> LevelFamily:
    """Break exactly ``axiom`` in a valid family (UT needs finite levels and three points)."""
    if axiom == "UH":
        carrier, profiles = _duplicate_point(family.carrier, dict(family.profiles),
                                             LevelProfile.constant(0), rng)
        return LevelFamily(carrier, profiles, family.tnorm)
    if axiom == "UT":
        if len(family.carrier) < 3:
            raise ValueError("a (UT) mutant needs three points")
        x, y, z = rng.sample(list(family.carrier), 3)
        q = Fraction(1, 4)
        bound = family(q, x, y) + family(q, y, z)
        if bound is INF:
            raise ValueError("a (UT) mutant needs finite levels")
        profiles = dict(family.profiles)
        profiles[pair_key(x, z)] = LevelProfile.constant(bound + 1)
        return LevelFamily(family.carrier, profiles, family.tnorm)
    raise ValueError(f"unknown family mutation {axiom!r}")


def random_map(rng: random.Random, domain, codomain) -> SpaceMap:
    return SpaceMap(tuple(domain), tuple(codomain), {x: rng.choice(list(codomain)) for x in domain})


def random_morphism_instance(rng: random.Random, tnorm: TNorm, max_points: int = 5,
                             max_jumps: int = 6) -> tuple[SpaceMap, FinitePMSpace, FinitePMSpace, str]:
    """``(f, X, Y, kind)`` with a mix of non-expansive and non-non-expansive maps.

    ``dominating`` pulls Y's levels back along f and adds a chain family on X,
    so f is non-expansive; ``perturbed`` lowers one level of such an X;
    ``independent`` draws X on its own.
    """
    ny = rng.randint(1, max_points)
    nx = rng.randint(1, max_points)
    G = random_chain_family(rng, ny, max_jumps // 2 or 1, tnorm, with_inf=rng.random() < 0.2)
    Y = phi_reconstruct(G, check=False)
    kind = rng.choice(("dominating", "perturbed", "independent"))
    xs = [f"a{i}" for i in range(nx)]
    f = random_map(rng, xs, Y.carrier)
    if kind == "independent":
        F = random_chain_family(rng, nx, max_jumps, tnorm, carrier=xs)
        return f, phi_reconstruct(F, check=False), Y, kind
    M = random_chain_family(rng, nx, max_jumps // 2 or 1, tnorm, carrier=xs)
    profiles = {}
    for a, b in itertools.combinations(xs, 2):
        m = M.profile(a, b)
        g = G.profile(f(a), f(b))
        cuts = sorted(set(m.uptos) | set(g.uptos))
        profiles[pair_key(a, b)] = LevelProfile.from_pieces((c, m(c) + g(c)) for c in cuts)
    F = LevelFamily(tuple(xs), profiles, tnorm)
    if kind == "perturbed" and profiles:
        key = rng.choice(sorted(profiles))
        p = profiles[key]
        i = rng.randrange(len(p.values))
        drop = Fraction(rng.randint(1, 4), rng.choice(VALUE_DENOMINATORS))
        pieces = list(p.pieces)
        v = pieces[i][1]
        lowered = v - drop if v is not INF else Fraction(rng.randint(1, 20))
        pieces[i] = (pieces[i][0], max(Fraction(1, 10), lowered))
        try:
            cand = LevelFamily(tuple(xs), {**profiles, key: LevelProfile.from_pieces(pieces)}, tnorm)
            if check_level_axioms(cand).ok:
                F = cand
        except ValueError:
            pass
    return f, phi_reconstruct(F, check=False), Y, kind


def generate_space(seed: int, n_points: int, max_jumps: int, tnorm: TNorm,
                   mode: str = "valid") -> tuple[FinitePMSpace, dict]:
    """Deterministic space plus provenance tag; used by the CLI ``gen`` command."""
    rng = random.Random(seed)
    prov = {"generator": "metric-chain", "seed": seed, "points": n_points,
            "breaks": max_jumps, "tnorm": tnorm.value, "mode": mode}
    if mode == "valid":
        mutate = n_points > 1 and rng.random() < 0.5
        space = random_valid_space(rng, n_points, max_jumps, tnorm, mutate=mutate)
        if mutate:
            prov["generator"] = "mutate-reject"
        return space, prov
    if mode == "mutant":
        if n_points < 2:
            raise ValueError("a mutant needs at least two points")
        # (P4) mutants duplicate a point, so they start one point smaller
        axiom = "P5" if n_points >= 3 and rng.random() < 0.5 else "P4"
        base = random_valid_space(rng, n_points if axiom == "P5" else n_points - 1, max_jumps, tnorm)
        prov["mutation"] = axiom
        return space_mutant(rng, base, axiom), prov
    raise ValueError(f"unknown generator mode {mode!r}")
