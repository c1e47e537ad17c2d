"""Maps between finite spaces and the non-expansiveness notions at each layer."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .distributions import leq_witness
from .levels import LevelFamily, delta_transform
from .probmet import FinitePMSpace
from .report import AxiomReport, Verdict
from .systems import (contraction_witness, family_local_bases, family_tables,
                      uniform_contraction_witness)


@dataclass(frozen=True)
class SpaceMap:
    domain: tuple[str, ...]
    codomain: tuple[str, ...]
    assign: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", tuple(self.codomain))
        if set(self.assign) != set(self.domain):
            missing = sorted(set(self.domain) - set(self.assign))
            if missing:
                raise ValueError(f"map has no image for {missing[0]!r}")
            raise ValueError(f"map assigns unknown point {sorted(set(self.assign) - set(self.domain))[0]!r}")
        cod = set(self.codomain)
        for x, y in self.assign.items():
            if y not in cod:
                raise ValueError(f"image {y!r} of {x!r} is not in the codomain")
        object.__setattr__(self, "assign", {x: self.assign[x] for x in self.domain})

    def __call__(self, x: str) -> str:
        return self.assign[x]

    @classmethod
    def identity(cls, carrier) -> "SpaceMap":
        return cls(tuple(carrier), tuple(carrier), {x: x for x in carrier})

    def compose(self, g: "SpaceMap") -> "SpaceMap":
        """``g`` after ``self``."""
        if tuple(g.domain) != tuple(self.codomain):
            raise ValueError("maps are not composable")
        return SpaceMap(self.domain, g.codomain, {x: g(self(x)) for x in self.domain})

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, tuple(self.assign.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (self.domain, self.codomain, dict(self.assign)) == (other.domain, other.codomain, dict(other.assign))

    def to_json(self, domain_ref: str = "", codomain_ref: str = "") -> dict:
        return {"domain": domain_ref, "codomain": codomain_ref, "assign": dict(self.assign)}


def _check_carriers(f: SpaceMap, X, Y) -> None:
    if set(f.domain) != set(X.carrier) or set(f.codomain) != set(Y.carrier):
        raise ValueError("map carriers do not match the spaces")
    if X.tnorm is not Y.tnorm:
        raise ValueError("spaces use different t-norms")


def nonexpansive_witness(f: SpaceMap, X: FinitePMSpace, Y: FinitePMSpace) -> Optional[dict]:
    _check_carriers(f, X, Y)
    for x, x2 in itertools.combinations(X.carrier, 2):
        t = leq_witness(X.alpha(x, x2), Y.alpha(f(x), f(x2)))
        if t is not None:
            return {"x": x, "x2": x2, "t": t, "domain_value": X(x, x2, t),
                    "codomain_value": Y(f(x), f(x2), t)}
    return None


def is_nonexpansive(f: SpaceMap, X: FinitePMSpace, Y: FinitePMSpace) -> bool:
    return nonexpansive_witness(f, X, Y) is None


def levelwise_witness(f: SpaceMap, F: LevelFamily, G: LevelFamily) -> Optional[dict]:
    """First ``(x, x', lam)`` with ``G_lam(f x, f x') > F_lam(x, x')``.

    Both sides are constant on every cell between consecutive boundaries of
    the two profiles, so the right end of each cell decides it.
    """
    _check_carriers(f, F, G)
    for x, x2 in itertools.combinations(F.carrier, 2):
        p = F.profile(x, x2)
        q = G.profile(f(x), f(x2))
        for lam in sorted(set(p.uptos) | set(q.uptos)):
            if q(lam) > p(lam):
                return {"x": x, "x2": x2, "lam": lam, "domain_value": p(lam), "codomain_value": q(lam)}
    return None


def is_levelwise_nonexpansive(f: SpaceMap, F: LevelFamily, G: LevelFamily) -> bool:
    return levelwise_witness(f, F, G) is None


def _verdict(witness: Optional[dict]) -> Verdict:
    return Verdict.ok() if witness is None else Verdict.fail(witness)


def morphism_equivalence_suite(f: SpaceMap, X: FinitePMSpace, Y: FinitePMSpace) -> AxiomReport:
    """All four morphism notions for ``f`` plus their agreement.

    ``equivalence`` passes iff non-expansiveness and levelwise
    non-expansiveness agree; ``implication`` passes iff a non-expansive map
    is also a contraction of the induced local and uniform bases.
    """
    F = delta_transform(X, check=False)
    G = delta_transform(Y, check=False)
    ne = nonexpansive_witness(f, X, Y)
    lw = levelwise_witness(f, F, G)
    lc = contraction_witness(f, family_local_bases(F), family_local_bases(G))
    uc = uniform_contraction_witness(f, family_tables(F), family_tables(G), F.carrier, G.carrier)
    report = AxiomReport("morphism")
    report.set("nonexpansive", _verdict(ne))
    report.set("levelwise", _verdict(lw))
    report.set("contraction", _verdict(lc))
    report.set("uniform_contraction", _verdict(uc))
    if (ne is None) == (lw is None):
        report.set("equivalence", Verdict.ok())
    else:
        report.set("equivalence", Verdict.fail({"nonexpansive": ne is None, "levelwise": lw is None}))
    if ne is not None or (lc is None and uc is None):
        report.set("implication", Verdict.ok())
    else:
        report.set("implication", Verdict.fail({"contraction": lc is None, "uniform_contraction": uc is None}))
    return report


def functor_composition_check(f: SpaceMap, g: SpaceMap, X: FinitePMSpace,
                              Y: FinitePMSpace, Z: FinitePMSpace) -> bool:
    """Delta acts as the identity on maps and composition keeps every notion."""
    gf = f.compose(g)
    _check_carriers(f, X, Y)
    _check_carriers(g, Y, Z)
    FX, FY, FZ = (delta_transform(S, check=False) for S in (X, Y, Z))
    # Delta(g . f) and Delta(g) . Delta(f) are the same assignment
    if SpaceMap(FX.carrier, FZ.carrier, gf.assign) != f.compose(g):
        return False
    if is_nonexpansive(f, X, Y) and is_nonexpansive(g, Y, Z) and not is_nonexpansive(gf, X, Z):
        return False
    if (is_levelwise_nonexpansive(f, FX, FY) and is_levelwise_nonexpansive(g, FY, FZ)
            and not is_levelwise_nonexpansive(gf, FX, FZ)):
        return False
    return True
