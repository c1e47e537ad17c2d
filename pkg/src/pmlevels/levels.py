"""Level-distance families: the transform Delta, its inverse Phi, and the (U*) checks.

A level profile is a nonincreasing step function of lam in ]0, 1] stored as
pieces ``(upto_i, value_i)``: ``d_lam = value_i`` for ``lam`` in
``(upto_{i-1}, upto_i]`` with ``upto_0 = 0`` and the last ``upto`` equal to 1.
The half-open pieces make every profile left-continuous, which is the
density axiom for step functions.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from . import _kernels
from .distributions import DistributionFunction
from .exactnum import INF, ExtendedNonneg, ext, format_ext, unit
from .probmet import FinitePMSpace, _tcode, check_pm_axioms, pair_key, validate_carrier
from .report import AxiomReport, AxiomViolation, Verdict
from .tnorms import TNorm, apply, lambda_for_epsilon

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LevelProfile:
    uptos: tuple[Fraction, ...]
    values: tuple[ExtendedNonneg, ...]

    def __post_init__(self) -> None:
        if not self.uptos or len(self.uptos) != len(self.values):
            raise ValueError("a profile needs at least one piece")
        if self.uptos[-1] != 1:
            raise ValueError("the last piece must end at 1")
        prev = _ZERO
        for i, (u, v) in enumerate(zip(self.uptos, self.values)):
            if not u > prev:
                raise ValueError("piece ends must be strictly increasing in ]0, 1]")
            if i and not v < self.values[i - 1]:
                raise ValueError("piece values must be strictly decreasing")
            prev = u

    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple[object, object]]) -> "LevelProfile":
        """Canonical profile from ``(upto, value)`` pairs sorted by ``upto``.

        Adjacent pieces with equal values are merged. Increasing values are
        rejected since a level profile must be nonincreasing.
        """
        uptos: list[Fraction] = []
        values: list[ExtendedNonneg] = []
        for upto, value in pieces:
            u = unit(upto)
            v = ext(value)
            if u == 0:
                raise ValueError("piece ends must lie in ]0, 1]")
            if uptos and not u > uptos[-1]:
                raise ValueError("piece ends must be strictly increasing")
            if values and v > values[-1]:
                raise ValueError("profile values must be nonincreasing in lambda")
            if values and v == values[-1]:
                uptos[-1] = u
            else:
                uptos.append(u)
                values.append(v)
        return cls(tuple(uptos), tuple(values))

    @classmethod
    def constant(cls, value: object) -> "LevelProfile":
        return cls((_ONE,), (ext(value),))

    @property
    def pieces(self) -> tuple[tuple[Fraction, ExtendedNonneg], ...]:
        return tuple(zip(self.uptos, self.values))

    @property
    def lefts(self) -> tuple[Fraction, ...]:
        return (_ZERO,) + self.uptos[:-1]

    def __call__(self, lam: Fraction) -> ExtendedNonneg:
        if not (0 < lam <= 1):
            raise ValueError("lambda must lie in ]0, 1]")
        return self.values[bisect_left(self.uptos, lam)]

    def right_limit(self, lam: Fraction) -> ExtendedNonneg:
        """``lim_{rho -> lam+} d_rho`` for ``lam`` in [0, 1[."""
        if not (0 <= lam < 1):
            raise ValueError("right limit needs lambda in [0, 1[")
        return self.values[bisect_right(self.uptos, lam)]

    def piece_index(self, lam: Fraction) -> int:
        return bisect_left(self.uptos, lam)

    def to_json(self) -> list[dict[str, str]]:
        return [{"upto": format_ext(u), "value": format_ext(v)} for u, v in self.pieces]

    @classmethod
    def from_json(cls, items: list) -> "LevelProfile":
        if not isinstance(items, list) or not items:
            raise ValueError("profile must be a nonempty list of pieces")
        pieces = []
        for k, item in enumerate(items):
            if not isinstance(item, dict) or set(item) != {"upto", "value"}:
                raise ValueError(f"piece #{k} must have exactly the keys 'upto' and 'value'")
            try:
                pieces.append((unit(item["upto"]), ext(item["value"])))
            except (TypeError, ValueError) as exc:
                raise ValueError(f"piece #{k}: {exc}") from None
        return cls.from_pieces(pieces)


ZERO_PROFILE = LevelProfile((_ONE,), (_ZERO,))


@dataclass(frozen=True)
class LevelFamily:
    """Carrier plus one level profile per unordered pair of distinct points."""

    carrier: tuple[str, ...]
    profiles: Mapping[tuple[str, str], LevelProfile]
    tnorm: TNorm

    def __post_init__(self) -> None:
        object.__setattr__(self, "carrier", validate_carrier(self.carrier))
        expected = {pair_key(x, y) for x, y in itertools.combinations(self.carrier, 2)}
        if set(self.profiles) != expected:
            missing = sorted(expected - set(self.profiles))
            if missing:
                raise ValueError(f"missing pair {'|'.join(missing[0])}")
            extra = sorted(set(self.profiles) - expected)
            raise ValueError(f"unexpected pair {'|'.join(extra[0])}")
        object.__setattr__(self, "profiles", dict(sorted(self.profiles.items())))

    @classmethod
    def build(cls, carrier: Sequence[str], tnorm: TNorm | str,
              levels: Mapping[tuple[str, str], object]) -> "LevelFamily":
        t = TNorm.parse(tnorm) if isinstance(tnorm, str) else tnorm
        profiles = {}
        for (x, y), v in levels.items():
            p = v if isinstance(v, LevelProfile) else LevelProfile.from_pieces(v)
            profiles[pair_key(x, y)] = p
        return cls(tuple(carrier), profiles, t)

    def profile(self, x: str, y: str) -> LevelProfile:
        if x == y:
            if x not in self.carrier:
                raise KeyError(x)
            return ZERO_PROFILE
        return self.profiles[pair_key(x, y)]

    def __call__(self, lam: Fraction, x: str, y: str) -> ExtendedNonneg:
        return self.profile(x, y)(lam)

    def boundaries(self) -> list[Fraction]:
        """Every piece end of every profile, plus 1."""
        return sorted({u for p in self.profiles.values() for u in p.uptos} | {_ONE})

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(self.profiles.items()), self.tnorm))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LevelFamily):
            return NotImplemented
        return (self.carrier == other.carrier and self.tnorm is other.tnorm
                and dict(self.profiles) == dict(other.profiles))


def level_eval(family: LevelFamily, lam: Fraction, x: str, y: str) -> ExtendedNonneg:
    if x not in family.carrier or y not in family.carrier:
        raise KeyError(f"unknown point {x if x not in family.carrier else y!r}")
    return family.profile(x, y)(Fraction(lam))


# ---------------------------------------------------------------------------
# Delta and Phi
# ---------------------------------------------------------------------------

def profile_of_distribution(phi: DistributionFunction) -> LevelProfile:
    """``d_lam = inf{gamma < inf : phi(gamma) > 1 - lam}`` in closed form.

    With jumps ``(p_i, u_i)`` the infimum is ``p_i`` for the first ``i`` with
    ``u_i > 1 - lam``, i.e. for ``lam`` in ``(1 - u_i, 1 - u_{i-1}]``, and
    infinite for ``lam <= 1 - u_k``.
    """
    pieces: list[tuple[Fraction, ExtendedNonneg]] = []
    if not phi.reaches_one:
        top = phi.tos[-1] if phi.tos else _ZERO
        pieces.append((1 - top, INF))
    prev_to = list((_ZERO,) + phi.tos[:-1])
    for at, below in reversed(list(zip(phi.ats, prev_to))):
        pieces.append((1 - below, at))
    return LevelProfile.from_pieces(pieces)


def distribution_of_profile(profile: LevelProfile) -> DistributionFunction:
    """``beta(gamma) = sup{1 - lam : d_lam < gamma}`` with ``sup {} = 0``.

    The first piece (from the left) whose value is below ``gamma`` has the
    smallest left end ``a``, so ``beta`` jumps to ``1 - a`` just after each
    finite piece value.
    """
    return DistributionFunction.from_jumps(
        (v, 1 - a) for a, v in zip(profile.lefts, profile.values) if v is not INF
    )


def delta_transform(space: FinitePMSpace, check: bool = True) -> LevelFamily:
    if check:
        rep = check_pm_axioms(space)
        if not rep.ok:
            raise AxiomViolation(f"input space fails {', '.join(rep.failed)}", rep)
    profiles = {k: profile_of_distribution(d) for k, d in space.dists.items()}
    return LevelFamily(space.carrier, profiles, space.tnorm)


def phi_reconstruct(family: LevelFamily, check: bool = True) -> FinitePMSpace:
    if check:
        rep = check_level_axioms(family)
        if not rep.ok:
            raise AxiomViolation(f"input family fails {', '.join(rep.failed)}", rep)
    dists = {k: distribution_of_profile(p) for k, p in family.profiles.items()}
    return FinitePMSpace(family.carrier, dists, family.tnorm)


def oracle_level_distance(space: FinitePMSpace, lam: Fraction, x: str, y: str,
                          grid: Iterable[ExtendedNonneg]) -> ExtendedNonneg:
    """Smallest finite grid point ``gamma`` with ``alpha(x,y,gamma) > 1 - lam``, else INF."""
    lam = Fraction(lam)
    if x == y:
        return _ZERO
    phi = space.alpha(x, y)
    best: ExtendedNonneg = INF
    for g in grid:
        if g is not INF and g < best and phi(g) > 1 - lam:
            best = g
    return best


def level_oracle_grid(space: FinitePMSpace, x: str, y: str, denominator: int = 1024) -> list[ExtendedNonneg]:
    delta = Fraction(1, denominator)
    pts = {_ZERO}
    for a in space.alpha(x, y).ats:
        pts.update((a, a + delta))
        if a >= delta:
            pts.add(a - delta)
    return sorted(pts) + [INF]


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

def _ut_triples(carrier: Sequence[str]) -> Iterator[tuple[str, str, str]]:
    # Triples with a repeated point always hold (t-norms lie below minimum and
    # profiles are nonincreasing); (z, y, x) mirrors (x, y, z).
    for x, z in itertools.combinations(carrier, 2):
        for y in carrier:
            if y != x and y != z:
                yield x, y, z


def _witness_levels(t: TNorm, a: Fraction, b: Fraction, a2: Fraction, b2: Fraction,
                    eps: Fraction) -> tuple[Fraction, Fraction]:
    """``lam`` in ``(a, b]`` and ``lam'`` in ``(a2, b2]`` with ``T(1-lam', 1-lam) > 1 - eps``.

    Requires ``T(1 - a2, 1 - a) > 1 - eps``; continuity makes the bisection
    toward the left ends terminate.
    """
    lam, lam2 = b, b2
    while not apply(t, 1 - lam2, 1 - lam) > 1 - eps:
        lam = a + (lam - a) / 2
        lam2 = a2 + (lam2 - a2) / 2
    return lam, lam2


def ut_violations(family: LevelFamily, first_only: bool = False) -> list[dict]:
    """Every violated (UT) piece pair, with a replayable witness.

    For ``lam`` on the piece ``(a, b]`` of ``d(x,y)`` and ``lam'`` on the
    piece ``(a', b']`` of ``d(y,z)``, the admissible ``eps`` are exactly
    ``eps > 1 - T(1 - a', 1 - a)`` (the supremum of the t-norm over the two
    half-open pieces, approached at the left ends). Since ``d(x,z)`` is
    nonincreasing, the largest left side is its right limit at that bound.
    """
    t = family.tnorm
    out: list[dict] = []
    for x, y, z in _ut_triples(family.carrier):
        P = family.profile(x, y)
        Q = family.profile(y, z)
        R = family.profile(x, z)
        for i, (a, b, v) in enumerate(zip(P.lefts, P.uptos, P.values)):
            if v is INF:
                continue
            for j, (a2, b2, w) in enumerate(zip(Q.lefts, Q.uptos, Q.values)):
                if w is INF:
                    continue
                s = apply(t, 1 - a2, 1 - a)
                if s == 0:
                    continue
                e0 = 1 - s
                k = bisect_right(R.uptos, e0)
                bound = R.values[k]
                if bound <= v + w:
                    continue
                eps = R.uptos[k]
                lam, lam2 = _witness_levels(t, a, b, a2, b2, eps)
                out.append({
                    "x": x, "y": y, "z": z, "eps": eps, "lam": lam, "lam2": lam2,
                    "d_eps_xz": R(eps), "d_lam_xy": P(lam), "d_lam2_yz": Q(lam2),
                    "pieces": [i, j],
                })
                if first_only:
                    return out
    return out


def ut_piece_key(family: LevelFamily, x: str, y: str, z: str,
                 lam: Fraction, lam2: Fraction) -> tuple[str, str, str, int, int]:
    """Normalize an ``(x, y, z, lam, lam')`` instance to ``ut_violations``' indexing."""
    if x > z:
        x, z, lam, lam2 = z, x, lam2, lam
    return (x, y, z, family.profile(x, y).piece_index(lam), family.profile(y, z).piece_index(lam2))


def check_level_axioms(family: LevelFamily) -> AxiomReport:
    report = AxiomReport("level-family")
    report.set("US", Verdict.ok("by construction"))
    report.set("UD", Verdict.ok("by construction"))
    viol = ut_violations(family, first_only=True)
    report.set("UT", Verdict.ok() if not viol else Verdict.fail(viol[0]))
    uh = next(((x, y) for (x, y), p in family.profiles.items() if p.values[0] == 0), None)
    report.set("UH", Verdict.ok() if uh is None else Verdict.fail({"x": uh[0], "y": uh[1]}))
    return report


def _scaled_profile(p: LevelProfile, n: int, denom: int) -> np.ndarray:
    out = np.empty(n + 1, dtype=np.int64)
    out[0] = 0
    start = 1
    for u, v in zip(p.uptos, p.values):
        stop = math.floor(u * n)
        out[start:stop + 1] = _kernels.INF_INT if v is INF else int(v * denom)
        start = max(start, stop + 1)
    return out


def oracle_ut_grid(family: LevelFamily, grid: int | Iterable[Fraction] = 1024) -> AxiomReport:
    """Brute-force (UT) on a lambda grid; sound but not complete.

    An int ``grid`` means all of ``{k/grid : 1 <= k <= grid}`` and runs on
    the scaled integer kernel; an explicit iterable is checked by a direct
    loop over ``eps, lam, lam'`` in the grid cube.
    """
    report = AxiomReport("level-family-oracle")
    if isinstance(grid, int):
        hit = _ut_grid_uniform(family, grid)
    else:
        hit = _ut_grid_explicit(family, sorted(set(Fraction(g) for g in grid)))
    report.set("UT", Verdict.ok("grid-relative") if hit is None else Verdict.fail(hit))
    return report


def _ut_witness(family: LevelFamily, x, y, z, eps, lam, lam2) -> dict:
    return {"x": x, "y": y, "z": z, "eps": eps, "lam": lam, "lam2": lam2,
            "d_eps_xz": family(eps, x, z), "d_lam_xy": family(lam, x, y),
            "d_lam2_yz": family(lam2, y, z)}


def _ut_grid_explicit(family: LevelFamily, grid: list[Fraction]) -> Optional[dict]:
    if any(not (0 < g <= 1) for g in grid):
        raise ValueError("lambda grid must lie in ]0, 1]")
    t = family.tnorm
    for x, y, z in itertools.permutations(family.carrier, 3):
        for eps in grid:
            for lam in grid:
                for lam2 in grid:
                    if not apply(t, 1 - lam2, 1 - lam) > 1 - eps:
                        continue
                    w = _ut_witness(family, x, y, z, eps, lam, lam2)
                    if w["d_eps_xz"] > w["d_lam_xy"] + w["d_lam2_yz"]:
                        return w
    return None


def _ut_grid_uniform(family: LevelFamily, n: int) -> Optional[dict]:
    finite = [v for p in family.profiles.values() for v in p.values if v is not INF]
    denom = math.lcm(1, *(v.denominator for v in finite))
    if max(finite, default=_ZERO) * denom * 2 >= _kernels.MAX_FINITE:
        return _ut_grid_explicit(family, [Fraction(k, n) for k in range(1, n + 1)])
    arrays = {k: _scaled_profile(p, n, denom) for k, p in family.profiles.items()}
    emin = _kernels.min_eps_table(_tcode(family.tnorm), n)
    # (z, y, x) is (x, y, z) with lam and lam' exchanged, and the grid is symmetric
    for x, y, z in _ut_triples(family.carrier):
        e, l1, l2 = _kernels.ut_scan(emin, arrays[pair_key(x, y)],
                                     arrays[pair_key(y, z)], arrays[pair_key(x, z)])
        if e >= 0:
            return _ut_witness(family, x, y, z, Fraction(int(e), n),
                               Fraction(int(l1), n), Fraction(int(l2), n))
    return None


def check_mixed_triangle(family: LevelFamily) -> AxiomReport:
    """(UM): ``d_eps(x,z) <= d_lam(x,y) + d_lam(y,z)`` with ``lam = lambda_for_epsilon(eps)``.

    Checked at every profile breakpoint ``eps``. Per-point slices of the same
    inequality give the local form (LM), which is therefore reported alongside.
    """
    t = family.tnorm
    report = AxiomReport("mixed-triangle")
    hit = None
    for eps in family.boundaries():
        lam = lambda_for_epsilon(t, eps)
        for x, y, z in itertools.permutations(family.carrier, 3):
            lhs = family(eps, x, z)
            rhs = family(lam, x, y) + family(lam, y, z)
            if lhs > rhs:
                hit = {"x": x, "y": y, "z": z, "eps": eps, "lam": lam, "lhs": lhs, "rhs": rhs}
                break
        if hit:
            break
    verdict = Verdict.ok() if hit is None else Verdict.fail(hit)
    report.set("UM", verdict)
    report.set("LM", verdict)
    return report


def duality_discrepancies(space: FinitePMSpace, family: LevelFamily,
                          denominator: int = 1024) -> list[dict]:
    """Instances where either duality biconditional fails.

    For finite ``gamma``: ``d_lam < gamma  <=>  alpha(gamma) > 1 - lam`` and
    ``beta(gamma) > 1 - lam  <=>  d_lam < gamma`` with ``beta = Phi(family)``.
    ``gamma`` ranges over the jump points of alpha, offset by
    ``+-1/denominator``, and 0; ``lam`` over the profile ends, offset
    likewise and clipped to ]0, 1].
    """
    delta = Fraction(1, denominator)
    out = []
    for x, y in itertools.combinations(space.carrier, 2):
        alpha = space.alpha(x, y)
        prof = family.profile(x, y)
        beta = distribution_of_profile(prof)
        gammas = {_ZERO}
        for a in alpha.ats:
            gammas.update(g for g in (a - delta, a, a + delta) if g >= 0)
        lams = set()
        for u in prof.uptos:
            lams.update(l for l in (u - delta, u, u + delta) if 0 < l <= 1)
        for gamma in sorted(gammas):
            for lam in sorted(lams):
                d = prof(lam)
                left = d < gamma
                if left != (alpha(gamma) > 1 - lam) or left != (beta(gamma) > 1 - lam):
                    out.append({"x": x, "y": y, "gamma": gamma, "lam": lam, "d": d,
                                "alpha": alpha(gamma), "beta": beta(gamma)})
    return out


def duality_check(space: FinitePMSpace, family: LevelFamily, denominator: int = 1024) -> bool:
    return not duality_discrepancies(space, family, denominator)


def is_fin_family(family: LevelFamily) -> bool:
    return all(v is not INF for p in family.profiles.values() for v in p.values)
