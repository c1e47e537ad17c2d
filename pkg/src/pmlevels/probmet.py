"""Finite probabilistic metric spaces and exact checks of (P1)-(P5)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from . import _kernels
from .distributions import DistributionFunction, epsilon_zero
from .exactnum import INF, ExtendedNonneg
from .report import AxiomReport, Verdict
from .tnorms import TNorm, apply

_HALF = Fraction(1, 2)


def pair_key(x: str, y: str) -> tuple[str, str]:
    return (x, y) if x <= y else (y, x)


def validate_carrier(carrier: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(carrier)
    if len(set(labels)) != len(labels):
        raise ValueError("carrier labels must be distinct")
    for p in labels:
        if not isinstance(p, str) or not p or "|" in p:
            raise ValueError(f"invalid point label {p!r}")
    return labels


@dataclass(frozen=True)
class FinitePMSpace:
    """A finite carrier with one distribution per unordered pair of distinct points.

    ``alpha(x, x)`` is the implicit epsilon_0 and symmetry is built into the
    storage, so (P1)-(P3) hold for every instance. (P4) and (P5) are decided
    by :func:`check_pm_axioms`.
    """

    carrier: tuple[str, ...]
    dists: Mapping[tuple[str, str], DistributionFunction]
    tnorm: TNorm

    def __post_init__(self) -> None:
        object.__setattr__(self, "carrier", validate_carrier(self.carrier))
        expected = {pair_key(x, y) for x, y in itertools.combinations(self.carrier, 2)}
        got = set(self.dists)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            if missing:
                raise ValueError(f"missing pair {'|'.join(missing[0])}")
            raise ValueError(f"unexpected pair {'|'.join(extra[0])}")
        object.__setattr__(self, "dists", dict(sorted(self.dists.items())))

    @classmethod
    def build(cls, carrier: Sequence[str], tnorm: TNorm | str,
              alpha: Mapping[tuple[str, str], object]) -> "FinitePMSpace":
        """Convenience constructor; values may be distributions or jump lists."""
        t = TNorm.parse(tnorm) if isinstance(tnorm, str) else tnorm
        dists = {}
        for (x, y), v in alpha.items():
            d = v if isinstance(v, DistributionFunction) else DistributionFunction.from_jumps(v)
            dists[pair_key(x, y)] = d
        return cls(tuple(carrier), dists, t)

    def alpha(self, x: str, y: str) -> DistributionFunction:
        if x == y:
            if x not in self.carrier:
                raise KeyError(x)
            return epsilon_zero()
        return self.dists[pair_key(x, y)]

    def __call__(self, x: str, y: str, gamma: ExtendedNonneg) -> Fraction:
        return self.alpha(x, y)(gamma)

    def pairs(self) -> Iterator[tuple[str, str]]:
        return iter(self.dists)

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(self.dists.items()), self.tnorm))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePMSpace):
            return NotImplemented
        return (self.carrier == other.carrier and self.tnorm is other.tnorm
                and dict(self.dists) == dict(other.dists))


def one_point_space(label: str = "x", tnorm: TNorm = TNorm.PRODUCT) -> FinitePMSpace:
    return FinitePMSpace((label,), {}, tnorm)


def _p5_triples(carrier: Sequence[str]) -> Iterator[tuple[str, str, str]]:
    # Triples with a repeated point hold by reflexivity and monotonicity, and
    # (z, y, x) is (x, y, z) with r and s exchanged.
    for x, z in itertools.combinations(carrier, 2):
        for y in carrier:
            if y != x and y != z:
                yield x, y, z


def p5_violations(space: FinitePMSpace, first_only: bool = False) -> list[dict]:
    """Every violated (P5) region, each with a replayable witness.

    For ``alpha(y,z,.)`` with jumps ``(p_i, u_i)`` and ``alpha(x,y,.)`` with
    jumps ``(q_j, v_j)``, the left side is the constant ``u_i * v_j`` on
    ``r in (p_i, p_{i+1}], s in (q_j, q_{j+1}]`` and the right side's infimum
    there is the right limit of ``alpha(x,z,.)`` at ``p_i + q_j``. All other
    regions have a zero factor or an infinite argument and cannot fail.
    """
    t = space.tnorm
    out: list[dict] = []
    for x, y, z in _p5_triples(space.carrier):
        f = space.alpha(y, z)
        g = space.alpha(x, y)
        h = space.alpha(x, z)
        for i, (p, u) in enumerate(f.jumps):
            for j, (q, v) in enumerate(g.jumps):
                lhs = apply(t, u, v)
                rhs = h.right_limit(p + q)
                if lhs <= rhs:
                    continue
                delta = _HALF
                if i + 1 < len(f.ats):
                    delta = min(delta, f.ats[i + 1] - p)
                if j + 1 < len(g.ats):
                    delta = min(delta, g.ats[j + 1] - q)
                h_next = h.next_jump_after(p + q)
                if h_next is not INF:
                    delta = min(delta, (h_next - p - q) / 2)
                r, s = p + delta, q + delta
                out.append({
                    "x": x, "y": y, "z": z, "r": r, "s": s,
                    "lhs": apply(t, f(r), g(s)), "rhs": h(r + s),
                    "region": {"r_after": p, "s_after": q},
                })
                if first_only:
                    return out
    return out


def check_pm_axioms(space: FinitePMSpace) -> AxiomReport:
    report = AxiomReport("pm-space")
    report.set("P1", Verdict.ok("by construction"))
    report.set("P2", Verdict.ok("by construction"))
    report.set("P3", Verdict.ok("by construction"))
    eps0 = epsilon_zero()
    p4 = next(((x, y) for (x, y), d in space.dists.items() if d == eps0), None)
    report.set("P4", Verdict.ok() if p4 is None else Verdict.fail({"x": p4[0], "y": p4[1]}))
    viol = p5_violations(space, first_only=True)
    report.set("P5", Verdict.ok() if not viol else Verdict.fail(viol[0]))
    return report


def p5_region_of(space: FinitePMSpace, x: str, y: str, z: str,
                 r: Fraction, s: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Jump-region corners ``(p_i, q_j)`` containing ``(r, s)`` for a triple."""
    f, g = space.alpha(y, z), space.alpha(x, y)
    if r is INF or s is INF or r == 0 or s == 0:
        return None
    fi = [a for a in f.ats if a < r]
    gj = [a for a in g.ats if a < s]
    if not fi or not gj:
        return None
    return fi[-1], gj[-1]


def p5_grid(space: FinitePMSpace, denominator: int = 1024) -> list[ExtendedNonneg]:
    """Default oracle grid: every jump point and its ``+-1/denominator`` neighbours, plus 0 and inf."""
    delta = Fraction(1, denominator)
    pts: set[Fraction] = {Fraction(0)}
    for d in space.dists.values():
        for a in d.ats:
            pts.update((a, a + delta))
            if a >= delta:
                pts.add(a - delta)
    return sorted(pts) + [INF]


def _tcode(t: TNorm) -> int:
    return (TNorm.MINIMUM, TNorm.PRODUCT, TNorm.LUKASIEWICZ).index(t)


def _p5_grid_search(space: FinitePMSpace, pts: list[ExtendedNonneg]) -> Optional[dict]:
    finite = [p for p in pts if p is not INF]
    dists = list(space.dists.values())
    d_at = math.lcm(1, *(p.denominator for p in finite),
                    *(a.denominator for d in dists for a in d.ats))
    d_to = math.lcm(1, *(u.denominator for d in dists for u in d.tos))
    biggest = max([p for p in finite] + [a for d in dists for a in d.ats] + [Fraction(0)])
    if biggest * d_at * 2 >= _kernels.MAX_FINITE or d_to * d_to >= _kernels.MAX_FINITE:
        return _p5_grid_search_exact(space, pts)
    grid = np.array([int(p * d_at) for p in finite] + [int(_kernels.INF_INT)] * (len(pts) - len(finite)),
                    dtype=np.int64)
    scaled = {}
    for key, d in space.dists.items():
        ats = np.array([int(a * d_at) for a in d.ats], dtype=np.int64)
        tos = np.array([int(u * d_to) for u in d.tos], dtype=np.int64)
        idx = np.searchsorted(ats, grid, side="left")
        vals = np.concatenate((np.zeros(1, dtype=np.int64), tos))[idx]
        vals[grid >= _kernels.INF_INT] = d_to
        scaled[key] = (ats, tos, vals)
    tcode = _tcode(space.tnorm)
    for x, y, z in itertools.permutations(space.carrier, 3):
        f_vals = scaled[pair_key(y, z)][2]
        g_vals = scaled[pair_key(x, y)][2]
        h_ats, h_tos, _ = scaled[pair_key(x, z)]
        ri, si = _kernels.p5_scan(tcode, grid, f_vals, g_vals, h_ats, h_tos, d_to)
        if ri >= 0:
            return _p5_witness(space, x, y, z, pts[ri], pts[si])
    return None


def _p5_witness(space: FinitePMSpace, x: str, y: str, z: str,
                r: ExtendedNonneg, s: ExtendedNonneg) -> dict:
    lhs = apply(space.tnorm, space(y, z, r), space(x, y, s))
    rhs = space(x, z, r + s)
    return {"x": x, "y": y, "z": z, "r": r, "s": s, "lhs": lhs, "rhs": rhs}


def _p5_grid_search_exact(space: FinitePMSpace, pts: list[ExtendedNonneg]) -> Optional[dict]:
    # exact fallback when scaled values would not fit in int64
    for x, y, z in itertools.permutations(space.carrier, 3):
        for r in pts:
            for s in pts:
                w = _p5_witness(space, x, y, z, r, s)
                if w["lhs"] > w["rhs"]:
                    return w
    return None


def oracle_p5_grid(space: FinitePMSpace, grid: Iterable[ExtendedNonneg]) -> AxiomReport:
    """Brute-force (P5) over every ``(r, s)`` in ``grid x grid``.

    Sound but incomplete; intended for differential testing of
    :func:`check_pm_axioms`.
    """
    pts = sorted(set(grid), key=lambda v: (v is INF, v if v is not INF else 0))
    report = AxiomReport("pm-space-oracle")
    hit = _p5_grid_search(space, pts)
    report.set("P5", Verdict.ok("grid-relative") if hit is None else Verdict.fail(hit))
    return report


def is_lim_space(space: FinitePMSpace) -> bool:
    return all(d.reaches_one for d in space.dists.values())
