"""Distance distributions as canonical step functions.

A distribution is stored as its finite jumps ``(at_i, to_i)`` with both
coordinates strictly increasing. Its value is

    phi(gamma) = max{to_i : at_i < gamma}   (0 if no such jump)
    phi(inf)   = 1

so left-continuity and ``phi(0) = 0`` hold by construction. When the last
finite ``to`` is below 1 the function jumps to 1 only at infinity.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .exactnum import INF, ExtendedNonneg, ext, format_ext, unit

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class DistributionFunction:
    """Left-continuous nondecreasing step function [0, inf] -> [0, 1].

    Build instances through :meth:`from_jumps`, which canonicalizes; the raw
    constructor assumes its input is already canonical.
    """

    ats: tuple[Fraction, ...]
    tos: tuple[Fraction, ...]
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self._check:
            return
        if len(self.ats) != len(self.tos):
            raise ValueError("ats and tos differ in length")
        for i in range(len(self.ats)):
            if self.ats[i] is INF or self.ats[i] < 0:
                raise ValueError("finite non-negative jump points required")
            if not (0 < self.tos[i] <= 1):
                raise ValueError("jump values must lie in ]0, 1]")
            if i and not (self.ats[i - 1] < self.ats[i] and self.tos[i - 1] < self.tos[i]):
                raise ValueError("jumps are not in canonical strictly increasing form")

    @classmethod
    def from_jumps(cls, jumps: Iterable[tuple[object, object]]) -> "DistributionFunction":
        """Canonicalize an arbitrary list of ``(at, to)`` pairs.

        Jumps at infinity are dropped (the value at infinity is always 1) and
        jumps dominated by an earlier-or-equal jump are removed.
        """
        best: dict[Fraction, Fraction] = {}
        for at, to in jumps:
            a = ext(at)
            t = unit(to)
            if a is INF or t == 0:
                continue
            if t > best.get(a, _ZERO):
                best[a] = t
        ats: list[Fraction] = []
        tos: list[Fraction] = []
        for a in sorted(best):
            t = best[a]
            if not tos or t > tos[-1]:
                ats.append(a)
                tos.append(t)
        return cls(tuple(ats), tuple(tos), False)

    @property
    def jumps(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.ats, self.tos))

    @property
    def reaches_one(self) -> bool:
        """True when the value 1 is attained at a finite argument."""
        return bool(self.tos) and self.tos[-1] == 1

    def __call__(self, gamma: ExtendedNonneg) -> Fraction:
        if gamma is INF:
            return _ONE
        i = bisect_left(self.ats, gamma)
        return self.tos[i - 1] if i else _ZERO

    eval = __call__

    def right_limit(self, gamma: ExtendedNonneg) -> Fraction:
        """``lim_{t -> gamma+} phi(t)`` for finite ``gamma``."""
        if gamma is INF:
            raise ValueError("right limit at infinity is undefined")
        i = bisect_right(self.ats, gamma)
        return self.tos[i - 1] if i else _ZERO

    def next_jump_after(self, gamma: Fraction) -> ExtendedNonneg:
        """Smallest finite jump point strictly above ``gamma``, else INF."""
        i = bisect_right(self.ats, gamma)
        return self.ats[i] if i < len(self.ats) else INF

    def to_json(self) -> list[dict[str, str]]:
        out = [{"at": format_ext(a), "to": format_ext(t)} for a, t in self.jumps]
        if not self.reaches_one:
            out.append({"at": "inf", "to": "1"})
        return out

    @classmethod
    def from_json(cls, items: list) -> "DistributionFunction":
        if not isinstance(items, list):
            raise ValueError("distribution must be a list of jumps")
        jumps = []
        for k, item in enumerate(items):
            if not isinstance(item, dict) or set(item) != {"at", "to"}:
                raise ValueError(f"jump #{k} must have exactly the keys 'at' and 'to'")
            try:
                jumps.append((ext(item["at"]), unit(item["to"])))
            except (TypeError, ValueError) as exc:
                raise ValueError(f"jump #{k}: {exc}") from None
        return cls.from_jumps(jumps)


def epsilon_zero() -> DistributionFunction:
    """The largest distribution: 0 at 0, 1 everywhere else."""
    return _EPSILON_ZERO


_EPSILON_ZERO = DistributionFunction((_ZERO,), (_ONE,), False)


def step_at(at: object) -> DistributionFunction:
    """Single jump to 1 at ``at``; embeds an ordinary distance."""
    return DistributionFunction.from_jumps([(at, 1)])


def breakpoints(*phis: DistributionFunction) -> list[Fraction]:
    return sorted({a for phi in phis for a in phi.ats})


def leq_witness(phi: DistributionFunction, psi: DistributionFunction) -> Optional[Fraction]:
    """A point ``gamma`` with ``phi(gamma) > psi(gamma)``, or None.

    Both functions are constant on every interval between consecutive merged
    breakpoints, so comparing right limits at ``0`` and at each breakpoint
    decides the order; a violation on ``(p, next]`` is witnessed at the
    midpoint of that interval.
    """
    points = [_ZERO] + [p for p in breakpoints(phi, psi) if p > 0]
    for k, p in enumerate(points):
        if phi.right_limit(p) > psi.right_limit(p):
            nxt = points[k + 1] if k + 1 < len(points) else p + 2
            return (p + nxt) / 2
    return None


def pointwise_leq(phi: DistributionFunction, psi: DistributionFunction) -> bool:
    """Decide ``phi(gamma) <= psi(gamma)`` for every gamma in [0, inf]."""
    return leq_witness(phi, psi) is None
