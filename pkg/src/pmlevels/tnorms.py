"""The three classical continuous t-norms with exact rational evaluation."""

from __future__ import annotations

import enum
import itertools
from bisect import bisect_left
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .report import AxiomReport, Verdict

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TNorm(enum.Enum):
    MINIMUM = "minimum"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    def __call__(self, a: Fraction, b: Fraction) -> Fraction:
        return apply(self, a, b)

    @classmethod
    def parse(cls, name: str) -> "TNorm":
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(t.value for t in cls)
            raise ValueError(f"unknown t-norm {name!r} (expected one of {known})") from None


def apply(t: TNorm, a: Fraction, b: Fraction) -> Fraction:
    if t is TNorm.MINIMUM:
        return a if a <= b else b
    if t is TNorm.PRODUCT:
        return a * b
    s = a + b - 1
    return s if s > 0 else _ZERO


def dyadic_grid(denominator: int, include_zero: bool = True) -> list[Fraction]:
    """``{k / denominator : 0 <= k <= denominator}`` (optionally without 0)."""
    start = 0 if include_zero else 1
    return [Fraction(k, denominator) for k in range(start, denominator + 1)]


def verify_tnorm_laws(
    t: TNorm | Callable[[Fraction, Fraction], Fraction],
    grid: Iterable[Fraction],
) -> AxiomReport:
    """Exhaustively check unit, commutativity, associativity, monotonicity on ``grid``.

    ``t`` may be any binary operation so that non-t-norms can serve as
    negative controls.
    """
    op = t if not isinstance(t, TNorm) else (lambda a, b, _t=t: apply(_t, a, b))
    g = sorted(set(Fraction(v) for v in grid))
    if not g or g[0] != 0 or g[-1] != 1:
        raise ValueError("grid must be nonempty and contain 0 and 1")
    report = AxiomReport("tnorm-laws")

    def first(cases, fails):
        for case in cases:
            w = fails(*case)
            if w is not None:
                return w
        return None

    unit_w = first(
        ((a,) for a in g),
        lambda a: None if op(_ONE, a) == a else {"a": a, "value": op(_ONE, a)},
    )
    comm_w = first(
        itertools.combinations(g, 2),
        lambda a, b: None if op(a, b) == op(b, a) else {"a": a, "b": b, "ab": op(a, b), "ba": op(b, a)},
    )

    def assoc(a, b, c):
        left, right = op(op(a, b), c), op(a, op(b, c))
        return None if left == right else {"a": a, "b": b, "c": c, "left": left, "right": right}

    assoc_w = first(itertools.product(g, repeat=3), assoc)

    # consecutive grid points suffice by transitivity; both arguments are
    # checked so that commutativity is not presupposed
    def mono(a, b, k):
        b2 = g[k + 1]
        if op(a, b) > op(a, b2):
            return {"fixed": a, "lower": b, "upper": b2, "arg": 2}
        if op(b, a) > op(b2, a):
            return {"fixed": a, "lower": b, "upper": b2, "arg": 1}
        return None

    mono_w = first(
        ((a, g[k], k) for a in g for k in range(len(g) - 1)),
        mono,
    )
    for name, w in (("unit", unit_w), ("commutativity", comm_w),
                    ("associativity", assoc_w), ("monotonicity", mono_w)):
        report.set(name, Verdict.ok() if w is None else Verdict.fail(w))
    return report


def lambda_for_epsilon(t: TNorm, eps: Fraction) -> Fraction:
    """Some ``lam`` in ]0, 1] with ``(1 - lam) * (1 - lam) > 1 - eps``.

    Minimum has the closed form ``eps / 2``; the other t-norms take the first
    success of ``1/2, 1/4, 1/8, ...``, which exists because the t-norm is
    continuous with ``1 * 1 = 1``.
    """
    eps = Fraction(eps)
    if not (0 < eps <= 1):
        raise ValueError("eps must lie in ]0, 1]")
    if t is TNorm.MINIMUM:
        lam = eps / 2
    else:
        lam = Fraction(1, 2)
        while not apply(t, 1 - lam, 1 - lam) > 1 - eps:
            lam /= 2
    assert apply(t, 1 - lam, 1 - lam) > 1 - eps
    return lam


def _largest_below(sorted_vals: Sequence[Fraction], bound: Fraction) -> Fraction | None:
    i = bisect_left(sorted_vals, bound)
    return sorted_vals[i - 1] if i else None


def check_lemma_star(
    t: TNorm,
    a: Fraction,
    b: Fraction,
    d: Fraction,
    grid: Iterable[Fraction],
) -> tuple[bool, bool, bool]:
    """Evaluate the three equivalent conditions relating ``d`` and ``a * b``.

    c1: ``d >= a * b``.
    c2: for all lam, lam' in ``grid`` with ``a > 1 - lam`` and ``b > 1 - lam'``,
        ``d >= (1 - lam') * (1 - lam)``.
    c3: for all rho in ``grid`` with ``a * b > 1 - rho``, ``d >= 1 - rho``.

    c2 and c3 quantify over the finite grid only. The universal quantifiers
    are reduced to their binding instance: the largest admissible ``1 - lam``
    (monotonicity of the t-norm) and the largest admissible ``1 - rho``.
    """
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    for name, v in (("a", a), ("b", b), ("d", d)):
        if not (0 < v <= 1):
            raise ValueError(f"{name} must lie in ]0, 1]")
    comps = sorted({1 - Fraction(g) for g in grid if 0 < g <= 1})
    ab = apply(t, a, b)
    c1 = d >= ab
    ua = _largest_below(comps, a)
    ub = _largest_below(comps, b)
    c2 = ua is None or ub is None or d >= apply(t, ub, ua)
    ur = _largest_below(comps, ab)
    c3 = ur is None or d >= ur
    return c1, c2, c3


def lemma_sweep(t: TNorm, n: int = 64, grid_denominator: Optional[int] = None) -> dict:
    """Exhaustive ``check_lemma_star`` counts over ``a, b, d in {k/n}``.

    The grid is ``{k/g}``; by default ``g = 2 n**2``, fine enough for the
    grid-restricted c3 to coincide with c1 at every point of the sweep.
    """
    from . import _kernels

    g = grid_denominator or 2 * n * n
    if g % n:
        raise ValueError("grid denominator must be a multiple of n")
    code = (TNorm.MINIMUM, TNorm.PRODUCT, TNorm.LUKASIEWICZ).index(t)
    counts = _kernels.lemma_sweep(code, n, g)
    names = ("total", "c1", "c2", "c3", "c1_ne_c3", "c1_not_c2", "c2_not_c1")
    return {k: int(v) for k, v in zip(names, counts)}
