"""Finite bases of local and uniform systems: saturation membership and basis axioms.

Tables are exact: all values are ExtendedNonneg, so the ``for every eps > 0``
quantifiers collapse to non-strict comparisons. The ``for every cap`` quantifiers
run over the finite values of the table under test plus one symbolic cap
standing for "beyond every finite value".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .exactnum import INF, ExtendedNonneg, ext, format_ext
from .probmet import validate_carrier
from .report import AxiomReport, Verdict

_ZERO = Fraction(0)
# symbolic cap above every finite value
UNBOUNDED = "unbounded"


def _capped(value: ExtendedNonneg, cap) -> ExtendedNonneg:
    if cap == UNBOUNDED:
        return value
    return value if value <= cap else cap


def _caps(values: Iterable[ExtendedNonneg]) -> list:
    return sorted({v for v in values if v is not INF}) + [UNBOUNDED]


def _encode_cap(cap):
    return cap if cap == UNBOUNDED else format_ext(cap)


@dataclass(frozen=True)
class FiniteDistanceTable:
    """A distance function on ordered pairs; zero on the diagonal, not necessarily symmetric."""

    carrier: tuple[str, ...]
    values: Mapping[tuple[str, str], ExtendedNonneg]

    def __post_init__(self) -> None:
        carrier = validate_carrier(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        vals = {}
        for x in carrier:
            for y in carrier:
                if x == y:
                    v = ext(self.values.get((x, x), 0))
                    if v != 0:
                        raise ValueError(f"diagonal entry {x}|>{x} must be 0")
                else:
                    if (x, y) not in self.values:
                        raise ValueError(f"missing entry {x}|>{y}")
                    v = ext(self.values[(x, y)])
                vals[(x, y)] = v
        extra = set(self.values) - set(vals)
        if extra:
            a, b = sorted(extra)[0]
            raise ValueError(f"unknown entry {a}|>{b}")
        object.__setattr__(self, "values", vals)

    def __call__(self, x: str, y: str) -> ExtendedNonneg:
        return self.values[(x, y)]

    def transpose(self) -> "FiniteDistanceTable":
        return FiniteDistanceTable(self.carrier, {(y, x): v for (x, y), v in self.values.items()})

    def pointwise_max(self, other: "FiniteDistanceTable") -> "FiniteDistanceTable":
        _same_carrier(self, other)
        return FiniteDistanceTable(self.carrier, {k: max(v, other.values[k]) for k, v in self.values.items()})

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(sorted(self.values.items()))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteDistanceTable):
            return NotImplemented
        return self.carrier == other.carrier and self.values == other.values

    def to_json(self) -> dict:
        return {"carrier": list(self.carrier),
                "table": {f"{x}|>{y}": format_ext(v) for (x, y), v in self.values.items() if x != y}}


@dataclass(frozen=True)
class FiniteLocalTable:
    """A local distance function anchored at one point (zero at the anchor)."""

    carrier: tuple[str, ...]
    anchor: str
    values: Mapping[str, ExtendedNonneg]

    def __post_init__(self) -> None:
        carrier = validate_carrier(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        if self.anchor not in carrier:
            raise ValueError(f"anchor {self.anchor!r} not in carrier")
        vals = {}
        for y in carrier:
            if y == self.anchor:
                v = ext(self.values.get(y, 0))
                if v != 0:
                    raise ValueError(f"entry at the anchor {y} must be 0")
            else:
                if y not in self.values:
                    raise ValueError(f"missing entry {self.anchor}|>{y}")
                v = ext(self.values[y])
            vals[y] = v
        extra = set(self.values) - set(vals)
        if extra:
            raise ValueError(f"unknown point {sorted(extra)[0]!r}")
        object.__setattr__(self, "values", vals)

    def __call__(self, y: str) -> ExtendedNonneg:
        return self.values[y]

    def __hash__(self) -> int:
        return hash((self.carrier, self.anchor, tuple(sorted(self.values.items()))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteLocalTable):
            return NotImplemented
        return (self.carrier, self.anchor, self.values) == (other.carrier, other.anchor, other.values)

    def to_json(self) -> dict:
        return {"carrier": list(self.carrier), "anchor": self.anchor,
                "table": {f"{self.anchor}|>{y}": format_ext(v)
                          for y, v in self.values.items() if y != self.anchor}}


def _same_carrier(a, b) -> None:
    if a.carrier != b.carrier:
        raise ValueError("tables live on different carriers")


def table_from_json(doc: dict):
    """Parse a table document; returns a local table when ``anchor`` is present."""
    if not isinstance(doc, dict) or "carrier" not in doc or "table" not in doc:
        raise ValueError("table document needs 'carrier' and 'table'")
    unknown = set(doc) - {"carrier", "table", "anchor", "provenance"}
    if unknown:
        raise ValueError(f"unexpected key {sorted(unknown)[0]!r}")
    carrier = doc["carrier"]
    if not isinstance(carrier, list):
        raise ValueError("'carrier' must be a list of labels")
    entries = {}
    for key, raw in doc["table"].items():
        a, sep, b = key.partition("|>")
        if not sep:
            raise ValueError(f"table key {key!r} must look like 'a|>b'")
        try:
            entries[(a, b)] = ext(raw)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"entry {key!r}: {exc}") from None
    if "anchor" in doc:
        anchor = doc["anchor"]
        bad = next((f"{a}|>{b}" for a, b in entries if a != anchor), None)
        if bad:
            raise ValueError(f"local table key {bad!r} does not start at the anchor")
        return FiniteLocalTable(tuple(carrier), anchor, {b: v for (_, b), v in entries.items()})
    return FiniteDistanceTable(tuple(carrier), entries)


# ---------------------------------------------------------------------------
# saturation membership
# ---------------------------------------------------------------------------

def _covered(cvals: Sequence[ExtendedNonneg], bvals: Sequence[ExtendedNonneg], cap) -> bool:
    # max over entries of (c ^ cap) - b <= 0
    return all(_capped(c, cap) <= b for c, b in zip(cvals, bvals))


def _membership(basis_vals: list[list[ExtendedNonneg]], cvals: list[ExtendedNonneg]):
    """First cap at which no basis element covers the candidate, or None."""
    for cap in _caps(cvals):
        if not any(_covered(cvals, b, cap) for b in basis_vals):
            return cap
    return None


def saturation_witness(basis: Iterable[FiniteDistanceTable], candidate: FiniteDistanceTable) -> Optional[dict]:
    """None if ``candidate`` lies in the saturation of ``basis``, else the failing cap."""
    basis = list(basis)
    for b in basis:
        _same_carrier(b, candidate)
    keys = list(candidate.values)
    cap = _membership([[b.values[k] for k in keys] for b in basis], [candidate.values[k] for k in keys])
    return None if cap is None else {"cap": _encode_cap(cap)}


def saturation_member(basis: Iterable[FiniteDistanceTable], candidate: FiniteDistanceTable) -> bool:
    return saturation_witness(basis, candidate) is None


def local_saturation_witness(basis: Iterable[FiniteLocalTable], candidate: FiniteLocalTable) -> Optional[dict]:
    basis = list(basis)
    for b in basis:
        _same_carrier(b, candidate)
        if b.anchor != candidate.anchor:
            raise ValueError("local tables have different anchors")
    keys = list(candidate.values)
    cap = _membership([[b.values[k] for k in keys] for b in basis], [candidate.values[k] for k in keys])
    return None if cap is None else {"cap": _encode_cap(cap)}


def local_saturation_member(basis: Iterable[FiniteLocalTable], candidate: FiniteLocalTable) -> bool:
    return local_saturation_witness(basis, candidate) is None


# ---------------------------------------------------------------------------
# basis axioms
# ---------------------------------------------------------------------------

def _uniform_carrier(basis: Sequence[FiniteDistanceTable]) -> tuple[str, ...]:
    if not basis:
        return ()
    for b in basis[1:]:
        _same_carrier(basis[0], b)
    return basis[0].carrier


def check_uniform_basis(basis: Iterable[FiniteDistanceTable]) -> AxiomReport:
    basis = list(basis)
    carrier = _uniform_carrier(basis)
    report = AxiomReport("uniform-basis")
    report.set("AU1", Verdict.ok("by construction"))

    hit = None
    for i, j in itertools.combinations(range(len(basis)), 2):
        w = saturation_witness(basis, basis[i].pointwise_max(basis[j]))
        if w is not None:
            hit = {"members": [i, j], **w}
            break
    note = "directed up to saturation: the max of any two members is a member of the saturation"
    report.set("directed", Verdict.ok(note) if hit is None else Verdict.fail(hit, note))

    hit = None
    triples = list(itertools.product(carrier, repeat=3))
    for i, d in enumerate(basis):
        for cap in _caps(d.values.values()):
            if not any(all(_capped(d(x, z), cap) <= e(x, y) + e(y, z) for x, y, z in triples)
                       for e in basis):
                hit = {"member": i, "cap": _encode_cap(cap)}
                break
        if hit:
            break
    report.set("AU3", Verdict.ok() if hit is None else Verdict.fail(hit))

    hit = None
    for i, d in enumerate(basis):
        w = saturation_witness(basis, d.transpose())
        if w is not None:
            pair = next((x, y) for (x, y), v in d.values.items()
                        if v != d(y, x))
            hit = {"member": i, "x": pair[0], "y": pair[1], **w}
            break
    report.set("AU4", Verdict.ok() if hit is None else Verdict.fail(hit))
    return report


def _undominated(tables: Sequence[FiniteLocalTable]) -> list[FiniteLocalTable]:
    # a table dominated pointwise by another is never a better choice in (A3)
    out = []
    uniq = list(dict.fromkeys(tables))
    for i, t in enumerate(uniq):
        if not any(j != i and all(t(y) <= u(y) for y in t.carrier) for j, u in enumerate(uniq)):
            out.append(t)
    return out


class _Budget:
    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        self.steps = 0

    def spend(self, n: int = 1) -> bool:
        self.steps += n
        return self.steps <= self.cutoff


def check_local_basis(bases: Mapping[str, Iterable[FiniteLocalTable]], cutoff: int = 1_000_000) -> AxiomReport:
    """(A1) and (A3) for per-point bases.

    For a table ``phi`` at ``x`` and a cap, (A3) asks for one table per
    point, ``phi_p`` in ``B(p)``, with ``phi(z) ^ cap <= phi_x(y) + phi_y(z)``
    for all ``y, z``. Once ``phi_x`` is fixed, the constraints for distinct
    ``y`` involve disjoint choices, so the product search splits into
    independent per-point searches. ``cutoff`` bounds the number of table
    comparisons; running out gives an undecided verdict.
    """
    bases = {p: list(ts) for p, ts in bases.items()}
    carrier = tuple(bases)
    report = AxiomReport("local-basis")
    for p, ts in bases.items():
        for t in ts:
            if t.anchor != p:
                raise ValueError(f"table anchored at {t.anchor!r} listed under {p!r}")
            if t.carrier != carrier and set(t.carrier) != set(carrier):
                raise ValueError("tables and basis index disagree on the carrier")
    report.set("A1", Verdict.ok("by construction"))
    pruned = {p: _undominated(ts) for p, ts in bases.items()}
    budget = _Budget(cutoff)
    hit = None
    exhausted = False
    for x in carrier:
        for i, phi in enumerate(bases[x]):
            for cap in _caps(phi.values.values()):
                found = _a3_selection(phi, cap, x, carrier, pruned, budget)
                if found is None:
                    exhausted = True
                    break
                if not found:
                    hit = {"x": x, "member": i, "cap": _encode_cap(cap)}
                    break
            if hit or exhausted:
                break
        if hit or exhausted:
            break
    if hit:
        report.set("A3", Verdict.fail(hit))
    elif exhausted:
        report.set("A3", Verdict.undecided(cutoff, "selection search exceeded the cutoff"))
    else:
        report.set("A3", Verdict.ok())
    return report


def _a3_selection(phi, cap, x, carrier, pruned, budget) -> Optional[bool]:
    """True/False for existence of a selection; None when the budget runs out."""
    need = {z: _capped(phi(z), cap) for z in carrier}
    for px in pruned[x]:
        if not budget.spend():
            return None
        # y = x: need(z) <= phi_x(x) + phi_x(z) = phi_x(z)
        if not all(need[z] <= px(z) for z in carrier):
            continue
        ok = True
        for y in carrier:
            if y == x:
                continue
            base = px(y)
            good = False
            for py in pruned[y]:
                if not budget.spend():
                    return None
                if all(need[z] <= base + py(z) for z in carrier):
                    good = True
                    break
            if not good:
                ok = False
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# contractions
# ---------------------------------------------------------------------------

def _check_map(assign: Mapping[str, str], domain: Sequence[str], codomain: Sequence[str]) -> None:
    if set(assign) != set(domain):
        raise ValueError("map is not total on the domain carrier")
    bad = next((v for v in assign.values() if v not in set(codomain)), None)
    if bad is not None:
        raise ValueError(f"map image {bad!r} not in the codomain carrier")


def contraction_witness(f, domain_bases: Mapping[str, Iterable[FiniteLocalTable]],
                        codomain_bases: Mapping[str, Iterable[FiniteLocalTable]]) -> Optional[dict]:
    dom = {p: list(ts) for p, ts in domain_bases.items()}
    cod = {p: list(ts) for p, ts in codomain_bases.items()}
    _check_map(f.assign, tuple(dom), tuple(cod))
    carrier = tuple(dom)
    for x in carrier:
        for i, t in enumerate(cod[f.assign[x]]):
            pulled = FiniteLocalTable(carrier, x, {z: t(f.assign[z]) for z in carrier})
            w = local_saturation_witness(dom[x], pulled)
            if w is not None:
                return {"x": x, "codomain_member": i, **w}
    return None


def is_contraction(f, domain_bases, codomain_bases) -> bool:
    return contraction_witness(f, domain_bases, codomain_bases) is None


def uniform_contraction_witness(f, domain_basis: Iterable[FiniteDistanceTable],
                                codomain_basis: Iterable[FiniteDistanceTable],
                                domain_carrier: Optional[Sequence[str]] = None,
                                codomain_carrier: Optional[Sequence[str]] = None) -> Optional[dict]:
    dom = list(domain_basis)
    cod = list(codomain_basis)
    dc = tuple(domain_carrier) if domain_carrier is not None else _uniform_carrier(dom)
    cc = tuple(codomain_carrier) if codomain_carrier is not None else _uniform_carrier(cod)
    _check_map(f.assign, dc, cc)
    for i, t in enumerate(cod):
        pulled = FiniteDistanceTable(dc, {(x, y): t(f.assign[x], f.assign[y]) for x in dc for y in dc})
        w = saturation_witness(dom, pulled)
        if w is not None:
            return {"codomain_member": i, **w}
    return None


def is_uniform_contraction(f, domain_basis, codomain_basis, domain_carrier=None, codomain_carrier=None) -> bool:
    return uniform_contraction_witness(f, domain_basis, codomain_basis,
                                       domain_carrier, codomain_carrier) is None


# ---------------------------------------------------------------------------
# bases induced by a level family
# ---------------------------------------------------------------------------

def family_tables(family) -> list[FiniteDistanceTable]:
    """``d_lam`` as tables, one per profile boundary; every level equals one of these."""
    c = family.carrier
    return [FiniteDistanceTable(c, {(x, y): family(lam, x, y) for x in c for y in c if x != y})
            for lam in family.boundaries()]


def family_local_bases(family) -> dict[str, list[FiniteLocalTable]]:
    c = family.carrier
    return {x: [FiniteLocalTable(c, x, {y: family(lam, x, y) for y in c if y != x})
                for lam in family.boundaries()]
            for x in c}
