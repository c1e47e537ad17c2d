"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical violation (reported with a
witness), 2 an input or usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .documents import (DocumentError, dumps, family_to_doc, load_document, load_map,
                        space_to_doc)
from .exactnum import parse_unit
from .generators import generate_space
from .levels import (check_level_axioms, check_mixed_triangle, delta_transform, oracle_ut_grid,
                     phi_reconstruct)
from .morphisms import morphism_equivalence_suite
from .probmet import check_pm_axioms, oracle_p5_grid, p5_grid
from .report import Verdict, VerificationReport
from .systems import (FiniteLocalTable, check_local_basis, check_uniform_basis,
                      local_saturation_witness, saturation_witness)
from .tnorms import TNorm, check_lemma_star, dyadic_grid, lemma_sweep

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(report: VerificationReport, args) -> int:
    _emit(report.to_json(with_timings=args.timings), args.output)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _verify_space(space, args):
    t0 = time.perf_counter()
    rep = check_pm_axioms(space)
    t1 = time.perf_counter()
    oracle = oracle_p5_grid(space, p5_grid(space, args.grid_denominator))
    t2 = time.perf_counter()
    return VerificationReport.from_axiom_report(
        rep, "space", extra={"oracle": oracle.to_dict(), "grid_denominator": args.grid_denominator},
        timings={"exact": t1 - t0, "oracle": t2 - t1})


def _verify_family(family, args):
    t0 = time.perf_counter()
    rep = check_level_axioms(family)
    mixed = check_mixed_triangle(family)
    t1 = time.perf_counter()
    oracle = oracle_ut_grid(family, args.grid_denominator)
    t2 = time.perf_counter()
    return VerificationReport.from_axiom_report(
        rep, "family",
        extra={"mixed_triangle": mixed.to_dict(), "oracle": oracle.to_dict(),
               "grid_denominator": args.grid_denominator},
        timings={"exact": t1 - t0, "oracle": t2 - t1})


def _verify_basis(tables, args):
    if tables and all(isinstance(t, FiniteLocalTable) for t in tables):
        bases: dict = {p: [] for p in tables[0].carrier}
        for t in tables:
            bases[t.anchor].append(t)
        return VerificationReport.from_axiom_report(check_local_basis(bases, args.cutoff), "local-basis")
    if any(isinstance(t, FiniteLocalTable) for t in tables):
        raise DocumentError("basis mixes local and uniform tables")
    return VerificationReport.from_axiom_report(check_uniform_basis(tables), "uniform-basis")


def cmd_verify(args) -> int:
    kind, obj = load_document(args.path)
    if kind == "space":
        rep = _verify_space(obj, args)
    elif kind == "family":
        rep = _verify_family(obj, args)
    elif kind in ("basis", "table"):
        rep = _verify_basis(obj if kind == "basis" else [obj], args)
    else:
        raise DocumentError(f"{args.path}: cannot verify a {kind} document (use check-map)")
    rep.subject = args.path
    return _report(rep, args)


def _load_kind(path: str, want: str):
    kind, obj = load_document(path)
    if kind != want:
        raise DocumentError(f"{path}: expected a {want} document, got {kind}")
    return obj


def _precondition_failure(axioms, kind: str, args) -> int:
    rep = VerificationReport.from_axiom_report(axioms, kind)
    rep.subject = args.path
    _emit(rep.to_json(), None)
    return EXIT_VIOLATION


def cmd_delta(args) -> int:
    space = _load_kind(args.path, "space")
    axioms = check_pm_axioms(space)
    if not axioms.ok:
        return _precondition_failure(axioms, "space", args)
    _emit(dumps(family_to_doc(delta_transform(space, check=False))), args.output)
    return EXIT_OK


def cmd_phi(args) -> int:
    family = _load_kind(args.path, "family")
    axioms = check_level_axioms(family)
    if not axioms.ok:
        return _precondition_failure(axioms, "family", args)
    _emit(dumps(space_to_doc(phi_reconstruct(family, check=False))), args.output)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    kind, obj = load_document(args.path)
    if kind == "space":
        axioms = check_pm_axioms(obj)
        if not axioms.ok:
            return _precondition_failure(axioms, kind, args)
        before = dumps(space_to_doc(obj))
        after = dumps(space_to_doc(phi_reconstruct(delta_transform(obj, check=False), check=False)))
        route = "phi(delta(space))"
    elif kind == "family":
        axioms = check_level_axioms(obj)
        if not axioms.ok:
            return _precondition_failure(axioms, kind, args)
        before = dumps(family_to_doc(obj))
        after = dumps(family_to_doc(delta_transform(phi_reconstruct(obj, check=False), check=False)))
        route = "delta(phi(family))"
    else:
        raise DocumentError(f"{args.path}: roundtrip needs a space or family document")
    same = before == after
    verdict = Verdict.ok() if same else Verdict.fail({"expected": before, "got": after})
    rep = VerificationReport(args.path, "roundtrip", {"identity": verdict}, extra={"route": route})
    return _report(rep, args)


def cmd_gen(args) -> int:
    tnorm = TNorm.parse(args.tnorm)
    if args.points < 1 or args.breaks < 1:
        raise UsageError("--points and --breaks must be at least 1")
    space, prov = generate_space(args.seed, args.points, args.breaks, tnorm, args.mode)
    axioms = check_pm_axioms(space)
    if args.mode == "valid" and not axioms.ok:  # pragma: no cover - generator guarantee
        return _precondition_failure(axioms, "space", args)
    if args.mode == "mutant":
        prov["failed"] = axioms.failed
    _emit(dumps(space_to_doc(space, prov)), args.output)
    return EXIT_OK


def cmd_check_map(args) -> int:
    f, X, Y = load_map(args.map, args.domain, args.codomain)
    if X.tnorm is not Y.tnorm:
        raise DocumentError("domain and codomain use different t-norms")
    for role, space in (("domain", X), ("codomain", Y)):
        axioms = check_pm_axioms(space)
        if not axioms.ok:
            rep = VerificationReport.from_axiom_report(axioms, "space")
            rep.subject = role
            _emit(rep.to_json(), None)
            return EXIT_VIOLATION
    suite = morphism_equivalence_suite(f, X, Y)
    rep = VerificationReport.from_axiom_report(suite, "map")
    rep.subject = args.map
    return _report(rep, args)


def cmd_saturate(args) -> int:
    kind, basis = load_document(args.basis)
    if kind == "table":
        basis = [basis]
    elif kind != "basis":
        raise DocumentError(f"{args.basis}: expected a basis document")
    cand = _load_kind(args.candidate, "table")
    try:
        if isinstance(cand, FiniteLocalTable):
            w = local_saturation_witness([b for b in basis if b.anchor == cand.anchor]
                                         if all(isinstance(b, FiniteLocalTable) for b in basis) else basis, cand)
        else:
            w = saturation_witness(basis, cand)
    except (AttributeError, ValueError) as exc:
        raise DocumentError(f"basis and candidate do not match: {exc}") from None
    verdict = Verdict.ok() if w is None else Verdict.fail(w)
    rep = VerificationReport(args.candidate, "saturation", {"member": verdict})
    return _report(rep, args)


def cmd_lemma_star(args) -> int:
    tnorm = TNorm.parse(args.tnorm)
    if args.sweep:
        counts = lemma_sweep(tnorm, args.sweep, args.grid_denominator if args.grid_denominator_set else None)
        ok13 = counts["c1_ne_c3"] == 0
        ok12 = counts["c1_not_c2"] == 0
        rep = VerificationReport(f"sweep-{args.sweep}", "lemma-star", {
            "c1_iff_c3": Verdict.ok() if ok13 else Verdict.fail({"count": counts["c1_ne_c3"]}),
            "c1_implies_c2": Verdict.ok() if ok12 else Verdict.fail({"count": counts["c1_not_c2"]}),
        }, extra={"counts": counts, "tnorm": tnorm.value})
        return _report(rep, args)
    if args.a is None or args.b is None or args.d is None:
        raise UsageError("lemma-star needs a, b and d (or --sweep N)")
    a, b, d = (parse_unit(v) for v in (args.a, args.b, args.d))
    c1, c2, c3 = check_lemma_star(tnorm, a, b, d, dyadic_grid(args.grid_denominator, include_zero=False))
    witness = {"a": a, "b": b, "d": d, "c1": c1, "c2": c2, "c3": c3}
    rep = VerificationReport("lemma-star", "lemma-star", {
        "c1_iff_c3": Verdict.ok() if c1 == c3 else Verdict.fail(witness),
        "c1_implies_c2": Verdict.ok() if (not c1 or c2) else Verdict.fail(witness),
    }, extra={"c1": c1, "c2": c2, "c3": c3, "tnorm": tnorm.value,
              "grid_denominator": args.grid_denominator})
    return _report(rep, args)


def _u64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("value must be at least 1")
    return v


class _GridAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.grid_denominator_set = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--seed", type=_u64, default=0, help="generator seed (unsigned 64-bit)")
    common.add_argument("--grid-denominator", type=_positive, default=1024, action=_GridAction,
                        help="oracle grid resolution; affects oracle completeness only, never exact verdicts")
    common.add_argument("--cutoff", type=_positive, default=1_000_000,
                        help="step budget of the (A3) selection search")
    common.add_argument("--timings", action="store_true", help="include timings in reports")

    p = argparse.ArgumentParser(prog="pmlevels", description="Finite probabilistic metric spaces and their level families.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check the axioms of a space, family or basis")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("delta", parents=[common], help="space -> level family")
    s.add_argument("path")
    s.set_defaults(func=cmd_delta)
    s = sub.add_parser("phi", parents=[common], help="level family -> space")
    s.add_argument("path")
    s.set_defaults(func=cmd_phi)
    s = sub.add_parser("roundtrip", parents=[common], help="check phi(delta(S)) = S or delta(phi(F)) = F byte for byte")
    s.add_argument("path")
    s.set_defaults(func=cmd_roundtrip)
    s = sub.add_parser("gen", parents=[common], help="generate a random space")
    s.add_argument("--points", type=int, default=3)
    s.add_argument("--breaks", type=int, default=2)
    s.add_argument("--tnorm", default="product")
    s.add_argument("--mode", choices=("valid", "mutant"), default="valid")
    s.set_defaults(func=cmd_gen)
    s = sub.add_parser("check-map", parents=[common], help="compare the morphism notions for a map")
    s.add_argument("map")
    s.add_argument("domain", nargs="?")
    s.add_argument("codomain", nargs="?")
    s.set_defaults(func=cmd_check_map)
    s = sub.add_parser("saturate", parents=[common], help="decide membership of a table in a basis saturation")
    s.add_argument("basis")
    s.add_argument("candidate")
    s.set_defaults(func=cmd_saturate)
    s = sub.add_parser("lemma-star", parents=[common], help="evaluate the three t-norm conditions")
    s.add_argument("a", nargs="?")
    s.add_argument("b", nargs="?")
    s.add_argument("d", nargs="?")
    s.add_argument("--tnorm", default="product")
    s.add_argument("--sweep", type=_positive, help="exhaustive sweep over {k/N}^3 instead")
    s.set_defaults(func=cmd_lemma_star)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "grid_denominator_set"):
        args.grid_denominator_set = False
    try:
        return args.func(args)
    except (DocumentError, UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pmlevels: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except RecursionError:  # pragma: no cover - pathological nesting in JSON
        print("pmlevels: error: input nests too deeply", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
