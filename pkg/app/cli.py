#!/usr/bin/env python3
"""
Command-line front end for bundles of Hopf algebras, coalgebras and partial
(co)actions.

Usage (examples):
  python launcher.py generate subgroup-action --group S3 --subgroup A3 --out a3.json
  python launcher.py check a3.json --suite pmc
  python launcher.py globalize a3.json --mode pmc --out a3_glob.json
  python launcher.py check a3_glob.json --suite all --json
  python launcher.py dualize a3_glob.json --what globalization --out a3_dual.json --xlsx a3_dual.xlsx
  python launcher.py roundtrip a3_dual.json

Exit codes: 0 pass, 1 axiom failure, 2 input error, 3 internal invariant.
"""
from __future__ import annotations
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from bundle import (ActionEntry, Bundle, CoactionEntry, DualActionEntry, bundle_bytes,
                    dump_bundle, export_bytes, load_bundle, reserialize)
from catalog import (adjoint_coaction, dual_basis_coalgebra, dual_basis_comodule,
                     group_algebra, monoid_bialgebra, named_group, named_subset,
                     regular_module_coalgebra, subgroup_partial_action_on_k,
                     subgroup_partial_coaction_on_k, trivial_coaction)
from coalg import Coalgebra, check_coalgebra, dual_algebra, ground_coalgebra
from errors import AxiomError, BundleError, InputError, InvariantViolation
from globalization import (GlobalizationPCC, GlobalizationPMC, adjoint_psi_check,
                           check_duality_agreement, cross_check_pcc_to_pmc,
                           rationality_consistency_check, standard_globalization_pcc,
                           standard_globalization_pmc, verify_globalization_pcc,
                           verify_globalization_pmc)
from helper import matrix_frame, report_excel_bytes
from hopf import Bialgebra, HopfAlgebra, check_bialgebra, check_hopf, dual_hopf, separates_points
from multilinear import LinearMap
from pact import (action_from_dual_action, check_compatibility_pairing, check_counit_compat,
                  check_module_algebra, check_module_coalgebra, check_partial_module_algebra,
                  check_partial_module_coalgebra, dual_action_on_dual)
from pcoact import (check_comodule_coalgebra, check_counit_coaction, check_four_way_equivalence,
                    check_partial_comodule_coalgebra, coaction_to_action, coaction_to_dual_action,
                    dual_coaction_on_dual)
from report import CheckReport
from scalars import parse_field

log = logging.getLogger(__name__)

# ---------------- CONFIG ----------------
FORMAT_VERSION = "1"
EXIT_OK = 0
EXIT_AXIOM = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3
DEFAULT_SUITE = "all"
DEFAULT_FIELD = "Q"
DEFAULT_GROUP = "Z2"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
SUITES = ("coalgebra", "hopf", "mc", "pmc", "pma", "cc", "pcc", "all")
# ----------------------------------------

# ---------------- bundle lookups ----------------

def _action(b: Bundle, name: str):
    e = b.get(name, ActionEntry)
    return b.coalgebra(e.coalgebra), b.hopf(e.hopf), e

def _coaction(b: Bundle, name: str):
    e = b.get(name, CoactionEntry)
    return b.coalgebra(e.coalgebra), b.hopf(e.hopf), e

def _pick(b: Bundle, kind, name: Optional[str], what: str) -> str:
    if name:
        b.get(name, kind)
        return name
    names = b.names(kind)
    partial = [n for n in names if b.objects[n].partial]
    pool = partial or names
    if len(pool) != 1:
        raise BundleError(f"bundle holds {len(pool)} candidate {what}s; pass --name")
    return pool[0]

def _put(b: Bundle, name: str, obj) -> None:
    if name not in b.objects:
        b.add(name, obj)

def _role(b: Bundle, key: str) -> str:
    """Object name a globalization bundle assigns to ``key`` in its metadata."""
    try:
        return b.metadata[key]
    except KeyError:
        raise BundleError(f"globalization metadata lacks {key!r}")

def _titled(rep: CheckReport, name: str) -> CheckReport:
    rep.title = f"{rep.title}: {name}"
    return rep

# ---------------- check ----------------

def run_suites(b: Bundle, suite: str = DEFAULT_SUITE, symmetric: bool = False) -> List[CheckReport]:
    want = set(SUITES[:-1]) if suite == "all" else {suite}
    out: List[CheckReport] = []
    if "coalgebra" in want:
        for n in b.names(Coalgebra):
            out.append(_titled(check_coalgebra(b.get(n)), n))
    if "hopf" in want:
        for n in b.names((HopfAlgebra, Bialgebra)):
            obj = b.get(n)
            out.append(_titled(check_hopf(obj) if isinstance(obj, HopfAlgebra) else check_bialgebra(obj), n))
    for n in b.names(ActionEntry):
        C, H, e = _action(b, n)
        if "pmc" in want:
            out.append(_titled(check_partial_module_coalgebra(C, H, e.action, symmetric), n))
        if "mc" in want and not e.partial:
            rep = check_module_coalgebra(C, H, e.action)
            out.append(_titled(rep.merge(check_counit_compat(C, H, e.action)), n))
    for n in b.names(DualActionEntry):
        e = b.get(n)
        A, H = b.algebra(e.algebra), b.hopf(e.hopf)
        if "pma" in want:
            out.append(_titled(check_partial_module_algebra(A, H, e.action, symmetric), n))
            if not e.partial:
                out.append(_titled(check_module_algebra(A, H, e.action), n))
    for n in b.names(CoactionEntry):
        C, H, e = _coaction(b, n)
        if "pcc" in want:
            out.append(_titled(check_partial_comodule_coalgebra(C, H, e.coaction, symmetric), n))
        if "cc" in want and not e.partial:
            rep = check_comodule_coalgebra(C, H, e.coaction)
            out.append(_titled(rep.merge(check_counit_coaction(C, H, e.coaction)), n))
    if suite == "all":
        out.extend(_globalization_reports(b))
    log.info("ran %d reports for suite %s", len(out), suite)
    return out

def _globalization_reports(b: Bundle) -> List[CheckReport]:
    kind = b.metadata.get("kind")
    if kind == "globalization-pmc":
        C, H, e = _action(b, _role(b, "action"))
        D, act_g = b.coalgebra(_role(b, "D")), b.get(_role(b, "global"), ActionEntry).action
        return [verify_globalization_pmc(C, H, e.action, D, act_g, b.get(_role(b, "theta")), b.get(_role(b, "pi")))]
    if kind == "globalization-pcc":
        C, H, e = _coaction(b, _role(b, "coaction"))
        D, co_g = b.coalgebra(_role(b, "D")), b.get(_role(b, "global"), CoactionEntry).coaction
        return [verify_globalization_pcc(C, H, e.coaction, D, co_g, b.get(_role(b, "theta")), b.get(_role(b, "pi"))),
                rationality_consistency_check(C, H, co_g)]
    return []

def cmd_check(args) -> int:
    b = load_bundle(args.file)
    reports = run_suites(b, args.suite, args.symmetric)
    _emit_reports(reports, args, sys.stdout)
    _maybe_xlsx(reports, args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_AXIOM

# ---------------- globalize ----------------

def _globalize_pmc(b: Bundle, name: Optional[str]) -> Tuple[Bundle, List[CheckReport]]:
    aname = _pick(b, ActionEntry, name, "action")
    C, H, e = _action(b, aname)
    G = standard_globalization_pmc(C, H, e.action)
    out = Bundle(b.field)
    _put(out, e.hopf, H)
    _put(out, e.coalgebra, b.get(e.coalgebra))
    out.add(aname, e)
    out.add("D", G.D)
    out.add("D_action", ActionEntry("D", e.hopf, G.act_global, partial=False))
    out.add("theta", G.theta).add("pi", G.pi)
    out.metadata = {"kind": "globalization-pmc", "C": e.coalgebra, "H": e.hopf, "action": aname,
                    "D": "D", "global": "D_action", "theta": "theta", "pi": "pi"}
    out.attach("globalization", G.report)
    return out, [G.report]

def _globalize_pcc(b: Bundle, name: Optional[str]) -> Tuple[Bundle, List[CheckReport]]:
    cname = _pick(b, CoactionEntry, name, "coaction")
    C, H, e = _coaction(b, cname)
    G = standard_globalization_pcc(C, H, e.coaction)
    cross = cross_check_pcc_to_pmc(C, H, e.coaction, G)
    if not cross.passed:
        raise InvariantViolation("comodule globalization is not a module globalization over H*",
                                 witness=cross.first_failure())
    out = Bundle(b.field)
    _put(out, e.hopf, H)
    _put(out, e.coalgebra, b.get(e.coalgebra))
    out.add(cname, e)
    out.add("D", G.D)
    out.add("D_coaction", CoactionEntry("D", e.hopf, G.co_global, partial=False))
    out.add("theta", G.theta).add("pi", G.pi)
    out.metadata = {"kind": "globalization-pcc", "C": e.coalgebra, "H": e.hopf, "coaction": cname,
                    "D": "D", "global": "D_coaction", "theta": "theta", "pi": "pi"}
    out.attach("globalization", G.report).attach("cross-check", cross)
    return out, [G.report, cross]

def cmd_globalize(args) -> int:
    b = load_bundle(args.file)
    build = _globalize_pmc if args.mode == "pmc" else _globalize_pcc
    out, reports = build(b, args.name)
    _finish(out, reports, args)
    return EXIT_OK

# ---------------- dualize ----------------

def _dualize_action(b: Bundle, name: Optional[str]) -> Tuple[Bundle, List[CheckReport]]:
    out, reports = Bundle(b.field), []
    for aname in ([name] if name else b.names(ActionEntry)):
        C, H, e = _action(b, aname)
        dact = dual_action_on_dual(C, H, e.action)
        star = f"{e.coalgebra}*"
        _put(out, e.hopf, H)
        _put(out, star, dual_algebra(C))
        out.add(f"{aname}*", DualActionEntry(star, e.hopf, dact, e.partial))
        rep = check_compatibility_pairing(e.action, dact)
        back = action_from_dual_action(C, H, dact)
        rep.compare("converse", b.field, back.matrix, e.action.matrix)
        Cs = dual_algebra(C)
        rep.merge(check_partial_module_algebra(Cs, H, dact) if e.partial else check_module_algebra(Cs, H, dact))
        reports.append(out_report(out, f"transfer {aname}", rep))
    return out, reports

def _dualize_coaction(b: Bundle, name: Optional[str]) -> Tuple[Bundle, List[CheckReport]]:
    out, reports = Bundle(b.field), []
    for cname in ([name] if name else b.names(CoactionEntry)):
        C, H, e = _coaction(b, cname)
        hstar, cstar = f"{e.hopf}*", f"{e.coalgebra}*"
        act = coaction_to_action(C, H, e.coaction, verify=False)
        dact = coaction_to_dual_action(C, H, e.coaction, verify=False)
        _put(out, e.hopf, H)
        _put(out, hstar, dual_hopf(H))
        _put(out, e.coalgebra, b.get(e.coalgebra))
        _put(out, cstar, dual_algebra(C))
        out.add(cname, e)
        out.add(f"{cname}:action", ActionEntry(e.coalgebra, hstar, act, e.partial))
        out.add(f"{cname}:dual_action", DualActionEntry(cstar, hstar, dact, e.partial))
        out.add(f"{cname}:dual_coaction", dual_coaction_on_dual(C, H, dact))
        reports.append(out_report(out, f"four-way {cname}", check_four_way_equivalence(C, H, e.coaction)))
    return out, reports

def _dualize_hopf(b: Bundle, name: Optional[str]) -> Tuple[Bundle, List[CheckReport]]:
    out, reports = Bundle(b.field), []
    for hname in ([name] if name else b.names(HopfAlgebra)):
        H = b.hopf(hname)
        Hs = dual_hopf(H)
        _put(out, hname, H)
        out.add(f"{hname}*", Hs)
        rep = check_hopf(Hs)
        rep.require("separates-points", separates_points(H))
        reports.append(out_report(out, f"dual {hname}", rep))
    return out, reports

def _dualize_globalization(b: Bundle, name: Optional[str]) -> Tuple[Bundle, List[CheckReport]]:
    kind = b.metadata.get("kind")
    out = Bundle(b.field)
    if kind == "globalization-pmc":
        C, H, e = _action(b, _role(b, "action"))
        D = b.coalgebra(_role(b, "D"))
        G = GlobalizationPMC(D, b.get(_role(b, "global"), ActionEntry).action,
                             b.get(_role(b, "theta")), b.get(_role(b, "pi")), CheckReport("loaded"))
        primal, dual = check_duality_agreement(C, H, e.action, G)
        cstar, dstar = f"{_role(b, 'C')}*", f"{_role(b, 'D')}*"
        _put(out, _role(b, "H"), H)
        _put(out, cstar, dual_algebra(C))
        _put(out, dstar, dual_algebra(D))
        reports = [out_report(out, "globalization", primal), out_report(out, "dual-globalization", dual.report)]
        if dual.phi is not None:
            out.add("phi", dual.phi).add("B", dual.B)
        if dual.psi is not None:
            out.add("psi", dual.psi).add("Phi", dual.Phi)
            reports.append(out_report(out, "adjoint", adjoint_psi_check(C, H, G, e.action)))
        out.metadata = {"kind": "dual-globalization", "C*": cstar, "D*": dstar, "H": _role(b, "H"),
                        "phi": "phi", "B": "B"}
        return out, reports
    if kind == "globalization-pcc":
        C, H, e = _coaction(b, _role(b, "coaction"))
        G = GlobalizationPCC(b.coalgebra(_role(b, "D")), b.get(_role(b, "global"), CoactionEntry).coaction,
                             b.get(_role(b, "theta")), b.get(_role(b, "pi")), CheckReport("loaded"))
        hstar = f"{_role(b, 'H')}*"
        _put(out, _role(b, "H"), H)
        _put(out, hstar, dual_hopf(H))
        _put(out, _role(b, "C"), b.get(_role(b, "C")))
        _put(out, _role(b, "D"), G.D)
        out.add(f"{_role(b, 'coaction')}:action",
                ActionEntry(_role(b, "C"), hstar, coaction_to_action(C, H, e.coaction, verify=False), True))
        out.add(f"{_role(b, 'global')}:action",
                ActionEntry(_role(b, "D"), hstar, coaction_to_action(G.D, H, G.co_global, verify=False), False))
        reports = [out_report(out, "cross-check", cross_check_pcc_to_pmc(C, H, e.coaction, G)),
                   out_report(out, "rationality", rationality_consistency_check(C, H, G.co_global))]
        return out, reports
    raise BundleError("bundle metadata does not describe a globalization")

def out_report(out: Bundle, name: str, rep: CheckReport) -> CheckReport:
    out.attach(name, rep)
    return rep

DUALIZERS: Dict[str, Callable] = {
    "action": _dualize_action,
    "coaction": _dualize_coaction,
    "hopf": _dualize_hopf,
    "globalization": _dualize_globalization,
}

def cmd_dualize(args) -> int:
    b = load_bundle(args.file)
    out, reports = DUALIZERS[args.what](b, args.name)
    if not reports:
        raise BundleError(f"nothing to dualize as {args.what}")
    _finish(out, reports, args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_AXIOM

# ---------------- generate ----------------

def _gen_group_algebra(args, fld) -> Bundle:
    G = named_group(args.group)
    return Bundle(fld, metadata={"group": args.group}).add("G", G).add("H", group_algebra(G, fld))

def _gen_subgroup_action(args, fld) -> Bundle:
    b = _gen_group_algebra(args, fld)
    G = b.get("G")
    N = named_subset(G, args.subgroup)
    b.metadata["subset"] = [G.labels[i] for i in N]
    b.add("k", ground_coalgebra(fld))
    return b.add("act", ActionEntry("k", "H", subgroup_partial_action_on_k(G, N, fld), True))

def _gen_subgroup_coaction(args, fld) -> Bundle:
    b = _gen_group_algebra(args, fld)
    G = b.get("G")
    N = named_subset(G, args.subgroup)
    b.metadata["subset"] = [G.labels[i] for i in N]
    b.add("k", ground_coalgebra(fld))
    return b.add("co", CoactionEntry("k", "H", subgroup_partial_coaction_on_k(G, N, fld), True))

def _gen_regular(args, fld) -> Bundle:
    b = _gen_group_algebra(args, fld)
    return b.add("act", ActionEntry("H", "H", regular_module_coalgebra(b.hopf("H")), False))

def _gen_trivial_coaction(args, fld) -> Bundle:
    b = _gen_group_algebra(args, fld)
    H = b.hopf("H")
    return b.add("co", CoactionEntry("H", "H", trivial_coaction(H.coalg, H), False))

def _gen_adjoint_coaction(args, fld) -> Bundle:
    b = _gen_group_algebra(args, fld)
    return b.add("co", CoactionEntry("H", "H", adjoint_coaction(b.hopf("H")), False))

def _gen_dual_basis(args, fld) -> Bundle:
    b = _gen_group_algebra(args, fld)
    H = b.hopf("H")
    b.add("H*", dual_basis_coalgebra(H))
    return b.add("co", CoactionEntry("H*", "H", dual_basis_comodule(H), False))

def _gen_monoid(args, fld) -> Bundle:
    return Bundle(fld).add("M", monoid_bialgebra(fld))

GENERATORS: Dict[str, Callable] = {
    "group-algebra": _gen_group_algebra,
    "subgroup-action": _gen_subgroup_action,
    "subgroup-coaction": _gen_subgroup_coaction,
    "regular": _gen_regular,
    "trivial-coaction": _gen_trivial_coaction,
    "adjoint-coaction": _gen_adjoint_coaction,
    "dual-basis": _gen_dual_basis,
    "monoid": _gen_monoid,
}

def cmd_generate(args) -> int:
    fld = parse_field(args.field)
    b = GENERATORS[args.name](args, fld)
    _write_bundle(b, args.out)
    return EXIT_OK

# ---------------- roundtrip ----------------

def cmd_roundtrip(args) -> int:
    try:
        data = Path(args.file).read_bytes()
    except OSError as e:
        raise BundleError(f"cannot read {args.file}: {e}")
    again = reserialize(data)
    if args.out:
        Path(args.out).write_bytes(again)
        print(f"✅ Wrote {args.out}", file=sys.stderr)
    if again != data:
        print("not in canonical form", file=sys.stderr)
        return EXIT_AXIOM
    return EXIT_OK

# ---------------- output ----------------

def _emit_reports(reports: Sequence[CheckReport], args, stream) -> None:
    if args.json:
        doc = {"version": FORMAT_VERSION, "pass": all(r.passed for r in reports),
               "reports": [r.to_json() for r in reports]}
        stream.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        for r in reports:
            stream.write(r.summary() + "\n")

def _matrix_sheets(b: Bundle) -> dict:
    return {n: matrix_frame(b.field, b.get(n).matrix) for n in b.names(LinearMap)}

def _maybe_xlsx(reports: Sequence[CheckReport], args, out: Optional[Bundle] = None) -> None:
    if getattr(args, "xlsx", None):
        sheets = _matrix_sheets(out) if out is not None else None
        Path(args.xlsx).write_bytes(report_excel_bytes(reports, matrices=sheets))
        print(f"✅ Wrote {args.xlsx}", file=sys.stderr)

def _write_bundle(b: Bundle, out: Optional[str]) -> None:
    if out:
        dump_bundle(b, out)
        print(f"✅ Wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(bundle_bytes(b).decode("utf-8"))

def _finish(out: Bundle, reports: Sequence[CheckReport], args) -> None:
    """Bundle to --out (reports on stdout) or bundle on stdout (reports on stderr)."""
    _write_bundle(out, args.out)
    _emit_reports(reports, args, sys.stdout if args.out else sys.stderr)
    _maybe_xlsx(reports, args, out)
    if args.artifacts:
        folder = Path(args.artifacts)
        folder.mkdir(parents=True, exist_ok=True)
        stem = Path(args.out).stem if args.out else None
        for fname, data in export_bytes(out, stem).items():
            (folder / fname).write_bytes(data)
        print(f"✅ Wrote {len(out.reports) + 1} files to {folder}", file=sys.stderr)

# ---------------- entry point ----------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partial-hopf", description="Partial (co)actions of Hopf algebras and their globalizations.")
    p.add_argument("--verbose", "-v", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def io_flags(sp, artifacts=True):
        sp.add_argument("--out")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--xlsx")
        if artifacts:
            sp.add_argument("--artifacts", help="folder for the bundle plus one CSV per report")

    sp = sub.add_parser("check", help="run axiom checkers on a bundle")
    sp.add_argument("file")
    sp.add_argument("--suite", choices=SUITES, default=DEFAULT_SUITE)
    sp.add_argument("--symmetric", action="store_true")
    io_flags(sp, artifacts=False)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("globalize", help="build the standard globalization")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("pmc", "pcc"), default="pmc")
    sp.add_argument("--name")
    io_flags(sp)
    sp.set_defaults(func=cmd_globalize)

    sp = sub.add_parser("dualize", help="transfer structures to duals and cross-check")
    sp.add_argument("file")
    sp.add_argument("--what", choices=tuple(DUALIZERS), default="action")
    sp.add_argument("--name")
    io_flags(sp)
    sp.set_defaults(func=cmd_dualize)

    sp = sub.add_parser("generate", help="write a catalog instance")
    sp.add_argument("name", choices=tuple(GENERATORS))
    sp.add_argument("--group", default=DEFAULT_GROUP)
    sp.add_argument("--subgroup", default="G")
    sp.add_argument("--field", default=DEFAULT_FIELD)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("roundtrip", help="re-serialize and compare bytes")
    sp.add_argument("file")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_roundtrip)
    return p

def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format=LOG_FORMAT, stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except InputError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AxiomError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        if e.witness is not None:
            print(f"   witness: {e.witness}", file=sys.stderr)
        return EXIT_AXIOM
    except InvariantViolation as e:
        log.error("internal invariant violated: %s (%s)", e, e.witness)
        return EXIT_INTERNAL

if __name__ == "__main__":
    sys.exit(main())
