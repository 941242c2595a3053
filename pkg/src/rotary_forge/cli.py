"""Command-line interface. JSON payloads go to stdout, logs to stderr.

Exit codes: 0 all requested assertions passed, 1 an assertion failed, 2 usage error, 3 a cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import fields
from typing import Sequence

from . import __version__
from .catalogue import (ATOMIC_POLYHEDRA, GAMMAS, NONEXISTENT, PERM_REP_FAMILIES, REGULAR_POLYHEDRA, FamilyId,
                        Params, nonexistence_witness, perm_rep_for, presentation_for, verify_perm_rep_conditions)
from .census import (Bounds, Census, CensusConfig, amalgamate, census_all, enumerate_tight_rotary_polyhedra,
                     rank5_obstruction_check, rebuild, reproduce_table4)
from .errors import CapExceeded, InvalidParams, PresentationSyntaxError, RotaryError
from .lattice import DEFAULT_POSET_CAP, build_poset, section_type_report, validate_polytope
from .permgroup import DEFAULT_ELEMENT_CAP
from .presentation import parse_presentation, render_presentation
from .rotation import RotationGroup, chirality_verdict, dual, group_report, make_rotation_group

log = logging.getLogger("rotary_forge")

SCHEMA_VERSION = 1
PARAM_FIELDS = [f.name for f in fields(Params)]
CHIRAL_FAMILIES = set(ATOMIC_POLYHEDRA) | set(GAMMAS) | {FamilyId.LAMBDA1, FamilyId.LAMBDA2, FamilyId.LAMBDA3}


class UsageError(RotaryError):
    pass


_GROUP = {"type": "array", "order": "integer", "tight": "boolean", "intersection": "boolean",
          "orders_ok": "boolean", "polytopal": "boolean", "regular_or_chiral": "string|null",
          "chirality_group_order": "integer|null", "generators": "array of cycle strings"}
SCHEMAS = {
    "build": {"label": "string", "presentation": "string", **_GROUP},
    "verify": {"label": "string", "chiral": "boolean", "expected": "string", "perm_rep": "object|null",
               "failures": "array", **_GROUP},
    "census": {"lines": "one record per line: type, x1, y1, x2, y2, verdict, enantiomorph, atomic, "
                        "matched_family", "summary": "last line: per-type counts, indeterminate tuples, failures"},
    "amalgamate": {"facet": "string", "vertex_figure": "string", "amalgam": "boolean", "measured_order": "integer|null",
                   "expected_order": "integer", "group": "object|null"},
    "poset": {"counts": "array", "incidence": "object", "report": "object", "sections": "object"},
    "nonexist": {"family": "string", "collapsed": "boolean", "sigma2_order": "integer", "order": "integer",
                 "expected_order": "integer", "failed": "array"},
    "table4": {"entries": "array", "counts": "object", "collapse": "object", "sweep": "object"},
    "rank5": {"instances": "array", "explanation": "string"},
}
for _s in SCHEMAS.values():
    _s.update({"schema_version": "integer", "command": "string", "ok": "boolean"})


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _add_params(sp: argparse.ArgumentParser, family: bool = True) -> None:
    if family:
        sp.add_argument("--family", help="catalogue family, e.g. gamma1, p2m-ma, lambda4")
        sp.add_argument("--presentation", metavar="FILE", help="ad-hoc presentation file instead of a family")
    for name in PARAM_FIELDS:
        sp.add_argument(f"--{name}", type=int)


def _add_caps(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--max-cosets", type=int)
    sp.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    sp.add_argument("--poset-cap", type=int, default=DEFAULT_POSET_CAP)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rotary-forge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--json-schema", action="store_true", help="print payload schemas and exit")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command")
    for name in ("build", "verify", "poset", "nonexist"):
        sp = sub.add_parser(name)
        _add_params(sp)
        _add_caps(sp)
    sp = sub.add_parser("census")
    sp.add_argument("what", choices=["polyhedra", "all"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--bound", type=int, default=CensusConfig.bound)
    sp.add_argument("--method", choices=["lift", "scan"], default="lift")
    sp.add_argument("--no-annotate", action="store_true", help="skip catalogue matching and atomicity")
    _add_caps(sp)
    sp = sub.add_parser("amalgamate", help="FACET and VERTEX-FIGURE are family:k=v,... or dual:family:... "
                                           "or census:p,q,x1,y1,x2,y2 or @FILE")
    sp.add_argument("facet")
    sp.add_argument("vertex_figure")
    sp.add_argument("--expect-fail", action="store_true", help="assert that no amalgam exists")
    _add_caps(sp)
    for name in ("table4", "rank5"):
        sp = sub.add_parser(name)
        sp.add_argument("--m", type=_int_list, default=(3,))
        sp.add_argument("--alpha", type=_int_list, default=(2,))
        sp.add_argument("--beta", type=_int_list, default=(5,))
        if name == "table4":
            sp.add_argument("--no-sweep", action="store_true")
        _add_caps(sp)
    return ap


def _params(args) -> Params:
    return Params(**{k: getattr(args, k) for k in PARAM_FIELDS if getattr(args, k, None) is not None})


def _load_presentation(path: str):
    with open(path) as fh:
        return parse_presentation(fh.read())


def _group_from_args(args) -> tuple[RotationGroup, str, FamilyId | None]:
    if args.presentation and args.family:
        raise UsageError("give either --family or --presentation, not both")
    if args.presentation:
        pres = _load_presentation(args.presentation)
        R = make_rotation_group(pres, max_cosets=args.max_cosets, element_cap=args.element_cap,
                                label=args.presentation)
        return R, args.presentation, None
    if not args.family:
        raise UsageError("--family or --presentation is required")
    fam = FamilyId.parse(args.family)
    prm = _params(args)
    label = f"{fam.value}({prm.label()})"
    R = make_rotation_group(presentation_for(fam, prm), max_cosets=args.max_cosets, element_cap=args.element_cap,
                            label=label)
    return R, label, fam


def _group_spec(spec: str, args) -> tuple[RotationGroup, str]:
    if spec.startswith("@"):
        pres = _load_presentation(spec[1:])
        return make_rotation_group(pres, max_cosets=args.max_cosets, element_cap=args.element_cap), spec
    if spec.startswith("dual:"):
        R, _ = _group_spec(spec[5:], args)
        return dual(R), spec
    if spec.startswith("census:"):
        vals = _int_list(spec[7:])
        if len(vals) != 6:
            raise UsageError("census spec is census:p,q,x1,y1,x2,y2")
        return rebuild(vals[0], vals[1], vals[2:]), spec
    fam, _, rest = spec.partition(":")
    kv = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        if k not in PARAM_FIELDS or not v:
            raise UsageError(f"bad parameter {item!r} in {spec!r}")
        kv[k] = int(v)
    family = FamilyId.parse(fam)
    R = make_rotation_group(presentation_for(family, Params(**kv)), max_cosets=args.max_cosets,
                            element_cap=args.element_cap)
    return R, spec


def _payload(command: str, ok: bool, **body) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "ok": ok, **body}


def cmd_build(args) -> tuple[int, list[dict]]:
    R, label, _ = _group_from_args(args)
    rep = group_report(R)
    return 0, [_payload("build", True, label=label, presentation=render_presentation(R.presentation), **rep)]


def cmd_verify(args) -> tuple[int, list[dict]]:
    R, label, fam = _group_from_args(args)
    rep = group_report(R)
    v = chirality_verdict(R)
    failures = []
    if fam in NONEXISTENT:
        expected = "collapse"
        if rep["tight"] and rep["intersection"] and rep["orders_ok"] and v.chiral:
            failures.append("tight chiral polytope exists")
    else:
        expected = "chiral" if fam in CHIRAL_FAMILIES else ("regular" if fam in REGULAR_POLYHEDRA else "tight")
        for key in ("tight", "intersection", "orders_ok"):
            if not rep[key]:
                failures.append(key)
        if expected == "chiral" and not v.chiral:
            failures.append("chiral")
        if expected == "regular" and not v.regular:
            failures.append("regular")
    perm = None
    prm = _params(args)
    # Gamma1 has an explicit representation only when k1 = k2
    if fam in PERM_REP_FAMILIES and not (fam == FamilyId.GAMMA1 and prm.k1 != prm.k2):
        P = perm_rep_for(fam, prm)
        chk = verify_perm_rep_conditions(P, *R.intended_type)
        perm = {"faithful": P.presentation_faithful, "order": P.group.order(), "conditions": chk.ok,
                "witness": list(chk.full_orbit_witness) if chk.full_orbit_witness else None}
        if not (P.presentation_faithful and chk.ok):
            failures.append("perm_rep")
    ok = not failures
    return (0 if ok else 1), [_payload("verify", ok, label=label, chiral=v.chiral, expected=expected,
                                       perm_rep=perm, failures=failures, **rep)]


def cmd_poset(args) -> tuple[int, list[dict]]:
    R, label, _ = _group_from_args(args)
    if R.order() > args.poset_cap:
        raise CapExceeded("face poset", args.poset_cap)
    P = build_poset(R, cap=args.poset_cap)
    rep = validate_polytope(P)
    sec = section_type_report(P)
    ok = rep.ok and list(sec.schlafli) == list(R.claimed_type)
    return (0 if ok else 1), [_payload("poset", ok, label=label, **json.loads(P.to_json()), report=rep.to_json(),
                                       sections=sec.to_json())]


def cmd_nonexist(args) -> tuple[int, list[dict]]:
    """Omitted sign parameters are swept over all their allowed values."""
    from .catalogue import _SIGNS
    if not args.family:
        raise UsageError("--family is required")
    fam = FamilyId.parse(args.family)
    given = _params(args).given()
    choices = [given]
    for f, allowed in _SIGNS.get(fam, {}).items():
        if f not in given:
            choices = [dict(c, **{f: v}) for c in choices for v in allowed]
    evs = [nonexistence_witness(fam, Params(**c), max_cosets=args.max_cosets).to_json() for c in choices]
    ok = all(e["collapsed"] for e in evs)
    if len(evs) == 1:
        return (0 if ok else 1), [_payload("nonexist", ok, **evs[0])]
    return (0 if ok else 1), [_payload("nonexist", ok, family=fam.value, collapsed=ok,
                                       sigma2_order=max(e["sigma2_order"] for e in evs), witnesses=evs)]


def cmd_census(args) -> tuple[int, list[dict]]:
    config = CensusConfig.from_env(bound=args.bound, method=args.method)
    if args.what == "polyhedra":
        if args.p is None or args.q is None:
            raise UsageError("census polyhedra needs --p and --q")
        if args.p * args.q > args.bound:
            raise UsageError(f"pq = {args.p * args.q} exceeds --bound {args.bound}")
        results = {(args.p, args.q): enumerate_tight_rotary_polyhedra(args.p, args.q, config,
                                                                      annotate=not args.no_annotate)}
    else:
        results = census_all(config)
    lines, failures = [], []
    for (p, q), res in sorted(results.items()):
        keys = {r.params for r in res.records}
        for r in res.records:
            lines.append(r.to_json())
            if r.verdict == "chiral" and r.enantiomorph not in keys:
                failures.append({"type": [p, q], "params": list(r.params), "failed": "enantiomorph missing"})
            if r.verdict == "chiral" and 2 in (p, q):
                failures.append({"type": [p, q], "params": list(r.params), "failed": "chiral with a 2 in type"})
    summary = {
        "types": len(results),
        "chiral_classes": sum(len(r.chiral) for r in results.values()),
        "regular_classes": sum(len(r.regular) for r in results.values()),
        "indeterminate": [{"type": [p, q], "params": list(t)} for (p, q), r in sorted(results.items())
                          for t in r.indeterminate],
        "failures": failures,
    }
    ok = not failures
    return (0 if ok else 1), lines + [_payload("census", ok, summary=summary)]


def cmd_amalgamate(args) -> tuple[int, list[dict]]:
    F, fl = _group_spec(args.facet, args)
    V, vl = _group_spec(args.vertex_figure, args)
    A = amalgamate(F, V, max_cosets=args.max_cosets)
    ok = A.ok != args.expect_fail
    return (0 if ok else 1), [_payload("amalgamate", ok, facet=fl, vertex_figure=vl, amalgam=A.ok,
                                       measured_order=A.measured_order, expected_order=A.expected_order,
                                       group=group_report(A.group) if A.ok else None)]


def cmd_table4(args) -> tuple[int, list[dict]]:
    rep = reproduce_table4(Bounds(args.m, args.alpha, args.beta), sweep=not args.no_sweep)
    ok = rep.pop("ok")
    return (0 if ok else 1), [_payload("table4", ok, **rep)]


def cmd_rank5(args) -> tuple[int, list[dict]]:
    from .catalogue import grid
    inst = []
    for fam in (FamilyId.LAMBDA1, FamilyId.LAMBDA2, FamilyId.LAMBDA3):
        inst.extend((fam, prm) for prm in grid(fam, ms=args.m, alphas=args.alpha, betas=args.beta))
    rep = rank5_obstruction_check(inst)
    ok = rep.pop("ok")
    return (0 if ok else 1), [_payload("rank5", ok, **rep)]


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "poset": cmd_poset, "nonexist": cmd_nonexist,
            "census": cmd_census, "amalgamate": cmd_amalgamate, "table4": cmd_table4, "rank5": cmd_rank5}


def run_command(argv: Sequence[str]) -> tuple[int, list[dict]]:
    """Parse and dispatch; returns the exit code and the JSON payload lines."""
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
    except SystemExit as e:
        return (0 if e.code == 0 else 2), []
    if args.json_schema:
        return 0, [{"schema_version": SCHEMA_VERSION, "schemas": SCHEMAS}]
    if not args.command:
        ap.print_usage(sys.stderr)
        return 2, []
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InvalidParams, PresentationSyntaxError, OSError) as e:
        log.error("%s", e)
        return 2, [_payload(args.command, False, error=str(e))]
    except CapExceeded as e:
        log.error("cap exceeded: %s", e)
        return 3, [_payload(args.command, False, error=str(e), argv=list(argv))]


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=logging.INFO if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    code, lines = run_command(argv)
    for line in lines:
        sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
