"""Command-line front end.

Exit codes: 0 success, 2 a domain-level negative answer (violation,
infeasible, invalid solution), 1 an operational error (I/O, bad JSON,
size limits, internal alarms).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Optional

from . import io
from .core import elements
from .errors import (ConditionViolationError, CosignKitError, Inconsistent, InvalidInstance,
                     NotCrossing, NotPlanar, NotProper)

OK, NEGATIVE, FAILURE = 0, 2, 1

DOMAIN_ERRORS = (ConditionViolationError, InvalidInstance, NotCrossing, NotProper, NotPlanar,
                 Inconsistent)


class Report:
    def __init__(self, command: str):
        self.doc: dict[str, Any] = {"command": command}
        self.lines: list[str] = []

    def say(self, text: str) -> None:
        self.lines.append(text)

    def set(self, **kw) -> None:
        self.doc.update(kw)

    def emit(self, as_json: bool, out=None) -> None:
        out = out or sys.stdout
        if as_json:
            out.write(json.dumps(self.doc, indent=1, default=_jsonable) + "\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    return str(x)


def _named_set(ground, mask: int, index: Optional[int] = None) -> dict:
    doc: dict[str, Any] = {"set": elements(mask)}
    if index is not None:
        doc = {"index": index, **doc}
    if ground.names:
        doc["names"] = [ground.names[i] for i in elements(mask)]
    return doc


def _write(obj, out: Optional[str], rep: Report, as_json: bool) -> None:
    if out:
        io.save(obj, out)
        rep.say(f"wrote {out}")
    elif not as_json:
        rep.say(io.dumps(obj).rstrip())
    else:
        rep.set(result=io.to_json(obj))


# ---------------------------------------------------------------- commands


def cmd_validate(args, rep: Report) -> int:
    doc = io.read_json(args.path)
    kind = args.kind or io.detect_kind(doc)
    obj = io.from_json(doc, kind)
    rep.set(kind=kind)
    if kind == "family":
        from .core import find_crossing_violation
        bad = find_crossing_violation(obj)
        if bad is not None:
            i, j = bad
            rep.set(verdict="violation", witness=[_named_set(obj.ground, obj.sets[i], i),
                                                  _named_set(obj.ground, obj.sets[j], j)])
            rep.say(f"not crossing: members {i} and {j} "
                    f"{obj.ground.format(obj.sets[i])} {obj.ground.format(obj.sets[j])}")
            return NEGATIVE
    elif kind == "circle":
        from .circle import validate_instance
        bad = validate_instance(obj)
        if bad is not None:
            g = obj.family.ground
            rep.set(verdict="violation", property=bad.prop,
                    witness=[_named_set(g, s, obj.family.index(s) if s in obj.family else None)
                             for s in bad.sets])
            rep.say(bad.describe(g))
            return NEGATIVE
    elif kind == "plane":
        from .dijoin import is_super_proper
        from .plane import proper_violation, validate_plane
        bad = validate_plane(obj)
        if bad is not None:
            rep.set(verdict="violation", property=bad.kind, witness=bad.detail)
            rep.say(f"{bad.kind}: {bad.detail}")
            return NEGATIVE
        why = proper_violation(obj)
        if why is not None:
            cut = why[1]
            wit = None if cut is None else {"shore": elements(cut.shore), "arcs": list(cut.arcs),
                                            "weight": cut.weight}
            rep.set(verdict="violation", property="proper", reason=why[0], witness=wit)
            rep.say(f"not proper: {why[0]}" + ("" if cut is None else
                                               f" shore {elements(cut.shore)} weight {cut.weight}"))
            return NEGATIVE
        sp = is_super_proper(obj)
        rep.set(super_proper=sp is None, super_proper_violation=None if sp is None else sp.prop)
        rep.say("proper plane digraph" + ("" if sp is None else f" (not super-proper: {sp.prop})"))
    elif kind == "lattice":
        obj.check()
    rep.set(verdict="ok")
    if not rep.lines:
        rep.say(f"ok ({kind})")
    return OK


def cmd_cosign(args, rep: Report) -> int:
    from .core import verify_cc_cosigning, verify_cosigning
    F = io.load(args.path, "family")
    if args.cc:
        from .cosign import cc_cosign
        sigma, stats = cc_cosign(F)
        good = verify_cc_cosigning(F, sigma)
        rep.set(stats={"iterations": stats.iterations, "pair_scans": stats.pair_scans,
                       "forced": stats.forced_count, "free": stats.free_count})
    elif args.oracle:
        from .cosign import check_cosign_condition
        from .oracle import OracleStats, explicit_to_well_provided, oracle_cosign
        bad = check_cosign_condition(F)
        if bad is not None:
            raise ConditionViolationError(bad)
        ost = OracleStats()
        sigma = oracle_cosign(explicit_to_well_provided(F), ost)
        good = verify_cosigning(F, sigma)
        rep.set(stats={"iterations": ost.iterations, "minimizations": ost.minimizations,
                       "max_per_iteration": ost.max_per_iteration})
    else:
        from .cosign import cosign
        sigma, stats = cosign(F)
        good = verify_cosigning(F, sigma)
        rep.set(stats={"iterations": stats.iterations, "set_scans": stats.set_scans,
                       "forced": stats.forced_count, "free": stats.free_count})
    if not good:
        rep.set(verdict="error")
        rep.say("internal error: produced signing does not verify")
        return FAILURE
    rep.set(verdict="ok", signing=sigma.text())
    rep.say(f"signing {sigma.text()}")
    _write(sigma, args.output, rep, args.json)
    return OK


def cmd_circle(args, rep: Report) -> int:
    from .circle import solve_circle
    inst = io.load(args.path, "circle")
    arcs, trace = solve_circle(inst)
    g = inst.family.ground
    rep.set(verdict="ok", arcs=[[a.tail, a.head] for a in sorted(arcs)], ops=trace.ops)
    rep.say("arcs " + " ".join(f"({g.label(a.tail)},{g.label(a.head)})" for a in sorted(arcs)))
    if args.trace:
        steps = [{"step": r.step, "arcs": [list(a) for a in r.arcs], "deleted": list(r.deleted),
                  "covered": [elements(s) for s in r.covered], "note": r.note}
                 for r in trace.records]
        rep.set(trace=steps)
        for s in steps:
            rep.say(f"  step {s['step']}: arcs {s['arcs']} deleted {s['deleted']} {s['note']}".rstrip())
    _write(arcs, args.output, rep, args.json)
    return OK


def cmd_dijoin(args, rep: Report) -> int:
    from .dijoin import decompose_dijoins
    from .plane import to_dot
    D = io.load(args.path, "plane")
    pair, records = decompose_dijoins(D)
    rep.set(verdict="ok", J1=sorted(pair.J1), J2=sorted(pair.J2), reductions=len(records))
    rep.say(f"J1 {sorted(pair.J1)}")
    rep.say(f"J2 {sorted(pair.J2)}")
    if args.trace:
        tr = [{"kind": r.kind, "before_n": r.before.n, "after_n": [g.n for g in r.after],
               **{k: v for k, v in r.detail.items() if k in ("v", "x", "e", "f", "cycle", "new_arcs")}}
              for r in records]
        rep.set(trace=tr)
        for t in tr:
            rep.say(f"  {t['kind']}: {t['before_n']} -> {t['after_n']} vertices")
    if args.dot:
        Path(args.dot).write_text(to_dot(D, pair))
        rep.say(f"wrote {args.dot}")
    _write(pair, args.output, rep, args.json)
    return OK


def _parse_extra(items) -> dict:
    extra = {}
    for item in items or ():
        key, _, val = item.partition("=")
        try:
            extra[key] = json.loads(val)
        except json.JSONDecodeError:
            extra[key] = val
    return extra


def cmd_gen(args, rep: Report) -> int:
    from .testkit import GeneratorConfig, gen_circle_instance, gen_crossing_family, gen_plane_digraph
    cfg = GeneratorConfig(seed=args.seed, n=args.n, sets=args.sets, cap=args.cap,
                          extra=_parse_extra(args.extra))
    make = {"family": gen_crossing_family, "circle": gen_circle_instance,
            "plane": gen_plane_digraph}[args.kind]
    obj = make(cfg)
    rep.set(verdict="ok", kind=args.kind)
    _write(obj, args.output, rep, args.json)
    return OK


def verify_one(kind: str, inst_path: str, sol_path: str) -> dict:
    """Independent re-check of one solution file; never raises for domain failures."""
    try:
        if kind in ("cosign", "cc"):
            from .core import cc_cosigning_violation, cosigning_violation
            F = io.load(inst_path, "family")
            sigma = io.load(sol_path, "signing")
            if len(sigma) != F.n or not sigma.is_complete(F.full):
                return {"ok": False, "reason": "signing does not sign every element"}
            if kind == "cosign":
                i = cosigning_violation(F, sigma)
                if i is not None:
                    return {"ok": False, "reason": "member lacks a positive inside or negative outside",
                            "witness": [_named_set(F.ground, F.sets[i], i)]}
            else:
                bad = cc_cosigning_violation(F, sigma)
                if bad is not None:
                    i, j, what = bad
                    return {"ok": False, "reason": f"pair fails the {what} requirement",
                            "witness": [_named_set(F.ground, F.sets[i], i),
                                        _named_set(F.ground, F.sets[j], j)]}
        elif kind == "circle":
            from .circle import check_solution, uncovered
            inst = io.load(inst_path, "circle")
            arcs = io.circle_solution_from_json(io.read_json(sol_path), inst.n)
            reason = check_solution(inst, arcs)
            if reason is not None:
                left = uncovered(inst.family, arcs)
                return {"ok": False, "reason": reason,
                        "witness": [_named_set(inst.family.ground, s, inst.family.index(s))
                                    for s in left]}
        elif kind == "dijoin":
            from .dijoin import verify_dijoin_pair
            D = io.load(inst_path, "plane")
            pair = io.load(sol_path, "dijoin_solution")
            ok, cut = verify_dijoin_pair(D, pair)
            if not ok:
                wit = None if cut is None else {"shore": elements(cut.shore), "arcs": list(cut.arcs)}
                return {"ok": False, "reason": "not two disjoint dijoins among the weight-1 arcs",
                        "witness": wit}
        else:
            return {"ok": None, "error": f"unknown kind {kind}"}
    except (OSError, CosignKitError) as exc:
        return {"ok": None, "error": str(exc)}
    return {"ok": True}


def _verify_job(job):
    return verify_one(*job)


def cmd_verify(args, rep: Report) -> int:
    files = args.files
    if len(files) % 2:
        rep.set(verdict="error", error="expected INSTANCE SOLUTION pairs")
        rep.say("error: expected INSTANCE SOLUTION pairs")
        return FAILURE
    jobs = [(args.kind, files[i], files[i + 1]) for i in range(0, len(files), 2)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_job, jobs))
    else:
        results = [_verify_job(j) for j in jobs]
    out = []
    for (_, inst, sol), r in zip(jobs, results):
        out.append({"instance": inst, "solution": sol, **r})
        if r["ok"]:
            rep.say(f"ok {sol}")
        elif r["ok"] is None:
            rep.say(f"error {sol}: {r['error']}")
        else:
            rep.say(f"invalid {sol}: {r['reason']}")
            for w in r.get("witness") or []:
                rep.say(f"  witness {w}")
    rep.set(results=out)
    if any(r["ok"] is None for r in results):
        rep.set(verdict="error")
        return FAILURE
    if not all(r["ok"] for r in results):
        rep.set(verdict="invalid")
        return NEGATIVE
    rep.set(verdict="ok")
    return OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    p = argparse.ArgumentParser(prog="cosign-kit", parents=[common],
                                description="Cosignings, circle covers and dijoin pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an instance file")
    s.add_argument("path")
    s.add_argument("--kind", choices=io.KINDS)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cosign", parents=[common], help="cosign a crossing family")
    s.add_argument("path")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--cc", action="store_true", help="intersection/union-closed variant")
    mode.add_argument("--oracle", action="store_true", help="run through the membership-oracle model")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cosign)

    s = sub.add_parser("circle", parents=[common], help="solve a circle instance")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_circle)

    s = sub.add_parser("dijoin", parents=[common], help="two disjoint dijoins of a plane digraph")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--dot", help="also write a Graphviz drawing with the pair coloured")
    s.set_defaults(func=cmd_dijoin)

    s = sub.add_parser("gen", parents=[common], help="generate a random instance")
    s.add_argument("kind", choices=("family", "circle", "plane"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--sets", type=int, default=4)
    s.add_argument("--cap", type=int, default=40)
    s.add_argument("--extra", action="append", metavar="KEY=VALUE")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", parents=[common], help="re-check solution files")
    s.add_argument("kind", choices=("cosign", "cc", "circle", "dijoin"))
    s.add_argument("files", nargs="+", metavar="INSTANCE SOLUTION")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        code = args.func(args, rep)
    except ConditionViolationError as exc:
        v = exc.violation
        rep.set(verdict="violation", condition=v.kind)
        F = None
        try:
            F = io.load(args.path, "family")
        except Exception:
            pass
        if F is not None:
            rep.set(witness=[_named_set(F.ground, s, F.index(s)) for s in v.sets])
            rep.say(f"condition {v.kind} fails at " + ", ".join(F.ground.format(s) for s in v.sets))
        else:
            rep.say(f"condition {v.kind} fails")
        code = NEGATIVE
    except InvalidInstance as exc:
        v = exc.violation
        rep.set(verdict="violation", property=v.prop, witness=[elements(s) for s in v.sets])
        rep.say(f"invalid instance: {v.prop}")
        code = NEGATIVE
    except NotCrossing as exc:
        rep.set(verdict="violation", property="crossing", witness=list(exc.pair))
        rep.say(f"not a crossing family: members {exc.pair}")
        code = NEGATIVE
    except DOMAIN_ERRORS as exc:
        rep.set(verdict="violation", error=str(exc))
        rep.say(f"{type(exc).__name__}: {exc}")
        code = NEGATIVE
    except (OSError, CosignKitError) as exc:
        rep.set(verdict="error", error=f"{type(exc).__name__}: {exc}")
        rep.say(f"error: {type(exc).__name__}: {exc}")
        code = FAILURE
    rep.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
