"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails or an input is
rejected, 2 on usage errors (bad flags, missing files).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import builders
from .act import (Action, find_galois_coordinates, fixed_subalgebra, is_orthogonal,
                  quotient_action, validate_action)
from .corr import correspondence, normal_clifford_survey
from .errors import InvalidStructure, ParseError, TheoremViolation, Unsupported
from .formats import (correspondence_dot, emit_act, emit_isg, groupoid_hasse_dot, load_act,
                      load_isg, semigroup_hasse_dot)
from .gpd import (OrderedGroupoid, esn_groupoid, esn_semigroup, groupoid_quotient,
                  validate_ordered)
from .scalars import field_from_name
from .sgrp import (InverseSemigroup, enumerate_full_subsemigroups, is_clifford, is_full,
                   is_normal, max_elements, quotient)
from .xring import crossed_product_iso, galois_theorem_checks, skew_ring_report

COMMANDS = ("validate", "esn", "quotient", "subsemigroups", "correspondence",
            "crossed-product", "galois-checks", "example")


class UsageError(Exception):
    pass


@dataclass
class Result:
    """What a command produced: a structured report, text lines, optional DOT."""

    ok: bool
    data: dict
    text: list[str] = field(default_factory=list)
    dot: str | None = None


@dataclass
class Inputs:
    semigroup: InverseSemigroup | None = None
    action: Action | None = None
    groupoid: OrderedGroupoid | None = None
    labels: dict | None = None
    name: str = ""


# -- inputs ------------------------------------------------------------------------------


def build_example(spec: str, fld) -> Inputs:
    """``paper`` / ``order28``, ``bounded-rank:M:K``, ``group:NAME``, or ``ordered-groupoid``."""
    kind, _, rest = spec.partition(":")
    if kind in ("paper", "order28"):
        S, _, a = builders.order28_example(fld)
        return Inputs(S, a, labels=builders.order28_labels(), name="order28")
    if kind == "bounded-rank":
        try:
            m, k = (int(x) for x in rest.split(":"))
        except ValueError:
            raise UsageError("bounded-rank needs M:K, e.g. bounded-rank:3:2") from None
        try:
            S, _, a = builders.bounded_rank_example(m, k, fld)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return Inputs(S, a, name=f"bounded-rank-{m}-{k}")
    if kind == "group":
        try:
            S, _, a = builders.group_regular_example(rest, fld)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return Inputs(S, a, name=f"group-{rest}")
    if kind == "ordered-groupoid":
        G, _ = builders.non_inductive_groupoid()
        return Inputs(groupoid=G, name="ordered-groupoid")
    raise UsageError(f"unknown example {spec!r}")


def scalar_field(args):
    kind = "mod" if args.scalar == "mod-p" else args.scalar
    if kind == "mod" and args.prime is None:
        raise UsageError("--scalar mod-p needs --prime P")
    try:
        return field_from_name(kind, args.prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_inputs(args) -> Inputs:
    fld = scalar_field(args)
    if args.example:
        if args.isg or args.act:
            raise UsageError("--example excludes --isg/--act")
        return build_example(args.example, fld)
    if not (args.isg or args.act):
        raise UsageError("give --example, --isg or --act")
    for p in (args.isg, args.act):
        if p and not Path(p).is_file():
            raise UsageError(f"no such file: {p}")
    S = load_isg(args.isg) if args.isg else None
    if args.act:
        S, a = load_act(args.act, S, fld)
        return Inputs(S, a, name=Path(args.act).stem)
    return Inputs(S, name=Path(args.isg).stem)


def _need_action(inp: Inputs) -> Action:
    if inp.action is None:
        raise UsageError("this command needs an action (--act or an action example)")
    return inp.action


def _need_semigroup(inp: Inputs) -> InverseSemigroup:
    if inp.semigroup is None:
        raise UsageError("this command needs an inverse semigroup")
    return inp.semigroup


def _checks(report) -> list[dict]:
    return [{"check": name, "passed": ok, "witness": None if ok else _jsonable(w)}
            for name, (ok, w) in report.results.items()]


def _jsonable(x):
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    return str(x)


# -- commands ----------------------------------------------------------------------------


def cmd_validate(inp: Inputs, args) -> Result:
    if inp.groupoid is not None:
        rep = validate_ordered(inp.groupoid)
        data = {"object": "ordered groupoid", "order": len(inp.groupoid),
                "ordered": rep.ordered, "inductive": rep.inductive, "checks": _checks(rep)}
        text = [f"ordered groupoid of order {len(inp.groupoid)}",
                f"ordered: {rep.ordered}", f"inductive: {rep.inductive}", *rep.lines()]
        return Result(rep.ordered, data, text, groupoid_hasse_dot(inp.groupoid))
    S = _need_semigroup(inp)
    maxS, maxE = max_elements(S)
    data = {"object": "inverse semigroup", "order": len(S), "idempotents": len(S.idempotents),
            "max": len(maxS), "max idempotents": len(maxE)}
    text = [f"inverse semigroup of order {len(S)}: {len(S.idempotents)} idempotents, "
            f"|max S| = {len(maxS)}, |max E(S)| = {len(maxE)}"]
    ok = True
    if inp.action is not None:
        rep = validate_action(inp.action)
        orth = rep.ok and is_orthogonal(inp.action)
        ok = rep.ok
        data["action"] = {"n": inp.action.algebra.n, "orthogonal": orth, "checks": _checks(rep)}
        text += [f"action on {inp.action.algebra.n} idempotents, orthogonal: {orth}", *rep.lines()]
    return Result(ok, data, text, semigroup_hasse_dot(S))


def cmd_esn(inp: Inputs, args) -> Result:
    if inp.groupoid is not None:
        G = inp.groupoid
        rep = validate_ordered(G)
        data = {"direction": "G -> S(G)", "ordered": rep.ordered, "inductive": rep.inductive}
        text = [f"ordered: {rep.ordered}", f"inductive: {rep.inductive}"]
        try:
            S = esn_semigroup(G)
            back = esn_groupoid(S)
            same = back.names == G.names and back.pmul == G.pmul and back.leq_table == G.leq_table
            data.update({"semigroup order": len(S), "round trip": same})
            text.append(f"G(S(G)) = G: {same}")
            return Result(same, data, text, groupoid_hasse_dot(G))
        except InvalidStructure as exc:
            data["error"] = str(exc)
            text.append(f"S(G) undefined: {exc}")
            return Result(False, data, text, groupoid_hasse_dot(G))
    S = _need_semigroup(inp)
    G = esn_groupoid(S)
    rep = validate_ordered(G)
    S2 = esn_semigroup(G)
    same_S = S2.names == S.names and S2.mul == S.mul and S2.inv == S.inv
    G2 = esn_groupoid(S2)
    same_G = G2.pmul == G.pmul and G2.leq_table == G.leq_table
    ok = rep.ok and same_S and same_G
    data = {"direction": "S -> G(S)", "order": len(S), "axioms": _checks(rep),
            "inductive": rep.inductive, "S(G(S)) = S": same_S, "G(S(G(S))) = G(S)": same_G}
    text = [f"G(S) on {len(S)} elements", *rep.lines(),
            f"S(G(S)) = S: {same_S}", f"G(S(G(S))) = G(S): {same_G}"]
    return Result(ok, data, text, groupoid_hasse_dot(G))


def cmd_quotient(inp: Inputs, args) -> Result:
    S = _need_semigroup(inp)
    if not args.normal:
        raise UsageError("quotient needs --normal NAME[,NAME...]")
    names = [n for part in args.normal for n in part.split(",") if n]
    try:
        T = S.ids(names)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    props = {"full": is_full(S, T), "normal": is_normal(S, T), "clifford": is_clifford(T, S)}
    data = {"T": S.name_set(T), **props}
    text = [f"T = {{{', '.join(S.name_set(T))}}}"] + [f"{k}: {v}" for k, v in props.items()]
    q = quotient(S, T)
    data["classes"] = [[S.names[s] for s in c] for c in q.classes]
    data["inverse semigroup"] = q.is_inverse_semigroup
    text.append(f"{len(q.classes)} classes, inverse semigroup: {q.is_inverse_semigroup}")
    text += ["  {" + ", ".join(S.names[s] for s in c) + "}" for c in q.classes]
    ok = q.is_inverse_semigroup
    if props["normal"] and props["full"]:
        H = groupoid_quotient(esn_groupoid(S), T)
        ok = ok and H.representative_independent()
        data["representative independent"] = H.representative_independent()
        text.append(f"coset product representative independent: {H.representative_independent()}")
    admissible = props["full"] and props["normal"] and props["clifford"] and \
        set(S) - set(max_elements(S)[0]) <= T
    if inp.action is not None and ok and admissible:
        qa = quotient_action(inp.action, T)
        data["quotient action"] = {"B": str(qa.subalgebra), "orthogonal": is_orthogonal(qa.action),
                                   "galois": qa.galois, "checks": _checks(qa.checks)}
        text += [f"B = A^(beta_T) = {qa.subalgebra}", f"quotient action Galois: {qa.galois}"]
        ok = ok and qa.galois
    return Result(ok, data, text)


def cmd_subsemigroups(inp: Inputs, args) -> Result:
    S = _need_semigroup(inp)
    maxS, _ = max_elements(S)
    required = set() if args.all_full else set(S) - set(maxS)
    found = enumerate_full_subsemigroups(S, required)
    rows = [{"order": len(T), "elements": T.names(), "normal": is_normal(S, T.members),
             "clifford": is_clifford(T.members, S)} for T in found]
    text = [f"{len(found)} full inverse subsemigroups"
            + ("" if args.all_full else " containing S \\ max S")]
    text += [f"  |T| = {r['order']:2d}  normal={r['normal']!s:5}  clifford={r['clifford']!s:5}  "
             "{" + ", ".join(r["elements"]) + "}" for r in rows]
    return Result(True, {"count": len(found), "subsemigroups": rows}, text)


def cmd_correspondence(inp: Inputs, args) -> Result:
    a = _need_action(inp)
    rep = correspondence(a, inp.labels)
    S = a.semigroup
    pairs = [{"label": p.label, "subalgebra": str(p.subalgebra), "algebra": p.subalgebra.label(),
              "order": len(p.subsemigroup), "subsemigroup": p.names()} for p in rep.pairs]
    rejected = {}
    for r in rep.rejected:
        rejected[r.reason] = rejected.get(r.reason, 0) + 1
    survey = normal_clifford_survey(a, rep)
    data = {"fixed algebra": str(rep.fixed_algebra), "counts": rep.counts, "pairs": pairs,
            "rejected": rejected,
            "normal clifford": [{"T": e.subsemigroup.names(), "galois": e.galois} for e in survey]}
    text = [f"A^beta = {rep.fixed_algebra.label()}",
            f"{len(pairs)} pairs (of {rep.counts['partition subalgebras']} partition subalgebras)"]
    base = set(max_elements(S)[0])
    core = frozenset(set(S) - base) | frozenset(S.idempotents)
    for p in rep.pairs:
        extra = [S.names[s] for s in sorted(p.subsemigroup.members - core)]
        tag = f"{p.label:4}" if p.label else ""
        text.append(f"  {tag}{str(p.subalgebra):16} |T| = {len(p.subsemigroup):2d}  "
                    f"T0 + {{{', '.join(extra)}}}")
    text.append("rejected: " + ", ".join(f"{k}: {v}" for k, v in sorted(rejected.items())))
    text.append(f"normal Clifford subsemigroups: {len(survey)}, all Galois: "
                f"{all(e.galois for e in survey)}")
    ok = all(e.galois for e in survey)
    return Result(ok, data, text, correspondence_dot(rep))


def cmd_crossed_product(inp: Inputs, args) -> Result:
    a = _need_action(inp)
    rep = skew_ring_report(a)
    dim = sum(len(s) for s in a.supports)
    data = {"dimension": dim, "checks": _checks(rep)}
    text = [f"dim A x S = {dim}", *rep.lines()]
    if is_orthogonal(a):
        iso = crossed_product_iso(a)
        data["isomorphism"] = {"rank": iso.rank, "bijective": iso.bijective,
                               "multiplicative": iso.multiplicative}
    return Result(rep.ok, data, text)


def cmd_galois_checks(inp: Inputs, args) -> Result:
    a = _need_action(inp)
    coords = find_galois_coordinates(a)
    rep = galois_theorem_checks(a, coords)
    data = {"fixed algebra": str(fixed_subalgebra(a)), "coordinates": coords is not None,
            "items": rep.items, "details": _jsonable(rep.details), "consistent": rep.consistent()}
    text = [f"A^beta = {fixed_subalgebra(a).label()}",
            f"(i) Galois coordinates: {'found' if coords is not None else 'none'}"]
    for item, verdict in rep.items.items():
        text.append(f"({item}) {verdict}  {rep.details[item]}")
    text.append(f"items agree with (i): {rep.consistent()}")
    return Result(rep.all_pass and rep.consistent(), data, text)


# -- fixtures ------------------------------------------------------------------------------


def cmd_example(args) -> int:
    fld = scalar_field(args)
    spec = args.name + "".join(":" + p for p in args.params)
    inp = build_example(spec, fld)
    if inp.action is None:
        raise UsageError(f"{args.name} has no file form")
    stem = inp.name
    isg = emit_isg(inp.semigroup)
    act = emit_act(inp.action, f"{stem}.isg")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.isg").write_text(isg)
        (out / f"{stem}.act").write_text(act)
        print(f"wrote {out / (stem + '.isg')} and {out / (stem + '.act')}")
    else:
        sys.stdout.write(f"# {stem}.isg\n{isg}\n# {stem}.act\n{act}")
    return 0


HANDLERS = {
    "validate": cmd_validate,
    "esn": cmd_esn,
    "quotient": cmd_quotient,
    "subsemigroups": cmd_subsemigroups,
    "correspondence": cmd_correspondence,
    "crossed-product": cmd_crossed_product,
    "galois-checks": cmd_galois_checks,
}

ALIASES = {"theorem5": "galois-checks"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scalar", default="rational", help="rational or mod-p (default rational)")
    common.add_argument("--prime", type=int, help="p for --scalar mod-p")
    common.add_argument("-v", "--verbose", action="store_true")
    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--example", help="paper | bounded-rank:M:K | group:NAME | ordered-groupoid")
    inputs.add_argument("--isg", help="inverse semigroup file")
    inputs.add_argument("--act", help="action file")
    inputs.add_argument("--format", choices=("text", "json", "dot"), default="text")

    parser = argparse.ArgumentParser(prog="invgalois",
                                     description="Inverse semigroup actions and their Galois correspondence.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        p = sub.add_parser(name, parents=[common, inputs], aliases=[a for a, n in ALIASES.items() if n == name])
        if name == "quotient":
            p.add_argument("--normal", action="append", help="elements of T, comma separated")
        if name == "subsemigroups":
            p.add_argument("--all-full", action="store_true",
                           help="all full subsemigroups, not only those containing S \\ max S")
    ex = sub.add_parser("example", parents=[common], help="emit a fixture as .isg/.act text")
    ex.add_argument("name", help="paper | bounded-rank | group")
    ex.add_argument("params", nargs="*", help="M K for bounded-rank, NAME for group")
    ex.add_argument("--out", help="directory to write NAME.isg and NAME.act into")
    return parser


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"ok": result.ok, **_jsonable(result.data)}, indent=2, ensure_ascii=False) + "\n"
    if fmt == "dot":
        if result.dot is None:
            raise UsageError("no DOT output for this command")
        return result.dot
    return "\n".join(result.text + [f"result: {'pass' if result.ok else 'FAIL'}"]) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "example":
            return cmd_example(args)
        inp = load_inputs(args)
        result = HANDLERS[ALIASES.get(args.command, args.command)](inp, args)
        sys.stdout.write(render(result, args.format))
        return 0 if result.ok else 1
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"invgalois: error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, InvalidStructure, TheoremViolation, Unsupported) as exc:
        print(f"invgalois: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
