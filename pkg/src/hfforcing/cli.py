"""Command-line front end: ``hfforcing <command> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
Set arguments are literals (``{0,<1,2>}``) or paths to files holding a
literal or its JSON encoding.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import names as nm
from .choice import pointed_dc
from .errors import HFError
from .formula import free_names, parse_formula, relativize, sat
from .generic import DenseFamily, generic_filter_existence, rasiowa_sikorski
from .order import (FiniteForcingNotion, ForcingNotion,
                    antichain_notion, chain_notion, cohen_dense, cohen_notion,
                    dense_witness, trivial_notion, validate_forcing_notion)
from .randgen import random_forcing_data, random_name, random_subset
from .sets import (HSet, domain, eclose, is_transset, kpair, memrel, node_budget,
                   powerset, range_, rank, relation_from_pairs, trancl, union)
from .syntax import format_set, from_json, parse_set, parse_sets, to_json


class UsageError(Exception):
    pass


def _text_or_file(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def read_set(arg: str) -> HSet:
    """A set literal, a JSON nested array, or a file holding either."""
    text = _text_or_file(arg).strip()
    if text.startswith("["):
        return from_json(json.loads(text))
    return parse_set(text)


def read_sets(arg: str) -> List[HSet]:
    text = _text_or_file(arg).strip()
    if text.startswith("["):
        return [from_json(x) for x in json.loads(text)]
    return parse_sets(text) if text else []


# -- builtin registry ------------------------------------------------------

_BUILTIN_POSETS: Dict[str, Callable[[Optional[int]], ForcingNotion]] = {
    "cohen": lambda k: cohen_notion(),
    "trivial": lambda k: trivial_notion(),
    "chain": chain_notion,
    "antichain": antichain_notion,
}


def builtin_poset(tag: str) -> ForcingNotion:
    m = re.fullmatch(r"([a-z]+)(?:-(\d+))?", tag)
    if not m or m.group(1) not in _BUILTIN_POSETS:
        raise UsageError(f"unknown builtin poset {tag!r}; known: cohen, "
                         "trivial, chain-K, antichain-K")
    name, k = m.group(1), m.group(2)
    if (k is None) != (name in ("cohen", "trivial")):
        raise UsageError(f"builtin {name!r} {'needs' if k is None else 'takes no'} a size")
    return _BUILTIN_POSETS[name](None if k is None else int(k))


def poset_from_json(obj) -> ForcingNotion:
    if not isinstance(obj, dict):
        raise UsageError("poset description must be a JSON object")
    if "builtin" in obj:
        return builtin_poset(obj["builtin"])
    try:
        carrier = HSet(_lit(x) for x in obj["carrier"])
        leq = relation_from_pairs((_lit(a), _lit(b)) for a, b in obj["leq"])
        one = _lit(obj["one"])
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"malformed poset description: {err}") from None
    return FiniteForcingNotion(carrier, leq, one, obj.get("name", "file"))


def _lit(x) -> HSet:
    return parse_set(x) if isinstance(x, str) else from_json(x)


def read_poset(arg: str) -> ForcingNotion:
    if arg.startswith("builtin:"):
        return builtin_poset(arg[len("builtin:"):])
    try:
        return poset_from_json(json.loads(_text_or_file(arg)))
    except json.JSONDecodeError as err:
        raise UsageError(f"poset {arg!r} is neither a builtin nor JSON: {err}") from None


def read_family(arg: str, f: ForcingNotion) -> DenseFamily:
    if arg in ("builtin:cohen", "builtin:cohen-dense"):
        return DenseFamily(cohen_dense, "cohen-dense")
    if arg.startswith("builtin:"):
        raise UsageError(f"unknown builtin family {arg!r}")
    text = _text_or_file(arg).strip()
    items = ([_lit(x) for x in json.loads(text)] if text.startswith("[")
             else parse_sets(text))
    return DenseFamily(items, os.path.basename(arg))


def _model(args, f: ForcingNotion) -> HSet:
    if getattr(args, "model", None):
        return read_set(args.model)
    if not f.is_finite:
        raise UsageError("a model needs a finite poset")
    return eclose(HSet((f.carrier, f.relation)))


def _forcing_data(args) -> nm.ForcingData:
    f = read_poset(args.poset)
    if not f.is_finite:
        raise UsageError("generic extensions need a finite poset")
    return nm.ForcingData(_model(args, f), f)


def _fmt(x: HSet, args) -> str:
    return format_set(x, sugar=args.sugar)


# -- commands ----------------------------------------------------------------

_SET_OPS: Dict[str, Callable[[HSet], object]] = {
    "print": lambda x: x,
    "domain": domain,
    "range": range_,
    "union": union,
    "eclose": eclose,
    "memrel": memrel,
    "trancl": trancl,
    "powerset": powerset,
    "rank": rank,
    "transset": is_transset,
    "json": to_json,
}


def cmd_set_eval(args, out):
    x = read_set(args.literal)
    r = _SET_OPS[args.op](x)
    if isinstance(r, HSet):
        return {"value": to_json(r)} if args.json else _fmt(r, args)
    if isinstance(r, bool):
        return {"value": r} if args.json else str(r).lower()
    if isinstance(r, list):
        return r if args.json else json.dumps(r, separators=(",", ":"))
    return {"value": r} if args.json else str(r)


def _split_vars(s: Optional[str]) -> List[str]:
    return [v.strip() for v in s.split(",") if v.strip()] if s else []


def cmd_formula_check(args, out):
    u = read_set(args.universe)
    env = read_sets(args.env) if args.env else []
    # free variables default to alphabetical order
    free = (_split_vars(args.vars) if args.vars is not None
            else sorted(free_names(args.formula)))
    phi = parse_formula(args.formula, free)
    if args.relativize_to is not None:
        value = sat(u, relativize(phi), env, cls=read_set(args.relativize_to))
    else:
        value = sat(u, phi, env)
    return {"value": value} if args.json else str(value).lower()


def cmd_poset_validate(args, out):
    f = read_poset(args.file)
    violations = validate_forcing_notion(f, args.bound)
    if args.json:
        return {"valid": not violations,
                "violations": [{"axiom": v.axiom, "witness": [to_json(w) for w in v.witness]}
                               for v in violations]}
    lines = [f"{f.name}: " + ("valid forcing notion" if not violations else "INVALID")]
    lines += [f"  {v}" for v in violations]
    return "\n".join(lines), (1 if violations else 0)


def cmd_poset_dense(args, out):
    f = read_poset(args.file)
    d = read_set(args.d)
    p = dense_witness(f, d, None if f.is_finite else args.bound)
    if args.json:
        return {"dense": p is None, "witness": None if p is None else to_json(p)}
    if p is None:
        return "dense: true"
    return f"dense: false (nothing below {_fmt(p, args)})"


def cmd_dc_run(args, out):
    a = read_set(args.carrier)
    r = read_set(args.relation)
    start = read_set(args.start)
    stream = pointed_dc(a, r, start)
    values = stream.prefix(args.steps)
    if args.json:
        return {"stream": [to_json(v) for v in values]}
    return "\n".join(f"f({n}) = {_fmt(v, args)}" for n, v in enumerate(values))


def cmd_rsl_run(args, out):
    f = read_poset(args.poset)
    fam = read_family(args.family, f)
    start = read_set(args.start)
    prefix = rasiowa_sikorski(f, fam, start, args.steps)
    if args.json:
        return prefix.to_json()
    lines = ["conditions:"]
    lines += [f"  p{n} = {_fmt(c, args)}" for n, c in enumerate(prefix.conditions)]
    if isinstance(prefix.filter_prefix, HSet):
        lines.append(f"filter prefix: {_fmt(prefix.filter_prefix, args)}")
    else:
        lines.append(f"filter prefix: upward closure of p0..p{prefix.steps}")
    lines.append("certificates:")
    lines += [f"  D_{n} met by {_fmt(c, args)}" for n, c in enumerate(prefix.certificates)]
    return "\n".join(lines)


def cmd_genext_filter(args, out):
    f = read_poset(args.poset)
    m = _model(args, f)
    prefix, report = generic_filter_existence(m, f, read_set(args.start), args.steps)
    if args.json:
        doc = prefix.to_json()
        doc["dense_in_m"] = [to_json(d) for d in report.dense_in_m]
        doc["m_generic"] = report.ok
        return doc
    lines = [f"p{n} = {_fmt(c, args)}" for n, c in enumerate(prefix.conditions)]
    lines.append(f"filter prefix: {_fmt(prefix.filter_prefix, args)}")
    for d, w in report.witnesses.items():
        hit = "missed" if w is None else f"met by {_fmt(w, args)}"
        lines.append(f"dense {_fmt(d, args)}: {hit}")
    lines.append(f"generic_filter_existence: {'PASS' if report.ok else 'FAIL'}")
    return "\n".join(lines), (0 if report.ok else 1)


def cmd_genext_val(args, out):
    fd = _forcing_data(args)
    v = nm.val(fd, read_set(args.g), read_set(args.name))
    return {"value": to_json(v)} if args.json else _fmt(v, args)


def cmd_genext_build(args, out):
    fd = _forcing_data(args)
    ext = nm.gen_ext(fd, read_set(args.g))
    if args.json:
        return {"gen_ext": to_json(ext.value),
                "names": [[to_json(t), to_json(v)] for t, v in ext.names]}
    lines = [f"M[G] = {_fmt(ext.value, args)}"]
    lines += [f"  val({_fmt(t, args)}) = {_fmt(v, args)}" for t, v in ext.names]
    return "\n".join(lines)


def cmd_genext_check(args, out):
    f = read_poset(args.poset)
    m = _model(args, f)
    violations = nm.ForcingData.violations(m, f)
    if violations:
        if args.json:
            return {"forcing_data": False, "violations": [str(v) for v in violations]}, 1
        return "\n".join(["forcing_data: FAIL"] + [f"  {v}" for v in violations]), 1
    fd = nm.ForcingData(m, f)
    rep = nm.check_extra_assms(fd)
    if args.json:
        return {"forcing_data": True,
                "check_in_M": rep.check_in_m_all,
                "check_failures": [to_json(x) for x in rep.check_failures],
                "sats_upair_ax": rep.sats_upair_ax,
                "repl_check_pair": rep.repl_check_pair_closed,
                "G_dot_in_M": rep.g_dot_in_m}
    return "\n".join(["forcing_data: PASS"] + rep.lines())


def cmd_genext_pair(args, out):
    fd = _forcing_data(args)
    g = read_set(args.g) if args.g else HSet([fd.one])
    pw = nm.pairing_witness(fd, g, read_set(args.tau), read_set(args.rho))
    if args.json:
        return {"sigma": to_json(pw.sigma), "value": to_json(pw.value),
                "sigma_in_M": pw.sigma_in_m}
    return "\n".join([f"sigma = {_fmt(pw.sigma, args)}",
                      f"val(G, sigma) = {_fmt(pw.value, args)}",
                      "valsigma: PASS",
                      f"sigma_in_M: {'PASS' if pw.sigma_in_m else 'FAIL'}"])


# -- scenarios ---------------------------------------------------------------

_DISCREPANCY = ("forall w. w in z <-> (w = x | w = y)", "x,y,z")

SCENARIOS: Dict[str, dict] = {
    "discrepancy": {
        "description": "pairing formula at 0, 1, {0,1,2}: false in M, true in N",
        "commands": [
            ["formula", "check", "--universe", "{0,1,2,{0,1},{0,1,2}}",
             "--env", "0,1,{0,1,2}", "--vars", _DISCREPANCY[1], _DISCREPANCY[0]],
            ["formula", "check", "--universe", "{0,1,{0,1,2}}",
             "--env", "0,1,{0,1,2}", "--vars", _DISCREPANCY[1], _DISCREPANCY[0]],
        ],
    },
    "cohen": {
        "description": "Rasiowa-Sikorski sequence for the Cohen poset",
        "commands": [["rsl", "run", "--poset", "builtin:cohen", "--family",
                      "builtin:cohen-dense", "--start", "0", "--steps", "16"]],
    },
    "chain-extension": {
        "description": "generic filter and extension over the closure of chain-2",
        "commands": [
            ["genext", "filter", "--poset", "builtin:chain-2", "--start", "1"],
            ["genext", "build", "--poset", "builtin:chain-2", "--g", "{0,1}"],
            ["genext", "check", "--poset", "builtin:chain-2"],
            ["genext", "pair", "--poset", "builtin:chain-2", "--tau", "0", "--rho", "1"],
        ],
    },
    "properties": {
        "description": "randomized lemma checks on small forcing data",
        "commands": [],
        "properties": 25,
    },
}


def _property_suite(rng: random.Random, rounds: int) -> List[str]:
    tally = {"valcheck": True, "val_G_dot": True, "trans_Gen_Ext'": True,
             "GenExtI/GenExtD": True, "valsigma": True}
    for _ in range(rounds):
        fd = random_forcing_data(rng, 4, 40)
        if fd is None:
            continue
        g = random_subset(rng, fd.P.elems, [fd.one])
        for y in fd.m.elems:
            tally["valcheck"] &= nm.val(fd, g, nm.check(fd, y)) == y
        tally["val_G_dot"] &= nm.val_g_dot(fd, g) == g
        tally["trans_Gen_Ext'"] &= nm.trans_gen_ext_check(fd, g).ok
        ext = nm.gen_ext(fd, g)
        tally["GenExtI/GenExtD"] &= all(
            ext.name_of(x) is not None for x in ext.value.elems)
        tau = rng.choice(fd.m.elems)
        rho = random_name(rng, fd.P.elems, 3)
        sigma = HSet((kpair(tau, fd.one), kpair(rho, fd.one)))
        tally["valsigma"] &= nm.val(fd, g, sigma) == HSet(
            (nm.val(fd, g, tau), nm.val(fd, g, rho)))
    return [f"{k}: {'PASS' if v else 'FAIL'}" for k, v in tally.items()]


def load_scenario(arg: str) -> dict:
    if arg in SCENARIOS:
        return dict(SCENARIOS[arg], name=arg)
    try:
        doc = json.loads(_text_or_file(arg))
    except json.JSONDecodeError as err:
        raise UsageError(f"scenario {arg!r} is neither builtin nor JSON: {err}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("commands", []), list):
        raise UsageError("scenario file must be an object with a 'commands' list")
    doc.setdefault("name", os.path.basename(arg))
    return doc


def cmd_scenario(args, out):
    sc = load_scenario(args.name)
    chunks = [f"# scenario {sc['name']}"]
    status = 0
    for argv in sc.get("commands", []):
        chunks.append("$ " + " ".join(argv))
        buf: List[str] = []
        code = run(list(argv) + (["--sugar"] if args.sugar else []), buf.append)
        chunks.extend(buf)
        status = max(status, code)
    if sc.get("properties"):
        rng = random.Random(args.seed)
        lines = _property_suite(rng, int(sc["properties"]))
        chunks.extend(lines)
        if any(line.endswith("FAIL") for line in lines):
            status = max(status, 1)
    text = "\n".join(chunks)
    if sc.get("output"):
        with open(sc["output"], "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text, status


def cmd_scenario_list(args, out):
    return "\n".join(f"{k}: {v['description']}" for k, v in SCENARIOS.items())


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # leaf parsers must not reset flags given before the subcommand
    flags = _Parser(add_help=False)
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    flags.add_argument("--json", action="store_true", default=dflt(False),
                       help="emit JSON")
    flags.add_argument("--sugar", action="store_true", default=dflt(False),
                       help="print numerals and pairs in short form")
    flags.add_argument("--budget", type=int, default=dflt(None),
                       help="maximum number of sets constructed")
    flags.add_argument("--seed", type=int, default=dflt(0),
                       help="seed for randomized property suites")
    return flags


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = _Parser(prog="hfforcing", parents=[_global_flags(suppress=False)],
                description="Hereditarily finite sets and forcing at desk scale.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def leaf(group, name, fn, help_):
        q = group.add_parser(name, parents=[common], help=help_)
        q.set_defaults(func=fn)
        return q

    s = sub.add_parser("set", help="set operations").add_subparsers(
        dest="action", parser_class=_Parser, required=True)
    q = leaf(s, "eval", cmd_set_eval, "apply an operation to a set literal")
    q.add_argument("literal")
    q.add_argument("--op", choices=sorted(_SET_OPS), default="print")

    s = sub.add_parser("formula", help="first-order formulas").add_subparsers(
        dest="action", parser_class=_Parser, required=True)
    q = leaf(s, "check", cmd_formula_check, "evaluate a formula in a finite universe")
    q.add_argument("formula")
    q.add_argument("--universe", required=True)
    q.add_argument("--env", default=None, help="comma-separated set literals")
    q.add_argument("--vars", default=None, help="comma-separated free variable names")
    q.add_argument("--relativize-to", default=None, metavar="SET",
                   help="relativize quantifiers to SET before evaluating")

    s = sub.add_parser("poset", help="forcing notions").add_subparsers(
        dest="action", parser_class=_Parser, required=True)
    q = leaf(s, "validate", cmd_poset_validate, "check the preorder axioms")
    q.add_argument("file")
    q.add_argument("--bound", type=int, default=50)
    q = leaf(s, "dense", cmd_poset_dense, "test density of a subset")
    q.add_argument("file")
    q.add_argument("--d", required=True)
    q.add_argument("--bound", type=int, default=50)

    s = sub.add_parser("dc", help="dependent choice").add_subparsers(
        dest="action", parser_class=_Parser, required=True)
    q = leaf(s, "run", cmd_dc_run, "print f(0..N) of a pointed DC stream")
    q.add_argument("--carrier", required=True)
    q.add_argument("--relation", required=True)
    q.add_argument("--start", required=True)
    q.add_argument("--steps", type=int, required=True)

    s = sub.add_parser("rsl", help="Rasiowa-Sikorski").add_subparsers(
        dest="action", parser_class=_Parser, required=True)
    q = leaf(s, "run", cmd_rsl_run, "build a descending generic sequence")
    q.add_argument("--poset", required=True)
    q.add_argument("--family", required=True)
    q.add_argument("--start", required=True)
    q.add_argument("--steps", type=int, required=True)

    s = sub.add_parser("genext", help="names and generic extensions").add_subparsers(
        dest="action", parser_class=_Parser, required=True)
    q = leaf(s, "filter", cmd_genext_filter, "M-generic filter over a finite model")
    q.add_argument("--start", required=True)
    q.add_argument("--steps", type=int, default=None)
    q = leaf(s, "val", cmd_genext_val, "value of a name")
    q.add_argument("--g", required=True)
    q.add_argument("--name", required=True)
    q = leaf(s, "build", cmd_genext_build, "the extension M[G] with its names")
    q.add_argument("--g", required=True)
    q = leaf(s, "check", cmd_genext_check, "forcing data and extra assumptions")
    q = leaf(s, "pair", cmd_genext_pair, "pairing witness for two names")
    q.add_argument("--tau", required=True)
    q.add_argument("--rho", required=True)
    q.add_argument("--g", default=None, help="defaults to {one}")
    for q in s.choices.values():
        q.add_argument("--poset", required=True)
        q.add_argument("--model", default=None,
                       help="defaults to the closure of {P, leq}")

    s = sub.add_parser("scenario", parents=[common], help="run a scenario")
    s.add_argument("name", nargs="?", default=None,
                   help="builtin scenario name or JSON file; omit to list")
    s.set_defaults(func=cmd_scenario)
    return p


def _emit(result, args, out) -> int:
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if args.json and not isinstance(result, str):
        out(json.dumps(result, sort_keys=True, separators=(",", ":")))
    else:
        out(result)
    return code


def run(argv: Sequence[str], out: Callable[[str], None] = print,
        err: Callable[[str], None] = None) -> int:
    """Execute one command line; return its exit status."""
    err = err or (lambda s: print(s, file=sys.stderr))
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as e:
        err(f"usage error: {e}")
        return 2
    if args.command == "scenario" and args.name is None:
        args.func = cmd_scenario_list
    try:
        if args.budget is not None:
            with node_budget(args.budget):
                return _emit(args.func(args, out), args, out)
        return _emit(args.func(args, out), args, out)
    except UsageError as e:
        err(f"usage error: {e}")
        return 2
    except HFError as e:
        if args.json:
            out(json.dumps({"error": type(e).__name__, "message": str(e)}))
        else:
            err(f"error ({type(e).__name__}): {e}")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
