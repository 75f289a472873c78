"""``operadkit`` command line.

Every subcommand prints one report.  Exit codes: 0 pass, 1 fail,
2 malformed input, 3 partial (nothing failed but something within the
horizon was left unchecked).
"""

import argparse
import json
import sys
import time
from pathlib import Path

from . import fixtures
from .bar import (
    augmentation_split_check,
    bar_levels,
    bar_map,
    pi0_realization,
    self_module,
    tensor_iso_check,
)
from .completion import (
    group_completion,
    localize_telescope,
    ring_completion,
    universal_property_check,
)
from .config import DEFAULT_SAMPLES, DEFAULT_SEED, enumeration_budget
from .cubes import (
    Cubes,
    SignedPerm,
    center_eval,
    in_configuration_space,
    lambda_geom,
    negative_facts,
    random_cube_instances,
    suspend,
)
from .errors import IllDefinedProduct, OperadKitError, SchemaError
from .monad.interchange import interchange, restriction_check
from .monad.laws import check_monad_laws, flavor_iso
from .monad.terms import Carrier, FreeMonad, flavor_name, format_term, parse_term
from .operad import (
    UnderS0FinSet,
    check_operad_axioms,
    named_morphism,
    parse_builtin,
    replay_operad_witness,
)
from .pair import (
    basepoint_redundancy_check,
    check_candidate,
    check_pair_action,
    check_ring_space,
    distributivity_check,
    nn_pair,
    rig_candidate,
)
from .report import AxiomReport, jsonable
from .schema import (
    SCHEMA_VERSION,
    _hashable,
    detect_kind,
    dumps,
    element_index,
    load_json,
    rig_as_candidate,
    validate,
    validate_document,
    validate_schema,
)

EXIT = {"pass": 0, "fail": 1, "partial": 3}


class Outcome:
    def __init__(self, sections=(), result=None, warnings=()):
        self.sections = list(sections)
        self.result = result if result is not None else {}
        self.warnings = list(warnings)


# -- input helpers ------------------------------------------------------------

def _operad(ref, max_arity, warnings, where="--operad"):
    """A built-in name or an operad JSON file."""
    if Path(ref).suffix == ".json" or Path(ref).is_file():
        _, O, w = validate_schema(ref, "operad")
        warnings.extend(w)
        return O
    try:
        return parse_builtin(ref, max_arity)
    except (ValueError, IndexError) as exc:
        raise SchemaError(str(exc), where) from None


def _carrier(args, flavor):
    els = tuple(x for x in args.set.split(",") if x)
    if not els:
        raise SchemaError("--set needs at least one element", "--set")
    if len(set(els)) != len(els):
        raise SchemaError("--set has duplicate elements", "--set")
    if flavor == "plus_unbased":
        return Carrier(els)
    zero = args.zero if args.zero is not None else els[0]
    if zero not in els:
        raise SchemaError(f"{zero!r} is not in the set", "--zero")
    if flavor == "reduced_under_s0":
        one = args.one if args.one is not None else next((x for x in els if x != zero), None)
        if one is None or one not in els or one == zero:
            raise SchemaError("need a point 1 distinct from 0", "--one")
        return Carrier(els, zero, one)
    return Carrier(els, zero)


def _flavor(name):
    try:
        return flavor_name(name)
    except ValueError as exc:
        raise SchemaError(str(exc), "--flavor") from None


def _candidate(ref, warnings):
    """(pair, candidate) from a candidate file, a rig file or ``builtin:<rig>``."""
    if ref.startswith("builtin:"):
        R = _rig(ref)
        X = UnderS0FinSet(R.elements, R.zero, R.one)
        return nn_pair(3), rig_candidate(X, R.add, R.mul, R.name)
    doc = load_json(ref)
    if detect_kind(doc) == "rig":
        # structure only: whether the tables form a rig is what gets checked
        validate(doc, "rig")
        return rig_as_candidate(doc)
    kind, obj, w = validate_document(doc)
    warnings.extend(w)
    if kind == "candidate":
        return obj
    raise SchemaError(f"expected a ring-space candidate or a rig, got a {kind} document")


def _rig(ref):
    if ref.startswith("builtin:"):
        try:
            return fixtures.find_rig(ref[len("builtin:"):])
        except KeyError as exc:
            raise SchemaError(str(exc.args[0]), "source") from None
    _, R, _ = validate_schema(ref, "rig")
    return R


def _algebra(name, flavor):
    try:
        M = fixtures.find_monoid(name)
        X, xi = fixtures.algebra_for(M, flavor)
    except (KeyError, ValueError) as exc:
        raise SchemaError(str(exc.args[0]), "--algebra") from None
    return M, X, xi


def _cube(path):
    _, c, _ = validate_schema(path, "cube")
    return c


def _monoid_json(M):
    E = M.elements
    return {"elements": list(E), "zero": M.zero, "add": [[M.add[(x, y)] for y in E] for x in E]}


# -- subcommands ----------------------------------------------------------------

def cmd_check_operad(args):
    warnings = []
    O = _operad(args.source, args.max_arity, warnings, "source")
    report = check_operad_axioms(O, args.budget, args.samples, args.seed)
    sizes = [O.size(j) for j in range(O.max_arity + 1)]
    return Outcome([report], {"operad": O.name, "max_arity": O.max_arity, "sizes": sizes},
                   warnings)


def cmd_check_pair(args):
    warnings = []
    if args.source in ("nn", "builtin:nn"):
        pa = nn_pair(args.max_arity)
    else:
        _, pa, warnings = validate_schema(args.source, "pair")
    sections = [check_operad_axioms(pa.C, args.budget, args.samples, args.seed),
                check_operad_axioms(pa.G, args.budget, args.samples, args.seed),
                check_pair_action(pa, args.budget, args.samples, args.seed)]
    return Outcome(sections, {"pair": pa.name, "additive": pa.C.name,
                              "multiplicative": pa.G.name}, warnings)


def cmd_check_ring_space(args):
    warnings = []
    pa, cand = _candidate(args.source, warnings)
    sections = [check_candidate(pa, cand, args.budget),
                check_ring_space(pa, cand, args.budget, args.samples, args.seed),
                basepoint_redundancy_check(pa, cand)]
    return Outcome(sections, {"candidate": cand.name, "pair": pa.name,
                              "carrier": list(cand.X.elements)}, warnings)


def cmd_free(args):
    warnings = []
    flavor = _flavor(args.flavor)
    O = _operad(args.operad, args.max_arity, warnings)
    X = _carrier(args, flavor)
    M = FreeMonad(flavor, O, args.max_arity)
    result = {"flavor": flavor, "operad": O.name, "carrier": list(X.elements)}
    if args.term:
        ops = element_index(O, args.budget)
        try:
            t = parse_term(args.term, ops.__getitem__)
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"cannot parse term: {exc}", "--term") from None
        result["term"] = args.term
        result["normal_form"] = format_term(M.normalize(t, X))
        return Outcome([], result, warnings)
    chain = M.enumerate(X, args.depth, args.budget)
    terms = chain[args.depth].elements
    result.update({"depth": args.depth, "count": len(terms),
                   "terms": [format_term(t) for t in terms]})
    return Outcome([], result, warnings)


def cmd_monad_laws(args):
    warnings = []
    flavor = _flavor(args.flavor)
    O = _operad(args.operad, args.max_arity, warnings)
    X = _carrier(args, flavor)
    report = check_monad_laws(flavor, O, X, args.max_arity, args.budget)
    return Outcome([report], {"flavor": flavor, "operad": O.name}, warnings)


def cmd_flavor_iso(args):
    warnings = []
    O = _operad(args.operad, args.max_arity, warnings)
    flavor = "plus_unbased" if args.which == "u_plus" else "plus_smash"
    X = _carrier(args, flavor)
    bijection, report = flavor_iso(args.which, O, X, args.max_arity, args.budget)
    return Outcome([report], {"which": args.which, "operad": O.name, "terms": len(bijection)},
                   warnings)


def cmd_interchange(args):
    warnings = []
    pa, cand = _candidate(args.source, warnings)
    X = Carrier(tuple(cand.X.elements), cand.X.zero)
    table, report = interchange(pa, X, xi=cand.xi, budget=args.budget)
    sections = [restriction_check(pa, [cand], budget=args.budget), report]
    return Outcome(sections, {"candidate": cand.name, "pair": pa.name,
                              "interchange_terms": len(table)}, warnings)


def cmd_bar(args):
    if args.report:
        args.format = args.report
    warnings = []
    flavor = _flavor(args.flavor)
    M, X, xi = _algebra(args.algebra, flavor)
    if args.psi == "self":
        O = _operad(args.operad, args.max_arity, warnings)
        C = FreeMonad(flavor, O, args.max_arity)
        report = augmentation_split_check(C, X, xi, args.levels, args.budget)
        st, _ = bar_levels(self_module(flavor, O, args.max_arity), X, xi, args.levels,
                           args.budget)
        result = {"psi": "self", "operad": O.name, "flavor": flavor, "algebra": M.name,
                  "level_sizes": [len(level) for level in st.levels],
                  "pi0": len(pi0_realization(st))}
        return Outcome([report], result, warnings)
    try:
        f = named_morphism(args.psi, args.max_arity)
    except (ValueError, IndexError) as exc:
        raise SchemaError(str(exc), "--psi") from None
    maps, report = bar_map(f, flavor, X, xi, args.levels, args.max_arity, args.budget)
    result = {"psi": f.name, "flavor": flavor, "algebra": M.name,
              "level_sizes": [len(m) for m in maps]}
    return Outcome([report], result, warnings)


def cmd_tensor(args):
    warnings = []
    flavor = _flavor(args.flavor)
    O = _operad(args.operad, args.max_arity, warnings)
    C = FreeMonad(flavor, O, args.max_arity)
    names = args.algebra or [M.name for M in fixtures.commutative_monoids()]
    algebras = []
    for name in names:
        M, X, xi = _algebra(name, flavor)
        algebras.append((M.name, X, xi))
    report = tensor_iso_check(C, algebras, args.budget)
    return Outcome([report], {"operad": O.name, "flavor": flavor, "algebras": names}, warnings)


def cmd_complete(args):
    R = _rig(args.source)
    if args.mode == "group":
        K, eta = group_completion(R.additive)
        report = universal_property_check("group", R.additive, K, eta)
        result = {"source": R.name, "completion": _monoid_json(K), "order": len(K),
                  "map": [[x, eta[x]] for x in R.elements]}
        return Outcome([report], result)
    if args.mode == "ring":
        try:
            K, eta = ring_completion(R)
        except IllDefinedProduct as exc:
            report = AxiomReport(subject=f"ring completion of {R.name}")
            report.fail("well_defined", (str(exc),))
            return Outcome([report], {"source": R.name})
        report = universal_property_check("localization", R, K, eta)
        result = {"source": R.name, "completion": K.to_json(), "order": len(K),
                  "map": [[x, eta[x]] for x in R.elements]}
        return Outcome([report], result)
    try:
        M = [int(m) for m in args.invert.split(",") if m]
        tel = localize_telescope(R, M)
    except ValueError as exc:
        raise SchemaError(str(exc), "--invert") from None
    report = universal_property_check("localization", R, tel.ring, tel.to_colimit, M)
    result = {"source": R.name, "inverted": M, "localization": tel.ring.to_json(),
              "order": len(tel.ring), "stage": tel.stage, "period": tel.period,
              "map": [[x, tel.to_colimit[x]] for x in R.elements]}
    return Outcome([report], result)


def cmd_cubes(args):
    action = args.action
    if action == "negatives":
        report = negative_facts()
        return Outcome([report], {"notes": list(report.notes)})
    if action == "random":
        report = random_cube_instances(args.count, args.seed)
        return Outcome([report], {"count": args.count, "seed": args.seed})
    cubes = [_cube(p) for p in args.inputs]
    if not cubes:
        raise SchemaError(f"cubes {action} needs at least one cube file", "inputs")
    if action == "compose":
        g, fs = cubes[0], cubes[1:]
        try:
            out = Cubes(g.dimension).gamma(g, fs)
        except OperadKitError as exc:
            raise SchemaError(str(exc), "inputs") from None
        return Outcome([], {"result": out.to_json()})
    if action == "suspend":
        return Outcome([], {"result": [suspend(c).to_json() for c in cubes]})
    if action == "centers":
        report = AxiomReport(subject="center evaluation")
        result = []
        for path, c in zip(args.inputs, cubes):
            points = center_eval(c)
            report.expect(in_configuration_space(points, c.dimension), "configuration", (path,))
            result.append([[str(x) for x in p] for p in points])
        return Outcome([report], {"centers": result})
    # lambda
    N = sum(c.dimension for c in cubes)
    perm = tuple(int(x) for x in args.perm.split(",")) if args.perm else tuple(range(1, N + 1))
    signs = tuple(int(x) for x in args.signs.split(",")) if args.signs else (1,) * len(perm)
    try:
        g = SignedPerm(perm, signs)
        out = lambda_geom(g, cubes)
    except (ValueError, OperadKitError) as exc:
        raise SchemaError(str(exc), "--perm") from None
    return Outcome([], {"result": out.to_json()})


def cmd_replay(args):
    original = load_json(args.report)
    if not isinstance(original, dict) or "command" not in original or "arguments" not in original:
        raise SchemaError("not an operadkit report", "$")
    if original["command"] == "replay":
        raise SchemaError("cannot replay a replay", "$.command")
    ns = argparse.Namespace(**original["arguments"])
    ns.command = original["command"]
    ns.func = _HANDLERS[ns.command]
    ns.format = "json"
    ns.timing = False
    witnesses = [(w["axiom"], _hashable(w["instance"])) for w in original.get("witnesses", [])]
    report = AxiomReport(subject=f"replay of {original['command']}")
    direct = _direct_replayer(ns)
    if direct is not None:
        for axiom, inst in witnesses:
            outcome = direct(axiom, inst)
            if outcome is None:
                continue
            report.expect(not outcome, "reproduces", (axiom, inst))
    fresh = ns.func(ns)
    seen = set()
    for sec in fresh.sections:
        for axiom, inst in sec.witnesses:
            seen.add(json.dumps([axiom, jsonable(inst)], sort_keys=True))
    for axiom, inst in witnesses:
        key = json.dumps([axiom, jsonable(inst)], sort_keys=True)
        report.expect(key in seen, "reported_again", (axiom, inst))
    return Outcome([report], {"command": original["command"], "witnesses": len(witnesses)})


def _direct_replayer(ns):
    """A function (axiom, instance) -> law holds?, or None if it cannot tell."""
    if ns.command == "check-operad":
        O = _operad(ns.source, ns.max_arity, [])

        def replay(axiom, inst):
            try:
                return replay_operad_witness(O, axiom, inst)
            except (KeyError, TypeError, OperadKitError):
                return None
        return replay
    if ns.command == "check-ring-space":
        pa, cand = _candidate(ns.source, [])
        check = distributivity_check(pa, cand)

        def replay(axiom, inst):
            if axiom in ("distributivity", "distributivity_at_zero"):
                return check(*inst)
            if axiom == "strict_zero":
                g, ys = inst
                return cand.xi(g, tuple(ys)) == cand.X.zero
            return None
        return replay
    return None


_HANDLERS = {
    "check-operad": cmd_check_operad,
    "check-pair": cmd_check_pair,
    "check-ring-space": cmd_check_ring_space,
    "free": cmd_free,
    "monad-laws": cmd_monad_laws,
    "flavor-iso": cmd_flavor_iso,
    "interchange": cmd_interchange,
    "bar": cmd_bar,
    "tensor": cmd_tensor,
    "complete": cmd_complete,
    "cubes": cmd_cubes,
    "replay": cmd_replay,
}


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (default: $OPERADKIT_BUDGET or 10^6)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                        help="sample size for shapes over budget")
    common.add_argument("--max-arity", type=int, default=None)
    common.add_argument("--timing", action="store_true", help="include wall-clock time")

    carrier = argparse.ArgumentParser(add_help=False)
    carrier.add_argument("--operad", default="comm")
    carrier.add_argument("--set", default="a,b", help="comma-separated carrier")
    carrier.add_argument("--zero", default=None, help="basepoint (default: first element)")
    carrier.add_argument("--one", default=None, help="the point 1 for flavor t")

    p = argparse.ArgumentParser(prog="operadkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-operad", parents=[common], help="check the operad axioms")
    s.add_argument("source", help="builtin:<name> or an operad JSON file")

    s = sub.add_parser("check-pair", parents=[common], help="check an operad pair action")
    s.add_argument("source", help="builtin:nn or a pair JSON file")

    s = sub.add_parser("check-ring-space", parents=[common], help="check a ring-space candidate")
    s.add_argument("source", help="candidate or rig JSON file, or builtin:<rig fixture>")

    s = sub.add_parser("free", parents=[common, carrier], help="enumerate or normalize terms")
    s.add_argument("--flavor", default="u+", help="u+ | u | t+ | t")
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--term", default=None, help="normalize one term, e.g. '(op; a, b)'")

    s = sub.add_parser("monad-laws", parents=[common, carrier], help="check the monad laws")
    s.add_argument("--flavor", default="u+")

    s = sub.add_parser("flavor-iso", parents=[common, carrier], help="check a flavor isomorphism")
    s.add_argument("--which", choices=("u_plus", "t_plus"), default="u_plus")

    s = sub.add_parser("interchange", parents=[common], help="interchange and its restriction")
    s.add_argument("source", help="candidate or rig JSON file, or builtin:<rig fixture>")

    s = sub.add_parser("bar", parents=[common], help="bar construction truncation")
    s.add_argument("--operad", default="comm")
    s.add_argument("--flavor", default="u")
    s.add_argument("--algebra", default="Z/2", help="monoid fixture name")
    s.add_argument("--psi", default="self", help="self, or a morphism such as comm:assoc")
    s.add_argument("--levels", type=int, default=2)
    s.add_argument("--report", choices=("json", "text"), default=None)

    s = sub.add_parser("tensor", parents=[common], help="monadic tensor C (x)_C X against X")
    s.add_argument("--operad", default="comm")
    s.add_argument("--flavor", default="u")
    s.add_argument("--algebra", action="append", default=None)

    s = sub.add_parser("complete", parents=[common], help="group/ring completion, localization")
    s.add_argument("source", help="rig JSON file or builtin:<rig fixture>")
    s.add_argument("--mode", choices=("group", "ring", "localize"), default="group")
    s.add_argument("--invert", default="", help="comma-separated integers to invert")

    s = sub.add_parser("cubes", parents=[common], help="little cubes")
    s.add_argument("action", choices=("compose", "suspend", "centers", "lambda", "negatives",
                                      "random"))
    s.add_argument("inputs", nargs="*", help="cube JSON files")
    s.add_argument("--perm", default=None, help="signed permutation: images of the axes")
    s.add_argument("--signs", default=None)
    s.add_argument("--count", type=int, default=1000)

    s = sub.add_parser("replay", parents=[common], help="replay the witnesses of a report")
    s.add_argument("report")

    for name, handler in _HANDLERS.items():
        sub.choices[name].set_defaults(func=handler)
    return p


_DEFAULT_ARITY = {"check-operad": 4, "check-pair": 3, "free": 3, "monad-laws": 3,
                  "flavor-iso": 3, "bar": 3, "tensor": 3}

_NOT_ARGUMENTS = {"func", "command", "format", "timing"}


def envelope(command, arguments, outcome, elapsed=None):
    total = AxiomReport()
    for sec in outcome.sections:
        total.merge(sec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "arguments": arguments,
        "status": total.status,
        "checked": total.checked,
        "unchecked": total.unchecked,
        "failures": total.failures,
        "witnesses": [{"axiom": a, "instance": jsonable(w)} for a, w in total.sorted_witnesses()],
        "sections": [sec.to_json() for sec in outcome.sections],
        "result": jsonable(outcome.result),
        "warnings": list(outcome.warnings),
    }
    if elapsed is not None:
        doc["timing"] = round(elapsed, 3)
    return doc


def _text(doc):
    lines = []
    for w in doc["warnings"]:
        lines.append(f"warning: {w}")
    for sec in doc["sections"]:
        lines.append(f"{sec['subject']}: {sec['status']} (checked={sec['checked']}, "
                     f"unchecked={sec['unchecked']}, failures={sec['failures']})")
        for w in sec["witnesses"][:10]:
            lines.append(f"  {w['axiom']}: {json.dumps(w['instance'])}")
    for key, value in doc["result"].items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    lines.append(f"status: {doc['status']}")
    if "timing" in doc:
        lines.append(f"timing: {doc['timing']}s")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_arity is None:
        args.max_arity = _DEFAULT_ARITY.get(args.command, 3)
    try:
        args.budget = enumeration_budget(args.budget)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    arguments = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_ARGUMENTS}
    start = time.perf_counter()
    try:
        outcome = args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(dumps({"schema_version": SCHEMA_VERSION, "command": args.command,
                     "status": "malformed", "error": {"path": exc.path, "message": exc.message}}))
        return 2
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start if args.timing else None
    for w in outcome.warnings:
        print(f"warning: {w}", file=sys.stderr)
    doc = envelope(args.command, arguments, outcome, elapsed)
    print(dumps(doc) if args.format == "json" else _text(doc))
    return EXIT[doc["status"]]


if __name__ == "__main__":
    sys.exit(main())
