"""Versioned JSON documents: operads, operad pairs, ring-space candidates,
rigs and little-cubes elements.

Structural validation (types, required and unknown keys) is delegated to
``jsonschema``; the semantic checks that need the data itself (arities,
bijective generators, closed tables) are done here.  Every problem is raised
as a :class:`SchemaError` whose ``path`` is a JSON-path location.
"""

import itertools
import json
import math
from pathlib import Path

import jsonschema

from . import perm as P
from .completion import make_rig
from .cubes import CubeElement
from .errors import ArityOverflow, SchemaError, ShapeMismatch
from .operad import (
    MissingEntry,
    SymOperad,
    TabulatedOperad,
    UnderS0FinSet,
    compositions,
    parse_builtin,
)
from .pair import PairAction, RingSpaceCandidate, nn_pair, rig_candidate
from .report import jsonable

SCHEMA_VERSION = 1

_ID = {"type": "string", "minLength": 1}
_SCALAR = {"type": ["string", "integer"]}
_VALUE = {"type": ["string", "integer", "array"]}
_VERSION = {"const": SCHEMA_VERSION}


def _strict(properties, required):
    return {
        "type": "object",
        "properties": properties,
        "required": list(required),
        "additionalProperties": False,
    }


_OPERAD_BODY = {
    "schema_version": _VERSION,
    "name": {"type": "string"},
    "max_arity": {"type": "integer", "minimum": 0, "maximum": 8},
    "levels": {
        "type": "array",
        "items": _strict(
            {
                "arity": {"type": "integer", "minimum": 0},
                "elements": {"type": "array", "items": _ID, "minItems": 1},
                "sigma_generators": {
                    "type": "object",
                    "patternProperties": {
                        "^[1-9][0-9]*$": {"type": "object", "additionalProperties": _ID}
                    },
                    "additionalProperties": False,
                },
            },
            ("arity", "elements"),
        ),
    },
    "identity": _ID,
    "gamma": {
        "type": "array",
        "items": _strict(
            {"outer": _ID, "inner": {"type": "array", "items": _ID}, "result": _ID},
            ("outer", "inner", "result"),
        ),
    },
}

OPERAD_SCHEMA = _strict(_OPERAD_BODY, ("name", "max_arity", "levels", "identity", "gamma"))
TOP_OPERAD_SCHEMA = _strict(_OPERAD_BODY, ("schema_version", "name", "max_arity", "levels",
                                           "identity", "gamma"))

_OPERAD_REF = {"oneOf": [{"type": "string"}, OPERAD_SCHEMA]}

PAIR_SCHEMA = _strict(
    {
        "schema_version": _VERSION,
        "name": {"type": "string"},
        "max_arity": {"type": "integer", "minimum": 0, "maximum": 8},
        "additive": _OPERAD_REF,
        "multiplicative": _OPERAD_REF,
        "lambda": {
            "type": "array",
            "items": _strict(
                {"g": _ID, "inner_cs": {"type": "array", "items": _ID}, "result": _ID},
                ("g", "inner_cs", "result"),
            ),
        },
    },
    ("schema_version", "additive", "multiplicative", "lambda"),
)

_ACTION_TABLE = {
    "type": "array",
    "items": _strict(
        {"op": _ID, "args": {"type": "array", "items": _SCALAR}, "result": _SCALAR},
        ("op", "args", "result"),
    ),
}

CANDIDATE_SCHEMA = _strict(
    {
        "schema_version": _VERSION,
        "name": {"type": "string"},
        "pair": {"oneOf": [{"type": "string"}, PAIR_SCHEMA]},
        "carrier": _strict(
            {"elements": {"type": "array", "items": _SCALAR, "minItems": 2},
             "zero": _SCALAR, "one": _SCALAR},
            ("elements", "zero", "one"),
        ),
        "theta": _ACTION_TABLE,
        "xi": _ACTION_TABLE,
    },
    ("schema_version", "carrier", "theta", "xi"),
)

_TABLE = {"type": "array", "items": {"type": "array", "items": _VALUE}}

RIG_SCHEMA = _strict(
    {
        "schema_version": _VERSION,
        "name": {"type": "string"},
        "elements": {"type": "array", "items": _VALUE, "minItems": 1},
        "zero": _VALUE,
        "one": _VALUE,
        "add": _TABLE,
        "mul": _TABLE,
    },
    ("schema_version", "elements", "zero", "one", "add", "mul"),
)

_AFFINE = _strict({"a": {"type": ["string", "integer"]}, "b": {"type": ["string", "integer"]}},
                  ("a", "b"))

CUBE_SCHEMA = _strict(
    {
        "schema_version": _VERSION,
        "dimension": {"type": "integer", "minimum": 0},
        "cubes": {"type": "array", "items": {"type": "array", "items": _AFFINE}},
    },
    ("schema_version", "dimension", "cubes"),
)

KINDS = {
    "operad": TOP_OPERAD_SCHEMA,
    "pair": PAIR_SCHEMA,
    "candidate": CANDIDATE_SCHEMA,
    "rig": RIG_SCHEMA,
    "cube": CUBE_SCHEMA,
}


# -- generic helpers ----------------------------------------------------------

def label(x):
    """A string id for an element of a built-in operad."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    return str(x)


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(y) for y in x)
    return x


def _path(parts):
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate(doc, kind):
    """Structural validation against the schema for ``kind``."""
    schema = KINDS[kind]
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc),
                    key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = _deepest(errors[0])
        raise SchemaError(_message(err), _path(err.absolute_path))
    return doc


def _deepest(err):
    # oneOf failures carry the informative error in their context
    while err.context:
        err = max(err.context, key=lambda e: len(e.absolute_path))
    return err


def _message(err):
    if err.validator == "additionalProperties":
        return f"unknown key: {err.message}"
    if err.validator == "const" and err.absolute_path and err.absolute_path[-1] == "schema_version":
        return f"unsupported schema_version {err.instance!r}; expected {SCHEMA_VERSION}"
    return err.message


def load_json(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
                          "$") from None


def detect_kind(doc):
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    if "lambda" in doc:
        return "pair"
    if "carrier" in doc:
        return "candidate"
    if "add" in doc or "mul" in doc:
        return "rig"
    if "cubes" in doc:
        return "cube"
    if "gamma" in doc or "levels" in doc:
        return "operad"
    raise SchemaError("cannot tell which kind of document this is")


def dumps(obj):
    """Canonical serialization used for every report and export."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


# -- operads ------------------------------------------------------------------

def parse_operad(doc, warnings=None, where=()):
    """Build a :class:`TabulatedOperad`; arity 0 is synthesized if missing."""
    if warnings is None:
        warnings = []
    A = doc["max_arity"]
    levels, generators, seen = {}, {}, {}
    for n, lvl in enumerate(doc["levels"]):
        here = where + ("levels", n)
        j = lvl["arity"]
        if j > A:
            raise SchemaError(f"arity {j} exceeds max_arity {A}", _path(here + ("arity",)))
        if j in levels:
            raise SchemaError(f"arity {j} listed twice", _path(here + ("arity",)))
        for m, x in enumerate(lvl["elements"]):
            if x in seen:
                raise SchemaError(f"element {x!r} already appears in arity {seen[x]}",
                                  _path(here + ("elements", m)))
            seen[x] = j
        levels[j] = tuple(lvl["elements"])
        generators[j] = (lvl.get("sigma_generators", {}), here)

    if 0 not in levels:
        point = "*"
        while point in seen:
            point += "'"
        levels[0] = (point,)
        seen[point] = 0
        warnings.append(f"{_path(where)}: no arity 0 level; synthesized singleton {point!r}")
    elif len(levels[0]) != 1:
        raise SchemaError("arity 0 must hold exactly one element (reduced operad)",
                          _path(where + ("levels",)))
    for j in range(A + 1):
        levels.setdefault(j, ())

    identity = doc["identity"]
    if seen.get(identity) != 1:
        raise SchemaError(f"identity {identity!r} is not an element of arity 1",
                          _path(where + ("identity",)))

    action = {}
    for j, (gens, here) in generators.items():
        action.update(_complete_action(j, levels[j], gens, here))

    table = {}
    for n, entry in enumerate(doc["gamma"]):
        here = where + ("gamma", n)
        c, ds, r = entry["outer"], tuple(entry["inner"]), entry["result"]
        for key, x in [("outer", c), ("result", r)] + [(("inner", m), d) for m, d in enumerate(ds)]:
            if x not in seen:
                sub = key if isinstance(key, tuple) else (key,)
                raise SchemaError(f"unknown element {x!r}", _path(here + sub))
        if seen[c] != len(ds):
            raise SchemaError(f"outer {c!r} has arity {seen[c]} but {len(ds)} inner elements",
                              _path(here + ("inner",)))
        total = sum(seen[d] for d in ds)
        if seen[r] != total:
            raise SchemaError(f"result {r!r} has arity {seen[r]}, expected {total}",
                              _path(here + ("result",)))
        if (c, ds) in table and table[(c, ds)] != r:
            raise SchemaError("conflicting gamma entry", _path(here))
        table[(c, ds)] = r

    # entries forced by the unit and the reduced convention
    point = levels[0][0]
    table.setdefault((point, ()), point)
    table.setdefault((identity, (point,)), point)
    for j in range(A + 1):
        for c in levels[j]:
            table.setdefault((identity, (c,)), c)
            table.setdefault((c, (identity,) * j), c)
    return TabulatedOperad(doc["name"], A, levels, identity, action, table)


def _complete_action(j, elements, gens, here):
    """Extend the adjacent-transposition generators to the whole of Sigma_j,
    checking that the result is a genuine right action."""
    where = _path(here + ("sigma_generators",))
    els = set(elements)
    moves = {}
    for key, mapping in gens.items():
        i = int(key)
        if not 1 <= i < j:
            raise SchemaError(f"arity {j} has no generator s_{i}", f"{where}.{key}")
        if set(mapping) != els or set(mapping.values()) != els:
            raise SchemaError(
                f"sigma generator s_{i} at arity {j} is not a bijection of the level",
                f"{where}.{key}")
        moves[i] = mapping
    for i in range(1, j):
        moves.setdefault(i, {c: c for c in elements})

    ident = P.identity(j)
    by_perm = {ident: {c: c for c in elements}}
    frontier = [ident]
    while frontier:
        nxt = []
        for s in frontier:
            for i in range(1, j):
                t = P.compose(s, P.transposition(j, i))
                image = {c: moves[i][by_perm[s][c]] for c in elements}
                if t not in by_perm:
                    by_perm[t] = image
                    nxt.append(t)
                elif by_perm[t] != image:
                    raise SchemaError(
                        f"sigma generators at arity {j} violate the symmetric group "
                        f"relations (s_{i} applied after {list(s)})", where)
        frontier = nxt
    return {(c, s): by_perm[s][c] for s in by_perm for c in elements}


def operad_to_json(O: SymOperad, name=None, budget=None):
    """Export every in-bound table entry of a small operad."""
    A = O.max_arity
    levels = {j: tuple(O.elements(j, budget)) for j in range(A + 1)}
    labels = {}
    for j in levels:
        for c in levels[j]:
            lab = label(c)
            if lab in labels.values():
                raise ValueError(f"label {lab!r} is not unique")
            labels[c] = lab
    out_levels = []
    for j in range(A + 1):
        if not levels[j]:
            continue
        lvl = {"arity": j, "elements": [labels[c] for c in levels[j]]}
        if j >= 2:
            lvl["sigma_generators"] = {
                str(i): {labels[c]: labels[O.act(c, P.transposition(j, i))] for c in levels[j]}
                for i in range(1, j)
            }
        out_levels.append(lvl)
    gamma = []
    for k in range(A + 1):
        for js in compositions(A, k):
            for c in levels[k]:
                for ds in itertools.product(*(levels[j] for j in js)):
                    gamma.append({"outer": labels[c], "inner": [labels[d] for d in ds],
                                  "result": labels[O.gamma(c, ds)]})
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name or O.name,
        "max_arity": A,
        "levels": out_levels,
        "identity": labels[O.identity],
        "gamma": gamma,
    }


def resolve_operad(ref, max_arity, warnings, where=()):
    if isinstance(ref, str):
        try:
            return parse_builtin(ref, max_arity)
        except (ValueError, IndexError) as exc:
            raise SchemaError(str(exc), _path(where)) from None
    return parse_operad(ref, warnings, where)


def element_index(O: SymOperad, budget=None):
    """label -> element over every in-bound level."""
    return {label(c): c for j in range(O.max_arity + 1) for c in O.elements(j, budget)}


# -- pairs and candidates -----------------------------------------------------

def parse_pair(doc, warnings=None, where=()):
    if warnings is None:
        warnings = []
    A = doc.get("max_arity", 3)
    C = resolve_operad(doc["additive"], A, warnings, where + ("additive",))
    G = resolve_operad(doc["multiplicative"], A, warnings, where + ("multiplicative",))
    cidx, gidx = element_index(C), element_index(G)
    table = {}
    for n, entry in enumerate(doc["lambda"]):
        here = where + ("lambda", n)
        g = _lookup(gidx, entry["g"], here + ("g",))
        cs = tuple(_lookup(cidx, c, here + ("inner_cs", m)) for m, c in enumerate(entry["inner_cs"]))
        r = _lookup(cidx, entry["result"], here + ("result",))
        if G.arity(g) != len(cs):
            raise SchemaError(f"{entry['g']!r} has arity {G.arity(g)} but {len(cs)} inner elements",
                              _path(here + ("inner_cs",)))
        expected = math.prod(C.arity(c) for c in cs)
        if C.arity(r) != expected:
            raise SchemaError(f"result has arity {C.arity(r)}, expected {expected}",
                              _path(here + ("result",)))
        table[(g, cs)] = r
    table.setdefault((G.zero, ()), C.identity)

    def lam(g, cs):
        try:
            return table[(g, tuple(cs))]
        except KeyError:
            raise MissingEntry(f"no lambda entry for {g!r}; {cs!r}") from None

    return PairAction(C, G, lam, doc.get("name", "pair"))


def _lookup(index, key, here):
    try:
        return index[key]
    except KeyError:
        raise SchemaError(f"unknown element {key!r}", _path(here)) from None


def parse_candidate(doc, warnings=None):
    """Returns ``(pair, candidate)``; theta and xi must be complete tables."""
    if warnings is None:
        warnings = []
    ref = doc.get("pair", "builtin:nn")
    if isinstance(ref, str):
        if ref not in ("nn", "builtin:nn"):
            raise SchemaError(f"unknown built-in pair {ref!r}", "$.pair")
        pa = nn_pair(3)
    else:
        pa = parse_pair(ref, warnings, ("pair",))
    car = doc["carrier"]
    try:
        X = UnderS0FinSet(tuple(car["elements"]), car["zero"], car["one"])
    except ValueError as exc:
        raise SchemaError(str(exc), "$.carrier") from None
    if len(set(X.elements)) != len(X.elements):
        raise SchemaError("duplicate elements", "$.carrier.elements")
    theta = _action_table(doc["theta"], pa.C, X, "theta")
    xi = _action_table(doc["xi"], pa.G, X, "xi")
    cand = RingSpaceCandidate(X, _table_fn(theta), _table_fn(xi), doc.get("name", "candidate"))
    return pa, cand


def _action_table(entries, O, X, key):
    idx = element_index(O)
    els = set(X.elements)
    table = {}
    for n, e in enumerate(entries):
        here = (key, n)
        c = _lookup(idx, e["op"], here + ("op",))
        args = tuple(e["args"])
        if O.arity(c) != len(args):
            raise SchemaError(f"{e['op']!r} has arity {O.arity(c)} but {len(args)} arguments",
                              _path(here + ("args",)))
        for m, x in enumerate(args + (e["result"],)):
            if x not in els:
                sub = ("args", m) if m < len(args) else ("result",)
                raise SchemaError(f"{x!r} is not in the carrier", _path(here + sub))
        table[(c, args)] = e["result"]
    for j in range(O.max_arity + 1):
        for c in O.elements(j):
            for args in itertools.product(X.elements, repeat=j):
                if (c, args) not in table:
                    raise SchemaError(f"missing entry for op {label(c)!r} on {list(args)!r}",
                                      f"$.{key}")
    return table


def _table_fn(table):
    def fn(c, xs):
        return table[(c, tuple(xs))]
    return fn


def parse_rig(doc):
    E = tuple(_hashable(x) for x in doc["elements"])
    if len(set(E)) != len(E):
        raise SchemaError("duplicate elements", "$.elements")
    tables = {}
    for key in ("add", "mul"):
        rows = doc[key]
        if len(rows) != len(E) or any(len(r) != len(E) for r in rows):
            raise SchemaError(f"table must be {len(E)}x{len(E)}", f"$.{key}")
        t = {}
        for i, x in enumerate(E):
            for j, y in enumerate(E):
                v = _hashable(rows[i][j])
                if v not in E:
                    raise SchemaError(f"{rows[i][j]!r} is not an element", f"$.{key}[{i}][{j}]")
                t[(x, y)] = v
        tables[key] = t
    zero, one = _hashable(doc["zero"]), _hashable(doc["one"])
    for key, x in (("zero", zero), ("one", one)):
        if x not in E:
            raise SchemaError(f"{x!r} is not an element", f"$.{key}")
    try:
        return make_rig(E, zero, one, lambda x, y: tables["add"][(x, y)],
                        lambda x, y: tables["mul"][(x, y)], doc.get("name", "R"))
    except ValueError as exc:
        raise SchemaError(str(exc), "$") from None


def rig_as_candidate(doc):
    """A rig document as a ring-space candidate over (N, N), without requiring
    the rig axioms to hold (that is what the check is for)."""
    E = tuple(_hashable(x) for x in doc["elements"])
    try:
        X = UnderS0FinSet(E, _hashable(doc["zero"]), _hashable(doc["one"]))
    except ValueError as exc:
        raise SchemaError(str(exc), "$") from None
    tables = {}
    for key in ("add", "mul"):
        rows = doc[key]
        if len(rows) != len(E) or any(len(r) != len(E) for r in rows):
            raise SchemaError(f"table must be {len(E)}x{len(E)}", f"$.{key}")
        tables[key] = [[_hashable(v) for v in r] for r in rows]
        for i, r in enumerate(tables[key]):
            for j, v in enumerate(r):
                if v not in E:
                    raise SchemaError(f"{v!r} is not an element", f"$.{key}[{i}][{j}]")
    return nn_pair(3), rig_candidate(X, tables["add"], tables["mul"], doc.get("name", "rig"))


def parse_cube(doc):
    try:
        return CubeElement.from_json(doc)
    except (ValueError, ZeroDivisionError, ShapeMismatch) as exc:
        raise SchemaError(str(exc), "$.cubes") from None


# -- entry point --------------------------------------------------------------

PARSERS = {
    "operad": lambda doc, w: parse_operad(doc, w),
    "pair": lambda doc, w: parse_pair(doc, w),
    "candidate": lambda doc, w: parse_candidate(doc, w),
    "rig": lambda doc, w: parse_rig(doc),
    "cube": lambda doc, w: parse_cube(doc),
}


def validate_schema(path, kind=None):
    """Parse and validate a document.  Returns ``(kind, obj, warnings)``.

    Raises :class:`SchemaError` (with a JSON-path location) on malformed input.
    """
    doc = load_json(path)
    return validate_document(doc, kind)


def validate_document(doc, kind=None):
    kind = kind or detect_kind(doc)
    validate(doc, kind)
    warnings = []
    try:
        obj = PARSERS[kind](doc, warnings)
    except (ShapeMismatch, ArityOverflow) as exc:
        raise SchemaError(str(exc)) from None
    return kind, obj, warnings
