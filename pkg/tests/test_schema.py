import copy
import itertools
import json

import pytest

from operadkit.completion import zmod
from operadkit.cubes import Affine, CubeElement
from operadkit.errors import SchemaError
from operadkit.operad import AssocOperad, check_operad_axioms, parse_builtin
from operadkit.pair import check_candidate, check_pair_action, check_ring_space
from operadkit.schema import (
    detect_kind,
    dumps,
    element_index,
    label,
    operad_to_json,
    rig_as_candidate,
    validate_document,
    validate_schema,
)


def _operad_doc(name="assoc", arity=3):
    return operad_to_json(parse_builtin(name, arity))


def _error(doc, kind=None):
    with pytest.raises(SchemaError) as info:
        validate_document(doc, kind)
    return info.value


@pytest.mark.parametrize("name", ["comm", "assoc", "be:1", "product:assoc,comm"])
def test_operad_round_trip(name):
    O = parse_builtin(name, 3)
    kind, T, warnings = validate_document(json.loads(json.dumps(operad_to_json(O))))
    assert kind == "operad" and warnings == []
    idx = element_index(T)
    for j in range(4):
        assert sorted(label(c) for c in O.elements(j)) == sorted(T.elements(j))
    # every composite and every action agrees, read through the labels
    for c in O.elements(2):
        for ds in itertools.product(O.elements(1), O.elements(1)):
            assert T.gamma(label(c), tuple(label(d) for d in ds)) == label(O.gamma(c, ds))
    for c in O.elements(3):
        for s in [(2, 1, 3), (3, 1, 2)]:
            assert T.act(idx[label(c)], s) == label(O.act(c, s))
    assert check_operad_axioms(T).status == "pass"
    assert operad_to_json(T, name=O.name) == operad_to_json(O)


def test_missing_arity_zero_is_synthesized_with_a_warning():
    doc = _operad_doc()
    doc["levels"] = [lvl for lvl in doc["levels"] if lvl["arity"] != 0]
    doc["gamma"] = [g for g in doc["gamma"]
                    if "()" not in [g["outer"], g["result"], *g["inner"]]]
    _, T, warnings = validate_document(doc)
    assert T.elements(0) == ("*",)
    assert warnings == ["$: no arity 0 level; synthesized singleton '*'"]


def test_non_bijective_generator_names_arity_and_generator():
    doc = _operad_doc()
    lvl = next(lvl for lvl in doc["levels"] if lvl["arity"] == 3)
    gen = lvl["sigma_generators"]["2"]
    first, second = list(gen)[:2]
    gen[first] = gen[second]
    err = _error(doc)
    assert "s_2" in err.message and "arity 3" in err.message
    assert err.path == "$.levels[3].sigma_generators.2"


def test_generators_violating_relations():
    doc = _operad_doc()
    lvl = next(lvl for lvl in doc["levels"] if lvl["arity"] == 3)
    lvl["sigma_generators"]["2"] = {x: x for x in lvl["elements"]}
    err = _error(doc)
    assert "symmetric group relations" in err.message
    assert err.path == "$.levels[3].sigma_generators"


@pytest.mark.parametrize("mutate, path, fragment", [
    (lambda d: d.update(colour="red"), "$", "unknown key"),
    (lambda d: d.update(schema_version=2), "$.schema_version", "unsupported schema_version"),
    (lambda d: d["levels"][1].update(extra=1), "$.levels[1]", "unknown key"),
    (lambda d: d["gamma"][5].update(result="nope"), "$.gamma[5].result", "unknown element"),
    (lambda d: d.update(identity="()"), "$.identity", "not an element of arity 1"),
    (lambda d: d["levels"][2].update(arity=1), "$.levels[2].arity", "listed twice"),
    (lambda d: d["gamma"][7].update(inner=[]), "$.gamma[7].inner", "inner elements"),
    (lambda d: d.pop("identity"), "$", "'identity' is a required property"),
])
def test_operad_diagnostics(mutate, path, fragment):
    doc = _operad_doc()
    mutate(doc)
    err = _error(doc)
    assert err.path == path
    assert fragment in err.message


def test_conflicting_gamma_entry():
    doc = _operad_doc()
    entry = copy.deepcopy(next(g for g in doc["gamma"] if g["outer"] == "(1,2)"
                               and g["inner"] == ["(1)", "(1,2)"]))
    entry["result"] = "(2,1,3)"
    doc["gamma"].append(entry)
    err = _error(doc)
    assert err.message == "conflicting gamma entry"
    assert err.path == f"$.gamma[{len(doc['gamma']) - 1}]"


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"schema_version": 1,')
    with pytest.raises(SchemaError) as info:
        validate_schema(path)
    assert info.value.path == "$"
    assert info.value.message.startswith("invalid JSON")


def test_detect_kind():
    assert detect_kind(_operad_doc()) == "operad"
    assert detect_kind({"lambda": []}) == "pair"
    assert detect_kind({"carrier": {}}) == "candidate"
    assert detect_kind({"add": []}) == "rig"
    assert detect_kind({"cubes": []}) == "cube"
    with pytest.raises(SchemaError):
        detect_kind({"hello": 1})
    with pytest.raises(SchemaError):
        detect_kind([1, 2])


def _nn_lambda():
    out = []
    for k in range(4):
        for js in itertools.product(range(4), repeat=k):
            n = 1
            for j in js:
                n *= j
            if n <= 3:
                out.append({"g": f"(*,{k})", "inner_cs": [f"(*,{j})" for j in js],
                            "result": f"(*,{n})"})
    return out


def test_pair_document():
    doc = {"schema_version": 1, "name": "nn", "additive": "comm", "multiplicative": "comm",
           "lambda": _nn_lambda()}
    kind, pa, _ = validate_document(doc)
    assert kind == "pair"
    assert check_pair_action(pa).status == "pass"
    doc["lambda"][3]["result"] = "(*,0)"
    err = _error(doc)
    assert err.path == "$.lambda[3].result"


def test_pair_with_embedded_operad():
    doc = {"schema_version": 1, "additive": operad_to_json(parse_builtin("comm", 3)),
           "multiplicative": "comm", "lambda": _nn_lambda()}
    del doc["additive"]["schema_version"]
    _, pa, _ = validate_document(doc)
    assert check_pair_action(pa).status == "pass"
    doc["additive"]["levels"][0]["bogus"] = True
    assert _error(doc).path == "$.additive.levels[0]"


def _candidate_doc(R):
    def table(op, unit):
        rows = []
        for j in range(4):
            for args in itertools.product(R.elements, repeat=j):
                acc = unit
                for i, x in enumerate(args):
                    acc = x if i == 0 else op[(acc, x)]
                rows.append({"op": f"(*,{j})", "args": list(args), "result": acc})
        return rows

    return {"schema_version": 1, "name": R.name,
            "carrier": {"elements": list(R.elements), "zero": R.zero, "one": R.one},
            "theta": table(R.add, R.zero), "xi": table(R.mul, R.one)}


def test_candidate_document():
    doc = _candidate_doc(zmod(3))
    kind, (pa, cand), _ = validate_document(doc)
    assert kind == "candidate"
    assert check_candidate(pa, cand).status == "pass"
    assert check_ring_space(pa, cand).failures == 0
    doc["xi"].pop()
    err = _error(doc)
    assert err.path == "$.xi" and err.message.startswith("missing entry")
    doc = _candidate_doc(zmod(3))
    doc["theta"][4]["result"] = 7
    assert _error(doc).path == "$.theta[4].result"


def test_rig_documents():
    R = zmod(4)
    doc = dict(R.to_json(), schema_version=1)
    kind, S, _ = validate_document(doc)
    assert kind == "rig" and S.add == R.add and S.mul == R.mul
    pa, cand = rig_as_candidate(doc)
    assert check_ring_space(pa, cand).failures == 0
    doc["mul"][1][1] = 2  # 1 * 1 = 2 breaks the unit
    err = _error(doc)
    assert err.path == "$" and "not a commutative rig" in err.message
    doc["add"] = doc["add"][:2]
    assert _error(doc).path == "$.add"


def test_cube_document():
    doc = {"schema_version": 1, "dimension": 1,
           "cubes": [[{"a": "1/2", "b": "0"}], [{"a": "1/2", "b": "1/2"}]]}
    kind, c, _ = validate_document(doc)
    assert kind == "cube"
    assert c == CubeElement(1, ((Affine("1/2", 0),), (Affine("1/2", "1/2"),)))
    doc["cubes"][1][0]["b"] = "1/4"
    err = _error(doc)
    assert err.path == "$.cubes" and "overlap" in err.message


def test_dumps_is_canonical():
    a = dumps({"b": 1, "a": (1, 2)})
    assert a == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}'
    assert dumps(operad_to_json(AssocOperad(2))) == dumps(operad_to_json(AssocOperad(2)))
