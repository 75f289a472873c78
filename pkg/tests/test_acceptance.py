"""One test per acceptance criterion, each printing a pass/fail line."""

import os
import random
import subprocess
import sys
import time

from operadkit import fixtures as F
from operadkit.bar import augmentation_split_check, tensor_iso_check
from operadkit.completion import (
    find_isomorphism,
    group_completion,
    localize_telescope,
    ring_completion,
    totient,
    units,
    universal_property_check,
    zmod,
    boolean_monoid,
)
from operadkit.cubes import negative_facts, random_cube_instances
from operadkit.monad.laws import check_monad_laws, flavor_iso
from operadkit.monad.maps import adjunction_check, get_adjunction, left_adjoint_square, pullback, pushforward
from operadkit.monad.terms import Carrier, FreeMonad
from operadkit.operad import (
    AssocOperad,
    builtin_operad,
    check_operad_axioms,
    parse_builtin,
    tabulate,
    to_comm,
)
from operadkit.pair import (
    UnderS0FinSet,
    all_table_pairs,
    basepoint_redundancy_check,
    check_candidate,
    check_ring_space,
    nn_pair,
    nn_rig_equivalence,
    rig_candidate,
)

# budgets large enough to make the finite operads exhaustive at arity 4
EXHAUSTIVE = 2_500_000


def test_criterion_1_operad_axiom_suite(criterion):
    start = time.perf_counter()
    suites = [("comm", EXHAUSTIVE), ("assoc", EXHAUSTIVE), ("endo:0", EXHAUSTIVE),
              ("endo:0,a", None), ("endo:0,a,b", None), ("product:assoc,comm", EXHAUSTIVE),
              ("be:0", EXHAUSTIVE), ("be:1", None), ("be:2", None)]
    problems = []
    statuses = {}
    for name, budget in suites:
        report = check_operad_axioms(parse_builtin(name, 4), budget=budget)
        statuses[name] = report.status
        if report.failures:
            problems.append((name, report.witnesses[:2]))
        if budget is not None and report.status != "pass":
            problems.append((name, "expected an exhaustive pass"))

    T = tabulate(AssocOperad(3))
    rng = random.Random(0)
    keys = sorted(T.gamma_table, key=repr)
    mutants = 0
    while mutants < 20:
        key = rng.choice(keys)
        old = T.gamma_table[key]
        others = [x for x in T.levels[T.arity(old)] if x != old]
        if not others:
            continue
        mutants += 1
        report = check_operad_axioms(T.with_gamma_entry(key, rng.choice(others)))
        if not report.witnesses:
            problems.append(("mutant", key))
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    criterion(1, ok, f"statuses={statuses} mutants=20 time={elapsed:.1f}s")
    assert not problems, problems
    assert elapsed < 60


def _carriers(flavor):
    if flavor == "u+":
        return [Carrier(("a",)), Carrier(("a", "b"))]
    if flavor in ("u", "t+"):
        return [Carrier(("0",), "0"), Carrier(("0", "a"), "0"), Carrier(("0", "a", "b"), "0")]
    return [Carrier(("0", "1"), "0", "1"), Carrier(("0", "1", "a"), "0", "1"),
            Carrier(("0", "1", "a", "b"), "0", "1")]


def test_criterion_2_monad_laws(criterion):
    start = time.perf_counter()
    reports = []
    for kind in ("comm", "assoc"):
        O = builtin_operad(kind, 3)
        for flavor in ("u+", "u", "t+", "t"):
            for X in _carriers(flavor):
                reports.append(check_monad_laws(flavor, O, X))
        for X in (Carrier(("a",)), Carrier(("a", "b"))):
            reports.append(flavor_iso("u_plus", O, X)[1])
        for X in (Carrier(("0",), "0"), Carrier(("0", "a"), "0"), Carrier(("0", "a", "b"), "0")):
            reports.append(flavor_iso("t_plus", O, X)[1])
    elapsed = time.perf_counter() - start
    bad = [r.summary() for r in reports if r.status != "pass"]
    checked = sum(r.checked for r in reports)
    criterion(2, not bad and elapsed < 120,
              f"{len(reports)} reports, {checked} checks, time={elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 120


def test_criterion_3_rig_equivalence(criterion):
    start = time.perf_counter()
    X = UnderS0FinSet((0, 1), 0, 1)
    total = agree = 0
    passing = []
    for add, mul in all_table_pairs(X):
        r = nn_rig_equivalence(X, add, mul)
        total += 1
        agree += r["is_rig"] == r["ring_space_passes"]
        if r["ring_space_passes"]:
            passing.append((add, mul))
    elapsed = time.perf_counter() - start
    boolean = ({(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
               {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1})
    z2 = ({(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
          {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1})
    ok = (total == 256 and agree == total and len(passing) == 2
          and sorted(map(repr, passing)) == sorted(map(repr, [boolean, z2])) and elapsed < 10)
    criterion(3, ok, f"pairs={total} agree={agree} passing={len(passing)} time={elapsed:.1f}s")
    assert total == 256 and agree == total
    assert len(passing) == 2
    assert sorted(map(repr, passing)) == sorted(map(repr, [boolean, z2]))
    assert elapsed < 10


def _nondistributive():
    X = UnderS0FinSet((0, 1, "a"), 0, 1)
    el = X.elements
    add = {(x, y): (y if x == 0 else x if y == 0 else 1) for x in el for y in el}
    mul = {(x, y): (0 if 0 in (x, y) else y if x == 1 else x if y == 1 else "a")
           for x in el for y in el}
    return rig_candidate(X, add, mul, "nondist")


def test_criterion_4_strict_zero_is_redundant(criterion):
    pa = nn_pair(3)
    candidates = []
    for R in F.rigs():
        if len(R) <= 3:
            X = UnderS0FinSet(R.elements, R.zero, R.one)
            candidates.append(rig_candidate(X, R.add, R.mul, R.name))
    candidates.append(_nondistributive())
    passing, derived = [], []
    for cand in candidates:
        if check_candidate(pa, cand).passed and check_ring_space(pa, cand).passed:
            passing.append(cand.name)
            report = basepoint_redundancy_check(pa, cand)
            if report.failures == 0 and report.checked > 0:
                derived.append(cand.name)
    ok = passing == derived and len(passing) >= 5 and "nondist" not in passing
    criterion(4, ok, f"passing={passing} derived={derived}")
    assert "nondist" not in passing
    assert len(passing) >= 5
    assert passing == derived


def test_criterion_5_bar_construction(criterion):
    start = time.perf_counter()
    C = FreeMonad("reduced_based", builtin_operad("comm", 3))
    algebras = F.commutative_monoids()
    assert len(algebras) == 10
    reports = [augmentation_split_check(C, M.carrier, M.xi, q=2) for M in algebras]
    tensor = tensor_iso_check(C, [(M.name, M.carrier, M.xi) for M in algebras])
    natural = sum(1 for a, _ in tensor.witnesses if a == "natural")
    elapsed = time.perf_counter() - start
    bad = [r.summary() for r in reports + [tensor] if r.status != "pass"]
    criterion(5, not bad and elapsed < 120,
              f"10 algebras, tensor checks={tensor.checked}, time={elapsed:.1f}s")
    assert not bad, bad
    assert natural == 0
    assert elapsed < 120


def test_criterion_6_completion(criterion):
    start = time.perf_counter()
    K, _ = group_completion(boolean_monoid())
    trivial = len(K) == 1
    tel = localize_telescope(zmod(6), [2])
    z3 = find_isomorphism(tel.ring, zmod(3), "ring") is not None
    phi = all(len(units(zmod(n))[0]) == totient(n) for n in range(1, 13))
    reports = []
    for R in F.rigs():
        K, eta = group_completion(R.additive)
        reports.append(universal_property_check("group", R.additive, K, eta))
        L, eta = ring_completion(R)
        reports.append(universal_property_check("localization", R, L, eta))
    elapsed = time.perf_counter() - start
    bad = [r.summary() for r in reports if r.status != "pass"]
    ok = trivial and z3 and phi and not bad and elapsed < 180
    criterion(6, ok, f"K(boolean) trivial={trivial} Z/6[1/2]~Z/3={z3} phi={phi} "
                     f"universal={len(reports) - len(bad)}/{len(reports)} time={elapsed:.1f}s")
    assert trivial and z3 and phi
    assert not bad, bad
    assert elapsed < 180


def test_criterion_7_cubes(criterion):
    start = time.perf_counter()
    report = random_cube_instances(1000, seed=0)
    negatives = negative_facts()
    elapsed = time.perf_counter() - start
    config = report.checked and not any(a == "configuration" for a, _ in report.witnesses)
    ok = report.status == "pass" and negatives.status == "pass" and config and elapsed < 60
    criterion(7, ok, f"{report.summary()}; {negatives.summary()}; time={elapsed:.1f}s")
    assert report.status == "pass", report.witnesses[:3]
    assert report.checked == 7000
    assert negatives.status == "pass"
    assert elapsed < 60


def test_criterion_8_adjunctions(criterion):
    reports, counts = [], []
    for kind in ("comm", "assoc"):
        O = builtin_operad(kind, 3)
        plus = get_adjunction("plus", O)
        for X in [M for M in F.monoids() if len(M.elements) <= 2]:
            for Y in F.zero_monoids():
                c, r = adjunction_check(plus, Carrier(X.elements), X.xi,
                                        Carrier(Y.elements, Y.zero), Y.xi)
                counts.append(c)
                reports.append(r)
            reports.append(pushforward(plus, Carrier(X.elements), X.xi)[2])
        s0 = get_adjunction("s0", O)
        for X in F.semigroups_with_zero():
            for Y in F.zero_monoids():
                c, r = adjunction_check(s0, Carrier(X.elements, X.zero), X.xi, Y.carrier, Y.xi)
                counts.append(c)
                reports.append(r)
        square, r = left_adjoint_square(plus, Carrier(("a", "b")))
        iso, r2 = flavor_iso("u_plus", O, Carrier(("a", "b")))
        reports += [r, r2]
        assert square == iso
    f = to_comm(builtin_operad("assoc", 3))
    for M in F.commutative_monoids()[:5]:
        reports.append(pullback(f, "reduced_based", M.carrier, M.xi)[1])
    equal = all(c["lower"] == c["upper"] for c in counts)
    bad = [r.summary() for r in reports if r.status != "pass"]
    ok = equal and not bad and len(counts) == 2 * (3 * 5 + 2 * 5)
    criterion(8, ok, f"{len(counts)} adjunction instances, counts equal={equal}, "
                     f"{len(reports)} reports")
    assert equal
    assert not bad, bad
    assert len(counts) == 50


def _suite(tmp):
    from operadkit.schema import operad_to_json
    import json

    doc = operad_to_json(AssocOperad(3))
    doc["gamma"][40]["result"] = "(1,2)"
    mutated = tmp / "mutated.json"
    mutated.write_text(json.dumps(doc))
    cube = tmp / "cube.json"
    cube.write_text(json.dumps({"schema_version": 1, "dimension": 1,
                                "cubes": [[{"a": "1/2", "b": "0"}], [{"a": "1/2", "b": "1/2"}]]}))
    return [
        ["check-operad", "builtin:comm"],
        ["check-operad", str(mutated), "--seed", "3"],
        ["check-pair", "builtin:nn"],
        ["check-ring-space", "builtin:Z/3"],
        ["free", "--operad", "assoc", "--flavor", "t", "--set", "0,1,a,b"],
        ["monad-laws", "--operad", "assoc", "--flavor", "u", "--set", "0,a"],
        ["flavor-iso", "--which", "t_plus", "--set", "0,a"],
        ["interchange", "builtin:boolean"],
        ["bar", "--operad", "assoc", "--algebra", "Z/2"],
        ["tensor", "--algebra", "Z/2", "--algebra", "boolean"],
        ["complete", "builtin:Z/6", "--mode", "localize", "--invert", "2"],
        ["complete", "builtin:capped", "--mode", "ring"],
        ["cubes", "random", "--count", "200", "--seed", "7"],
        ["cubes", "centers", str(cube)],
        ["cubes", "negatives"],
    ]


def _run(args, hashseed, cwd):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    env.pop("OPERADKIT_BUDGET", None)
    proc = subprocess.run([sys.executable, "-m", "operadkit.cli", *args], capture_output=True,
                          env=env, cwd=cwd)
    return proc.returncode, proc.stdout


def test_criterion_9_determinism(criterion, tmp_path):
    differing = []
    for args in _suite(tmp_path):
        first = _run(args, 1, tmp_path)
        second = _run(args, 12345, tmp_path)
        if first != second or not first[1]:
            differing.append(args[0])
    criterion(9, not differing, f"{len(_suite(tmp_path))} commands byte-identical across "
                                f"hash seeds; differing={differing}")
    assert not differing
