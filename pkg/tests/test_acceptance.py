"""Acceptance criteria 1-7, each run at its stated size, tolerance and time budget.

Every test prints one ``[criterion N] PASS|FAIL`` line; the lines are also
repeated in the pytest terminal summary.
"""

import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from corpus import NON_THEOREMS, THEOREMS
from gptv.atomic import BOT, AtomicSystem, derivable_closure, rule_universe
from gptv.bridge import translate_model, verify_order_embedding
from gptv.formula import And, Atom, Imp, Or, apply_substitution, atoms_of, parse_formula, \
    render_formula, subformulas
from gptv.formula import BOT as FALSUM
from gptv.kripke import countermodel_search, kripke_extension
from gptv.prover import ipc_provable
from gptv.pts import is_intuitionistic_pts, pts_extension, pts_forces
from gptv.selftest import SelftestConfig, random_formula, random_model, run_selftest, \
    trial_stream
from gptv.validity import gptv_check
from gptv.verdict import Refuted, Valid
from oracles import derivable_by_trees

pytestmark = pytest.mark.acceptance

STREAM_CONFIG = SelftestConfig(seed=1, trials=10_000, max_worlds=5, max_atoms=3, max_depth=6,
                               check_prover=False)


def report(n, ok, detail, elapsed, budget=None):
    timing = f"{elapsed:.1f}s" + (f" (budget {budget}s)" if budget else "")
    line = f"[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}; {timing}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and (budget is None or elapsed < budget)


@pytest.fixture(scope="module")
def stream():
    return list(trial_stream(STREAM_CONFIG))


def test_criterion_1_forcing_agrees(stream):
    start = time.perf_counter()
    result = run_selftest(STREAM_CONFIG)
    elapsed = time.perf_counter() - start
    agreed = result.passed["forcing agrees at every world"]
    ok = agreed == len(stream) >= 10_000 and result.ok
    assert report(1, ok, f"{agreed}/{len(stream)} trials agree at every world and subformula",
                  elapsed, 60)


def test_criterion_2_order_embedding():
    start = time.perf_counter()
    rng = random.Random("criterion-2")
    violations = 0
    for _ in range(1000):
        m = random_model(rng, 6, ("p", "q", "r"))
        r = verify_order_embedding(m)
        violations += len(r.collapsed) + len(r.not_included) + len(r.spurious_inclusion)
        violations += not r.intuitionistic
    elapsed = time.perf_counter() - start
    assert report(2, violations == 0, f"{violations} violations over 1000 models", elapsed, 10)


def test_criterion_3_desk_corpus():
    start = time.perf_counter()
    problems = []
    for text in THEOREMS:
        if gptv_check(parse_formula(text)) != Valid():
            problems.append(f"{text} not Valid")
    for text in NON_THEOREMS:
        f = parse_formula(text)
        v = gptv_check(f)
        if not isinstance(v, Refuted):
            problems.append(f"{text} not Refuted")
            continue
        if not is_intuitionistic_pts(v.pts) or pts_forces(v.pts, v.member, f):
            problems.append(f"{text}: translated witness does not refute")
        if len(v.model) > 3:
            problems.append(f"{text}: smallest witness has {len(v.model)} worlds")
    elapsed = time.perf_counter() - start
    detail = (f"{len(THEOREMS)} theorems, {len(NON_THEOREMS)} non-theorems"
              + (", " + "; ".join(problems) if problems else ", all as expected"))
    assert report(3, not problems, detail, elapsed, 30)


def test_criterion_4_derivability_oracle():
    start = time.perf_counter()
    universe = rule_universe({"p", "q"})
    checked = mismatches = 0
    for k in range(5):
        for rules in itertools.combinations(universe, k):
            checked += 1
            s = AtomicSystem(frozenset(rules))
            if derivable_closure(s) != derivable_by_trees(rules, ["p", "q", BOT], 4):
                mismatches += 1
    elapsed = time.perf_counter() - start
    assert report(4, mismatches == 0 and checked == 12_951,
                  f"{mismatches} mismatches over {checked} systems", elapsed, 30)


def test_criterion_5_substitution_closure():
    start = time.perf_counter()
    rng = random.Random("criterion-5")
    total = failures = 0
    for text in THEOREMS:
        f = parse_formula(text)
        for _ in range(100):
            sub = {a: random_formula(rng, ("p", "q", "r", "s"), 2) for a in atoms_of(f)}
            total += 1
            if gptv_check(apply_substitution(f, sub)) != Valid():
                failures += 1
    elapsed = time.perf_counter() - start
    assert report(5, failures == 0, f"{total - failures}/{total} instances Valid", elapsed, 60)


def _up_closed(mask, ups):
    return all(not (mask >> i & 1) or (up & ~mask) == 0 for i, up in enumerate(ups))


def test_criterion_6_no_bottom_and_persistence(stream):
    start = time.perf_counter()
    bottom = broken = 0
    for _, m, f in stream:
        t = translate_model(m, atoms_of(f))
        bottom += sum(BOT in derivable_closure(s) for s in t.systems.values())
        kmemo, pmemo = {}, {}
        kripke_extension(m, f, kmemo)
        pts_extension(t.pts, f, pmemo)
        world_ups = [m.up_mask(w) for w in m.worlds]
        member_ups = list(t.pts.supersets)
        for g in set(subformulas(f)):
            broken += not _up_closed(kmemo[g], world_ups)
            broken += not _up_closed(pmemo[g], member_ups)
    elapsed = time.perf_counter() - start
    ok = bottom == 0 and broken == 0
    assert report(6, ok, f"{bottom} systems deriving bot, {broken} persistence failures "
                  f"over {len(stream)} trials", elapsed)


def _one_atom_formulas(max_depth):
    formulas = [Atom("p"), FALSUM]
    for _ in range(max_depth):
        formulas = [Atom("p"), FALSUM] + [op(a, b) for op in (And, Or, Imp)
                                          for a in formulas for b in formulas]
    return formulas


def test_criterion_7_prover_and_search():
    start = time.perf_counter()
    memo: dict = {}
    checked = 0
    inconsistent = []
    for f in _one_atom_formulas(3):
        checked += 1
        found = countermodel_search(f, 5, atoms=("p",), memo=memo) is not None
        if ipc_provable(f) == found:
            inconsistent.append(render_formula(f))
    elapsed = time.perf_counter() - start
    detail = f"{len(inconsistent)} inconsistencies over {checked} formulas"
    if inconsistent:
        detail += f", first {inconsistent[0]}"
    assert report(7, not inconsistent and checked == 1_044_302, detail, elapsed, 60)
