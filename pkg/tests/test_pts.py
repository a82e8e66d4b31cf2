import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import formulas
from gptv.atomic import BOT, AtomicSystem, CapExceeded, axiom, derivable_closure, \
    ex_falso_completion, rule_universe, system
from gptv.formula import Imp, parse_formula
from gptv.pts import (
    ProofTheoreticSystem,
    UnknownAtomError,
    dump_pts,
    goldfarb_pts,
    is_intuitionistic_pts,
    load_pts,
    pts_extension,
    pts_forces,
    pts_valid,
)
from oracles import naive_pts_forces


@pytest.fixture
def two_systems():
    s0 = ex_falso_completion(system(), {"p"})
    s1 = s0 | system(axiom("p"))
    return ProofTheoreticSystem.build([s0, s1], {"p"})


def test_forcing_examples(two_systems):
    pts = two_systems
    assert pts_forces(pts, 0, parse_formula("p -> p"))
    assert not pts_forces(pts, 0, parse_formula("p"))
    assert pts_forces(pts, 1, parse_formula("p"))
    assert pts_forces(pts, 0, parse_formula("~~p"))


def test_double_negation_by_the_clauses(two_systems):
    members = [m.rules for m in two_systems.members]
    assert naive_pts_forces(members, 0, parse_formula("~~p"))
    assert naive_pts_forces(members, 1, parse_formula("~~p"))
    assert not naive_pts_forces(members, 0, parse_formula("p | ~p"))


def test_validity_examples(two_systems):
    assert pts_valid(two_systems, parse_formula("p -> p"))
    assert not pts_valid(two_systems, parse_formula("p"))
    assert pts_valid(two_systems, parse_formula("~~p"))


def test_errors(two_systems):
    with pytest.raises(UnknownAtomError):
        pts_forces(two_systems, 0, parse_formula("q"))
    with pytest.raises(IndexError):
        pts_forces(two_systems, 2, parse_formula("p"))
    with pytest.raises(ValueError):
        ProofTheoreticSystem.build([system(axiom("q"))], {"p"})


def test_duplicates_collapse():
    s = system(axiom("p"))
    pts = ProofTheoreticSystem.build([s, system(axiom("p")), system()], {"p"}, ["a", "b", "c"])
    assert len(pts) == 2 and pts.names == ("a", "c")


def test_is_intuitionistic(two_systems):
    assert is_intuitionistic_pts(two_systems)
    assert not is_intuitionistic_pts(ProofTheoreticSystem.build([system()], {"p"}))
    assert is_intuitionistic_pts(ProofTheoreticSystem.build([system(), system(axiom(BOT))], set()))


def test_goldfarb_over_empty_signature():
    # oracle: the supersets of {} in a two-rule universe are its four subsets
    universe = rule_universe(set())
    expected = {frozenset(c) for k in range(3) for c in itertools.combinations(universe, k)}
    pts = goldfarb_pts(system(), set())
    assert len(pts) == 4
    assert {m.rules for m in pts.members} == expected


def test_goldfarb_members_are_completed_supersets():
    g = system(axiom("p"))
    pts = goldfarb_pts(g, {"p"}, member_cap=1 << 8)
    assert is_intuitionistic_pts(pts)
    assert all(g <= m for m in pts.members)
    # 8 rules, 1 fixed by g, 1 fixed by ex falso completion
    assert len(pts) == 2 ** 6


def test_goldfarb_edge_cases():
    sig = {"p"}
    full = AtomicSystem(frozenset(rule_universe(sig)))
    assert len(goldfarb_pts(full, sig)) == 1
    with pytest.raises(CapExceeded):
        goldfarb_pts(system(), {"p", "q", "r"})


def test_json_round_trip(two_systems):
    doc = dump_pts(two_systems)
    again = load_pts(doc)
    assert again.members == two_systems.members and again.names == two_systems.names
    # the bare-list form of a member is accepted too
    bare = {"signature": ["p"], "systems": {"A": [{"premises": [], "conclusion": "p"}]}}
    assert load_pts(bare).members == (system(axiom("p")),)


SIG = {"p", "q"}
UNIVERSE = rule_universe(SIG)


@st.composite
def intuitionistic_pts(draw, max_members=5):
    members = draw(st.lists(st.sets(st.sampled_from(UNIVERSE), max_size=5),
                            min_size=1, max_size=max_members))
    return ProofTheoreticSystem.build(
        [ex_falso_completion(AtomicSystem(frozenset(m)), SIG) for m in members], SIG)


pq_formulas = formulas(atoms=("p", "q"), max_leaves=10)


@settings(max_examples=200, deadline=None)
@given(intuitionistic_pts(), pq_formulas)
def test_matches_naive_clauses(pts, f):
    members = [m.rules for m in pts.members]
    ext = pts_extension(pts, f)
    for i in range(len(pts)):
        assert bool(ext >> i & 1) == naive_pts_forces(members, i, f)


@given(intuitionistic_pts(), pq_formulas)
def test_persistence(pts, f):
    for i, s in enumerate(pts.members):
        for j, t in enumerate(pts.members):
            if s <= t and pts_forces(pts, i, f):
                assert pts_forces(pts, j, f)


@given(intuitionistic_pts(), pq_formulas, pq_formulas)
def test_modus_ponens_at_a_member(pts, a, b):
    for i in range(len(pts)):
        if pts_forces(pts, i, Imp(a, b)) and pts_forces(pts, i, a):
            assert pts_forces(pts, i, b)


@given(intuitionistic_pts(), pq_formulas)
def test_inconsistent_members_force_everything(pts, f):
    for i, s in enumerate(pts.members):
        if BOT in derivable_closure(s):
            assert pts_forces(pts, i, f)
