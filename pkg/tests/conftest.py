import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gptv.formula import BOT, And, Atom, Imp, Or
from gptv.kripke import KripkeModel

sys.path.insert(0, str(Path(__file__).parent))

SAMPLES = Path(__file__).parent.parent / "samples"

ACCEPTANCE_LINES: list[str] = []


def formulas(atoms=("p", "q", "r"), max_leaves=12, with_bot=True):
    leaves = st.sampled_from([Atom(a) for a in atoms] + ([BOT] if with_bot else []))
    return st.recursive(
        leaves,
        lambda sub: st.builds(lambda op, a, b: op(a, b), st.sampled_from([And, Or, Imp]), sub, sub),
        max_leaves=max_leaves,
    )


@st.composite
def models(draw, max_worlds=4, atoms=("p", "q", "r")):
    n = draw(st.integers(1, max_worlds))
    worlds = tuple(f"w{i}" for i in range(n))
    pairs = {(worlds[a], worlds[b]) for a in range(n) for b in range(a + 1, n)
             if draw(st.booleans())}
    frame = KripkeModel(worlds, frozenset(pairs), {})
    placed = {w: draw(st.sets(st.sampled_from(atoms))) for w in worlds}
    valuation = {w: frozenset().union(*(placed[v] for v in worlds if frame.leq(v, w)))
                 for w in worlds}
    return KripkeModel(worlds, frame.order, valuation, frozenset(atoms))


@pytest.fixture
def samples():
    return SAMPLES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
