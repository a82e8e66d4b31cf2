"""Generalised proof-theoretic validity.

No finite computation can range over every intuitionistic proof-theoretic
system, so a formula is judged through its intuitionistic provability:
provable formulas are reported valid, and an unprovable one is refuted by
translating a finite Kripke countermodel into a concrete proof-theoretic
system and checking the forcing relation there directly.
"""

from __future__ import annotations

import logging

from gptv.bridge import translate_model
from gptv.formula import Formula, atoms_of, render_formula
from gptv.prover import decide
from gptv.pts import pts_forces
from gptv.verdict import Refuted, Unknown, Verdict

log = logging.getLogger(__name__)


def gptv_check(f: Formula, max_worlds: int = 5) -> Verdict:
    verdict = decide(f, max_worlds)
    if not isinstance(verdict, Refuted):
        return verdict
    t = translate_model(verdict.model, atoms_of(f))
    member = t.world_map[verdict.world]
    if pts_forces(t.pts, member, f):
        log.error("translated witness does not refute %s", render_formula(f))
        return Unknown("countermodel translation failed re-verification", suspicious=True)
    return Refuted(verdict.model, verdict.world, t.pts, member)
