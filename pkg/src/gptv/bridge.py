"""From finite Kripke models to intuitionistic proof-theoretic systems.

Each world ``w`` becomes the atomic system

    S_w = {=> p : p true at w} | {@s => @s : s <= w} | {bot => a : a in signature}

where ``@s`` is a label atom naming world ``s``.  The label rules derive
nothing new; they only make inclusion between the systems mirror the order
on worlds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from gptv.atomic import BOT, AtomicSystem, axiom, derivable_closure, ex_falso_rules, rule
from gptv.formula import LABEL_PREFIX, Formula, atoms_of, is_label
from gptv.kripke import KripkeModel, kripke_extension
from gptv.pts import ProofTheoreticSystem, is_intuitionistic_pts, pts_extension


def label_atom(world: str) -> str:
    return LABEL_PREFIX + world


def member_name(world: str) -> str:
    return f"S_{world}"


@dataclass(frozen=True, eq=False)
class TranslationResult:
    pts: ProofTheoreticSystem
    world_map: dict[str, int]
    systems: dict[str, AtomicSystem] = field(repr=False)

    def member(self, world: str) -> AtomicSystem:
        return self.pts.members[self.world_map[world]]


def translate_model(m: KripkeModel, atoms: Iterable[str] = (), *,
                    label_rules: bool = True) -> TranslationResult:
    """Build the proof-theoretic system of ``m``.

    ``atoms`` widens the user part of the signature beyond ``m.atoms``.
    ``label_rules=False`` omits the world labels; it exists only so tests
    can watch the order embedding break.
    """
    for w in m.worlds:
        if not w or any(c.isspace() for c in w):
            raise ValueError(f"world name {w!r} cannot be turned into a label atom")
    user = frozenset(m.atoms) | frozenset(atoms)
    labels = frozenset(label_atom(w) for w in m.worlds) if label_rules else frozenset()
    sig = user | labels
    ex_falso = ex_falso_rules(sig)
    systems = {}
    for w in m.worlds:
        rules = {axiom(p) for p in m.valuation[w]}
        if label_rules:
            rules |= {rule([label_atom(s)], label_atom(s))
                      for s in m.worlds if m.leq(s, w)}
        systems[w] = AtomicSystem(frozenset(rules) | ex_falso)
    pts = ProofTheoreticSystem.build([systems[w] for w in m.worlds], sig,
                                     [member_name(w) for w in m.worlds])
    world_map = {w: pts.find(systems[w]) for w in m.worlds}
    return TranslationResult(pts, world_map, systems)


@dataclass
class EmbeddingReport:
    """Violations of the order-embedding lemmas; every list is empty for a sound translation."""

    intuitionistic: bool = True
    collapsed: list[tuple[str, str]] = field(default_factory=list)
    not_included: list[tuple[str, str]] = field(default_factory=list)
    spurious_inclusion: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.intuitionistic and not self.collapsed and not self.not_included
                and not self.spurious_inclusion)

    def lines(self) -> list[str]:
        def row(name, bad):
            status = "FAIL" if bad else "PASS"
            detail = "; ".join(f"{a},{b}" for a, b in bad) if isinstance(bad, list) else ""
            return f"{status} {name}" + (f": {detail}" if bad and detail else "")

        return [
            row("intuitionistic (every member has ex falso for the whole signature)",
                not self.intuitionistic),
            row("distinct worlds give distinct systems", self.collapsed),
            row("w <= v implies S_w is included in S_v", self.not_included),
            row("S_w included in S_v implies w <= v", self.spurious_inclusion),
        ]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "intuitionistic": self.intuitionistic,
            "collapsed": [list(p) for p in self.collapsed],
            "not_included": [list(p) for p in self.not_included],
            "spurious_inclusion": [list(p) for p in self.spurious_inclusion],
        }


def verify_order_embedding(m: KripkeModel,
                           translation: Optional[TranslationResult] = None) -> EmbeddingReport:
    t = translation if translation is not None else translate_model(m)
    report = EmbeddingReport(intuitionistic=is_intuitionistic_pts(t.pts))
    for a in m.worlds:
        for b in m.worlds:
            if a == b:
                continue
            sa, sb = t.systems[a].rules, t.systems[b].rules
            if a < b and sa == sb:
                report.collapsed.append((a, b))
            included = sa <= sb
            if m.leq(a, b) and not included:
                report.not_included.append((a, b))
            if included and not m.leq(a, b):
                report.spurious_inclusion.append((a, b))
    return report


def equivalence_mismatches(m: KripkeModel, f: Formula,
                           translation: Optional[TranslationResult] = None) -> list[str]:
    """Worlds where Kripke forcing and forcing at the translated member disagree."""
    if any(is_label(a) for a in atoms_of(f)):
        raise ValueError("formula mentions a label atom")
    t = translation if translation is not None else translate_model(m, atoms_of(f))
    kripke = kripke_extension(m, f)
    pts = pts_extension(t.pts, f)
    return [w for i, w in enumerate(m.worlds)
            if bool(kripke >> i & 1) != bool(pts >> t.world_map[w] & 1)]


def verify_equivalence(m: KripkeModel, f: Formula) -> bool:
    return not equivalence_mismatches(m, f)


def spurious_bottom(t: TranslationResult) -> list[str]:
    """Worlds whose system derives bot."""
    return [w for w, s in t.systems.items() if BOT in derivable_closure(s)]
