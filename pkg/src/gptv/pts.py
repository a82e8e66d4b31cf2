"""Proof-theoretic systems and the forcing relation between their members and formulas.

A proof-theoretic system is a finite family of atomic systems over a common
signature.  Inclusion between members plays the part of accessibility: an
implication holds at a member when every superset member inside the family
that supports the antecedent also supports the consequent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Optional, Sequence

from gptv.atomic import (
    BOT,
    DEFAULT_RULE_CAP,
    AtomicSystem,
    CapExceeded,
    check_signature,
    check_system,
    derivable_closure,
    ex_falso_completion,
    is_ex_falso_complete,
    rule_from_json,
    rule_universe,
    system_to_json,
)
from gptv.formula import And, Atom, Bottom, Formula, Imp, Or, atoms_of, subformulas

DEFAULT_MEMBER_CAP = 4096


class UnknownAtomError(ValueError):
    pass


@dataclass(frozen=True)
class ProofTheoreticSystem:
    """Use :meth:`build`; it validates, dedupes and names the members."""

    signature: frozenset[str]
    members: tuple[AtomicSystem, ...]
    names: tuple[str, ...] = field(compare=False)

    @classmethod
    def build(cls, systems: Iterable[AtomicSystem], signature: Iterable[str],
              names: Optional[Sequence[str]] = None) -> ProofTheoreticSystem:
        sig = check_signature(signature)
        systems = list(systems)
        if names is None:
            names = [f"S{i}" for i in range(len(systems))]
        if len(names) != len(systems):
            raise ValueError("one name per member system is required")
        seen: dict[frozenset, int] = {}
        members, kept = [], []
        for s, name in zip(systems, names):
            check_system(s, sig)
            if s.rules in seen:
                continue
            seen[s.rules] = len(members)
            members.append(s)
            kept.append(name)
        if len(set(kept)) != len(kept):
            raise ValueError("member names must be unique")
        return cls(sig, tuple(members), tuple(kept))

    def __len__(self):
        return len(self.members)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no member named {name!r}") from None

    def find(self, s: AtomicSystem) -> int:
        for i, m in enumerate(self.members):
            if m.rules == s.rules:
                return i
        raise KeyError("system is not a member")

    @cached_property
    def closures(self) -> tuple[frozenset[str], ...]:
        return tuple(derivable_closure(s) for s in self.members)

    @cached_property
    def supersets(self) -> tuple[int, ...]:
        """Bit j of entry i is set when member j includes member i."""
        out = []
        for s in self.members:
            mask = 0
            for j, t in enumerate(self.members):
                if s.rules <= t.rules:
                    mask |= 1 << j
            out.append(mask)
        return tuple(out)

    @property
    def everything(self) -> int:
        return (1 << len(self.members)) - 1


def pts_extension(pts: ProofTheoreticSystem, f: Formula,
                  memo: Optional[dict[Formula, int]] = None) -> int:
    """Bitmask of the member indices that force ``f``."""
    stray = atoms_of(f) - pts.signature
    if stray:
        raise UnknownAtomError(f"atoms outside the signature: {sorted(stray)}")
    memo = {} if memo is None else memo
    n = len(pts.members)
    for node in subformulas(f):
        if node in memo:
            continue
        if isinstance(node, (Atom, Bottom)):
            symbol = node.name if isinstance(node, Atom) else BOT
            value = 0
            for i in range(n):
                if symbol in pts.closures[i]:
                    value |= 1 << i
        elif isinstance(node, And):
            value = memo[node.left] & memo[node.right]
        elif isinstance(node, Or):
            value = memo[node.left] | memo[node.right]
        elif isinstance(node, Imp):
            # members where the antecedent holds but the consequent fails
            bad = memo[node.left] & ~memo[node.right]
            value = 0
            for i in range(n):
                if not pts.supersets[i] & bad:
                    value |= 1 << i
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[node] = value
    return memo[f]


def pts_forces(pts: ProofTheoreticSystem, i: int, f: Formula) -> bool:
    if not 0 <= i < len(pts.members):
        raise IndexError(f"member index {i} out of range")
    return bool(pts_extension(pts, f) >> i & 1)


def pts_valid(pts: ProofTheoreticSystem, f: Formula) -> bool:
    return pts_extension(pts, f) == pts.everything


def is_intuitionistic_pts(pts: ProofTheoreticSystem) -> bool:
    return all(is_ex_falso_complete(s, pts.signature) for s in pts.members)


def goldfarb_pts(g: AtomicSystem, sig: Iterable[str], rule_cap: int = DEFAULT_RULE_CAP,
                 member_cap: int = DEFAULT_MEMBER_CAP) -> ProofTheoreticSystem:
    """All ex-falso-completed supersets of ``g`` inside the rule universe of ``sig``."""
    sig = check_signature(sig)
    check_system(g, sig)
    universe = rule_universe(sig, rule_cap)
    free = [r for r in universe if r not in g.rules]
    if len(free) > 62 or 2 ** len(free) > member_cap:
        raise CapExceeded(f"2^{len(free)} candidate members, cap is {member_cap}")
    systems = []
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            s = AtomicSystem(g.rules | frozenset(extra))
            systems.append(ex_falso_completion(s, sig))
    return ProofTheoreticSystem.build(systems, sig)


# --------------------------------------------------------------------------
# JSON: {"signature": [...], "systems": {"S_w1": [rules...] or {"rules": [...]}}}

def load_pts(doc: dict[str, Any]) -> ProofTheoreticSystem:
    sig = check_signature(doc.get("signature", []))
    names, systems = [], []
    for name, body in doc.get("systems", {}).items():
        rules = body["rules"] if isinstance(body, dict) else body
        names.append(name)
        systems.append(AtomicSystem(frozenset(rule_from_json(r) for r in rules)))
    return ProofTheoreticSystem.build(systems, sig, names)


def dump_pts(pts: ProofTheoreticSystem) -> dict[str, Any]:
    return {
        "signature": sorted(pts.signature),
        "systems": {name: {"rules": system_to_json(s)}
                    for name, s in zip(pts.names, pts.members)},
    }
