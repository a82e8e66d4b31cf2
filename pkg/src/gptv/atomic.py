"""Atomic rules, atomic systems and derivability.

An atomic rule has a set of premises and a conclusion, each an atom name or
``BOT``.  A rule with no premises is an axiom.  ``S |- p`` holds when ``p``
is the conclusion of some derivation built from the rules of ``S`` only.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Any, Iterable

from gptv.formula import ATOM_PATTERN, BOT_NAME, is_label

BOT = BOT_NAME
DEFAULT_RULE_CAP = 4096

Signature = frozenset  # frozenset[str]; bot is implicit and never a member


class CapExceeded(ValueError):
    pass


def _check_symbol(name: str) -> str:
    if name == BOT or ATOM_PATTERN.fullmatch(name) or is_label(name):
        return name
    raise ValueError(f"invalid atomic symbol {name!r}")


def _symbol_key(name: str) -> tuple[int, str]:
    return (0 if name == BOT else 1, name)


@dataclass(frozen=True)
class AtomicRule:
    premises: frozenset[str]
    conclusion: str

    def __post_init__(self):
        object.__setattr__(self, "premises", frozenset(self.premises))
        for name in self.premises | {self.conclusion}:
            _check_symbol(name)

    @property
    def is_axiom(self) -> bool:
        return not self.premises

    def symbols(self) -> frozenset[str]:
        return self.premises | {self.conclusion}

    def sort_key(self):
        return (len(self.premises), sorted(map(_symbol_key, self.premises)),
                _symbol_key(self.conclusion))

    def __str__(self):
        if self.is_axiom:
            return f"=> {self.conclusion}"
        prem = ", ".join(sorted(self.premises, key=_symbol_key))
        return f"{prem} => {self.conclusion}"


def axiom(p: str) -> AtomicRule:
    return AtomicRule(frozenset(), p)


def rule(premises: Iterable[str], conclusion: str) -> AtomicRule:
    return AtomicRule(frozenset(premises), conclusion)


@dataclass(frozen=True)
class AtomicSystem:
    rules: frozenset[AtomicRule] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", frozenset(self.rules))

    def symbols(self) -> frozenset[str]:
        out: set[str] = set()
        for r in self.rules:
            out |= r.symbols()
        return frozenset(out)

    def __le__(self, other: AtomicSystem) -> bool:
        return self.rules <= other.rules

    def __lt__(self, other: AtomicSystem) -> bool:
        return self.rules < other.rules

    def __or__(self, other: AtomicSystem) -> AtomicSystem:
        return AtomicSystem(self.rules | other.rules)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.sorted_rules())

    def sorted_rules(self) -> list[AtomicRule]:
        return sorted(self.rules, key=AtomicRule.sort_key)

    def render(self, elide_ex_falso: bool = False) -> str:
        shown = [r for r in self.sorted_rules()
                 if not (elide_ex_falso and r.premises == {BOT} and r.conclusion != BOT)]
        return "{" + "; ".join(map(str, shown)) + "}"


def system(*rules: AtomicRule) -> AtomicSystem:
    return AtomicSystem(frozenset(rules))


def derivable_closure(s: AtomicSystem) -> frozenset[str]:
    """Everything ``s`` derives, by worklist forward chaining."""
    waiting = {}
    watchers = defaultdict(list)
    queue = deque()
    for r in s.rules:
        if r.premises:
            waiting[r] = len(r.premises)
            for p in r.premises:
                watchers[p].append(r)
        else:
            queue.append(r.conclusion)
    derived: set[str] = set()
    while queue:
        p = queue.popleft()
        if p in derived:
            continue
        derived.add(p)
        for r in watchers[p]:
            waiting[r] -= 1
            if waiting[r] == 0:
                queue.append(r.conclusion)
    return frozenset(derived)


def derives(s: AtomicSystem, p: str) -> bool:
    return p in derivable_closure(s)


def ex_falso_rules(sig: Iterable[str]) -> frozenset[AtomicRule]:
    return frozenset(AtomicRule(frozenset({BOT}), a) for a in sig)


def ex_falso_completion(s: AtomicSystem, sig: Iterable[str]) -> AtomicSystem:
    return AtomicSystem(s.rules | ex_falso_rules(sig))


def is_ex_falso_complete(s: AtomicSystem, sig: Iterable[str]) -> bool:
    return ex_falso_rules(sig) <= s.rules


def rule_universe_size(sig: Iterable[str]) -> int:
    n = len(set(sig)) + 1
    return 2 ** n * n


def rule_universe(sig: Iterable[str], cap: int = DEFAULT_RULE_CAP) -> list[AtomicRule]:
    """Every rule whose symbols lie in ``sig`` plus bot, in canonical order."""
    symbols = sorted(set(sig) | {BOT}, key=_symbol_key)
    count = rule_universe_size(sig)
    if count > cap:
        raise CapExceeded(f"rule universe has {count} rules, cap is {cap}")
    out = []
    for k in range(len(symbols) + 1):
        for premises in itertools.combinations(symbols, k):
            for c in symbols:
                out.append(AtomicRule(frozenset(premises), c))
    return out


# --------------------------------------------------------------------------
# JSON documents: {"signature": [...], "rules": [{"premises": [...], "conclusion": ...}]}

def rule_to_json(r: AtomicRule) -> dict[str, Any]:
    return {"premises": sorted(r.premises, key=_symbol_key), "conclusion": r.conclusion}


def rule_from_json(doc: dict[str, Any]) -> AtomicRule:
    try:
        return rule(doc["premises"], doc["conclusion"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed rule {doc!r}") from exc


def system_to_json(s: AtomicSystem) -> list[dict[str, Any]]:
    return [rule_to_json(r) for r in s.sorted_rules()]


def check_signature(sig: Iterable[str]) -> frozenset[str]:
    sig = frozenset(sig)
    for a in sig:
        if a == BOT:
            raise ValueError("bot is implicit and may not be listed in a signature")
        _check_symbol(a)
    return sig


def check_system(s: AtomicSystem, sig: frozenset[str]) -> None:
    stray = s.symbols() - sig - {BOT}
    if stray:
        raise ValueError(f"rules mention atoms outside the signature: {sorted(stray)}")


def load_system(doc: dict[str, Any]) -> tuple[AtomicSystem, frozenset[str]]:
    sig = check_signature(doc.get("signature", []))
    s = AtomicSystem(frozenset(rule_from_json(r) for r in doc.get("rules", [])))
    check_system(s, sig)
    return s, sig


def dump_system(s: AtomicSystem, sig: Iterable[str]) -> dict[str, Any]:
    return {"signature": sorted(sig), "rules": system_to_json(s)}
