"""Randomised cross-checking of the Kripke and proof-theoretic semantics.

Each trial draws a random finite model and a random formula, translates the
model into a proof-theoretic system and checks, at every world:

* the model really is a partial order with a monotone valuation;
* the translation is intuitionistic and embeds the order (distinctness,
  order implies inclusion, inclusion implies order);
* no translated system derives bot, and each derives exactly its axioms;
* both forcing relations agree on the formula and all its subformulas;
* forcing persists upward on both sides;
* the prover never proves a formula the countermodel search refutes.

Trials are generated from ``(seed, index)`` alone, so a failing trial can
be replayed in isolation.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Iterator, Optional

from gptv.atomic import derivable_closure
from gptv.bridge import spurious_bottom, translate_model, verify_order_embedding
from gptv.formula import BOT as FALSUM
from gptv.formula import And, Atom, Formula, Imp, Or, atoms_of, render_formula, subformulas
from gptv.kripke import (
    AntisymmetryError,
    KripkeModel,
    countermodel_search,
    dump_model,
    kripke_extension,
    kripke_forces,
)
from gptv.prover import ipc_provable
from gptv.pts import pts_extension

ATOM_NAMES = ("p", "q", "r", "s", "t", "u")

CHECKS = (
    "model is a partial order with monotone valuation",
    "translation is intuitionistic",
    "distinct worlds give distinct systems",
    "order implies inclusion",
    "inclusion implies order",
    "no system derives bot",
    "systems derive exactly their axioms",
    "forcing agrees at every world",
    "kripke forcing persists",
    "pts forcing persists",
    "prover and countermodel search agree",
)


@dataclass(frozen=True)
class SelftestConfig:
    seed: int = 1
    trials: int = 1000
    max_worlds: int = 4
    max_atoms: int = 3
    max_depth: int = 5
    bot_weight: float = 1.0
    edge_probability: float = 0.4
    atom_probability: float = 0.3
    check_prover: bool = True
    drop_labels: bool = False  # test hook: corrupts the translation on purpose

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        for name in ("max_worlds", "max_atoms", "max_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_atoms > len(ATOM_NAMES):
            raise ValueError(f"at most {len(ATOM_NAMES)} atoms are supported")
        if self.bot_weight <= 0:
            raise ValueError("bot_weight must be positive")


def random_model(rng: random.Random, max_worlds: int, atoms: tuple[str, ...],
                 edge_probability: float = 0.4, atom_probability: float = 0.3) -> KripkeModel:
    """A random DAG, closed into a partial order, with an upward-closed valuation."""
    while True:
        n = rng.randint(1, max_worlds)
        worlds = tuple(f"w{i}" for i in range(n))
        rank = rng.sample(range(n), n)
        pairs = {(worlds[a], worlds[b]) for a in range(n) for b in range(n)
                 if rank[a] < rank[b] and rng.random() < edge_probability}
        try:
            frame = KripkeModel(worlds, frozenset(pairs), {})
        except AntisymmetryError:
            continue
        seeds = {w: {p for p in atoms if rng.random() < atom_probability} for w in worlds}
        valuation = {w: frozenset().union(*(seeds[v] for v in worlds if frame.leq(v, w)))
                     for w in worlds}
        return KripkeModel(worlds, frame.order, valuation, frozenset(atoms))


def random_formula(rng: random.Random, atoms: tuple[str, ...], max_depth: int,
                   bot_weight: float = 1.0) -> Formula:
    shapes = ("atom", "bot", "and", "or", "imp")
    weights = (1.0, bot_weight, 1.0, 1.0, 1.0)
    leaf_weights = (1.0, bot_weight)
    shape = rng.choices(shapes if max_depth > 0 else shapes[:2],
                        weights if max_depth > 0 else leaf_weights)[0]
    if shape == "atom":
        return Atom(rng.choice(atoms))
    if shape == "bot":
        return FALSUM
    node = {"and": And, "or": Or, "imp": Imp}[shape]
    return node(random_formula(rng, atoms, max_depth - 1, bot_weight),
                random_formula(rng, atoms, max_depth - 1, bot_weight))


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"gptv-selftest/{seed}/{index}")


def draw_trial(cfg: SelftestConfig, index: int) -> tuple[KripkeModel, Formula]:
    rng = trial_rng(cfg.seed, index)
    atoms = ATOM_NAMES[:rng.randint(1, cfg.max_atoms)]
    model = random_model(rng, cfg.max_worlds, atoms, cfg.edge_probability,
                         cfg.atom_probability)
    formula = random_formula(rng, atoms, rng.randint(0, cfg.max_depth), cfg.bot_weight)
    return model, formula


def trial_stream(cfg: SelftestConfig) -> Iterator[tuple[int, KripkeModel, Formula]]:
    for i in range(cfg.trials):
        model, formula = draw_trial(cfg, i)
        yield i, model, formula


def _is_partial_order(m: KripkeModel) -> bool:
    w = m.worlds
    refl = all((a, a) in m.order for a in w)
    trans = all((a, c) in m.order for a, b in m.order for b2, c in m.order if b == b2)
    anti = all(a == b for a, b in m.order if (b, a) in m.order)
    mono = all(m.valuation[a] <= m.valuation[b] for a, b in m.order)
    return refl and trans and anti and mono


def _up_closed(mask: int, ups: list[int]) -> bool:
    return all(not (mask >> i & 1) or (up & ~mask) == 0 for i, up in enumerate(ups))


def check_trial(model: KripkeModel, formula: Formula, cfg: SelftestConfig) -> dict[str, bool]:
    """Outcome of every check in ``CHECKS`` on one (model, formula) pair."""
    out = dict.fromkeys(CHECKS, True)
    out[CHECKS[0]] = _is_partial_order(model)

    t = translate_model(model, atoms_of(formula), label_rules=not cfg.drop_labels)
    report = verify_order_embedding(model, t)
    out["translation is intuitionistic"] = report.intuitionistic
    out["distinct worlds give distinct systems"] = not report.collapsed
    out["order implies inclusion"] = not report.not_included
    out["inclusion implies order"] = not report.spurious_inclusion
    out["no system derives bot"] = not spurious_bottom(t)

    user = t.pts.signature - {a for a in t.pts.signature if a.startswith("@")}
    exact = True
    for w in model.worlds:
        derived = derivable_closure(t.systems[w]) & user
        if derived != model.valuation[w]:
            exact = False
    out["systems derive exactly their axioms"] = exact

    kmemo: dict = {}
    pmemo: dict = {}
    kripke_extension(model, formula, kmemo)
    pts_extension(t.pts, formula, pmemo)
    member_ups = list(t.pts.supersets)
    world_ups = [model.up_mask(w) for w in model.worlds]
    for g in set(subformulas(formula)):
        k, p = kmemo[g], pmemo[g]
        for i, w in enumerate(model.worlds):
            if bool(k >> i & 1) != bool(p >> t.world_map[w] & 1):
                out["forcing agrees at every world"] = False
        if not _up_closed(k, world_ups):
            out["kripke forcing persists"] = False
        if not _up_closed(p, member_ups):
            out["pts forcing persists"] = False

    if cfg.check_prover:
        found = countermodel_search(formula, cfg.max_worlds)
        if found is not None:
            cm, root = found
            if kripke_forces(cm, root, formula) or ipc_provable(formula):
                out["prover and countermodel search agree"] = False
    return out


@dataclass
class SelftestReport:
    config: SelftestConfig
    passed: dict[str, int] = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    failed: dict[str, int] = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    first_failure: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failed.values())

    def record(self, index: int, model: KripkeModel, formula: Formula,
               outcome: dict[str, bool]) -> None:
        for name, good in outcome.items():
            if good:
                self.passed[name] += 1
            else:
                self.failed[name] += 1
                self.first_failure.setdefault(name, {
                    "seed": self.config.seed,
                    "trial": index,
                    "formula": render_formula(formula),
                    "model": dump_model(model),
                })

    def render_text(self) -> str:
        cfg = self.config
        lines = [f"selftest seed={cfg.seed} trials={cfg.trials} max_worlds={cfg.max_worlds} "
                 f"max_atoms={cfg.max_atoms} max_depth={cfg.max_depth}"]
        for name in CHECKS:
            total = self.passed[name] + self.failed[name]
            status = "FAIL" if self.failed[name] else "PASS"
            lines.append(f"{status} {name}: {self.passed[name]}/{total}")
        for name, where in self.first_failure.items():
            lines.append(f"counterexample for '{name}': seed {where['seed']} trial {where['trial']} "
                         f"formula {where['formula']} model {json.dumps(where['model'], sort_keys=True)}")
        lines.append("all checks passed" if self.ok else "FAILURES FOUND")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "config": asdict(self.config),
            "ok": self.ok,
            "checks": {name: {"passed": self.passed[name], "failed": self.failed[name]}
                       for name in CHECKS},
            "counterexamples": self.first_failure,
        }


def run_selftest(cfg: SelftestConfig, report: Optional[SelftestReport] = None) -> SelftestReport:
    report = report if report is not None else SelftestReport(cfg)
    for i, model, formula in trial_stream(cfg):
        report.record(i, model, formula, check_trial(model, formula, cfg))
    return report
