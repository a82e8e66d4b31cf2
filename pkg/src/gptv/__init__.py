"""Generalised proof-theoretic validity: atomic rule systems, proof-theoretic
forcing, intuitionistic Kripke semantics, and the translation between them."""

from gptv.atomic import (
    BOT,
    AtomicRule,
    AtomicSystem,
    axiom,
    derivable_closure,
    derives,
    ex_falso_completion,
    is_ex_falso_complete,
    rule,
    rule_universe,
)
from gptv.bridge import (
    TranslationResult,
    translate_model,
    verify_equivalence,
    verify_order_embedding,
)
from gptv.formula import (
    And,
    Atom,
    Bottom,
    Formula,
    Imp,
    Or,
    apply_substitution,
    atoms_of,
    parse_formula,
    render_formula,
)
from gptv.kripke import KripkeModel, countermodel_search, kripke_forces, kripke_valid, load_model
from gptv.prover import decide, ipc_provable
from gptv.pts import (
    ProofTheoreticSystem,
    goldfarb_pts,
    is_intuitionistic_pts,
    pts_forces,
    pts_valid,
)
from gptv.validity import gptv_check
from gptv.verdict import Refuted, Unknown, Valid

__version__ = "0.1.0"

__all__ = [
    "BOT",
    "AtomicRule",
    "AtomicSystem",
    "axiom",
    "derivable_closure",
    "derives",
    "ex_falso_completion",
    "is_ex_falso_complete",
    "rule",
    "rule_universe",
    "TranslationResult",
    "translate_model",
    "verify_equivalence",
    "verify_order_embedding",
    "And",
    "Atom",
    "Bottom",
    "Formula",
    "Imp",
    "Or",
    "apply_substitution",
    "atoms_of",
    "parse_formula",
    "render_formula",
    "KripkeModel",
    "countermodel_search",
    "kripke_forces",
    "kripke_valid",
    "load_model",
    "decide",
    "ipc_provable",
    "ProofTheoreticSystem",
    "goldfarb_pts",
    "is_intuitionistic_pts",
    "pts_forces",
    "pts_valid",
    "gptv_check",
    "Refuted",
    "Unknown",
    "Valid",
]
