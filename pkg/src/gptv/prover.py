"""Decision procedure for intuitionistic propositional logic.

Proof search in Dyckhoff's contraction-free sequent calculus G4ip.  The
left implication rule is split by the shape of the implication's
antecedent, which makes every backward rule application shrink the sequent
in a well-founded order, so search terminates without loop checking.
Invertible rules are applied eagerly; only right disjunction and the
``(C -> D) -> B`` left rule are branch points.
"""

from __future__ import annotations

import logging
import threading

from gptv.formula import BOT, And, Atom, Bottom, Formula, Imp, Or, render_formula
from gptv.kripke import countermodel_search
from gptv.verdict import Refuted, Unknown, Valid, Verdict

log = logging.getLogger(__name__)

_MEMO_LIMIT = 1 << 20
_memo: dict[tuple[frozenset, Formula], bool] = {}
_memo_lock = threading.Lock()

Context = tuple  # tuple[Formula, ...], duplicate free, oldest first


def _extend(ctx: Context, *formulas: Formula) -> Context:
    out = list(ctx)
    for f in formulas:
        if f not in out:
            out.append(f)
    return tuple(out)


def _prove(ctx: Context, goal: Formula) -> bool:
    key = (frozenset(ctx), goal)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    result = _prove_uncached(ctx, goal)
    with _memo_lock:
        if len(_memo) >= _MEMO_LIMIT:
            _memo.clear()
        _memo[key] = result
    return result


def _prove_uncached(ctx: Context, goal: Formula) -> bool:
    present = set(ctx)
    if BOT in present or goal in present:
        return True

    # invertible left rules, leftmost principal formula first
    for i, f in enumerate(ctx):
        rest = ctx[:i] + ctx[i + 1:]
        if isinstance(f, And):
            return _prove(_extend(rest, f.left, f.right), goal)
        if isinstance(f, Or):
            return (_prove(_extend(rest, f.left), goal)
                    and _prove(_extend(rest, f.right), goal))
        if isinstance(f, Imp):
            a, b = f.left, f.right
            if isinstance(a, Bottom):
                return _prove(rest, goal)
            if isinstance(a, Atom) and a in present:
                return _prove(_extend(rest, b), goal)
            if isinstance(a, And):
                return _prove(_extend(rest, Imp(a.left, Imp(a.right, b))), goal)
            if isinstance(a, Or):
                return _prove(_extend(rest, Imp(a.left, b), Imp(a.right, b)), goal)

    # invertible right rules
    if isinstance(goal, And):
        return _prove(ctx, goal.left) and _prove(ctx, goal.right)
    if isinstance(goal, Imp):
        return _prove(_extend(ctx, goal.left), goal.right)

    # branch points
    if isinstance(goal, Or):
        if _prove(ctx, goal.left) or _prove(ctx, goal.right):
            return True
    for i, f in enumerate(ctx):
        if isinstance(f, Imp) and isinstance(f.left, Imp):
            d, b = f.left.right, f.right
            rest = ctx[:i] + ctx[i + 1:]
            if _prove(_extend(rest, Imp(d, b)), f.left) and _prove(_extend(rest, b), goal):
                return True
    return False


def prove_sequent(antecedent, succedent: Formula) -> bool:
    """Whether ``antecedent => succedent`` is derivable."""
    return _prove(_extend((), *antecedent), succedent)


def ipc_provable(f: Formula) -> bool:
    return _prove((), f)


def clear_cache() -> None:
    with _memo_lock:
        _memo.clear()


def decide(f: Formula, max_worlds: int = 5) -> Verdict:
    """Valid, or Refuted with a Kripke countermodel of at most ``max_worlds`` worlds."""
    if ipc_provable(f):
        return Valid()
    found = countermodel_search(f, max_worlds)
    if found is not None:
        model, world = found
        return Refuted(model, world)
    log.warning("unprovable but no countermodel within %d worlds: %s",
                max_worlds, render_formula(f))
    return Unknown(f"no proof, and no countermodel with at most {max_worlds} worlds",
                   suspicious=True)
