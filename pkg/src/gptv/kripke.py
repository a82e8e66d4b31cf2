"""Finite intuitionistic Kripke models, forcing, and bounded countermodel search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Optional

import numpy as np

from gptv.formula import ATOM_PATTERN, And, Atom, Bottom, Formula, Imp, Or, atoms_of, subformulas

MAX_SEARCH_WORLDS = 6
MAX_BANK_POINTS = 4_000_000


class ModelError(ValueError):
    pass


class AntisymmetryError(ModelError):
    def __init__(self, a: str, b: str):
        self.worlds = (a, b)
        super().__init__(f"order is not antisymmetric: {a!r} and {b!r} lie on a cycle")


class MonotonicityError(ModelError):
    def __init__(self, a: str, b: str, atoms: Iterable[str]):
        self.worlds = (a, b)
        self.atoms = sorted(atoms)
        super().__init__(f"valuation is not monotone along {a!r} <= {b!r}: "
                         f"{', '.join(self.atoms)} true at {a!r} but not at {b!r}")


class UnknownWorldError(ModelError, KeyError):
    def __init__(self, w: str):
        self.worlds = (w,)
        ValueError.__init__(self, f"unknown world {w!r}")

    def __str__(self):
        return self.args[0]


class SearchCapExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """A finite partial order of worlds with a monotone valuation.

    ``order`` may be given as any set of pairs; it is closed reflexively and
    transitively, then checked.  ``atoms`` optionally declares atoms that
    hold nowhere in the model, so they still belong to its vocabulary.
    """

    worlds: tuple[str, ...]
    order: frozenset[tuple[str, str]]
    valuation: Mapping[str, frozenset[str]]
    atoms: frozenset[str] = frozenset()
    _index: dict[str, int] = field(init=False, repr=False)
    _up: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world names")
        index = {w: i for i, w in enumerate(worlds)}
        n = len(worlds)
        up = [1 << i for i in range(n)]
        for a, b in self.order:
            for w in (a, b):
                if w not in index:
                    raise UnknownWorldError(w)
            up[index[a]] |= 1 << index[b]
        # transitive closure, Warshall style on bit rows
        for k in range(n):
            for i in range(n):
                if up[i] >> k & 1:
                    up[i] |= up[k]
        for i in range(n):
            for j in range(i + 1, n):
                if up[i] >> j & 1 and up[j] >> i & 1:
                    raise AntisymmetryError(worlds[i], worlds[j])
        valuation = {w: frozenset() for w in worlds}
        for w, props in self.valuation.items():
            if w not in index:
                raise UnknownWorldError(w)
            props = frozenset(props)
            for p in props:
                if not ATOM_PATTERN.fullmatch(p) or p == "bot":
                    raise ModelError(f"invalid atom {p!r} in valuation of {w!r}")
            valuation[w] = props
        for i, a in enumerate(worlds):
            for j, b in enumerate(worlds):
                if i != j and up[i] >> j & 1:
                    missing = valuation[a] - valuation[b]
                    if missing:
                        raise MonotonicityError(a, b, missing)
        atoms = frozenset(self.atoms).union(*valuation.values())
        order = frozenset((worlds[i], worlds[j]) for i in range(n) for j in range(n)
                          if up[i] >> j & 1)
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_up", tuple(up))

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return (self.worlds == other.worlds and self.order == other.order
                and self.valuation == other.valuation and self.atoms == other.atoms)

    __hash__ = None

    def __len__(self):
        return len(self.worlds)

    def index(self, w: str) -> int:
        try:
            return self._index[w]
        except KeyError:
            raise UnknownWorldError(w) from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self._up[self.index(a)] >> self.index(b) & 1)

    def up_mask(self, w: str) -> int:
        return self._up[self.index(w)]

    def successors(self, w: str) -> list[str]:
        mask = self.up_mask(w)
        return [v for i, v in enumerate(self.worlds) if mask >> i & 1]

    def covering_pairs(self) -> list[tuple[str, str]]:
        """The Hasse diagram edges, which regenerate the order under closure."""
        out = []
        for a, b in sorted(self.order):
            if a == b:
                continue
            between = any(c not in (a, b) and (a, c) in self.order and (c, b) in self.order
                          for c in self.worlds)
            if not between:
                out.append((a, b))
        return out

    @property
    def everything(self) -> int:
        return (1 << len(self.worlds)) - 1


def load_model(doc: Mapping[str, Any]) -> KripkeModel:
    """Build a model from ``{"worlds": [...], "order": [[a, b], ...], "valuation": {...}}``."""
    try:
        worlds = list(doc["worlds"])
    except (KeyError, TypeError):
        raise ModelError("model document needs a 'worlds' list") from None
    pairs = []
    for pair in doc.get("order", []):
        if len(pair) != 2:
            raise ModelError(f"order entry {pair!r} is not a pair")
        pairs.append((pair[0], pair[1]))
    return KripkeModel(tuple(worlds), frozenset(pairs), dict(doc.get("valuation", {})),
                       frozenset(doc.get("atoms", [])))


def dump_model(m: KripkeModel) -> dict[str, Any]:
    doc = {
        "worlds": list(m.worlds),
        "order": [list(p) for p in m.covering_pairs()],
        "valuation": {w: sorted(m.valuation[w]) for w in m.worlds},
    }
    unused = m.atoms.difference(*m.valuation.values())
    if unused:
        doc["atoms"] = sorted(m.atoms)
    return doc


def kripke_extension(m: KripkeModel, f: Formula,
                     memo: Optional[dict[Formula, int]] = None) -> int:
    """Bitmask over ``m.worlds`` of the worlds forcing ``f``."""
    memo = {} if memo is None else memo
    n = len(m.worlds)
    for node in subformulas(f):
        if node in memo:
            continue
        if isinstance(node, Atom):
            value = 0
            for i, w in enumerate(m.worlds):
                if node.name in m.valuation[w]:
                    value |= 1 << i
        elif isinstance(node, Bottom):
            value = 0
        elif isinstance(node, And):
            value = memo[node.left] & memo[node.right]
        elif isinstance(node, Or):
            value = memo[node.left] | memo[node.right]
        elif isinstance(node, Imp):
            bad = memo[node.left] & ~memo[node.right]
            value = 0
            for i in range(n):
                if not m._up[i] & bad:
                    value |= 1 << i
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[node] = value
    return memo[f]


def kripke_forces(m: KripkeModel, w: str, f: Formula) -> bool:
    return bool(kripke_extension(m, f) >> m.index(w) & 1)


def kripke_valid(m: KripkeModel, f: Formula) -> bool:
    return kripke_extension(m, f) == m.everything


# --------------------------------------------------------------------------
# enumeration of rooted frames and valuations

def _popcount(x: int) -> int:
    return bin(x).count("1")


def _permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << j
    return out


def _code(up: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    new = [0] * len(up)
    for i, j in enumerate(perm):
        new[j] = _permute_mask(up[i], perm)
    return tuple(new)


def _root_fixing_perms(n: int):
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


@lru_cache(maxsize=None)
def rooted_frames(n: int) -> tuple[tuple[int, ...], ...]:
    """Partial orders on ``range(n)`` with least element 0, one per isomorphism class.

    Each frame is a tuple of up-set bitmasks.  Frames are listed in
    increasing order of their canonical code.
    """
    if n < 1:
        return ()
    labelled = [(1,)]
    for k in range(1, n):
        grown = []
        for up in labelled:
            # the strict down-set of the new maximal element k is any nonempty down-closed set
            for below in range(1, 1 << k):
                if all(not (below >> i & 1) or _down_closed(up, i, below) for i in range(k)):
                    new = tuple(u | (1 << k) if below >> i & 1 else u for i, u in enumerate(up))
                    grown.append(new + (1 << k,))
        labelled = grown
    canon = set()
    for up in labelled:
        canon.add(min(_code(up, p) for p in _root_fixing_perms(n)))
    return tuple(sorted(canon))


def _down_closed(up: tuple[int, ...], i: int, below: int) -> bool:
    # everything under i must be in `below`
    return all(below >> j & 1 for j in range(len(up)) if up[j] >> i & 1)


@lru_cache(maxsize=None)
def _automorphisms(up: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in _root_fixing_perms(len(up)) if _code(up, p) == up)


@lru_cache(maxsize=None)
def up_sets(up: tuple[int, ...]) -> tuple[int, ...]:
    """Upward-closed subsets of a frame, smallest first."""
    n = len(up)
    found = [x for x in range(1 << n)
             if all(not (x >> i & 1) or (up[i] & ~x) == 0 for i in range(n))]
    return tuple(sorted(found, key=lambda x: (_popcount(x), x)))


def frame_valuations(up: tuple[int, ...], k: int):
    """Monotone valuations of ``k`` atoms on a frame, one per automorphism orbit."""
    autos = [p for p in _automorphisms(up) if p != tuple(range(len(up)))]
    for val in itertools.product(up_sets(up), repeat=k):
        if all(val <= tuple(_permute_mask(x, p) for x in val) for p in autos):
            yield val


def _frame_model(up: tuple[int, ...], atoms: tuple[str, ...], val: tuple[int, ...]) -> KripkeModel:
    n = len(up)
    worlds = tuple(f"w{i}" for i in range(n))
    pairs = frozenset((worlds[i], worlds[j]) for i in range(n) for j in range(n)
                      if i != j and up[i] >> j & 1)
    valuation = {w: frozenset(a for a, x in zip(atoms, val) if x >> i & 1)
                 for i, w in enumerate(worlds)}
    return KripkeModel(worlds, pairs, valuation, frozenset(atoms))


def _unevaluated(f: Formula, memo: dict) -> Iterator[Formula]:
    """Post-order walk over the subformulas of ``f`` that are not yet in ``memo``.

    The caller must store each yielded node before asking for the next one.
    """
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if node in memo:
            continue
        if expanded or not isinstance(node, (And, Or, Imp)):
            yield node
        else:
            stack += [(node, True), (node.right, False), (node.left, False)]


class ModelBank:
    """Every rooted model with exactly ``n`` worlds over ``k`` atoms, evaluated in bulk.

    The models are laid side by side as one big model whose points are
    numbered ``component * n + world``, so a formula is evaluated over all of
    them with a handful of array operations.
    """

    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self.frames = []
        self.components = []
        for f_id, up in enumerate(rooted_frames(n)):
            self.frames.append(up)
            for val in frame_valuations(up, k):
                self.components.append((f_id, val))
                if len(self.components) * n > MAX_BANK_POINTS:
                    raise SearchCapExceeded(
                        f"more than {MAX_BANK_POINTS} points for {k} atoms and {n} worlds")
        c = len(self.components)
        self.size = c * n
        succ = np.empty((c, n, n), dtype=np.int64)
        truth = np.zeros((k, c, n), dtype=bool)
        for ci, (f_id, val) in enumerate(self.components):
            up = self.frames[f_id]
            for i in range(n):
                members = [j for j in range(n) if up[i] >> j & 1]
                members += [i] * (n - len(members))
                succ[ci, i] = [ci * n + j for j in members]
                for a in range(k):
                    truth[a, ci, i] = bool(val[a] >> i & 1)
        self.succ = succ.reshape(c * n, n)
        self.truth = truth.reshape(k, c * n)
        self.roots = np.arange(c) * n
        self._models: dict[tuple[int, tuple[str, ...]], KripkeModel] = {}

    def extension(self, f: Formula, atoms: tuple[str, ...],
                  memo: Optional[dict[Formula, np.ndarray]] = None) -> np.ndarray:
        memo = {} if memo is None else memo
        slot = {a: i for i, a in enumerate(atoms)}
        for node in _unevaluated(f, memo):
            if isinstance(node, Atom):
                if node.name in slot:
                    value = self.truth[slot[node.name]]
                else:
                    value = np.zeros(self.size, dtype=bool)
            elif isinstance(node, Bottom):
                value = np.zeros(self.size, dtype=bool)
            elif isinstance(node, And):
                value = memo[node.left] & memo[node.right]
            elif isinstance(node, Or):
                value = memo[node.left] | memo[node.right]
            elif isinstance(node, Imp):
                bad = memo[node.left] & ~memo[node.right]
                value = ~bad[self.succ].any(axis=1)
            else:
                raise TypeError(f"not a formula: {node!r}")
            memo[node] = value
        return memo[f]

    def first_failure(self, f: Formula, atoms: tuple[str, ...],
                      memo: Optional[dict[Formula, np.ndarray]] = None) -> Optional[int]:
        """Index of the first component whose root does not force ``f``."""
        if not self.components:
            return None
        at_roots = self.extension(f, atoms, memo)[self.roots]
        if at_roots.all():
            return None
        failing = np.flatnonzero(~at_roots)
        return int(failing[0]) if failing.size else None

    def model(self, component: int, atoms: tuple[str, ...]) -> KripkeModel:
        """The model of one component; repeated calls return the same object."""
        key = (component, atoms)
        if key not in self._models:
            f_id, val = self.components[component]
            self._models[key] = _frame_model(self.frames[f_id], atoms, val)
        return self._models[key]


@lru_cache(maxsize=64)
def model_bank(k: int, n: int) -> ModelBank:
    return ModelBank(k, n)


def countermodel_search(f: Formula, max_worlds: int,
                        atoms: Optional[Iterable[str]] = None,
                        memo: Optional[dict[int, dict]] = None) -> Optional[tuple[KripkeModel, str]]:
    """Smallest rooted model (up to isomorphism) whose root fails to force ``f``.

    Sizes are tried from one world upward, so the witness has as few worlds
    as possible; among models of that size the first in the canonical
    enumeration order is returned.

    ``memo`` maps a world count to evaluated subformulas and may be shared
    between calls over the same atoms; ``f`` itself is never kept in it.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be positive")
    if max_worlds > MAX_SEARCH_WORLDS:
        raise SearchCapExceeded(f"max_worlds {max_worlds} exceeds cap {MAX_SEARCH_WORLDS}")
    names = tuple(sorted(atoms_of(f) if atoms is None else set(atoms) | atoms_of(f)))

    def failure(n):
        bank = model_bank(len(names), n)
        if memo is None:
            return bank, bank.first_failure(f, names)
        table = memo.setdefault(n, {})
        kept = f in table
        hit = bank.first_failure(f, names, table)
        if not kept:
            table.pop(f, None)
        return bank, hit

    # Padding a root from below with a copy of itself changes nothing it
    # forces, so when no model of exactly max_worlds worlds refutes f, no
    # smaller model does.  Checking that size right after the one-world models
    # settles most unrefutable formulas with two bank evaluations.
    for n in range(1, max_worlds + 1):
        if n == 2 and max_worlds > 2 and failure(max_worlds)[1] is None:
            return None
        bank, hit = failure(n)
        if hit is not None:
            m = bank.model(hit, names)
            return m, m.worlds[0]
    return None
