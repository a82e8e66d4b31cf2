"""Propositional formulas over atoms, bot, &, | and ->.

Negation is sugar: ``~A`` is stored as ``A -> bot``.

Grammar, tightest binding first::

    ~        prefix
    &        left associative
    |        left associative
    ->       right associative

Atoms match ``[a-z][a-zA-Z0-9_]*``; ``bot`` (or ``⊥``) is falsum.  Names
starting with ``@`` are reserved for world labels and never parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Union

ATOM_PATTERN = re.compile(r"[a-z][a-zA-Z0-9_]*")
LABEL_PREFIX = "@"
BOT_NAME = "bot"


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ReservedAtomError(FormulaSyntaxError):
    pass


class Formula:
    """Base class of the formula AST.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return render_formula(self)


def _cache_hash(node, key) -> None:
    object.__setattr__(node, "_hash", hash(key))


@dataclass(frozen=True, eq=True, repr=False)
class Atom(Formula):
    name: str
    _hash: int = field(init=False, compare=False, repr=False)
    _atoms: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.name == BOT_NAME:
            raise ValueError("'bot' is a keyword, not an atom name")
        if not (ATOM_PATTERN.fullmatch(self.name) or is_label(self.name)):
            raise ValueError(f"invalid atom name {self.name!r}")
        _cache_hash(self, ("atom", self.name))
        object.__setattr__(self, "_atoms", frozenset((self.name,)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Bottom(Formula):
    _hash: int = field(init=False, compare=False, repr=False)
    _atoms: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _cache_hash(self, ("bot",))
        object.__setattr__(self, "_atoms", frozenset())

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "BOT"


@dataclass(frozen=True, eq=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, repr=False)
    _atoms: Optional[frozenset] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _cache_hash(self, (type(self).__name__, self.left, self.right))
        object.__setattr__(self, "_atoms", None)  # filled in by atoms_of

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(_Binary):
    __hash__ = _Binary.__hash__


class Or(_Binary):
    __hash__ = _Binary.__hash__


class Imp(_Binary):
    __hash__ = _Binary.__hash__


BOT = Bottom()

# A Substitution maps atom names (or Atom nodes) to replacement formulas.
Substitution = Mapping[Union[str, Atom], Formula]


def is_label(name: str) -> bool:
    return name.startswith(LABEL_PREFIX) and len(name) > 1


def neg(f: Formula) -> Formula:
    return Imp(f, BOT)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<imp>->|→)
  | (?P<and>&|∧)
  | (?P<or>\||∨)
  | (?P<not>~|¬)
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<bot>⊥)
  | (?P<label>@[A-Za-z0-9_]*)
  | (?P<ident>[a-z][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "label":
            raise ReservedAtomError(f"reserved atom name {m.group()!r}", pos, text)
        if kind == "ident" and m.group() == BOT_NAME:
            kind = "bot"
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise FormulaSyntaxError(f"expected {kind}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "imp":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "or":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "and":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, pos = self.tokens[self.i]
        if kind == "not":
            self.i += 1
            return Imp(self.unary(), BOT)
        if kind == "lp":
            self.i += 1
            f = self.formula()
            self.take("rp")
            return f
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "ident":
            self.i += 1
            return Atom(value)
        what = repr(value) if kind != "eof" else "end of input"
        raise FormulaSyntaxError(f"expected a formula, found {what}", pos, self.text)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula; raises FormulaSyntaxError."""
    p = _Parser(text)
    f = p.formula()
    p.take("eof")
    return f


# --------------------------------------------------------------------------
# rendering

_PREC = {Imp: 1, Or: 2, And: 3}
_ASCII = {Imp: "->", Or: "|", And: "&", "not": "~", "bot": "bot"}
_UNICODE = {Imp: "→", Or: "∨", And: "∧", "not": "¬", "bot": "⊥"}


def _prec(f: Formula) -> int:
    if isinstance(f, Imp) and f.right == BOT:
        return 4
    return _PREC.get(type(f), 5)


def render_formula(f: Formula, unicode: bool = False) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    sym = _UNICODE if unicode else _ASCII

    def go(f: Formula) -> str:
        if isinstance(f, Atom):
            return f.name
        if isinstance(f, Bottom):
            return sym["bot"]
        if isinstance(f, Imp) and f.right == BOT:
            inner = go(f.left)
            return sym["not"] + (inner if _prec(f.left) >= 4 else f"({inner})")
        p = _PREC[type(f)]
        left, right = go(f.left), go(f.right)
        # -> groups to the right, & and | to the left
        if isinstance(f, Imp):
            left_tight, right_tight = p + 1, p
        else:
            left_tight, right_tight = p, p + 1
        if _prec(f.left) < left_tight:
            left = f"({left})"
        if _prec(f.right) < right_tight:
            right = f"({right})"
        return f"{left} {sym[type(f)]} {right}"

    return go(f)


# --------------------------------------------------------------------------
# traversal and substitution

def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk; children come before their parent."""
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded or not isinstance(node, _Binary):
            yield node
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))


def atoms_of(f: Formula) -> frozenset[str]:
    if f._atoms is None:
        # only nodes not seen before are visited; results are cached on the nodes
        stack = [(f, False)]
        while stack:
            node, expanded = stack.pop()
            if node._atoms is not None:
                continue
            if expanded:
                object.__setattr__(node, "_atoms", node.left._atoms | node.right._atoms)
            else:
                stack += [(node, True), (node.right, False), (node.left, False)]
    return f._atoms


def depth(f: Formula) -> int:
    """Connective nesting depth; atoms and bot have depth 0."""
    if isinstance(f, _Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def _substitution_table(s: Substitution) -> dict[str, Formula]:
    table = {}
    for key, value in s.items():
        name = key.name if isinstance(key, Atom) else key
        if is_label(name) or any(is_label(a) for a in atoms_of(value)):
            raise ValueError("substitutions may not mention label atoms")
        table[name] = value
    return table


def apply_substitution(f: Formula, s: Substitution) -> Formula:
    """Simultaneously replace each atom in the domain of ``s``."""
    table = _substitution_table(s)
    if not table:
        return f
    done: dict[Formula, Formula] = {}
    for node in subformulas(f):
        if node in done:
            continue
        if isinstance(node, Atom):
            done[node] = table.get(node.name, node)
        elif isinstance(node, _Binary):
            done[node] = type(node)(done[node.left], done[node.right])
        else:
            done[node] = node
    return done[f]


def compose_substitutions(s1: Substitution, s2: Substitution) -> dict[str, Formula]:
    """The substitution equivalent to applying ``s1`` and then ``s2``."""
    t1, t2 = _substitution_table(s1), _substitution_table(s2)
    out = {name: apply_substitution(value, t2) for name, value in t1.items()}
    for name, value in t2.items():
        out.setdefault(name, value)
    return out
