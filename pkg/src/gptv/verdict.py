"""Outcomes of a validity check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from gptv.kripke import KripkeModel
from gptv.pts import ProofTheoreticSystem


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True, eq=False)
class Refuted:
    """A countermodel, plus its translation when one has been built.

    ``member`` indexes the member of ``pts`` that corresponds to ``world``.
    """

    model: KripkeModel
    world: str
    pts: Optional[ProofTheoreticSystem] = None
    member: Optional[int] = None


@dataclass(frozen=True)
class Unknown:
    reason: str
    suspicious: bool = False


Verdict = Union[Valid, Refuted, Unknown]
