"""Interactive reveal sessions over a relation.

A session tracks an ordered, duplicate-free list of revealed attributes and
derives everything else fresh on each step: the consistent individuals, the
inferable attributes, a per-reveal informative flag, and an inconsistency
flag (no individual carries all revealed attributes) that doubles as a
deception-detection signal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import PreconditionError
from .ordering import joined, ordered
from .relations import Relation, closure, psi


@dataclass(frozen=True)
class RevealSession:
    relation: Relation
    revealed: tuple[str, ...] = ()
    goals: Mapping[str, frozenset[str]] | None = field(default=None)

    @classmethod
    def start(cls, relation: Relation,
              goals: Mapping[str, frozenset[str]] | None = None) -> "RevealSession":
        return cls(relation=relation, revealed=(), goals=goals)

    def reveal(self, attribute: str) -> "RevealSession":
        if attribute not in self.relation.attributes:
            raise PreconditionError(f"unknown attribute {attribute!r}")
        if attribute in self.revealed:
            raise PreconditionError(f"attribute {attribute!r} already revealed")
        return RevealSession(relation=self.relation,
                             revealed=self.revealed + (attribute,),
                             goals=self.goals)

    def consistent(self) -> tuple[str, ...]:
        """Individuals that carry everything revealed so far."""
        members = psi(self.revealed, self.relation)
        return tuple(x for x in self.relation.individuals if x in members)

    def implied(self) -> tuple[str, ...]:
        return tuple(ordered(closure(self.revealed, self.relation).implied))

    def informative_flags(self) -> tuple[bool, ...]:
        flags: list[bool] = []
        prefix: list[str] = []
        for y in self.revealed:
            flags.append(y not in closure(prefix, self.relation).closure)
            prefix.append(y)
        return tuple(flags)

    def inconsistent(self) -> bool:
        return not self.consistent()

    def goal_candidates(self) -> tuple[str, ...]:
        """Goal set of each consistent row (when rows carry goals)."""
        if self.goals is None:
            return ()
        return tuple(joined(self.goals.get(x, frozenset())) for x in self.consistent())

    def view(self) -> dict:
        return {
            "revealed": list(self.revealed),
            "consistent": list(self.consistent()),
            "implied": list(self.implied()),
            "informative": list(self.informative_flags()),
            "inconsistent": self.inconsistent(),
            "goal_candidates": list(self.goal_candidates()),
        }
