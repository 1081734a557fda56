"""Generic individuals-by-attributes relations and their two derived complexes.

A relation is a 0/1 incidence between individuals (rows) and attributes
(columns).  The attribute complex is generated by the rows; the association
complex by the columns.  The interpretation maps ``phi`` (attributes shared
by a set of individuals) and ``psi`` (individuals carrying a set of
attributes) compose into a closure operator, which is what powers the
release-sequence verifier: a sequence is informative when no element is in
the closure of its predecessors.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceededError, PreconditionError, RelationFormatError
from .ordering import ordered, set_key


@dataclass(frozen=True)
class Relation:
    individuals: tuple[str, ...]
    attributes: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        if not self.individuals or not self.attributes:
            raise PreconditionError("a relation needs individuals and attributes")
        rows, cols = set(self.individuals), set(self.attributes)
        for x, y in self.pairs:
            if x not in rows or y not in cols:
                raise PreconditionError(f"pair ({x!r}, {y!r}) outside the relation")

    @cached_property
    def _rows(self) -> dict[str, frozenset[str]]:
        rows: dict[str, set[str]] = {x: set() for x in self.individuals}
        for x, y in self.pairs:
            rows[x].add(y)
        return {x: frozenset(ys) for x, ys in rows.items()}

    @cached_property
    def _cols(self) -> dict[str, frozenset[str]]:
        cols: dict[str, set[str]] = {y: set() for y in self.attributes}
        for x, y in self.pairs:
            cols[y].add(x)
        return {y: frozenset(xs) for y, xs in cols.items()}

    def row(self, individual: str) -> frozenset[str]:
        try:
            return self._rows[individual]
        except KeyError:
            raise PreconditionError(f"unknown individual {individual!r}") from None

    def column(self, attribute: str) -> frozenset[str]:
        try:
            return self._cols[attribute]
        except KeyError:
            raise PreconditionError(f"unknown attribute {attribute!r}") from None


def make_relation(rows: Mapping[str, Iterable[str]],
                  attributes: Iterable[str] | None = None) -> Relation:
    """Relation from a row mapping, in canonical order."""
    attrs = set(attributes) if attributes is not None else set()
    for ys in rows.values():
        attrs.update(ys)
    pairs = frozenset((x, y) for x, ys in rows.items() for y in ys)
    return Relation(
        individuals=tuple(ordered(rows.keys())),
        attributes=tuple(ordered(attrs)),
        pairs=pairs,
    )


def phi(individuals: Iterable[str], relation: Relation) -> frozenset[str]:
    """Attributes shared by at least all the given individuals (all of them for none)."""
    subset = list(individuals)
    result = frozenset(relation.attributes)
    for x in subset:
        result &= relation.row(x)
    return result


def psi(attributes: Iterable[str], relation: Relation) -> frozenset[str]:
    """Individuals that each carry at least all the given attributes."""
    subset = list(attributes)
    result = frozenset(relation.individuals)
    for y in subset:
        result &= relation.column(y)
    return result


@dataclass(frozen=True)
class ClosureResult:
    closure: frozenset[str]
    implied: frozenset[str]


def closure(attributes: Iterable[str], relation: Relation) -> ClosureResult:
    """phi∘psi of an attribute set, plus the attributes newly inferable from it."""
    gamma = frozenset(attributes)
    closed = phi(psi(gamma, relation), relation)
    return ClosureResult(closure=closed, implied=closed - gamma)


@dataclass(frozen=True)
class IarsResult:
    ok: bool
    failure_index: int | None  # 1-based position of the first inferable element

    def __bool__(self) -> bool:
        return self.ok


def is_iars(sequence: Sequence[str], relation: Relation) -> IarsResult:
    """Check that no element of the sequence is inferable from its predecessors.

    The empty prefix infers exactly the attributes every individual carries,
    so the first element must not be "free".  Duplicates and unknown
    attributes are rejected outright.
    """
    if not sequence:
        raise PreconditionError("empty release sequence")
    seen: set[str] = set()
    for y in sequence:
        if y not in relation._cols:
            raise PreconditionError(f"unknown attribute {y!r}")
        if y in seen:
            raise PreconditionError(f"duplicate attribute {y!r} in sequence")
        seen.add(y)
    released: list[str] = []
    for position, y in enumerate(sequence, start=1):
        if y in closure(released, relation).closure:
            return IarsResult(ok=False, failure_index=position)
        released.append(y)
    return IarsResult(ok=True, failure_index=None)


def is_identifiable(individual: str, relation: Relation) -> bool:
    """True when no other individual's attributes include all of this one's."""
    return psi(relation.row(individual), relation) == frozenset({individual})


def maximal_simplices(relation: Relation) -> tuple[frozenset[str], ...]:
    """Inclusion-maximal distinct rows, in canonical order."""
    rows = {relation.row(x) for x in relation.individuals}
    maximal = [r for r in rows if not any(r < other for other in rows)]
    return tuple(sorted(maximal, key=set_key))


@dataclass(frozen=True)
class FaceReport:
    free_faces: tuple[frozenset[str], ...]
    minimal_nonfaces: tuple[frozenset[str], ...]
    cone_apexes: tuple[str, ...]


def face_classification(relation: Relation, max_subsets: int = 1 << 20) -> FaceReport:
    """Free faces, minimal nonfaces and cone apexes of the attribute complex.

    A free face is a proper subset of exactly one maximal simplex; a cone
    apex is an attribute present in every maximal simplex; a minimal nonface
    is not contained in any row while all its proper subsets are.
    """
    attrs = relation.attributes
    if 1 << len(attrs) > max_subsets:
        raise BudgetExceededError(
            f"face classification over {len(attrs)} attributes exceeds the subset budget")
    maximal = maximal_simplices(relation)

    free: list[frozenset[str]] = []
    nonfaces: list[frozenset[str]] = []
    for size in range(len(attrs) + 1):
        for combo in combinations(attrs, size):
            gamma = frozenset(combo)
            holders = [m for m in maximal if gamma <= m]
            if holders:
                if len(holders) == 1 and gamma != holders[0]:
                    free.append(gamma)
            else:
                if all(any(gamma - {y} <= m for m in maximal) for y in gamma):
                    nonfaces.append(gamma)
    apexes = [y for y in attrs if all(y in m for m in maximal)]
    return FaceReport(
        free_faces=tuple(sorted(free, key=set_key)),
        minimal_nonfaces=tuple(sorted(nonfaces, key=set_key)),
        cone_apexes=tuple(apexes),
    )


# --- CSV ingestion/serialization --------------------------------------------

GOAL_COLUMN = "goal"


def read_relation_csv(text: str) -> tuple[Relation, dict[str, frozenset[str]] | None]:
    """Read a relation CSV: header = attributes, first column = row key.

    A trailing ``goal`` column is optional; when present its ``+``-joined
    state sets are returned alongside the relation.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise RelationFormatError("empty relation document") from None
    if len(header) < 2:
        raise RelationFormatError("a relation needs a key column and attributes")
    has_goal = header[-1].strip() == GOAL_COLUMN
    attributes = [h.strip() for h in (header[1:-1] if has_goal else header[1:])]
    if any(not a for a in attributes):
        raise RelationFormatError("blank attribute name in header")
    rows: dict[str, set[str]] = {}
    goals: dict[str, frozenset[str]] = {}
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not cell.strip() for cell in record):
            continue
        expected = len(attributes) + 1 + (1 if has_goal else 0)
        if len(record) != expected:
            raise RelationFormatError(f"line {lineno}: expected {expected} cells")
        key = record[0].strip()
        if not key or key in rows:
            raise RelationFormatError(f"line {lineno}: missing or duplicate row key")
        cells = record[1:-1] if has_goal else record[1:]
        marked = set()
        for attr, cell in zip(attributes, cells):
            cell = cell.strip()
            if cell == "1":
                marked.add(attr)
            elif cell:
                raise RelationFormatError(f"line {lineno}: cell must be '1' or empty")
        rows[key] = marked
        if has_goal:
            goal = record[-1].strip()
            goals[key] = frozenset(goal.split("+")) if goal else frozenset()
    if not rows:
        raise RelationFormatError("relation has no rows")
    relation = Relation(
        individuals=tuple(ordered(rows.keys())),
        attributes=tuple(ordered(attributes)),
        pairs=frozenset((x, y) for x, ys in rows.items() for y in ys),
    )
    return relation, (goals if has_goal else None)


def write_relation_csv(
    relation: Relation,
    goals: Mapping[str, Iterable[str]] | None = None,
    key_header: str = "individual",
) -> str:
    """Canonical CSV form; bit-exact across platforms (sorted, \\n endings)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = [key_header, *relation.attributes]
    if goals is not None:
        header.append(GOAL_COLUMN)
    writer.writerow(header)
    for x in relation.individuals:
        row = relation.row(x)
        record = [x] + ["1" if y in row else "" for y in relation.attributes]
        if goals is not None:
            record.append("+".join(ordered(goals[x])))
        writer.writerow(record)
    return out.getvalue()
