"""Resolution steps, multi-antecedent resolution via the clauses product,
FIFO closure saturation, and the antecedent/consequent linkage check.

A valid resolution has exactly one joint variable: zero joints means the
clauses do not connect, two or more make every consequent tautological.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .core import (
    DEFAULT_ENUM_CAP,
    AssignmentSet,
    Clause,
    Formula,
    Literal,
    ScopeError,
    countermodels,
    varkey,
)
from .product import clauses_product

#: Default closure database cap; truncation is an explicit result, never an error.
DEFAULT_CLOSURE_CAP = 100_000


class ResolutionError(ValueError):
    pass


class NotConnectedError(ResolutionError):
    """The clauses share no joint variable."""


class TautologyError(ResolutionError):
    """Two or more joint variables (or residual complements) force a tautology."""


def joint_variables(c1: Clause, c2: Clause) -> tuple[str, ...]:
    """Variables occurring positively in one clause and negatively in the other."""
    joints = {
        l.var for l in c1.literals if l.complement() in c2.literals
    }
    return tuple(sorted(joints, key=varkey))


def resolve(c1: Clause, c2: Clause) -> Clause:
    """Resolve two clauses connected by exactly one joint variable."""
    joints = joint_variables(c1, c2)
    if not joints:
        raise NotConnectedError(f"no joint variable between {c1} and {c2}")
    if len(joints) > 1:
        raise TautologyError(
            f"{len(joints)} joint variables between {c1} and {c2}; "
            f"the consequent would be a tautology"
        )
    var = joints[0]
    out = Clause((c1.literals | c2.literals) - {Literal(var, True), Literal(var, False)})
    if out.is_tautological:
        raise TautologyError(f"residual complementary pair resolving {c1} and {c2}")
    return out


@dataclass(frozen=True)
class ResolutionStep:
    """An aggregated resolution on one joint variable.

    ``consequents`` is the clauses product of the antecedents with the joint
    variable removed; tautological products are excluded from it and listed
    in ``dropped_tautologies``.
    """

    positive_antecedents: tuple[Clause, ...]
    negative_antecedents: tuple[Clause, ...]
    joint_var: str
    consequents: tuple[Clause, ...]
    dropped_tautologies: tuple[Clause, ...]


def multi_resolve(
    pos: Iterable[Clause],
    neg: Iterable[Clause],
    var: str,
) -> ResolutionStep:
    """Aggregate all resolutions on ``var``: consequents are the clauses
    product of the positive and negative antecedents minus the joint pair."""
    pos = tuple(pos)
    neg = tuple(neg)
    p_lit, n_lit = Literal(var, True), Literal(var, False)
    for c in pos:
        if p_lit not in c.literals:
            raise ResolutionError(f"positive antecedent {c} lacks {var}")
    for c in neg:
        if n_lit not in c.literals:
            raise ResolutionError(f"negative antecedent {c} lacks ~{var}")
    product = clauses_product(
        [c.without_var(var) for c in pos], [c.without_var(var) for c in neg]
    )
    keep = tuple(c for c in product if not c.is_tautological)
    dropped = tuple(c for c in product if c.is_tautological)
    return ResolutionStep(pos, neg, var, keep, dropped)


@dataclass(frozen=True)
class ClosureStep:
    """One pairwise resolution inside a closure, by clause index."""

    positive: int
    negative: int
    joint_var: str
    consequent: int


@dataclass(frozen=True)
class Closure:
    """Saturated clause database with its derivation log.

    ``clauses`` holds the deduplicated database in derivation order; input
    tautologies are dropped (counted in ``dropped_tautologies``) and duplicate
    inputs merge onto one node (``aliases`` maps input positions to nodes,
    -1 for dropped tautologies).
    """

    clauses: tuple[Clause, ...]
    steps: tuple[ClosureStep, ...]
    refuted: bool
    truncated: bool
    dropped_tautologies: int
    aliases: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.clauses)


def closure(f: Formula, max_clauses: int = DEFAULT_CLOSURE_CAP) -> Closure:
    """Saturate under pairwise resolution, FIFO over clause pairs.

    Stops at the fixpoint, or returns a partial result with ``truncated``
    set once the database would exceed ``max_clauses``.
    """
    order = f.sorted_scope()
    index = {v: i for i, v in enumerate(order)}

    def encode(c: Clause) -> frozenset[int]:
        return frozenset((index[l.var] << 1) | (1 if l.positive else 0) for l in c.literals)

    def decode(codes: frozenset[int]) -> Clause:
        return Clause(frozenset(Literal(order[x >> 1], bool(x & 1)) for x in codes))

    db: list[frozenset[int]] = []
    where: dict[frozenset[int], int] = {}
    aliases: list[int] = []
    dropped = 0
    for c in f.clauses:
        if c.is_tautological:
            dropped += 1
            aliases.append(-1)
            continue
        codes = encode(c)
        if codes not in where:
            where[codes] = len(db)
            db.append(codes)
        aliases.append(where[codes])

    steps: list[ClosureStep] = []
    truncated = False
    i = 0
    while i < len(db):
        a = db[i]
        flipped_a = frozenset(x ^ 1 for x in a)
        for j in range(i):
            b = db[j]
            joint_codes = flipped_a & b
            if len(joint_codes) != 1:
                dropped += len(joint_codes) > 1
                continue
            code = next(iter(joint_codes))
            # code is b's literal on the joint variable
            resolvent = (a | b) - {code, code ^ 1}
            if resolvent not in where:
                if len(db) >= max_clauses:
                    truncated = True
                    break
                where[resolvent] = len(db)
                db.append(resolvent)
            pos_idx, neg_idx = (j, i) if code & 1 else (i, j)
            steps.append(
                ClosureStep(pos_idx, neg_idx, order[code >> 1], where[resolvent])
            )
        if truncated:
            break
        i += 1

    clauses = tuple(decode(c) for c in db)
    refuted = any(not c for c in db)
    return Closure(clauses, tuple(steps), refuted, truncated, dropped, tuple(aliases))


def replay(f: Formula, steps: tuple[ClosureStep, ...]) -> tuple[Clause, ...]:
    """Re-execute a derivation log against the formula's deduplicated inputs."""
    db: list[Clause] = []
    seen: set[Clause] = set()
    for c in f.clauses:
        if not c.is_tautological and c not in seen:
            seen.add(c)
            db.append(c)
    for s in steps:
        derived = resolve(db[s.positive], db[s.negative])
        if derived not in seen:
            seen.add(derived)
            db.append(derived)
        if db.index(derived) != s.consequent:
            raise ResolutionError(
                f"replayed step lands on clause {db.index(derived)}, log says {s.consequent}"
            )
    return tuple(db)


@dataclass(frozen=True)
class LinkageVerdict:
    """Enumeration evidence that a consequent's falsifier set bridges the
    falsifier sets of its antecedents across the joint variable."""

    holds: bool
    consequent: Clause
    region: AssignmentSet
    positive_side: AssignmentSet
    negative_side: AssignmentSet
    component_count: int
    covers_region: bool
    sides_adjacent: bool


def linkage_check(
    f: Formula, c1: Clause, c2: Clause, max_vars: int = DEFAULT_ENUM_CAP
) -> LinkageVerdict:
    """Check, over f.scope, that countermodels of resolve(c1, c2) equal the
    countermodels of the antecedents restricted to the region falsifying all
    non-joint literals, and that the two sides connect at Hamming distance 1."""
    missing = (c1.variables | c2.variables) - f.scope
    if missing:
        raise ScopeError(f"clauses mention variables outside scope: {sorted(missing)}")
    consequent = resolve(c1, c2)
    var = joint_variables(c1, c2)[0]

    def falsifiers(c: Clause) -> AssignmentSet:
        return countermodels(Formula((c,), f.scope), max_vars)

    region = falsifiers(consequent)
    falsify_1 = falsifiers(c1)
    falsify_2 = falsifiers(c2)
    pos_side = falsify_1.intersection(region) if Literal(var, True) in c1.literals else falsify_2.intersection(region)
    neg_side = falsify_2.intersection(region) if Literal(var, True) in c1.literals else falsify_1.intersection(region)
    covers = falsify_1.union(falsify_2).intersection(region).masks == region.masks
    comps = region.components()
    pos_masks = set(pos_side.masks)
    flip = 1 << region.scope.index(var) if var in region.scope else 0
    adjacent = bool(pos_masks) and bool(neg_side.masks) and all(
        (m ^ flip) in pos_masks for m in neg_side.masks
    )
    holds = covers and len(comps) == 1 and adjacent
    return LinkageVerdict(
        holds=holds,
        consequent=consequent,
        region=region,
        positive_side=pos_side,
        negative_side=neg_side,
        component_count=len(comps),
        covers_region=covers,
        sides_adjacent=adjacent,
    )
