"""Core CNF data model: literals, clauses, formulas, assignments, and the
exhaustive-enumeration operations everything else audits against.

Every value here is immutable after construction and safe to share between
threads.  Enumeration order, clause serialization, and variable order are all
canonical so that downstream reports are byte-reproducible.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

#: Largest scope exhaustive enumeration will accept unless overridden.
DEFAULT_ENUM_CAP = 24

#: Reserved base name used when minting auxiliary variables.
AUX_BASE = "y"


class ScopeError(ValueError):
    """An assignment or projection does not line up with the required scope."""


class MembershipError(ValueError):
    """A clause was expected to occur in a formula but does not."""


class EnumerationLimit(RuntimeError):
    """Scope exceeds the enumeration cap; raised instead of silently truncating."""

    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"enumeration over {needed} variables exceeds the cap of {cap}; "
            f"raise max_vars to allow it"
        )
        self.needed = needed
        self.cap = cap


def varkey(name: str) -> tuple[int, str]:
    """Canonical variable order: shortlex, so x2 < x10 and P < PQ."""
    return (len(name), name)


@dataclass(frozen=True, slots=True)
class Literal:
    """A polarity-tagged variable occurrence."""

    var: str
    positive: bool = True

    def complement(self) -> Literal:
        return Literal(self.var, not self.positive)

    def __invert__(self) -> Literal:
        return self.complement()

    def key(self) -> tuple[tuple[int, str], bool]:
        return (varkey(self.var), self.positive)

    def __str__(self) -> str:
        return self.var if self.positive else "~" + self.var


def lit(spec: str | Literal) -> Literal:
    """Parse ``"P"`` / ``"~P"`` into a literal; literals pass through."""
    if isinstance(spec, Literal):
        return spec
    name = spec.strip()
    if name.startswith("~"):
        name = name[1:].strip()
        if not name:
            raise ValueError(f"no variable name in literal spec {spec!r}")
        return Literal(name, False)
    if not name:
        raise ValueError(f"no variable name in literal spec {spec!r}")
    return Literal(name, True)


def pos(var: str) -> Literal:
    return Literal(var, True)


def neg(var: str) -> Literal:
    return Literal(var, False)


@dataclass(frozen=True, slots=True)
class Clause:
    """A disjunction of literals, stored as a set (no duplicate literals).

    A clause containing both x and ~x is representable and flagged
    tautological; the empty clause is representable and unsatisfiable.
    """

    literals: frozenset[Literal]

    @classmethod
    def of(cls, *lits: str | Literal) -> Clause:
        return cls(frozenset(lit(x) for x in lits))

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_tautological(self) -> bool:
        positive = {l.var for l in self.literals if l.positive}
        negative = {l.var for l in self.literals if not l.positive}
        return bool(positive & negative)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(l.var for l in self.literals)

    @property
    def width(self) -> int:
        """Number of distinct variables mentioned by the clause."""
        return len(self.variables)

    def sorted_literals(self) -> tuple[Literal, ...]:
        return tuple(sorted(self.literals, key=Literal.key))

    def key(self) -> tuple:
        return (len(self.literals), tuple(l.key() for l in self.sorted_literals()))

    def name(self) -> str:
        """Canonical serialization, e.g. ``"P|~q"``; used as an indicator-variable name."""
        return "|".join(str(l) for l in self.sorted_literals())

    def union(self, other: Clause) -> Clause:
        return Clause(self.literals | other.literals)

    def without_var(self, var: str) -> Clause:
        return Clause(frozenset(l for l in self.literals if l.var != var))

    def issubset(self, other: Clause) -> bool:
        return self.literals <= other.literals

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.literals

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if self.is_empty:
            return "⊥"
        return "(" + " ∨ ".join(
            (l.var if l.positive else "¬" + l.var) for l in self.sorted_literals()
        ) + ")"


EMPTY_CLAUSE = Clause(frozenset())


def clause(spec: str | Iterable[str | Literal] | Clause) -> Clause:
    """Build a clause from ``"P ~Q"``, an iterable of literal specs, or pass through."""
    if isinstance(spec, Clause):
        return spec
    if isinstance(spec, str):
        parts = spec.split()
        return Clause(frozenset(lit(p) for p in parts))
    return Clause(frozenset(lit(p) for p in spec))


@dataclass(frozen=True, slots=True)
class Formula:
    """An ordered multiset of clauses over an explicit variable scope.

    The scope must contain every mentioned variable and may be larger, so
    model counts over a fixed scope stay comparable across formulas.
    The empty formula is valid (true).
    """

    clauses: tuple[Clause, ...]
    scope: frozenset[str]

    def __post_init__(self) -> None:
        mentioned = frozenset(v for c in self.clauses for v in c.variables)
        if not mentioned <= self.scope:
            missing = sorted(mentioned - self.scope, key=varkey)
            raise ScopeError(f"scope is missing mentioned variables: {missing}")

    @classmethod
    def of(
        cls,
        clauses: Iterable[str | Iterable | Clause],
        scope: Iterable[str] | None = None,
    ) -> Formula:
        cs = tuple(clause(c) for c in clauses)
        mentioned = frozenset(v for c in cs for v in c.variables)
        full = mentioned if scope is None else mentioned | frozenset(scope)
        return cls(cs, full)

    @property
    def size(self) -> int:
        return len(self.clauses)

    @property
    def clause_set(self) -> frozenset[Clause]:
        return frozenset(self.clauses)

    def sorted_scope(self) -> tuple[str, ...]:
        return tuple(sorted(self.scope, key=varkey))

    def with_scope(self, extra: Iterable[str]) -> Formula:
        return Formula(self.clauses, self.scope | frozenset(extra))

    def __str__(self) -> str:
        if not self.clauses:
            return "⊤"
        return " ∧ ".join(str(c) for c in self.clauses)


@dataclass(frozen=True, slots=True)
class Assignment:
    """Total truth-value map over a scope; bit i of ``bits`` is scope[i]."""

    scope: tuple[str, ...]
    bits: int

    @classmethod
    def from_dict(cls, values: Mapping[str, bool]) -> Assignment:
        order = tuple(sorted(values, key=varkey))
        bits = 0
        for i, v in enumerate(order):
            if values[v]:
                bits |= 1 << i
        return cls(order, bits)

    def value(self, var: str) -> bool:
        try:
            return bool(self.bits >> self.scope.index(var) & 1)
        except ValueError:
            raise ScopeError(f"variable {var!r} is outside the assignment scope") from None

    __getitem__ = value

    def as_dict(self) -> dict[str, bool]:
        return {v: bool(self.bits >> i & 1) for i, v in enumerate(self.scope)}

    def satisfies(self, literal: Literal) -> bool:
        return self.value(literal.var) == literal.positive

    def restrict(self, variables: Iterable[str]) -> Assignment:
        keep = sorted(set(variables), key=varkey)
        outside = [v for v in keep if v not in self.scope]
        if outside:
            raise ScopeError(f"variables outside scope: {outside}")
        bits = 0
        for i, v in enumerate(keep):
            if self.value(v):
                bits |= 1 << i
        return Assignment(tuple(keep), bits)

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(len(self.scope)))


def hamming(a: Assignment, b: Assignment) -> int:
    """Number of variables on which two same-scope assignments differ."""
    if a.scope != b.scope:
        raise ScopeError("hamming distance needs identical scopes")
    return (a.bits ^ b.bits).bit_count()


@dataclass(frozen=True, slots=True)
class AssignmentSet:
    """A set of assignments sharing one scope, in canonical (mask-sorted) order."""

    scope: tuple[str, ...]
    masks: tuple[int, ...]

    @classmethod
    def from_masks(cls, scope: Iterable[str], masks: Iterable[int]) -> AssignmentSet:
        return cls(tuple(sorted(set(scope), key=varkey)), tuple(sorted(set(masks))))

    @classmethod
    def of(cls, assignments: Iterable[Assignment]) -> AssignmentSet:
        assignments = list(assignments)
        if not assignments:
            raise ValueError("cannot infer a scope from zero assignments; use from_masks")
        scope = assignments[0].scope
        for a in assignments:
            if a.scope != scope:
                raise ScopeError("assignments do not share one scope")
        return cls(scope, tuple(sorted({a.bits for a in assignments})))

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        for m in self.masks:
            yield Assignment(self.scope, m)

    def __contains__(self, a: Assignment) -> bool:
        return a.scope == self.scope and a.bits in set(self.masks)

    def union(self, other: AssignmentSet) -> AssignmentSet:
        if other.scope != self.scope:
            raise ScopeError("set union needs identical scopes")
        return AssignmentSet(self.scope, tuple(sorted(set(self.masks) | set(other.masks))))

    def intersection(self, other: AssignmentSet) -> AssignmentSet:
        if other.scope != self.scope:
            raise ScopeError("set intersection needs identical scopes")
        return AssignmentSet(self.scope, tuple(sorted(set(self.masks) & set(other.masks))))

    def issubset(self, other: AssignmentSet) -> bool:
        return self.scope == other.scope and set(self.masks) <= set(other.masks)

    def project(self, variables: Iterable[str]) -> AssignmentSet:
        """Restrict every member to ``variables`` and deduplicate."""
        keep = sorted(set(variables), key=varkey)
        positions = []
        for v in keep:
            if v not in self.scope:
                raise ScopeError(f"projection variable {v!r} outside scope")
            positions.append(self.scope.index(v))
        projected = set()
        for m in self.masks:
            bits = 0
            for i, p in enumerate(positions):
                if m >> p & 1:
                    bits |= 1 << i
            projected.add(bits)
        return AssignmentSet(tuple(keep), tuple(sorted(projected)))

    def components(self) -> list[AssignmentSet]:
        """Partition under Hamming-distance-1 adjacency, ordered by smallest member."""
        remaining = set(self.masks)
        member = set(self.masks)
        out = []
        while remaining:
            seed = min(remaining)
            comp = {seed}
            frontier = [seed]
            remaining.discard(seed)
            while frontier:
                m = frontier.pop()
                for i in range(len(self.scope)):
                    n = m ^ (1 << i)
                    if n in member and n not in comp:
                        comp.add(n)
                        remaining.discard(n)
                        frontier.append(n)
            out.append(AssignmentSet(self.scope, tuple(sorted(comp))))
        return out


def project(s: AssignmentSet, variables: Iterable[str]) -> AssignmentSet:
    return s.project(variables)


def components(s: AssignmentSet) -> list[AssignmentSet]:
    return s.components()


# -- evaluation and exhaustive enumeration ----------------------------------

def _clause_masks(f: Formula, order: tuple[str, ...]) -> list[tuple[int, int]]:
    index = {v: i for i, v in enumerate(order)}
    out = []
    for c in f.clauses:
        p = n = 0
        for l in c.literals:
            if l.positive:
                p |= 1 << index[l.var]
            else:
                n |= 1 << index[l.var]
        out.append((p, n))
    return out


def evaluate(f: Formula, a: Assignment) -> bool:
    """True iff every clause has a true literal under ``a`` (total over f.scope)."""
    have = set(a.scope)
    missing = [v for v in f.scope if v not in have]
    if missing:
        raise ScopeError(
            f"assignment is not total over the formula scope; missing {sorted(missing, key=varkey)}"
        )
    for c in f.clauses:
        if not any(a.satisfies(l) for l in c.literals):
            return False
    return True


def _enumerate_masks(
    f: Formula, want_models: bool, max_vars: int
) -> tuple[tuple[str, ...], list[int]]:
    order = f.sorted_scope()
    n = len(order)
    if n > max_vars:
        raise EnumerationLimit(n, max_vars)
    masks = _clause_masks(f, order)
    full = (1 << n) - 1
    hit = []
    for m in range(1 << n):
        inv = m ^ full
        ok = True
        for p, neg_mask in masks:
            if not (m & p or inv & neg_mask):
                ok = False
                break
        if ok == want_models:
            hit.append(m)
    return order, hit


def models(f: Formula, max_vars: int = DEFAULT_ENUM_CAP) -> AssignmentSet:
    """All satisfying assignments over f.scope, canonically ordered."""
    order, hit = _enumerate_masks(f, True, max_vars)
    return AssignmentSet(order, tuple(hit))


def countermodels(f: Formula, max_vars: int = DEFAULT_ENUM_CAP) -> AssignmentSet:
    """All falsifying assignments over f.scope; complements models(f)."""
    order, hit = _enumerate_masks(f, False, max_vars)
    return AssignmentSet(order, tuple(hit))


def exclusive_falsifiers(
    f: Formula, c: Clause, max_vars: int = DEFAULT_ENUM_CAP
) -> AssignmentSet:
    """Assignments that falsify the occurrence of ``c`` and satisfy every other
    clause occurrence of the formula.

    Duplicate occurrences of ``c`` make the set empty: falsifying one
    occurrence falsifies the duplicate too.
    """
    try:
        target = f.clauses.index(c)
    except ValueError:
        raise MembershipError(f"clause {c} is not in the formula") from None
    order = f.sorted_scope()
    n = len(order)
    if n > max_vars:
        raise EnumerationLimit(n, max_vars)
    masks = _clause_masks(f, order)
    full = (1 << n) - 1
    hit = []
    for m in range(1 << n):
        inv = m ^ full
        p, neg_mask = masks[target]
        if m & p or inv & neg_mask:
            continue
        ok = True
        for i, (pp, nn) in enumerate(masks):
            if i == target:
                continue
            if not (m & pp or inv & nn):
                ok = False
                break
        if ok:
            hit.append(m)
    return AssignmentSet(order, tuple(hit))


# -- fragment classification and implication rendering ----------------------

def _render_literal(l: Literal) -> str:
    return l.var if l.positive else "¬" + l.var


def implication_rendering(c: Clause) -> str:
    """Render a clause in the implication form natural for its fragment.

    Horn clauses render as ``p ∧ q → r`` (all-negative ones point at ⊥),
    binary clauses as ``¬P → Q``, and wider clauses move every literal but
    the last into a negated antecedent conjunction.
    """
    if c.is_empty:
        return "⊥"
    lits = c.sorted_literals()
    positives = [l for l in lits if l.positive]
    if len(positives) <= 1:  # Horn shape
        body = [_render_literal(l.complement()) for l in lits if not l.positive]
        head = _render_literal(positives[0]) if positives else "⊥"
        if not body:
            return head
        return " ∧ ".join(body) + " → " + head
    body = [_render_literal(l.complement()) for l in lits[:-1]]
    return " ∧ ".join(body) + " → " + _render_literal(lits[-1])


@dataclass(frozen=True, slots=True)
class ClauseShape:
    clause: Clause
    in_3cnf: bool
    in_horn: bool
    in_2cnf: bool
    implication: str


@dataclass(frozen=True, slots=True)
class FragmentReport:
    is_3cnf: bool
    is_horn: bool
    is_2cnf: bool
    shapes: tuple[ClauseShape, ...]


def classify_clause(c: Clause) -> ClauseShape:
    positives = sum(1 for l in c.literals if l.positive)
    return ClauseShape(
        clause=c,
        in_3cnf=len(c.literals) <= 3,
        in_horn=positives <= 1,
        in_2cnf=len(c.literals) <= 2,
        implication=implication_rendering(c),
    )


def classify_fragment(f: Formula) -> FragmentReport:
    """Per-clause fragment flags plus an implication rendering for each clause."""
    shapes = tuple(classify_clause(c) for c in f.clauses)
    return FragmentReport(
        is_3cnf=all(s.in_3cnf for s in shapes),
        is_horn=all(s.in_horn for s in shapes),
        is_2cnf=all(s.in_2cnf for s in shapes),
        shapes=shapes,
    )


def is_horn(f: Formula) -> bool:
    return all(sum(1 for l in c.literals if l.positive) <= 1 for c in f.clauses)


# -- clause splitting to width <= 3 -----------------------------------------

def fresh_names(taken: Iterable[str], count: int, base: str = AUX_BASE) -> list[str]:
    """Mint ``count`` names ``base0..`` from a namespace disjoint from ``taken``."""
    used = set(taken)
    prefix = base
    while any(f"{prefix}{i}" in used for i in range(count)):
        prefix = "_" + prefix
    return [f"{prefix}{i}" for i in range(count)]


def _split_order(c: Clause) -> tuple[Literal, ...]:
    # A lone positive literal leads the chain so Horn inputs stay Horn.
    lits = c.sorted_literals()
    positives = [l for l in lits if l.positive]
    negatives = [l for l in lits if not l.positive]
    if len(positives) == 1:
        return tuple(positives + negatives)
    return lits


def to_3cnf(f: Formula) -> Formula:
    """Equisatisfiable formula with every clause at most 3 literals wide.

    Wide clauses split into a chain over fresh auxiliaries: (L1 ∨ L2 ∨ ¬y0),
    (y0 ∨ L3 ∨ ¬y1), ..., closed by a unit clause forcing the final auxiliary.
    The closing unit keeps the chain from admitting spurious models of the
    auxiliary tail and preserves Horn-ness for Horn inputs.
    """
    wide = [c for c in f.clauses if len(c.literals) > 3]
    needed = sum(len(c.literals) - 1 for c in wide)
    aux = fresh_names(f.scope, needed)
    out: list[Clause] = []
    k = 0
    for c in f.clauses:
        if len(c.literals) <= 3:
            out.append(c)
            continue
        lits = _split_order(c)
        names = aux[k : k + len(lits) - 1]
        k += len(lits) - 1
        out.append(Clause(frozenset({lits[0], lits[1], neg(names[0])})))
        for t in range(1, len(lits) - 1):
            out.append(Clause(frozenset({pos(names[t - 1]), lits[t + 1], neg(names[t])})))
        out.append(Clause(frozenset({pos(names[len(lits) - 2])})))
    return Formula(tuple(out), f.scope | frozenset(aux[:k]))
