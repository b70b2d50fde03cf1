"""Independent ground truth: a deterministic DPLL solver, exact model
counting, and deletion-based minimal-unsatisfiable-core machinery.

Everything here is deliberately simple — no clause learning, no heuristics —
so verdicts stay auditable and reproducible byte-for-byte.  Branching always
takes the lowest variable in canonical order and tries false first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_ENUM_CAP,
    Assignment,
    Clause,
    EnumerationLimit,
    Formula,
    ScopeError,
    varkey,
)


@dataclass(frozen=True, slots=True)
class SolveResult:
    status: str  # "sat" | "unsat"
    witness: Assignment | None
    decisions: int
    propagations: int

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


def _encode(f: Formula) -> tuple[tuple[str, ...], list[frozenset[int]]]:
    """Literal code: var_index << 1 | polarity.  Tautologies drop out."""
    order = f.sorted_scope()
    index = {v: i for i, v in enumerate(order)}
    clauses = []
    for c in f.clauses:
        codes = frozenset(
            (index[l.var] << 1) | (1 if l.positive else 0) for l in c.literals
        )
        if any(code ^ 1 in codes for code in codes):
            continue
        clauses.append(codes)
    return order, clauses


def _simplify(clauses: list[frozenset[int]], code: int) -> list[frozenset[int]] | None:
    """Assert literal ``code`` true; None signals an empty clause."""
    out = []
    for c in clauses:
        if code in c:
            continue
        if code ^ 1 in c:
            c = c - {code ^ 1}
            if not c:
                return None
        out.append(c)
    return out


class _Stats:
    __slots__ = ("decisions", "propagations")

    def __init__(self) -> None:
        self.decisions = 0
        self.propagations = 0


def _dpll(clauses: list[frozenset[int]], assignment: dict[int, bool], stats: _Stats) -> bool:
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        code = next(iter(unit))
        assignment[code >> 1] = bool(code & 1)
        stats.propagations += 1
        clauses = _simplify(clauses, code)
        if clauses is None:
            return False
    if not clauses:
        return True
    free = sorted({code >> 1 for c in clauses for code in c} - assignment.keys())
    var = free[0]
    stats.decisions += 1
    for value in (False, True):
        trial = dict(assignment)
        trial[var] = value
        narrowed = _simplify(clauses, (var << 1) | value)
        if narrowed is not None and _dpll(narrowed, trial, stats):
            assignment.clear()
            assignment.update(trial)
            return True
    return False


def dpll(f: Formula) -> SolveResult:
    """Decide satisfiability; SAT results carry a total witness assignment."""
    order, clauses = _encode(f)
    if any(not c for c in clauses):
        return SolveResult("unsat", None, 0, 0)
    assignment: dict[int, bool] = {}
    stats = _Stats()
    if _dpll(clauses, assignment, stats):
        bits = 0
        for i in range(len(order)):
            if assignment.get(i, False):  # untouched variables complete to false
                bits |= 1 << i
        return SolveResult("sat", Assignment(order, bits), stats.decisions, stats.propagations)
    return SolveResult("unsat", None, stats.decisions, stats.propagations)


def _count(clauses: list[frozenset[int]], free: int) -> int:
    if any(not c for c in clauses):
        return 0
    if not clauses:
        return 1 << free
    var = min(code >> 1 for c in clauses for code in c)
    total = 0
    for value in (False, True):
        narrowed = _simplify(clauses, (var << 1) | value)
        if narrowed is not None:
            total += _count(narrowed, free - 1)
    return total


def count_models(
    f: Formula,
    projection: list[str] | None = None,
    max_vars: int = DEFAULT_ENUM_CAP,
) -> int:
    """Exact model count over f.scope, optionally of the projection onto
    ``projection`` (counting projected assignments extendable to a model)."""
    n = len(f.scope)
    if n > max_vars:
        raise EnumerationLimit(n, max_vars)
    order, clauses = _encode(f)
    if projection is None:
        return _count(clauses, n)
    keep = sorted(set(projection), key=varkey)
    outside = [v for v in keep if v not in f.scope]
    if outside:
        raise ScopeError(f"projection variables outside scope: {outside}")
    index = {v: i for i, v in enumerate(order)}
    positions = [index[v] for v in keep]
    count = 0
    for m in range(1 << len(keep)):
        narrowed: list[frozenset[int]] | None = clauses
        for i, p in enumerate(positions):
            narrowed = _simplify(narrowed, (p << 1) | (m >> i & 1))
            if narrowed is None:
                break
        if narrowed is None:
            continue
        probe: dict[int, bool] = {}
        if _dpll(narrowed, probe, _Stats()):
            count += 1
    return count


@dataclass(frozen=True, slots=True)
class MucVerdict:
    """Outcome of a minimality check; ``complete`` is false if the call budget ran out."""

    is_muc: bool | None
    unsatisfiable: bool
    critical: tuple[bool | None, ...]
    complete: bool

    def __bool__(self) -> bool:
        return self.is_muc is True


def is_muc(f: Formula, max_checks: int | None = None) -> MucVerdict:
    """True iff f is unsatisfiable and every single-clause deletion is satisfiable."""
    budget = max_checks if max_checks is not None else f.size + 1
    if budget < 1:
        return MucVerdict(None, False, (None,) * f.size, False)
    budget -= 1
    if dpll(f).is_sat:
        return MucVerdict(False, False, (None,) * f.size, True)
    critical: list[bool | None] = []
    for i in range(f.size):
        if budget < 1:
            critical.extend([None] * (f.size - i))
            return MucVerdict(None, True, tuple(critical), False)
        budget -= 1
        rest = f.clauses[:i] + f.clauses[i + 1 :]
        critical.append(dpll(Formula(rest, f.scope)).is_sat)
    return MucVerdict(all(critical), True, tuple(critical), True)


def muc_extract(f: Formula) -> Formula:
    """Deletion-based core extraction, clause indices ascending; requires unsat input."""
    if dpll(f).is_sat:
        raise ValueError("core extraction needs an unsatisfiable formula")
    work = list(f.clauses)
    i = 0
    while i < len(work):
        trial = work[:i] + work[i + 1 :]
        if dpll(Formula(tuple(trial), f.scope)).is_sat:
            i += 1
        else:
            work = trial
    return Formula(tuple(work), f.scope)
