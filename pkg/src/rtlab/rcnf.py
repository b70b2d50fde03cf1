"""Horn encodings of resolution structure over clause-indicator variables.

``rcnf_of`` encodes the saturated closure of a formula: one indicator
variable per non-empty closure clause, a unit clause asserting each input
clause, and one Horn clause per logged resolution step.  ``horn_to_rcnf``
instead applies fixed per-clause templates to a Horn input after width-3
splitting.  Both outputs are Horn and equisatisfiable with their source.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import (
    DEFAULT_ENUM_CAP,
    EMPTY_CLAUSE,
    Assignment,
    AssignmentSet,
    Clause,
    Formula,
    Literal,
    components,
    exclusive_falsifiers,
    is_horn,
    to_3cnf,
    varkey,
)
from .oracle import MucVerdict, is_muc
from .product import SearchLimit, is_product_reducible
from .resolution import DEFAULT_CLOSURE_CAP, Closure, closure


class NotHornError(ValueError):
    """The operation is defined for Horn formulas only."""


def indicator(c: Clause) -> str:
    """Indicator-variable name for a clause: its canonical serialization,
    bracketed so the name never collides with literal syntax."""
    return "c[" + c.name() + "]"


@dataclass(frozen=True)
class RcnfEncoding:
    """Horn formula over clause-indicator variables.

    ``name_map`` is the bijection indicator variable <-> source clause.  No
    indicator exists for the empty clause; steps deriving it contribute
    all-negative clauses, and an empty *input* clause is carried through as
    the empty Horn clause itself (the source is already refuted).
    """

    horn: Formula
    name_map: tuple[tuple[str, Clause], ...]
    source: Formula
    includes_closure: bool
    saturation: Closure

    def clause_of(self, name: str) -> Clause:
        for n, c in self.name_map:
            if n == name:
                return c
        raise KeyError(name)

    @property
    def variables(self) -> int:
        return len(self.name_map)

    @property
    def size(self) -> int:
        return self.horn.size


def _dedupe(clauses: list[Clause]) -> tuple[Clause, ...]:
    seen: set[Clause] = set()
    out: list[Clause] = []
    for c in clauses:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return tuple(out)


def rcnf_of(f: Formula, max_clauses: int = DEFAULT_CLOSURE_CAP) -> RcnfEncoding:
    """Encode the resolution closure of ``f`` as a Horn presence formula.

    A truncated closure still yields an encoding, with ``includes_closure``
    false; equisatisfiability with the source is only guaranteed when the
    saturation completed.
    """
    sat = closure(f, max_clauses)
    names = {
        c: indicator(c) for c in sat.clauses if not c.is_empty
    }
    out: list[Clause] = []
    for position, node in enumerate(sat.aliases):
        if node < 0:
            continue  # input tautologies carry no restriction
        src = sat.clauses[node]
        out.append(EMPTY_CLAUSE if src.is_empty else Clause.of(names[src]))
    for step in sat.steps:
        a = names[sat.clauses[step.positive]]
        b = names[sat.clauses[step.negative]]
        t = sat.clauses[step.consequent]
        lits = [Literal(a, False), Literal(b, False)]
        if not t.is_empty:
            lits.append(Literal(names[t], True))
        out.append(Clause(frozenset(lits)))
    horn = Formula(_dedupe(out), frozenset(names.values()))
    name_map = tuple(
        sorted(((n, c) for c, n in names.items()), key=lambda kv: varkey(kv[0]))
    )
    return RcnfEncoding(horn, name_map, f, not sat.truncated, sat)


# -- fixed templates: Horn formula -> RCNF ----------------------------------

def _unit_template(c: Clause) -> list[Clause]:
    (r,) = c.sorted_literals()
    c_r = indicator(c)
    c_rbar = indicator(Clause(frozenset({r.complement()})))
    return [Clause.of(c_r), Clause.of("~" + c_r, "~" + c_rbar)]


def _pair_template(c: Clause) -> list[Clause]:
    lits = c.sorted_literals()
    positives = [l for l in lits if l.positive]
    keep = positives[0] if positives else lits[0]
    (dropped,) = [l for l in lits if l != keep]
    q = dropped.complement()  # the positive unit consumed by unit resolution
    c_pq = indicator(c)
    c_p = indicator(Clause(frozenset({keep})))
    c_q = indicator(Clause(frozenset({q})))
    c_pbar = indicator(Clause(frozenset({keep.complement()})))
    return [
        Clause.of(c_pq),
        Clause.of(c_p, "~" + c_pq, "~" + c_q),
        Clause.of("~" + c_p, "~" + c_pbar),
    ]


def _triple_template(c: Clause) -> list[Clause]:
    lits = c.sorted_literals()
    positives = [l for l in lits if l.positive]
    head = positives[0] if positives else lits[0]
    j, k = [l for l in lits if l != head]
    cj, ck = j.complement(), k.complement()
    name_ijk = indicator(c)
    name_ij = indicator(Clause(frozenset({head, j})))
    name_ik = indicator(Clause(frozenset({head, k})))
    name_i = indicator(Clause(frozenset({head})))
    name_ibar = indicator(Clause(frozenset({head.complement()})))
    name_j = indicator(Clause(frozenset({cj})))
    name_k = indicator(Clause(frozenset({ck})))
    return [
        Clause.of(name_ijk),
        Clause.of(name_ik, "~" + name_ijk, "~" + name_j),
        Clause.of(name_ij, "~" + name_ijk, "~" + name_k),
        Clause.of(name_i, "~" + name_ij, "~" + name_j),
        Clause.of(name_i, "~" + name_ik, "~" + name_k),
        Clause.of("~" + name_i, "~" + name_ibar),
    ]


def horn_to_rcnf(f: Formula) -> Formula:
    """Reduce a Horn formula to its presence encoding via fixed templates.

    Step one splits wide clauses to width 3 (Horn-preserving); step two maps
    each clause through the template for its width, wiring up the unit
    resolutions that decide Horn satisfiability.
    """
    if not is_horn(f):
        raise NotHornError("input must be Horn (at most one positive literal per clause)")
    narrow = to_3cnf(f)
    out: list[Clause] = []
    for c in narrow.clauses:
        if c.is_empty:
            out.append(EMPTY_CLAUSE)  # already refuted; carried through
        elif len(c.literals) == 1:
            out.extend(_unit_template(c))
        elif len(c.literals) == 2:
            out.extend(_pair_template(c))
        else:
            out.extend(_triple_template(c))
    clauses = _dedupe(out)
    scope = frozenset(v for cl in clauses for v in cl.variables)
    return Formula(clauses, scope)


# -- Horn satisfiability by unit propagation ---------------------------------

@dataclass(frozen=True)
class PropagationResult:
    status: str  # "sat" | "unsat"
    assignment: Assignment | None
    forced: tuple[tuple[str, bool], ...]

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


def unit_propagate(f: Formula) -> PropagationResult:
    """Decide a Horn formula by unit propagation.

    Satisfiable runs return the forced assignment completed with false for
    every untouched variable.
    """
    if not is_horn(f):
        raise NotHornError("unit propagation decides Horn formulas only")
    order = f.sorted_scope()
    index = {v: i for i, v in enumerate(order)}
    clauses: list[list[int]] = []
    for c in f.clauses:
        if c.is_tautological:
            continue
        clauses.append(
            [(index[l.var] << 1) | (1 if l.positive else 0) for l in c.literals]
        )
    watch: dict[int, list[int]] = {}
    for ci, lits in enumerate(clauses):
        for code in lits:
            watch.setdefault(code, []).append(ci)
    remaining = [len(lits) for lits in clauses]
    satisfied = [False] * len(clauses)
    value: dict[int, bool] = {}
    forced: list[tuple[str, bool]] = []
    queue = deque(lits[0] for lits in clauses if len(lits) == 1)
    if any(not lits for lits in clauses):
        return PropagationResult("unsat", None, ())

    def assert_code(code: int) -> bool:
        var, val = code >> 1, bool(code & 1)
        if var in value:
            return value[var] == val
        value[var] = val
        forced.append((order[var], val))
        for ci in watch.get(code, ()):  # clauses satisfied by this literal
            satisfied[ci] = True
        for ci in watch.get(code ^ 1, ()):  # clauses losing a literal
            remaining[ci] -= 1
            if satisfied[ci]:
                continue
            if remaining[ci] == 0:
                return False
            if remaining[ci] == 1:
                unit = next(
                    l for l in clauses[ci] if (l >> 1) not in value
                )
                queue.append(unit)
        return True

    while queue:
        if not assert_code(queue.popleft()):
            return PropagationResult("unsat", None, tuple(forced))
    bits = 0
    for i in range(len(order)):
        if value.get(i, False):
            bits |= 1 << i
    return PropagationResult("sat", Assignment(order, bits), tuple(forced))


# -- structure reports --------------------------------------------------------

@dataclass(frozen=True)
class ClauseGranularity:
    clause: Clause
    exclusive: AssignmentSet
    parts: tuple[AssignmentSet, ...]
    reducibility: str  # "reducible" | "irreducible" | "capped"
    antecedents_per_part: tuple[tuple[str, ...], ...]
    corresponds: bool


@dataclass(frozen=True)
class GranularityReport:
    """Per-clause table relating exclusive-falsifier components to the
    encoding's antecedent indicator variables.  Informational: the verdict is
    recorded per instance, with the core-minimality precondition made explicit.
    """

    muc: MucVerdict
    precondition_met: bool
    encoding_complete: bool
    entries: tuple[ClauseGranularity, ...]
    correspondence_holds: bool


def _full_width_clause(a: Assignment) -> Clause:
    return Clause(frozenset(Literal(v, not a.value(v)) for v in a.scope))


def _falsifies(mask: int, c: Clause, position: dict[str, int]) -> bool:
    return all(
        bool(mask >> position[l.var] & 1) != l.positive for l in c.literals
    )


def granularity_report(
    f: Formula,
    max_vars: int = DEFAULT_ENUM_CAP,
    max_clauses: int = DEFAULT_CLOSURE_CAP,
) -> GranularityReport:
    """For each clause: its exclusive falsifiers, their Hamming components,
    the product-reducibility of the component set (as full-width clauses),
    and the antecedent indicators whose falsifier sets match each component."""
    verdict = is_muc(f)
    enc = rcnf_of(f, max_clauses)
    antecedent_names = sorted(
        {
            l.var
            for c in enc.horn.clauses
            for l in c.literals
            if not l.positive
        },
        key=varkey,
    )
    by_name = dict(enc.name_map)
    order = f.sorted_scope()
    position = {v: i for i, v in enumerate(order)}
    n = len(order)
    entries = []
    seen: set[Clause] = set()
    for c in f.clauses:
        if c in seen:
            continue
        seen.add(c)
        exclusive = exclusive_falsifiers(f, c, max_vars)
        parts = tuple(components(exclusive))
        encoded = [_full_width_clause(a) for a in exclusive]
        if len(encoded) < 5:
            reducibility = "irreducible"
        else:
            try:
                red = is_product_reducible(encoded, subset_cap=len(encoded))
                reducibility = "reducible" if red.reducible else "irreducible"
            except SearchLimit:
                reducibility = "capped"
        matches = []
        for part in parts:
            hit = tuple(
                name
                for name in antecedent_names
                if len(part) == 1 << (n - by_name[name].width)
                and all(_falsifies(m, by_name[name], position) for m in part.masks)
            )
            matches.append(hit)
        entries.append(
            ClauseGranularity(
                clause=c,
                exclusive=exclusive,
                parts=parts,
                reducibility=reducibility,
                antecedents_per_part=tuple(matches),
                corresponds=all(matches) if parts else True,
            )
        )
    return GranularityReport(
        muc=verdict,
        precondition_met=bool(verdict),
        encoding_complete=enc.includes_closure,
        entries=tuple(entries),
        correspondence_holds=all(e.corresponds for e in entries),
    )


@dataclass(frozen=True)
class RcnfSize:
    variables: int
    clauses: int
    truncated: bool


def rcnf_size(f: Formula, max_clauses: int = DEFAULT_CLOSURE_CAP) -> RcnfSize:
    """Indicator-variable and clause counts of the closure encoding."""
    enc = rcnf_of(f, max_clauses)
    return RcnfSize(enc.variables, enc.size, not enc.includes_closure)
