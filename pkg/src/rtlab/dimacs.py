"""DIMACS CNF reading/writing with named variables, plus stable JSON forms.

Variable names ride in ``c name <idx> <string>`` comment lines; unnamed
variables get synthetic names ``x<idx>``.  Writing assigns indices in
canonical variable order, so read/write round-trips preserve the formula
(names, clauses, scope) exactly.
"""

from __future__ import annotations

from pathlib import Path

from .core import Assignment, AssignmentSet, Clause, Formula, Literal, varkey


class DimacsError(ValueError):
    """Malformed DIMACS input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def loads(text: str) -> Formula:
    """Parse DIMACS CNF text into a Formula."""
    nvars: int | None = None
    nclauses: int | None = None
    names: dict[int, str] = {}
    clause_lits: list[list[int]] = []
    pending: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split(maxsplit=3)
            if len(parts) == 4 and parts[1] == "name":
                try:
                    idx = int(parts[2])
                except ValueError:
                    raise DimacsError(f"bad variable index in name comment: {raw!r}", lineno)
                names[idx] = parts[3].strip()
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header: {raw!r}", lineno)
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"non-integer header counts: {raw!r}", lineno)
            continue
        if nvars is None:
            raise DimacsError("clause line before 'p cnf' header", lineno)
        try:
            ints = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsError(f"non-integer literal: {raw!r}", lineno)
        pending.extend(ints)
        while 0 in pending:
            cut = pending.index(0)
            lits = pending[:cut]
            pending = pending[cut + 1 :]
            for l in lits:
                if abs(l) > nvars:
                    raise DimacsError(f"literal {l} out of range for {nvars} variables", lineno)
            clause_lits.append(lits)

    if nvars is None or nclauses is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("trailing literals without a terminating 0")
    if len(clause_lits) != nclauses:
        raise DimacsError(
            f"header promises {nclauses} clauses but {len(clause_lits)} were read"
        )

    def name_of(idx: int) -> str:
        return names.get(idx, f"x{idx}")

    clauses = tuple(
        Clause(frozenset(Literal(name_of(abs(l)), l > 0) for l in lits))
        for lits in clause_lits
    )
    scope = frozenset(name_of(i) for i in range(1, nvars + 1))
    return Formula(clauses, scope)


def dumps(f: Formula) -> str:
    """Serialize a Formula as DIMACS CNF text with name comments."""
    order = f.sorted_scope()
    index = {v: i + 1 for i, v in enumerate(order)}
    lines = [f"c {len(order)} variables, {f.size} clauses"]
    lines.extend(f"c name {index[v]} {v}" for v in order)
    lines.append(f"p cnf {len(order)} {f.size}")
    for c in f.clauses:
        codes = sorted(
            (index[l.var] if l.positive else -index[l.var]) for l in c.literals
        )
        lines.append(" ".join(str(x) for x in codes) + " 0")
    return "\n".join(lines) + "\n"


def dimacs_read(path: str | Path) -> Formula:
    return loads(Path(path).read_text(encoding="utf-8"))


def dimacs_write(f: Formula, path: str | Path) -> None:
    Path(path).write_text(dumps(f), encoding="utf-8")


# -- JSON forms (stable key order; json.dumps(..., sort_keys=True) safe) -----

def formula_to_dict(f: Formula) -> dict:
    return {
        "scope": list(f.sorted_scope()),
        "clauses": [[str(l) for l in c.sorted_literals()] for c in f.clauses],
    }


def formula_from_dict(obj: dict) -> Formula:
    return Formula.of(
        [Clause.of(*lits) for lits in obj["clauses"]],
        scope=obj["scope"],
    )


def assignment_to_dict(a: Assignment) -> dict:
    return {"scope": list(a.scope), "bits": str(a)}


def assignment_set_to_dict(s: AssignmentSet) -> dict:
    return {
        "scope": list(s.scope),
        "members": [str(a) for a in s],
    }
