"""Clauses product, bounded direct-sum decomposition search, and
product-reducibility verdicts.

A clause set X factors as Y × Z when the pairwise unions {y ∪ z} reproduce X
exactly and the description is genuinely smaller: |X| > |Y| + |Z|, with at
least two non-tautological clauses on each side.  The search is bounded and
exhaustive — no cleverness, deterministic witnesses.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from .core import Clause, Formula

#: Largest clause set decompose/is_product_reducible accept by default.
DEFAULT_SEARCH_CAP = 12

#: Explored (Y, Z) candidate pairs before giving up.
DEFAULT_SEARCH_BUDGET = 2_000_000


class SearchLimit(RuntimeError):
    """The bounded factor search was asked to exceed its cap."""


def _clauses_arg(x: Formula | Iterable[Clause]) -> tuple[Clause, ...]:
    if isinstance(x, Formula):
        clauses = x.clauses
    else:
        clauses = tuple(x)
    seen: dict[Clause, None] = {}
    for c in clauses:
        seen.setdefault(c)
    return tuple(sorted(seen, key=Clause.key))


def clauses_product(a: Iterable[Clause], b: Iterable[Clause]) -> tuple[Clause, ...]:
    """All pairwise unions y ∪ z, deduplicated, in canonical order.

    Tautological results are kept; callers can test ``Clause.is_tautological``.
    The singleton {empty clause} is the unit.
    """
    out = {y.union(z) for y in a for z in b}
    return tuple(sorted(out, key=Clause.key))


@dataclass(frozen=True)
class Factorization:
    """A direct-sum witness: X = left × right with |X| > |left| + |right|."""

    left: tuple[Clause, ...]
    right: tuple[Clause, ...]
    witness_map: tuple[tuple[Clause, tuple[Clause, Clause]], ...]

    def reconstruct(self) -> tuple[Clause, ...]:
        return clauses_product(self.left, self.right)


def subclause_pool(clauses: Iterable[Clause]) -> tuple[Clause, ...]:
    """Every non-tautological sub-clause of any clause in the set, canonical order."""
    pool: set[Clause] = set()
    for c in clauses:
        lits = c.sorted_literals()
        for r in range(len(lits) + 1):
            for combo in itertools.combinations(lits, r):
                sub = Clause(frozenset(combo))
                if not sub.is_tautological:
                    pool.add(sub)
    return tuple(sorted(pool, key=Clause.key))


def _witness_map(
    x: tuple[Clause, ...], left: tuple[Clause, ...], right: tuple[Clause, ...]
) -> tuple[tuple[Clause, tuple[Clause, Clause]], ...]:
    out = []
    for target in x:
        hit = next(
            (y, z) for y in left for z in right if y.union(z) == target
        )
        out.append((target, hit))
    return tuple(out)


def decompose(
    x: Formula | Iterable[Clause],
    max_factor_size: int | None = None,
    *,
    max_clauses: int = DEFAULT_SEARCH_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Factorization | None:
    """Find a direct-sum factorization of the clause set, or None.

    Candidate factor clauses are sub-clauses of clauses of x.  Factor sides
    are at least 2 clauses each and |x| > |Y| + |Z|; the first witness in
    deterministic (size, canonical) order is returned.
    """
    clauses = _clauses_arg(x)
    n = len(clauses)
    if n > max_clauses:
        raise SearchLimit(
            f"decomposition of {n} clauses exceeds the cap of {max_clauses}"
        )
    if n < 5:  # sides >= 2 and |Y| + |Z| < |X| leave no room below 5 clauses
        return None
    xset = frozenset(clauses)
    pool = subclause_pool(clauses)
    cover = {y: frozenset(c for c in clauses if y.issubset(c)) for y in pool}
    cap = n - 3 if max_factor_size is None else min(max_factor_size, n - 3)
    spent = 0

    dividing = [y for y in pool if cover[y]]
    for ky in range(2, cap + 1):
        for kz in range(2, min(cap, n - 1 - ky) + 1):
            if ky * kz < n:
                continue  # too few products to cover X
            for left in itertools.combinations(dividing, ky):
                spent += 1
                if spent > budget:
                    raise SearchLimit("decomposition search budget exhausted")
                if frozenset().union(*(cover[y] for y in left)) != xset:
                    continue  # these rows cannot cover X no matter the partners
                partners = [
                    z
                    for z in pool
                    if all(y.union(z) in xset for y in left)
                ]
                if len(partners) < kz:
                    continue
                for right in itertools.combinations(partners, kz):
                    spent += 1
                    if spent > budget:
                        raise SearchLimit("decomposition search budget exhausted")
                    produced = {y.union(z) for y in left for z in right}
                    if produced == xset:
                        return Factorization(
                            tuple(left), tuple(right), _witness_map(clauses, left, right)
                        )
    return None


@dataclass(frozen=True)
class ReducibilityVerdict:
    reducible: bool
    subset: tuple[Clause, ...] | None
    factorization: Factorization | None


def is_product_reducible(
    x: Formula | Iterable[Clause],
    subset_cap: int | None = None,
    *,
    max_clauses: int = DEFAULT_SEARCH_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> ReducibilityVerdict:
    """Reducible iff some clause subset admits a direct-sum factorization.

    ``subset_cap`` bounds the subset sizes searched; by default all sizes are
    tried for sets of at most 12 clauses and larger sets are refused.
    """
    clauses = _clauses_arg(x)
    n = len(clauses)
    if subset_cap is None:
        if n > max_clauses:
            raise SearchLimit(
                f"subset search over {n} clauses exceeds the cap of {max_clauses}; "
                f"pass subset_cap explicitly"
            )
        subset_cap = n
    for size in range(5, min(subset_cap, n) + 1):
        for subset in itertools.combinations(clauses, size):
            hit = decompose(subset, max_clauses=max(size, max_clauses), budget=budget)
            if hit is not None:
                return ReducibilityVerdict(True, subset, hit)
    return ReducibilityVerdict(False, None, None)


def projection_table(
    x: Formula | Iterable[Clause],
) -> tuple[tuple[Clause, tuple[Clause, ...]], ...]:
    """For each nonempty sub-clause a: the disjoint nonempty partners b with
    a ∪ b in the set.  Rows with no partner are omitted."""
    clauses = _clauses_arg(x)
    xset = frozenset(clauses)
    pool = [a for a in subclause_pool(clauses) if not a.is_empty]
    rows = []
    for a in pool:
        partners = tuple(
            sorted(
                {
                    b
                    for b in pool
                    if not (a.literals & b.literals) and a.union(b) in xset
                },
                key=Clause.key,
            )
        )
        if partners:
            rows.append((a, partners))
    return tuple(rows)
