"""Triangular-CNF gadgets and the families built from them.

A TCNF over three literals is the four-clause formula satisfied exactly when
one of the literals is true.  CCNF instances place one TCNF per node of a
3-regular graph with a shared variable per edge.  The fixed families (the
base core over K4 and the two-gadget / six-gadget chains) follow their
documented letterings exactly so audits test the construction as stated.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .core import (
    DEFAULT_ENUM_CAP,
    Assignment,
    AssignmentSet,
    Clause,
    Formula,
    Literal,
    countermodels,
    lit,
    models,
    neg,
    pos,
    varkey,
)
from . import oracle


class ConstructionError(ValueError):
    """A gadget was asked to violate its structural preconditions."""


class StructureError(ValueError):
    """The supplied graph does not have the required shape."""


class UnsupportedConstruction(ValueError):
    """The requested family instance needs inputs the tool will not invent."""


@dataclass(frozen=True)
class TcnfInstance:
    """The exactly-one-true gadget over three polarity-decorated literals."""

    lits: tuple[Literal, Literal, Literal]
    clauses: tuple[Clause, ...]

    @property
    def formula(self) -> Formula:
        return Formula(self.clauses, frozenset(l.var for l in self.lits))


def tcnf(l1: Literal | str, l2: Literal | str, l3: Literal | str) -> TcnfInstance:
    """Build the four-clause gadget: pairwise exclusions plus the disjunction."""
    a, b, c = lit(l1), lit(l2), lit(l3)
    if len({a.var, b.var, c.var}) != 3:
        raise ConstructionError(f"gadget literals must use three distinct variables: {a} {b} {c}")
    clauses = (
        Clause(frozenset({~a, ~b})),
        Clause(frozenset({~b, ~c})),
        Clause(frozenset({~a, ~c})),
        Clause(frozenset({a, b, c})),
    )
    return TcnfInstance((a, b, c), clauses)


def complement_formula(t: TcnfInstance) -> Formula:
    """The three-clause formula whose falsifiers are exactly the gadget's models."""
    a, b, c = t.lits
    clauses = (
        Clause(frozenset({a, b, ~c})),
        Clause(frozenset({a, ~b, c})),
        Clause(frozenset({~a, b, c})),
    )
    return Formula(clauses, frozenset(l.var for l in t.lits))


@dataclass(frozen=True)
class ComplementVerdict:
    holds: bool
    gadget_models: AssignmentSet
    complement_falsifiers: AssignmentSet


def verify_tcnf_complement(t: TcnfInstance) -> ComplementVerdict:
    """Enumerate both sides: models of the gadget vs falsifiers of its complement."""
    m = models(t.formula)
    cm = countermodels(complement_formula(t))
    return ComplementVerdict(m.masks == cm.masks and m.scope == cm.scope, m, cm)


def combine(gadgets: Iterable[TcnfInstance]) -> Formula:
    gadgets = tuple(gadgets)
    clauses = tuple(c for g in gadgets for c in g.clauses)
    scope = frozenset(l.var for g in gadgets for l in g.lits)
    return Formula(clauses, scope)


# -- clause-to-gadget translation --------------------------------------------

def _free_quad(taken: frozenset[str]) -> list[str]:
    base = ("S", "T", "U", "V")
    if not any(b in taken for b in base):
        return list(base)
    i = 0
    while True:
        trial = [f"{b}{i}" for b in base]
        if not any(t in taken for t in trial):
            return trial
        i += 1


def clause_to_tcnf(c: Clause, fresh: Iterable[str] | None = None) -> tuple[Formula, list[str]]:
    """Translate a three-literal clause into a chain of three gadgets.

    The chain blocks exactly the (slot1, slot2, slot3) = (true, false, true)
    pattern of its third slots, so the clause literals sit in the slots as
    (complement, identity, complement): the blocked triple is then the
    clause's unique falsifying assignment.  Returns the twelve-clause formula
    and the four fresh chain variables.
    """
    lits = c.sorted_literals()
    if len(lits) != 3 or len(c.variables) != 3:
        raise ConstructionError(
            f"translation needs a clause over exactly three distinct variables, got {c}"
        )
    quad = list(fresh) if fresh is not None else _free_quad(frozenset(c.variables))
    if len(quad) != 4 or set(quad) & c.variables:
        raise ConstructionError(f"need four fresh variables disjoint from {sorted(c.variables)}")
    s, t, u, v = quad
    chain = (
        tcnf(pos(s), pos(t), ~lits[0]),
        tcnf(pos(t), pos(u), lits[1]),
        tcnf(pos(u), pos(v), ~lits[2]),
    )
    return combine(chain), quad


@dataclass(frozen=True)
class ClauseGadgetVerdict:
    holds: bool
    blocked: AssignmentSet
    expected_blocked: AssignmentSet
    counterexample: Assignment | None


def verify_clause_tcnf(
    c: Clause, g: Formula, max_vars: int = DEFAULT_ENUM_CAP
) -> ClauseGadgetVerdict:
    """Sweep every assignment: the clause-variable triples admitting no
    satisfying extension of ``g`` must be exactly the clause's falsifiers."""
    clause_vars = tuple(sorted(c.variables, key=varkey))
    widened = g.with_scope(c.variables)
    sat_triples = {
        a.restrict(clause_vars).bits for a in models(widened, max_vars)
    }
    blocked = AssignmentSet(
        clause_vars,
        tuple(m for m in range(1 << len(clause_vars)) if m not in sat_triples),
    )
    expected = countermodels(Formula((c,), frozenset(clause_vars)), max_vars)
    holds = blocked.masks == expected.masks
    counterexample = None
    if not holds:
        diff = set(blocked.masks) ^ set(expected.masks)
        counterexample = Assignment(clause_vars, min(diff))
    return ClauseGadgetVerdict(holds, blocked, expected, counterexample)


def _pad_to_width_3(c: Clause, taken: frozenset[str], stamp: int) -> list[Clause]:
    need = 3 - len(c.variables)
    pads: list[str] = []
    i = 0
    while len(pads) < need:
        name = f"p{stamp}_{i}"
        if name not in taken:
            pads.append(name)
        i += 1
    out = [c]
    for name in pads:
        out = [
            Clause(d.literals | {Literal(name, polarity)})
            for d in out
            for polarity in (True, False)
        ]
    return out


def formula_to_tcnf(f: Formula) -> tuple[Formula, dict[str, list[str]]]:
    """Translate a width-<=3 formula clause by clause.

    Narrow clauses are first padded to width 3 with balanced fresh variables;
    tautological clauses constrain nothing and are dropped.  Returns the
    combined gadget formula and the fresh chain variables per source clause.
    """
    gadgets: list[Formula] = []
    fresh_map: dict[str, list[str]] = {}
    taken = set(f.scope)
    for idx, c in enumerate(f.clauses):
        if c.is_tautological:
            continue
        if c.is_empty:
            raise ConstructionError("the empty clause has no gadget translation")
        if len(c.variables) > 3:
            raise ConstructionError(f"clause {c} is wider than three variables")
        for sub_idx, padded in enumerate(_pad_to_width_3(c, frozenset(taken), idx)):
            taken.update(padded.variables)
            quad = _free_quad(frozenset(taken))
            taken.update(quad)
            g, used = clause_to_tcnf(padded, quad)
            fresh_map[f"{idx}.{sub_idx}"] = used
            gadgets.append(g)
    clauses = tuple(c for g in gadgets for c in g.clauses)
    scope = f.scope | frozenset(v for g in gadgets for v in g.scope)
    return Formula(clauses, scope), fresh_map


# -- CCNF assembly over 3-regular graphs --------------------------------------

def named_graph(name: str) -> nx.Graph:
    if name == "k4":
        return nx.complete_graph(4)
    if name == "petersen":
        return nx.petersen_graph()
    raise StructureError(f"unknown graph name {name!r}; use k4 or petersen")


@dataclass(frozen=True)
class CcnfInstance:
    """TCNF gadgets on the nodes of a 3-regular graph, one shared variable per edge."""

    graph: nx.Graph = field(compare=False)
    root: object
    node_gadgets: tuple[tuple[object, TcnfInstance], ...]
    edge_vars: tuple[tuple[tuple[object, object], str], ...]
    ring_index: tuple[tuple[object, int], ...]

    @property
    def formula(self) -> Formula:
        return combine(g for _, g in self.node_gadgets)

    def ring_of(self, node) -> int:
        return dict(self.ring_index)[node]


def _edge_key(u, v) -> tuple:
    return (u, v) if str(u) <= str(v) else (v, u)


def ccnf(
    graph: nx.Graph,
    root=None,
    polarity: Mapping[tuple[object, str], bool] | None = None,
    edge_names: Mapping[tuple[object, object], str] | None = None,
) -> CcnfInstance:
    """Assemble a CCNF: one fresh variable per edge, one gadget per node.

    ``polarity`` optionally flips the literal a node contributes for an edge
    variable (default positive).  Ring indices are breadth-first distances
    from the root (default: smallest node).
    """
    if graph.number_of_nodes() == 0:
        raise StructureError("graph has no nodes")
    bad = [n for n in graph.nodes if graph.degree(n) != 3]
    if bad:
        raise StructureError(f"graph is not 3-regular at nodes {sorted(map(str, bad))}")
    if not nx.is_connected(graph):
        raise StructureError("graph must be connected")
    nodes = sorted(graph.nodes, key=str)
    if root is None:
        root = nodes[0]
    rings = nx.single_source_shortest_path_length(graph, root)

    def var_of(u, v) -> str:
        k = _edge_key(u, v)
        if edge_names is not None:
            return edge_names[k] if k in edge_names else edge_names[(k[1], k[0])]
        return f"e{k[0]}_{k[1]}"

    gadgets = []
    for node in nodes:
        incident = sorted(
            graph.neighbors(node), key=lambda other: (rings[other], str(other))
        )
        lits = []
        for other in incident:
            name = var_of(node, other)
            positive = True if polarity is None else polarity.get((node, name), True)
            lits.append(Literal(name, positive))
        gadgets.append((node, tcnf(*lits)))
    edge_vars = tuple(
        sorted(
            ((_edge_key(u, v), var_of(u, v)) for u, v in graph.edges),
            key=lambda kv: kv[1],
        )
    )
    ring_index = tuple((n, rings[n]) for n in nodes)
    return CcnfInstance(graph, root, tuple(gadgets), edge_vars, ring_index)


# -- the fixed families --------------------------------------------------------

@dataclass(frozen=True)
class GadgetFamily:
    kind: str
    formula: Formula
    designated_vars: tuple[tuple[str, str], ...]
    gadgets: tuple[TcnfInstance, ...]
    oracle_verdicts: tuple[tuple[str, object], ...] = ()

    def var(self, role: str) -> str:
        return dict(self.designated_vars)[role]


def _family(kind: str, gadgets: list[TcnfInstance], roles: Iterable[str]) -> GadgetFamily:
    return GadgetFamily(
        kind,
        combine(gadgets),
        tuple((r, r) for r in roles),
        tuple(gadgets),
    )


def m1() -> GadgetFamily:
    """The sixteen-clause base core: a root gadget on P, Q, R with three
    peripheral gadgets sharing S, T, U around the ring."""
    gadgets = [
        tcnf(pos("P"), pos("Q"), pos("R")),
        tcnf(pos("P"), pos("S"), neg("T")),
        tcnf(pos("Q"), pos("T"), neg("U")),
        tcnf(pos("R"), pos("U"), neg("S")),
    ]
    return _family("M1", gadgets, "PQRSTU")


def a_n() -> GadgetFamily:
    """Two gadgets sharing Q: forces X_P = X_R exactly when X_M = X_N."""
    gadgets = [tcnf(pos("M"), pos("P"), pos("Q")), tcnf(pos("N"), pos("Q"), pos("R"))]
    return _family("A_n", gadgets, "MNPQR")


def o_n() -> GadgetFamily:
    """Two gadgets sharing Q with one flip: forces X_P != X_R exactly when X_M = X_N."""
    gadgets = [tcnf(pos("M"), pos("P"), pos("Q")), tcnf(pos("N"), neg("Q"), pos("R"))]
    return _family("O_n", gadgets, "MNPQR")


def a_n_n1() -> GadgetFamily:
    """The six-gadget, two-level chain used for the clause/model ratio."""
    gadgets = [
        tcnf(pos("M"), pos("P"), pos("Q")),
        tcnf(pos("N"), pos("R"), pos("S")),
        tcnf(pos("P"), pos("U"), pos("V")),
        tcnf(pos("R"), pos("V"), pos("W")),
        tcnf(pos("Q"), pos("X"), pos("Y")),
        tcnf(pos("S"), pos("Y"), pos("Z")),
    ]
    return _family("A_n_n1", gadgets, "MNPQRSUVWXYZ")


def o_n_n1() -> GadgetFamily:
    """The six-gadget chain with the documented polarity flips on Q, S, Y."""
    gadgets = [
        tcnf(pos("M"), pos("P"), pos("Q")),
        tcnf(pos("N"), pos("R"), pos("S")),
        tcnf(pos("P"), pos("U"), pos("V")),
        tcnf(pos("R"), pos("V"), pos("W")),
        tcnf(neg("Q"), pos("X"), pos("Y")),
        tcnf(neg("S"), neg("Y"), pos("Z")),
    ]
    return _family("O_n_n1", gadgets, "MNPQRSUVWXYZ")


FAMILIES = {
    "m1": m1,
    "an": a_n,
    "on": o_n,
    "ann1": a_n_n1,
    "onn1": o_n_n1,
}


# -- the model-count / clause-count ratio report ------------------------------

#: Documented values the ratio audit compares against.
DOCUMENTED_PAIR_PROJECTED = 5
DOCUMENTED_SIX_PROJECTED = 17
DOCUMENTED_CLAUSE_RATIO = Fraction(1, 3)
DOCUMENTED_COMPOSITE = Fraction(17, 15)

PAIR_PROJECTION = ("M", "N", "P", "R")
SIX_PROJECTION = ("M", "N", "U", "W", "X", "Z")


@dataclass(frozen=True)
class RatioReport:
    pair_projected: int
    six_projected: int
    pair_clauses: int
    six_clauses: int
    clause_ratio: Fraction
    model_ratio: Fraction
    composite: Fraction
    matches: tuple[tuple[str, bool], ...]

    @property
    def all_match(self) -> bool:
        return all(ok for _, ok in self.matches)


def count_report() -> RatioReport:
    """Project the two chain families onto their boundary variables, count
    models, and compare every number against its documented value."""
    pair = a_n()
    six = a_n_n1()
    pair_projected = len(models(pair.formula).project(PAIR_PROJECTION))
    six_projected = len(models(six.formula).project(SIX_PROJECTION))
    clause_ratio = Fraction(pair.formula.size, six.formula.size)
    model_ratio = Fraction(six_projected, pair_projected)
    composite = model_ratio * clause_ratio
    matches = (
        ("pair_projected", pair_projected == DOCUMENTED_PAIR_PROJECTED),
        ("six_projected", six_projected == DOCUMENTED_SIX_PROJECTED),
        ("clause_ratio", clause_ratio == DOCUMENTED_CLAUSE_RATIO),
        ("composite", composite == DOCUMENTED_COMPOSITE),
    )
    return RatioReport(
        pair_projected,
        six_projected,
        pair.formula.size,
        six.formula.size,
        clause_ratio,
        model_ratio,
        composite,
        matches,
    )


# -- larger cores over supplied graphs ----------------------------------------

def _cycle_orientation(component: nx.Graph) -> list[tuple[object, object]] | None:
    """Walk a simple cycle deterministically; None when the component is not one."""
    if component.number_of_nodes() != component.number_of_edges():
        return None
    if any(d != 2 for _, d in component.degree()):
        return None
    start = min(component.nodes, key=str)
    succ = min(component.neighbors(start), key=str)
    walk = [(start, succ)]
    prev, here = start, succ
    while here != start:
        nxt = next(n for n in component.neighbors(here) if n != prev)
        walk.append((here, nxt))
        prev, here = here, nxt
    return walk


def extend_m(k: int, graph_override: nx.Graph | None = None) -> GadgetFamily:
    """Best-effort larger cores.

    k = 1 is the fixed base family.  For k >= 2 a 3-regular graph must be
    supplied: gadgets ride its nodes with ring-internal cycles oriented and
    negated at their source node (the same flip pattern the base family uses
    on K4), and the result carries oracle verdicts instead of asserted
    properties — the verdicts are specific to the supplied graph.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return m1()
    if graph_override is None:
        raise UnsupportedConstruction(
            "no graph family is defined for k >= 2; supply a 3-regular graph"
        )
    plain = ccnf(graph_override)
    rings = dict(plain.ring_index)
    polarity: dict[tuple[object, str], bool] = {}
    for ring in sorted(set(rings.values())):
        members = [n for n, r in rings.items() if r == ring]
        internal = graph_override.subgraph(members)
        for component_nodes in nx.connected_components(internal):
            component = internal.subgraph(component_nodes)
            if component.number_of_edges() == 0:
                continue
            walk = _cycle_orientation(component)
            if walk is None:
                continue  # not a ring cycle; leave the edge literals positive
            for u, v in walk:
                edge_var = dict(plain.edge_vars)[_edge_key(u, v)]
                polarity[(u, edge_var)] = False
    shaped = ccnf(graph_override, polarity=polarity)
    f = shaped.formula
    sat = oracle.dpll(f)
    muc = oracle.is_muc(f)
    return GadgetFamily(
        kind=f"M{k}",
        formula=f,
        designated_vars=tuple(
            (name, name) for _, name in shaped.edge_vars
        ),
        gadgets=tuple(g for _, g in shaped.node_gadgets),
        oracle_verdicts=(
            ("sat", sat.status),
            ("is_muc", muc.is_muc),
        ),
    )
