"""rtlab: a CNF gadget laboratory.

Builds triangular-gadget families and Horn encodings of resolution
structure, and audits their documented properties (model counts, core
minimality, irreducibility, equisatisfiability) against independent
brute-force oracles.
"""

from .core import (
    Assignment,
    AssignmentSet,
    Clause,
    Formula,
    Literal,
    classify_fragment,
    clause,
    components,
    countermodels,
    evaluate,
    exclusive_falsifiers,
    hamming,
    lit,
    models,
    neg,
    pos,
    project,
    to_3cnf,
)
from .dimacs import dimacs_read, dimacs_write
from .gadgets import ccnf, count_report, extend_m, m1, tcnf
from .oracle import count_models, dpll, is_muc, muc_extract
from .product import clauses_product, decompose, is_product_reducible
from .rcnf import granularity_report, horn_to_rcnf, rcnf_of, rcnf_size, unit_propagate
from .resolution import closure, linkage_check, multi_resolve, resolve

__all__ = [
    "Assignment",
    "AssignmentSet",
    "Clause",
    "Formula",
    "Literal",
    "ccnf",
    "classify_fragment",
    "clause",
    "clauses_product",
    "closure",
    "components",
    "count_models",
    "count_report",
    "countermodels",
    "decompose",
    "dimacs_read",
    "dimacs_write",
    "dpll",
    "evaluate",
    "exclusive_falsifiers",
    "extend_m",
    "granularity_report",
    "hamming",
    "horn_to_rcnf",
    "is_muc",
    "is_product_reducible",
    "linkage_check",
    "lit",
    "m1",
    "models",
    "muc_extract",
    "multi_resolve",
    "neg",
    "pos",
    "project",
    "rcnf_of",
    "rcnf_size",
    "resolve",
    "tcnf",
    "to_3cnf",
    "unit_propagate",
]

__version__ = "0.1.0"
