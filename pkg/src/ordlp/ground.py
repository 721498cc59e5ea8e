"""Depth-bounded term universe, atom base, and rule instantiation.

The term universe is truncated at a nesting depth bound (constants have
depth 0), which keeps everything finite.  Rule instantiation replaces
free variables by universe terms; quantified variables are left alone
and range over the same universe at evaluation time.  Instances whose
head would fall outside the truncated base are dropped and counted, so
callers can report how much the truncation cut away.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .syntax import (
    And,
    Atom,
    Bottom,
    Const,
    Exists,
    Forall,
    Formula,
    Func,
    Not,
    Or,
    Program,
    Signature,
    Term,
    Top,
    Var,
    free_variables,
    render_atom,
    render_term,
)


def term_depth(term: Term) -> int:
    if isinstance(term, Const):
        return 0
    if isinstance(term, Func):
        return 1 + max(term_depth(a) for a in term.args)
    raise ValueError(f"not a ground term: {term!r}")


@dataclass(frozen=True)
class GroundUniverse:
    """All ground terms up to the depth bound, in (depth, text) order."""

    depth_bound: int
    terms: tuple[Term, ...]

    def __contains__(self, term: Term) -> bool:
        return term in set(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def enumerate_universe(signature: Signature, depth: int) -> GroundUniverse:
    """Every ground term of nesting depth <= depth.

    Without function symbols the result is the constant pool whatever
    the bound.  The result is closed under subterms by construction.
    """
    if depth < 0:
        raise ValueError("depth bound must be >= 0")
    constants = [Const(name) for name in signature.constants]
    current: set[Term] = set(constants)
    for _ in range(depth):
        grown = set(constants)
        for name, arity in signature.functions:
            for args in itertools.product(sorted(current, key=_term_key), repeat=arity):
                grown.add(Func(name, args))
        if grown == current:
            break
        current = grown
    ordered = tuple(sorted(current, key=_term_key))
    return GroundUniverse(depth, ordered)


def _term_key(term: Term):
    return (term_depth(term), render_term(term))


class GroundBase:
    """Ordered set of all ground atoms over a truncated universe."""

    def __init__(self, atoms):
        self.atoms: tuple[Atom, ...] = tuple(atoms)
        self._index = {atom: i for i, atom in enumerate(self.atoms)}
        if len(self._index) != len(self.atoms):
            raise ValueError("duplicate atoms in base")

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._index

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def index_of(self, atom: Atom) -> int:
        return self._index[atom]

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundBase) and self.atoms == other.atoms

    def __repr__(self) -> str:
        return f"GroundBase({len(self.atoms)} atoms)"


def herbrand_base(signature: Signature, universe: GroundUniverse) -> GroundBase:
    """All ground atoms with arguments from the universe, predicates in
    name order and argument tuples in universe order."""
    atoms: list[Atom] = []
    for name, arity in sorted(signature.predicates):
        for args in itertools.product(universe.terms, repeat=arity):
            atoms.append(Atom(name, args))
    return GroundBase(atoms)


@dataclass(frozen=True)
class GroundRule:
    """A rule instance with a ground head and a closed body."""

    head: Atom
    body: Formula

    def __str__(self) -> str:
        return f"{render_atom(self.head)} :- {self.body}."


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple[GroundRule, ...]
    truncated_heads: int  # instances dropped because the head left the base


def substitute_term(term: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(term, Const):
        return term
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, Func):
        return Func(term.name, tuple(substitute_term(a, mapping) for a in term.args))
    raise TypeError(f"not a term: {term!r}")


def substitute(formula: Formula, mapping: dict[str, Term]) -> Formula:
    """Replace free occurrences of the mapped variables.

    The images are ground, so no capture can occur; a quantifier simply
    shadows its own variable.
    """
    if isinstance(formula, (Top, Bottom)):
        return formula
    if isinstance(formula, Atom):
        return Atom(formula.pred, tuple(substitute_term(a, mapping) for a in formula.args))
    if isinstance(formula, Not):
        return Not(substitute(formula.body, mapping))
    if isinstance(formula, And):
        return And(substitute(formula.left, mapping), substitute(formula.right, mapping))
    if isinstance(formula, Or):
        return Or(substitute(formula.left, mapping), substitute(formula.right, mapping))
    if isinstance(formula, (Forall, Exists)):
        inner = {k: v for k, v in mapping.items() if k != formula.var}
        ctor = Forall if isinstance(formula, Forall) else Exists
        return ctor(formula.var, substitute(formula.body, inner))
    raise TypeError(f"not a formula: {formula!r}")


def ground_program(program: Program, universe: GroundUniverse) -> GroundProgram:
    """Instantiate every rule over the truncated universe.

    Deterministic: rules in program order, variables in name order,
    terms in universe order.
    """
    rules: list[GroundRule] = []
    skipped = 0
    for rule in program.rules:
        names = sorted(free_variables(rule.head) | free_variables(rule.body))
        for values in itertools.product(universe.terms, repeat=len(names)):
            mapping = dict(zip(names, values))
            head = Atom(
                rule.head.pred,
                tuple(substitute_term(a, mapping) for a in rule.head.args),
            )
            if any(term_depth(a) > universe.depth_bound for a in head.args):
                skipped += 1
                continue
            rules.append(GroundRule(head, substitute(rule.body, mapping)))
    return GroundProgram(tuple(rules), skipped)
