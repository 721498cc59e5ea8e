"""Evaluation of terms and formulas, rule satisfaction, model checking.

Conjunction and disjunction are meet and join in the truth chain, the
quantifiers take the greatest lower / least upper bound over the
truncated universe, and negation bumps the degree while flipping the
side.  The three-valued semantics runs the same recursion over the
chain F < 0 < T.

Quantifier domains are the truncated universe; that is the only
computable choice, and the sweep command quantifies how the values of
affected atoms drift as the bound grows.
"""

from __future__ import annotations

from .errors import UnboundVariableError
from .ground import GroundRule, GroundUniverse, ground_program
from .interp import Interpretation, ThreeValuedInterpretation, Truth3, negate3
from .ordinal import BOT, TOP, TruthValue, tv_inf, tv_negate, tv_sup
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
    Term,
    Top,
    Var,
)

Assignment = dict[str, Term]


def eval_term(term: Term, assignment: Assignment) -> Term:
    """Close a term under the assignment; every variable must be bound."""
    if isinstance(term, Const):
        return term
    if isinstance(term, Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise UnboundVariableError(f"unbound variable {term.name}") from None
    if isinstance(term, Func):
        return Func(term.name, tuple(eval_term(a, assignment) for a in term.args))
    raise TypeError(f"not a term: {term!r}")


def eval_formula(
    formula: Formula,
    interp: Interpretation,
    assignment: Assignment,
    universe: GroundUniverse,
) -> TruthValue:
    if isinstance(formula, Top):
        return TOP
    if isinstance(formula, Bottom):
        return BOT
    if isinstance(formula, Atom):
        args = tuple(eval_term(a, assignment) for a in formula.args)
        return interp.value(Atom(formula.pred, args))
    if isinstance(formula, Not):
        return tv_negate(eval_formula(formula.body, interp, assignment, universe))
    if isinstance(formula, And):
        return tv_inf(
            (
                eval_formula(formula.left, interp, assignment, universe),
                eval_formula(formula.right, interp, assignment, universe),
            )
        )
    if isinstance(formula, Or):
        return tv_sup(
            (
                eval_formula(formula.left, interp, assignment, universe),
                eval_formula(formula.right, interp, assignment, universe),
            )
        )
    if isinstance(formula, (Forall, Exists)):
        values = [
            eval_formula(formula.body, interp, assignment | {formula.var: term}, universe)
            for term in universe.terms
        ]
        return tv_inf(values) if isinstance(formula, Forall) else tv_sup(values)
    raise TypeError(f"not a formula: {formula!r}")


def satisfies_rule(
    rule: GroundRule, interp: Interpretation, universe: GroundUniverse
) -> bool:
    """The head must be at least as true as the body."""
    return interp.value(rule.head) >= eval_formula(rule.body, interp, {}, universe)


def is_model(
    program: Program, interp: Interpretation, universe: GroundUniverse
) -> bool:
    grounded = ground_program(program, universe)
    return all(satisfies_rule(r, interp, universe) for r in grounded.rules)


def eval_formula_3v(
    formula: Formula,
    interp: ThreeValuedInterpretation,
    assignment: Assignment,
    universe: GroundUniverse,
) -> Truth3:
    if isinstance(formula, Top):
        return Truth3.TRUE
    if isinstance(formula, Bottom):
        return Truth3.FALSE
    if isinstance(formula, Atom):
        args = tuple(eval_term(a, assignment) for a in formula.args)
        return interp.value(Atom(formula.pred, args))
    if isinstance(formula, Not):
        return negate3(eval_formula_3v(formula.body, interp, assignment, universe))
    if isinstance(formula, And):
        return min(
            eval_formula_3v(formula.left, interp, assignment, universe),
            eval_formula_3v(formula.right, interp, assignment, universe),
        )
    if isinstance(formula, Or):
        return max(
            eval_formula_3v(formula.left, interp, assignment, universe),
            eval_formula_3v(formula.right, interp, assignment, universe),
        )
    if isinstance(formula, (Forall, Exists)):
        values = [
            eval_formula_3v(
                formula.body, interp, assignment | {formula.var: term}, universe
            )
            for term in universe.terms
        ]
        return min(values) if isinstance(formula, Forall) else max(values)
    raise TypeError(f"not a formula: {formula!r}")


def satisfies_rule_3v(
    rule: GroundRule, interp: ThreeValuedInterpretation, universe: GroundUniverse
) -> bool:
    return interp.value(rule.head) >= eval_formula_3v(rule.body, interp, {}, universe)


def is_model_3v(
    program: Program, interp: ThreeValuedInterpretation, universe: GroundUniverse
) -> bool:
    grounded = ground_program(program, universe)
    return all(satisfies_rule_3v(r, interp, universe) for r in grounded.rules)
