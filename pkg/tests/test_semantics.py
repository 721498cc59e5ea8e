import random

import pytest

from ordlp.errors import TruncationError, UnboundVariableError
from ordlp.ground import enumerate_universe, ground_program, herbrand_base
from ordlp.interp import Interpretation, Truth3, collapse, collapse_value
from ordlp.ordinal import F, T, ZERO
from ordlp.oracle import random_formula, random_interpretation
from ordlp.semantics import (
    eval_formula,
    eval_formula_3v,
    eval_term,
    is_model,
    satisfies_rule,
)
from ordlp.syntax import (
    And,
    Atom,
    Const,
    Exists,
    Forall,
    Func,
    Not,
    Or,
    Var,
    parse_program,
)


def setup_chain(depth):
    """p/1 and r/1 over c, s(c), ..., s^depth(c); q propositional."""
    program = parse_program("p(c). r(X) :- ~p(X). p(s(X)) :- ~r(X). q :- forall X. p(X).")
    universe = enumerate_universe(program.signature, depth)
    base = herbrand_base(program.signature, universe)
    return program, universe, base


def s_tower(n):
    term = Const("c")
    for _ in range(n):
        term = Func("s", (term,))
    return term


# ---- terms -------------------------------------------------------------


def test_eval_term():
    c = Const("c")
    assert eval_term(c, {}) == c
    fc = Func("f", (c,))
    assert eval_term(Var("X"), {"X": fc}) == fc
    assert eval_term(Func("f", (Var("X"),)), {"X": c}) == fc


def test_eval_term_unbound():
    with pytest.raises(UnboundVariableError):
        eval_term(Var("X"), {})


# ---- formulas ----------------------------------------------------------


def test_negation_of_failed_atom():
    program = parse_program("grey(bugs). white(roger) :- ~grey(roger).")
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    i = Interpretation(base)  # everything F(0)
    body = Not(Atom("grey", (Const("roger"),)))
    assert eval_formula(body, i, {}, universe) == T(1)


def test_conjunction_is_min():
    _, universe, base = setup_chain(0)
    i = Interpretation(base, {Atom("p", (Const("c"),)): T(2), Atom("q"): F(1)})
    value = eval_formula(
        And(Atom("p", (Const("c"),)), Atom("q")), i, {}, universe
    )
    assert value == F(1)
    value = eval_formula(
        Or(Atom("p", (Const("c"),)), Atom("q")), i, {}, universe
    )
    assert value == T(2)


def test_universal_is_inf_over_universe():
    _, universe, base = setup_chain(2)
    values = {Atom("p", (s_tower(n),)): T(2 * n) for n in range(3)}
    i = Interpretation(base, values)
    got = eval_formula(Forall("X", Atom("p", (Var("X"),))), i, {}, universe)
    assert got == T(4)  # weakest of T(0), T(2), T(4)
    got = eval_formula(Exists("X", Atom("p", (Var("X"),))), i, {}, universe)
    assert got == T(0)


def test_truncation_error_distinct_from_unbound():
    _, universe, base = setup_chain(1)
    i = Interpretation(base)
    too_deep = Atom("p", (s_tower(2),))
    with pytest.raises(TruncationError):
        eval_formula(too_deep, i, {}, universe)
    with pytest.raises(UnboundVariableError):
        eval_formula(Atom("p", (Var("X"),)), i, {}, universe)


# ---- rules and models -----------------------------------------------------


def test_satisfies_rule_facts():
    program = parse_program("p.")
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    grounded = ground_program(program, universe)
    rule = grounded.rules[0]
    assert satisfies_rule(rule, Interpretation(base, {Atom("p"): T(0)}), universe)
    assert not satisfies_rule(rule, Interpretation(base), universe)


def test_undefined_satisfies_self_negation():
    program = parse_program("a :- ~a.")
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    grounded = ground_program(program, universe)
    i = Interpretation(base, {Atom("a"): ZERO})
    assert satisfies_rule(grounded.rules[0], i, universe)


def test_is_model_trivial_cases():
    program = parse_program("p.")
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    assert is_model(program, Interpretation(base, {Atom("p"): T(0)}), universe)
    assert not is_model(program, Interpretation(base), universe)


def test_chain_model_at_finite_depth():
    # the alternating-chain values restricted to the bound, with the
    # universal probe at the weakest reached truth
    depth = 3
    program, universe, base = setup_chain(depth)
    values = {}
    for n in range(depth + 1):
        values[Atom("p", (s_tower(n),))] = T(2 * n)
        values[Atom("r", (s_tower(n),))] = F(2 * n + 1)
    values[Atom("q")] = T(2 * depth)
    i = Interpretation(base, values)
    assert is_model(program, i, universe)


# ---- three-valued ----------------------------------------------------------


def test_3v_negation_of_undefined():
    program = parse_program("p.")
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    from ordlp.interp import ThreeValuedInterpretation

    i3 = ThreeValuedInterpretation(base, {Atom("p"): Truth3.UNDEFINED})
    assert eval_formula_3v(Not(Atom("p")), i3, {}, universe) == Truth3.UNDEFINED


def test_3v_universal_all_true():
    _, universe, base = setup_chain(1)
    from ordlp.interp import ThreeValuedInterpretation

    i3 = ThreeValuedInterpretation(
        base, {a: Truth3.TRUE for a in base}
    )
    got = eval_formula_3v(Forall("X", Atom("p", (Var("X"),))), i3, {}, universe)
    assert got == Truth3.TRUE


def test_collapse_commutes_sampled():
    from ordlp.oracle import _signature_atoms
    from ordlp.syntax import Rule, Top, program_from_rules

    rng = random.Random(17)
    atoms, unary, constants = _signature_atoms(4)
    program = program_from_rules([Rule(a, Top()) for a in atoms])
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    for _ in range(300):
        i = random_interpretation(rng, base, 5)
        phi = random_formula(
            rng, atoms, rng.randint(0, 4), unary=unary, constants=constants
        )
        left = collapse_value(eval_formula(phi, i, {}, universe))
        right = eval_formula_3v(phi, collapse(i), {}, universe)
        assert left == right


def test_degree_confinement_shallow_negation():
    # values confined to [F(0)..F(g)] + {0} + [T(z)..T(0)] stay inside
    # the one-step-widened band when negation is at most one deep
    from ordlp.oracle import _signature_atoms
    from ordlp.syntax import Rule, Top, program_from_rules

    rng = random.Random(41)
    atoms, unary, constants = _signature_atoms(4)
    program = program_from_rules([Rule(a, Top()) for a in atoms])
    universe = enumerate_universe(program.signature, 0)
    base = herbrand_base(program.signature, universe)
    from ordlp.syntax import negation_degree

    for _ in range(400):
        g = rng.randint(0, 4)
        z = rng.randint(0, 4)
        values = {}
        for atom in base:
            roll = rng.random()
            if roll < 0.2:
                values[atom] = ZERO
            elif roll < 0.6:
                values[atom] = F(rng.randint(0, g))
            else:
                values[atom] = T(rng.randint(0, z))
        i = Interpretation(base, values)
        phi = random_formula(
            rng, atoms, rng.randint(0, 4), neg_budget=1,
            unary=unary, constants=constants,
        )
        got = eval_formula(phi, i, {}, universe)
        if negation_degree(phi) == 0:
            f_cap, t_cap = g, z
        else:
            f_cap, t_cap = max(g, z + 1), max(g + 1, z)
        if got.sign == -1:
            assert got.degree.as_int() <= f_cap
        elif got.sign == 1:
            assert got.degree.as_int() <= t_cap


def test_eval_independent_of_assignment_insertion_order():
    depth = 2
    program, universe, base = setup_chain(depth)
    values = [(Atom("p", (s_tower(n),)), T(n)) for n in range(3)]
    forward = Interpretation(base, dict(values))
    backward = Interpretation(base, dict(reversed(values)))
    phi = Forall("X", Atom("p", (Var("X"),)))
    assert (
        eval_formula(phi, forward, {}, universe)
        == eval_formula(phi, backward, {}, universe)
        == T(2)
    )
