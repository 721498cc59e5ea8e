"""Engine vs. the plain reimplementation on random programs.

tests/naive_oracle.py rebuilds the whole construction from scratch over
tuples and dicts with blunt fixed policies.  Agreement on random
programs is the strongest single check in the suite: any bug in the
ladder's early-exit logic, the limit rule, grounding or evaluation
shows up as a value or depth mismatch here.
"""

import random

from naive_oracle import least_model as naive_least_model
from naive_oracle import model_as_text

from ordlp import compute_least_model, enumerate_universe, parse_program
from ordlp.oracle import generate_formula_program, generate_normal_program


def agree(program, depth, horizon_margin=4):
    universe = enumerate_universe(program.signature, depth)
    result = compute_least_model(program, universe)
    engine = {str(a): str(v) for a, v in result.model.items()}
    horizon = result.depth.as_int() + horizon_margin
    model, delta = naive_least_model(program, depth, horizon)
    return engine == model_as_text(model) and delta == result.depth.as_int()


def test_random_normal_programs_agree():
    rng = random.Random(404)
    for _ in range(40):
        program = generate_normal_program(rng, 5, 8)
        assert agree(program, 0)


def test_random_formula_programs_agree():
    rng = random.Random(405)
    for _ in range(40):
        program = generate_formula_program(rng, max_atoms=4, max_rules=4)
        assert agree(program, 0)


def test_function_symbol_programs_agree():
    sources = [
        "p(c). p(s(X)) :- ~r(X). r(X) :- ~p(X). q :- forall X. p(X).",
        "g(c). g(s(X)) :- exists Y. g(Y) & ~h(X). h(X) :- ~g(X).",
        "w :- ~forall X. v(X). v(c). v(s(X)) :- v(X).",
        "e(c). e(s(X)) :- ~~e(X). d :- exists X. ~e(X).",
    ]
    for source in sources:
        program = parse_program(source)
        for depth in (1, 2):
            assert agree(program, depth), (source, depth)
