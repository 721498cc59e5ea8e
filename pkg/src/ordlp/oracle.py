"""Independent verification: exhaustive model search, the well-founded
model for normal programs, 3-valued minimality checking, and seeded
random program generation.

The checks here deliberately avoid the level-ladder code paths.  The
exhaustive search enumerates candidate interpretations over a bounded
value set and tests rule satisfaction directly; the well-founded model
comes from the classical alternating fixpoint over rule reducts.  When
both roads agree with the constructed model, that is real evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .errors import BudgetExceededError, NotNormalError
from .fixpoint import compute_least_model, tp_step
from .ground import (
    GroundBase,
    GroundRule,
    GroundUniverse,
    enumerate_universe,
    ground_program,
    herbrand_base,
)
from .interp import (
    Interpretation,
    ThreeValuedInterpretation,
    Truth3,
    collapse,
    interpretation_to_json,
    leq_infty,
    three_valued_to_json,
)
from .ordinal import F, Ordinal, T, ZERO, TruthValue
from .semantics import is_model_3v, satisfies_rule, satisfies_rule_3v
from .syntax import (
    And,
    Atom,
    Bottom,
    Const,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Program,
    Rule,
    Top,
    Var,
    negation_degree,
    program_from_rules,
    render_program,
    render_rule,
)

DEFAULT_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# Exhaustive model enumeration
# ---------------------------------------------------------------------------


def bounded_values(degree_bound: int) -> list[TruthValue]:
    """F(0)..F(k), 0, T(k)..T(0) in ascending truth order."""
    values = [F(d) for d in range(degree_bound + 1)]
    values.append(ZERO)
    values.extend(T(d) for d in range(degree_bound, -1, -1))
    return values


def enumerate_models(
    program: Program,
    universe: GroundUniverse,
    degree_bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[Interpretation]:
    """All models whose values stay within the degree bound.

    The default bound is one more than the base size, which is already
    beyond any degree the constructed model of the program can use.
    """
    base = herbrand_base(program.signature, universe)
    k = degree_bound if degree_bound is not None else len(base) + 1
    values = bounded_values(k)
    total = len(values) ** len(base)
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate interpretations exceed the budget of {budget}"
        )
    grounded = ground_program(program, universe)
    atoms = list(base)
    models = []
    for combo in product(values, repeat=len(atoms)):
        candidate = Interpretation(base, dict(zip(atoms, combo)))
        if all(satisfies_rule(r, candidate, universe) for r in grounded.rules):
            models.append(candidate)
    return models


@dataclass
class LeastModelReport:
    passed: bool
    is_model: bool
    is_fixed_point: bool
    model_count: int
    fixed_point_count: int
    candidates: int
    least_model: dict
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "is_model": self.is_model,
            "is_fixed_point": self.is_fixed_point,
            "model_count": self.model_count,
            "fixed_point_count": self.fixed_point_count,
            "candidates": self.candidates,
            "least_model": self.least_model,
            "failures": self.failures,
        }


def verify_least(
    program: Program,
    universe: GroundUniverse,
    degree_bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> LeastModelReport:
    """Check the constructed model against exhaustive enumeration.

    It must satisfy every rule, reproduce itself under the consequence
    operator, and sit below every enumerated model and fixed point.
    """
    base = herbrand_base(program.signature, universe)
    k = degree_bound if degree_bound is not None else len(base) + 1
    values = bounded_values(k)
    total = len(values) ** len(base)
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate interpretations exceed the budget of {budget}"
        )
    grounded = ground_program(program, universe)
    result = compute_least_model(program, universe)
    constructed = result.model
    source = render_program(program)

    failures: list[dict] = []
    model_count = 0
    fp_count = 0
    atoms = list(base)
    itself_a_model = all(
        satisfies_rule(r, constructed, universe) for r in grounded.rules
    )
    if not itself_a_model:
        failures.append({"kind": "not-a-model", "program": source})
    itself_fixed = tp_step(grounded.rules, constructed, universe) == constructed
    if not itself_fixed:
        failures.append({"kind": "not-a-fixed-point", "program": source})

    for combo in product(values, repeat=len(atoms)):
        candidate = Interpretation(base, dict(zip(atoms, combo)))
        if all(satisfies_rule(r, candidate, universe) for r in grounded.rules):
            model_count += 1
            if not leq_infty(constructed, candidate):
                failures.append(
                    {
                        "kind": "model-below-constructed",
                        "program": source,
                        "interpretation": interpretation_to_json(candidate),
                    }
                )
        if tp_step(grounded.rules, candidate, universe) == candidate:
            fp_count += 1
            if not leq_infty(constructed, candidate):
                failures.append(
                    {
                        "kind": "fixed-point-below-constructed",
                        "program": source,
                        "interpretation": interpretation_to_json(candidate),
                    }
                )

    return LeastModelReport(
        passed=not failures,
        is_model=itself_a_model,
        is_fixed_point=itself_fixed,
        model_count=model_count,
        fixed_point_count=fp_count,
        candidates=total,
        least_model=interpretation_to_json(constructed),
        failures=failures,
    )


# ---------------------------------------------------------------------------
# Well-founded model of normal programs (alternating fixpoint)
# ---------------------------------------------------------------------------


def split_literals(body: Formula) -> tuple[list[Atom], list[Atom]]:
    """Positive and negative atoms of a conjunction-of-literals body."""
    positive: list[Atom] = []
    negative: list[Atom] = []

    def walk(f: Formula) -> None:
        if isinstance(f, Top):
            return
        if isinstance(f, Atom):
            positive.append(f)
            return
        if isinstance(f, Not) and isinstance(f.body, Atom):
            negative.append(f.body)
            return
        if isinstance(f, And):
            walk(f.left)
            walk(f.right)
            return
        raise NotNormalError(f"not a conjunction of literals: {f}")

    walk(body)
    return positive, negative


def is_normal_rule(rule: Rule | GroundRule) -> bool:
    try:
        split_literals(rule.body)
    except NotNormalError:
        return False
    return True


def wfs_normal(rules, base: GroundBase) -> ThreeValuedInterpretation:
    """Well-founded model of a ground normal program.

    Computed by the classical alternating fixpoint: the reduct operator
    derives everything whose negative premises miss the blocking set;
    iterating its square from nothing climbs to the true atoms, and one
    more application yields the not-unfounded atoms.
    """
    parsed = []
    for rule in rules:
        positive, negative = split_literals(rule.body)
        parsed.append((rule.head, positive, negative))

    def reduct_closure(blocked: frozenset[Atom]) -> frozenset[Atom]:
        derived: set[Atom] = set()
        changed = True
        while changed:
            changed = False
            for head, positive, negative in parsed:
                if head in derived:
                    continue
                if all(p in derived for p in positive) and all(
                    n not in blocked for n in negative
                ):
                    derived.add(head)
                    changed = True
        return frozenset(derived)

    true_atoms: frozenset[Atom] = frozenset()
    while True:
        possible = reduct_closure(true_atoms)
        advanced = reduct_closure(possible)
        if advanced == true_atoms:
            break
        true_atoms = advanced
    possible = reduct_closure(true_atoms)

    values = {}
    for atom in base:
        if atom in true_atoms:
            values[atom] = Truth3.TRUE
        elif atom in possible:
            values[atom] = Truth3.UNDEFINED
        else:
            values[atom] = Truth3.FALSE
    return ThreeValuedInterpretation(base, values)


# ---------------------------------------------------------------------------
# Minimality of the collapsed model
# ---------------------------------------------------------------------------


@dataclass
class MinimalityReport:
    hypothesis_ok: bool
    offending_rules: list[str]
    minimal: bool | None
    is_3v_model: bool
    candidates: int
    collapsed: dict
    smaller_models: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when the minimality guarantee applies and holds."""
        return self.hypothesis_ok and bool(self.minimal) and self.is_3v_model

    def to_json(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "offending_rules": self.offending_rules,
            "minimal": self.minimal,
            "is_3v_model": self.is_3v_model,
            "candidates": self.candidates,
            "collapsed": self.collapsed,
            "smaller_models": self.smaller_models,
        }


def check_minimal_3v(
    program: Program,
    universe: GroundUniverse,
    budget: int = DEFAULT_BUDGET,
) -> MinimalityReport:
    """Search for a strictly smaller 3-valued model below the collapse.

    Smaller means: at least as many false atoms, at most as many true
    atoms.  Bodies with negation nested deeper than one void the
    minimality guarantee; the report then says so and still lists any
    smaller models it finds.
    """
    offending = [
        render_rule(r) for r in program.rules if negation_degree(r.body) > 1
    ]
    result = compute_least_model(program, universe)
    collapsed = collapse(result.model)
    base = collapsed.base
    grounded = ground_program(program, universe)

    choices: list[list[Truth3]] = []
    atoms = list(base)
    for atom in atoms:
        v = collapsed.value(atom)
        if v == Truth3.FALSE:
            choices.append([Truth3.FALSE])
        elif v == Truth3.UNDEFINED:
            choices.append([Truth3.UNDEFINED, Truth3.FALSE])
        else:
            choices.append([Truth3.TRUE, Truth3.UNDEFINED, Truth3.FALSE])
    total = 1
    for c in choices:
        total *= len(c)
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate 3-valued interpretations exceed the budget of {budget}"
        )

    smaller: list[dict] = []
    for combo in product(*choices):
        candidate = ThreeValuedInterpretation(base, dict(zip(atoms, combo)))
        if candidate == collapsed:
            continue
        if all(satisfies_rule_3v(r, candidate, universe) for r in grounded.rules):
            smaller.append(three_valued_to_json(candidate))

    return MinimalityReport(
        hypothesis_ok=not offending,
        offending_rules=offending,
        minimal=not smaller,
        is_3v_model=is_model_3v(program, collapsed, universe),
        candidates=total,
        collapsed=three_valued_to_json(collapsed),
        smaller_models=smaller,
    )


# ---------------------------------------------------------------------------
# Random generation
# ---------------------------------------------------------------------------


@dataclass
class GeneratorConfig:
    seed: int = 0
    mode: str = "normal"  # "normal" or "formula"
    max_atoms: int = 6
    max_rules: int = 10
    max_body_literals: int = 3
    formula_depth: int = 3
    max_negation_degree: int | None = None
    quantified: bool = True


def generate_program(config: GeneratorConfig) -> Program:
    rng = random.Random(config.seed)
    if config.mode == "normal":
        return generate_normal_program(
            rng, config.max_atoms, config.max_rules, config.max_body_literals
        )
    if config.mode == "formula":
        return generate_formula_program(
            rng,
            max_atoms=config.max_atoms,
            max_rules=config.max_rules,
            depth=config.formula_depth,
            max_negation_degree=config.max_negation_degree,
            quantified=config.quantified,
        )
    raise ValueError(f"unknown generator mode: {config.mode}")


def generate_normal_program(
    rng: random.Random, max_atoms: int, max_rules: int, max_body_literals: int = 3
) -> Program:
    """A random ground normal program over propositional atoms."""
    n_atoms = rng.randint(1, max_atoms)
    atoms = [Atom(f"p{i}") for i in range(1, n_atoms + 1)]
    n_rules = rng.randint(1, max_rules)
    rules = []
    for _ in range(n_rules):
        head = rng.choice(atoms)
        k = rng.randint(0, max_body_literals)
        if k == 0:
            body: Formula = Top()
        else:
            literals: list[Formula] = []
            for _ in range(k):
                atom = rng.choice(atoms)
                literals.append(Not(atom) if rng.random() < 0.5 else atom)
            body = literals[0]
            for lit in literals[1:]:
                body = And(body, lit)
        rules.append(Rule(head, body))
    return program_from_rules(rules)


def _signature_atoms(max_atoms: int) -> tuple[list[Atom], list[str], list[Const]]:
    """Ground atoms, unary predicates and constants for formula mode.

    One unary predicate over two constants plus nullary paddings keeps
    the base small while giving the quantifiers something to range
    over.
    """
    constants = [Const("a"), Const("b")]
    atoms = [Atom("p", (c,)) for c in constants]
    unary = ["p"]
    while len(atoms) < max_atoms:
        atoms.append(Atom(f"q{len(atoms) - 1}"))
    return atoms[:max_atoms], unary, constants


def random_formula(
    rng: random.Random,
    atoms: list[Atom],
    depth: int,
    *,
    neg_budget: int | None = None,
    quantified: bool = True,
    unary: list[str] | None = None,
    constants: list[Const] | None = None,
    scope: tuple[str, ...] = (),
) -> Formula:
    """A random closed formula over the given ground atoms.

    ``neg_budget`` caps the nesting depth of negation (None means
    unbounded); quantified variables only ever feed unary predicates.
    """
    may_negate = neg_budget is None or neg_budget > 0
    if depth <= 0:
        roll = rng.random()
        if roll < 0.1:
            return Top() if rng.random() < 0.5 else Bottom()
        return _random_atom(rng, atoms, unary, scope)
    roll = rng.random()
    if roll < 0.3:
        return _random_atom(rng, atoms, unary, scope)
    if roll < 0.38:
        return Top() if rng.random() < 0.5 else Bottom()
    if roll < 0.55 and may_negate:
        child_budget = None if neg_budget is None else neg_budget - 1
        return Not(
            random_formula(
                rng,
                atoms,
                depth - 1,
                neg_budget=child_budget,
                quantified=quantified,
                unary=unary,
                constants=constants,
                scope=scope,
            )
        )
    if roll < 0.85 or not (quantified and unary):
        ctor = And if rng.random() < 0.5 else Or
        left = random_formula(
            rng, atoms, depth - 1, neg_budget=neg_budget, quantified=quantified,
            unary=unary, constants=constants, scope=scope,
        )
        right = random_formula(
            rng, atoms, depth - 1, neg_budget=neg_budget, quantified=quantified,
            unary=unary, constants=constants, scope=scope,
        )
        return ctor(left, right)
    var = f"V{len(scope) + 1}"
    body = random_formula(
        rng, atoms, depth - 1, neg_budget=neg_budget, quantified=quantified,
        unary=unary, constants=constants, scope=scope + (var,),
    )
    return Forall(var, body) if rng.random() < 0.5 else Exists(var, body)


def _random_atom(
    rng: random.Random,
    atoms: list[Atom],
    unary: list[str] | None,
    scope: tuple[str, ...],
) -> Atom:
    if unary and scope and rng.random() < 0.5:
        return Atom(rng.choice(unary), (Var(rng.choice(scope)),))
    return rng.choice(atoms)


def generate_formula_program(
    rng: random.Random,
    *,
    max_atoms: int = 3,
    max_rules: int = 4,
    depth: int = 3,
    max_negation_degree: int | None = None,
    quantified: bool = True,
) -> Program:
    """A random ground formula-based program with bounded body depth."""
    atoms, unary, constants = _signature_atoms(max_atoms)
    if not quantified:
        unary = None
    n_rules = rng.randint(1, max_rules)
    rules = []
    for _ in range(n_rules):
        head = rng.choice(atoms)
        body = random_formula(
            rng,
            atoms,
            rng.randint(0, depth),
            neg_budget=max_negation_degree,
            quantified=quantified,
            unary=unary,
            constants=constants,
        )
        rules.append(Rule(head, body))
    return program_from_rules(rules)


def random_interpretation(
    rng: random.Random, base: GroundBase, max_degree: int
) -> Interpretation:
    """Uniformly noisy interpretation with degrees up to the bound."""
    values = {}
    for atom in base:
        roll = rng.random()
        if roll < 0.15:
            values[atom] = ZERO
        elif roll < 0.575:
            values[atom] = F(rng.randint(0, max_degree))
        else:
            values[atom] = T(rng.randint(0, max_degree))
    return Interpretation(base, values)


def perturb_above(
    rng: random.Random, interp: Interpretation, alpha: int, max_degree: int
) -> Interpretation:
    """A random interpretation sitting below the given one at degree alpha.

    Values of degree below alpha are kept, F(alpha) atoms stay put, and
    everything else may fall anywhere that does not add a new T(alpha)
    atom: to F(alpha), to 0, or to any degree above alpha.
    """
    a = Ordinal.from_int(alpha)
    values = {}
    for atom in interp.base:
        v = interp.value(atom)
        if v.sign != 0 and v.degree <= a and v != T(a):
            values[atom] = v
            continue
        if v == T(a) and rng.random() < 0.5:
            values[atom] = v
            continue
        roll = rng.random()
        if roll < 0.2:
            values[atom] = F(a)
        elif roll < 0.4:
            values[atom] = ZERO
        else:
            degree = rng.randint(alpha + 1, max(alpha + 1, max_degree))
            values[atom] = F(degree) if rng.random() < 0.5 else T(degree)
    return Interpretation(interp.base, values)


# ---------------------------------------------------------------------------
# Seeded suites
# ---------------------------------------------------------------------------


@dataclass
class SuiteReport:
    name: str
    total: int
    passed: int
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "total": self.total,
            "passed": self.passed,
            "failures": self.failures,
        }


def run_wfs_differential(
    seed: int, count: int, max_atoms: int = 6, max_rules: int = 10
) -> SuiteReport:
    """Collapse of the constructed model vs. the well-founded model,
    on random ground normal programs."""
    rng = random.Random(seed)
    failures = []
    for index in range(count):
        program = generate_normal_program(rng, max_atoms, max_rules)
        universe = enumerate_universe_for(program)
        result = compute_least_model(program, universe)
        collapsed = collapse(result.model)
        base = collapsed.base
        grounded = ground_program(program, universe)
        reference = wfs_normal(grounded.rules, base)
        payload = None
        if any(collapsed.value(a) != reference.value(a) for a in base):
            payload = {
                "kind": "wfs-mismatch",
                "index": index,
                "program": render_program(program),
                "collapsed": three_valued_to_json(collapsed),
                "well_founded": three_valued_to_json(reference),
            }
        elif not is_model_3v(program, collapsed, universe):
            payload = {
                "kind": "collapse-not-3v-model",
                "index": index,
                "program": render_program(program),
            }
        if payload:
            failures.append(payload)
    return SuiteReport("wfs-differential", count, count - len(failures), failures)


def run_least_model_suite(
    seed: int,
    count: int,
    max_atoms: int = 3,
    degree_bound: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> SuiteReport:
    """Exhaustive least-model verification on random formula programs."""
    rng = random.Random(seed)
    failures = []
    for index in range(count):
        program = generate_formula_program(rng, max_atoms=max_atoms)
        universe = enumerate_universe_for(program)
        report = verify_least(program, universe, degree_bound, budget)
        if not report.passed:
            failures.append(
                {
                    "index": index,
                    "program": render_program(program),
                    "report": report.to_json(),
                }
            )
    return SuiteReport("least-model", count, count - len(failures), failures)


def run_minimality_suite(
    seed: int, count: int, max_atoms: int = 4, budget: int = DEFAULT_BUDGET
) -> SuiteReport:
    """Minimality of the collapse on programs with shallow negation."""
    rng = random.Random(seed)
    failures = []
    for index in range(count):
        program = generate_formula_program(
            rng, max_atoms=max_atoms, max_negation_degree=1
        )
        universe = enumerate_universe_for(program)
        report = check_minimal_3v(program, universe, budget)
        if not report.passed:
            failures.append(
                {
                    "index": index,
                    "program": render_program(program),
                    "report": report.to_json(),
                }
            )
    return SuiteReport("minimality", count, count - len(failures), failures)


def enumerate_universe_for(program: Program, depth: int = 0) -> GroundUniverse:
    """Universe for function-free programs; depth applies otherwise."""
    return enumerate_universe(program.signature, depth)
