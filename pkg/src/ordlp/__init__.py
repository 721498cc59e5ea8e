"""ordlp: least models of formula-based logic programs over
ordinal-graded truth values, with a 3-valued collapse and independent
verification oracles."""

from .errors import (
    BudgetExceededError,
    FixpointInvariantError,
    InputError,
    NotNormalError,
    OrdlpError,
    ParseError,
    SignatureError,
    TruncationError,
)
from .fixpoint import (
    IterationLimits,
    LevelTrace,
    ModelResult,
    compute_least_model,
    is_fixed_point,
    level_iterate,
    tp_step,
)
from .ground import (
    GroundBase,
    GroundProgram,
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
    bottom,
    collapse,
    eq_alpha,
    interpretation_to_json,
    leq3,
    leq_alpha,
    leq_infty,
    lt_alpha,
    slice_atoms,
    three_valued_to_json,
    union_levels,
)
from .ordinal import (
    BOT,
    F,
    Ordinal,
    T,
    TOP,
    TruthValue,
    ZERO,
    parse_ordinal,
    parse_truth_value,
    tv_compare,
    tv_inf,
    tv_negate,
    tv_sup,
)
from .oracle import (
    GeneratorConfig,
    check_minimal_3v,
    enumerate_models,
    generate_formula_program,
    generate_normal_program,
    generate_program,
    run_least_model_suite,
    run_minimality_suite,
    run_wfs_differential,
    verify_least,
    wfs_normal,
)
from .semantics import (
    eval_formula,
    eval_formula_3v,
    eval_term,
    is_model,
    is_model_3v,
    satisfies_rule,
)
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
    Rule,
    Signature,
    Term,
    Top,
    Var,
    free_variables,
    make_pn_program,
    negation_degree,
    parse_program,
    program_from_rules,
    render_formula,
    render_program,
    render_rule,
)

__version__ = "0.1.0"
