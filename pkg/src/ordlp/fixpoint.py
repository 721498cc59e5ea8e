"""The consequence operator, the per-degree level iteration, and the
least-model ladder.

The construction climbs degree levels 0, 1, 2, ...  At level alpha it
starts from the union of all earlier levels and iterates the
consequence operator.  On a finite base the pair of level-alpha slices
(atoms at T(alpha), atoms at F(alpha)) can change only finitely often,
so successor steps are repeated until the pair survives one step
unchanged; then the limit rule settles the level: values of degree
below alpha are frozen as they were at the level's start, atoms that
ever reached T(alpha) keep it, atoms that stayed at F(alpha) through
every stage keep it, and everything else falls to F(alpha+1).  The
whole round (iterate, then settle) repeats until settling changes
nothing.

A level is *productive* when it pins at least one atom at its own
degree.  Between productive levels there can be short empty gaps: a
body with nested negation lifts values by its negation depth, so the
next productive degree can skip ahead by up to that amount.  The
ladder therefore stops only after max-negation-degree + 1 consecutive
empty levels (at least two), and the first level of that empty run is
the program depth.  Atoms still unsettled there oscillate forever and
get the undefined value.

Every run re-checks the chain laws it relies on (slice monotonicity,
level coherence, stability of the settled level, and that the final
interpretation reproduces itself under the consequence operator).  A
failed check raises; it cannot be provoked by input data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import FixpointInvariantError, IterationLimitError
from .ground import GroundUniverse, ground_program, herbrand_base
from .interp import (
    Interpretation,
    eq_alpha,
    leq_alpha,
    slice_atoms,
    union_levels,
)
from .ordinal import BOT, F, Ordinal, T, ZERO, TruthValue, tv_sup
from .semantics import eval_formula
from .syntax import Atom, Program, negation_degree


@dataclass
class IterationLimits:
    """Bug tripwires; any legitimate run stays far inside these."""

    max_steps_per_level: int | None = None
    max_levels: int | None = None

    def steps_budget(self, base_size: int) -> int:
        if self.max_steps_per_level is not None:
            return self.max_steps_per_level
        # per round the slice pair moves at most 2n+2 times, and there
        # are at most 2n+2 rounds, so this can never bind legitimately
        return (2 * base_size + 4) * (2 * base_size + 5)

    def levels_budget(self, base_size: int, gap_budget: int) -> int:
        if self.max_levels is not None:
            return self.max_levels
        # each productive level pins an atom; gaps are bounded
        return (base_size + 2) * (gap_budget + 1) + 2


@dataclass
class LevelTrace:
    """What one level of the ladder did."""

    level: int
    successor_steps: int
    limit_applications: int
    true_slice: tuple[Atom, ...]
    false_slice: tuple[Atom, ...]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "successor_steps": self.successor_steps,
            "limit_applications": self.limit_applications,
            "true_slice_size": len(self.true_slice),
            "false_slice_size": len(self.false_slice),
        }


@dataclass
class ModelResult:
    """The least model together with its construction record."""

    model: Interpretation
    depth: Ordinal
    levels: list[Interpretation] = field(repr=False, default_factory=list)
    traces: list[LevelTrace] = field(default_factory=list)
    truncated_heads: int = 0


def tp_step(
    rules, interp: Interpretation, universe: GroundUniverse
) -> Interpretation:
    """One application of the consequence operator.

    Each atom moves to the least upper bound of its rule-body values;
    an atom without rules falls to F(0).
    """
    bodies: dict[Atom, list] = {}
    for rule in rules:
        bodies.setdefault(rule.head, []).append(rule.body)
    values = {
        atom: tv_sup(
            eval_formula(body, interp, {}, universe)
            for body in bodies.get(atom, ())
        )
        for atom in interp.base
    }
    return Interpretation(interp.base, values, BOT)


def level_iterate(
    rules,
    start: Interpretation,
    alpha: int,
    universe: GroundUniverse,
    limits: IterationLimits | None = None,
) -> tuple[Interpretation, LevelTrace]:
    """Run one degree level to stability.

    ``start`` must not overtake its own consequences at this degree;
    the settled result agrees with its consequences on every degree up
    to alpha and does not overtake them at alpha + 1.
    """
    limits = limits or IterationLimits()
    base = start.base
    budget = limits.steps_budget(len(base))
    a = Ordinal.from_int(alpha)
    t_here = T(a)
    f_here = F(a)
    f_next = F(alpha + 1)

    current = start
    step = tp_step(rules, current, universe)
    if not leq_alpha(current, step, alpha):
        raise FixpointInvariantError(
            f"level {alpha} started from an interpretation that overtakes "
            "its own consequences"
        )

    ever_true = set(slice_atoms(start, t_here))
    always_false = set(slice_atoms(start, f_here))
    steps = 0
    limit_applications = 0
    previous_settled: Interpretation | None = None

    while True:
        # successor stages until the level slices survive a step
        while True:
            steps += 1
            if steps > budget:
                raise IterationLimitError(
                    f"level {alpha} exceeded {budget} successor steps"
                )
            here = (slice_atoms(current, t_here), slice_atoms(current, f_here))
            there = (slice_atoms(step, t_here), slice_atoms(step, f_here))
            if not (here[0] <= there[0] and there[1] <= here[1]):
                raise FixpointInvariantError(
                    f"level {alpha} slices moved the wrong way: the true "
                    "slice must grow and the false slice must shrink"
                )
            ever_true |= there[0]
            always_false &= there[1]
            current = step
            if here == there:
                break
            step = tp_step(rules, current, universe)

        # limit stage: freeze low degrees, settle this level's slices
        values: dict[Atom, TruthValue] = {}
        for atom in base:
            v0 = start.value(atom)
            if v0.sign != 0 and v0.degree < a:
                values[atom] = v0
            elif atom in ever_true:
                values[atom] = t_here
            elif atom in always_false:
                values[atom] = f_here
            else:
                values[atom] = f_next
        settled = Interpretation(base, values, f_next)
        limit_applications += 1
        if previous_settled is not None and settled == previous_settled:
            break
        previous_settled = settled
        current = settled
        step = tp_step(rules, current, universe)

    after = tp_step(rules, settled, universe)
    if not eq_alpha(settled, after, alpha) or not leq_alpha(settled, after, alpha + 1):
        raise FixpointInvariantError(
            f"level {alpha} settled on an unstable interpretation"
        )
    trace = LevelTrace(
        level=alpha,
        successor_steps=steps,
        limit_applications=limit_applications,
        true_slice=tuple(a_ for a_ in base if a_ in ever_true),
        false_slice=tuple(a_ for a_ in base if a_ in always_false),
    )
    return settled, trace


def compute_least_model(
    program: Program,
    universe: GroundUniverse,
    limits: IterationLimits | None = None,
) -> ModelResult:
    """Climb the level ladder and assemble the least model."""
    limits = limits or IterationLimits()
    grounded = ground_program(program, universe)
    base = herbrand_base(program.signature, universe)
    max_neg = max((negation_degree(r.body) for r in program.rules), default=0)
    gap_budget = max(1, max_neg) + 1
    max_levels = limits.levels_budget(len(base), gap_budget)

    levels: list[Interpretation] = []
    traces: list[LevelTrace] = []
    empty_run = 0
    delta: int | None = None

    for alpha in itertools.count():
        if alpha > max_levels:
            raise IterationLimitError(
                f"ladder exceeded {max_levels} levels without stabilizing"
            )
        # the coherence pairs are re-verified below as each level lands,
        # so the union may skip its own quadratic pass
        merged = union_levels(levels, alpha, base=base, check=False)
        if not leq_alpha(merged, tp_step(grounded.rules, merged, universe), alpha):
            raise FixpointInvariantError(
                f"the union of levels below {alpha} overtakes its own consequences"
            )
        settled, trace = level_iterate(grounded.rules, merged, alpha, universe, limits)
        for gamma, earlier in enumerate(levels):
            if not eq_alpha(earlier, settled, gamma):
                raise FixpointInvariantError(
                    f"level {alpha} rewrote degrees pinned at level {gamma}"
                )
        levels.append(settled)
        traces.append(trace)

        if trace.true_slice or trace.false_slice:
            empty_run = 0
        else:
            empty_run += 1
            if empty_run >= gap_budget:
                delta = alpha - gap_budget + 1
                break

    d = Ordinal.from_int(delta)
    chosen = levels[delta]
    values = {
        atom: (v if v.sign != 0 and v.degree < d else ZERO)
        for atom, v in chosen.items()
    }
    model = Interpretation(base, values, ZERO)
    final = tp_step(grounded.rules, model, universe)
    if final != model:
        raise FixpointInvariantError(
            "the assembled model does not reproduce itself under the "
            "consequence operator"
        )
    return ModelResult(
        model=model,
        depth=d,
        levels=levels,
        traces=traces,
        truncated_heads=grounded.truncated_heads,
    )


def is_fixed_point(
    program: Program, interp: Interpretation, universe: GroundUniverse
) -> bool:
    grounded = ground_program(program, universe)
    return tp_step(grounded.rules, interp, universe) == interp
