"""Interpretations over a truncated base, their orderings, and collapse.

An interpretation is a total map from the base atoms into the truth
chain, stored as a finite dict plus a default so that the everything-
is-F(0) bottom costs nothing.  Instances are treated as immutable:
every operation returns a fresh interpretation.

The orderings come in three strengths.  ``eq_alpha`` compares all
values of degree <= alpha.  ``leq_alpha`` fixes everything of degree
< alpha and allows the F(alpha) set to grow and the T(alpha) set to
shrink from right to left.  ``leq_infty`` is the induced partial order
across all degrees; its witness search walks the degrees that actually
occur, in increasing order.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .errors import BaseMismatchError, TruncationError, UnionPreconditionError
from .ground import GroundBase
from .ordinal import BOT, F, Ordinal, TruthValue, as_ordinal
from .syntax import Atom, render_atom


class Interpretation:
    """Total assignment of truth values to the base atoms."""

    __slots__ = ("base", "_values", "default")

    def __init__(self, base: GroundBase, values=None, default: TruthValue = BOT):
        self.base = base
        self._values: dict[Atom, TruthValue] = dict(values) if values else {}
        self.default = default
        for atom in self._values:
            if atom not in base:
                raise BaseMismatchError(f"atom outside the base: {render_atom(atom)}")

    def value(self, atom: Atom) -> TruthValue:
        found = self._values.get(atom)
        if found is not None:
            return found
        if atom not in self.base:
            raise TruncationError(
                f"atom {render_atom(atom)} lies outside the truncated base; "
                "try a larger depth bound"
            )
        return self.default

    def assign(self, updates) -> "Interpretation":
        merged = dict(self._values)
        merged.update(updates)
        return Interpretation(self.base, merged, self.default)

    def items(self):
        for atom in self.base:
            yield atom, self.value(atom)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interpretation):
            return NotImplemented
        if self.base != other.base:
            return False
        return all(self.value(a) == other.value(a) for a in self.base)

    def __repr__(self) -> str:
        inside = ", ".join(f"{render_atom(a)}: {v}" for a, v in self.items())
        return f"Interpretation({{{inside}}})"


def bottom(base: GroundBase) -> Interpretation:
    """The least interpretation: every atom at F(0)."""
    return Interpretation(base)


def slice_atoms(interp: Interpretation, value: TruthValue) -> frozenset[Atom]:
    """All base atoms carrying exactly this value."""
    return frozenset(a for a, v in interp.items() if v == value)


def _check_same_base(i: Interpretation, j: Interpretation) -> None:
    if i.base != j.base:
        raise BaseMismatchError("interpretations over different bases")


def _deg_le(value: TruthValue, alpha: Ordinal) -> bool:
    # the undefined value has infinite degree
    return value.sign != 0 and value.degree <= alpha


def _deg_lt(value: TruthValue, alpha: Ordinal) -> bool:
    return value.sign != 0 and value.degree < alpha


def eq_alpha(i: Interpretation, j: Interpretation, alpha: int | Ordinal) -> bool:
    """Agreement on every F and T slice of degree <= alpha."""
    _check_same_base(i, j)
    a = as_ordinal(alpha)
    for atom in i.base:
        vi = i.value(atom)
        vj = j.value(atom)
        if vi != vj and (_deg_le(vi, a) or _deg_le(vj, a)):
            return False
    return True


def leq_alpha(i: Interpretation, j: Interpretation, alpha: int | Ordinal) -> bool:
    """Degree-alpha refinement order.

    Everything of degree < alpha agrees, every F(alpha) atom of j is
    F(alpha) in i, and every T(alpha) atom of i is T(alpha) in j.
    """
    _check_same_base(i, j)
    a = as_ordinal(alpha)
    for atom in i.base:
        vi = i.value(atom)
        vj = j.value(atom)
        if vi != vj:
            if _deg_lt(vi, a) or _deg_lt(vj, a):
                return False
            if vj.sign == -1 and vj.degree == a:
                return False
            if vi.sign == 1 and vi.degree == a:
                return False
    return True


def lt_alpha(i: Interpretation, j: Interpretation, alpha: int | Ordinal) -> bool:
    return leq_alpha(i, j, alpha) and not eq_alpha(i, j, alpha)


def leq_infty(i: Interpretation, j: Interpretation) -> bool:
    """The overall order: equal, or strictly below at some degree.

    If the two differ, they first differ at some degree that one of
    them actually uses, so scanning the occurring degrees in increasing
    order finds the witness level.
    """
    _check_same_base(i, j)
    if i == j:
        return True
    present: set[Ordinal] = set()
    for atom in i.base:
        for v in (i.value(atom), j.value(atom)):
            if v.sign != 0:
                present.add(v.degree)
    for a in sorted(present):
        if not eq_alpha(i, j, a):
            return lt_alpha(i, j, a)
    raise AssertionError("unequal interpretations must differ at an occurring degree")


def union_levels(
    levels: Iterable[Interpretation],
    alpha: int | Ordinal | None = None,
    *,
    base: GroundBase | None = None,
    check: bool = True,
) -> Interpretation:
    """Merge a coherent ascending level sequence into one interpretation.

    Level k contributes exactly its degree-k values; everything no
    level pinned falls to F(alpha).  The union of no levels is the
    bottom interpretation.  The coherence precondition (any two levels
    agree up to the lower index) is checked unless disabled.
    """
    levels = list(levels)
    if alpha is None:
        count = len(levels)
    else:
        count = as_ordinal(alpha).as_int()
        if count != len(levels):
            raise ValueError(f"expected {count} levels, got {len(levels)}")
    if levels:
        if base is not None and base != levels[0].base:
            raise BaseMismatchError("levels disagree with the given base")
        base = levels[0].base
    elif base is None:
        raise ValueError("the empty union needs an explicit base")
    if check:
        for gamma in range(len(levels)):
            for zeta in range(gamma):
                if not eq_alpha(levels[zeta], levels[gamma], zeta):
                    raise UnionPreconditionError(zeta, gamma)
    default = F(count)
    degrees = [Ordinal.from_int(k) for k in range(count)]
    values: dict[Atom, TruthValue] = {}
    for atom in base:
        for k, level in enumerate(levels):
            v = level.value(atom)
            if v.sign != 0 and v.degree == degrees[k]:
                values[atom] = v
                break
    return Interpretation(base, values, default)


class Truth3(enum.IntEnum):
    """Classical three-valued truth, ordered FALSE < UNDEFINED < TRUE."""

    FALSE = -1
    UNDEFINED = 0
    TRUE = 1

    def __str__(self) -> str:
        return {Truth3.FALSE: "F", Truth3.UNDEFINED: "0", Truth3.TRUE: "T"}[self]


def negate3(value: Truth3) -> Truth3:
    return Truth3(-value)


class ThreeValuedInterpretation:
    """Total assignment of three-valued truth to the base atoms."""

    __slots__ = ("base", "_values", "default")

    def __init__(self, base: GroundBase, values=None, default: Truth3 = Truth3.FALSE):
        self.base = base
        self._values: dict[Atom, Truth3] = dict(values) if values else {}
        self.default = default
        for atom in self._values:
            if atom not in base:
                raise BaseMismatchError(f"atom outside the base: {render_atom(atom)}")

    def value(self, atom: Atom) -> Truth3:
        if atom not in self.base:
            raise TruncationError(
                f"atom {render_atom(atom)} lies outside the truncated base; "
                "try a larger depth bound"
            )
        return self._values.get(atom, self.default)

    def items(self):
        for atom in self.base:
            yield atom, self.value(atom)

    def slice3(self, value: Truth3) -> frozenset[Atom]:
        return frozenset(a for a, v in self.items() if v == value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThreeValuedInterpretation):
            return NotImplemented
        if self.base != other.base:
            return False
        return all(self.value(a) == other.value(a) for a in self.base)

    def __repr__(self) -> str:
        inside = ", ".join(f"{render_atom(a)}: {v}" for a, v in self.items())
        return f"ThreeValuedInterpretation({{{inside}}})"


def collapse_value(value: TruthValue) -> Truth3:
    return Truth3(value.sign)


def collapse(interp: Interpretation) -> ThreeValuedInterpretation:
    """Forget degrees: F(a) -> F, 0 -> 0, T(a) -> T, atom by atom."""
    values = {a: collapse_value(v) for a, v in interp.items()}
    return ThreeValuedInterpretation(
        interp.base, values, collapse_value(interp.default)
    )


def leq3(i: ThreeValuedInterpretation, j: ThreeValuedInterpretation) -> bool:
    """Truth order on 3-valued interpretations: i is at least as false
    and at most as true as j."""
    if i.base != j.base:
        raise BaseMismatchError("interpretations over different bases")
    return j.slice3(Truth3.FALSE) <= i.slice3(Truth3.FALSE) and i.slice3(
        Truth3.TRUE
    ) <= j.slice3(Truth3.TRUE)


def interpretation_to_json(interp: Interpretation) -> dict:
    """Canonical JSON form: atoms in base order, degrees as text."""
    out = {}
    for atom, v in interp.items():
        sign = {-1: "F", 0: "0", 1: "T"}[v.sign]
        out[render_atom(atom)] = {
            "sign": sign,
            "degree": None if v.degree is None else str(v.degree),
        }
    return out


def three_valued_to_json(interp: ThreeValuedInterpretation) -> dict:
    return {render_atom(a): str(v) for a, v in interp.items()}
