"""Ordinals below w^w in Cantor normal form, and the graded truth values.

The truth values form a single chain

    F(0) < F(1) < ... < 0 < ... < T(1) < T(0)

F(0) and T(0) act as classical False and True; higher indices are the
weaker values produced by negation-as-failure steps, and 0 (undefined)
sits in the middle.  The index of an F or T value is its *degree*; the
degree of 0 is infinite.

Degrees are ordinals below w^w, written in Cantor normal form.  Every
degree produced by a depth-truncated computation is finite; the full
ordinal type exists so that limit values such as T(w*1) or F(w^2*1) can
be written, compared and parsed in fixtures and documentation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering


@dataclass(frozen=True, order=True)
class Ordinal:
    """An ordinal below w^w as a sum of w^exp * coeff terms.

    ``terms`` holds (exponent, coefficient) pairs with strictly
    decreasing natural exponents and coefficients >= 1; the empty tuple
    is the ordinal 0.  Lexicographic tuple comparison on ``terms``
    coincides with the ordinal order, so ``order=True`` already yields
    the right ``<``.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = None
        for exponent, coefficient in self.terms:
            if exponent < 0:
                raise ValueError(f"negative exponent in ordinal: {exponent}")
            if coefficient < 1:
                raise ValueError(f"ordinal coefficient must be >= 1: {coefficient}")
            if previous is not None and exponent >= previous:
                raise ValueError("ordinal exponents must strictly decrease")
            previous = exponent

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError(f"ordinals are non-negative: {n}")
        return Ordinal(() if n == 0 else ((0, n),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def as_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"not a finite ordinal: {self}")
        return self.terms[0][1] if self.terms else 0

    def successor(self) -> "Ordinal":
        if self.terms and self.terms[-1][0] == 0:
            exponent, coefficient = self.terms[-1]
            return Ordinal(self.terms[:-1] + ((0, coefficient + 1),))
        return Ordinal(self.terms + ((0, 1),))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, coefficient in self.terms:
            if exponent == 0:
                parts.append(str(coefficient))
            elif exponent == 1:
                parts.append(f"w*{coefficient}")
            else:
                parts.append(f"w^{exponent}*{coefficient}")
        return " + ".join(parts)


def as_ordinal(value: "int | Ordinal") -> Ordinal:
    """Accept plain naturals wherever an ordinal is expected."""
    return Ordinal.from_int(value) if isinstance(value, int) else value


_ORDINAL_PART = re.compile(r"^w(?:\^(\d+))?(?:\*(\d+))?$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse the rendering produced by ``str(Ordinal)``.

    Accepts e.g. ``0``, ``7``, ``w*1 + 4``, ``w^2*3 + w*1 + 4``; the
    coefficient may be omitted (``w^2`` means ``w^2*1``).  The terms
    must appear in canonical order.
    """
    stripped = text.strip()
    if stripped == "0":
        return Ordinal()
    terms = []
    for raw in stripped.split("+"):
        part = raw.strip().replace(" ", "")
        if not part:
            raise ValueError(f"empty term in ordinal: {text!r}")
        if part.isdigit():
            terms.append((0, int(part)))
            continue
        match = _ORDINAL_PART.match(part)
        if not match:
            raise ValueError(f"cannot parse ordinal term: {part!r}")
        exponent = int(match.group(1)) if match.group(1) else 1
        coefficient = int(match.group(2)) if match.group(2) else 1
        terms.append((exponent, coefficient))
    try:
        return Ordinal(tuple(terms))
    except ValueError as exc:
        raise ValueError(f"non-canonical ordinal {text!r}: {exc}") from exc


FALSE_SIGN = -1
ZERO_SIGN = 0
TRUE_SIGN = 1


@total_ordering
@dataclass(frozen=True)
class TruthValue:
    """One point of the truth chain: F(degree), 0, or T(degree)."""

    sign: int  # -1 false side, 0 undefined, +1 true side
    degree: Ordinal | None = None  # None exactly for the undefined value

    def __post_init__(self) -> None:
        if self.sign not in (FALSE_SIGN, ZERO_SIGN, TRUE_SIGN):
            raise ValueError(f"bad truth-value sign: {self.sign}")
        if (self.degree is None) != (self.sign == ZERO_SIGN):
            raise ValueError("degree must be present iff the value is not 0")

    def __lt__(self, other: "TruthValue") -> bool:
        if self.sign != other.sign:
            return self.sign < other.sign
        if self.sign == FALSE_SIGN:
            return self.degree < other.degree
        if self.sign == TRUE_SIGN:
            # higher degree means a weaker true value
            return other.degree < self.degree
        return False

    def __str__(self) -> str:
        if self.sign == ZERO_SIGN:
            return "0"
        letter = "F" if self.sign == FALSE_SIGN else "T"
        return f"{letter}({self.degree})"


def F(degree: int | Ordinal) -> TruthValue:
    return TruthValue(FALSE_SIGN, as_ordinal(degree))


def T(degree: int | Ordinal) -> TruthValue:
    return TruthValue(TRUE_SIGN, as_ordinal(degree))


ZERO = TruthValue(ZERO_SIGN, None)
BOT = F(0)  # least truth value, classical False
TOP = T(0)  # greatest truth value, classical True


def tv_compare(a: TruthValue, b: TruthValue) -> int:
    """-1, 0 or +1 as a <, =, > b in the truth chain."""
    if a == b:
        return 0
    return -1 if a < b else 1


def tv_sup(values) -> TruthValue:
    """Least upper bound of a finite collection; sup of nothing is F(0)."""
    values = list(values)
    return max(values) if values else BOT


def tv_inf(values) -> TruthValue:
    """Greatest lower bound of a finite collection; inf of nothing is T(0)."""
    values = list(values)
    return min(values) if values else TOP


def tv_negate(value: TruthValue) -> TruthValue:
    """Negation bumps the degree by one and flips the side; 0 stays 0."""
    if value.sign == ZERO_SIGN:
        return ZERO
    degree = value.degree.successor()
    return T(degree) if value.sign == FALSE_SIGN else F(degree)


_TRUTH_VALUE = re.compile(r"^([TF])\((.+)\)$")


def parse_truth_value(text: str) -> TruthValue:
    """Parse ``T(...)``, ``F(...)`` or ``0``."""
    stripped = text.strip()
    if stripped == "0":
        return ZERO
    match = _TRUTH_VALUE.match(stripped)
    if not match:
        raise ValueError(f"cannot parse truth value: {text!r}")
    degree = parse_ordinal(match.group(2))
    return T(degree) if match.group(1) == "T" else F(degree)
