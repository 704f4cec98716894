"""Upper-bound quotients for the success of repeated classical divisions.

When 3j+1 parties share one division, the probability of any global value
consistent with a transcript is bounded by a ratio of grouped binomial
sums, one family per division type: ``bound_A`` (the trit-revealing
(2,2,2) division), ``bound_F`` ((3,2,1) types), ``bound_L`` and ``bound_N``
((4,1,1) types).  All four converge to 1/3 as j grows, which is the
quantitative content of "the best classical protocol fails".

Values are exact fractions; floats appear only in table renderings.  The
residue-selection rule ``im_rule`` (how sub-configuration counts attach to
a global value) may be a fixed residue 0, 1, 2 or the default "max", which
takes the largest residue term per summand so the quotient stays an upper
bound under any concrete rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .combinat import binomial, grouped_sum, grouped_sum_primed

ImRule = int | str

_FAMILIES = ("A", "F", "L", "N")


@dataclass(frozen=True)
class BoundParams:
    """Parameter point of one bound family.

    ``j`` sizes the group (3j+1 parties); ``i`` and ``m`` select the
    A-family offsets; ``a`` the residue of the F/L/N families; ``im_rule``
    the sub-configuration residue rule.
    """

    j: int
    i: int = 0
    m: int = 0
    a: int = 0
    im_rule: ImRule = "max"


@dataclass(frozen=True)
class BoundRow:
    """One convergence-table entry; ``gap`` renders value - 1/3 as float."""

    family: str
    j: int
    i: int | None
    m: int | None
    a: int | None
    im_rule: ImRule | None
    value: Fraction

    @property
    def gap(self) -> float:
        return float(self.value - Fraction(1, 3))


def plus_op(z: int) -> int:
    """z clamped to 0 unless z is a positive integer."""
    return z if z > 0 else 0


def _check_j(j: int) -> None:
    if j < 1:
        raise ValueError(f"group parameter j must be >= 1, got {j}")


def _residue_terms(n: int, im_rule: ImRule) -> int:
    """Grouped sum over one residue class of n, under the selection rule."""
    if im_rule == "max":
        return max(grouped_sum(n, r, 3) for r in (0, 1, 2))
    if im_rule in (0, 1, 2):
        return grouped_sum(n, im_rule, 3)
    raise ValueError(f"im_rule must be 0, 1, 2 or 'max', got {im_rule!r}")


def bound_A(j: int, i: int, m: int) -> Fraction:
    """(2,2,2) family: zero-count classes against all admissible classes."""
    _check_j(j)
    if i not in (0, 1):
        raise ValueError(f"offset i must be 0 or 1, got {i}")
    if m not in (0, 3, 6):
        raise ValueError(f"offset m must be 0, 3 or 6, got {m}")
    n = 3 * j + 1
    return Fraction(grouped_sum(n, 1 + i + m, 9), grouped_sum(n, 1 + i, 3))


def bound_F(j: int, a: int, im_rule: ImRule = "max") -> Fraction:
    """(3,2,1) family: one three-value cell, residue a from outside parties."""
    _check_j(j)
    if a not in (0, 1, 2):
        raise ValueError(f"residue a must be in 0..2, got {a}")
    n = 3 * j + 1
    numerator = 2 * binomial(n, a)
    denominator = 0
    m = 0
    while a + m <= n:
        if m >= 3:
            numerator += binomial(n, a + m) * _residue_terms(a + m, im_rule)
        denominator += binomial(n, a + m) * 2 ** (a + m)
        m += 3
    return Fraction(numerator, denominator)


def _l_inner(am: int, rest: int, i_m: int) -> int:
    # Three (b, c) pairs with b + c = i_m mod 3 over representatives 0..2.
    return sum(
        grouped_sum_primed(am, b, 3) * grouped_sum_primed(rest, c, 3)
        for b in (0, 1, 2)
        for c in (0, 1, 2)
        if (b + c) % 3 == i_m
    )


def bound_L(j: int, a: int, im_rule: ImRule = "max") -> Fraction:
    """(4,1,1) family (mixed cell): primed grouped sums on both bit sides."""
    _check_j(j)
    if a not in (0, 1, 2):
        raise ValueError(f"residue a must be in 0..2, got {a}")
    n = 3 * j + 1
    numerator = 0
    denominator = 0
    m = 0
    while a + m <= n:
        am = a + m
        if im_rule == "max":
            inner = max(_l_inner(am, n - am, r) for r in (0, 1, 2))
        elif im_rule in (0, 1, 2):
            inner = _l_inner(am, n - am, im_rule)
        else:
            raise ValueError(f"im_rule must be 0, 1, 2 or 'max', got {im_rule!r}")
        numerator += binomial(n, am) * inner
        denominator += binomial(n, am) * 2**n
        m += 3
    return Fraction(numerator, denominator)


def bound_N(j: int, a: int) -> Fraction:
    """(4,1,1) family (single-bit cell); exactly 1/3 whenever a >= 1."""
    _check_j(j)
    if a not in (0, 1, 2):
        raise ValueError(f"residue a must be in 0..2, got {a}")
    n = 3 * j + 1
    numerator = 0
    denominator = 0
    m = 0
    while a + m <= n:
        numerator += binomial(n, m + a) * 3 ** plus_op(m + a - 1)
        denominator += binomial(n, m + a) * 3 ** (m + a)
        m += 3
    return Fraction(numerator, denominator)


def _family_points(family: str, j: int, im_rule: ImRule) -> list[BoundParams]:
    if family == "A":
        return [BoundParams(j, i=i, m=m) for i in (0, 1) for m in (0, 3, 6)]
    return [BoundParams(j, a=a, im_rule=im_rule) for a in (0, 1, 2)]


def bound_value(family: str, params: BoundParams) -> Fraction:
    """Evaluate one family at one parameter point."""
    if family == "A":
        return bound_A(params.j, params.i, params.m)
    if family == "F":
        return bound_F(params.j, params.a, params.im_rule)
    if family == "L":
        return bound_L(params.j, params.a, params.im_rule)
    if family == "N":
        return bound_N(params.j, params.a)
    raise ValueError(f"unknown bound family {family!r}; expected one of {_FAMILIES}")


def convergence_table(
    family: str,
    j_values: Iterable[int],
    im_rule: ImRule = "max",
    include_headline: bool = True,
) -> list[BoundRow]:
    """Evaluate a family on its parameter grid for each j.

    Emits one row per grid point and, when ``include_headline`` is set, a
    summary row per j taking the maximum over the grid (grid fields None),
    which is the quantity the per-type bound statements refer to.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown bound family {family!r}; expected one of {_FAMILIES}")
    rows: list[BoundRow] = []
    uses_rule = family in ("F", "L")
    grid_fields = ("i", "m") if family == "A" else ("a",)
    for j in sorted(set(j_values)):
        values = []
        for point in _family_points(family, j, im_rule):
            value = bound_value(family, point)
            values.append(value)
            rows.append(
                BoundRow(
                    family=family,
                    j=j,
                    i=point.i if "i" in grid_fields else None,
                    m=point.m if "m" in grid_fields else None,
                    a=point.a if "a" in grid_fields else None,
                    im_rule=im_rule if uses_rule else None,
                    value=value,
                )
            )
        if include_headline:
            rows.append(
                BoundRow(
                    family=family,
                    j=j,
                    i=None,
                    m=None,
                    a=None,
                    im_rule=im_rule if uses_rule else None,
                    value=max(values),
                )
            )
    return rows
