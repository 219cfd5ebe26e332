"""Step-by-step verification of the ``a = 2`` and ``a = 3`` arguments.

Each ``check_*`` function rebuilds both sides of one displayed equation or
inequality from the polynomial primitives, at concrete parameters, and
returns a :class:`StepVerdict`.  Nothing is shared between steps, so a
failure points at exactly one equation.

Conventions: ``d = bc/3`` in the ``a = 3`` steps, and every "first
difference" is cut at ``floor(bc/2)`` (``= floor(3d/2)``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .kohdec import (
    expand_d3,
    koh_term,
    lambda_family,
    lambda_indices,
    lambda_j_max,
    mu_i_max,
    sum_polys,
)
from .parallel import pmap
from .qbinom import even_strict_increase, gauss_box
from .qpoly import (
    ZERO,
    QPoly,
    block,
    dominates,
    monomial,
    range_poly,
    truncate,
    truncated_first_difference,
)


class Step(str, enum.Enum):
    A2_COEFF = "A2_COEFF"
    A2_EVEN = "A2_EVEN"
    EQ_A = "EQ_A"
    EQ_AA = "EQ_AA"
    INEQ_1 = "INEQ_1"
    INEQ_2 = "INEQ_2"
    RL = "RL"
    EQ_66_DOMINANCE = "EQ_66_DOMINANCE"
    FINAL_A3 = "FINAL_A3"


A3_STEPS = (Step.EQ_A, Step.EQ_AA, Step.INEQ_1, Step.INEQ_2, Step.RL, Step.EQ_66_DOMINANCE, Step.FINAL_A3)


@dataclass(frozen=True)
class StepVerdict:
    step_id: Step
    params: Dict[str, int]
    passed: bool
    detail: Optional[str] = None
    branch: str = "direct"
    values: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.passed and self.detail is not None:
            raise ValueError("a passing verdict carries no detail")
        if not self.passed and self.detail is None:
            raise ValueError("a failing verdict must say where it failed")

    def to_json(self) -> dict:
        out = {
            "step": self.step_id.value,
            "params": dict(self.params),
            "pass": self.passed,
            "detail": self.detail,
            "branch": self.branch,
        }
        if self.values:
            out["values"] = {k: str(v) for k, v in self.values.items()}
        return out


def _verdict(step, params, fail_at, what="degree", **kw) -> StepVerdict:
    if fail_at is None:
        return StepVerdict(step, params, True, **kw)
    return StepVerdict(step, params, False, f"first failure at {what} {fail_at}", **kw)


def _require_a3(b: int, c: int, bmin: int = 3) -> None:
    if b < bmin or b % 3:
        raise ValueError(f"b must be a multiple of 3 with b >= {bmin}, got {b}")
    if c < 4:
        raise ValueError(f"c must be at least 4, got {c}")


# -- a = 2 -------------------------------------------------------------------


def check_a2_coeffs(d: int) -> StepVerdict:
    """Coefficients of ``[d+2 choose 2]_q`` through degree ``d`` are ``ceil((i+1)/2)``."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    p = gauss_box(2, d)
    bad = next((i for i in range(d + 1) if p[i] != (i + 2) // 2), None)
    return _verdict(Step.A2_COEFF, {"d": d}, bad)


def check_a2(b: int, c: int) -> StepVerdict:
    """``b_i - b_{i-1} >= a_i - a_{i-1}`` for ``1 <= i <= bc/2``.

    ``a_i`` are the coefficients of ``[bc/2 + 2 choose 2]_q``, ``b_i`` those of
    ``[b+c choose b]_q``.  Cross-checked against the even-degree strict
    increase criterion, which must give the same answer.
    """
    if not 3 <= b <= c:
        raise ValueError(f"check_a2 needs c >= b >= 3, got b={b}, c={c}")
    if (b * c) % 2:
        raise ValueError(f"bc must be even, got b={b}, c={c}")
    d = b * c // 2
    a_ = gauss_box(2, d)
    b_ = gauss_box(b, c)
    bad = next((i for i in range(1, d + 1) if b_[i] - b_[i - 1] < a_[i] - a_[i - 1]), None)
    params = {"b": b, "c": c}
    if (bad is None) != even_strict_increase(b, c):
        return StepVerdict(Step.A2_EVEN, params, False, "difference test and even-degree criterion disagree")
    return _verdict(Step.A2_EVEN, params, bad)


# -- a = 3 -------------------------------------------------------------------


def check_eq_a(b: int, c: int) -> StepVerdict:
    """The iterated expansion sums to ``[d+3 choose 3]_q``."""
    _require_a3(b, c)
    d = b * c // 3
    diff = sum_polys(expand_d3(b, c)) - gauss_box(3, d)
    return _verdict(Step.EQ_A, {"b": b, "c": c}, None if not diff else diff.low_degree())


def _aa_rhs(b: int, c: int) -> QPoly:
    d = b * c // 3
    return sum_polys([monomial(6 * i) + block(6 * i + 2, d + 2 * i) for i in range((b - 3) // 3 + 1)])


def check_eq_aa(b: int, c: int) -> StepVerdict:
    _require_a3(b, c)
    d = b * c // 3
    terms = expand_d3(b, c)[1:]  # drop the head term
    lhs = truncated_first_difference(sum_polys(terms), 3 * d)
    rhs = truncate(_aa_rhs(b, c), 3 * d // 2)
    diff = lhs - rhs
    return _verdict(Step.EQ_AA, {"b": b, "c": c}, None if not diff else diff.low_degree())


def ineq1_lhs(b: int, c: int, use_koh_terms: bool = False) -> QPoly:
    """Left side of (1), cut at ``floor(bc/2)``.

    By default each ``(i, j)`` contributes the displayed product
    ``(1 + ... + q^{ci-4i})(q^{6i+2j} + ... + q^{ci+2i+cj})``.  With
    ``use_koh_terms`` it contributes the first difference of the actual KOH
    term of ``lambda^{i,j}`` instead; the two differ when ``c = 4`` and the
    partition has no part equal to 1.
    """
    half = b * c // 2
    acc = ZERO
    for i, j in lambda_indices(b, c):
        if use_koh_terms:
            acc += truncated_first_difference(koh_term(lambda_family(b, c, i, j), c).value, b * c)
        else:
            acc += range_poly(c * i - 4 * i) * block(6 * i + 2 * j, c * i + 2 * i + c * j)
    return truncate(acc, half)


def ineq1_rhs(b: int, c: int) -> QPoly:
    d = b * c // 3
    return sum_polys([block(6 * i + 2, d + 2 * i) for i in range(1, (b - 3) // 3 + 1)])


def check_ineq_1(b: int, c: int, use_koh_terms: bool = False) -> StepVerdict:
    _require_a3(b, c, bmin=6)
    rep = dominates(ineq1_lhs(b, c, use_koh_terms), ineq1_rhs(b, c))
    branch = "koh-terms" if use_koh_terms else "direct"
    return _verdict(Step.INEQ_1, {"b": b, "c": c}, rep.first_violation_degree, branch=branch)


def ineq2_sides(b: int, c: int, i: int):
    """Both sides of (2) for index ``i``, using the family index ``i - floor(b/6)``."""
    k = i - b // 6
    d = b * c // 3
    lhs = sum_polys([
        block(1, (c - 4) * k) * block(6 * k + 2 * j, (c + 2) * k + c * j)
        for j in range(1, lambda_j_max(b, c, k) + 1)
    ])
    return lhs, block(6 * i + 2, d + 2 * i)


def check_ineq_2(b: int, c: int, i: int) -> StepVerdict:
    _require_a3(b, c, bmin=6)
    if c <= 4:
        raise ValueError(f"(2) is only used for c > 4, got c={c}")
    if c == 5 and b < 18:
        raise ValueError(f"(2) with c=5 needs b >= 18, got b={b}")
    if not b // 6 + 1 <= i <= (b - 3) // 3:
        raise ValueError(f"i={i} outside {b // 6 + 1}..{(b - 3) // 3} for b={b}")
    params = {"b": b, "c": c, "i": i}
    lhs, rhs = ineq2_sides(b, c, i)
    if not lhs:
        return StepVerdict(Step.INEQ_2, params, False, "left side is empty")
    if lhs.low_degree() > rhs.low_degree():
        return StepVerdict(Step.INEQ_2, params, False,
                           f"left side begins at degree {lhs.low_degree()} > {rhs.low_degree()}")
    if lhs.degree < rhs.degree:
        return StepVerdict(Step.INEQ_2, params, False,
                           f"left side ends at degree {lhs.degree} < {rhs.degree}")
    return _verdict(Step.INEQ_2, params, dominates(lhs, rhs).first_violation_degree)


def rl_pairs(b: int):
    return [((b - 6) // 3, 2), ((b - 6) // 3, 3), ((b - 9) // 3, 3), ((b - 9) // 3, 4)]


def check_rl(b: int) -> StepVerdict:
    """At ``c = 4``: the degree ``2b-6`` coefficient of (1) has slack.

    Checks ``r_{2b-6} = 2``, ``l_{2b-6} >= 4``, and that each of the four
    named index pairs is admissible and reaches degree ``2b-6``.
    """
    if b <= 6 or b % 2 or b % 3:
        raise ValueError(f"check_rl needs b even, b > 6, b divisible by 3; got {b}")
    c = 4
    n = 2 * b - 6
    params = {"b": b, "c": c}
    lval = ineq1_lhs(b, c)[n]
    rval = ineq1_rhs(b, c)[n]
    values = {"l": lval, "r": rval}
    valid = set(lambda_indices(b, c))
    for i, j in rl_pairs(b):
        if (i, j) not in valid:
            return StepVerdict(Step.RL, params, False, f"pair {(i, j)} outside the index range", values=values)
        if not (range_poly(c * i - 4 * i) * block(6 * i + 2 * j, c * i + 2 * i + c * j))[n]:
            return StepVerdict(Step.RL, params, False, f"pair {(i, j)} misses degree {n}", values=values)
    if rval != 2:
        return StepVerdict(Step.RL, params, False, f"r_{n} = {rval}, expected 2", values=values)
    if lval < 4:
        return StepVerdict(Step.RL, params, False, f"l_{n} = {lval} < 4", values=values)
    return StepVerdict(Step.RL, params, True, values=values)


def eq66_lhs(b: int, c: int) -> QPoly:
    return sum_polys([block(2 * i, c * i) for i in range(1, mu_i_max(b) + 1)])


def eq66_rhs(b: int, c: int) -> QPoly:
    d = b * c // 3
    return block(2, d) + sum_polys([monomial(6 * i) for i in range(1, (b - 3) // 3 + 1)])


def check_66(b: int, c: int) -> StepVerdict:
    """Display (66) dominates ``q^2 + ... + q^d`` plus the ``q^{6i}`` leftovers.

    ``b = 6`` with ``c`` in {4, 5} is settled by the end-to-end check.  For
    ``c = 4`` and even ``b > 6`` the slack from (rl) is pooled in: (1) and
    (66) are checked together against the sum of their right sides.
    """
    _require_a3(b, c, bmin=6)
    params = {"b": b, "c": c}
    if b == 6 and c in (4, 5):
        final = check_final_a3(b, c)
        return StepVerdict(Step.EQ_66_DOMINANCE, params, final.passed, final.detail, branch="final")
    if c == 4 and b % 2 == 0:
        rl = check_rl(b)
        if not rl.passed:
            return StepVerdict(Step.EQ_66_DOMINANCE, params, False, f"rl reserve unavailable: {rl.detail}",
                               branch="rl")
        lhs = ineq1_lhs(b, c) + eq66_lhs(b, c)
        rhs = ineq1_rhs(b, c) + eq66_rhs(b, c)
        return _verdict(Step.EQ_66_DOMINANCE, params, dominates(lhs, rhs).first_violation_degree, branch="rl")
    return _verdict(Step.EQ_66_DOMINANCE, params,
                    dominates(eq66_lhs(b, c), eq66_rhs(b, c)).first_violation_degree)


def check_final_a3(b: int, c: int) -> StepVerdict:
    """``(1-q)[d+3 choose 3]_q <= (1-q)[b+c choose b]_q`` through degree ``floor(bc/2)``."""
    _require_a3(b, c)
    d = b * c // 3
    small = truncated_first_difference(gauss_box(3, d), b * c)
    big = truncated_first_difference(gauss_box(b, c), b * c)
    return _verdict(Step.FINAL_A3, {"b": b, "c": c}, dominates(big, small).first_violation_degree)


# -- grids -------------------------------------------------------------------


def _a2_cell(bc) -> List[StepVerdict]:
    b, c = bc
    return [check_a2_coeffs(b * c // 2), check_a2(b, c)]


def run_a2(bmax: int, cmax: int, jobs: Optional[int] = None) -> List[StepVerdict]:
    cells = [(b, c) for b in range(3, bmax + 1) for c in range(b, cmax + 1) if (b * c) % 2 == 0]
    return [v for vs in pmap(_a2_cell, cells, jobs) for v in vs]


def a3_cell(b: int, c: int, steps: Sequence[Step] = A3_STEPS) -> List[StepVerdict]:
    """Every applicable ``a = 3`` step at ``(b, c)``."""
    steps = set(steps)
    out = []
    if Step.EQ_A in steps:
        out.append(check_eq_a(b, c))
    if Step.EQ_AA in steps:
        out.append(check_eq_aa(b, c))
    if b >= 6:
        if Step.INEQ_1 in steps:
            out.append(check_ineq_1(b, c))
        if Step.INEQ_2 in steps and (c >= 6 or (c == 5 and b >= 18)):
            out.extend(check_ineq_2(b, c, i) for i in range(b // 6 + 1, (b - 3) // 3 + 1))
        if Step.RL in steps and c == 4 and b > 6 and b % 2 == 0:
            out.append(check_rl(b))
        if Step.EQ_66_DOMINANCE in steps:
            out.append(check_66(b, c))
        if Step.FINAL_A3 in steps:
            out.append(check_final_a3(b, c))
    return out


def _a3_cell(args) -> List[StepVerdict]:
    return a3_cell(*args)


def run_a3(bmax: int, cmax: int, steps: Sequence[Step] = A3_STEPS, jobs: Optional[int] = None) -> List[StepVerdict]:
    steps = tuple(steps)
    cells = [(b, c, steps) for b in range(3, bmax + 1, 3) for c in range(4, cmax + 1)]
    return [v for vs in pmap(_a3_cell, cells, jobs) for v in vs]
