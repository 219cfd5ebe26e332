"""Exact univariate polynomials over the integers.

A :class:`QPoly` is an immutable tuple of Python ints, lowest degree first,
with trailing zeros stripped so that equality is structural.  The zero
polynomial is the empty tuple; its degree is ``-inf``.

Besides the ring operations this module carries the predicates used to talk
about coefficient sequences (symmetry, nonnegativity, unimodality) and the
half-range first difference that turns a unimodality statement about a
symmetric polynomial into a nonnegativity statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "QPoly",
    "ZERO",
    "ONE",
    "KARATSUBA_THRESHOLD",
    "CheckReport",
    "monomial",
    "range_poly",
    "block",
    "is_symmetric",
    "unimodality_report",
    "truncate",
    "truncated_first_difference",
    "dominates",
    "multiply",
]

# Operand length above which multiplication switches to Karatsuba.
KARATSUBA_THRESHOLD = 64

NEG_INF = -math.inf


def _strip(coeffs: Sequence[int]) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class QPoly:
    coeffs: tuple = ()

    def __post_init__(self):
        c = self.coeffs
        if not isinstance(c, tuple) or (c and not c[-1]):
            object.__setattr__(self, "coeffs", _strip(tuple(c)))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "QPoly":
        return cls(tuple(int(x) for x in coeffs))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> Union[int, float]:
        """Degree, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative degree")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def padded(self, length: int) -> list:
        """Coefficient list of exactly ``length`` entries (zero-padded)."""
        if length < len(self.coeffs):
            raise ValueError(f"polynomial of degree {self.degree} does not fit in {length} slots")
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def low_degree(self) -> Union[int, float]:
        """Smallest degree carrying a nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return NEG_INF

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return QPoly(_strip(out))

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "QPoly") -> "QPoly":
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            return QPoly(_strip([x * other for x in self.coeffs]))
        if not isinstance(other, QPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        return QPoly(_strip(_multiply(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def shift(self, k: int) -> "QPoly":
        """Multiply by ``q**k``."""
        if k < 0:
            raise ValueError(f"shift by negative power q^{k}")
        if not self.coeffs or k == 0:
            return self
        return QPoly((0,) * k + self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        """Decimal strings, lowest degree first."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "QPoly":
        return cls(tuple(int(s) for s in data))


ZERO = QPoly(())
ONE = QPoly((1,))


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if not y:
            continue
        for i, x in enumerate(a):
            out[i + j] += x * y
    return out


def _karatsuba(a: Sequence[int], b: Sequence[int], threshold: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    m = len(b)
    if m <= threshold:
        return _schoolbook(a, b)
    out = [0] * (len(a) + m - 1)
    if len(a) >= 2 * m:
        # unbalanced: cut the long operand into pieces of the short one's length
        for s in range(0, len(a), m):
            for i, x in enumerate(_karatsuba(a[s:s + m], b, threshold)):
                out[s + i] += x
        return out
    h = len(a) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(a0, b0, threshold)
    z2 = _karatsuba(a1, b1, threshold)
    z1 = _karatsuba(_addlists(a0, a1), _addlists(b0, b1), threshold)
    for i, x in enumerate(z0):
        out[i] += x
        z1[i] -= x
    for i, x in enumerate(z2):
        out[i + 2 * h] += x
        z1[i] -= x
    for i, x in enumerate(z1):
        if x:
            out[i + h] += x
    return out


def _addlists(a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return out


def _multiply(a: Sequence[int], b: Sequence[int], threshold: Optional[int] = None) -> list:
    t = KARATSUBA_THRESHOLD if threshold is None else threshold
    if min(len(a), len(b)) <= t:
        return _schoolbook(a, b)
    return _karatsuba(a, b, max(t, 1))


def multiply(p: QPoly, r: QPoly, threshold: Optional[int] = None) -> QPoly:
    """Product with an explicit Karatsuba threshold (``None`` = module default)."""
    if not p or not r:
        return ZERO
    return QPoly(_strip(_multiply(p.coeffs, r.coeffs, threshold)))


def monomial(k: int, coeff: int = 1) -> QPoly:
    return QPoly((0,) * k + (coeff,))


def range_poly(k: int) -> QPoly:
    """``1 + q + ... + q^k``."""
    if k < 0:
        raise ValueError("range_poly needs k >= 0")
    return QPoly((1,) * (k + 1))


def block(lo: int, hi: int) -> QPoly:
    """``q^lo + ... + q^hi``; zero when ``hi < lo``."""
    if lo < 0:
        raise ValueError("block must start at a nonnegative degree")
    if hi < lo:
        return ZERO
    return range_poly(hi - lo).shift(lo)


# -- coefficient predicates --------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    """Verdict on one coefficient sequence or one degreewise comparison.

    ``first_violation_degree`` is the earliest degree at which any of the
    reported predicates fails, or ``None`` when everything holds.
    """

    symmetric: bool = True
    nonnegative: bool = True
    unimodal: bool = True
    first_violation_degree: Optional[int] = None
    difference_degree: int = 0
    first_negative: Optional[int] = None
    first_unimodal_violation: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.symmetric and self.nonnegative and self.unimodal

    def to_json(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "nonnegative": self.nonnegative,
            "unimodal": self.unimodal,
            "first_violation_degree": self.first_violation_degree,
            "difference_degree": self.difference_degree,
        }


def _seq(p: Union[QPoly, Sequence[int]]) -> Sequence[int]:
    return p.coeffs if isinstance(p, QPoly) else p


def first_asymmetry(p: Union[QPoly, Sequence[int]], degree: Optional[int] = None) -> Optional[int]:
    c = _seq(p)
    if degree is None:
        degree = len(c) - 1
    if len(c) - 1 > degree:
        return degree + 1
    get = lambda i: c[i] if 0 <= i < len(c) else 0  # noqa: E731
    for i in range(degree // 2 + 1):
        if get(i) != get(degree - i):
            return i
    return None


def is_symmetric(p: Union[QPoly, Sequence[int]], degree: Optional[int] = None) -> bool:
    """Palindrome test about ``degree / 2``.

    ``degree`` defaults to the actual degree.  Passing a nominal degree lets a
    difference of two degree-``N`` polynomials whose top coefficients cancel
    be tested about ``N / 2``.  The zero polynomial counts as symmetric.
    """
    if not _seq(p) and degree is None:
        return True
    return first_asymmetry(p, degree) is None


def _first_negative(c: Sequence[int]) -> Optional[int]:
    for i, x in enumerate(c):
        if x < 0:
            return i
    return None


def _first_unimodal_violation(c: Sequence[int]) -> Optional[int]:
    # first degree that strictly increases after some earlier strict decrease
    dropped = False
    for i in range(1, len(c)):
        if c[i] < c[i - 1]:
            dropped = True
        elif c[i] > c[i - 1] and dropped:
            return i
    return None


def unimodality_report(p: Union[QPoly, Sequence[int]], degree: Optional[int] = None) -> CheckReport:
    """Symmetry, nonnegativity and unimodality of a coefficient sequence.

    A sequence is unimodal when it never strictly increases after a strict
    decrease.  With ``degree`` given, the sequence is read as having exactly
    ``degree + 1`` slots (zero-padded), which matters for differences whose
    leading coefficients cancel.  The zero polynomial is symmetric,
    nonnegative and unimodal.
    """
    c = list(_seq(p))
    if degree is not None:
        if len(c) > degree + 1:
            raise ValueError(f"sequence of length {len(c)} exceeds degree {degree}")
        c += [0] * (degree + 1 - len(c))
    asym = first_asymmetry(c) if c else None
    neg = _first_negative(c)
    uni = _first_unimodal_violation(c)
    hits = [x for x in (asym, neg, uni) if x is not None]
    return CheckReport(
        symmetric=asym is None,
        nonnegative=neg is None,
        unimodal=uni is None,
        first_violation_degree=min(hits) if hits else None,
        difference_degree=max(len(c) - 1, 0),
        first_negative=neg,
        first_unimodal_violation=uni,
    )


def truncate(p: QPoly, top: int) -> QPoly:
    """Drop every term of degree above ``top``."""
    if top < 0:
        return ZERO
    return QPoly(_strip(p.coeffs[: top + 1]))


def truncated_first_difference(p: QPoly, degree: Optional[int] = None) -> QPoly:
    """``(1 - q) p`` kept through the middle degree.

    The result has ``d(0) = p(0)`` and ``d(i) = p(i) - p(i-1)`` for
    ``1 <= i <= floor(degree / 2)``; ``degree`` defaults to ``deg p``.  Pass
    the nominal degree when ``p`` is one summand of a larger symmetric
    polynomial, so every summand is cut at the same place.
    """
    if degree is None:
        if not p:
            return ZERO
        degree = p.degree
    half = degree // 2
    c = p.coeffs
    get = lambda i: c[i] if i < len(c) else 0  # noqa: E731
    out = [get(0)] + [get(i) - get(i - 1) for i in range(1, half + 1)]
    return QPoly(_strip(out))


def dominates(p: QPoly, r: QPoly) -> CheckReport:
    """Degreewise ``p >= r``; the report's ``nonnegative`` flag is the verdict.

    ``first_violation_degree`` names the lowest degree where ``p`` falls short.
    """
    n = max(len(p), len(r))
    for i in range(n):
        if p[i] < r[i]:
            return CheckReport(nonnegative=False, first_violation_degree=i, first_negative=i,
                               difference_degree=n - 1)
    return CheckReport(difference_degree=max(n - 1, 0))
