"""Gaussian (q-binomial) coefficients.

``gauss_box(m, n)`` is the generating function of partitions that fit in an
``m x n`` box, i.e. ``[m+n choose m]_q``.  It is built from the recurrence

    G(m, n) = G(m-1, n) + q^m G(m, n-1)

over exact polynomials and memoized under the key ``(min(m,n), max(m,n))``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .qpoly import ONE, ZERO, QPoly, unimodality_report

__all__ = [
    "GaussParams",
    "gauss_box",
    "qbin",
    "classify_strict",
    "even_strict_increase",
    "strict_exceptions",
    "set_cache_cap",
    "clear_cache",
]

# Entries beyond the cap are computed but not stored; nothing is ever evicted.
DEFAULT_CACHE_CAP = 200_000

_cache: dict = {}
_cache_cap = DEFAULT_CACHE_CAP
_lock = threading.Lock()


@dataclass(frozen=True)
class GaussParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"box dimensions must be nonnegative, got {self.m}x{self.n}")

    @property
    def degree(self) -> int:
        return self.m * self.n


def set_cache_cap(cap: int) -> None:
    global _cache_cap
    if cap < 0:
        raise ValueError("cache cap must be nonnegative")
    _cache_cap = cap


def clear_cache() -> None:
    with _lock:
        _cache.clear()


def _store(key, value: QPoly) -> None:
    with _lock:
        if len(_cache) < _cache_cap:
            _cache.setdefault(key, value)


def gauss_box(m: int, n: int) -> QPoly:
    """``[m+n choose m]_q``: partitions in an ``m x n`` box counted by size."""
    if m < 0 or n < 0:
        raise ValueError(f"box dimensions must be nonnegative, got {m}x{n}")
    if m > n:
        m, n = n, m
    if m == 0:
        return ONE
    key = (m, n)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    # walk the column for this m upward so recursion depth stays O(m)
    prev = gauss_box(m - 1, m)  # G(m, m-1)
    for k in range(m, n + 1):
        cur = _cache.get((m, k))
        if cur is None:
            cur = gauss_box(m - 1, k) + prev.shift(m)
            _store((m, k), cur)
        prev = cur
    return prev


def qbin(top: int, k: int) -> QPoly:
    """``[top choose k]_q`` with the total convention.

    Zero whenever ``k < 0``, ``k > top`` or ``top < 0``; otherwise
    ``gauss_box(k, top - k)``.
    """
    if k < 0 or top < 0 or k > top:
        return ZERO
    return gauss_box(k, top - k)


def classify_strict(b: int, c: int) -> bool:
    """Strict unimodality of ``[b+c choose b]_q`` for ``c >= b >= 2``.

    True iff the polynomial is unimodal and its coefficients strictly increase
    from degree 1 up to degree ``floor(bc/2)``; the step from degree 0 to 1 is
    exempt.
    """
    if not (2 <= b <= c):
        raise ValueError(f"classify_strict needs c >= b >= 2, got b={b}, c={c}")
    p = gauss_box(b, c)
    if not unimodality_report(p).unimodal:
        return False
    return all(p[i - 1] < p[i] for i in range(2, b * c // 2 + 1))


def even_strict_increase(b: int, c: int) -> bool:
    """``coeff(i-1) < coeff(i)`` for every even ``i`` in ``[2, floor(bc/2)]``."""
    if b < 1 or c < 1:
        raise ValueError(f"even_strict_increase needs b, c >= 1, got b={b}, c={c}")
    p = gauss_box(b, c)
    return all(p[i - 1] < p[i] for i in range(2, b * c // 2 + 1, 2))


def strict_exceptions(bmax: int, cmax: int) -> list:
    """Pairs ``2 <= b <= c`` in range whose verdict departs from "b=c=2 or b>=5"."""
    out = []
    for b in range(2, bmax + 1):
        for c in range(b, cmax + 1):
            expected = (b == c == 2) or b >= 5
            if classify_strict(b, c) != expected:
                out.append((b, c))
    return out
