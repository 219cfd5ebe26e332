"""KOH decomposition of q-binomial coefficients.

For a partition ``lam`` of ``m`` with prefix sums ``Y``, the KOH term is

    F_lam(q) = q^(2 * sum C(lam_i, 2)) * prod_j [ j(n+2) - Y_{j-1} - Y_{j+1} choose lam_j - lam_{j+1} ]_q

and summing over all partitions of ``m`` gives ``[m+n choose m]_q``.  Besides
the generic term this module builds the two partition families used in the
``a = 3`` argument, their closed-form contributions, and the expansion of
``[d+3 choose 3]_q`` obtained by iterating the decomposition.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from operator import add
from typing import Iterator, List, Sequence, Tuple

from .qbinom import qbin
from .qpoly import ONE, ZERO, QPoly

__all__ = [
    "Partition",
    "KohTerm",
    "iter_partitions",
    "enumerate_partitions",
    "partial_sums",
    "koh_term",
    "koh_terms",
    "koh_sum",
    "lambda_j_max",
    "lambda_indices",
    "lambda_family",
    "closed_form_lambda",
    "mu_i_max",
    "mu_family",
    "closed_form_mu",
    "expand_d3",
    "sum_polys",
]


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def part(self, j: int) -> int:
        """``lam_j`` (1-based), zero past the last part."""
        return self.parts[j - 1] if 1 <= j <= len(self.parts) else 0

    def multiplicity(self, size: int) -> int:
        return self.parts.count(size)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def iter_partitions(m: int) -> Iterator[Partition]:
    """Partitions of ``m`` in reverse-lexicographic order, ``(m)`` first."""
    if m < 1:
        raise ValueError(f"can only partition a positive integer, got {m}")
    parts = [m]
    while True:
        yield Partition(tuple(parts))
        # strip trailing ones, then decrement the last part > 1
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        x = parts.pop() - 1
        rem = ones + 1
        parts.append(x)
        while rem > x:
            parts.append(x)
            rem -= x
        if rem:
            parts.append(rem)


def enumerate_partitions(m: int) -> List[Partition]:
    return list(iter_partitions(m))


def partial_sums(lam: Partition, upto: int = None) -> List[int]:
    """``[Y_0, Y_1, ..., Y_upto]``; defaults to ``upto = len(lam) + 1``."""
    if upto is None:
        upto = len(lam) + 1
    ys = [0]
    for j in range(1, upto + 1):
        ys.append(ys[-1] + lam.part(j))
    return ys


@dataclass(frozen=True)
class KohTerm:
    partition: Partition
    n: int
    exponent: int
    factors: Tuple[Tuple[int, int], ...]
    value: QPoly

    def to_json(self) -> dict:
        return {
            "partition": list(self.partition.parts),
            "exponent": self.exponent,
            "factors": [list(f) for f in self.factors],
            "value": self.value.to_json(),
        }


def koh_term(lam: Partition, n: int) -> KohTerm:
    """The KOH summand ``F_lam(q)`` for box height ``n``.

    ``factors`` keeps every ``(top, k)`` pair for ``j = 1..len(lam)``;
    pairs with ``k = 0`` contribute 1.
    """
    L = len(lam)
    ys = partial_sums(lam, L + 1)
    exponent = 2 * sum(p * (p - 1) // 2 for p in lam.parts)
    factors = []
    value = ONE.shift(exponent)
    for j in range(1, L + 1):
        top = j * (n + 2) - ys[j - 1] - ys[j + 1]
        k = lam.part(j) - lam.part(j + 1)
        factors.append((top, k))
        if k:
            value = value * qbin(top, k)
    return KohTerm(lam, n, exponent, tuple(factors), value)


def koh_terms(m: int, n: int) -> List[KohTerm]:
    return [koh_term(lam, n) for lam in iter_partitions(m)]


def koh_sum(m: int, n: int, jobs: int = 1) -> QPoly:
    """``sum_{lam |- m} F_lam(q)``, which equals ``gauss_box(m, n)``."""
    lams = enumerate_partitions(m)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(lambda lam: koh_term(lam, n).value, lams))
    else:
        values = [koh_term(lam, n).value for lam in lams]
    return reduce(add, values, ZERO)


# -- the lambda^{i,j} family ------------------------------------------------


def _check_bc(b: int, c: int) -> None:
    if b < 3 or b % 3:
        raise ValueError(f"b must be a positive multiple of 3, got {b}")
    if c < 4:
        raise ValueError(f"c must be at least 4, got {c}")


def lambda_j_max(b: int, c: int, i: int) -> int:
    """``floor(b/2 - 2i(c-1)/c)`` in integer arithmetic."""
    return (b * c - 4 * i * (c - 1)) // (2 * c)


def lambda_indices(b: int, c: int) -> List[Tuple[int, int]]:
    """All valid ``(i, j)``: ``1 <= i <= (b-3)/3``, ``1 <= j <= lambda_j_max``."""
    _check_bc(b, c)
    return [(i, j) for i in range(1, (b - 3) // 3 + 1) for j in range(1, lambda_j_max(b, c, i) + 1)]


def _check_lambda(b: int, c: int, i: int, j: int) -> None:
    _check_bc(b, c)
    if not 1 <= i <= (b - 3) // 3:
        raise ValueError(f"i={i} outside 1..{(b - 3) // 3} for b={b}")
    jmax = lambda_j_max(b, c, i)
    if not 1 <= j <= jmax:
        raise ValueError(f"j={j} outside 1..{jmax} for (b,c,i)=({b},{c},{i})")


def lambda_family(b: int, c: int, i: int, j: int) -> Partition:
    """``i`` threes, ``j`` twos, and ones filling up to ``b``."""
    _check_lambda(b, c, i, j)
    return Partition((3,) * i + (2,) * j + (1,) * (b - 3 * i - 2 * j))


def closed_form_lambda(b: int, c: int, i: int, j: int) -> QPoly:
    _check_lambda(b, c, i, j)
    return (
        qbin(c * i - 4 * i + 1, 1)
        * qbin(c * i - 4 * i + c * j - 2 * j + 1, 1)
        * qbin(b * c - 2 * c * i - 4 * i - c * j - 2 * j + 1, 1)
    ).shift(6 * i + 2 * j)


# -- the mu^i family --------------------------------------------------------


def mu_i_max(b: int) -> int:
    """``ceil(b/2) - 1``."""
    return (b + 1) // 2 - 1


def mu_family(b: int, i: int) -> Partition:
    """``i`` twos followed by ``b - 2i`` ones."""
    if b < 1:
        raise ValueError(f"b must be positive, got {b}")
    if not 1 <= i <= mu_i_max(b):
        raise ValueError(f"i={i} outside 1..{mu_i_max(b)} for b={b}")
    return Partition((2,) * i + (1,) * (b - 2 * i))


def closed_form_mu(b: int, c: int, i: int) -> QPoly:
    mu_family(b, i)
    return (qbin(c * i - 2 * i + 1, 1) * qbin(b * c - c * i - 2 * i + 1, 1)).shift(2 * i)


# -- iterated expansion of [d+3 choose 3]_q ---------------------------------


def expand_d3(b: int, c: int) -> List[QPoly]:
    """Terms of the ``b/3``-fold iterated KOH expansion of ``[d+3 choose 3]_q``.

    ``d = bc/3``.  The head term ``q^{2b} [d - 4b/3 + 3 choose 3]_q`` comes
    first, then for each ``0 <= i <= (b-3)/3`` the pair
    ``q^{6i+2} [d-4i-1 choose 1]_q [2d-8i-1 choose 1]_q`` and
    ``q^{6i} [3d-12i+1 choose 1]_q``.
    """
    if b < 3 or b % 3:
        raise ValueError(f"b must be a positive multiple of 3, got {b}")
    if c < 1:
        raise ValueError(f"c must be positive, got {c}")
    d = b * c // 3
    terms = [qbin(d - 4 * b // 3 + 3, 3).shift(2 * b)]
    for i in range((b - 3) // 3 + 1):
        terms.append((qbin(d - 4 * i - 1, 1) * qbin(2 * d - 8 * i - 1, 1)).shift(6 * i + 2))
        terms.append(qbin(3 * d - 12 * i + 1, 1).shift(6 * i))
    return terms


def sum_polys(polys: Sequence[QPoly]) -> QPoly:
    return reduce(add, polys, ZERO)
