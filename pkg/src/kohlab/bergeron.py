"""Differences of q-binomials at Bergeron quadruples, and the sweep over them.

A quadruple ``(a, b, c, d)`` has ``a <= min(b, c, d)`` and ``ad = bc``.  The
conjecture under test says

    [b+c choose b]_q - [a+d choose d]_q

always has nonnegative, unimodal coefficients.  Both q-binomials are
symmetric of degree ``bc``, so the difference is symmetric about ``bc/2``;
all predicates are evaluated on the ``bc + 1`` slot coefficient vector.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import IO, Iterator, List, Optional, Tuple

from .parallel import pimap
from .qbinom import gauss_box
from .qpoly import CheckReport, QPoly, unimodality_report

log = logging.getLogger(__name__)

__all__ = ["Quadruple", "difference", "check", "enumerate_quadruples", "sweep", "failure_record"]


@dataclass(frozen=True, order=True)
class Quadruple:
    a: int
    b: int
    c: int
    d: int

    def violations(self) -> List[str]:
        a, b, c, d = self.a, self.b, self.c, self.d
        out = []
        if min(a, b, c, d) < 1:
            out.append("all entries must be positive integers")
        if a * d != b * c:
            out.append(f"ad = {a * d} differs from bc = {b * c}")
        if a > min(b, c, d):
            out.append(f"a = {a} is not the smallest entry")
        return out

    def validate(self) -> "Quadruple":
        problems = self.violations()
        if problems:
            raise ValueError(f"invalid quadruple {self.as_tuple()}: " + "; ".join(problems))
        return self

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


def difference(quad: Quadruple) -> QPoly:
    quad.validate()
    return gauss_box(quad.b, quad.c) - gauss_box(quad.d, quad.a)


def check(quad: Quadruple) -> CheckReport:
    """Symmetry, nonnegativity and unimodality of :func:`difference`."""
    return unimodality_report(difference(quad), degree=quad.b * quad.c)


def iter_quadruples(max_product: int) -> Iterator[Quadruple]:
    for a in range(1, max_product + 1):
        if a * a > max_product:
            break
        for b in range(a, max_product // a + 1):
            for c in range(b, max_product // b + 1):
                if (b * c) % a == 0:
                    yield Quadruple(a, b, c, b * c // a)


def enumerate_quadruples(max_product: int) -> List[Quadruple]:
    """All quadruples with ``bc <= max_product`` and ``b <= c``, sorted by ``(a, b, c)``."""
    if max_product < 1:
        raise ValueError(f"max_product must be positive, got {max_product}")
    return list(iter_quadruples(max_product))


def _check_one(quad: Quadruple) -> Optional[Tuple[Quadruple, CheckReport]]:
    rep = check(quad)
    return None if rep.ok else (quad, rep)


def _check_batch(quads: List[Quadruple]) -> list:
    return [r for r in map(_check_one, quads) if r is not None]


def failure_record(quad: Quadruple, report: CheckReport) -> dict:
    return {"quadruple": quad.to_json(), "report": report.to_json()}


def sweep(max_product: int, jobs: Optional[int] = None, out: Optional[IO[str]] = None) -> List[Tuple[Quadruple, CheckReport]]:
    """Check every quadruple up to ``max_product``; return only the failures.

    Work is split into batches of equal ``b`` so each worker reuses its
    q-binomial cache.  The returned failures are sorted by ``(a, b, c, d)``.
    When ``out`` is given, each failure is written to it as one JSON line
    and flushed as soon as its batch completes (batches finish in ``b``
    order whatever the worker count).
    """
    quads = enumerate_quadruples(max_product)
    batches: dict = {}
    for q in quads:
        batches.setdefault(q.b, []).append(q)
    work = [batches[b] for b in sorted(batches)]
    log.info("sweep: %d quadruples in %d batches", len(quads), len(work))
    failures = []
    for found in pimap(_check_batch, work, jobs):
        for quad, rep in found:
            log.warning("counterexample at %s", quad.as_tuple())
            if out is not None:
                out.write(json.dumps(failure_record(quad, rep), sort_keys=True) + "\n")
                out.flush()
        failures.extend(found)
    failures.sort(key=lambda f: f[0].as_tuple())
    return failures
