"""
========
Scanners
========

Systematic searches over ranges of cells for patterns in the torsion of
the lower central series quotients. A scanner never fails: it counts the
cells it looked at and lists the cells that break the pattern, so a
report is evidence for or against a statement and nothing more.

Classes
=======
    - *ScanReport*: Cells visited, counterexamples found and notes.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from lcs_torsion.algebra import Signature
from lcs_torsion.errors import LcsError
from lcs_torsion.identities import b2_cohomology_bound, polynomial_model_check, sandwich
from lcs_torsion.utils.debug import styled_logger

logger_scanners = styled_logger(logging.getLogger("LcsScanners"))


########################################################################
@dataclass
class ScanReport:
    """
    Outcome of a scan.

    Attributes
    ----------
    name : str
        Scanner name.
    cells : int
        Number of cells examined.
    counterexamples : list of dict
        One entry per cell that breaks the pattern.
    notes : list of str
        Cells that could not be examined and other remarks.
    """

    name: str
    cells: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    # ----------------------------------------------------------------------
    @property
    def holds(self) -> bool:
        return not self.counterexamples

    # ----------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "cells": self.cells,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
        }

    # ----------------------------------------------------------------------
    def summary(self) -> str:
        verdict = "no counterexample" if self.holds else f"{len(self.counterexamples)} counterexample(s)"
        return f"{self.name}: {self.cells} cells, {verdict}"


# ----------------------------------------------------------------------
def _engine(engine):
    if engine is None:
        from lcs_torsion.engine import default_engine

        return default_engine
    return engine


# ----------------------------------------------------------------------
def _visit(report: ScanReport, label: str, check: Callable[[], Optional[Dict[str, Any]]]) -> None:
    """Run one cell check; a returned dict is a counterexample."""
    try:
        found = check()
    except (LcsError, ValueError) as error:
        report.notes.append(f"{label}: skipped ({error})")
        logger_scanners.warning(f"{report.name} {label}: {error}")
        return
    report.cells += 1
    if found is not None:
        report.counterexamples.append(found)


# ----------------------------------------------------------------------
def _levels(m: Sequence[int], levels: Optional[Iterable[int]], first: int = 2) -> List[int]:
    if levels is not None:
        return list(levels)
    return list(range(first, sum(m) + 1))


# ----------------------------------------------------------------------
def scan_order_divides_degree(
    sig: Signature, degrees: Iterable[Sequence[int]], levels=None, engine=None
) -> ScanReport:
    """Torsion exponents of ``B_l[m]`` that do not divide ``gcd(m)``."""
    engine = _engine(engine)
    report = ScanReport("order-divides-degree")
    for m in degrees:
        m = tuple(m)
        for l in _levels(m, levels):
            def check(m=m, l=l):
                group = engine.bi_group(sig, l, m)
                if group.torsion and math.gcd(*m) % group.exponent:
                    return {"deg": list(m), "l": l, "torsion": group.display()}
                return None

            _visit(report, f"l={l} m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_degree_bound(
    sig: Signature,
    degrees: Iterable[Sequence[int]],
    margin: int = 3,
    invert_two: bool = False,
    engine=None,
) -> ScanReport:
    """Torsion in ``B_l[m]`` with ``l > |m| - margin``."""
    engine = _engine(engine)
    ring = "z2" if invert_two else "z"
    report = ScanReport(f"degree-bound-{margin}-{ring}")
    for m in degrees:
        m = tuple(m)
        for l in range(max(1, sum(m) - margin + 1), sum(m) + 1):
            def check(m=m, l=l):
                group = engine.bi_group(sig, l, m, invert_two=invert_two)
                if group.torsion:
                    return {"deg": list(m), "l": l, "torsion": group.display()}
                return None

            _visit(report, f"l={l} m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_b2_cohomology(n: int, degrees: Iterable[Sequence[int]], engine=None) -> ScanReport:
    """Cells where the torsion of ``B_2`` differs from ``H^3 + H^5 + ...``."""
    engine = _engine(engine)
    report = ScanReport("b2-odd-cohomology")
    for m in degrees:
        m = tuple(m)

        def check(m=m):
            torsion = engine.bi_group(Signature(n), 2, m).torsion_part()
            bound = b2_cohomology_bound(n, m).torsion_part()
            if torsion != bound:
                return {"deg": list(m), "b2": torsion.display(), "cohomology": bound.display()}
            return None

        _visit(report, f"m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_b2_fp_dimension(n: int, p: int, degrees: Iterable[Sequence[int]], engine=None) -> ScanReport:
    """``dim B_2[m]`` over ``F_p`` against ``2^(n-2)`` or ``2^(n-1) - 1``."""
    engine = _engine(engine)
    report = ScanReport(f"b2-dimension-f{p}")
    for m in degrees:
        m = tuple(m)
        if any(v <= 0 for v in m):
            continue

        def check(m=m):
            expected = 2 ** (n - 1) - 1 if all(v % p == 0 for v in m) else 2 ** (n - 2)
            actual = engine.bi_dim(Signature(n), f"f{p}", 2, m)
            if actual != expected:
                return {"deg": list(m), "dim": actual, "expected": expected}
            return None

        _visit(report, f"m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_no_four_torsion(
    sig: Signature, degrees: Iterable[Sequence[int]], levels=(2,), engine=None
) -> ScanReport:
    """2-primary torsion of ``B_l`` that is not killed by 2."""
    engine = _engine(engine)
    report = ScanReport("no-4-torsion")
    for m in degrees:
        m = tuple(m)
        for l in _levels(m, levels):
            def check(m=m, l=l):
                group = engine.bi_group(sig, l, m)
                if any(d % 4 == 0 for d in group.torsion):
                    return {"deg": list(m), "l": l, "torsion": group.display()}
                return None

            _visit(report, f"l={l} m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_sandwich(sig: Signature, degrees: Iterable[Sequence[int]], engine=None) -> ScanReport:
    """Cells where the super ``B_2`` 2-rank leaves its sandwich."""
    engine = _engine(engine)
    report = ScanReport("two-torsion-sandwich")
    for m in degrees:
        m = tuple(m)

        def check(m=m):
            low, middle, high = sandwich(sig, m, engine)
            if not low <= middle <= high:
                return {"deg": list(m), "ranks": [low, middle, high]}
            return None

        _visit(report, f"m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_degree_one(sig: Signature, degrees: Iterable[Sequence[int]], engine=None) -> ScanReport:
    """
    Torsion in ``B_l[m_1, m_2]`` when a degree equals one.

    When the second degree is one and the first generator is even, the
    span of ``L_l`` is also compared with the polynomial model.
    """
    engine = _engine(engine)
    report = ScanReport("degree-one-torsion-free")
    if sig.n_gens != 2:
        report.notes.append(f"signature {sig} has {sig.n_gens} generators, need 2")
        return report
    for m in degrees:
        m = tuple(m)
        if 1 not in m:
            continue
        for l in _levels(m, None, first=1):
            def check(m=m, l=l):
                group = engine.bi_group(sig, l, m)
                if group.torsion:
                    return {"deg": list(m), "l": l, "torsion": group.display()}
                if m[1] == 1 and l >= 2 and not sig.is_odd(0):
                    if not polynomial_model_check(sig, l, m[0], engine):
                        return {"deg": list(m), "l": l, "model": "mismatch"}
                return None

            _visit(report, f"l={l} m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_torsion_primes(
    sig: Signature, degrees: Iterable[Sequence[int]], bound: Optional[int] = None, engine=None
) -> ScanReport:
    """
    Primes in the torsion of ``B_l``, flagging those above ``bound``.

    ``bound`` defaults to ``3`` for purely even algebras and to the number
    of generators otherwise.
    """
    engine = _engine(engine)
    if bound is None:
        bound = sig.n_gens if sig.is_super else 3
    report = ScanReport(f"torsion-primes-above-{bound}")
    seen = set()
    for m in degrees:
        m = tuple(m)
        for l in _levels(m, None):
            def check(m=m, l=l):
                primes = engine.bi_group(sig, l, m).primes()
                seen.update(primes)
                large = [p for p in primes if p > bound]
                if large:
                    return {"deg": list(m), "l": l, "primes": large}
                return None

            _visit(report, f"l={l} m={list(m)}", check)
    report.notes.append(f"primes seen: {sorted(seen)}")
    return report


# ----------------------------------------------------------------------
def scan_two_torsion_parity(degrees: Iterable[Sequence[int]], engine=None) -> ScanReport:
    """2-torsion in ``B_l(A_2)`` at an even ``l > 2``."""
    engine = _engine(engine)
    report = ScanReport("two-generator-even-level-2-torsion")
    for m in degrees:
        m = tuple(m)
        for l in range(4, sum(m) + 1, 2):
            def check(m=m, l=l):
                group = engine.bi_group(Signature(2), l, m)
                if group.p_rank(2):
                    return {"deg": list(m), "l": l, "torsion": group.display()}
                return None

            _visit(report, f"l={l} m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_b3_torsion(
    sig: Signature, degrees: Iterable[Sequence[int]], allowed: Sequence[int] = (), engine=None
) -> ScanReport:
    """Torsion in ``B_3`` at primes outside ``allowed``, over positive degrees."""
    engine = _engine(engine)
    report = ScanReport("b3-torsion" + "".join(f"-{p}" for p in allowed))
    for m in degrees:
        m = tuple(m)
        if any(v <= 0 for v in m) or sum(m) < 3:
            continue

        def check(m=m):
            group = engine.bi_group(sig, 3, m)
            other = [p for p in group.primes() if p not in allowed]
            if other:
                return {"deg": list(m), "l": 3, "torsion": group.display()}
            return None

        _visit(report, f"m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def scan_ideal_quotients(
    sig: Signature, degrees: Iterable[Sequence[int]], max_index: int = 4, engine=None
) -> ScanReport:
    """Torsion in ``N_i = M_i / M_{i+1}`` for ``2 <= i <= max_index``."""
    engine = _engine(engine)
    report = ScanReport("ideal-quotients-torsion")
    for m in degrees:
        m = tuple(m)
        for i in range(2, max_index + 1):
            def check(m=m, i=i):
                group = engine.n_quotient(sig, i, m)
                if group.torsion:
                    return {"deg": list(m), "i": i, "torsion": group.display()}
                return None

            _visit(report, f"i={i} m={list(m)}", check)
    return report


# ----------------------------------------------------------------------
def supercase_order_counterexample(engine=None) -> ScanReport:
    """The 3-torsion of ``B_3(A_{1,2})[1, 2, 2]``, whose order does not divide every degree."""
    return scan_order_divides_degree(Signature(1, 2), [(1, 2, 2)], levels=[3], engine=engine)


SCANNERS: Dict[str, Callable[..., ScanReport]] = {
    "order-divides-degree": scan_order_divides_degree,
    "degree-bound": scan_degree_bound,
    "degree-bound-super": partial(scan_degree_bound, margin=2, invert_two=True),
    "degree-bound-super-z": partial(scan_degree_bound, margin=2),
    "no-4-torsion": scan_no_four_torsion,
    "sandwich": scan_sandwich,
    "degree-one": scan_degree_one,
    "torsion-primes": scan_torsion_primes,
    "b3-torsion": scan_b3_torsion,
    "b3-torsion-3": partial(scan_b3_torsion, allowed=(3,)),
    "ideal-quotients": scan_ideal_quotients,
}

# Scanners that take the number of even generators instead of a signature.
EVEN_SCANNERS: Dict[str, Callable[..., ScanReport]] = {
    "b2-cohomology": scan_b2_cohomology,
    "b2-dimension-f2": partial(scan_b2_fp_dimension, p=2),
    "b2-dimension-f3": partial(scan_b2_fp_dimension, p=3),
}


# ----------------------------------------------------------------------
def run_scanner(name: str, sig: Signature, degrees: Iterable[Sequence[int]], engine=None) -> ScanReport:
    """Run a registered scanner by name."""
    degrees = [tuple(m) for m in degrees]
    if name == "two-torsion-parity":
        if sig != Signature(2):
            raise ValueError("two-torsion-parity scans two even generators.")
        return scan_two_torsion_parity(degrees, engine=engine)
    if name in EVEN_SCANNERS:
        if sig.is_super:
            raise ValueError(f"Scanner '{name}' needs a purely even signature.")
        return EVEN_SCANNERS[name](sig.n_even, degrees=degrees, engine=engine)
    if name not in SCANNERS:
        raise KeyError(f"Unknown scanner '{name}'.")
    return SCANNERS[name](sig, degrees, engine=engine)
