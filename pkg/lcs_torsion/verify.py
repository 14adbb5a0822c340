"""
============
Verification
============

Named suites of exact checks. Every check is a function returning a
boolean; a suite runs its checks in order, logs each failure and reports
how many passed. Larger cells only run with ``slow=True``.

Suites
======
    - *identities*: the commutator identity, torsion elements, shuffle counts,
      closed one-form lifts and the cyclic homology oracle.
    - *derham*: integer De Rham cohomology, the map ``varphi`` and the image
      of ``L_2``.
    - *barb1*: the reduced first quotient against differential forms.
    - *torsion*: orders of torsion elements of ``B_2``.
    - *supercase*: superalgebra structure.
    - *uc*: universal coefficients and where they fail.
"""

import itertools
import logging
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from lcs_torsion.algebra import Signature, random_element
from lcs_torsion.derham import (
    bar_b1_via_forms,
    cohomology,
    cohomology_closed_form,
    kunneth_prediction,
    lie_image_equals_exact,
    super_lie_image_check,
    supercase_check,
    varphi_is_bijective,
    varphi_leibniz,
)
from lcs_torsion.errors import LcsError
from lcs_torsion.identities import (
    b2_within_bound,
    closed_oneform_lift,
    fedosov_shuffle_identity,
    identity_defect,
    lift_defect,
    order_in_b2,
    sandwich,
    shuffle_divisibility,
    super_closed_lift,
    t_element,
    t_generates_torsion,
    verify_identity_ide,
)
from lcs_torsion.linalg import AbelianGroupInvariants
from lcs_torsion.scanners import run_scanner
from lcs_torsion.utils.debug import styled_logger
from lcs_torsion.words import (
    hc1_bruteforce,
    hc1_invariants,
    super_b1_torsion,
    y_product,
    y_product_closed_form,
)

logger_verify = styled_logger(logging.getLogger("LcsVerify"))

Check = Tuple[str, Callable[[], bool]]
SUPER_SIGNATURES = (Signature(1, 1), Signature(0, 2), Signature(2, 1), Signature(1, 2))


########################################################################
@dataclass
class CheckResult:
    name: str
    passed: bool
    ms: float
    detail: str = ""


########################################################################
@dataclass
class SuiteReport:
    """Results of one suite, in the order the checks ran."""

    suite: str
    results: List[CheckResult] = field(default_factory=list)

    # ----------------------------------------------------------------------
    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    # ----------------------------------------------------------------------
    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    # ----------------------------------------------------------------------
    def render(self) -> str:
        ok = len(self.results) - len(self.failures)
        lines = [f"suite {self.suite}: {ok}/{len(self.results)} checks passed"]
        for r in self.failures:
            lines.append(f"  FAILED {r.name}" + (f" ({r.detail})" if r.detail else ""))
        return "\n".join(lines)


# ----------------------------------------------------------------------
def _degrees(n: int, low: int, high: int) -> Iterator[Tuple[int, ...]]:
    return itertools.product(range(low, high + 1), repeat=n)


# ----------------------------------------------------------------------
def _random_word(rng: random.Random, n: int, length: int) -> Tuple[int, ...]:
    return tuple(rng.randrange(n) for _ in range(length))


# ----------------------------------------------------------------------
def identities_suite(slow: bool = False, engine=None) -> Iterator[Check]:
    yield "commutator identity on generators", verify_identity_ide

    def random_defects() -> bool:
        rng = random.Random(7)
        sig = Signature(3)
        for _ in range(20):
            args = [random_element(sig, rng, max_length=2, n_terms=2) for _ in range(4)]
            if not identity_defect(*args).is_zero():
                return False
        return True

    yield "commutator identity on random elements", random_defects

    for q, r in ((1, 1), (2, 2), (2, 3)):
        yield f"T(1,{q},{r}) vanishes in B_2", lambda q=q, r=r: order_in_b2(t_element(1, q, r), engine) == 1

    def fedosov_words() -> bool:
        rng = random.Random(11)
        longest = 8 if slow else 6
        return all(
            fedosov_shuffle_identity(_random_word(rng, 3, rng.randint(1, longest)), 3)
            for _ in range(10)
        )

    yield "Fedosov image of cyclic derivatives", fedosov_words

    count, longest, highest = (400, 7, 5) if slow else (200, 6, 4)
    rng = random.Random(13)
    samples = []
    for _ in range(count):
        a = _random_word(rng, 4, rng.randint(1, longest))
        samples.append((a, rng.randint(1, highest)))
    yield "shuffle counts of powers", lambda: all(shuffle_divisibility(a, m, 4) for a, m in samples)
    yield "closed form of Y(a, m)", lambda: all(
        y_product(a, m) == y_product_closed_form(a, m) for a, m in samples
    )

    for sig, m in ((Signature(2), (2, 2)), (Signature(3), (2, 2, 2)), (Signature(1, 1), (1, 2)),
                   (Signature(0, 2), (1, 1)), (Signature(2, 1), (1, 1, 2))):
        yield f"closed lift {sig} {list(m)}", lambda sig=sig, m=m: lift_defect(
            sig, closed_oneform_lift(sig, m)
        ).is_zero()
    yield "closed lift obstructed for y^2", lambda: super_closed_lift(Signature(0, 1), (2,)) is None

    total = 5 if slow else 4
    hc1_cells = [m for m in _degrees(2, 1, total) if 2 <= sum(m) <= total]
    yield "HC_1 oracle", lambda: all(
        hc1_bruteforce(Signature(2), m) == hc1_invariants(Signature(2), m) for m in hc1_cells
    )


# ----------------------------------------------------------------------
def derham_suite(slow: bool = False, engine=None) -> Iterator[Check]:
    def closed_form() -> bool:
        for n in range(1, 5):
            for m in _degrees(n, 1, 4):
                for r in range(n + 1):
                    if cohomology(n, 0, r, m) != cohomology_closed_form(n, r, m):
                        logger_verify.error(f"H^{r}{list(m)} on Z^{n} differs from its closed form")
                        return False
        return True

    yield "closed form of H^r[m]", closed_form
    yield "H^1[m] = Z/m on one coordinate", lambda: all(
        cohomology(1, 0, 1, (m,)) == AbelianGroupInvariants.from_factors([m]) for m in range(1, 13)
    )
    yield "split sequence on the last coordinate", lambda: all(
        cohomology(n, 0, r, m) == kunneth_prediction(n, r, m)
        for n in (2, 3)
        for m in _degrees(n, 1, 3)
        for r in range(n + 1)
    )
    cells = [(2, (1, 1)), (2, (2, 1)), (2, (2, 2)), (2, (3, 2)), (3, (1, 1, 1)), (3, (2, 1, 1))]
    if slow:
        cells += [(2, (3, 3)), (3, (2, 2, 2))]
    for n, m in cells:
        yield f"varphi(L_2{list(m)}) is exact", lambda n=n, m=m: lie_image_equals_exact(n, m, engine)
        yield f"varphi is bijective on {list(m)}", lambda n=n, m=m: varphi_is_bijective(n, m, engine)

    def leibniz() -> bool:
        rng = random.Random(17)
        for _ in range(60 if slow else 30):
            sig = Signature(rng.choice((2, 3)))
            a = random_element(sig, rng, max_length=5, n_terms=3)
            if not varphi_leibniz(a, rng.randrange(sig.n_even)):
                return False
        return True

    yield "varphi([a, x_i]) = d varphi(a) dx_i", leibniz


# ----------------------------------------------------------------------
def barb1_suite(slow: bool = False, engine=None) -> Iterator[Check]:
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    ranges = {2: 8 if slow else 6, 3: 4 if slow else 2}
    for n, high in ranges.items():
        sig = Signature(n)
        cells = list(_degrees(n, 1, high))

        def forms(sig=sig, n=n, cells=cells) -> bool:
            return all(engine.bar_b1_group(sig, m) == bar_b1_via_forms(n, m) for m in cells)

        def torsion(sig=sig, n=n, cells=cells) -> bool:
            for m in cells:
                expected = AbelianGroupInvariants.from_factors([math.gcd(*m)] * 2 ** (n - 2))
                if engine.bar_b1_group(sig, m).torsion_part() != expected:
                    return False
            return True

        def dimensions(sig=sig, n=n, cells=cells) -> bool:
            for m in cells:
                rational = engine.bar_b1_dim(sig, "q", m)
                for p in (2, 3, 5):
                    jump = 2 ** (n - 2) if math.gcd(*m) % p == 0 else 0
                    if engine.bar_b1_dim(sig, f"f{p}", m) != rational + jump:
                        return False
            return True

        yield f"B1bar of A_{n} against forms", forms
        yield f"torsion of B1bar of A_{n}", torsion
        yield f"F_p dimensions of B1bar of A_{n}", dimensions


# ----------------------------------------------------------------------
def torsion_suite(slow: bool = False, engine=None) -> Iterator[Check]:
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    high = 4 if slow else 2
    triples = [t for t in _degrees(3, 1, high) if sum(t) <= 10]
    yield "order of T(s, q, r) is gcd(s, q, r)", lambda: all(
        order_in_b2(t_element(s, q, r), engine) == math.gcd(s, q, r) for s, q, r in triples
    )
    yield "T(s, q, r) generates the torsion of B_2(A_3)", lambda: all(
        t_generates_torsion(s, q, r, engine) for s, q, r in triples
    )
    total = 8 if slow else 6
    yield "B_2(A_2) is torsion-free", lambda: all(
        engine.bi_group(Signature(2), 2, m).is_torsion_free
        for m in _degrees(2, 1, total)
        if sum(m) <= total
    )
    yield "B_2(A_3) torsion within odd cohomology", lambda: all(
        b2_within_bound(3, m, engine) for m in _degrees(3, 1, 4) if sum(m) <= (12 if slow else 9)
    )


# ----------------------------------------------------------------------
def supercase_suite(slow: bool = False, engine=None) -> Iterator[Check]:
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    for sig in SUPER_SIGNATURES:
        if sig.n_gens == 2:
            high = 8 if slow else 4
        else:
            high = 3 if slow else 2
        cells = list(_degrees(sig.n_gens, 1, high))
        yield f"B_1 torsion of {sig}", lambda sig=sig, cells=cells: all(
            engine.bi_group(sig, 1, m).torsion_part() == super_b1_torsion(sig, m) for m in cells
        )

        def barb1(sig=sig, cells=cells) -> bool:
            for m in cells:
                if max(m) > 4:
                    continue
                count = 2 ** (sig.n_gens - 2) if all(v % 2 == 0 for v in m) else 0
                expected = AbelianGroupInvariants.from_factors([2] * count)
                if engine.bar_b1_group(sig, m).torsion_part() != expected:
                    return False
            return True

        yield f"B1bar torsion of {sig}", barb1

    small = [m for m in _degrees(2, 1, 4) if sum(m) <= (7 if slow else 6)]
    for sig in SUPER_SIGNATURES[:2]:
        yield f"no 4-torsion in B_2 of {sig}", lambda sig=sig: run_scanner(
            "no-4-torsion", sig, small, engine
        ).holds
        yield f"degree one is torsion-free for {sig}", lambda sig=sig: run_scanner(
            "degree-one", sig, [(m, 1) for m in range(1, 7)] + [(1, m) for m in range(2, 7)], engine
        ).holds
        yield f"twice the exact forms lie in the image of L_2 for {sig}", lambda sig=sig: all(
            super_lie_image_check(sig.n_even, sig.n_odd, m, engine)
            for m in _degrees(2, 1, 4 if slow else 3)
        )
        yield f"super De Rham comparison for {sig}", lambda sig=sig: all(
            supercase_check(sig.n_even, sig.n_odd, m, engine) for m in _degrees(2, 1, 3)
        )
    yield "strict 2-torsion sandwich", lambda: sandwich(Signature(2, 1), (2, 2, 2), engine) == (1, 2, 3)
    yield "3-torsion in B_3(A_{1,2})[1, 2, 2]", lambda: not run_scanner(
        "order-divides-degree", Signature(1, 2), [(1, 2, 2)], engine
    ).holds


# ----------------------------------------------------------------------
def uc_suite(slow: bool = False, engine=None) -> Iterator[Check]:
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    three = Signature(3)
    yield "B_2(A_3)[2, 2, 2] over F_2", lambda: engine.universal_coefficient_check(three, 2, 2, (2, 2, 2))
    yield "B1bar(A_2) over F_2 and F_3", lambda: all(
        engine.universal_coefficient_check(Signature(2), p, "bar1", m)
        for p in (2, 3)
        for m in _degrees(2, 1, 4)
    )
    yield "B_4(A_3)[2, 2, 2] over F_2 differs", lambda: not engine.universal_coefficient_check(
        three, 2, 4, (2, 2, 2)
    )
    if slow:
        yield "B_2(A_3)[3, 3, 3] over F_3", lambda: engine.universal_coefficient_check(
            three, 3, 2, (3, 3, 3)
        )
        yield "B1bar(A_2)[5, 5] over F_5", lambda: engine.universal_coefficient_check(
            Signature(2), 5, "bar1", (5, 5)
        )


SUITES: Dict[str, Callable[..., Iterator[Check]]] = {
    "identities": identities_suite,
    "derham": derham_suite,
    "barb1": barb1_suite,
    "torsion": torsion_suite,
    "supercase": supercase_suite,
    "uc": uc_suite,
}


# ----------------------------------------------------------------------
def run_suite(name: str, slow: bool = False, engine=None) -> SuiteReport:
    """
    Run one suite.

    Raises
    ------
    KeyError
        If the suite is unknown.
    """
    if name not in SUITES:
        raise KeyError(f"Unknown suite '{name}', expected one of {sorted(SUITES)}.")
    report = SuiteReport(name)
    for check_name, check in SUITES[name](slow=slow, engine=engine):
        started = time.perf_counter()
        detail = ""
        try:
            passed = bool(check())
        except (LcsError, ValueError, ArithmeticError) as error:
            passed, detail = False, f"{type(error).__name__}: {error}"
        ms = 1000 * (time.perf_counter() - started)
        report.results.append(CheckResult(check_name, passed, ms, detail))
        if passed:
            logger_verify.info(f"{name}: {check_name} ({ms:.0f} ms)")
        else:
            logger_verify.error(f"{name}: {check_name} failed {detail}")
    return report


# ----------------------------------------------------------------------
def run_verification(suites: Optional[Iterable[str]] = None, slow: bool = False, engine=None) -> Tuple[str, int]:
    """Run suites (all by default); exit code 2 when any check fails."""
    names: Sequence[str] = list(suites) if suites else list(SUITES)
    reports = [run_suite(name, slow, engine) for name in names]
    text = "\n".join(r.render() for r in reports) + "\n"
    return text, 0 if all(r.passed for r in reports) else 2
