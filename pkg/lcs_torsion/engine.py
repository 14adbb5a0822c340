"""
==========
LCS Engine
==========

Graded spanning sets of the lower central series ``L_i``, the ideals
``M_k = A L_k`` and ``L_2 + M_3`` of a free superalgebra, and the group
structure of the quotients ``B_i = L_i / L_{i+1}``, ``B1bar = A / (L_2 + M_3)``
and ``N_i = M_i / M_{i+1}``.

Everything is computed one multidegree at a time. A span is stored as the
echelon basis of its lattice in the monomial basis of ``A[m]``; spans are
memoised per engine and reused across requests.

Classes
=======
    - *LcsRequest*: Validated description of one graded span.
    - *GradedSpan*: Spanning rows of a graded piece.
    - *LcsEngine*: Memoising span builder and quotient calculator.
"""

import itertools
import logging
import threading
import time
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

from lcs_torsion.algebra import (
    Multidegree,
    Signature,
    Word,
    bracket_terms,
    degree_parity,
    monomial_index,
    monomials,
    multidegree,
    multinomial,
)
from lcs_torsion.linalg import (
    AbelianGroupInvariants,
    EchelonForm,
    SpanMatrix,
    lattice_contains,
    lattice_quotient,
)
from lcs_torsion.rings import QQ, ZZ, ZZ_HALF, ScalarRing, parse_ring
from lcs_torsion.utils.debug import styled_logger
from lcs_torsion.words import necklaces

logger_engine = styled_logger(logging.getLogger("LcsEngine"))

RingLike = Union[str, ScalarRing]
KINDS = ("L", "M", "L2+M3")


########################################################################
@dataclass(frozen=True)
class LcsRequest:
    """
    One graded span: ``L_i[m]``, ``M_i[m]`` or ``(L_2 + M_3)[m]``.

    Parameters
    ----------
    sig : Signature
        The free superalgebra.
    ring : ScalarRing
        Coefficients.
    i : int
        Series index, at least 1.
    m : Multidegree
        The graded slice.
    kind : str, optional
        One of ``"L"``, ``"M"`` or ``"L2+M3"``.
    """

    sig: Signature
    ring: ScalarRing
    i: int
    m: Multidegree
    kind: str = "L"

    # ----------------------------------------------------------------------
    def __post_init__(self):
        object.__setattr__(self, "ring", parse_ring(self.ring))
        object.__setattr__(self, "m", multidegree(self.sig, self.m))
        if self.kind not in KINDS:
            raise ValueError(f"Unknown span kind '{self.kind}'.")
        if self.i < 1:
            raise ValueError("The series index must be at least 1.")


########################################################################
@dataclass(frozen=True)
class GradedSpan:
    """
    Rows spanning a graded piece, in the monomial basis of ``A[m]``.

    The rows are an echelon basis of the lattice they span, so their
    number is the rank of the piece over the working ring.
    """

    sig: Signature
    ring: str
    kind: str
    index: int
    m: Multidegree
    basis: Tuple[Word, ...]
    span: SpanMatrix

    # ----------------------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.span.n_rows

    # ----------------------------------------------------------------------
    def vectors(self) -> Iterator[Dict[Word, object]]:
        """Rows as word maps."""
        for row in self.span.rows:
            yield {self.basis[c]: x for c, x in row}


# ----------------------------------------------------------------------
def _working_ring(ring: ScalarRing) -> ScalarRing:
    # Rational ranks are read off integer lattices.
    return ZZ if ring == QQ else ring


# ----------------------------------------------------------------------
def sub_multidegrees(m: Multidegree) -> Iterator[Multidegree]:
    """Multidegrees strictly between ``0`` and ``m`` componentwise."""
    full, zero = tuple(m), tuple(0 for _ in m)
    for mp in itertools.product(*(range(v + 1) for v in m)):
        if mp != zero and mp != full:
            yield mp


# ----------------------------------------------------------------------
@lru_cache(maxsize=4096)
def cyclic_representatives(m: Multidegree) -> Tuple[Word, ...]:
    """One word per rotation class of multidegree ``m``, the least rotation."""
    return tuple(c.word for c in necklaces(m))


########################################################################
class LcsEngine:
    """
    Builds graded spans and the quotient groups made from them.

    Parameters
    ----------
    naive : bool, optional
        Use every monomial as left factor when building
        ``L_{i+1} = [A, L_i]``. By default the engine takes the smaller of
        two spanning sets of the same lattice: left factors ``w`` of
        ``[w, v]`` of total degree at most ``2^i - 1``, or one word per
        rotation class. The second works because a word and its rotations
        agree up to sign modulo ``L_2`` and ``[L_2, L_k]`` lies in
        ``L_{k+2}``.

    Examples
    --------
    >>> engine = LcsEngine()
    >>> engine.bi_group(Signature(3), 2, (2, 2, 2)).torsion
    (2,)
    """

    def __init__(self, naive: bool = False):
        self.naive = naive
        self._store: Dict[tuple, GradedSpan] = {}
        self._lock = threading.Lock()

    # ----------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self._store)

    # ----------------------------------------------------------------------
    def clear(self) -> None:
        with self._lock:
            self._store.clear()

    # ----------------------------------------------------------------------
    def span(self, request: LcsRequest) -> GradedSpan:
        """Dispatch a request to the matching span builder."""
        if request.kind == "L":
            return self.lcs_span(request.sig, request.ring, request.i, request.m)
        if request.kind == "M":
            return self.m_ideal_span(request.sig, request.ring, request.i, request.m)
        return self.l2_m3_span(request.sig, request.ring, request.m)

    # ----------------------------------------------------------------------
    def _memo(self, key: tuple, build: Callable[[], GradedSpan]) -> GradedSpan:
        found = self._store.get(key)
        if found is not None:
            return found
        started = time.perf_counter()
        span = build()
        with self._lock:
            self._store[key] = span
        logger_engine.debug(
            f"{span.kind}_{span.index}{list(span.m)} sig ({span.sig}) over {span.ring}: "
            f"rank {span.rank}/{len(span.basis)}, {time.perf_counter() - started:.3f}s"
        )
        return span

    # ----------------------------------------------------------------------
    def _project(
        self, sig: Signature, ring: ScalarRing, kind: str, i: int, m: Multidegree
    ) -> Optional[GradedSpan]:
        """Compute a degenerate multidegree on the generators it uses."""
        support = [j for j, v in enumerate(m) if v > 0]
        if not support or len(support) == len(m):
            return None
        sub_sig = sig.restrict(support)
        sub_m = tuple(m[j] for j in support)
        sub = self.span(LcsRequest(sub_sig, ring, i, sub_m, kind))
        return GradedSpan(sig, ring.descriptor, kind, i, m, monomials(m), sub.span)

    # ----------------------------------------------------------------------
    def _bracket_rows(
        self,
        sig: Signature,
        ring: ScalarRing,
        m: Multidegree,
        right: Callable[[Multidegree], GradedSpan],
        max_left: Optional[int] = None,
        left: Callable[[Multidegree], Sequence[Word]] = monomials,
    ) -> Iterator[Dict[int, object]]:
        """Coordinates of ``[w, v]`` for words ``w`` from ``left`` and rows ``v`` of ``right``."""
        index = monomial_index(m)
        for mp in sub_multidegrees(m):
            if max_left is not None and sum(mp) > max_left:
                continue
            rest = tuple(a - b for a, b in zip(m, mp))
            source = right(rest)
            if not source.span.rows:
                continue
            sign = -1 if degree_parity(mp, sig) and degree_parity(rest, sig) else 1
            vectors = list(source.vectors())
            for w in left(mp):
                for v in vectors:
                    terms = bracket_terms(w, v, sign, ring)
                    if terms:
                        yield {index[u]: c for u, c in terms.items()}

    # ----------------------------------------------------------------------
    def _finish(
        self,
        sig: Signature,
        ring: ScalarRing,
        kind: str,
        i: int,
        m: Multidegree,
        rows: Iterator[Dict[int, object]],
    ) -> GradedSpan:
        basis = monomials(m)
        form = EchelonForm(ring, len(basis))
        for row in rows:
            form.insert(row)
        return GradedSpan(sig, ring.descriptor, kind, i, m, basis, form.hermite().to_matrix())

    # ----------------------------------------------------------------------
    def _identity(self, sig: Signature, ring: ScalarRing, m: Multidegree) -> GradedSpan:
        basis = monomials(m)
        one = ring.coerce(1)
        rows = tuple(((c, one),) for c in range(len(basis)))
        return GradedSpan(sig, ring.descriptor, "L", 1, m, basis, SpanMatrix(len(basis), rows))

    # ----------------------------------------------------------------------
    def _empty(self, sig: Signature, ring: ScalarRing, kind: str, i: int, m: Multidegree) -> GradedSpan:
        basis = monomials(m)
        return GradedSpan(sig, ring.descriptor, kind, i, m, basis, SpanMatrix(len(basis)))

    # ----------------------------------------------------------------------
    def lcs_span(self, sig: Signature, ring: RingLike, i: int, m: Sequence[int]) -> GradedSpan:
        """
        Rows spanning ``L_i[m]``.

        ``L_1[m]`` is all of ``A[m]``, ``L_2[m]`` is spanned by the brackets
        ``[w, x_j]`` and ``L_{i+1}[m]`` by ``[w, v]`` with ``w`` a monomial
        and ``v`` a row of ``L_i`` in the complementary degree. Over the
        rationals the integer lattice is returned.
        """
        request = LcsRequest(sig, ring, i, m)
        ring = _working_ring(request.ring)
        m = request.m
        key = (sig, ring.descriptor, "L", i, m)

        def build() -> GradedSpan:
            total = sum(m)
            if i == 1:
                return self._identity(sig, ring, m)
            if total < i:
                return self._empty(sig, ring, "L", i, m)
            projected = self._project(sig, ring, "L", i, m)
            if projected is not None:
                return projected
            if i == 2:
                rows = self._generator_brackets(sig, ring, m)
            else:
                previous = lambda rest: self.lcs_span(sig, ring, i - 1, rest)
                if self.naive:
                    rows = self._bracket_rows(sig, ring, m, previous)
                else:
                    bound, left = self._left_factors(sig, ring, i, m)
                    rows = self._bracket_rows(sig, ring, m, previous, bound, left)
            return self._finish(sig, ring, "L", i, m, rows)

        return self._memo(key, build)

    # ----------------------------------------------------------------------
    def _left_factors(
        self, sig: Signature, ring: ScalarRing, i: int, m: Multidegree
    ) -> Tuple[Optional[int], Callable[[Multidegree], Sequence[Word]]]:
        """Degree bound and left words for ``L_i[m]``, whichever yields fewer brackets."""
        bound = 2 ** (i - 1) - 1
        bounded = cyclic = 0
        for mp in sub_multidegrees(m):
            rest = tuple(a - b for a, b in zip(m, mp))
            rank = self.lcs_span(sig, ring, i - 1, rest).rank
            if sum(mp) <= bound:
                bounded += multinomial(mp) * rank
            cyclic += len(cyclic_representatives(mp)) * rank
        logger_engine.debug(f"L_{i}{list(m)}: {bounded} bounded vs {cyclic} cyclic brackets")
        if cyclic < bounded:
            return None, cyclic_representatives
        return bound, monomials

    # ----------------------------------------------------------------------
    def _generator_brackets(
        self, sig: Signature, ring: ScalarRing, m: Multidegree
    ) -> Iterator[Dict[int, object]]:
        """Coordinates of ``[w, x_j]`` for every generator ``x_j`` and monomial ``w``."""
        index = monomial_index(m)
        one = ring.coerce(1)
        for j, v in enumerate(m):
            if v == 0:
                continue
            rest = tuple(a - (k == j) for k, a in enumerate(m))
            sign = -1 if sig.is_odd(j) and degree_parity(rest, sig) else 1
            for w in monomials(rest):
                terms = bracket_terms(w, {(j,): one}, sign, ring)
                if terms:
                    yield {index[u]: c for u, c in terms.items()}

    # ----------------------------------------------------------------------
    def m_ideal_span(self, sig: Signature, ring: RingLike, k: int, m: Sequence[int]) -> GradedSpan:
        """Rows spanning ``M_k[m] = (A L_k)[m]``, products ``w v`` with ``w`` possibly empty."""
        request = LcsRequest(sig, ring, k, m, "M")
        ring = _working_ring(request.ring)
        m = request.m
        key = (sig, ring.descriptor, "M", k, m)

        def build() -> GradedSpan:
            if k == 1:
                identity = self._identity(sig, ring, m)
                return GradedSpan(sig, ring.descriptor, "M", 1, m, identity.basis, identity.span)
            if sum(m) < k:
                return self._empty(sig, ring, "M", k, m)
            projected = self._project(sig, ring, "M", k, m)
            if projected is not None:
                return projected
            return self._finish(sig, ring, "M", k, m, self._product_rows(sig, ring, k, m))

        return self._memo(key, build)

    # ----------------------------------------------------------------------
    def _product_rows(
        self, sig: Signature, ring: ScalarRing, k: int, m: Multidegree
    ) -> Iterator[Dict[int, object]]:
        index = monomial_index(m)
        zero = tuple(0 for _ in m)
        for mp in itertools.chain([zero], sub_multidegrees(m)):
            rest = tuple(a - b for a, b in zip(m, mp))
            source = self.lcs_span(sig, ring, k, rest)
            vectors = list(source.vectors())
            for w in monomials(mp):
                for v in vectors:
                    yield {index[w + u]: c for u, c in v.items()}

    # ----------------------------------------------------------------------
    def l2_m3_span(self, sig: Signature, ring: RingLike, m: Sequence[int]) -> GradedSpan:
        """Rows spanning ``(L_2 + M_3)[m]``."""
        request = LcsRequest(sig, ring, 2, m, "L2+M3")
        ring = _working_ring(request.ring)
        m = request.m
        key = (sig, ring.descriptor, "L2+M3", 2, m)

        def build() -> GradedSpan:
            lower = self.lcs_span(sig, ring, 2, m).span
            ideal = self.m_ideal_span(sig, ring, 3, m).span
            rows = (dict(r) for r in lower.stack(ideal).rows)
            return self._finish(sig, ring, "L2+M3", 2, m, rows)

        return self._memo(key, build)

    # ----------------------------------------------------------------------
    def bracket_span(
        self, sig: Signature, ring: RingLike, kind: str, k: int, m: Sequence[int]
    ) -> GradedSpan:
        """Rows spanning ``[A, X_k][m]`` for ``X`` the series ``L`` or the ideal ``M``."""
        request = LcsRequest(sig, ring, k, m, kind)
        ring = _working_ring(request.ring)
        m = request.m
        if kind == "L":
            right = lambda rest: self.lcs_span(sig, ring, k, rest)
        else:
            right = lambda rest: self.m_ideal_span(sig, ring, k, rest)
        return self._finish(sig, ring, f"[A,{kind}]", k, m, self._bracket_rows(sig, ring, m, right))

    # ----------------------------------------------------------------------
    def bi_group(
        self, sig: Signature, i: int, m: Sequence[int], invert_two: bool = False
    ) -> AbelianGroupInvariants:
        """
        Structure of ``B_i[m] = L_i[m] / L_{i+1}[m]`` over the integers.

        With ``invert_two`` the answer is localised away from 2, which is
        the group over ``Z[1/2]``.
        """
        group = lattice_quotient(
            self.lcs_span(sig, ZZ, i, m).span, self.lcs_span(sig, ZZ, i + 1, m).span, ZZ
        )
        return group.localize_away_from_two() if invert_two else group

    # ----------------------------------------------------------------------
    def bi_group_dyadic(self, sig: Signature, i: int, m: Sequence[int]) -> AbelianGroupInvariants:
        """``B_i[m]`` over ``Z[1/2]``, computed with dyadic spans."""
        return lattice_quotient(
            self.lcs_span(sig, ZZ_HALF, i, m).span,
            self.lcs_span(sig, ZZ_HALF, i + 1, m).span,
            ZZ_HALF,
        )

    # ----------------------------------------------------------------------
    def bi_dim(self, sig: Signature, field: RingLike, i: int, m: Sequence[int]) -> int:
        """Dimension of ``B_i[m]`` over the rationals or a prime field."""
        field = parse_ring(field)
        if not field.is_field:
            raise ValueError(f"bi_dim needs a field, got {field}.")
        return self.lcs_span(sig, field, i, m).rank - self.lcs_span(sig, field, i + 1, m).rank

    # ----------------------------------------------------------------------
    def bar_b1_group(self, sig: Signature, m: Sequence[int]) -> AbelianGroupInvariants:
        """Structure of ``B1bar[m] = A[m] / (L_2 + M_3)[m]`` over the integers."""
        return lattice_quotient(
            self.lcs_span(sig, ZZ, 1, m).span, self.l2_m3_span(sig, ZZ, m).span, ZZ
        )

    # ----------------------------------------------------------------------
    def bar_b1_dim(self, sig: Signature, field: RingLike, m: Sequence[int]) -> int:
        field = parse_ring(field)
        if not field.is_field:
            raise ValueError(f"bar_b1_dim needs a field, got {field}.")
        return len(monomials(multidegree(sig, m))) - self.l2_m3_span(sig, field, m).rank

    # ----------------------------------------------------------------------
    def bar_b1_dim_fp(self, sig: Signature, p: int, m: Sequence[int]) -> int:
        """Dimension of ``B1bar[m]`` over ``F_p``, computed directly."""
        return self.bar_b1_dim(sig, f"f{p}", m)

    # ----------------------------------------------------------------------
    def n_quotient(self, sig: Signature, i: int, m: Sequence[int]) -> AbelianGroupInvariants:
        """
        Structure of ``N_i[m] = M_i[m] / M_{i+1}[m]`` over the integers, ``i >= 2``.

        Raises
        ------
        ValueError
            If ``i < 2``; ``M_1`` is the whole algebra and not part of the series.
        """
        if i < 2:
            raise ValueError(f"N_i is defined for i >= 2, got {i}.")
        return lattice_quotient(
            self.m_ideal_span(sig, ZZ, i, m).span, self.m_ideal_span(sig, ZZ, i + 1, m).span, ZZ
        )

    # ----------------------------------------------------------------------
    def integer_group(self, sig: Signature, which: Union[str, int], m: Sequence[int]) -> AbelianGroupInvariants:
        """``B1bar`` when ``which`` is ``"bar1"``, otherwise ``B_which``."""
        if which == "bar1":
            return self.bar_b1_group(sig, m)
        return self.bi_group(sig, int(which), m)

    # ----------------------------------------------------------------------
    def field_dim(self, sig: Signature, field: RingLike, which: Union[str, int], m: Sequence[int]) -> int:
        if which == "bar1":
            return self.bar_b1_dim(sig, field, m)
        return self.bi_dim(sig, field, int(which), m)

    # ----------------------------------------------------------------------
    def universal_coefficient_check(
        self, sig: Signature, p: int, which: Union[str, int], m: Sequence[int]
    ) -> bool:
        """
        Whether the ``F_p`` dimension equals that of the integer group tensored with ``F_p``.

        ``which`` is ``"bar1"`` or a series index ``i``.
        """
        expected = self.integer_group(sig, which, m).tensor_dim(p)
        return self.field_dim(sig, f"f{p}", which, m) == expected

    # ----------------------------------------------------------------------
    def discrepancy(self, sig: Signature, p: int, i: int, m: Sequence[int]) -> int:
        """``dim B_i[m]`` over ``F_p`` minus the dimension over the rationals."""
        return self.bi_dim(sig, f"f{p}", i, m) - self.bi_dim(sig, QQ, i, m)

    # ----------------------------------------------------------------------
    def contains(self, big: GradedSpan, small: GradedSpan) -> bool:
        """Lattice containment of two spans of the same slice."""
        ring = parse_ring(big.ring)
        return lattice_contains(big.span, small.span, ring)


default_engine = LcsEngine()

lcs_span = default_engine.lcs_span
m_ideal_span = default_engine.m_ideal_span
l2_m3_span = default_engine.l2_m3_span
bi_group = default_engine.bi_group
bi_group_dyadic = default_engine.bi_group_dyadic
bi_dim = default_engine.bi_dim
bar_b1_group = default_engine.bar_b1_group
bar_b1_dim_fp = default_engine.bar_b1_dim_fp
n_quotient = default_engine.n_quotient
universal_coefficient_check = default_engine.universal_coefficient_check
discrepancy = default_engine.discrepancy
