"""
==========
Identities
==========

Explicit elements and exact identities of the free algebra that explain
the torsion found by the engine: the elements ``T(s, q, r)`` and their
order in ``B_2``, a five-term commutator identity, lifts of closed
one-forms, the shuffle-weighted image of a word under the Fedosov map and
a polynomial model of ``L_i`` in degree one.

Classes
=======
    - *TorsionMeasurement*: An element of ``L_2`` together with its order in ``B_2``.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from sympy import Poly, divisors, symbols

from lcs_torsion.algebra import (
    Element,
    Multidegree,
    Signature,
    Word,
    commutator,
    monomial_index,
    parity,
    super_commutator,
)
from lcs_torsion.derham import DifferentialForm, FormMonomial, cohomology, fedosov_word
from lcs_torsion.errors import NotInL2
from lcs_torsion.linalg import AbelianGroupInvariants, SpanMatrix, echelon, lattice_equal
from lcs_torsion.rings import ZZ, ZZ_HALF
from lcs_torsion.utils.debug import styled_logger
from lcs_torsion.words import noncomm_partial, shuffle_count, y_product

logger_identities = styled_logger(logging.getLogger("LcsIdentities"))

THREE = Signature(3, 0)


# ----------------------------------------------------------------------
def t_element(s: int, q: int, r: int) -> Element:
    """
    ``T(s, q, r) = [z, z^(s-1) x^(q-1) y^(r-1) [x, y]]`` in three even generators.

    The result is homogeneous of multidegree ``(q, r, s)`` in ``(x, y, z)``.
    """
    if min(s, q, r) < 1:
        raise ValueError("T(s, q, r) needs s, q, r >= 1.")
    x, y, z = (Element.generator(THREE, j) for j in range(3))
    head = Element.monomial(THREE, (2,) * (s - 1) + (0,) * (q - 1) + (1,) * (r - 1))
    return commutator(z, head * commutator(x, y))


########################################################################
@dataclass(frozen=True)
class TorsionMeasurement:
    """
    An element of ``L_2[m]`` and its order in ``B_2[m]``.

    ``order`` is 0 when the class has infinite order.
    """

    element: Element
    sig: Signature
    m: Multidegree
    order: int

    # ----------------------------------------------------------------------
    @classmethod
    def measure(cls, element: Element, engine=None, invert_two: bool = False) -> "TorsionMeasurement":
        return cls(element, element.sig, element.degree, order_in_b2(element, engine, invert_two))


# ----------------------------------------------------------------------
def _engine(engine):
    if engine is None:
        from lcs_torsion.engine import default_engine

        return default_engine
    return engine


# ----------------------------------------------------------------------
def order_in_b2(e: Element, engine=None, invert_two: bool = False) -> int:
    """
    Order of the class of ``e`` in ``B_2 = L_2 / L_3``.

    Parameters
    ----------
    e : Element
        A homogeneous element with integer coefficients.
    engine : LcsEngine, optional
        Span provider; the shared engine by default.
    invert_two : bool, optional
        Report the order over ``Z[1/2]``, that is, its odd part.

    Returns
    -------
    int
        The least ``k >= 1`` with ``k e`` in ``L_3``, or 0 for infinite order.

    Raises
    ------
    NotInL2
        If ``e`` is not in ``L_2``.
    """
    engine = _engine(engine)
    sig, m = e.sig, e.degree
    vector = e.coordinates(m)
    if not echelon(engine.lcs_span(sig, ZZ, 2, m).span).contains(vector):
        raise NotInL2(f"{e} is not in L_2{list(m)}.")
    upper = echelon(engine.lcs_span(sig, ZZ, 3, m).span)
    order = 0
    if upper.contains(vector):
        order = 1
    else:
        exponent = engine.bi_group(sig, 2, m).exponent
        for k in divisors(exponent)[1:]:
            if upper.contains({c: k * v for c, v in vector.items()}):
                order = int(k)
                break
    if invert_two and order:
        while order % 2 == 0:
            order //= 2
    logger_identities.debug(f"order of {len(e)}-term element in B_2{list(m)}: {order}")
    return order


# ----------------------------------------------------------------------
def t_generates_torsion(s: int, q: int, r: int, engine=None) -> bool:
    """Whether the torsion of ``B_2[q, r, s]`` is cyclic and generated by ``T(s, q, r)``."""
    engine = _engine(engine)
    torsion = engine.bi_group(THREE, 2, (q, r, s)).torsion_part()
    if len(torsion.torsion) > 1:
        return False
    return order_in_b2(t_element(s, q, r), engine) == torsion.order


# ----------------------------------------------------------------------
def identity_defect(x: Element, y: Element, z: Element, w: Element) -> Element:
    """
    ``[z, w[x,y]]`` minus
    ``[[w,y], xz] - [z, [y, wx]] + [x, [w, zy]] + x[z,w]y + [w,z]yx``.

    Vanishes for all elements of an associative algebra.
    """
    lhs = commutator(z, w * commutator(x, y))
    rhs = (
        commutator(commutator(w, y), x * z)
        - commutator(z, commutator(y, w * x))
        + commutator(x, commutator(w, z * y))
        + x * commutator(z, w) * y
        + commutator(w, z) * y * x
    )
    return lhs - rhs


# ----------------------------------------------------------------------
def verify_identity_ide() -> bool:
    """The five-term identity on four free generators."""
    sig = Signature(4, 0)
    x, y, z, w = (Element.generator(sig, j) for j in range(4))
    return identity_defect(x, y, z, w).is_zero()


# ----------------------------------------------------------------------
def closed_oneform_lift(sig: Signature, m: Sequence[int]) -> List[Element]:
    """
    Elements ``f_i`` of multidegree ``m - e_i`` with ``sum_i [x_i, f_i] = 0``.

    With ``d = gcd(m)`` and ``c`` the sorted word of multidegree ``m/d``,
    ``f_i`` collects the rotations of ``c^d`` that follow a letter ``i``
    in the first period. Odd letters bring super signs, and no lift of
    this shape exists when ``c`` is odd and ``d`` even.

    Raises
    ------
    ValueError
        If some degree is zero, or in the obstructed super case.
    """
    m = tuple(m)
    if len(m) != sig.n_gens or any(v <= 0 for v in m):
        raise ValueError("closed_oneform_lift needs every degree positive.")
    d = math.gcd(*m)
    period = tuple(j for j, v in enumerate(m) for _ in range(v // d))
    word = period * d
    total = parity(word, sig)
    if parity(period, sig) and d % 2 == 0:
        raise ValueError(
            f"No closed lift in degree {list(m)}: odd cyclic root with even exponent."
        )
    terms: List[Dict[Word, int]] = [{} for _ in range(sig.n_gens)]
    alpha = 1
    for t, letter in enumerate(period):
        rest = word[t + 1:] + word[:t]
        terms[letter][rest] = terms[letter].get(rest, 0) + alpha
        p = int(sig.is_odd(letter))
        if p * (total - p) % 2:
            alpha = -alpha
    return [Element(sig, f) for f in terms]


# ----------------------------------------------------------------------
def super_closed_lift(sig: Signature, m: Sequence[int]) -> Optional[List[Element]]:
    """:func:`closed_oneform_lift`, or ``None`` when the lift is obstructed."""
    try:
        return closed_oneform_lift(sig, m)
    except ValueError:
        return None


# ----------------------------------------------------------------------
def lift_defect(sig: Signature, lifts: Sequence[Element]) -> Element:
    """``sum_i [x_i, f_i]`` with super-commutators."""
    out = Element.zero(sig)
    for j, f in enumerate(lifts):
        if not f.is_zero():
            out = out + super_commutator(Element.generator(sig, j), f)
    return out


# ----------------------------------------------------------------------
def fedosov_shuffle_identity(word: Sequence[int], n: Optional[int] = None) -> bool:
    """
    Check the shuffle expansion of ``sum_i phi(d_i w) dx_i`` over ``Z[1/2]``.

    ``phi`` is the Fedosov image and ``d_i`` the cyclic derivative. The sum
    equals, over odd index sets ``I`` of size ``2k + 1``,
    ``(2k + 1) 2^(-k) N_I(w) x^(m - e_I) dx_I`` where ``N_I`` is the signed
    shuffle count.
    """
    word = tuple(word)
    n = n or max(word) + 1
    sig = Signature(n)
    lhs = DifferentialForm.zero(n, 0, ZZ_HALF)
    for i in range(n):
        partial = noncomm_partial(word, i, sig)
        image = DifferentialForm.zero(n, 0, ZZ_HALF)
        for w, c in partial.terms.items():
            image = image + fedosov_word(w, n, ZZ_HALF).scale(c)
        dx = DifferentialForm.monomial(n, 0, dx=(i,), ring=ZZ_HALF)
        lhs = lhs + image * dx

    m = [0] * n
    for j in word:
        m[j] += 1
    expected: Dict[FormMonomial, Fraction] = {}
    letters = [i for i in range(n) if m[i]]
    for size in range(1, len(letters) + 1, 2):
        k = (size - 1) // 2
        for I in itertools.combinations(letters, size):
            count = shuffle_count(word, I)
            if count:
                x = tuple(m[i] - (i in I) for i in range(n))
                expected[FormMonomial(x, (), I, ())] = Fraction(size * count, 2 ** k)
    return lhs == DifferentialForm(n, 0, expected, ZZ_HALF)


# ----------------------------------------------------------------------
def shuffle_divisibility(a: Sequence[int], m: int, n: Optional[int] = None) -> bool:
    """
    Check that ``N_I(a^m)`` is divisible by ``m^(k+1) D`` for every odd
    ``I`` of size ``2k + 1 >= 3``, with ``D`` the gcd of the multidegree of
    ``a``, and that it is the ``y_I`` coefficient of :func:`y_product`.
    """
    a = tuple(a)
    n = n or max(a) + 1
    degree = [a.count(i) for i in range(n)]
    D = math.gcd(*degree)
    power = a * m
    product = y_product(a, m)
    letters = [i for i in range(n) if degree[i]]
    for size in range(3, len(letters) + 1, 2):
        k = (size - 1) // 2
        for I in itertools.combinations(letters, size):
            count = shuffle_count(power, I)
            if count != product.coefficient(I):
                return False
            if count % (m ** (k + 1) * D):
                return False
    return True


# ----------------------------------------------------------------------
def polynomial_model(i: int, M: int) -> SpanMatrix:
    """
    The lattice of ``(z - 1)^(i-1) z^t``, ``0 <= t <= M - i + 1``, in
    multidegree ``(M, 1)``.

    The word ``x^a y x^(M-a)`` is identified with ``z^a``; columns follow
    the monomial basis of ``A[M, 1]``.
    """
    if i < 2 or M < 1:
        raise ValueError("The polynomial model needs i >= 2 and M >= 1.")
    z = symbols("z")
    index = monomial_index((M, 1))
    rows = []
    for t in range(M - i + 2):
        coeffs = Poly((z - 1) ** (i - 1) * z ** t, z).all_coeffs()[::-1]
        row = {}
        for a, c in enumerate(coeffs):
            if c:
                row[index[(0,) * a + (1,) + (0,) * (M - a)]] = int(c)
        rows.append(row)
    return SpanMatrix.from_dicts(rows, len(index))


# ----------------------------------------------------------------------
def polynomial_model_check(sig: Signature, i: int, M: int, engine=None) -> bool:
    """
    Compare ``L_i[M, 1]`` with :func:`polynomial_model`.

    The first generator has degree ``M`` and must be even; the second
    has degree one and may be odd.
    """
    if sig.n_gens != 2:
        raise ValueError("The polynomial model uses two generators.")
    if sig.is_odd(0):
        raise ValueError("The polynomial model needs an even high-degree generator.")
    span = _engine(engine).lcs_span(sig, ZZ, i, (M, 1)).span
    return lattice_equal(span, polynomial_model(i, M))


# ----------------------------------------------------------------------
def b2_cohomology_bound(n: int, m: Sequence[int]) -> AbelianGroupInvariants:
    """``H^3[m] + H^5[m] + ...`` of the De Rham complex on ``n`` even coordinates."""
    m = tuple(m)
    group = AbelianGroupInvariants()
    for r in range(3, n + 1, 2):
        group = group.direct_sum(cohomology(n, 0, r, m))
    return group


# ----------------------------------------------------------------------
def b2_within_bound(n: int, m: Sequence[int], engine=None) -> bool:
    """Whether the torsion of ``B_2(A_n)[m]`` is a quotient of :func:`b2_cohomology_bound`."""
    torsion = _engine(engine).bi_group(Signature(n), 2, m).torsion_part()
    return torsion.torsion_is_quotient_of(b2_cohomology_bound(n, m))


# ----------------------------------------------------------------------
def sandwich(sig: Signature, m: Sequence[int], engine=None) -> tuple:
    """
    The three 2-ranks of the super sandwich.

    Returns the 2-rank of the torsion of ``B_2`` for the purely even algebra
    on ``n + k`` generators, the same for ``A_{n,k}``, and the first plus the
    2-rank of the torsion of ``B_1(A_{n,k})``. The middle value lies between
    the outer two.
    """
    engine = _engine(engine)
    m = tuple(m)
    even = engine.bi_group(Signature(sig.n_gens), 2, m).p_rank(2)
    middle = engine.bi_group(sig, 2, m).p_rank(2)
    upper = even + engine.bi_group(sig, 1, m).p_rank(2)
    return even, middle, upper
