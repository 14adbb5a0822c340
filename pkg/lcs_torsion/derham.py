"""
======
DeRham
======

The integer De Rham complex of ``Z^{n|k}`` and its link with the quotient
``A/M_3`` of the free algebra.

Forms are polynomial in the even coordinates ``x_i``, the odd coordinates
``y_j`` and their differentials. ``x_i`` and ``dy_j`` are even, ``dx_i``
and ``y_j`` are odd. A monomial is stored as ``x^a y^eps dx_I dy^b`` with
the odd factors written ys first, each group by increasing index; any
reordering sign is kept in the coefficient.

Classes
=======
    - *FormMonomial*: Exponents of one form monomial.
    - *DifferentialForm*: Sparse combination of form monomials.
    - *UNormalForm*: Element of ``A_n / M_3`` in the basis ``x^k u_I``.
"""

import itertools
import logging
import math
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from lcs_torsion.algebra import Element, Signature, Word, commutator, monomials
from lcs_torsion.errors import NoHalf, NotASublattice
from lcs_torsion.linalg import (
    AbelianGroupInvariants,
    EchelonForm,
    SpanMatrix,
    hnf,
    integer_kernel,
    lattice_contains,
    lattice_equal,
    lattice_intersection,
    lattice_quotient,
    saturate,
)
from lcs_torsion.rings import ZZ, ZZ_HALF, ScalarRing
from lcs_torsion.utils.debug import styled_logger

logger_derham = styled_logger(logging.getLogger("DeRham"))

Atom = Tuple[int, int]


########################################################################
class FormMonomial(NamedTuple):
    """
    ``x^x y^y dx_dx dy^dy``.

    Attributes
    ----------
    x : tuple
        Exponents of the even coordinates.
    y : tuple
        0/1 flags of the odd coordinates.
    dx : tuple
        Increasing indices of the odd differentials ``dx_i``.
    dy : tuple
        Exponents of the even differentials ``dy_j``.
    """

    x: Tuple[int, ...]
    y: Tuple[int, ...]
    dx: Tuple[int, ...]
    dy: Tuple[int, ...]

    # ----------------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.dx) + sum(self.dy)

    # ----------------------------------------------------------------------
    @property
    def parity(self) -> int:
        return (len(self.dx) + sum(self.y)) % 2

    # ----------------------------------------------------------------------
    def multidegree(self) -> Tuple[int, ...]:
        even = tuple(a + (i in self.dx) for i, a in enumerate(self.x))
        odd = tuple(e + b for e, b in zip(self.y, self.dy))
        return even + odd

    # ----------------------------------------------------------------------
    def atoms(self) -> Tuple[Atom, ...]:
        """Odd factors in stored order: ``(0, j)`` for ``y_j``, ``(1, i)`` for ``dx_i``."""
        return tuple((0, j) for j, e in enumerate(self.y) if e) + tuple((1, i) for i in self.dx)

    # ----------------------------------------------------------------------
    def label(self) -> str:
        parts = []
        for i, a in enumerate(self.x):
            if a:
                parts.append(f"x{i + 1}" + (f"^{a}" if a > 1 else ""))
        for j, e in enumerate(self.y):
            if e:
                parts.append(f"y{j + 1}")
        parts.extend(f"dx{i + 1}" for i in self.dx)
        for j, b in enumerate(self.dy):
            if b:
                parts.append(f"dy{j + 1}" + (f"^{b}" if b > 1 else ""))
        return "*".join(parts) or "1"


# ----------------------------------------------------------------------
def _sort_sign(seq: Sequence) -> Tuple[int, Tuple]:
    """Sign of the sorting permutation of distinct items, 0 on a repeat."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


# ----------------------------------------------------------------------
def _assemble(
    x: Sequence[int], atoms: Sequence[Atom], dy: Sequence[int], k: int
) -> Tuple[int, Optional[FormMonomial]]:
    sign, ordered = _sort_sign(list(atoms))
    if sign == 0:
        return 0, None
    y = [0] * k
    dx = []
    for kind, idx in ordered:
        if kind == 0:
            y[idx] = 1
        else:
            dx.append(idx)
    return sign, FormMonomial(tuple(x), tuple(y), tuple(dx), tuple(dy))


# ----------------------------------------------------------------------
def _mono_mul(p: FormMonomial, q: FormMonomial) -> Tuple[int, Optional[FormMonomial]]:
    x = tuple(a + b for a, b in zip(p.x, q.x))
    dy = tuple(a + b for a, b in zip(p.dy, q.dy))
    return _assemble(x, p.atoms() + q.atoms(), dy, len(p.y))


# ----------------------------------------------------------------------
@lru_cache(maxsize=65536)
def _mono_d(p: FormMonomial) -> Tuple[Tuple[int, FormMonomial], ...]:
    out = []
    atoms = p.atoms()
    k = len(p.y)
    for i, a in enumerate(p.x):
        if a:
            x = tuple(v - (t == i) for t, v in enumerate(p.x))
            sign, mono = _assemble(x, ((1, i),) + atoms, p.dy, k)
            if sign:
                out.append((sign * a, mono))
    for s, (kind, j) in enumerate(atoms):
        if kind != 0:
            continue
        dy = tuple(v + (t == j) for t, v in enumerate(p.dy))
        sign, mono = _assemble(p.x, atoms[:s] + atoms[s + 1:], dy, k)
        out.append(((-1) ** s * sign, mono))
    return tuple(out)


########################################################################
class DifferentialForm:
    """
    A polynomial differential form on ``Z^{n|k}`` with coefficients in a ring.

    Parameters
    ----------
    n, k : int
        Number of even and odd coordinates.
    terms : Mapping[FormMonomial, scalar], optional
        Coefficients; zeros are dropped.
    ring : ScalarRing, optional
        The integers by default. The Fedosov product needs a ring with 1/2.
    """

    __slots__ = ("n", "k", "ring", "_terms")

    def __init__(
        self,
        n: int,
        k: int = 0,
        terms: Optional[Mapping[FormMonomial, object]] = None,
        ring: ScalarRing = ZZ,
    ):
        self.n = n
        self.k = k
        self.ring = ring
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono.x) != n or len(mono.y) != k:
                raise ValueError(f"Form monomial {mono} does not live on Z^({n}|{k}).")
            c = ring.coerce(c)
            if c:
                clean[mono] = c
        self._terms = MappingProxyType(clean)

    # ----------------------------------------------------------------------
    @classmethod
    def _raw(cls, n: int, k: int, terms: Dict[FormMonomial, object], ring: ScalarRing):
        obj = cls.__new__(cls)
        obj.n, obj.k, obj.ring = n, k, ring
        obj._terms = MappingProxyType({m: c for m, c in terms.items() if c})
        return obj

    # ----------------------------------------------------------------------
    @classmethod
    def zero(cls, n: int, k: int = 0, ring: ScalarRing = ZZ) -> "DifferentialForm":
        return cls._raw(n, k, {}, ring)

    # ----------------------------------------------------------------------
    @classmethod
    def one(cls, n: int, k: int = 0, ring: ScalarRing = ZZ) -> "DifferentialForm":
        return cls.monomial(n, k, ring=ring)

    # ----------------------------------------------------------------------
    @classmethod
    def monomial(
        cls,
        n: int,
        k: int = 0,
        x: Sequence[int] = (),
        y: Sequence[int] = (),
        dx: Sequence[int] = (),
        dy: Sequence[int] = (),
        coeff: object = 1,
        ring: ScalarRing = ZZ,
    ) -> "DifferentialForm":
        """``coeff * x^x y^y dx_{dx} dy^dy``; ``dx`` may be unsorted, its sign is applied."""
        x = tuple(x) or (0,) * n
        y = tuple(y) or (0,) * k
        dy = tuple(dy) or (0,) * k
        atoms = tuple((0, j) for j, e in enumerate(y) if e) + tuple((1, i) for i in dx)
        sign, mono = _assemble(x, atoms, dy, k)
        if sign == 0:
            return cls.zero(n, k, ring)
        return cls(n, k, {mono: sign * ring.coerce(coeff)}, ring)

    # ----------------------------------------------------------------------
    @classmethod
    def coordinate(cls, n: int, k: int, j: int, ring: ScalarRing = ZZ) -> "DifferentialForm":
        """The coordinate function ``x_{j+1}`` (``j < n``) or ``y_{j-n+1}``."""
        if j < n:
            return cls.monomial(n, k, x=[int(t == j) for t in range(n)], ring=ring)
        return cls.monomial(n, k, y=[int(t == j - n) for t in range(k)], ring=ring)

    # ----------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[FormMonomial, object]:
        return self._terms

    # ----------------------------------------------------------------------
    def items(self) -> List[Tuple[FormMonomial, object]]:
        return sorted(self._terms.items(), key=lambda t: (t[0].rank, t[0]))

    # ----------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    # ----------------------------------------------------------------------
    def ranks(self) -> set:
        return {m.rank for m in self._terms}

    # ----------------------------------------------------------------------
    def multidegrees(self) -> set:
        return {m.multidegree() for m in self._terms}

    # ----------------------------------------------------------------------
    def coefficient(self, mono: FormMonomial) -> object:
        return self._terms.get(mono, self.ring.coerce(0))

    # ----------------------------------------------------------------------
    def coordinates(self, basis: Sequence[FormMonomial]) -> Dict[int, object]:
        index = {m: i for i, m in enumerate(basis)}
        try:
            return {index[m]: c for m, c in self._terms.items()}
        except KeyError as error:
            raise ValueError(f"Form monomial {error.args[0]} is not in the basis.") from None

    # ----------------------------------------------------------------------
    def _check(self, other: "DifferentialForm") -> None:
        if not isinstance(other, DifferentialForm):
            raise TypeError(f"Cannot combine a form with {type(other).__name__}.")
        if (other.n, other.k) != (self.n, self.k):
            raise ValueError("Forms live on different spaces.")
        if other.ring != self.ring:
            raise ValueError(f"Rings {self.ring} and {other.ring} differ.")

    # ----------------------------------------------------------------------
    def _combine(self, other: "DifferentialForm", factor: int) -> "DifferentialForm":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = self.ring.normalize(out.get(m, 0) + factor * c)
        return DifferentialForm._raw(self.n, self.k, out, self.ring)

    # ----------------------------------------------------------------------
    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self._combine(other, 1)

    # ----------------------------------------------------------------------
    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self._combine(other, -1)

    # ----------------------------------------------------------------------
    def __neg__(self) -> "DifferentialForm":
        return self.scale(-1)

    # ----------------------------------------------------------------------
    def scale(self, c: object) -> "DifferentialForm":
        c = self.ring.coerce(c)
        return DifferentialForm._raw(
            self.n, self.k, {m: self.ring.normalize(c * v) for m, v in self._terms.items()}, self.ring
        )

    # ----------------------------------------------------------------------
    def __mul__(self, other: object) -> "DifferentialForm":
        if isinstance(other, DifferentialForm):
            return wedge(self, other)
        return self.scale(other)

    # ----------------------------------------------------------------------
    def __rmul__(self, other: object) -> "DifferentialForm":
        return self.scale(other)

    # ----------------------------------------------------------------------
    def change_ring(self, ring: ScalarRing) -> "DifferentialForm":
        return DifferentialForm(self.n, self.k, self._terms, ring)

    # ----------------------------------------------------------------------
    def d(self) -> "DifferentialForm":
        return d(self)

    # ----------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.n, self.k, self.ring) == (other.n, other.k, other.ring) and dict(
            self._terms
        ) == dict(other._terms)

    # ----------------------------------------------------------------------
    def __hash__(self) -> int:
        return hash((self.n, self.k, self.ring, frozenset(self._terms.items())))

    # ----------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"DifferentialForm({self.n}, {self.k}, {dict(self.items())!r}, ring={self.ring})"

    # ----------------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            name = m.label()
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


# ----------------------------------------------------------------------
def d(omega: DifferentialForm) -> DifferentialForm:
    """
    De Rham differential.

    ``d x_i = dx_i`` and ``d y_j = dy_j``; ``d`` is an odd derivation, so
    passing an odd factor costs a sign.
    """
    ring = omega.ring
    out: Dict[FormMonomial, object] = {}
    for mono, c in omega.terms.items():
        for sign, image in _mono_d(mono):
            out[image] = ring.normalize(out.get(image, 0) + sign * c)
    return DifferentialForm._raw(omega.n, omega.k, out, ring)


# ----------------------------------------------------------------------
def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    """Super-commutative product of forms."""
    a._check(b)
    ring = a.ring
    out: Dict[FormMonomial, object] = {}
    for p, c in a.terms.items():
        for q, e in b.terms.items():
            sign, mono = _mono_mul(p, q)
            if sign:
                out[mono] = ring.normalize(out.get(mono, 0) + sign * c * e)
    return DifferentialForm._raw(a.n, a.k, out, ring)


# ----------------------------------------------------------------------
@lru_cache(maxsize=4096)
def form_basis(n: int, k: int, r: int, m: Tuple[int, ...]) -> Tuple[FormMonomial, ...]:
    """
    Monomial basis of ``Omega^r[m]`` on ``Z^{n|k}``.

    ``x_i`` and ``dx_i`` both count towards ``m_i``; ``y_j`` and ``dy_j``
    towards ``m_{n+j}``.
    """
    m = tuple(m)
    if len(m) != n + k:
        raise ValueError(f"Multidegree {m} does not match Z^({n}|{k}).")
    out = []
    choices = [range(min(1, v) + 1) for v in m]
    for flags in itertools.product(*choices):
        dx = tuple(i for i in range(n) if flags[i])
        y = tuple(flags[n:])
        dy = tuple(m[n + j] - y[j] for j in range(k))
        if len(dx) + sum(dy) != r:
            continue
        x = tuple(m[i] - flags[i] for i in range(n))
        out.append(FormMonomial(x, y, dx, dy))
    return tuple(sorted(out))


# ----------------------------------------------------------------------
def parity_basis(n: int, k: int, m: Sequence[int], parity: int) -> Tuple[FormMonomial, ...]:
    """Basis of the forms of even (``parity=0``) or odd rank in multidegree ``m``."""
    m = tuple(m)
    out = []
    for r in range(parity, sum(m) + 1, 2):
        out.extend(form_basis(n, k, r, m))
    return tuple(out)


# ----------------------------------------------------------------------
def differential_matrix(n: int, k: int, r: int, m: Sequence[int]) -> SpanMatrix:
    """Rows ``d(e)`` for the basis ``e`` of ``Omega^r[m]``, in the basis of ``Omega^{r+1}[m]``."""
    m = tuple(m)
    source = form_basis(n, k, r, m) if r >= 0 else ()
    target = form_basis(n, k, r + 1, m)
    index = {mono: i for i, mono in enumerate(target)}
    rows = []
    for mono in source:
        row: Dict[int, int] = {}
        for sign, image in _mono_d(mono):
            row[index[image]] = row.get(index[image], 0) + sign
        rows.append(row)
    return SpanMatrix.from_dicts(rows, len(target))


# ----------------------------------------------------------------------
def cohomology(n: int, k: int, r: int, m: Sequence[int]) -> AbelianGroupInvariants:
    """
    ``H^r[m]`` of the integer De Rham complex, as ``ker d / im d``.

    Examples
    --------
    >>> str(cohomology(1, 0, 1, (6,)))
    'Z/6'
    """
    m = tuple(m)
    closed = integer_kernel(differential_matrix(n, k, r, m))
    if r >= 1:
        exact = differential_matrix(n, k, r - 1, m)
    else:
        exact = SpanMatrix(len(form_basis(n, k, r, m)))
    return lattice_quotient(closed, exact)


# ----------------------------------------------------------------------
def cohomology_closed_form(n: int, r: int, m: Sequence[int]) -> AbelianGroupInvariants:
    """``(Z/gcd(m))^C(n-1, r-1)`` for ``n`` even coordinates and all ``m_i > 0``."""
    if any(v <= 0 for v in m):
        raise ValueError("The closed form needs every degree positive.")
    if r < 1 or r > n:
        return AbelianGroupInvariants()
    g = math.gcd(*m)
    return AbelianGroupInvariants.from_factors([g] * math.comb(n - 1, r - 1))


# ----------------------------------------------------------------------
def kunneth_prediction(n: int, r: int, m: Sequence[int]) -> AbelianGroupInvariants:
    """
    ``H^r`` on ``n`` coordinates from the cohomology on the first ``n - 1``.

    Splitting off the last coordinate, of degree ``m_n > 0``, gives
    ``H^{r-1}[m'] (x) Z/m_n`` plus ``Tor(H^r[m'], Z/m_n)``.
    """
    if n < 2:
        raise ValueError("The split needs at least two coordinates.")
    m = tuple(m)
    last, rest = m[-1], m[:-1]
    if last <= 0:
        raise ValueError("The last degree must be positive.")
    lower = cohomology(n - 1, 0, r - 1, rest) if r >= 1 else AbelianGroupInvariants()
    same = cohomology(n - 1, 0, r, rest)
    tensor = lower.tensor_cyclic(last)
    tor = same.torsion_part().tensor_cyclic(last)
    return tensor.direct_sum(tor)


# ----------------------------------------------------------------------
def exactness_witness(omega: DifferentialForm) -> Optional[DifferentialForm]:
    """
    A form ``eta`` with integer coefficients and ``d eta = omega``, if one exists.

    ``omega`` must be homogeneous in rank and multidegree.
    """
    if omega.is_zero():
        return DifferentialForm.zero(omega.n, omega.k, omega.ring)
    ranks, degrees = omega.ranks(), omega.multidegrees()
    if len(ranks) != 1 or len(degrees) != 1:
        raise ValueError("exactness_witness needs a homogeneous form.")
    r, m = ranks.pop(), degrees.pop()
    if r == 0:
        return None
    source = form_basis(omega.n, omega.k, r - 1, m)
    target = form_basis(omega.n, omega.k, r, m)
    form = EchelonForm(ZZ, len(target), track=True)
    for row in differential_matrix(omega.n, omega.k, r - 1, m).rows:
        form.insert(row)
    try:
        combination = form.solve(omega.coordinates(target))
    except NotASublattice:
        return None
    return DifferentialForm(
        omega.n, omega.k, {source[i]: c for i, c in combination.items()}, omega.ring
    )


########################################################################
class UNormalForm:
    """
    Element of ``A_n / M_3`` written in the basis ``x^k u_I``.

    ``x^k`` is the ordered product ``x_1^{k_1} ... x_n^{k_n}`` and ``u_I``
    the totally antisymmetric product of the central commutators
    ``u_ij = [x_i, x_j]`` over the sorted index set ``I`` of even size.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Tuple[Tuple[int, ...], Tuple[int, ...]], int]] = None):
        self.n = n
        self._terms = MappingProxyType({key: c for key, c in (terms or {}).items() if c})

    # ----------------------------------------------------------------------
    @property
    def terms(self):
        return self._terms

    # ----------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    # ----------------------------------------------------------------------
    def __add__(self, other: "UNormalForm") -> "UNormalForm":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return UNormalForm(self.n, out)

    # ----------------------------------------------------------------------
    def __sub__(self, other: "UNormalForm") -> "UNormalForm":
        return self + other.scale(-1)

    # ----------------------------------------------------------------------
    def scale(self, c: int) -> "UNormalForm":
        return UNormalForm(self.n, {key: c * v for key, v in self._terms.items()})

    # ----------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, UNormalForm):
            return NotImplemented
        return self.n == other.n and dict(self._terms) == dict(other._terms)

    # ----------------------------------------------------------------------
    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    # ----------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"UNormalForm({self.n}, {dict(sorted(self._terms.items()))!r})"


# ----------------------------------------------------------------------
@lru_cache(maxsize=65536)
def _word_normal_form(word: Word, n: int) -> Tuple[Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], int], ...]:
    state: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {((0,) * n, ()): 1}
    for j in word:
        nxt: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
        for (k, I), c in state.items():
            up = tuple(v + (t == j) for t, v in enumerate(k))
            nxt[(up, I)] = nxt.get((up, I), 0) + c
            # x^k x_j = x^{k+e_j} - sum_{l>j} k_l x^{k-e_l} u_{jl}
            for l in range(j + 1, n):
                if not k[l]:
                    continue
                sign, J = _sort_sign((j, l) + I)
                if not sign:
                    continue
                down = tuple(v - (t == l) for t, v in enumerate(k))
                nxt[(down, J)] = nxt.get((down, J), 0) - sign * k[l] * c
        state = {key: c for key, c in nxt.items() if c}
    return tuple(sorted(state.items()))


# ----------------------------------------------------------------------
def normal_form_terms(terms: Mapping[Word, int], n: int) -> UNormalForm:
    out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    for w, c in terms.items():
        for key, v in _word_normal_form(tuple(w), n):
            out[key] = out.get(key, 0) + c * v
    return UNormalForm(n, out)


# ----------------------------------------------------------------------
def normal_form_mod_m3(e: Element) -> UNormalForm:
    """
    Reduce an element of ``A_n`` modulo ``M_3``.

    The commutators ``u_ij`` are central modulo ``M_3`` and their products
    are antisymmetric in all indices, which gives a unique normal form.
    """
    if e.sig.n_odd:
        raise ValueError("The u-normal form is defined for purely even algebras.")
    return normal_form_terms(e.terms, e.sig.n_even)


# ----------------------------------------------------------------------
def varphi(e: UNormalForm) -> DifferentialForm:
    """The linear isomorphism ``x^k u_I -> x^k dx_I`` onto the even forms."""
    return DifferentialForm(
        e.n, 0, {FormMonomial(k, (), I, ()): c for (k, I), c in e.terms.items()}
    )


# ----------------------------------------------------------------------
def _parity_sign(a: DifferentialForm) -> DifferentialForm:
    return DifferentialForm._raw(
        a.n, a.k, {m: (-c if m.parity else c) for m, c in a.terms.items()}, a.ring
    )


# ----------------------------------------------------------------------
def fedosov_mul(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    """
    The Fedosov product ``a * b = a b + (-1)^|a| 1/2 da db``.

    ``|a|`` is the total parity of each monomial of ``a``; it is even on
    every form built from the even coordinates alone.

    Raises
    ------
    NoHalf
        If the coefficient ring does not contain 1/2.
    """
    a._check(b)
    if not a.ring.has_half:
        raise NoHalf(f"The Fedosov product needs 1/2, which {a.ring} lacks.")
    return wedge(a, b) + wedge(d(_parity_sign(a)), d(b)).scale(Fraction(1, 2))


# ----------------------------------------------------------------------
@lru_cache(maxsize=65536)
def _fedosov_prefix(word: Word, n: int, k: int, ring: ScalarRing) -> DifferentialForm:
    if not word:
        return DifferentialForm.one(n, k, ring)
    head = _fedosov_prefix(word[:-1], n, k, ring)
    return fedosov_mul(head, DifferentialForm.coordinate(n, k, word[-1], ring))


# ----------------------------------------------------------------------
def fedosov_word(word: Sequence[int], n: int, ring: ScalarRing, k: int = 0) -> DifferentialForm:
    """
    Fedosov product of the coordinates ``x_{w_1} * ... * x_{w_N}``.

    Letters ``j >= n`` are the odd coordinates ``y_{j-n+1}`` of ``Z^{n|k}``.
    """
    return _fedosov_prefix(tuple(word), n, k, ring)


# ----------------------------------------------------------------------
def lie_image_equals_exact(n: int, m: Sequence[int], engine=None) -> bool:
    """Whether ``varphi`` maps ``L_2[m]`` onto the exact even forms of degree ``m``."""
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    m = tuple(m)
    even = parity_basis(n, 0, m, 0)
    odd = parity_basis(n, 0, m, 1)
    lower = engine.lcs_span(Signature(n), ZZ, 2, m)
    image = [varphi(normal_form_terms(v, n)).coordinates(even) for v in lower.vectors()]
    exact = [d(DifferentialForm(n, 0, {mono: 1})).coordinates(even) for mono in odd]
    return lattice_equal(
        SpanMatrix.from_dicts(image, len(even)), SpanMatrix.from_dicts(exact, len(even))
    )


# ----------------------------------------------------------------------
def varphi_is_bijective(n: int, m: Sequence[int], engine=None) -> bool:
    """
    Whether ``varphi`` identifies ``(A_n/M_3)[m]`` with ``Omega^ev[m]`` over ``Z``.

    The images of the words must span every even form, and the integer
    kernel of the word map must be exactly ``M_3[m]``.
    """
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    m = tuple(m)
    even = parity_basis(n, 0, m, 0)
    ideal = engine.m_ideal_span(Signature(n), ZZ, 3, m)
    images = SpanMatrix.from_dicts(
        (varphi(normal_form_terms({w: 1}, n)).coordinates(even) for w in ideal.basis), len(even)
    )
    identity = SpanMatrix.from_dicts(({i: 1} for i in range(len(even))), len(even))
    if not lattice_equal(images, identity):
        logger_derham.error(f"varphi is not onto the even forms of degree {list(m)}")
        return False
    if len(ideal.basis) - ideal.rank != len(even):
        logger_derham.error(f"rank of (A/M_3){list(m)} differs from the even forms")
        return False
    return lattice_equal(integer_kernel(images), ideal.span)


# ----------------------------------------------------------------------
def varphi_leibniz(a: Element, i: int) -> bool:
    """Whether ``varphi([a, x_i]) = d(varphi(a)) dx_i`` for ``a`` in ``A_n``."""
    n = a.sig.n_even
    left = varphi(normal_form_mod_m3(commutator(a, Element.generator(a.sig, i))))
    right = wedge(d(varphi(normal_form_mod_m3(a))), DifferentialForm.monomial(n, dx=(i,)))
    return left == right


# ----------------------------------------------------------------------
def bar_b1_via_forms(n: int, m: Sequence[int], k: int = 0) -> AbelianGroupInvariants:
    """``Omega^ev[m] / d(Omega^odd[m])`` on ``Z^{n|k}``."""
    m = tuple(m)
    even = parity_basis(n, k, m, 0)
    odd = parity_basis(n, k, m, 1)
    exact = [d(DifferentialForm(n, k, {mono: 1})).coordinates(even) for mono in odd]
    identity = SpanMatrix.from_dicts(({i: 1} for i in range(len(even))), len(even))
    return lattice_quotient(identity, SpanMatrix.from_dicts(exact, len(even)))


# ----------------------------------------------------------------------
def super_lie_image_check(n: int, k: int, m: Sequence[int], engine=None) -> bool:
    """
    Compare the Fedosov image of ``L_2[m]`` with the exact even forms on ``Z^{n|k}``.

    The words of ``A_{n,k}[m]`` are sent to Fedosov products of the
    coordinates and scaled into an integer lattice ``V``. With ``P`` the
    image of ``L_2[m]`` and ``E`` the exact forms inside ``V``, checks
    that ``V`` has full rank, that ``P`` and ``E`` span the same rational
    space with ``2E`` inside ``P``, and that ``V/P`` is ``B1bar[m]``.
    """
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    m = tuple(m)
    sig = Signature(n, k)
    even = parity_basis(n, k, m, 0)
    odd = parity_basis(n, k, m, 1)
    lower = engine.lcs_span(sig, ZZ, 2, m)
    images = [fedosov_word(w, n, ZZ_HALF, k).coordinates(even) for w in lower.basis]
    scale = max((Fraction(v).denominator for row in images for v in row.values()), default=1)

    def integral(row: Mapping[int, object]) -> Dict[int, int]:
        return {c: int(Fraction(v) * scale) for c, v in row.items()}

    words = [integral(row) for row in images]
    lattice = hnf(SpanMatrix.from_dicts(words, len(even)))
    if lattice.n_rows != len(even):
        logger_derham.error(f"Fedosov image of A{list(m)} on Z^({n}|{k}) is not of full rank")
        return False
    lie = []
    for row in lower.span.rows:
        point: Dict[int, int] = {}
        for w, c in row:
            for col, v in words[w].items():
                point[col] = point.get(col, 0) + c * v
        lie.append(point)
    lie_image = SpanMatrix.from_dicts(lie, len(even))
    exact = SpanMatrix.from_dicts(
        (d(DifferentialForm(n, k, {mono: 1})).coordinates(even) for mono in odd), len(even)
    )
    closed = lattice_intersection(lattice, saturate(exact))
    if hnf(lie_image).n_rows != closed.n_rows or not lattice_contains(closed, lie_image):
        logger_derham.error(f"L_2{list(m)} on Z^({n}|{k}) does not map onto the exact forms")
        return False
    doubled = SpanMatrix(closed.n_cols, tuple(tuple((c, 2 * v) for c, v in r) for r in closed.rows))
    if not lattice_contains(lie_image, doubled):
        logger_derham.error(f"twice the exact forms of degree {list(m)} escape the image of L_2")
        return False
    return lattice_quotient(lattice, lie_image) == engine.bar_b1_group(sig, m)


# ----------------------------------------------------------------------
def supercase_check(n: int, k: int, m: Sequence[int], engine=None) -> bool:
    """
    Compare ``B1bar[m]`` of ``A_{n,k}`` with the super De Rham complex.

    Requires ``k >= 1`` and every degree positive. Checks that the positive
    cohomology vanishes, that the free ranks agree with the forms quotient,
    that the torsion of ``B1bar`` is an ``F_2`` vector space and that
    :func:`super_lie_image_check` holds.
    """
    from lcs_torsion.engine import default_engine

    engine = engine or default_engine
    m = tuple(m)
    if k < 1 or any(v <= 0 for v in m):
        raise ValueError("supercase_check needs odd generators and positive degrees.")
    for r in range(1, sum(m) + 1):
        if not cohomology(n, k, r, m).is_trivial:
            logger_derham.error(f"H^{r}{list(m)} on Z^({n}|{k}) is not zero")
            return False
    group = engine.bar_b1_group(Signature(n, k), m)
    forms = bar_b1_via_forms(n, m, k)
    if group.free_rank != forms.free_rank or not group.is_elementary(2):
        return False
    return super_lie_image_check(n, k, m, engine)
