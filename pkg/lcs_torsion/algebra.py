"""
=============================
Free Associative Superalgebra
=============================

Words, multidegrees and elements of the free algebra ``A_{n,k}(R)`` on
``n`` even generators ``x_1..x_n`` and ``k`` odd generators
``y_1..y_k``. Generators are indexed from zero, even ones first, so the
generator order used everywhere is ``x_1 < ... < x_n < y_1 < ... < y_k``.
Monomials of one multidegree all have the same length and are listed in
lexicographic order; this is the column order of every span matrix.

Classes
=======
    - *Signature*: Number of even and odd generators.
    - *Element*: Immutable sparse linear combination of words.
"""

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from lcs_torsion.errors import MixedParity
from lcs_torsion.rings import ZZ, ScalarRing

Word = Tuple[int, ...]
Multidegree = Tuple[int, ...]


########################################################################
@dataclass(frozen=True)
class Signature:
    """
    Shape of a free superalgebra.

    Parameters
    ----------
    n_even : int
        Number of even generators.
    n_odd : int, optional
        Number of odd generators.
    """

    n_even: int
    n_odd: int = 0

    # ----------------------------------------------------------------------
    def __post_init__(self):
        if not isinstance(self.n_even, int) or not isinstance(self.n_odd, int):
            raise TypeError("Signature counts must be integers.")
        if self.n_even < 0 or self.n_odd < 0:
            raise ValueError("Signature counts must be non-negative.")
        if self.n_even + self.n_odd < 1:
            raise ValueError("A signature needs at least one generator.")

    # ----------------------------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"n,k"`` (or ``"n"`` for a purely even algebra)."""
        parts = [p for p in str(text).replace(" ", "").split(",") if p]
        if not 1 <= len(parts) <= 2:
            raise ValueError(f"Malformed signature '{text}'.")
        values = [int(p) for p in parts]
        return cls(*values)

    # ----------------------------------------------------------------------
    @property
    def n_gens(self) -> int:
        return self.n_even + self.n_odd

    # ----------------------------------------------------------------------
    @property
    def is_super(self) -> bool:
        return self.n_odd > 0

    # ----------------------------------------------------------------------
    def is_odd(self, j: int) -> bool:
        return j >= self.n_even

    # ----------------------------------------------------------------------
    def label(self, j: int) -> str:
        if j < self.n_even:
            return f"x{j + 1}"
        return f"y{j - self.n_even + 1}"

    # ----------------------------------------------------------------------
    def restrict(self, support: Sequence[int]) -> "Signature":
        """Signature of the subalgebra on the generators listed in ``support``."""
        n_even = sum(1 for j in support if j < self.n_even)
        return Signature(n_even, len(support) - n_even)

    # ----------------------------------------------------------------------
    def as_list(self) -> List[int]:
        return [self.n_even, self.n_odd]

    # ----------------------------------------------------------------------
    def __str__(self) -> str:
        return f"{self.n_even},{self.n_odd}"


# ----------------------------------------------------------------------
def multidegree(sig: Signature, m: Iterable[int]) -> Multidegree:
    """
    Validate a multidegree against a signature.

    Raises
    ------
    ValueError
        If the length does not match or an entry is negative.
    """
    m = tuple(int(v) for v in m)
    if len(m) != sig.n_gens:
        raise ValueError(
            f"Multidegree {m} has {len(m)} entries, signature {sig} needs {sig.n_gens}."
        )
    if any(v < 0 for v in m):
        raise ValueError(f"Multidegree {m} has a negative entry.")
    return m


# ----------------------------------------------------------------------
def multinomial(m: Sequence[int]) -> int:
    """Number of words with letter counts ``m``."""
    total, result = 0, 1
    for v in m:
        total += v
        result *= math.comb(total, v)
    return result


# ----------------------------------------------------------------------
@lru_cache(maxsize=4096)
def monomials(m: Multidegree) -> Tuple[Word, ...]:
    """All words with letter counts ``m``, in lexicographic order."""
    letters = [j for j, v in enumerate(m) for _ in range(v)]
    if not letters:
        return ((),)
    return tuple(sorted(tuple(w) for w in multiset_permutations(letters)))


# ----------------------------------------------------------------------
@lru_cache(maxsize=4096)
def monomial_index(m: Multidegree) -> Mapping[Word, int]:
    """Column of each word of multidegree ``m``."""
    return MappingProxyType({w: i for i, w in enumerate(monomials(m))})


# ----------------------------------------------------------------------
def enumerate_monomials(sig: Signature, m: Iterable[int]) -> List[Word]:
    """
    Monomial basis of the graded slice ``A[m]``.

    The list has ``multinomial(m)`` words in lexicographic order, which for
    a fixed multidegree is the graded-lex order.
    """
    return list(monomials(multidegree(sig, m)))


# ----------------------------------------------------------------------
def word_degree(word: Word, n_gens: int) -> Multidegree:
    counts = [0] * n_gens
    for j in word:
        counts[j] += 1
    return tuple(counts)


# ----------------------------------------------------------------------
def parity(w: Word, sig: Signature) -> int:
    """Number of odd letters of ``w`` modulo two."""
    return sum(1 for j in w if j >= sig.n_even) % 2


# ----------------------------------------------------------------------
def degree_parity(m: Sequence[int], sig: Signature) -> int:
    """Parity shared by every word of multidegree ``m``."""
    return sum(m[sig.n_even:]) % 2


# ----------------------------------------------------------------------
def bracket_terms(
    word: Word, terms: Mapping[Word, int], sign: int, ring: ScalarRing = ZZ
) -> Dict[Word, int]:
    """
    Expand ``word*v - sign*v*word`` for ``v`` given as a word map.

    ``sign`` is the super sign ``(-1)^(p(word) p(v))``; this helper does not
    look at parities so the span builders can call it in tight loops.
    """
    out: Dict[Word, int] = {}
    for u, c in terms.items():
        left = word + u
        right = u + word
        out[left] = out.get(left, 0) + c
        out[right] = out.get(right, 0) - sign * c
    return {w: c for w, c in ((w, ring.normalize(c)) for w, c in out.items()) if c != 0}


########################################################################
class Element:
    """
    Element of ``A_{n,k}(R)``.

    A sparse map from words to ring scalars. Zero coefficients are never
    stored and the map is read-only after construction.

    Parameters
    ----------
    sig : Signature
        The ambient algebra.
    terms : Mapping[Word, scalar], optional
        Coefficients; they are coerced into ``ring``.
    ring : ScalarRing, optional
        Coefficient ring, the integers by default.

    Examples
    --------
    >>> sig = Signature(2)
    >>> x1, x2 = Element.generator(sig, 0), Element.generator(sig, 1)
    >>> print(x1 * x2 - x2 * x1)
    x1*x2 - x2*x1
    """

    __slots__ = ("sig", "ring", "_terms")

    def __init__(
        self,
        sig: Signature,
        terms: Optional[Mapping[Word, object]] = None,
        ring: ScalarRing = ZZ,
    ):
        self.sig = sig
        self.ring = ring
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(not 0 <= j < sig.n_gens for j in w):
                raise ValueError(f"Word {w} uses a letter outside signature {sig}.")
            c = ring.coerce(c)
            if c != 0:
                clean[w] = c
        self._terms = MappingProxyType(clean)

    # ----------------------------------------------------------------------
    @classmethod
    def _raw(cls, sig: Signature, terms: Dict[Word, object], ring: ScalarRing) -> "Element":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj.ring = ring
        obj._terms = MappingProxyType({w: c for w, c in terms.items() if c != 0})
        return obj

    # ----------------------------------------------------------------------
    @classmethod
    def zero(cls, sig: Signature, ring: ScalarRing = ZZ) -> "Element":
        return cls._raw(sig, {}, ring)

    # ----------------------------------------------------------------------
    @classmethod
    def one(cls, sig: Signature, ring: ScalarRing = ZZ) -> "Element":
        return cls._raw(sig, {(): ring.coerce(1)}, ring)

    # ----------------------------------------------------------------------
    @classmethod
    def generator(cls, sig: Signature, j: int, ring: ScalarRing = ZZ) -> "Element":
        if not 0 <= j < sig.n_gens:
            raise ValueError(f"Generator {j} is outside signature {sig}.")
        return cls._raw(sig, {(j,): ring.coerce(1)}, ring)

    # ----------------------------------------------------------------------
    @classmethod
    def monomial(
        cls, sig: Signature, word: Sequence[int], coeff: object = 1, ring: ScalarRing = ZZ
    ) -> "Element":
        return cls(sig, {tuple(word): coeff}, ring)

    # ----------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Word, object]:
        return self._terms

    # ----------------------------------------------------------------------
    def items(self) -> List[Tuple[Word, object]]:
        """Terms in graded-lex order of their words."""
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    # ----------------------------------------------------------------------
    def coefficient(self, word: Sequence[int]) -> object:
        return self._terms.get(tuple(word), self.ring.coerce(0))

    # ----------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    # ----------------------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._terms)

    # ----------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    # ----------------------------------------------------------------------
    def multidegrees(self) -> set:
        return {word_degree(w, self.sig.n_gens) for w in self._terms}

    # ----------------------------------------------------------------------
    @property
    def degree(self) -> Multidegree:
        """Multidegree of a homogeneous non-zero element."""
        degrees = self.multidegrees()
        if len(degrees) != 1:
            raise ValueError("Element is not homogeneous.")
        return degrees.pop()

    # ----------------------------------------------------------------------
    def parity(self) -> Optional[int]:
        """Common parity of the words, ``None`` when they disagree."""
        values = {parity(w, self.sig) for w in self._terms}
        if not values:
            return 0
        if len(values) > 1:
            return None
        return values.pop()

    # ----------------------------------------------------------------------
    def coordinates(self, m: Multidegree) -> Dict[int, object]:
        """Sparse coordinates in the monomial basis of ``A[m]``."""
        index = monomial_index(tuple(m))
        return {index[w]: c for w, c in self._terms.items()}

    # ----------------------------------------------------------------------
    def change_ring(self, ring: ScalarRing) -> "Element":
        return Element(self.sig, self._terms, ring)

    # ----------------------------------------------------------------------
    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"Cannot combine Element with {type(other).__name__}.")
        if other.sig != self.sig:
            raise ValueError(f"Signatures {self.sig} and {other.sig} differ.")
        if other.ring != self.ring:
            raise ValueError(f"Rings {self.ring} and {other.ring} differ.")

    # ----------------------------------------------------------------------
    def _combine(self, other: "Element", factor: int) -> "Element":
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = self.ring.normalize(out.get(w, 0) + factor * c)
        return Element._raw(self.sig, out, self.ring)

    # ----------------------------------------------------------------------
    def __add__(self, other: "Element") -> "Element":
        return self._combine(other, 1)

    # ----------------------------------------------------------------------
    def __sub__(self, other: "Element") -> "Element":
        return self._combine(other, -1)

    # ----------------------------------------------------------------------
    def __neg__(self) -> "Element":
        return self.scale(-1)

    # ----------------------------------------------------------------------
    def scale(self, c: object) -> "Element":
        c = self.ring.coerce(c)
        return Element._raw(
            self.sig,
            {w: self.ring.normalize(c * v) for w, v in self._terms.items()},
            self.ring,
        )

    # ----------------------------------------------------------------------
    def __mul__(self, other: object) -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    # ----------------------------------------------------------------------
    def __rmul__(self, other: object) -> "Element":
        return self.scale(other)

    # ----------------------------------------------------------------------
    def __pow__(self, k: int) -> "Element":
        if k < 0:
            raise ValueError("Negative powers are not defined.")
        result = Element.one(self.sig, self.ring)
        for _ in range(k):
            result = multiply(result, self)
        return result

    # ----------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.sig == other.sig
            and self.ring == other.ring
            and dict(self._terms) == dict(other._terms)
        )

    # ----------------------------------------------------------------------
    def __hash__(self) -> int:
        return hash((self.sig, self.ring, frozenset(self._terms.items())))

    # ----------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Element({self.sig}, {dict(self.items())!r}, ring={self.ring})"

    # ----------------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            name = "*".join(self.sig.label(j) for j in w) or "1"
            if c == 1:
                body = name
            elif c == -1:
                body = f"-{name}"
            else:
                body = f"{c}*{name}" if w else f"{c}"
            parts.append(body)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


# ----------------------------------------------------------------------
def multiply(a: Element, b: Element) -> Element:
    """Bilinear concatenation product."""
    a._check(b)
    ring = a.ring
    out: Dict[Word, object] = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            out[w] = out.get(w, 0) + c * d
    return Element._raw(a.sig, {w: ring.normalize(c) for w, c in out.items()}, ring)


# ----------------------------------------------------------------------
def commutator(a: Element, b: Element) -> Element:
    """Plain commutator ``ab - ba``."""
    return multiply(a, b) - multiply(b, a)


# ----------------------------------------------------------------------
def super_commutator(a: Element, b: Element) -> Element:
    """
    Super-commutator ``ab - (-1)^(|a||b|) ba``.

    Raises
    ------
    MixedParity
        If either argument mixes even and odd words.
    """
    pa, pb = a.parity(), b.parity()
    if pa is None or pb is None:
        raise MixedParity("Super-commutator arguments must be parity homogeneous.")
    product = multiply(b, a)
    if pa * pb:
        return multiply(a, b) + product
    return multiply(a, b) - product


# ----------------------------------------------------------------------
def substitute(e: Element, images: Sequence[Element]) -> Element:
    """
    Apply the algebra homomorphism sending generator ``j`` to ``images[j]``.

    All images must share one signature and ring; the result lives there.
    """
    if len(images) != e.sig.n_gens:
        raise ValueError(f"Expected {e.sig.n_gens} images, got {len(images)}.")
    target = images[0]
    result = Element.zero(target.sig, target.ring)
    for w, c in e.terms.items():
        term = Element.one(target.sig, target.ring)
        for j in w:
            term = multiply(term, images[j])
        result = result + term.scale(c)
    return result


# ----------------------------------------------------------------------
def random_element(
    sig: Signature,
    rng: random.Random,
    max_length: int = 3,
    n_terms: int = 3,
    ring: ScalarRing = ZZ,
    odd: Optional[int] = None,
) -> Element:
    """
    Random element with small integer coefficients.

    When ``odd`` is given every word has that parity, which makes the
    result usable as a super-commutator argument.
    """
    terms: Dict[Word, int] = {}
    attempts = 0
    while len(terms) < n_terms and attempts < 50 * n_terms:
        attempts += 1
        length = rng.randint(1, max_length)
        w = tuple(rng.randrange(sig.n_gens) for _ in range(length))
        if odd is not None and parity(w, sig) != odd:
            continue
        terms[w] = rng.choice([-2, -1, 1, 2, 3])
    return Element(sig, terms, ring)
