"""
=====
Words
=====

Combinatorics of words in the free algebra: cyclic words and their roots,
necklace counting, the first cyclic homology, signed shuffle counts and
the exterior products that generate them, and the cyclic derivatives of
noncommutative calculus.

Classes
=======
    - *CyclicWord*: A word up to rotation, with its non-power root.
    - *ExteriorElement*: Sparse element of an exterior algebra over ``Z``.
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import divisors, factorint

from lcs_torsion.algebra import Element, Multidegree, Signature, Word, monomials, multinomial, word_degree
from lcs_torsion.errors import EvenIndexCount
from lcs_torsion.linalg import AbelianGroupInvariants, SpanMatrix, integer_kernel, lattice_quotient

WordLike = Union["CyclicWord", Sequence[int]]


# ----------------------------------------------------------------------
def least_rotation(word: Sequence[int]) -> int:
    """
    Offset of the lexicographically least rotation (Booth's algorithm).

    Examples
    --------
    >>> least_rotation((1, 0, 1, 0))
    1
    """
    s = list(word) * 2
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


# ----------------------------------------------------------------------
def primitive_root(word: Sequence[int]) -> Tuple[Word, int]:
    """Split ``word`` as ``root^exponent`` with ``root`` not a proper power."""
    word = tuple(word)
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p], n // p
    return word, 1


########################################################################
@dataclass(frozen=True)
class CyclicWord:
    """
    A non-empty word up to rotation.

    ``word`` is the least rotation; ``word == root * exponent``.
    """

    word: Word
    root: Word
    exponent: int

    # ----------------------------------------------------------------------
    @classmethod
    def from_word(cls, word: Sequence[int]) -> "CyclicWord":
        word = tuple(word)
        if not word:
            raise ValueError("A cyclic word must not be empty.")
        k = least_rotation(word)
        canonical = word[k:] + word[:k]
        root, exponent = primitive_root(canonical)
        return cls(canonical, root, exponent)

    # ----------------------------------------------------------------------
    @property
    def is_non_power(self) -> bool:
        return self.exponent == 1

    # ----------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.word)

    # ----------------------------------------------------------------------
    def multidegree(self, n_gens: int) -> Multidegree:
        return word_degree(self.word, n_gens)

    # ----------------------------------------------------------------------
    def rotations(self) -> List[Word]:
        """All ``len(self)`` rotations, with multiplicity."""
        w = self.word
        return [w[k:] + w[:k] for k in range(len(w))]


# ----------------------------------------------------------------------
def _as_word(a: WordLike) -> Word:
    return a.word if isinstance(a, CyclicWord) else tuple(a)


# ----------------------------------------------------------------------
@lru_cache(maxsize=1024)
def mobius(n: int) -> int:
    factors = factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


# ----------------------------------------------------------------------
def witt_count(sig: Signature, m: Sequence[int]) -> int:
    """
    Number of non-power cyclic words of multidegree ``m``.

    ``(1/|m|) * sum over d | gcd(m) of mobius(d) * multinomial(m/d)``.

    Examples
    --------
    >>> witt_count(Signature(2), (2, 2))
    1
    """
    m = tuple(m)
    if len(m) != sig.n_gens:
        raise ValueError(f"Multidegree {m} does not match signature {sig}.")
    total = sum(m)
    if total < 1:
        raise ValueError("witt_count needs a non-empty multidegree.")
    g = math.gcd(*m)
    acc = sum(mobius(d) * multinomial([v // d for v in m]) for d in divisors(g))
    return acc // total


# ----------------------------------------------------------------------
def necklaces(m: Sequence[int], non_power: bool = False) -> List[CyclicWord]:
    """All cyclic words of multidegree ``m`` by direct enumeration."""
    seen: Dict[Word, CyclicWord] = {}
    for w in monomials(tuple(m)):
        if not w:
            continue
        c = CyclicWord.from_word(w)
        seen.setdefault(c.word, c)
    out = sorted(seen.values(), key=lambda c: c.word)
    if non_power:
        out = [c for c in out if c.is_non_power]
    return out


# ----------------------------------------------------------------------
def root_decompositions(m: Sequence[int]) -> Iterator[Tuple[int, Multidegree]]:
    """Pairs ``(e, m/e)`` for every ``e`` dividing ``gcd(m)``."""
    m = tuple(m)
    for e in divisors(math.gcd(*m)):
        yield int(e), tuple(v // e for v in m)


# ----------------------------------------------------------------------
def hc1_invariants(sig: Signature, m: Sequence[int]) -> AbelianGroupInvariants:
    """
    ``HC_1(A_n)[m]``: one ``Z/e`` for each non-power cyclic word ``a`` with
    ``a^e`` of multidegree ``m`` and ``e >= 2``.
    """
    if sig.is_super:
        raise ValueError("hc1_invariants is defined for purely even algebras.")
    m = tuple(m)
    if sum(m) < 2:
        return AbelianGroupInvariants()
    factors: List[int] = []
    for e, root in root_decompositions(m):
        if e >= 2:
            factors.extend([e] * witt_count(sig, root))
    return AbelianGroupInvariants.from_factors(factors)


# ----------------------------------------------------------------------
def _sub_multidegrees(m: Multidegree) -> Iterator[Multidegree]:
    for part in itertools.product(*(range(v + 1) for v in m)):
        if 0 < sum(part) < sum(m):
            yield part


# ----------------------------------------------------------------------
def hc1_bruteforce(sig: Signature, m: Sequence[int]) -> AbelianGroupInvariants:
    """
    ``HC_1(A_n)[m]`` from the cyclic complex.

    Computes the kernel of ``u (x) v -> uv - vu`` on the coinvariants of
    ``A (x) A`` under ``u (x) v = -v (x) u``, modulo the images
    ``ab (x) c + bc (x) a + ca (x) b``. Practical for ``|m| <= 5``.
    """
    m = tuple(m)
    if sig.is_super:
        raise ValueError("hc1_bruteforce is defined for purely even algebras.")

    def key(w):
        return (len(w), w)

    pairs: List[Tuple[Word, Word]] = []
    for part in _sub_multidegrees(m):
        rest = tuple(a - b for a, b in zip(m, part))
        for u in monomials(part):
            for v in monomials(rest):
                if key(u) <= key(v):
                    pairs.append((u, v))
    pairs.sort(key=lambda p: (key(p[0]), key(p[1])))
    index = {p: i for i, p in enumerate(pairs)}

    def pair_vector(u: Word, v: Word) -> Dict[int, int]:
        if key(u) <= key(v):
            return {index[(u, v)]: 1}
        return {index[(v, u)]: -1}

    words = monomials(m)
    position = {w: i for i, w in enumerate(words)}
    boundary = []
    for u, v in pairs:
        row: Dict[int, int] = {}
        row[position[u + v]] = row.get(position[u + v], 0) + 1
        row[position[v + u]] = row.get(position[v + u], 0) - 1
        boundary.append(row)
    cycles = integer_kernel(SpanMatrix.from_dicts(boundary, len(words)))

    relators: List[Dict[int, int]] = []
    for u, v in pairs:
        if u == v:
            relators.append({index[(u, u)]: 2})
    for w in words:
        for i in range(1, len(w) - 1):
            for j in range(i + 1, len(w)):
                a, b, c = w[:i], w[i:j], w[j:]
                row: Dict[int, int] = {}
                for x, y in ((a + b, c), (b + c, a), (c + a, b)):
                    for col, val in pair_vector(x, y).items():
                        row[col] = row.get(col, 0) + val
                relators.append(row)
    return lattice_quotient(cycles, SpanMatrix.from_dicts(relators, len(pairs)))


# ----------------------------------------------------------------------
def shuffle_count(w: WordLike, indices: Sequence[int]) -> int:
    """
    Signed count of the subwords of ``w`` that are permutations of ``indices``.

    Every choice of positions whose letters are exactly the given distinct
    letters contributes the sign of the permutation they spell. For an odd
    number of letters the count does not depend on the rotation of ``w``.

    Raises
    ------
    EvenIndexCount
        If an even number of indices is given.

    Examples
    --------
    >>> shuffle_count((0, 2, 1), (0, 1, 2))
    -1
    """
    indices = sorted(indices)
    if len(indices) % 2 == 0:
        raise EvenIndexCount(f"shuffle_count needs an odd number of indices, got {len(indices)}.")
    if len(set(indices)) != len(indices):
        raise ValueError("shuffle_count indices must be distinct.")
    slot = {letter: t for t, letter in enumerate(indices)}
    # signed count of subwords using exactly the letters of each mask
    counts: Dict[int, int] = {0: 1}
    for letter in _as_word(w):
        t = slot.get(letter)
        if t is None:
            continue
        bit = 1 << t
        above = ~((bit << 1) - 1)
        for mask, c in list(counts.items()):
            if mask & bit:
                continue
            sign = -1 if bin(mask & above).count("1") % 2 else 1
            counts[mask | bit] = counts.get(mask | bit, 0) + sign * c
    return counts.get((1 << len(indices)) - 1, 0)


# ----------------------------------------------------------------------
def _wedge_sign(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    if set(a) & set(b):
        return 0, ()
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


########################################################################
class ExteriorElement:
    """
    Element of the exterior algebra on ``y_0, y_1, ...`` over the integers.

    Keys are increasing index tuples.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[int, ...], int]] = None):
        self._terms = MappingProxyType(
            {tuple(k): int(c) for k, c in (terms or {}).items() if c}
        )

    # ----------------------------------------------------------------------
    @classmethod
    def one(cls) -> "ExteriorElement":
        return cls({(): 1})

    # ----------------------------------------------------------------------
    @classmethod
    def generator(cls, j: int, coeff: int = 1) -> "ExteriorElement":
        return cls({(j,): coeff})

    # ----------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Tuple[int, ...], int]:
        return self._terms

    # ----------------------------------------------------------------------
    def coefficient(self, indices: Sequence[int]) -> int:
        return self._terms.get(tuple(sorted(indices)), 0)

    # ----------------------------------------------------------------------
    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return ExteriorElement(out)

    # ----------------------------------------------------------------------
    def scale(self, c: int) -> "ExteriorElement":
        return ExteriorElement({k: c * v for k, v in self._terms.items()})

    # ----------------------------------------------------------------------
    def __mul__(self, other: "ExteriorElement") -> "ExteriorElement":
        out: Dict[Tuple[int, ...], int] = {}
        for a, c in self._terms.items():
            for b, e in other._terms.items():
                sign, key = _wedge_sign(a, b)
                if sign:
                    out[key] = out.get(key, 0) + sign * c * e
        return ExteriorElement(out)

    # ----------------------------------------------------------------------
    def __pow__(self, k: int) -> "ExteriorElement":
        result = ExteriorElement.one()
        for _ in range(k):
            result = result * self
        return result

    # ----------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    # ----------------------------------------------------------------------
    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # ----------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"ExteriorElement({dict(sorted(self._terms.items()))!r})"


# ----------------------------------------------------------------------
def y_product(a: WordLike, m: int = 1) -> ExteriorElement:
    """``((1 + y_{j_1}) ... (1 + y_{j_M}))^m`` for the letters ``j`` of ``a``."""
    factor = ExteriorElement.one()
    for j in _as_word(a):
        factor = factor * (ExteriorElement.one() + ExteriorElement.generator(j))
    return factor ** m


# ----------------------------------------------------------------------
def y_product_closed_form(a: WordLike, m: int) -> ExteriorElement:
    """
    Closed form of :func:`y_product`.

    ``(1 + m * sum_i m_i y_i) * prod_{r<s} (1 + m y_{j_r} y_{j_s})`` where
    ``m_i`` counts the letter ``i`` in ``a`` and ``r < s`` runs over the
    positions of ``a``.
    """
    if m < 1:
        raise ValueError("The exponent must be at least 1.")
    word = _as_word(a)
    linear: Dict[Tuple[int, ...], int] = {(): 1}
    for j in word:
        linear[(j,)] = linear.get((j,), 0) + m
    result = ExteriorElement(linear)
    for r in range(len(word)):
        for s in range(r + 1, len(word)):
            pair = ExteriorElement.generator(word[r]) * ExteriorElement.generator(word[s])
            result = result * (ExteriorElement.one() + pair.scale(m))
    return result


# ----------------------------------------------------------------------
def _default_sig(word: Word, i: int = 0) -> Signature:
    return Signature(max(max(word, default=0), i) + 1)


# ----------------------------------------------------------------------
def noncomm_partial(a: WordLike, i: int, sig: Optional[Signature] = None) -> Element:
    """
    Cyclic partial derivative ``d_i a``.

    The sum, over the positions ``k`` of the letter ``i`` in ``a``, of the
    rotation of ``a`` that starts right after ``k`` with that letter removed.

    Examples
    --------
    >>> str(noncomm_partial((0, 0), 0))
    '2*x1'
    """
    word = _as_word(a)
    sig = sig or _default_sig(word, i)
    if sig.is_super:
        raise ValueError("Cyclic derivatives are taken in purely even algebras.")
    terms: Dict[Word, int] = {}
    for k, letter in enumerate(word):
        if letter == i:
            rest = word[k + 1:] + word[:k]
            terms[rest] = terms.get(rest, 0) + 1
    return Element(sig, terms)


# ----------------------------------------------------------------------
def partial_of_power(a: WordLike, i: int, m: int, sig: Optional[Signature] = None) -> Element:
    """``d_i(a^m) / m``, which has integer coefficients."""
    if m < 1:
        raise ValueError("The exponent must be at least 1.")
    word = _as_word(a)
    sig = sig or _default_sig(word, i)
    power = word * m
    terms: Dict[Word, int] = {}
    for k, letter in enumerate(word):
        if letter == i:
            rest = power[k + 1:] + power[:k]
            terms[rest] = terms.get(rest, 0) + 1
    return Element(sig, terms)


# ----------------------------------------------------------------------
def rotation_sum(a: WordLike, sig: Optional[Signature] = None) -> Element:
    """Sum of all rotations of ``a``, with multiplicity."""
    word = _as_word(a)
    sig = sig or _default_sig(word)
    terms: Dict[Word, int] = {}
    for k in range(len(word)):
        r = word[k:] + word[:k]
        terms[r] = terms.get(r, 0) + 1
    return Element(sig, terms)


# ----------------------------------------------------------------------
def super_b1_torsion(sig: Signature, m: Sequence[int]) -> AbelianGroupInvariants:
    """
    Torsion of ``B_1(A_{n,k})[m]``.

    It is an ``F_2`` vector space with one generator for every even power
    ``a^e`` of an odd non-power cyclic word ``a`` of multidegree ``m/e``.
    """
    if not sig.is_super:
        raise ValueError("super_b1_torsion needs at least one odd generator.")
    m = tuple(m)
    if len(m) != sig.n_gens:
        raise ValueError(f"Multidegree {m} does not match signature {sig}.")
    if sum(m) == 0:
        return AbelianGroupInvariants()
    count = 0
    for e, root in root_decompositions(m):
        if e % 2 == 0 and sum(root[sig.n_even:]) % 2 == 1:
            count += witt_count(sig, root)
    return AbelianGroupInvariants.from_factors([2] * count)
