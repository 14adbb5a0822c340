"""
============
Scalar Rings
============

Coefficient rings for the free algebras, the echelon forms and the
differential forms: the integers, the rationals, prime fields and the
dyadic rationals. Every ring exposes the Euclidean primitives used by
:mod:`lcs_torsion.linalg`, so that a single row-reduction routine serves
all of them.

Classes
=======
    - *ScalarRing*: Common interface of the coefficient rings.
    - *IntegerRing*: Arbitrary-precision integers.
    - *RationalField*: Rationals, stored as :class:`fractions.Fraction`.
    - *PrimeField*: Residues modulo a prime, stored in ``[0, p)``.
    - *DyadicRing*: Rationals whose denominator is a power of two.
"""

import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, Tuple

from sympy import isprime


# ----------------------------------------------------------------------
def int_xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid over the integers.

    Returns
    -------
    tuple
        ``(g, s, t)`` with ``g = s*a + t*b`` and ``g >= 0``.
    """
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


########################################################################
class ScalarRing:
    """
    Common interface of the coefficient rings.

    Subclasses provide exact arithmetic through native Python numbers
    plus the Euclidean primitives ``divides``, ``quo``, ``xgcd``,
    ``unit_normal`` and ``rem``. Pivots of an echelon form are always
    scaled by ``unit_normal`` so that Hermite forms are canonical.
    """

    descriptor = ""
    kind = ""
    is_field = False
    has_half = False
    characteristic = 0

    # ----------------------------------------------------------------------
    def __call__(self, value: Any) -> Any:
        return self.coerce(value)

    # ----------------------------------------------------------------------
    def coerce(self, value: Any) -> Any:
        """Convert a Python number into a ring element."""
        raise NotImplementedError

    # ----------------------------------------------------------------------
    def normalize(self, a: Any) -> Any:
        """Canonical representative of an already coerced value."""
        return a

    # ----------------------------------------------------------------------
    def divides(self, a: Any, b: Any) -> bool:
        """Return whether ``a`` divides ``b``; ``a`` is non-zero."""
        raise NotImplementedError

    # ----------------------------------------------------------------------
    def quo(self, b: Any, a: Any) -> Any:
        """Exact quotient ``b / a``, assuming ``a`` divides ``b``."""
        raise NotImplementedError

    # ----------------------------------------------------------------------
    def xgcd(self, a: Any, b: Any) -> Tuple[Any, Any, Any]:
        """Return ``(g, s, t)`` with ``g = s*a + t*b`` a gcd of ``a`` and ``b``."""
        raise NotImplementedError

    # ----------------------------------------------------------------------
    def unit_normal(self, a: Any) -> Any:
        """Unit ``u`` such that ``u*a`` is the canonical associate of ``a``."""
        raise NotImplementedError

    # ----------------------------------------------------------------------
    def rem(self, b: Any, a: Any) -> Any:
        """Canonical remainder of ``b`` modulo a canonical non-zero ``a``."""
        raise NotImplementedError

    # ----------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor!r})"

    # ----------------------------------------------------------------------
    def __str__(self) -> str:
        return self.descriptor

    # ----------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarRing) and other.descriptor == self.descriptor

    # ----------------------------------------------------------------------
    def __hash__(self) -> int:
        return hash(("ScalarRing", self.descriptor))

    # ----------------------------------------------------------------------
    def __reduce__(self):
        return (parse_ring, (self.descriptor,))


########################################################################
class IntegerRing(ScalarRing):
    """The integers."""

    descriptor = "z"
    kind = "integer"

    # ----------------------------------------------------------------------
    def coerce(self, value: Any) -> int:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer.")
            return value.numerator
        return int(value)

    # ----------------------------------------------------------------------
    def divides(self, a: int, b: int) -> bool:
        return b % a == 0

    # ----------------------------------------------------------------------
    def quo(self, b: int, a: int) -> int:
        return b // a

    # ----------------------------------------------------------------------
    def xgcd(self, a: int, b: int) -> Tuple[int, int, int]:
        return int_xgcd(a, b)

    # ----------------------------------------------------------------------
    def unit_normal(self, a: int) -> int:
        return -1 if a < 0 else 1

    # ----------------------------------------------------------------------
    def rem(self, b: int, a: int) -> int:
        return b % a


########################################################################
class RationalField(ScalarRing):
    """The rationals."""

    descriptor = "q"
    kind = "field"
    is_field = True
    has_half = True

    # ----------------------------------------------------------------------
    def coerce(self, value: Any) -> Fraction:
        return Fraction(value)

    # ----------------------------------------------------------------------
    def divides(self, a: Fraction, b: Fraction) -> bool:
        return a != 0

    # ----------------------------------------------------------------------
    def quo(self, b: Fraction, a: Fraction) -> Fraction:
        return Fraction(b) / a

    # ----------------------------------------------------------------------
    def xgcd(self, a: Fraction, b: Fraction) -> Tuple[Fraction, Fraction, Fraction]:
        if a != 0:
            return Fraction(1), 1 / Fraction(a), Fraction(0)
        return Fraction(1), Fraction(0), 1 / Fraction(b)

    # ----------------------------------------------------------------------
    def unit_normal(self, a: Fraction) -> Fraction:
        return 1 / Fraction(a)

    # ----------------------------------------------------------------------
    def rem(self, b: Fraction, a: Fraction) -> Fraction:
        return Fraction(0)


########################################################################
class PrimeField(ScalarRing):
    """
    Residues modulo a prime ``p``.

    Parameters
    ----------
    p : int
        The characteristic; must be prime.
    """

    kind = "field"
    is_field = True

    # ----------------------------------------------------------------------
    def __init__(self, p: int):
        if not isprime(p):
            raise ValueError(f"The characteristic {p} is not a prime.")
        self.p = p
        self.characteristic = p
        self.has_half = p != 2
        self.descriptor = f"f{p}"

    # ----------------------------------------------------------------------
    def coerce(self, value: Any) -> int:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    # ----------------------------------------------------------------------
    def normalize(self, a: int) -> int:
        return a % self.p

    # ----------------------------------------------------------------------
    def divides(self, a: int, b: int) -> bool:
        return a % self.p != 0

    # ----------------------------------------------------------------------
    def quo(self, b: int, a: int) -> int:
        return b * pow(a, -1, self.p) % self.p

    # ----------------------------------------------------------------------
    def xgcd(self, a: int, b: int) -> Tuple[int, int, int]:
        if a % self.p:
            return 1, pow(a, -1, self.p), 0
        return 1, 0, pow(b, -1, self.p)

    # ----------------------------------------------------------------------
    def unit_normal(self, a: int) -> int:
        return pow(a, -1, self.p)

    # ----------------------------------------------------------------------
    def rem(self, b: int, a: int) -> int:
        return 0


########################################################################
class DyadicRing(ScalarRing):
    """
    The ring ``Z[1/2]``.

    Elements are fractions whose reduced denominator is a power of two.
    The units are ``±2^k``, so a non-zero element is determined up to a
    unit by its odd part, which is what divisibility looks at.
    """

    descriptor = "z2"
    kind = "dyadic"
    has_half = True

    # ----------------------------------------------------------------------
    def coerce(self, value: Any) -> Fraction:
        value = Fraction(value)
        d = value.denominator
        if d & (d - 1):
            raise ValueError(f"{value} is not a dyadic rational.")
        return value

    # ----------------------------------------------------------------------
    @staticmethod
    def split(a: Fraction) -> Tuple[int, int]:
        """Write a non-zero ``a`` as ``odd * 2**e`` and return ``(odd, e)``."""
        n = a.numerator
        e = -(a.denominator.bit_length() - 1)
        while n % 2 == 0:
            n //= 2
            e += 1
        return n, e

    # ----------------------------------------------------------------------
    def divides(self, a: Fraction, b: Fraction) -> bool:
        if b == 0:
            return True
        return self.split(b)[0] % self.split(a)[0] == 0

    # ----------------------------------------------------------------------
    def quo(self, b: Fraction, a: Fraction) -> Fraction:
        return Fraction(b) / a

    # ----------------------------------------------------------------------
    def xgcd(self, a: Fraction, b: Fraction) -> Tuple[Fraction, Fraction, Fraction]:
        if a == 0:
            u = self.unit_normal(b)
            return b * u, Fraction(0), u
        if b == 0:
            u = self.unit_normal(a)
            return a * u, u, Fraction(0)
        oa, ea = self.split(a)
        ob, eb = self.split(b)
        g, s, t = int_xgcd(oa, ob)
        return Fraction(g), s * Fraction(2) ** (-ea), t * Fraction(2) ** (-eb)

    # ----------------------------------------------------------------------
    def unit_normal(self, a: Fraction) -> Fraction:
        odd, e = self.split(Fraction(a))
        sign = -1 if odd < 0 else 1
        return sign * Fraction(2) ** (-e)

    # ----------------------------------------------------------------------
    def rem(self, b: Fraction, a: Fraction) -> Fraction:
        modulus = int(a)
        if modulus == 1 or b == 0:
            return Fraction(0)
        k = b.denominator.bit_length() - 1
        return Fraction(b.numerator * pow(2, -k, modulus) % modulus)


ZZ = IntegerRing()
QQ = RationalField()
ZZ_HALF = DyadicRing()


# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Return the prime field with ``p`` elements."""
    return PrimeField(p)


# ----------------------------------------------------------------------
def parse_ring(descriptor: str) -> ScalarRing:
    """
    Build a ring from its command-line descriptor.

    Parameters
    ----------
    descriptor : str
        ``"z"`` for the integers, ``"q"`` for the rationals, ``"z2"`` (or
        ``"z[1/2]"``) for the dyadic rationals and ``"f<p>"`` for the prime
        field with ``p`` elements.

    Raises
    ------
    ValueError
        If the descriptor is not recognised or ``p`` is not prime.
    """
    if isinstance(descriptor, ScalarRing):
        return descriptor
    text = str(descriptor).strip().lower()
    if text in ("z", "zz"):
        return ZZ
    if text in ("q", "qq"):
        return QQ
    if text in ("z2", "z[1/2]", "zhalf"):
        return ZZ_HALF
    match = re.fullmatch(r"(?:f|gf)(\d+)", text)
    if match:
        return GF(int(match.group(1)))
    raise ValueError(f"Unknown ring descriptor '{descriptor}'.")
