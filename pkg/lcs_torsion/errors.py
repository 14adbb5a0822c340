"""
==========
Exceptions
==========

Domain errors raised by the algebra, linear algebra and identity layers.
Each one also derives from the closest built-in exception, so callers that
only catch ``ValueError`` or ``ArithmeticError`` keep working.
"""


########################################################################
class LcsError(Exception):
    """Base class for every error raised by ``lcs_torsion``."""


########################################################################
class MixedParity(LcsError, ValueError):
    """A super-commutator argument mixes even and odd words."""


########################################################################
class NotASublattice(LcsError, ValueError):
    """A vector is not an exact combination of the rows of a lattice."""


########################################################################
class NoHalf(LcsError, ArithmeticError):
    """The coefficient ring does not contain 1/2."""


########################################################################
class NotInL2(LcsError, ValueError):
    """The tested element is not in the second lower-central-series term."""


########################################################################
class EvenIndexCount(LcsError, ValueError):
    """A shuffle count was requested for an even number of indices."""


########################################################################
class CacheCorrupted(LcsError):
    """A cache entry failed its checksum or could not be decoded."""
