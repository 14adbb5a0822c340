"""
=============
Exact Linalg
=============

Sparse exact linear algebra over the scalar rings of
:mod:`lcs_torsion.rings`. Every lattice in the package is handled as the
row space of a :class:`SpanMatrix`; quotients of lattices are reported as
:class:`AbelianGroupInvariants`.

Row reduction is Euclidean: a single routine produces row echelon forms
over the integers, the dyadic rationals and fields, and the integer
Smith form is taken from the Hermite form of the input. Dense blocks are
handed to ``sympy``.

Classes
=======
    - *SpanMatrix*: Immutable sparse matrix, one tuple of ``(col, value)``
      pairs per row.
    - *AbelianGroupInvariants*: Free rank plus invariant factors.
    - *EchelonForm*: Incremental row echelon basis of a lattice.
"""

import heapq
import logging
import time
from dataclasses import dataclass
from math import gcd
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    TextIO,
    Tuple,
    Union,
)

from sympy import factorint
from sympy.polys.domains import ZZ as SYMPY_ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from lcs_torsion.errors import NotASublattice
from lcs_torsion.rings import GF, QQ, ZZ, ScalarRing
from lcs_torsion.utils.debug import styled_logger

logger_linalg = styled_logger(logging.getLogger("ExactLinalg"))

SparseRow = Tuple[Tuple[int, Any], ...]

# Fill ratio above which a Smith block is handed to the dense routine.
DENSE_FILL = 0.5
DENSE_MIN_ROWS = 8

# Word-size primes for the non-certified rank pre-pass.
RANK_PRIMES = (2147483647, 998244353, 1000000007)


########################################################################
@dataclass(frozen=True)
class SpanMatrix:
    """
    Sparse matrix whose rows span a lattice.

    Parameters
    ----------
    n_cols : int
        Size of the ambient basis.
    rows : tuple
        One tuple of ``(col, value)`` pairs per row, sorted by column,
        without zero values. Empty rows are allowed.
    """

    n_cols: int
    rows: Tuple[SparseRow, ...] = ()

    # ----------------------------------------------------------------------
    def __post_init__(self):
        for row in self.rows:
            for col, _ in row:
                if not 0 <= col < self.n_cols:
                    raise ValueError(
                        f"Column {col} is outside a matrix with {self.n_cols} columns."
                    )

    # ----------------------------------------------------------------------
    @classmethod
    def from_dicts(cls, rows: Iterable[Mapping[int, Any]], n_cols: int) -> "SpanMatrix":
        return cls(
            n_cols, tuple(tuple(sorted((c, v) for c, v in r.items() if v != 0)) for r in rows)
        )

    # ----------------------------------------------------------------------
    @classmethod
    def from_dense(
        cls, rows: Sequence[Sequence[Any]], n_cols: Optional[int] = None
    ) -> "SpanMatrix":
        """Build from nested lists; ``n_cols`` is needed only when there are no rows."""
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != n_cols:
                raise ValueError("All rows must have the same length.")
        return cls.from_dicts(({c: v for c, v in enumerate(r)} for r in rows), n_cols)

    # ----------------------------------------------------------------------
    @property
    def n_rows(self) -> int:
        return len(self.rows)

    # ----------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.rows)

    # ----------------------------------------------------------------------
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    # ----------------------------------------------------------------------
    def row_dicts(self) -> List[Dict[int, Any]]:
        return [dict(r) for r in self.rows]

    # ----------------------------------------------------------------------
    def to_dense(self) -> List[List[Any]]:
        dense = [[0] * self.n_cols for _ in self.rows]
        for i, row in enumerate(self.rows):
            for c, v in row:
                dense[i][c] = v
        return dense

    # ----------------------------------------------------------------------
    def transpose(self) -> "SpanMatrix":
        """Transpose; the result has ``n_rows`` columns and ``n_cols`` rows."""
        cols: List[List[Tuple[int, Any]]] = [[] for _ in range(self.n_cols)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                cols[c].append((i, v))
        return SpanMatrix(len(self.rows), tuple(tuple(c) for c in cols))

    # ----------------------------------------------------------------------
    def stack(self, other: "SpanMatrix") -> "SpanMatrix":
        if other.n_cols != self.n_cols:
            raise ValueError("Stacked matrices must have the same number of columns.")
        return SpanMatrix(self.n_cols, self.rows + other.rows)

    # ----------------------------------------------------------------------
    def change_ring(self, ring: ScalarRing) -> "SpanMatrix":
        return SpanMatrix.from_dicts(
            ({c: ring.coerce(v) for c, v in row} for row in self.rows), self.n_cols
        )


########################################################################
@dataclass(frozen=True)
class AbelianGroupInvariants:
    """
    A finitely generated abelian group ``Z^r + Z/d_1 + ... + Z/d_s``.

    The invariant factors satisfy ``d_1 | d_2 | ... | d_s`` and ``d_1 >= 2``.
    Use :meth:`from_factors` to build a group from arbitrary cyclic orders.

    Examples
    --------
    >>> AbelianGroupInvariants.from_factors([2, 3, 2])
    AbelianGroupInvariants(free_rank=0, torsion=(2, 6))
    >>> str(AbelianGroupInvariants.from_factors([2, 3, 2]))
    '(Z/2)^2 + Z/3'
    """

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    # ----------------------------------------------------------------------
    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("The free rank must be non-negative.")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"Invariant factor {d} must be at least 2.")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"Invariant factors {self.torsion} do not form a chain.")

    # ----------------------------------------------------------------------
    @classmethod
    def from_factors(cls, factors: Iterable[int], free_rank: int = 0) -> "AbelianGroupInvariants":
        """Group ``Z^free_rank`` plus the cyclic groups of the given orders."""
        chain = invariant_chain(abs(int(d)) for d in factors if d not in (0, 1, -1))
        return cls(free_rank, tuple(d for d in chain if d != 1))

    # ----------------------------------------------------------------------
    @classmethod
    def from_primary(cls, counts: Mapping[int, int], free_rank: int = 0) -> "AbelianGroupInvariants":
        """Build from ``{prime_power: multiplicity}``, e.g. ``{2: 5, 3: 2}``."""
        factors = []
        for q, k in counts.items():
            factors.extend([int(q)] * int(k))
        return cls.from_factors(factors, free_rank)

    # ----------------------------------------------------------------------
    @classmethod
    def trivial(cls) -> "AbelianGroupInvariants":
        return cls()

    # ----------------------------------------------------------------------
    @property
    def order(self) -> int:
        """Order of the torsion subgroup."""
        result = 1
        for d in self.torsion:
            result *= d
        return result

    # ----------------------------------------------------------------------
    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    # ----------------------------------------------------------------------
    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    # ----------------------------------------------------------------------
    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    # ----------------------------------------------------------------------
    def torsion_part(self) -> "AbelianGroupInvariants":
        return AbelianGroupInvariants(0, self.torsion)

    # ----------------------------------------------------------------------
    def primary_decomposition(self) -> Dict[int, List[int]]:
        """Prime powers of the torsion, grouped by prime, in ascending order."""
        out: Dict[int, List[int]] = {}
        for d in self.torsion:
            for p, e in factorint(d).items():
                out.setdefault(int(p), []).append(int(p) ** int(e))
        return {p: sorted(v) for p, v in sorted(out.items())}

    # ----------------------------------------------------------------------
    def primary_counts(self) -> Dict[int, int]:
        """Multiplicity of each cyclic prime-power summand."""
        counts: Dict[int, int] = {}
        for powers in self.primary_decomposition().values():
            for q in powers:
                counts[q] = counts.get(q, 0) + 1
        return dict(sorted(counts.items()))

    # ----------------------------------------------------------------------
    def primes(self) -> List[int]:
        return list(self.primary_decomposition())

    # ----------------------------------------------------------------------
    def p_rank(self, p: int) -> int:
        """Number of invariant factors divisible by ``p``."""
        return sum(1 for d in self.torsion if d % p == 0)

    # ----------------------------------------------------------------------
    def tensor_dim(self, p: int) -> int:
        """Dimension of the group tensored with the prime field ``F_p``."""
        return self.free_rank + self.p_rank(p)

    # ----------------------------------------------------------------------
    def tensor_cyclic(self, m: int) -> "AbelianGroupInvariants":
        """The group tensored with ``Z/m``, as an abelian group."""
        factors = [m] * self.free_rank + [gcd(d, m) for d in self.torsion]
        return AbelianGroupInvariants.from_factors(factors)

    # ----------------------------------------------------------------------
    def direct_sum(self, other: "AbelianGroupInvariants") -> "AbelianGroupInvariants":
        return AbelianGroupInvariants.from_factors(
            self.torsion + other.torsion, self.free_rank + other.free_rank
        )

    # ----------------------------------------------------------------------
    def localize_away_from_two(self) -> "AbelianGroupInvariants":
        """Tensor with ``Z[1/2]``: drop the 2-primary part."""
        factors = []
        for d in self.torsion:
            while d % 2 == 0:
                d //= 2
            factors.append(d)
        return AbelianGroupInvariants.from_factors(factors, self.free_rank)

    # ----------------------------------------------------------------------
    def is_elementary(self, p: int) -> bool:
        """Whether the torsion is an ``F_p`` vector space."""
        return all(d == p for d in self.torsion)

    # ----------------------------------------------------------------------
    def torsion_is_quotient_of(self, other: "AbelianGroupInvariants") -> bool:
        """
        Whether this torsion group is a quotient of the torsion of ``other``.

        For finite abelian p-groups this holds exactly when the partition of
        exponents fits inside the other partition, prime by prime.
        """
        mine = self.primary_decomposition()
        theirs = other.primary_decomposition()
        for p, powers in mine.items():
            big = sorted(theirs.get(p, []), reverse=True)
            small = sorted(powers, reverse=True)
            if len(small) > len(big):
                return False
            if any(a > b for a, b in zip(small, big)):
                return False
        return True

    # ----------------------------------------------------------------------
    def display(self) -> str:
        """Primary-decomposition form, e.g. ``Z^2 + (Z/2)^5 + (Z/3)^2``."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for q, k in self.primary_counts().items():
            parts.append(f"Z/{q}" if k == 1 else f"(Z/{q})^{k}")
        return " + ".join(parts) or "0"

    # ----------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return {"free_rank": self.free_rank, "factors": list(self.torsion)}

    # ----------------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AbelianGroupInvariants":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["factors"]))

    # ----------------------------------------------------------------------
    def __str__(self) -> str:
        return self.display()


# ----------------------------------------------------------------------
def invariant_chain(orders: Iterable[int]) -> List[int]:
    """
    Invariant factors of a direct sum of cyclic groups.

    The result has one entry per input order, padded with leading ones, so
    it can be used for diagonal Smith forms as well.
    """
    orders = list(orders)
    by_prime: Dict[int, List[int]] = {}
    for d in orders:
        if d == 0:
            raise ValueError("Cyclic orders must be non-zero.")
        for p, e in factorint(abs(d)).items():
            by_prime.setdefault(int(p), []).append(int(p) ** int(e))
    chain = [1] * len(orders)
    for p, powers in by_prime.items():
        powers.sort()
        for k, q in enumerate(reversed(powers)):
            chain[len(chain) - 1 - k] *= q
    return chain


# ----------------------------------------------------------------------
def _axpy(v: Mapping[int, Any], c: Any, w: Mapping[int, Any], ring: ScalarRing) -> Dict[int, Any]:
    """Return ``v + c*w``."""
    out = dict(v)
    _iaxpy(out, c, w, ring.normalize)
    return out


# ----------------------------------------------------------------------
def _iaxpy(
    v: Dict[int, Any],
    c: Any,
    w: Mapping[int, Any],
    normalize: Optional[Callable[[Any], Any]],
    fresh: Optional[List[int]] = None,
) -> None:
    """``v += c*w`` in place; columns that appear in ``v`` are appended to ``fresh``."""
    for k, x in w.items():
        y = v.get(k)
        if y is None:
            y = c * x
            if normalize is not None:
                y = normalize(y)
            if y:
                v[k] = y
                if fresh is not None:
                    fresh.append(k)
            continue
        y += c * x
        if normalize is not None:
            y = normalize(y)
        if y:
            v[k] = y
        else:
            del v[k]


# ----------------------------------------------------------------------
def _combine(
    a: Any, v: Mapping[int, Any], b: Any, w: Mapping[int, Any], ring: ScalarRing
) -> Dict[int, Any]:
    """Return ``a*v + b*w``."""
    out: Dict[int, Any] = {}
    for k, x in v.items():
        out[k] = a * x
    for k, x in w.items():
        out[k] = out.get(k, 0) + b * x
    normalize = ring.normalize
    return {k: y for k, y in ((k, normalize(y)) for k, y in out.items()) if y}


# ----------------------------------------------------------------------
def _scale_inplace(v: Dict[int, Any], c: Any, ring: ScalarRing) -> None:
    if c == 1:
        return
    for k in v:
        v[k] = ring.normalize(c * v[k])


########################################################################
class EchelonForm:
    """
    Incremental row echelon basis of a lattice over a Euclidean ring.

    Rows are kept in a dict keyed by their pivot column and stay reduced
    against each other: every entry of a row at another pivot column is
    the canonical remainder modulo that pivot, so over a field the basis
    is in reduced row echelon form and over the integers it is the
    Hermite form. A column index records which rows touch each column,
    which keeps back-reduction proportional to the fill.

    Inserting a row walks its columns in increasing order. When a pivot
    does not divide the incoming leading entry the two rows are replaced
    by a unimodular combination built from the extended gcd.

    Parameters
    ----------
    ring : ScalarRing, optional
        Coefficient ring, the integers by default.
    n_cols : int, optional
        Ambient dimension, used when exporting the basis.
    track : bool, optional
        Record, for every basis row, its combination of the inserted
        generators. This enables :meth:`solve` and :attr:`kernel`.
    """

    def __init__(self, ring: ScalarRing = ZZ, n_cols: Optional[int] = None, track: bool = False):
        self.ring = ring
        self.n_cols = n_cols
        self.track = track
        self._rows: Dict[int, Dict[int, Any]] = {}
        self._payloads: Dict[int, Dict[int, Any]] = {}
        self._touching: Dict[int, Set[int]] = {}
        self._generators = 0
        self.kernel: List[Dict[int, Any]] = []
        self._normalize = None if type(ring).normalize is ScalarRing.normalize else ring.normalize

    # ----------------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self._rows)

    # ----------------------------------------------------------------------
    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    # ----------------------------------------------------------------------
    def rows(self) -> List[Tuple[int, Dict[int, Any]]]:
        """Basis rows as ``(pivot, row)`` pairs in pivot order."""
        return [(c, dict(self._rows[c])) for c in sorted(self._rows)]

    # ----------------------------------------------------------------------
    def _coerce(self, row: Union[Mapping[int, Any], Iterable[Tuple[int, Any]]]) -> Dict[int, Any]:
        items = row.items() if isinstance(row, Mapping) else row
        coerce = self.ring.coerce
        out = {}
        for c, v in items:
            v = coerce(v)
            if v:
                out[c] = v
        return out

    # ----------------------------------------------------------------------
    def _index(self, pivot: int, row: Mapping[int, Any]) -> None:
        for k in row:
            if k != pivot:
                self._touching.setdefault(k, set()).add(pivot)

    # ----------------------------------------------------------------------
    def _unindex(self, pivot: int, row: Mapping[int, Any]) -> None:
        for k in row:
            if k != pivot:
                found = self._touching.get(k)
                if found is not None:
                    found.discard(pivot)

    # ----------------------------------------------------------------------
    def _tail(self, v: Dict[int, Any], pv: Optional[Dict[int, Any]], lead: int) -> None:
        """Reduce, in place, the entries of ``v`` at pivot columns after ``lead``."""
        rows, ring, normalize = self._rows, self.ring, self._normalize
        heap = [c for c in v if c > lead and c in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            x = v.get(c)
            if not x:
                continue
            piv = rows[c]
            r = ring.rem(x, piv[c])
            if r == x:
                continue
            q = ring.quo(x - r, piv[c])
            fresh: List[int] = []
            _iaxpy(v, -q, piv, normalize, fresh)
            if pv is not None:
                _iaxpy(pv, -q, self._payloads[c], normalize)
            for k in fresh:
                if k > c and k in rows:
                    heapq.heappush(heap, k)

    # ----------------------------------------------------------------------
    def _install(self, lead: int, v: Dict[int, Any], pv: Optional[Dict[int, Any]]) -> None:
        """Store a row with canonical pivot at ``lead`` and back-reduce the rows above it."""
        ring, normalize = self.ring, self._normalize
        self._tail(v, pv, lead)
        self._rows[lead] = v
        self._index(lead, v)
        if pv is not None:
            self._payloads[lead] = pv

        a = v[lead]
        for p in sorted(self._touching.get(lead, ())):
            if p >= lead:
                continue
            row = self._rows[p]
            x = row[lead]
            r = ring.rem(x, a)
            if r == x:
                continue
            q = ring.quo(x - r, a)
            self._unindex(p, row)
            _iaxpy(row, -q, v, normalize)
            if self.track:
                _iaxpy(self._payloads[p], -q, self._payloads[lead], normalize)
            self._tail(row, self._payloads.get(p) if self.track else None, lead)
            self._index(p, row)

    # ----------------------------------------------------------------------
    def insert(
        self,
        row: Union[Mapping[int, Any], Iterable[Tuple[int, Any]]],
        payload: Optional[Mapping[int, Any]] = None,
    ) -> bool:
        """
        Add a row to the lattice.

        Returns
        -------
        bool
            Whether the lattice grew.
        """
        ring, normalize, rows = self.ring, self._normalize, self._rows
        v = self._coerce(row)
        pv = None
        if self.track:
            pv = dict(payload) if payload is not None else {self._generators: ring.coerce(1)}
        self._generators += 1

        changed = False
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            b = v.get(c)
            if not b:
                continue
            piv = rows.get(c)
            if piv is None:
                u = ring.unit_normal(b)
                _scale_inplace(v, u, ring)
                if pv is not None:
                    _scale_inplace(pv, u, ring)
                self._install(c, v, pv)
                return True

            a = piv[c]
            if ring.divides(a, b):
                q = ring.quo(b, a)
                fresh: List[int] = []
                _iaxpy(v, -q, piv, normalize, fresh)
                if pv is not None:
                    _iaxpy(pv, -q, self._payloads[c], normalize)
                for k in fresh:
                    heapq.heappush(heap, k)
                continue

            g, s, t = ring.xgcd(a, b)
            ag, bg = ring.quo(a, g), ring.quo(b, g)
            new = _combine(s, piv, t, v, ring)
            v = _combine(ag, v, -bg, piv, ring)
            u = ring.unit_normal(new[c])
            _scale_inplace(new, u, ring)
            new_payload = None
            if pv is not None:
                ppv = self._payloads[c]
                new_payload = _combine(s, ppv, t, pv, ring)
                _scale_inplace(new_payload, u, ring)
                pv = _combine(ag, pv, -bg, ppv, ring)
            self._unindex(c, piv)
            del rows[c]
            self._install(c, new, new_payload)
            changed = True
            heap = list(v)
            heapq.heapify(heap)

        if pv is not None and pv:
            self.kernel.append(pv)
        return changed

    # ----------------------------------------------------------------------
    def extend(self, rows: Iterable[Any]) -> int:
        """Insert several rows and return how many of them grew the lattice."""
        return sum(1 for row in rows if self.insert(row))

    # ----------------------------------------------------------------------
    def coordinates(self, row: Union[Mapping[int, Any], Iterable[Tuple[int, Any]]]) -> Dict[int, Any]:
        """
        Coefficients of ``row`` on the basis rows, keyed by pivot column.

        Raises
        ------
        NotASublattice
            If ``row`` is not an exact combination of the basis rows.
        """
        ring, normalize, rows = self.ring, self._normalize, self._rows
        v = self._coerce(row)
        coords: Dict[int, Any] = {}
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            x = v.get(c)
            if not x:
                continue
            piv = rows.get(c)
            if piv is None or not ring.divides(piv[c], x):
                raise NotASublattice(f"Vector is not in the lattice (column {c}).")
            q = ring.quo(x, piv[c])
            coords[c] = q
            fresh: List[int] = []
            _iaxpy(v, -q, piv, normalize, fresh)
            for k in fresh:
                heapq.heappush(heap, k)
        return coords

    # ----------------------------------------------------------------------
    def contains(self, row: Union[Mapping[int, Any], Iterable[Tuple[int, Any]]]) -> bool:
        try:
            self.coordinates(row)
        except NotASublattice:
            return False
        return True

    # ----------------------------------------------------------------------
    def solve(self, row: Union[Mapping[int, Any], Iterable[Tuple[int, Any]]]) -> Dict[int, Any]:
        """
        Write ``row`` as a combination of the inserted generators.

        The keys of the result are generator positions in insertion order.
        """
        if not self.track:
            raise ValueError("solve() needs an EchelonForm built with track=True.")
        out: Dict[int, Any] = {}
        for c, q in self.coordinates(row).items():
            _iaxpy(out, q, self._payloads[c], self._normalize)
        return out

    # ----------------------------------------------------------------------
    def hermite(self) -> "EchelonForm":
        """
        Make every entry above a pivot its canonical remainder.

        Insertion already keeps the basis in this form; the pass only
        repairs rows whose remainders went stale.
        """
        ring, normalize = self.ring, self._normalize
        for c in sorted(self._rows):
            piv = self._rows[c]
            for p in sorted(self._touching.get(c, ())):
                if p >= c:
                    continue
                row = self._rows[p]
                x = row.get(c)
                if not x:
                    continue
                r = ring.rem(x, piv[c])
                if r == x:
                    continue
                q = ring.quo(x - r, piv[c])
                self._unindex(p, row)
                _iaxpy(row, -q, piv, normalize)
                if self.track:
                    _iaxpy(self._payloads[p], -q, self._payloads[c], normalize)
                self._index(p, row)
        return self

    # ----------------------------------------------------------------------
    def to_matrix(self) -> SpanMatrix:
        n_cols = self.n_cols
        if n_cols is None:
            n_cols = 1 + max((max(r) for r in self._rows.values()), default=-1)
        return SpanMatrix.from_dicts((r for _, r in self.rows()), n_cols)


# ----------------------------------------------------------------------
def echelon(M: SpanMatrix, ring: ScalarRing = ZZ, track: bool = False) -> EchelonForm:
    form = EchelonForm(ring, M.n_cols, track=track)
    for row in M.rows:
        form.insert(row)
    return form


# ----------------------------------------------------------------------
def hnf(M: SpanMatrix, ring: ScalarRing = ZZ) -> SpanMatrix:
    """
    Row Hermite normal form.

    Zero rows are dropped; rows are sorted by pivot column, pivots are
    canonical and entries above a pivot are reduced modulo it.

    Examples
    --------
    >>> hnf(SpanMatrix.from_dense([[2, 4], [6, 8]])).to_dense()
    [[2, 0], [0, 4]]
    """
    return echelon(M, ring).hermite().to_matrix()


# ----------------------------------------------------------------------
def _least_entry(rows: List[Dict[int, int]]) -> Tuple[int, int]:
    best = None
    for i, row in enumerate(rows):
        for c, v in row.items():
            key = (abs(v), i, c)
            if best is None or key < best:
                best = key
    return best[1], best[2]


# ----------------------------------------------------------------------
def _sparse_invariants(block: List[Dict[int, int]]) -> List[int]:
    """Diagonalise an integer block by least-entry pivoting."""
    rows = [dict(r) for r in block if r]
    out: List[int] = []
    while rows:
        rows = [r for r in rows if r]
        if not rows:
            break
        i, c = _least_entry(rows)
        pivot = rows[i]
        p = pivot[c]

        dirty = False
        for j, row in enumerate(rows):
            if j != i and c in row:
                rows[j] = row = _axpy(row, -(row[c] // p), pivot, ZZ)
                if c in row:
                    dirty = True
        if dirty:
            continue

        # Column c is now zero outside row i, so column operations only touch row i.
        rest = {k: v % p for k, v in pivot.items() if k != c and v % p}
        if rest:
            rest[c] = p
            rows[i] = rest
            continue

        bad = next(
            (j for j, row in enumerate(rows) if j != i and any(v % p for v in row.values())),
            None,
        )
        if bad is not None:
            merged = {k: v % p for k, v in rows[bad].items() if v % p}
            merged[c] = p
            rows[i] = merged
            continue

        out.append(abs(p))
        rows.pop(i)
    return out


# ----------------------------------------------------------------------
def _dense_invariants(block: List[Dict[int, int]]) -> List[int]:
    cols = sorted({c for row in block for c in row})
    index = {c: k for k, c in enumerate(cols)}
    dense = [[SYMPY_ZZ(0)] * len(cols) for _ in block]
    for i, row in enumerate(block):
        for c, v in row.items():
            dense[i][index[c]] = SYMPY_ZZ(v)
    dm = DomainMatrix(dense, (len(block), len(cols)), SYMPY_ZZ)
    return [abs(int(d)) for d in invariant_factors(dm) if d != 0]


# ----------------------------------------------------------------------
def snf(M: SpanMatrix) -> Tuple[int, ...]:
    """
    Non-zero invariant factors of an integer matrix, unit factors included.

    The Hermite form splits off one unit factor per unit pivot. The rest
    is diagonalised sparsely, or densely through ``sympy`` when its fill
    exceeds :data:`DENSE_FILL`.

    Examples
    --------
    >>> snf(SpanMatrix.from_dense([[6, 0], [0, 4]]))
    (2, 12)
    """
    started = time.perf_counter()
    form = echelon(M, ZZ).hermite()
    units = 0
    block = []
    for c, row in form.rows():
        if row[c] == 1:
            units += 1
        else:
            block.append(row)

    factors: List[int] = []
    if block:
        cols = {c for row in block for c in row}
        fill = sum(len(r) for r in block) / (len(block) * len(cols))
        if len(block) >= DENSE_MIN_ROWS and fill > DENSE_FILL:
            logger_linalg.debug(f"dense Smith block {len(block)}x{len(cols)} (fill {fill:.2f})")
            factors = _dense_invariants(block)
        else:
            factors = _sparse_invariants(block)

    chain = invariant_chain(factors) if factors else []
    logger_linalg.debug(
        f"snf: rank {units + len(block)}, {units} unit pivots, "
        f"{time.perf_counter() - started:.3f}s"
    )
    return tuple([1] * units + chain)


# ----------------------------------------------------------------------
def lattice_quotient(
    A: SpanMatrix, B: SpanMatrix, ring: ScalarRing = ZZ
) -> AbelianGroupInvariants:
    """
    Structure of ``span(A) / span(B)``.

    Parameters
    ----------
    A, B : SpanMatrix
        Spanning rows; ``B`` must lie in the lattice of ``A``.
    ring : ScalarRing, optional
        Over a field only the dimension is meaningful and the result is
        free. Over ``Z[1/2]`` the 2-primary torsion is invisible.

    Raises
    ------
    NotASublattice
        If a row of ``B`` is not a combination of the rows of ``A``.
    """
    if A.n_cols != B.n_cols:
        raise ValueError("Quotient of lattices in different ambient spaces.")
    big = echelon(A, ring)
    position = {c: k for k, c in enumerate(big.pivots)}
    coords = []
    for row in B.rows:
        coords.append({position[c]: q for c, q in big.coordinates(row).items()})
    C = SpanMatrix.from_dicts(coords, big.rank)

    if ring.kind == "field":
        return AbelianGroupInvariants(big.rank - echelon(C, ring).rank)

    if ring.kind == "dyadic":
        scaled = []
        for row in coords:
            if not row:
                continue
            k = max(q.denominator for q in row.values())
            scaled.append({c: int(q * k) for c, q in row.items()})
        factors = snf(SpanMatrix.from_dicts(scaled, big.rank))
        group = AbelianGroupInvariants.from_factors(factors, big.rank - len(factors))
        return group.localize_away_from_two()

    factors = snf(C)
    return AbelianGroupInvariants.from_factors(factors, big.rank - len(factors))


# ----------------------------------------------------------------------
def lattice_contains(A: SpanMatrix, B: SpanMatrix, ring: ScalarRing = ZZ) -> bool:
    """Whether every row of ``B`` lies in the lattice of ``A``."""
    form = echelon(A, ring)
    return all(form.contains(row) for row in B.rows)


# ----------------------------------------------------------------------
def lattice_equal(A: SpanMatrix, B: SpanMatrix, ring: ScalarRing = ZZ) -> bool:
    return lattice_contains(A, B, ring) and lattice_contains(B, A, ring)


# ----------------------------------------------------------------------
def rank_mod_p(M: SpanMatrix, p: int) -> int:
    """Rank of ``M`` reduced modulo the prime ``p``."""
    return echelon(M, GF(p)).rank


# ----------------------------------------------------------------------
def rational_rank(M: SpanMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination when ``M`` is integral."""
    integral = all(isinstance(v, int) for row in M.rows for _, v in row)
    return echelon(M, ZZ if integral else QQ).rank


# ----------------------------------------------------------------------
def modular_rank_bound(M: SpanMatrix, primes: Sequence[int] = RANK_PRIMES) -> int:
    """
    Largest rank of ``M`` modulo a few large primes.

    This is a lower bound for the rational rank and equals it unless every
    prime divides the relevant minors. It is not a certificate.
    """
    return max(rank_mod_p(M, p) for p in primes)


# ----------------------------------------------------------------------
def integer_kernel(M: SpanMatrix, ring: ScalarRing = ZZ) -> SpanMatrix:
    """
    Basis of the left kernel ``{y : y M = 0}``.

    The row operations of the echelon form are unimodular, so the
    combinations that reduce an input row to zero form a basis.
    """
    form = echelon(M, ring, track=True)
    return SpanMatrix.from_dicts(form.kernel, M.n_rows)


# ----------------------------------------------------------------------
def saturate(A: SpanMatrix) -> SpanMatrix:
    """
    Saturation of the row lattice of ``A`` in ``Z^n``, in Hermite form.

    Examples
    --------
    >>> saturate(SpanMatrix.from_dense([[2, 4]])).to_dense()
    [[1, 2]]
    """
    right_kernel = integer_kernel(A.transpose())
    return hnf(integer_kernel(right_kernel.transpose()))


# ----------------------------------------------------------------------
def lattice_intersection(A: SpanMatrix, B: SpanMatrix) -> SpanMatrix:
    """
    Hermite basis of the intersection of two row lattices of ``Z^n``.

    Every relation ``y A = z B`` is a left kernel vector of ``A`` stacked
    on ``B``; its ``A`` half gives a point of the intersection.

    Examples
    --------
    >>> A = SpanMatrix.from_dense([[2, 0], [0, 1]])
    >>> B = SpanMatrix.from_dense([[1, 1], [0, 3]])
    >>> lattice_intersection(A, B).to_dense()
    [[2, 2], [0, 3]]
    """
    if A.n_cols != B.n_cols:
        raise ValueError("Intersected lattices must live in the same space.")
    upper = A.row_dicts()
    points = []
    for relation in integer_kernel(A.stack(B)).rows:
        point: Dict[int, int] = {}
        for i, c in relation:
            if i >= len(upper):
                continue
            for col, v in upper[i].items():
                point[col] = point.get(col, 0) + c * v
        points.append(point)
    return hnf(SpanMatrix.from_dicts(points, A.n_cols))


# ----------------------------------------------------------------------
def dump_matrix_market(M: SpanMatrix, stream: TextIO, comment: str = "") -> None:
    """Write ``M`` in MatrixMarket coordinate format (1-based indices)."""
    stream.write("%%MatrixMarket matrix coordinate integer general\n")
    if comment:
        for line in comment.splitlines():
            stream.write(f"% {line}\n")
    stream.write(f"{M.n_rows} {M.n_cols} {M.nnz()}\n")
    for i, row in enumerate(M.rows):
        for c, v in row:
            stream.write(f"{i + 1} {c + 1} {v}\n")


# ----------------------------------------------------------------------
def load_matrix_market(stream: TextIO) -> SpanMatrix:
    """Read a matrix written by :func:`dump_matrix_market`."""
    header = stream.readline()
    if not header.startswith("%%MatrixMarket matrix coordinate"):
        raise ValueError("Not a MatrixMarket coordinate file.")
    line = stream.readline()
    while line.startswith("%"):
        line = stream.readline()
    n_rows, n_cols, nnz = (int(t) for t in line.split())
    rows: List[Dict[int, int]] = [{} for _ in range(n_rows)]
    for _ in range(nnz):
        i, j, v = stream.readline().split()
        rows[int(i) - 1][int(j) - 1] = int(v)
    return SpanMatrix.from_dicts(rows, n_cols)
