"""
=======
Reports
=======

Batch computation of cells, the golden tables and report rendering.

A *cell* is one group or dimension: ``B_l[m]``, ``B1bar[m]``, ``N_l[m]`` or
a De Rham cohomology group ``H^l[m]``, for a signature and a coefficient
ring. Cells are read from the cache when possible, the rest go to the
worker pool, and the results are always sorted by cell key so a report
does not depend on how it was computed.

Classes
=======
    - *Cell*: Key of one computed value.
    - *CellResult*: A computed group or dimension with its key.
    - *DegreeRange*: A set of multidegrees described by caps and orderings.
    - *JobSpec*: One batch request.
    - *TableSpec*: A golden table, its degree range and its cells.
    - *TableOutcome*: A reproduced table and its differences with the golden file.
"""

import asyncio
import csv
import io
import itertools
import json
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from lcs_torsion import ENGINE_VERSION
from lcs_torsion.algebra import Signature
from lcs_torsion.derham import cohomology
from lcs_torsion.linalg import AbelianGroupInvariants
from lcs_torsion.rings import parse_ring
from lcs_torsion.utils.auto import compute_cells
from lcs_torsion.utils.debug import styled_logger
from lcs_torsion.utils.persistent_storage import CellCache, cell_key

logger_reports = styled_logger(logging.getLogger("LcsReports"))

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")
CELL_KINDS = ("bi", "barb1", "nquot", "derham")
FORMATS = ("json", "csv", "markdown")

TABLES = {
    "1": "a2.json",
    "2": "a3.json",
    "3": "a4.json",
    "4": "a11.json",
    "5": "a02.json",
    "6": "a21.json",
    "7": "a12.json",
    "8": "a03.json",
    "d2": "discrepancy_f2.json",
    "d3": "discrepancy_f3.json",
}


########################################################################
class Cell(NamedTuple):
    """Key of one computed value; ``sig`` is written ``"n,k"``."""

    kind: str
    sig: str
    ring: str
    l: int
    deg: Tuple[int, ...]

    # ----------------------------------------------------------------------
    @property
    def sort_key(self) -> tuple:
        return (self.kind, self.sig, self.ring, sum(self.deg), self.deg, self.l)

    # ----------------------------------------------------------------------
    def cache_key(self) -> str:
        return cell_key(self.kind, self.sig, self.ring, self.l, self.deg)

    # ----------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "sig": self.sig,
            "ring": self.ring,
            "l": self.l,
            "deg": list(self.deg),
        }


########################################################################
@dataclass(frozen=True)
class CellResult:
    """
    A computed cell.

    Exactly one of ``group`` (integer and ``Z[1/2]`` coefficients) and
    ``dim`` (fields) is set.
    """

    cell: Cell
    group: Optional[AbelianGroupInvariants] = None
    dim: Optional[int] = None
    ms: Optional[float] = None
    version: str = ENGINE_VERSION

    # ----------------------------------------------------------------------
    @property
    def sort_key(self) -> tuple:
        return self.cell.sort_key

    # ----------------------------------------------------------------------
    def payload(self) -> Dict[str, Any]:
        if self.group is not None:
            return {"group": self.group.to_dict()}
        return {"dim": self.dim}

    # ----------------------------------------------------------------------
    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        out = {"cell": self.cell.to_dict(), "version": self.version}
        out.update(self.payload())
        out["display"] = self.display()
        out["ms"] = round(self.ms, 3) if timings and self.ms is not None else None
        return out

    # ----------------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CellResult":
        c = data["cell"]
        cell = Cell(c["kind"], c["sig"], c["ring"], int(c["l"]), tuple(c["deg"]))
        group = AbelianGroupInvariants.from_dict(data["group"]) if "group" in data else None
        return cls(cell, group, data.get("dim"), data.get("ms"), data.get("version", ENGINE_VERSION))

    # ----------------------------------------------------------------------
    def display(self) -> str:
        return self.group.display() if self.group is not None else str(self.dim)


# ----------------------------------------------------------------------
def evaluate(cell: Cell, engine=None) -> CellResult:
    """Compute one cell with the shared engine of the current process."""
    if engine is None:
        from lcs_torsion.engine import default_engine

        engine = default_engine
    if cell.kind not in CELL_KINDS:
        raise ValueError(f"Unknown cell kind '{cell.kind}'.")
    sig = Signature.parse(cell.sig)
    ring = parse_ring(cell.ring)
    dyadic = ring.kind == "dyadic"
    started = time.perf_counter()
    group, dim = None, None

    if cell.kind == "derham":
        if ring.is_field or dyadic:
            raise ValueError("De Rham cells are computed over the integers.")
        group = cohomology(sig.n_even, sig.n_odd, cell.l, cell.deg)
    elif cell.kind == "bi":
        if ring.is_field:
            dim = engine.bi_dim(sig, ring, cell.l, cell.deg)
        else:
            group = engine.bi_group(sig, cell.l, cell.deg, invert_two=dyadic)
    elif cell.kind == "barb1":
        if ring.is_field:
            dim = engine.bar_b1_dim(sig, ring, cell.deg)
        else:
            group = engine.bar_b1_group(sig, cell.deg)
            group = group.localize_away_from_two() if dyadic else group
    else:
        if ring.is_field:
            raise ValueError("Ideal quotients are computed over the integers.")
        group = engine.n_quotient(sig, cell.l, cell.deg)
        group = group.localize_away_from_two() if dyadic else group

    ms = 1000 * (time.perf_counter() - started)
    logger_reports.info(f"{cell.kind} sig={cell.sig} ring={cell.ring} l={cell.l} m={list(cell.deg)}: "
                        f"{group.display() if group is not None else dim} ({ms:.0f} ms)")
    return CellResult(cell, group, dim, ms)


# ----------------------------------------------------------------------
def collect(cells: Iterable[Cell], workers: int = 1, cache: Optional[CellCache] = None) -> List[CellResult]:
    """Results for ``cells``, from the cache when present, sorted by cell key."""
    cells = sorted(set(cells), key=lambda c: c.sort_key)
    results: List[CellResult] = []
    missing: List[Cell] = []
    for cell in cells:
        stored = cache.get(cell.cache_key()) if cache is not None else None
        if stored is None:
            missing.append(cell)
            continue
        stored = dict(stored, cell=cell.to_dict(), version=ENGINE_VERSION)
        results.append(CellResult.from_dict(stored))
    if missing:
        computed = asyncio.run(compute_cells(missing, evaluate, workers))
        for result in computed:
            if cache is not None:
                cache.set(result.cell.cache_key(), result.payload())
        results.extend(computed)
    return sorted(results, key=lambda r: r.sort_key)


########################################################################
@dataclass(frozen=True)
class DegreeRange:
    """
    Multidegrees in a region.

    A multidegree belongs to the range when every entry is at least
    ``min_each`` and at most ``max_each``, the total is at most
    ``max_total``, each group of positions in ``descending`` is
    non-increasing, it fits under at least one of ``caps`` (when any are
    given) and it is not in ``exclude``. ``exact`` and ``listed`` replace
    all of this by an explicit list.
    """

    n_gens: int
    exact: Optional[Tuple[int, ...]] = None
    min_each: int = 0
    max_each: Optional[int] = None
    max_total: Optional[int] = None
    descending: Tuple[Tuple[int, ...], ...] = ()
    caps: Tuple[Tuple[int, ...], ...] = ()
    exclude: Tuple[Tuple[int, ...], ...] = ()
    listed: Tuple[Tuple[int, ...], ...] = ()

    # ----------------------------------------------------------------------
    def __post_init__(self):
        for m in self.caps + self.exclude + self.listed + ((self.exact,) if self.exact else ()):
            if len(m) != self.n_gens:
                raise ValueError(f"Degree {list(m)} does not have {self.n_gens} entries.")
        if self.min_each < 0:
            raise ValueError("min_each must be non-negative.")

    # ----------------------------------------------------------------------
    def __contains__(self, m: Sequence[int]) -> bool:
        m = tuple(m)
        if len(m) != self.n_gens:
            return False
        if self.exact is not None:
            return m == tuple(self.exact)
        if self.listed:
            return m in self.listed
        if any(v < self.min_each for v in m):
            return False
        if self.max_each is not None and any(v > self.max_each for v in m):
            return False
        if self.max_total is not None and sum(m) > self.max_total:
            return False
        for group in self.descending:
            values = [m[i] for i in group]
            if values != sorted(values, reverse=True):
                return False
        if self.caps and not any(all(a <= b for a, b in zip(m, cap)) for cap in self.caps):
            return False
        return m not in self.exclude

    # ----------------------------------------------------------------------
    def cells(self) -> List[Tuple[int, ...]]:
        """The multidegrees of the range with positive total, by total then lexicographically."""
        if self.exact is not None:
            return [tuple(self.exact)]
        if self.listed:
            return sorted(self.listed, key=lambda m: (sum(m), m))
        bounds = []
        for i in range(self.n_gens):
            options = [b for b in (self.max_each, self.max_total) if b is not None]
            if self.caps:
                options.append(max(cap[i] for cap in self.caps))
            if not options:
                raise ValueError("An unbounded degree range cannot be enumerated.")
            bounds.append(min(options))
        out = [
            m
            for m in itertools.product(*(range(self.min_each, b + 1) for b in bounds))
            if sum(m) > 0 and m in self
        ]
        return sorted(out, key=lambda m: (sum(m), m))

    # ----------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_gens": self.n_gens,
            "exact": list(self.exact) if self.exact is not None else None,
            "min_each": self.min_each,
            "max_each": self.max_each,
            "max_total": self.max_total,
            "descending": [list(g) for g in self.descending],
            "caps": [list(c) for c in self.caps],
            "exclude": [list(e) for e in self.exclude],
            "listed": [list(m) for m in self.listed],
        }

    # ----------------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DegreeRange":
        def tuples(key):
            return tuple(tuple(int(v) for v in item) for item in data.get(key) or ())

        exact = data.get("exact")
        return cls(
            n_gens=int(data["n_gens"]),
            exact=tuple(exact) if exact is not None else None,
            min_each=int(data.get("min_each") or 0),
            max_each=data.get("max_each"),
            max_total=data.get("max_total"),
            descending=tuples("descending"),
            caps=tuples("caps"),
            exclude=tuples("exclude"),
            listed=tuples("listed"),
        )


########################################################################
@dataclass
class JobSpec:
    """
    One batch request.

    ``levels`` are the series indices ``l`` (form ranks for De Rham
    cells); by default every index from 2 (0 for De Rham) up to the total
    degree is computed. ``B1bar`` cells ignore them.
    """

    command: str
    sig: Signature
    degrees: DegreeRange
    ring: str = "z"
    levels: Optional[Tuple[int, ...]] = None
    format: str = "json"
    workers: int = 1
    cache_dir: Optional[str] = None
    timings: bool = False

    # ----------------------------------------------------------------------
    def __post_init__(self):
        if self.command not in CELL_KINDS:
            raise ValueError(f"Unknown command '{self.command}'.")
        if self.format not in FORMATS:
            raise ValueError(f"Unknown format '{self.format}', expected one of {FORMATS}.")
        if self.degrees.n_gens != self.sig.n_gens:
            raise ValueError("The degree range does not match the signature.")
        self.ring = parse_ring(self.ring).descriptor

    # ----------------------------------------------------------------------
    def cells(self) -> List[Cell]:
        sig = str(self.sig)
        out = []
        for m in self.degrees.cells():
            if self.command == "barb1":
                out.append(Cell("barb1", sig, self.ring, 1, m))
                continue
            first = 0 if self.command == "derham" else 2
            levels = self.levels or range(first, sum(m) + 1)
            for l in levels:
                out.append(Cell(self.command, sig, self.ring, int(l), m))
        return out


# ----------------------------------------------------------------------
def render_json(results: Sequence[CellResult], timings: bool = False) -> str:
    return json.dumps([r.to_dict(timings) for r in results], sort_keys=True, indent=2) + "\n"


# ----------------------------------------------------------------------
def render_csv(results: Sequence[CellResult], timings: bool = False) -> str:
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["kind", "sig", "ring", "l", "deg", "free_rank", "factors", "group", "dim", "ms"])
    for r in results:
        c = r.cell
        writer.writerow(
            [
                c.kind,
                c.sig,
                c.ring,
                c.l,
                " ".join(str(v) for v in c.deg),
                r.group.free_rank if r.group is not None else "",
                " ".join(str(d) for d in r.group.torsion) if r.group is not None else "",
                r.group.display() if r.group is not None else "",
                r.dim if r.dim is not None else "",
                f"{r.ms:.3f}" if timings and r.ms is not None else "",
            ]
        )
    return stream.getvalue()


# ----------------------------------------------------------------------
def render_markdown(results: Sequence[CellResult], torsion_only: bool = False) -> str:
    """
    Markdown table.

    Group results are pivoted with one row per multidegree and one column
    per level. With ``torsion_only`` only the torsion is shown and rows
    and columns without torsion are dropped, which is how the golden
    tables are laid out.
    """
    if not results:
        return "_no cells_\n"
    if any(r.group is None for r in results):
        lines = ["| kind | sig | ring | l | deg | value |", "|---|---|---|---|---|---|"]
        for r in results:
            c = r.cell
            lines.append(f"| {c.kind} | {c.sig} | {c.ring} | {c.l} | {list(c.deg)} | {r.display()} |")
        return "\n".join(lines) + "\n"

    table: Dict[Tuple[int, ...], Dict[int, str]] = {}
    for r in results:
        group = r.group.torsion_part() if torsion_only else r.group
        if torsion_only and group.is_trivial:
            continue
        table.setdefault(r.cell.deg, {})[r.cell.l] = group.display()
    if not table:
        return "_no torsion_\n"
    levels = sorted({l for row in table.values() for l in row})
    lines = [
        "| deg | " + " | ".join(f"l={l}" for l in levels) + " |",
        "|---|" + "---|" * len(levels),
    ]
    for deg in sorted(table, key=lambda m: (sum(m), m)):
        row = table[deg]
        cells = [row.get(l, "") for l in levels]
        lines.append(f"| {tuple(deg)} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
def render(results: Sequence[CellResult], fmt: str = "json", timings: bool = False) -> str:
    if fmt == "json":
        return render_json(results, timings)
    if fmt == "csv":
        return render_csv(results, timings)
    if fmt == "markdown":
        return render_markdown(results)
    raise ValueError(f"Unknown format '{fmt}'.")


# ----------------------------------------------------------------------
def run(job: JobSpec) -> Tuple[str, int]:
    """
    Compute every cell of ``job`` and render the report.

    Returns
    -------
    tuple
        The report text and the exit code.
    """
    cache = CellCache(job.cache_dir) if job.cache_dir is not None else None
    results = collect(job.cells(), job.workers, cache)
    return render(results, job.format, job.timings), 0


########################################################################
@dataclass(frozen=True)
class TableSpec:
    """
    A golden table.

    ``kind`` is ``"bi"`` for torsion tables and ``"discrepancy"`` for the
    differences between ``F_p`` and rational dimensions. When
    ``fast_max_total`` is set (the largest superalgebra cells) degrees
    above it are only computed in slow runs.
    """

    table_id: str
    title: str
    kind: str
    sig: Signature
    degrees: DegreeRange
    first_level: int
    fast_max_total: Optional[int]
    cells: Tuple[Dict[str, Any], ...]
    p: Optional[int] = None

    # ----------------------------------------------------------------------
    @classmethod
    def load(cls, table_id: str) -> "TableSpec":
        if table_id not in TABLES:
            raise KeyError(f"Unknown table '{table_id}', expected one of {sorted(TABLES)}.")
        with open(os.path.join(GOLDEN_DIR, TABLES[table_id]), "r", encoding="utf-8") as stream:
            data = json.load(stream)
        return cls(
            table_id=table_id,
            title=data["title"],
            kind=data["kind"],
            sig=Signature.parse(data["sig"]),
            degrees=DegreeRange.from_dict(data["range"]),
            first_level=int(data["first_level"]),
            fast_max_total=data.get("fast_max_total"),
            cells=tuple(data["cells"]),
            p=data.get("p"),
        )

    # ----------------------------------------------------------------------
    def expected(self) -> Dict[Tuple[Tuple[int, ...], int], Any]:
        """Golden value per ``(deg, l)``: primary counts, or the discrepancy."""
        out = {}
        for entry in self.cells:
            key = (tuple(entry["deg"]), int(entry["l"]))
            if self.kind == "discrepancy":
                out[key] = int(entry["value"])
            else:
                out[key] = {str(q): int(k) for q, k in entry["torsion"].items()}
        return out


########################################################################
@dataclass
class TableOutcome:
    spec: TableSpec
    results: List[CellResult]
    mismatches: List[Dict[str, Any]] = field(default_factory=list)
    skipped: List[Tuple[int, ...]] = field(default_factory=list)
    cap: Optional[int] = None

    # ----------------------------------------------------------------------
    @property
    def ok(self) -> bool:
        return not self.mismatches

    # ----------------------------------------------------------------------
    def render(self) -> str:
        lines = [f"## Table {self.spec.table_id}: {self.spec.title}", ""]
        if self.spec.kind == "discrepancy":
            values = discrepancies(self.results)
            lines += ["| l | deg | D |", "|---|---|---|"]
            for (deg, l), value in sorted(values.items(), key=lambda t: (t[0][1], t[0][0])):
                if value:
                    lines.append(f"| {l} | {deg} | {value} |")
            lines.append("")
        else:
            lines.append(render_markdown(self.results, torsion_only=True))
        if self.skipped:
            lines.append(f"{len(self.skipped)} degree(s) above total {self.cap} skipped.")
        if self.mismatches:
            lines.append(f"{len(self.mismatches)} mismatch(es) against the golden table:")
            for item in self.mismatches:
                lines.append(f"- {json.dumps(item, sort_keys=True)}")
        else:
            lines.append("All computed cells match the golden table.")
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
def discrepancies(results: Sequence[CellResult]) -> Dict[Tuple[Tuple[int, ...], int], int]:
    """``dim over F_p - dim over Q`` per ``(deg, l)`` from paired dimension cells."""
    rational: Dict[Tuple[Tuple[int, ...], int], int] = {}
    modular: Dict[Tuple[Tuple[int, ...], int], int] = {}
    for r in results:
        key = (r.cell.deg, r.cell.l)
        (rational if r.cell.ring == "q" else modular)[key] = r.dim
    return {key: modular[key] - rational[key] for key in modular if key in rational}


# ----------------------------------------------------------------------
def reproduce_table(
    table_id: str,
    workers: int = 1,
    cache: Optional[CellCache] = None,
    slow: bool = False,
    max_total: Optional[int] = None,
) -> TableOutcome:
    """
    Compute every cell of a golden table's range and compare.

    Cells of the range that the golden file does not list must come out
    torsion-free (zero discrepancy). Degrees above ``max_total``, and in
    fast runs above the table's ``fast_max_total``, are skipped.
    """
    spec = TableSpec.load(table_id)
    degrees = spec.degrees.cells()
    limits = [max_total] if slow else [max_total, spec.fast_max_total]
    cap = min((v for v in limits if v is not None), default=None)
    skipped = [] if cap is None else [m for m in degrees if sum(m) > cap]
    degrees = [m for m in degrees if m not in skipped]
    sig = str(spec.sig)

    cells = []
    for m in degrees:
        for l in range(spec.first_level, sum(m) + 1):
            if spec.kind == "discrepancy":
                cells.append(Cell("bi", sig, f"f{spec.p}", l, m))
                cells.append(Cell("bi", sig, "q", l, m))
            else:
                cells.append(Cell("bi", sig, "z", l, m))
    results = collect(cells, workers, cache)
    outcome = TableOutcome(spec, results, skipped=skipped, cap=cap)

    expected = spec.expected()
    if spec.kind == "discrepancy":
        got = discrepancies(results)
        default: Any = 0
    else:
        got = {
            (r.cell.deg, r.cell.l): {str(q): k for q, k in r.group.primary_counts().items()}
            for r in results
        }
        default = {}
    for key in sorted(set(got) | {k for k in expected if k[0] in degrees}):
        want = expected.get(key, default)
        have = got.get(key)
        if have != want:
            deg, l = key
            outcome.mismatches.append({"deg": list(deg), "l": l, "expected": want, "computed": have})
    for item in outcome.mismatches:
        logger_reports.error(f"table {table_id}: {item}")
    return outcome
