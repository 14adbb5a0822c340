"""
====================
Automation Utilities
====================

Dispatch of independent cells to a pool of worker processes. Every cell
is computed from scratch in its worker, so the result of a batch does not
depend on the number of workers or on the order in which cells finish.
"""

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, TypeVar

from lcs_torsion.utils.debug import styled_logger

logger_dispatch = styled_logger(logging.getLogger("CellDispatcher"))

Cell = TypeVar("Cell")


# ----------------------------------------------------------------------
async def compute_cells(
    cells: Iterable[Cell],
    function: Callable[[Cell], Any],
    workers: int = 1,
) -> List[Any]:
    """
    Evaluate ``function`` on every cell.

    Parameters
    ----------
    cells : Iterable
        Picklable cell descriptions.
    function : Callable
        A module-level function, so that worker processes can import it.
    workers : int, optional
        Number of processes. With one worker the cells run inline.

    Returns
    -------
    List
        Results sorted by their ``sort_key`` attribute when present,
        otherwise in input order.
    """
    cells = list(cells)
    started = time.perf_counter()

    if workers <= 1 or len(cells) <= 1:
        results = []
        for cell in cells:
            results.append(function(cell))
            logger_dispatch.info(f"cell {cell} done")
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [loop.run_in_executor(pool, function, cell) for cell in cells]
            results = await asyncio.gather(*futures)

    logger_dispatch.debug(
        f"{len(cells)} cells on {max(workers, 1)} worker(s) in {time.perf_counter() - started:.2f}s"
    )
    if results and all(hasattr(r, "sort_key") for r in results):
        results = sorted(results, key=lambda r: r.sort_key)
    return list(results)
