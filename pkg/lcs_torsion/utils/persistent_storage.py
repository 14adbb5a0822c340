"""
===========
Cell Cache
===========

Content-addressed storage for computed cells. Each value lives in its own
JSON file named after the sha256 of its key, next to a checksum of the
payload. Writes go through a temporary file and an atomic rename, so
concurrent writers of the same key leave one valid file behind.
"""

import hashlib
import json
import logging
import os
import shutil
import tempfile
from typing import Any, List, Optional

from lcs_torsion import ENGINE_VERSION
from lcs_torsion.errors import CacheCorrupted
from lcs_torsion.utils.debug import styled_logger

logger_cache = styled_logger(logging.getLogger("CellCache"))


# ----------------------------------------------------------------------
def _canonical(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


# ----------------------------------------------------------------------
def cell_key(kind: str, sig: str, ring: str, l: int, deg, version: str = ENGINE_VERSION) -> str:
    """
    Cache key of one cell.

    Examples
    --------
    >>> len(cell_key("bi", "3,0", "z", 2, (2, 2, 2)))
    64
    """
    material = [version, kind, str(sig), str(ring), int(l), [int(v) for v in deg]]
    return hashlib.sha256(_canonical(material).encode()).hexdigest()


########################################################################
class CellCache:
    """
    File-per-key JSON storage under a cache directory.

    Parameters
    ----------
    path : str, optional
        Cache root; ``LCS_TORSION_CACHE_DIR`` by default.

    Examples
    --------
    >>> cache = CellCache("/tmp/lcs-cache")
    >>> key = cell_key("bi", "2,0", "z", 2, (2, 2))
    >>> cache.set(key, {"free_rank": 1, "factors": []})
    >>> cache.get(key)
    {'factors': [], 'free_rank': 1}
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path or os.environ["LCS_TORSION_CACHE_DIR"]
        os.makedirs(self.path, exist_ok=True)

    # ----------------------------------------------------------------------
    def _file(self, key: str) -> str:
        if not isinstance(key, str):
            raise TypeError("Key must be a string.")
        return os.path.join(self.path, key[:2], f"{key}.json")

    # ----------------------------------------------------------------------
    def _read(self, key: str) -> Any:
        """Decode and check one entry."""
        try:
            with open(self._file(key), "r", encoding="utf-8") as stream:
                record = json.load(stream)
            payload = record["payload"]
            checksum = record["checksum"]
        except (ValueError, KeyError, TypeError) as error:
            raise CacheCorrupted(f"Entry '{key}' cannot be decoded: {error}") from None
        if hashlib.sha256(_canonical(payload).encode()).hexdigest() != checksum:
            raise CacheCorrupted(f"Entry '{key}' failed its checksum.")
        return payload

    # ----------------------------------------------------------------------
    def set(self, key: str, value: Any) -> None:
        """
        Store a JSON-serialisable value.

        Parameters
        ----------
        key : str
            The key to associate with the value.
        value : Any
            The value to store.
        """
        target = self._file(key)
        folder = os.path.dirname(target)
        os.makedirs(folder, exist_ok=True)
        record = {
            "payload": value,
            "checksum": hashlib.sha256(_canonical(value).encode()).hexdigest(),
        }
        stream = tempfile.NamedTemporaryFile(
            "w", dir=folder, suffix=".tmp", delete=False, encoding="utf-8"
        )
        try:
            with stream:
                json.dump(record, stream, sort_keys=True)
            os.replace(stream.name, target)
        except Exception:
            if os.path.exists(stream.name):
                os.unlink(stream.name)
            raise

    # ----------------------------------------------------------------------
    def get(self, key: str, default: Optional[Any] = None) -> Any:
        """
        Retrieve a value by its key.

        A missing entry and a corrupted one both return ``default``; the
        latter is logged.
        """
        if not os.path.exists(self._file(key)):
            return default
        try:
            return self._read(key)
        except CacheCorrupted as error:
            logger_cache.warning(f"{error} Recomputing.")
            return default

    # ----------------------------------------------------------------------
    def pop(self, key: str, default: Optional[Any] = None) -> Any:
        value = self.get(key, default=default)
        if self.exists(key):
            self.delete(key)
        return value

    # ----------------------------------------------------------------------
    def delete(self, key: str) -> None:
        """
        Delete a value by its key.

        Raises
        ------
        KeyError
            If the key is not found.
        """
        try:
            os.remove(self._file(key))
        except FileNotFoundError:
            raise KeyError(f"Key '{key}' not found in CellCache.") from None

    # ----------------------------------------------------------------------
    def exists(self, key: str) -> bool:
        return os.path.exists(self._file(key))

    # ----------------------------------------------------------------------
    def keys(self) -> List[str]:
        """All stored keys, sorted."""
        out = []
        for folder in sorted(os.listdir(self.path)):
            full = os.path.join(self.path, folder)
            if not os.path.isdir(full):
                continue
            out.extend(name[:-5] for name in os.listdir(full) if name.endswith(".json"))
        return sorted(out)

    # ----------------------------------------------------------------------
    def clear(self) -> None:
        """Remove every entry."""
        for folder in os.listdir(self.path):
            full = os.path.join(self.path, folder)
            if os.path.isdir(full):
                shutil.rmtree(full)
