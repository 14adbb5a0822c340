"""
===============
Test Cell Cache
===============

Storage, lookup and corruption handling of the on-disk cell cache.
"""

import os
import tempfile
import unittest
from unittest import mock

from lcs_torsion.utils.persistent_storage import CellCache, cell_key


########################################################################
class TestCellCache(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.cache = CellCache(self.folder.name)
        self.key = cell_key("bi", "3,0", "z", 2, (2, 2, 2))

    # ----------------------------------------------------------------------
    def tearDown(self):
        self.folder.cleanup()

    # ----------------------------------------------------------------------
    def test_set_and_get(self):
        value = {"group": {"free_rank": 2, "factors": [2]}}
        self.cache.set(self.key, value)
        self.assertTrue(self.cache.exists(self.key))
        self.assertEqual(self.cache.get(self.key), value)
        self.assertEqual(self.cache.keys(), [self.key])

    # ----------------------------------------------------------------------
    def test_missing_key(self):
        self.assertIsNone(self.cache.get(self.key))
        self.assertEqual(self.cache.get(self.key, default=0), 0)
        with self.assertRaises(KeyError):
            self.cache.delete(self.key)
        with self.assertRaises(TypeError):
            self.cache.get(7)

    # ----------------------------------------------------------------------
    def test_pop_and_clear(self):
        self.cache.set(self.key, {"dim": 3})
        self.assertEqual(self.cache.pop(self.key), {"dim": 3})
        self.assertFalse(self.cache.exists(self.key))
        self.cache.set(self.key, {"dim": 3})
        self.cache.clear()
        self.assertEqual(self.cache.keys(), [])

    # ----------------------------------------------------------------------
    def test_corrupted_entry_is_a_miss(self):
        self.cache.set(self.key, {"dim": 3})
        path = os.path.join(self.folder.name, self.key[:2], f"{self.key}.json")
        with open(path, "w", encoding="utf-8") as stream:
            stream.write('{"payload": {"dim": 4}, "checksum": "0"}')
        with self.assertLogs("CellCache", level="WARNING"):
            self.assertIsNone(self.cache.get(self.key))

        with open(path, "w", encoding="utf-8") as stream:
            stream.write("not json")
        self.assertIsNone(self.cache.get(self.key))

    # ----------------------------------------------------------------------
    def test_failed_write_leaves_no_temporary_file(self):
        with mock.patch("lcs_torsion.utils.persistent_storage.json.dump", side_effect=OSError("disk full")):
            with self.assertRaises(OSError):
                self.cache.set(self.key, {"dim": 3})
        leftovers = [name for _, _, names in os.walk(self.folder.name) for name in names]
        self.assertEqual(leftovers, [])
        self.assertFalse(self.cache.exists(self.key))
        self.cache.set(self.key, {"dim": 3})
        self.assertEqual(self.cache.get(self.key), {"dim": 3})

    # ----------------------------------------------------------------------
    def test_keys_depend_on_every_field(self):
        keys = {
            self.key,
            cell_key("bi", "3,0", "z", 3, (2, 2, 2)),
            cell_key("bi", "3,0", "q", 2, (2, 2, 2)),
            cell_key("bi", "2,1", "z", 2, (2, 2, 2)),
            cell_key("barb1", "3,0", "z", 2, (2, 2, 2)),
            cell_key("bi", "3,0", "z", 2, (2, 2, 2), version="0"),
        }
        self.assertEqual(len(keys), 6)
        self.assertEqual(cell_key("bi", "3,0", "z", 2, [2, 2, 2]), self.key)


if __name__ == '__main__':
    unittest.main()
